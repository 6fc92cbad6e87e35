#include "bdim/orbit.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bdim/error.hpp"
#include "bdim/hull.hpp"

namespace bdim {
namespace {

void check_word(const TableAt& at, const CyclicWord& word) {
  if (word.size() < 2) throw DomainError("orbit words need length >= 2");
  if (word.max_symbol() > at.size()) {
    throw DomainError("word " + word.str() + " uses a symbol beyond m = " +
                      std::to_string(at.size()));
  }
}

void check_size(const CyclicWord& word, std::span<const double> u) {
  if (static_cast<int>(u.size()) != word.size()) {
    throw DomainError("parameter vector length does not match the word");
  }
}

const CurveAt& curve_of(const TableAt& at, const CyclicWord& word, int j) {
  return at.curve(word[j] - 1);
}

std::vector<CurveJet> all_jets(const TableAt& at, const CyclicWord& word,
                               std::span<const double> u) {
  std::vector<CurveJet> jets(word.size());
  for (int j = 0; j < word.size(); ++j) jets[j] = curve_of(at, word, j).jets(u[j]);
  return jets;
}

std::vector<Vec2> all_points(const TableAt& at, const CyclicWord& word,
                             std::span<const double> u) {
  std::vector<Vec2> p(word.size());
  for (int j = 0; j < word.size(); ++j) p[j] = curve_of(at, word, j).point(u[j]);
  return p;
}

double edge_length(Vec2 a, Vec2 b) {
  const double d = norm(b - a);
  if (d < 1e-12) throw GeometryError("degenerate configuration: coincident consecutive points");
  return d;
}

double length_from_points(const std::vector<Vec2>& p) {
  const int n = static_cast<int>(p.size());
  double g = 0.0;
  for (int j = 0; j < n; ++j) g += edge_length(p[(j + n - 1) % n], p[j]);
  return g;
}

std::vector<double> grad_from_jets(const std::vector<CurveJet>& jets) {
  const int n = static_cast<int>(jets.size());
  std::vector<double> g(n, 0.0);
  for (int j = 0; j < n; ++j) {
    const int i = (j + n - 1) % n;
    const Vec2 e = jets[j].point() - jets[i].point();
    const Vec2 v = e / edge_length(jets[i].point(), jets[j].point());
    g[j] += dot(v, jets[j].tangent());
    g[i] -= dot(v, jets[i].tangent());
  }
  return g;
}

CyclicTridiagonal exact_hessian_from_jets(const std::vector<CurveJet>& jets) {
  const int n = static_cast<int>(jets.size());
  CyclicTridiagonal h(n);
  for (int j = 0; j < n; ++j) {
    const int i = (j + n - 1) % n;
    const double dist = edge_length(jets[i].point(), jets[j].point());
    const double a = 1.0 / dist;
    const Vec2 v = (jets[j].point() - jets[i].point()) / dist;
    const Vec2 tj = jets[j].tangent(), ti = jets[i].tangent();
    const double vj = dot(v, tj), vi = dot(v, ti);
    h.diag[j] += a * (1.0 - vj * vj) + dot(v, jets[j].d[2][0]);
    h.diag[i] += a * (1.0 - vi * vi) - dot(v, jets[i].d[2][0]);
    h.sub[j] += -a * (dot(ti, tj) - vi * vj);
  }
  return h;
}

double gradient_norm(const std::vector<double>& g) {
  double r = 0.0;
  for (double v : g) r = std::max(r, std::abs(v));
  return r;
}

void wrap_all(const TableAt& at, const CyclicWord& word, std::vector<double>& u) {
  for (int j = 0; j < word.size(); ++j) u[j] = curve_of(at, word, j).wrap(u[j]);
}

double length_at(const TableAt& at, const CyclicWord& word, const std::vector<double>& u) {
  return length_from_points(all_points(at, word, u));
}

// Damped Newton step direction, with a Levenberg shift if the Hessian is not positive definite.
Eigen::VectorXd newton_direction(const CyclicTridiagonal& h, const std::vector<double>& g) {
  const int n = h.size();
  const std::vector<double> dense = h.dense();
  Eigen::MatrixXd m(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) m(r, c) = dense[r * n + c];
  }
  Eigen::VectorXd rhs(n);
  for (int j = 0; j < n; ++j) rhs[j] = -g[j];
  const double scale = std::max(1e-12, m.diagonal().cwiseAbs().maxCoeff());
  double shift = 0.0;
  for (int attempt = 0; attempt < 60; ++attempt) {
    Eigen::LLT<Eigen::MatrixXd> llt(m + shift * Eigen::MatrixXd::Identity(n, n));
    if (llt.info() == Eigen::Success) return llt.solve(rhs);
    shift = shift == 0.0 ? 1e-8 * scale : 4.0 * shift;
  }
  return rhs / scale;
}

// One sweep of coordinate-wise golden-section minimization with half-width h.
void golden_sweep(const TableAt& at, const CyclicWord& word, std::vector<double>& u, double h) {
  constexpr double kInvPhi = 0.6180339887498949;
  for (int j = 0; j < word.size(); ++j) {
    auto f = [&](double x) {
      std::vector<double> w = u;
      w[j] = x;
      return length_at(at, word, w);
    };
    double a = u[j] - h, b = u[j] + h;
    double c = b - kInvPhi * (b - a), d = a + kInvPhi * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 40; ++it) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - kInvPhi * (b - a);
        fc = f(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + kInvPhi * (b - a);
        fd = f(d);
      }
    }
    const double x = 0.5 * (a + b);
    if (f(x) <= f(u[j])) u[j] = x;
  }
  wrap_all(at, word, u);
}

struct NewtonOutcome {
  bool converged = false;
  int steps = 0;
  double residual = 0.0;
};

NewtonOutcome newton(const TableAt& at, const CyclicWord& word, std::vector<double>& u,
                     const FindOrbitOptions& opt, int max_steps) {
  NewtonOutcome out;
  std::vector<CurveJet> jets = all_jets(at, word, u);
  std::vector<double> g = grad_from_jets(jets);
  double gn = gradient_norm(g);
  for (int step = 0; step < max_steps; ++step) {
    if (gn <= opt.tol) break;
    const Eigen::VectorXd dir = newton_direction(exact_hessian_from_jets(jets), g);
    double slope = 0.0;
    for (int j = 0; j < word.size(); ++j) slope += g[j] * dir[j];
    const double g0 = length_from_points(all_points(at, word, u));
    bool accepted = false;
    for (double t = 1.0; t > 1e-12; t *= 0.5) {
      std::vector<double> trial = u;
      for (int j = 0; j < word.size(); ++j) trial[j] += t * dir[j];
      wrap_all(at, word, trial);
      std::vector<CurveJet> tj;
      double gt;
      try {
        tj = all_jets(at, word, trial);
        gt = length_from_points(all_points(at, word, trial));
      } catch (const GeometryError&) {
        continue;
      }
      const std::vector<double> tg = grad_from_jets(tj);
      const double tn = gradient_norm(tg);
      // Near the minimum G changes at roundoff level, so accept on gradient decrease.
      const bool armijo = gt <= g0 + 1e-4 * t * slope;
      const bool flat = gn < 1e-6 && tn < gn;
      if (armijo || flat) {
        u = std::move(trial);
        jets = std::move(tj);
        g = tg;
        gn = tn;
        accepted = true;
        break;
      }
    }
    ++out.steps;
    if (!accepted) break;
  }
  // Polishing steps beyond the tolerance, kept only while the gradient keeps shrinking.
  if (gn <= opt.tol) {
    for (int extra = 0; extra < 2 && gn > 0.0; ++extra) {
      const Eigen::VectorXd dir = newton_direction(exact_hessian_from_jets(jets), g);
      std::vector<double> trial = u;
      for (int j = 0; j < word.size(); ++j) trial[j] += dir[j];
      wrap_all(at, word, trial);
      std::vector<CurveJet> tj = all_jets(at, word, trial);
      std::vector<double> tg = grad_from_jets(tj);
      const double tn = gradient_norm(tg);
      if (!(tn < gn)) break;
      u = std::move(trial);
      jets = std::move(tj);
      g = std::move(tg);
      gn = tn;
    }
  }
  out.converged = gn <= opt.tol;
  out.residual = gn;
  return out;
}

}  // namespace

PeriodicOrbit rotate_orbit(const PeriodicOrbit& o, int k) {
  const int n = o.size();
  auto rot = [&](const auto& v) {
    std::remove_cvref_t<decltype(v)> r(v.size());
    for (int j = 0; j < n; ++j) r[j] = v[((j + k) % n + n) % n];
    return r;
  };
  PeriodicOrbit r = o;
  r.word = o.word.rotated(k);
  r.u = rot(o.u);
  r.p = rot(o.p);
  r.d = rot(o.d);
  r.phi = rot(o.phi);
  r.cos_phi = rot(o.cos_phi);
  r.kappa = rot(o.kappa);
  r.gamma = rot(o.gamma);
  r.jets = rot(o.jets);
  return r;
}

double length_G(const TableAt& at, const CyclicWord& word, std::span<const double> u) {
  check_word(at, word);
  check_size(word, u);
  return length_from_points(all_points(at, word, u));
}

std::vector<double> grad_G(const TableAt& at, const CyclicWord& word, std::span<const double> u) {
  check_word(at, word);
  check_size(word, u);
  return grad_from_jets(all_jets(at, word, u));
}

CyclicTridiagonal exact_hessian(const TableAt& at, const CyclicWord& word,
                                std::span<const double> u) {
  check_word(at, word);
  check_size(word, u);
  return exact_hessian_from_jets(all_jets(at, word, u));
}

CyclicTridiagonal hess_G(const TableAt& at, const CyclicWord& word, std::span<const double> u) {
  check_word(at, word);
  check_size(word, u);
  const PeriodicOrbit o = evaluate_orbit(at, word, std::vector<double>(u.begin(), u.end()));
  const int n = o.size();
  CyclicTridiagonal h(n);
  for (int j = 0; j < n; ++j) {
    const int prev = (j + n - 1) % n, next = (j + 1) % n;
    const double c = o.cos_phi[j];
    h.diag[j] = (1.0 / o.d[j] + 1.0 / o.d[next]) * c * c + 2.0 * o.kappa[j] * c;
    h.sub[j] = c * o.cos_phi[prev] / o.d[j];
  }
  return h;
}

double length_G(const BilliardTable& table, const CyclicWord& word, std::span<const double> u,
                double alpha) {
  return length_G(table.at(alpha), word, u);
}

std::vector<double> grad_G(const BilliardTable& table, const CyclicWord& word,
                           std::span<const double> u, double alpha) {
  return grad_G(table.at(alpha), word, u);
}

CyclicTridiagonal hess_G(const BilliardTable& table, const CyclicWord& word,
                         std::span<const double> u, double alpha) {
  return hess_G(table.at(alpha), word, u);
}

std::vector<double> initial_guess(const TableAt& at, const CyclicWord& word) {
  check_word(at, word);
  const int n = word.size();
  constexpr int kSamples = 128;
  std::vector<double> u(n);
  for (int j = 0; j < n; ++j) {
    const Vec2 target = 0.5 * (curve_of(at, word, (j + n - 1) % n).center() +
                               curve_of(at, word, (j + 1) % n).center());
    const CurveAt& c = curve_of(at, word, j);
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k < kSamples; ++k) {
      const double s = c.perimeter() * k / kSamples;
      const double dist = norm(c.point(s) - target);
      if (dist < best) {
        best = dist;
        u[j] = s;
      }
    }
  }
  return u;
}

PeriodicOrbit evaluate_orbit(const TableAt& at, const CyclicWord& word, std::vector<double> u) {
  check_word(at, word);
  check_size(word, u);
  const int n = word.size();
  PeriodicOrbit o;
  o.word = word;
  o.alpha = at.alpha();
  wrap_all(at, word, u);
  o.u = std::move(u);
  o.jets = all_jets(at, word, o.u);
  o.p.resize(n);
  o.d.resize(n);
  o.phi.resize(n);
  o.cos_phi.resize(n);
  o.kappa.resize(n);
  o.gamma.resize(n);
  for (int j = 0; j < n; ++j) o.p[j] = o.jets[j].point();
  for (int j = 0; j < n; ++j) o.d[j] = edge_length(o.p[(j + n - 1) % n], o.p[j]);
  o.reflection_residual = 0.0;
  for (int j = 0; j < n; ++j) {
    const Vec2 prev = (o.p[(j + n - 1) % n] - o.p[j]) / o.d[j];
    const Vec2 next = (o.p[(j + 1) % n] - o.p[j]) / o.d[(j + 1) % n];
    const Vec2 nrm = o.jets[j].normal();
    const double c2 = std::clamp(dot(prev, next), -1.0, 1.0);
    o.cos_phi[j] = std::sqrt(0.5 * (1.0 + c2));
    o.phi[j] = std::acos(std::min(1.0, o.cos_phi[j]));
    o.kappa[j] = o.jets[j].curvature();
    o.gamma[j] = 2.0 * o.kappa[j] / o.cos_phi[j];
    const double in = std::atan2(cross(nrm, prev), dot(nrm, prev));
    const double out = std::atan2(cross(nrm, next), dot(nrm, next));
    o.reflection_residual = std::max(o.reflection_residual, std::abs(in + out));
  }
  o.residual = gradient_norm(grad_from_jets(o.jets));

  o.clearance = std::numeric_limits<double>::infinity();
  for (int j = 0; j < n; ++j) {
    const int a = word[(j + n - 1) % n], b = word[j];
    for (int k = 1; k <= at.size(); ++k) {
      if (k == a || k == b) continue;
      o.clearance = std::min(o.clearance, segment_polygon_distance(o.p[(j + n - 1) % n], o.p[j],
                                                                   at.curve(k - 1).polygon()));
    }
  }
  return o;
}

PeriodicOrbit find_orbit(const TableAt& at, const CyclicWord& word,
                         std::optional<std::vector<double>> init, const FindOrbitOptions& opt) {
  check_word(at, word);
  std::vector<double> u = init ? std::move(*init) : initial_guess(at, word);
  check_size(word, u);
  wrap_all(at, word, u);

  NewtonOutcome res = newton(at, word, u, opt, opt.max_newton);
  int steps = res.steps;
  bool fallback = false;
  if (!res.converged) {
    fallback = true;
    double h = 0.1 * at.curve(word[0] - 1).perimeter();
    for (int sweep = 0; sweep < opt.fallback_sweeps; ++sweep) {
      golden_sweep(at, word, u, h);
      h = std::max(1e-6, 0.97 * h);
    }
    res = newton(at, word, u, opt, opt.max_newton);
    steps += res.steps;
  }
  if (!res.converged) {
    std::ostringstream msg;
    msg << "orbit search for word " << word.str() << " at α = " << at.alpha()
        << " did not converge (|grad G| = " << res.residual << "); last u =";
    for (double v : u) msg << ' ' << v;
    throw NumericalError(msg.str());
  }

  PeriodicOrbit o = evaluate_orbit(at, word, std::move(u));
  o.newton_steps = steps;
  o.used_fallback = fallback;
  for (int j = 0; j < o.size(); ++j) {
    if (!(o.cos_phi[j] > 0.0)) {
      throw GeometryError("orbit for word " + o.word.str() + " has a grazing bounce");
    }
  }
  if (o.clearance < opt.clearance_tol) {
    throw GeometryError("orbit for word " + o.word.str() + " crosses a third obstacle");
  }
  return o;
}

PeriodicOrbit find_orbit(const BilliardTable& table, const CyclicWord& word, double alpha,
                         std::optional<std::vector<double>> init, const FindOrbitOptions& opt) {
  return find_orbit(table.at(alpha), word, std::move(init), opt);
}

CyclicTridiagonal scaled_system(const PeriodicOrbit& o) {
  const int n = o.size();
  CyclicTridiagonal a(n);
  for (int j = 0; j < n; ++j) {
    a.diag[j] = 1.0 / o.d[j] + 1.0 / o.d[(j + 1) % n] + o.gamma[j];
    a.sub[j] = 1.0 / o.d[j];
  }
  return a;
}

void PoolStats::add(const PeriodicOrbit& o) {
  PoolStats s;
  s.orbits = 1;
  s.d_min = *std::min_element(o.d.begin(), o.d.end());
  s.d_max = *std::max_element(o.d.begin(), o.d.end());
  s.phi_max = *std::max_element(o.phi.begin(), o.phi.end());
  s.cos_phi_min = *std::min_element(o.cos_phi.begin(), o.cos_phi.end());
  s.kappa_min = *std::min_element(o.kappa.begin(), o.kappa.end());
  s.kappa_max = *std::max_element(o.kappa.begin(), o.kappa.end());
  s.gamma_min = *std::min_element(o.gamma.begin(), o.gamma.end());
  s.gamma_max = *std::max_element(o.gamma.begin(), o.gamma.end());
  merge(s);
}

void PoolStats::merge(const PoolStats& s) {
  if (s.orbits == 0) return;
  if (orbits == 0) {
    *this = s;
    return;
  }
  orbits += s.orbits;
  d_min = std::min(d_min, s.d_min);
  d_max = std::max(d_max, s.d_max);
  phi_max = std::max(phi_max, s.phi_max);
  cos_phi_min = std::min(cos_phi_min, s.cos_phi_min);
  kappa_min = std::min(kappa_min, s.kappa_min);
  kappa_max = std::max(kappa_max, s.kappa_max);
  gamma_min = std::min(gamma_min, s.gamma_min);
  gamma_max = std::max(gamma_max, s.gamma_max);
}

}  // namespace bdim
