#include "bdim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "bdim/error.hpp"
#include "bdim/hull.hpp"

namespace bdim {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// 8-point Gauss-Legendre rule on [-1, 1].
constexpr std::array<double, 8> kGaussNodes = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kGaussWeights = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

bool nonconstant(const Polynomial& p) {
  for (std::size_t k = 1; k < p.size(); ++k) {
    if (p[k] != 0.0) return true;
  }
  return false;
}

Polynomial scale_poly(Polynomial p, double s) {
  for (double& c : p) c *= s;
  return p;
}

void require_nonempty(const Polynomial& p, const char* what) {
  if (p.empty()) throw DomainError(std::string("empty polynomial for ") + what);
}

}  // namespace

double eval_poly(const Polynomial& p, double alpha) {
  double r = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * alpha + *it;
  return r;
}

const char* to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::circle: return "circle";
    case CurveKind::ellipse: return "ellipse";
    case CurveKind::polar_harmonic: return "polar-harmonic";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// CurveFamily

CurveFamily::CurveFamily(CurveKind kind, Polynomial cx, Polynomial cy,
                         std::vector<Polynomial> shape)
    : kind_(kind), cx_(std::move(cx)), cy_(std::move(cy)), shape_(std::move(shape)) {
  require_nonempty(cx_, "center x");
  require_nonempty(cy_, "center y");
  for (const auto& p : shape_) require_nonempty(p, "shape coefficient");
  for (const auto* p : {&cx_, &cy_}) {
    if (p->size() > 4) throw DomainError("α-polynomials are limited to degree 3");
  }
  for (const auto& p : shape_) {
    if (p.size() > 4) throw DomainError("α-polynomials are limited to degree 3");
  }
}

CurveFamily CurveFamily::circle(Polynomial cx, Polynomial cy, Polynomial radius) {
  return CurveFamily(CurveKind::circle, std::move(cx), std::move(cy), {std::move(radius)});
}

CurveFamily CurveFamily::ellipse(Polynomial cx, Polynomial cy, Polynomial semi_a,
                                 Polynomial semi_b, Polynomial angle) {
  return CurveFamily(CurveKind::ellipse, std::move(cx), std::move(cy),
                     {std::move(semi_a), std::move(semi_b), std::move(angle)});
}

CurveFamily CurveFamily::polar_harmonic(Polynomial cx, Polynomial cy, Polynomial base_radius,
                                        std::vector<Polynomial> cos_coeffs) {
  std::vector<Polynomial> shape;
  shape.reserve(cos_coeffs.size() + 1);
  shape.push_back(std::move(base_radius));
  for (auto& c : cos_coeffs) shape.push_back(std::move(c));
  return CurveFamily(CurveKind::polar_harmonic, std::move(cx), std::move(cy), std::move(shape));
}

CurveFamily CurveFamily::with_seam(double seam) const {
  CurveFamily c = *this;
  c.seam_ = seam;
  c.explicit_seam_ = true;
  return c;
}

CurveFamily CurveFamily::scaled(double lambda) const {
  CurveFamily c = *this;
  c.cx_ = scale_poly(cx_, lambda);
  c.cy_ = scale_poly(cy_, lambda);
  for (std::size_t k = 0; k < c.shape_.size(); ++k) {
    if (kind_ == CurveKind::ellipse && k == 2) continue;  // rotation angle
    c.shape_[k] = scale_poly(shape_[k], lambda);
  }
  return c;
}

bool CurveFamily::depends_on_alpha() const {
  if (nonconstant(cx_) || nonconstant(cy_)) return true;
  return std::any_of(shape_.begin(), shape_.end(), nonconstant);
}

Vec2 CurveFamily::center(double alpha) const {
  return {eval_poly(cx_, alpha), eval_poly(cy_, alpha)};
}

double CurveFamily::natural_curvature(double t, double alpha) const {
  const auto g = natural_point(Jet<2>::x_variable(t), Jet<2>(alpha));
  const Vec2 d1{g[0].derivative(1, 0), g[1].derivative(1, 0)};
  const Vec2 d2{g[0].derivative(2, 0), g[1].derivative(2, 0)};
  const double s = norm(d1);
  return cross(d1, d2) / (s * s * s);
}

// ---------------------------------------------------------------------------
// CurveAt

CurveAt::CurveAt(const CurveFamily& family, double alpha)
    : family_(family), alpha_(alpha), center_(family.center(alpha)) {
  if (family_.kind() == CurveKind::circle) {
    const double r = eval_poly(family_.shape()[0], alpha);
    if (!(r > 0.0)) throw GeometryError("degenerate circle: non-positive radius");
    perimeter_ = kTwoPi * r;
  } else {
    cum_length_.assign(kPanels + 1, 0.0);
    cum_dalpha_.assign(kPanels + 1, 0.0);
    const double h = kTwoPi / kPanels;
    for (int k = 0; k < kPanels; ++k) {
      double len = 0.0, dlen = 0.0;
      const double mid = (k + 0.5) * h;
      for (int g = 0; g < 8; ++g) {
        const auto [s, s_alpha] = speed(mid + 0.5 * h * kGaussNodes[g]);
        len += kGaussWeights[g] * s;
        dlen += kGaussWeights[g] * s_alpha;
      }
      cum_length_[k + 1] = cum_length_[k] + 0.5 * h * len;
      cum_dalpha_[k + 1] = cum_dalpha_[k] + 0.5 * h * dlen;
    }
    perimeter_ = cum_length_.back();
    if (!(perimeter_ > 0.0)) throw GeometryError("degenerate obstacle: zero perimeter");
  }
  polygon_ = sample_boundary(kPolygonSamples);
}

std::pair<double, double> CurveAt::speed(double t) const {
  const auto g = family_.natural_point(Jet<1>::x_variable(t), Jet<1>::y_variable(alpha_));
  const Vec2 gt{g[0](1, 0), g[1](1, 0)};
  const Vec2 gta{g[0](1, 1), g[1](1, 1)};
  const double s = norm(gt);
  return {s, dot(gt, gta) / s};
}

std::pair<double, double> CurveAt::arclength(double t) const {
  if (family_.kind() == CurveKind::circle) {
    const Jet<0> r = eval_poly(family_.shape()[0], Jet<0>::y_variable(alpha_));
    return {r.value() * t, r(0, 1) * t};
  }
  const double h = kTwoPi / kPanels;
  int k = static_cast<int>(std::floor(t / h));
  k = std::clamp(k, 0, kPanels - 1);
  const double a = k * h;
  double len = cum_length_[k], dlen = cum_dalpha_[k];
  if (t > a) {
    const double half = 0.5 * (t - a), mid = 0.5 * (t + a);
    double part = 0.0, dpart = 0.0;
    for (int g = 0; g < 8; ++g) {
      const auto [s, s_alpha] = speed(mid + half * kGaussNodes[g]);
      part += kGaussWeights[g] * s;
      dpart += kGaussWeights[g] * s_alpha;
    }
    len += half * part;
    dlen += half * dpart;
  }
  return {len, dlen};
}

double CurveAt::wrap(double u) const {
  double w = std::fmod(u, perimeter_);
  if (w < 0.0) w += perimeter_;
  if (w >= perimeter_) w -= perimeter_;
  return w;
}

double CurveAt::t_of_u(double u) const {
  u = wrap(u);
  if (family_.kind() == CurveKind::circle) {
    return u / eval_poly(family_.shape()[0], alpha_);
  }
  const auto it = std::upper_bound(cum_length_.begin(), cum_length_.end(), u);
  int k = static_cast<int>(it - cum_length_.begin()) - 1;
  k = std::clamp(k, 0, kPanels - 1);
  const double h = kTwoPi / kPanels;
  double lo = k * h, hi = (k + 1) * h;
  const double span = cum_length_[k + 1] - cum_length_[k];
  double t = lo + h * (u - cum_length_[k]) / span;
  for (int iter = 0; iter < 60; ++iter) {
    const double f = arclength(t).first - u;
    if (std::abs(f) <= 1e-15 * perimeter_) break;
    if (f > 0.0) {
      hi = t;
    } else {
      lo = t;
    }
    double next = t - f / speed(t).first;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == t) break;
    t = next;
  }
  return t;
}

CurveJet CurveAt::jets(double u) const {
  u = wrap(u);
  const double t0 = t_of_u(u);
  const auto gamma = family_.natural_point(Jet<3>::x_variable(t0), Jet<3>::y_variable(alpha_));
  const Jet<3> dalpha = Jet<3>::y_variable(0.0);

  // Natural-parameter displacement T(du, dα) with t0 + T = t(u + du, α + dα).
  Jet<3> shift;
  if (family_.kind() == CurveKind::circle) {
    const Jet<3> r = eval_poly(family_.shape()[0], Jet<3>::y_variable(alpha_));
    shift = Jet<3>::x_variable(u) / r - t0;
  } else {
    const Jet<2> gx = d_dx(gamma[0]);
    const Jet<2> gy = d_dx(gamma[1]);
    const Jet<2> s = sqrt(gx * gx + gy * gy);
    Jet<3> length;  // arclength U(t0 + dt, α + dα)
    length(0, 0) = u;
    length(0, 1) = arclength(t0).second;
    for (int i = 0; i <= 2; ++i) {
      length(i + 1, 0) = s(i, 0) / (i + 1);
      length(i + 1, 1) = s(i, 1) / (i + 1);
    }
    const Jet<3> target = Jet<3>::x_variable(u);
    const double inv_speed = 1.0 / s.value();
    for (int iter = 0; iter < 6; ++iter) {
      shift += (target - substitute(length, shift, dalpha)) * inv_speed;
    }
  }

  const Jet<3> px = substitute(gamma[0], shift, dalpha);
  const Jet<3> py = substitute(gamma[1], shift, dalpha);
  CurveJet jet;
  for (int q = 0; q <= kMaxJetU; ++q) {
    for (int qa = 0; qa <= kMaxJetAlpha; ++qa) {
      jet.d[q][qa] = {px.derivative(q, qa), py.derivative(q, qa)};
    }
  }
  return jet;
}

Vec2 CurveAt::point(double u) const {
  const auto g = family_.natural_point(Jet<0>(t_of_u(u)), Jet<0>(alpha_));
  return {g[0].value(), g[1].value()};
}

double CurveAt::curvature(double u) const { return jets(u).curvature(); }

std::vector<Vec2> CurveAt::sample_boundary(int count) const {
  std::vector<Vec2> pts;
  pts.reserve(count);
  for (int k = 0; k < count; ++k) {
    const double t = kTwoPi * k / count;
    const auto g = family_.natural_point(Jet<0>(t), Jet<0>(alpha_));
    pts.push_back({g[0].value(), g[1].value()});
  }
  return pts;
}

// ---------------------------------------------------------------------------
// BilliardTable

BilliardTable::BilliardTable(std::vector<CurveFamily> obstacles, AlphaInterval interval,
                             bool allow_multiple_deformed)
    : interval_(interval), allow_multiple_(allow_multiple_deformed) {
  if (obstacles.size() < 3) throw DomainError("a billiard table needs at least 3 obstacles");
  if (!(interval.lo <= interval.hi)) throw DomainError("α interval must satisfy lo <= hi");

  // Convexity and non-degeneracy on a grid of α and natural parameter.
  constexpr int kAlphaGrid = 9;
  constexpr int kThetaGrid = 256;
  for (std::size_t i = 0; i < obstacles.size(); ++i) {
    const CurveFamily& c = obstacles[i];
    for (int a = 0; a < kAlphaGrid; ++a) {
      const double alpha =
          interval.lo + (interval.hi - interval.lo) * static_cast<double>(a) / (kAlphaGrid - 1);
      const auto& shape = c.shape();
      if (c.kind() == CurveKind::circle && !(eval_poly(shape[0], alpha) > 0.0)) {
        throw GeometryError("obstacle " + std::to_string(i + 1) + ": non-positive radius");
      }
      if (c.kind() == CurveKind::ellipse &&
          !(eval_poly(shape[0], alpha) > 0.0 && eval_poly(shape[1], alpha) > 0.0)) {
        throw GeometryError("obstacle " + std::to_string(i + 1) + ": non-positive semi-axis");
      }
      for (int k = 0; k < kThetaGrid; ++k) {
        const double t = kTwoPi * k / kThetaGrid;
        if (c.kind() == CurveKind::polar_harmonic) {
          double rho = eval_poly(shape[0], alpha);
          for (std::size_t h = 1; h < shape.size(); ++h) {
            rho += eval_poly(shape[h], alpha) * std::cos(static_cast<double>(h) * (t + c.seam()));
          }
          if (!(rho > 0.0)) {
            throw GeometryError("obstacle " + std::to_string(i + 1) + ": non-positive radius");
          }
        }
        if (!(c.natural_curvature(t, alpha) > 0.0)) {
          throw GeometryError("obstacle " + std::to_string(i + 1) + " is not strictly convex");
        }
      }
    }
  }

  Vec2 centroid;
  for (const auto& c : obstacles) centroid += c.center(interval.mid());
  centroid = centroid / static_cast<double>(obstacles.size());
  for (auto& c : obstacles) {
    if (c.has_explicit_seam()) continue;
    const Vec2 out = c.center(interval.mid()) - centroid;
    double seam = 0.0;
    if (norm(out) > 1e-12) {
      if (c.kind() == CurveKind::ellipse) {
        const double ang = eval_poly(c.shape()[2], interval.mid());
        const double a = eval_poly(c.shape()[0], interval.mid());
        const double b = eval_poly(c.shape()[1], interval.mid());
        const double bx = std::cos(ang) * out.x + std::sin(ang) * out.y;
        const double by = -std::sin(ang) * out.x + std::cos(ang) * out.y;
        seam = std::atan2(a * by, b * bx);
      } else {
        seam = std::atan2(out.y, out.x);
      }
    }
    c = c.with_seam(seam);
  }

  deformed_.reserve(obstacles.size());
  for (const auto& c : obstacles) deformed_.push_back(c.depends_on_alpha());
  obstacles_ = std::make_shared<const std::vector<CurveFamily>>(std::move(obstacles));
  if (deformed_count() > 1 && !allow_multiple_) {
    throw DomainError(
        "more than one obstacle depends on α; enable allow_multiple_deformed to accept this");
  }
}

int BilliardTable::deformed_count() const {
  return static_cast<int>(std::count(deformed_.begin(), deformed_.end(), true));
}

TableAt BilliardTable::at(double alpha) const { return TableAt(*this, alpha); }

BilliardTable BilliardTable::scaled(double lambda) const {
  std::vector<CurveFamily> scaled;
  scaled.reserve(obstacles_->size());
  for (const auto& c : *obstacles_) scaled.push_back(c.scaled(lambda));
  return BilliardTable(std::move(scaled), interval_, allow_multiple_);
}

TableAt::TableAt(const BilliardTable& table, double alpha) : alpha_(alpha) {
  if (!table.interval().contains(alpha)) {
    throw DomainError("α = " + std::to_string(alpha) + " outside the configured interval [" +
                      std::to_string(table.interval().lo) + ", " +
                      std::to_string(table.interval().hi) + "]");
  }
  curves_.reserve(table.size());
  for (int i = 0; i < table.size(); ++i) {
    curves_.emplace_back(table.obstacle(i), alpha);
    deformed_.push_back(table.deformed(i));
  }
}

bool TableAt::single_deformed() const {
  return std::count(deformed_.begin(), deformed_.end(), true) <= 1;
}

Vec2 TableAt::centroid() const {
  Vec2 c;
  for (const auto& curve : curves_) c += curve.center();
  return c / static_cast<double>(curves_.size());
}

// ---------------------------------------------------------------------------
// Operations

namespace {

void check_obstacle(const BilliardTable& table, int obstacle) {
  if (obstacle < 1 || obstacle > table.size()) {
    throw DomainError("unknown obstacle index " + std::to_string(obstacle));
  }
}

}  // namespace

CurveJet point_and_jets(const BilliardTable& table, int obstacle, double u, double alpha,
                        int max_q, int max_q_alpha) {
  check_obstacle(table, obstacle);
  if (max_q < 0 || max_q > kMaxJetU || max_q_alpha < 0 || max_q_alpha > kMaxJetAlpha) {
    throw DomainError("jet order beyond supported smoothness (q <= 3, q' <= 1)");
  }
  if (!table.interval().contains(alpha)) throw DomainError("α outside the configured interval");
  const CurveAt curve(table.obstacle(obstacle - 1), alpha);
  CurveJet full = curve.jets(u);
  CurveJet out;
  for (int q = 0; q <= max_q; ++q) {
    for (int qa = 0; qa <= max_q_alpha; ++qa) out.d[q][qa] = full.d[q][qa];
  }
  return out;
}

double perimeter(const BilliardTable& table, int obstacle, double alpha) {
  check_obstacle(table, obstacle);
  if (!table.interval().contains(alpha)) throw DomainError("α outside the configured interval");
  return CurveAt(table.obstacle(obstacle - 1), alpha).perimeter();
}

double curvature(const BilliardTable& table, int obstacle, double u, double alpha) {
  check_obstacle(table, obstacle);
  if (!table.interval().contains(alpha)) throw DomainError("α outside the configured interval");
  return CurveAt(table.obstacle(obstacle - 1), alpha).curvature(u);
}

NoEclipseReport check_no_eclipse(const TableAt& at, int samples, double margin) {
  const int m = at.size();
  std::vector<std::vector<Vec2>> polys;
  polys.reserve(m);
  for (int i = 0; i < m; ++i) {
    auto pts = at.curve(i).sample_boundary(samples);
    polys.push_back(convex_hull(std::move(pts)));
    if (polys.back().size() < 3) throw GeometryError("degenerate obstacle (zero area)");
  }

  NoEclipseReport report;
  report.min_distance = std::numeric_limits<double>::infinity();
  report.min_pair_distance = std::numeric_limits<double>::infinity();
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const double dij = convex_polygon_distance(polys[i], polys[j]);
      if (dij < report.min_pair_distance) {
        report.min_pair_distance = dij;
        report.pair_witness = {i + 1, j + 1};
      }
      std::vector<Vec2> both = polys[i];
      both.insert(both.end(), polys[j].begin(), polys[j].end());
      const auto hull = convex_hull(std::move(both));
      for (int k = 0; k < m; ++k) {
        if (k == i || k == j) continue;
        const double dist = convex_polygon_distance(hull, polys[k]);
        if (dist < report.min_distance) {
          report.min_distance = dist;
          report.witness = {i + 1, j + 1, k + 1};
        }
      }
    }
  }
  report.disjoint = report.min_pair_distance > margin;
  report.pass = report.disjoint && report.min_distance >= margin && report.min_distance > 0.0;
  return report;
}

NoEclipseReport check_no_eclipse(const BilliardTable& table, double alpha, int samples,
                                 double margin) {
  return check_no_eclipse(table.at(alpha), samples, margin);
}

DeformationConstants deformation_constants(const BilliardTable& table,
                                           std::span<const double> alpha_samples, int u_samples,
                                           double safety) {
  if (alpha_samples.empty() || u_samples <= 0) {
    throw DomainError("deformation_constants needs nonempty sample grids");
  }
  DeformationConstants dc;
  double kmin = std::numeric_limits<double>::infinity();
  double kmax = 0.0;
  for (double alpha : alpha_samples) {
    const TableAt at = table.at(alpha);
    for (int i = 0; i < at.size(); ++i) {
      const CurveAt& curve = at.curve(i);
      for (int k = 0; k < u_samples; ++k) {
        const double u = curve.perimeter() * k / u_samples;
        const CurveJet jet = curve.jets(u);
        for (int q = 0; q <= kMaxJetU; ++q) {
          for (int qa = 0; qa <= kMaxJetAlpha; ++qa) {
            if (q == 0 && qa == 0) continue;
            dc.c[q][qa] = std::max(dc.c[q][qa], norm(jet.d[q][qa]));
          }
        }
        const double kappa = jet.curvature();
        kmin = std::min(kmin, kappa);
        kmax = std::max(kmax, kappa);
      }
    }
  }
  for (auto& row : dc.c) {
    for (double& v : row) v *= safety;
  }
  dc.c[1][0] = 1.0;
  dc.c[2][0] = kmax * safety;
  dc.kappa_max = dc.c[2][0];
  dc.kappa_min = kmin / safety;
  return dc;
}

}  // namespace bdim
