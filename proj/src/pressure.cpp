#include "bdim/pressure.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>

#include "bdim/error.hpp"

namespace bdim {

const char* to_string(PressureMethod method) {
  return method == PressureMethod::periodic_sum ? "periodic-sum" : "transfer-matrix";
}

// ---------------------------------------------------------------- sources

ConstantPotential::ConstantPotential(int m, double c, double dc) : m_(m), c_(c), dc_(dc) {
  if (m < 3) throw DomainError("constant potential needs m >= 3");
  if (!(c > 0.0)) throw DomainError("constant potential must be positive");
}

std::vector<CylinderValue> ConstantPotential::periodic_sums(const std::vector<CyclicWord>& words) {
  std::vector<CylinderValue> out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back({w.size() * c_, w.size() * dc_});
  return out;
}

std::vector<CylinderValue> ConstantPotential::representatives(
    const std::vector<std::vector<int>>& words) {
  return std::vector<CylinderValue>(words.size(), CylinderValue{c_, dc_});
}

PotentialBounds ConstantPotential::bounds() {
  PotentialBounds b;
  b.psi_min = b.psi_max = c_;
  b.C_psi = std::abs(dc_);
  return b;
}

CyclicWord periodic_closure(const std::vector<int>& word, int m) {
  if (word.size() < 2) throw DomainError("closure needs a word of length >= 2");
  if (word.front() != word.back()) return CyclicWord(word);
  std::vector<int> w = word;
  for (int c = 1; c <= m; ++c) {
    if (c != word.front()) {
      w.push_back(c);
      return CyclicWord(std::move(w));
    }
  }
  throw DomainError("no closing symbol available");
}

OrbitPotentialSource::OrbitPotentialSource(const BilliardTable& table, double alpha,
                                           SolveOptions options,
                                           std::shared_ptr<OrbitCache> cache)
    : table_(table), at_(table.at(alpha)), options_(options), cache_(std::move(cache)) {
  const NoEclipseReport ne = check_no_eclipse(at_);
  if (!ne.pass) {
    std::ostringstream msg;
    msg << "no-eclipse condition fails at alpha = " << alpha << " for obstacles ("
        << ne.witness[0] << ", " << ne.witness[1] << "; " << ne.witness[2]
        << "), distance " << ne.min_distance;
    throw GeometryError(msg.str());
  }
  const AlphaInterval I = table.interval();
  std::array<double, 9> grid{};
  for (int k = 0; k < 9; ++k) grid[k] = I.lo + (I.hi - I.lo) * k / 8.0;
  deformation_ = deformation_constants(table, grid);
}

std::vector<OrbitRecord> OrbitPotentialSource::records(const std::vector<CyclicWord>& words) {
  auto recs = solve_records(at_, words, options_, cache_.get());
  for (const auto& r : recs) pool_.add(r.orbit);
  return recs;
}

void OrbitPotentialSource::add_pool(int n) {
  std::vector<CyclicWord> words;
  for (int len = 2; len <= n; ++len) {
    auto w = enumerate_cyclic_words(symbols(), len);
    words.insert(words.end(), w.begin(), w.end());
  }
  records(words);
}

std::vector<CylinderValue> OrbitPotentialSource::periodic_sums(
    const std::vector<CyclicWord>& words) {
  const auto recs = records(words);
  std::vector<CylinderValue> out;
  out.reserve(recs.size());
  for (const auto& r : recs) {
    CylinderValue v;
    for (double x : r.front.psi) v.psi += x;
    for (double x : r.front.dpsi) v.dpsi += x;
    out.push_back(v);
  }
  return out;
}

std::vector<CylinderValue> OrbitPotentialSource::representatives(
    const std::vector<std::vector<int>>& words) {
  std::vector<CyclicWord> closures;
  closures.reserve(words.size());
  for (const auto& w : words) closures.push_back(periodic_closure(w, symbols()));
  const auto recs = records(closures);
  std::vector<CylinderValue> out;
  out.reserve(recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i) {
    const std::size_t mid = (words[i].size() - 1) / 2;
    out.push_back({recs[i].front.psi[mid], recs[i].front.dpsi[mid]});
  }
  return out;
}

PotentialBounds OrbitPotentialSource::bounds() {
  if (pool_.orbits == 0) throw DomainError("potential bounds need at least one solved orbit");
  PotentialBounds b;
  b.pool = pool_;
  b.orbits = pool_.orbits;
  b.k_bounds = k_bounds(pool_);
  b.constants = bound_constants(deformation_, pool_, !table_.single_deformed());
  b.front = front_bounds(b.constants, b.k_bounds, pool_.d_min, pool_.d_max);
  b.d_min = pool_.d_min;
  b.d_max = pool_.d_max;
  b.k_min = b.k_bounds.k_min;
  b.k_max = b.k_bounds.k_max;
  b.psi_min = std::log1p(b.d_min * b.k_min);
  b.psi_max = std::log1p(b.d_max * b.k_max);
  b.C_psi = b.front.C_psi;
  return b;
}

// ---------------------------------------------------------------- gibbs

namespace {

std::vector<double> marginal(const GibbsMeasure& g, bool drop_last) {
  const auto shorter = enumerate_linear_words(g.m, g.n - 1);
  std::vector<double> out(shorter.size(), 0.0);
  for (std::size_t i = 0; i < g.words.size(); ++i) {
    const auto& w = g.words[i];
    std::vector<int> key = drop_last ? std::vector<int>(w.begin(), w.end() - 1)
                                     : std::vector<int>(w.begin() + 1, w.end());
    auto it = std::lower_bound(shorter.begin(), shorter.end(), key);
    out[it - shorter.begin()] += g.weights[i];
  }
  return out;
}

int word_index(const std::vector<std::vector<int>>& sorted, const std::vector<int>& w) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), w);
  if (it == sorted.end() || *it != w) throw DomainError("word not in the node set");
  return static_cast<int>(it - sorted.begin());
}

}  // namespace

std::vector<double> GibbsMeasure::marginal_drop_last() const { return marginal(*this, true); }
std::vector<double> GibbsMeasure::marginal_drop_first() const { return marginal(*this, false); }

// ---------------------------------------------------------------- periodic sums

PeriodicSum::PeriodicSum(PotentialSource& source, int n) : n_(n), m_(source.symbols()) {
  if (n < 2) throw DomainError("pressure depth must be >= 2");
  sums_ = source.periodic_sums(enumerate_cyclic_words(m_, n));
}

double PeriodicSum::psi_min() const {
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& v : sums_) lo = std::min(lo, v.psi / n_);
  return lo;
}

PressureEstimate PeriodicSum::evaluate(double s) const {
  if (s < 0.0) throw DomainError("pressure scale s must be >= 0");
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& v : sums_) top = std::max(top, -s * v.psi);
  double z = 0.0, ipsi = 0.0, idpsi = 0.0;
  for (const auto& v : sums_) {
    const double w = std::exp(-s * v.psi - top);
    z += w;
    ipsi += w * v.psi;
    idpsi += w * v.dpsi;
  }
  PressureEstimate e;
  e.s = s;
  e.n = n_;
  e.method = PressureMethod::periodic_sum;
  e.value = (top + std::log(z)) / n_;
  e.int_psi = ipsi / (z * n_);
  e.int_dpsi = idpsi / (z * n_);
  return e;
}

// ---------------------------------------------------------------- transfer matrix

TransferMatrix::TransferMatrix(PotentialSource& source, int n) : n_(n), m_(source.symbols()) {
  if (n < 2) throw DomainError("pressure depth must be >= 2");
  nodes_ = enumerate_linear_words(m_, n);
  edges_ = enumerate_linear_words(m_, n + 1);
  from_.reserve(edges_.size());
  to_.reserve(edges_.size());
  for (const auto& e : edges_) {
    from_.push_back(word_index(nodes_, std::vector<int>(e.begin(), e.end() - 1)));
    to_.push_back(word_index(nodes_, std::vector<int>(e.begin() + 1, e.end())));
  }
  values_ = source.representatives(edges_);
}

double TransferMatrix::psi_min() const {
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& v : values_) lo = std::min(lo, v.psi);
  return lo;
}

TransferMatrix::Perron TransferMatrix::perron(double s) const {
  if (s < 0.0) throw DomainError("pressure scale s must be >= 0");
  const std::size_t N = nodes_.size(), E = edges_.size();
  const double shift = psi_min();
  Perron p;
  p.weights.resize(E);
  for (std::size_t e = 0; e < E; ++e) p.weights[e] = std::exp(-s * (values_[e].psi - shift));

  // x <- M x (right) or x <- x M (left), normalized to unit max so rounding does not accumulate
  auto iterate = [&](bool right, std::vector<double>& x, int& steps) {
    x.assign(N, 1.0);
    std::vector<double> y(N);
    double lambda = 0.0;
    for (steps = 1; steps <= kPowerMaxSteps; ++steps) {
      std::fill(y.begin(), y.end(), 0.0);
      if (right) {
        for (std::size_t e = 0; e < E; ++e) y[from_[e]] += p.weights[e] * x[to_[e]];
      } else {
        for (std::size_t e = 0; e < E; ++e) y[to_[e]] += p.weights[e] * x[from_[e]];
      }
      const double top = *std::max_element(y.begin(), y.end());
      double change = 0.0;
      for (std::size_t i = 0; i < N; ++i) {
        y[i] /= top;
        change = std::max(change, std::abs(y[i] - x[i]));
      }
      const double lambda_change = std::abs(top - lambda);
      lambda = top;
      x.swap(y);
      if (change <= kPowerTolerance && lambda_change <= kPowerTolerance * lambda) return lambda;
    }
    throw NumericalError("power iteration did not converge");
  };

  int sr = 0, sl = 0;
  p.lambda = iterate(true, p.right, sr);
  iterate(false, p.left, sl);
  p.iterations = std::max(sr, sl);
  return p;
}

PressureEstimate TransferMatrix::evaluate(double s) const {
  const Perron p = perron(s);
  double lr = 0.0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) lr += p.left[i] * p.right[i];
  double ipsi = 0.0, idpsi = 0.0;
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const double mu = p.left[from_[e]] * p.weights[e] * p.right[to_[e]] / (p.lambda * lr);
    ipsi += mu * values_[e].psi;
    idpsi += mu * values_[e].dpsi;
  }
  PressureEstimate est;
  est.s = s;
  est.n = n_;
  est.method = PressureMethod::transfer_matrix;
  est.value = std::log(p.lambda) - s * psi_min();
  est.int_psi = ipsi;
  est.int_dpsi = idpsi;
  return est;
}

GibbsMeasure TransferMatrix::gibbs(double s) const {
  const Perron p = perron(s);
  GibbsMeasure g;
  g.n = n_;
  g.m = m_;
  g.words = nodes_;
  g.edge_words = edges_;
  double lr = 0.0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) lr += p.left[i] * p.right[i];
  g.weights.resize(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) g.weights[i] = p.left[i] * p.right[i] / lr;
  g.edge_weights.resize(edges_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    g.edge_weights[e] = p.left[from_[e]] * p.weights[e] * p.right[to_[e]] / (p.lambda * lr);
  }
  return g;
}

// ---------------------------------------------------------------- front ends

PressureEstimate pressure_periodic_sum(PotentialSource& source, double s, int n, bool with_delta) {
  PressureEstimate e = PeriodicSum(source, n).evaluate(s);
  if (with_delta && n > 2) e.delta = std::abs(e.value - PeriodicSum(source, n - 1).evaluate(s).value);
  return e;
}

PressureEstimate pressure_periodic_sum(const BilliardTable& table, double s, int n, double alpha) {
  OrbitPotentialSource src(table, alpha);
  return pressure_periodic_sum(src, s, n);
}

std::pair<PressureEstimate, GibbsMeasure> pressure_transfer_matrix(PotentialSource& source,
                                                                   double s, int n,
                                                                   bool with_delta) {
  TransferMatrix tm(source, n);
  PressureEstimate e = tm.evaluate(s);
  if (with_delta) e.delta = std::abs(e.value - TransferMatrix(source, n + 1).evaluate(s).value);
  return {e, tm.gibbs(s)};
}

std::pair<PressureEstimate, GibbsMeasure> pressure_transfer_matrix(const BilliardTable& table,
                                                                   double s, int n, double alpha) {
  OrbitPotentialSource src(table, alpha);
  return pressure_transfer_matrix(src, s, n);
}

namespace {

template <class Estimator>
BowenResult solve_bowen(const Estimator& est, double tol) {
  if (!(tol > 0.0)) throw DomainError("Bowen root tolerance must be positive");
  const double psi_min = est.psi_min();
  if (!(psi_min > 0.0)) throw NumericalError("potential is not positive; no Bowen root");
  BowenResult r;
  double lo = 0.0, hi = 2.0 * std::log(est.symbols() - 1.0) / psi_min;
  r.bracket_hi = hi;
  PressureEstimate plo = est.evaluate(lo), phi = est.evaluate(hi);
  if (!(plo.value > 0.0 && phi.value < 0.0)) {
    throw NumericalError("Bowen bracket does not change sign");
  }
  auto done = [&](const PressureEstimate& p) {
    return std::abs(p.value) <= tol * std::max(p.int_psi, psi_min);
  };

  // bisection to a narrow bracket, then secant steps kept inside it
  int it = 0;
  while (hi - lo > 1e-3 * hi && it < 100) {
    const double mid = 0.5 * (lo + hi);
    PressureEstimate pm = est.evaluate(mid);
    ++it;
    if (done(pm)) {
      r.root = mid;
      r.at_root = pm;
      r.iterations = it;
      return r;
    }
    (pm.value > 0.0 ? lo : hi) = mid;
    (pm.value > 0.0 ? plo : phi) = pm;
  }
  double a = lo, b = hi;
  PressureEstimate pa = plo, pb = phi;
  while (it < 200) {
    double x = b - pb.value * (b - a) / (pb.value - pa.value);
    if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
    PressureEstimate px = est.evaluate(x);
    ++it;
    if (done(px) || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi ||
        std::abs(x - b) <= 1e-16 * x) {
      r.root = x;
      r.at_root = px;
      r.iterations = it;
      return r;
    }
    (px.value > 0.0 ? lo : hi) = x;
    a = b;
    pa = pb;
    b = x;
    pb = px;
  }
  throw NumericalError("Bowen root did not converge");
}

}  // namespace

BowenResult bowen_root(const PeriodicSum& p, double tol) { return solve_bowen(p, tol); }
BowenResult bowen_root(const TransferMatrix& p, double tol) { return solve_bowen(p, tol); }

BowenResult bowen_root(PotentialSource& source, int n, PressureMethod method, double tol) {
  if (method == PressureMethod::periodic_sum) return bowen_root(PeriodicSum(source, n), tol);
  return bowen_root(TransferMatrix(source, n), tol);
}

double bowen_root(const BilliardTable& table, int n, double alpha, double tol) {
  OrbitPotentialSource src(table, alpha);
  return bowen_root(src, n, PressureMethod::transfer_matrix, tol).root;
}

GibbsIntegrals gibbs_integrals(const TransferMatrix& p, double s) {
  const PressureEstimate e = p.evaluate(s);
  return {e.int_psi, e.int_dpsi};
}

GibbsIntegrals gibbs_integrals(const BilliardTable& table, double s, int n, double alpha) {
  OrbitPotentialSource src(table, alpha);
  return gibbs_integrals(TransferMatrix(src, n), s);
}

// ---------------------------------------------------------------- dimension

DimensionReport dimension_report(PotentialSource& source, const DimensionOptions& opt) {
  const int n = opt.depth;
  if (n < 2) throw DomainError("depth must be >= 2");
  const int m = source.symbols();
  const double entropy = std::log(m - 1.0);

  DimensionReport rep;
  rep.n = n;
  rep.m = m;
  TransferMatrix tm(source, n);
  const BowenResult br = bowen_root(tm, opt.tol);
  rep.Du = br.root;
  rep.Ds = rep.Du;
  rep.D = 2.0 * rep.Du;
  rep.bowen_iterations = br.iterations;
  rep.pressure_at_root = br.at_root.value;
  rep.int_psi = br.at_root.int_psi;
  rep.int_dpsi = br.at_root.int_dpsi;
  rep.h = rep.Du * rep.int_psi;
  rep.dDu_dalpha = 0.0 - rep.Du * rep.int_dpsi / rep.int_psi;
  rep.dD_dalpha = 2.0 * rep.dDu_dalpha;
  rep.mu0_lower = 2.0 * entropy / tm.evaluate(0.0).int_psi;

  if (opt.previous_depth && n - 2 >= 2) {
    rep.D_previous = 2.0 * bowen_root(TransferMatrix(source, n - 2), opt.tol).root;
    rep.delta_n = std::abs(rep.D - rep.D_previous);
  }
  if (opt.cross_check) rep.periodic_pressure_at_root = PeriodicSum(source, n).evaluate(rep.Du).value;

  rep.bounds = source.bounds();
  rep.lower = 2.0 * entropy / rep.bounds.psi_max;
  rep.upper = 2.0 * entropy / rep.bounds.psi_min;
  rep.dD_bound = rep.bounds.C_psi * rep.D / rep.bounds.psi_min;
  return rep;
}

DimensionReport dimension_report(const BilliardTable& table, double alpha,
                                 const DimensionOptions& opt, std::shared_ptr<OrbitCache> cache) {
  OrbitPotentialSource src(table, alpha, opt.solve, std::move(cache));
  if (opt.pool) src.add_pool(opt.depth);
  DimensionReport rep = dimension_report(src, opt);
  rep.alpha = alpha;
  return rep;
}

double dimension_derivative(const BilliardTable& table, double alpha, int n) {
  DimensionOptions opt;
  opt.depth = n;
  opt.previous_depth = false;
  opt.cross_check = false;
  return dimension_report(table, alpha, opt).dD_dalpha;
}

}  // namespace bdim
