#pragma once

// Pressure of -s psi on the subshift without immediate repeats, Bowen's
// equation P(-D psi) = 0, Gibbs integrals and the dimension report.
//
// Two estimators at depth n:
//   periodic sum     (1/n) log sum_{xi in Fix(sigma^n)} exp(-s S_n psi(xi))
//   transfer matrix  log of the Perron eigenvalue of the weighted graph on
//                    linear n-words, one edge per linear (n+1)-word.

#include <cmath>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "bdim/front.hpp"
#include "bdim/kernels.hpp"
#include "bdim/orbit_cache.hpp"

namespace bdim {

struct CylinderValue {
  double psi = 0.0;
  double dpsi = 0.0;  // ∂psi/∂α
};

// Extremes feeding the dimension bracket and the derivative bound.
struct PotentialBounds {
  double psi_min = 0.0;  // log(1 + d_min k_min)
  double psi_max = 0.0;  // log(1 + d_max k_max)
  double C_psi = 0.0;
  double d_min = 0.0, d_max = 0.0;
  double k_min = 0.0, k_max = 0.0;
  int orbits = 0;
  PoolStats pool;
  KBounds k_bounds;
  BoundConstants constants;
  FrontBounds front;
};

class PotentialSource {
 public:
  virtual ~PotentialSource() = default;
  virtual int symbols() const = 0;
  // Birkhoff sums of psi and ∂αpsi along each word's periodic orbit.
  virtual std::vector<CylinderValue> periodic_sums(const std::vector<CyclicWord>& words) = 0;
  // Per-bounce values at the middle bounce of each linear word's periodic closure.
  virtual std::vector<CylinderValue> representatives(
      const std::vector<std::vector<int>>& words) = 0;
  virtual PotentialBounds bounds() = 0;
};

// Test hook: psi ≡ c, ∂αpsi ≡ dc, no geometry.
class ConstantPotential final : public PotentialSource {
 public:
  ConstantPotential(int m, double c, double dc = 0.0);
  int symbols() const override { return m_; }
  std::vector<CylinderValue> periodic_sums(const std::vector<CyclicWord>& words) override;
  std::vector<CylinderValue> representatives(const std::vector<std::vector<int>>& words) override;
  PotentialBounds bounds() override;

 private:
  int m_;
  double c_, dc_;
};

// Periodic closure of a linear word: the word itself when admissible as a cycle,
// otherwise the word followed by the smallest symbol differing from both ends.
CyclicWord periodic_closure(const std::vector<int>& word, int m);

// psi from solved orbits of one table at one α. All solved orbits join the pool.
class OrbitPotentialSource final : public PotentialSource {
 public:
  OrbitPotentialSource(const BilliardTable& table, double alpha, SolveOptions options = {},
                       std::shared_ptr<OrbitCache> cache = nullptr);

  int symbols() const override { return at_.size(); }
  std::vector<CylinderValue> periodic_sums(const std::vector<CyclicWord>& words) override;
  std::vector<CylinderValue> representatives(const std::vector<std::vector<int>>& words) override;
  PotentialBounds bounds() override;

  // Solve every word of length 2..n so the pool covers all short orbits.
  void add_pool(int n);
  std::vector<OrbitRecord> records(const std::vector<CyclicWord>& words);

  const TableAt& table_at() const { return at_; }
  double alpha() const { return at_.alpha(); }

 private:
  BilliardTable table_;
  TableAt at_;
  SolveOptions options_;
  std::shared_ptr<OrbitCache> cache_;
  PoolStats pool_;
  DeformationConstants deformation_;
};

enum class PressureMethod { periodic_sum, transfer_matrix };

const char* to_string(PressureMethod method);

struct PressureEstimate {
  double s = 0.0;
  int n = 0;
  PressureMethod method = PressureMethod::transfer_matrix;
  double value = 0.0;
  double int_psi = 0.0;   // -dP/ds
  double int_dpsi = 0.0;  // ∫ ∂αpsi against the same weights
  // |P_n - P_{n-1}|, NaN unless requested.
  double delta = std::numeric_limits<double>::quiet_NaN();
};

struct GibbsMeasure {
  int n = 0;
  int m = 0;
  std::vector<std::vector<int>> words;       // linear n-words, lexicographic
  std::vector<double> weights;               // per n-word
  std::vector<std::vector<int>> edge_words;  // linear (n+1)-words
  std::vector<double> edge_weights;

  // Depth n-1 marginals obtained by dropping the last or the first symbol.
  std::vector<double> marginal_drop_last() const;
  std::vector<double> marginal_drop_first() const;
};

// Periodic-sum estimator with potentials fixed at depth n.
class PeriodicSum {
 public:
  PeriodicSum(PotentialSource& source, int n);
  PressureEstimate evaluate(double s) const;
  int n() const { return n_; }
  int symbols() const { return m_; }
  double psi_min() const;

 private:
  int n_, m_;
  std::vector<CylinderValue> sums_;
};

// Weighted word graph on linear n-words.
class TransferMatrix {
 public:
  TransferMatrix(PotentialSource& source, int n);

  PressureEstimate evaluate(double s) const;
  GibbsMeasure gibbs(double s) const;
  int n() const { return n_; }
  int symbols() const { return m_; }
  int nodes() const { return static_cast<int>(nodes_.size()); }
  int edges() const { return static_cast<int>(edges_.size()); }
  double psi_min() const;
  const std::vector<CylinderValue>& edge_values() const { return values_; }

 private:
  struct Perron {
    double lambda;  // of the matrix scaled by exp(s psi_min)
    std::vector<double> left, right;
    std::vector<double> weights;
    int iterations;
  };
  Perron perron(double s) const;

  int n_, m_;
  std::vector<std::vector<int>> nodes_;
  std::vector<std::vector<int>> edges_;
  std::vector<int> from_, to_;
  std::vector<CylinderValue> values_;
};

inline constexpr double kPowerTolerance = 1e-14;
inline constexpr int kPowerMaxSteps = 100000;

PressureEstimate pressure_periodic_sum(PotentialSource& source, double s, int n,
                                       bool with_delta = false);
PressureEstimate pressure_periodic_sum(const BilliardTable& table, double s, int n, double alpha);
std::pair<PressureEstimate, GibbsMeasure> pressure_transfer_matrix(PotentialSource& source,
                                                                   double s, int n,
                                                                   bool with_delta = false);
std::pair<PressureEstimate, GibbsMeasure> pressure_transfer_matrix(const BilliardTable& table,
                                                                   double s, int n, double alpha);

struct BowenResult {
  double root = 0.0;
  PressureEstimate at_root;
  int iterations = 0;
  double bracket_hi = 0.0;
};

BowenResult bowen_root(const PeriodicSum& p, double tol = 1e-13);
BowenResult bowen_root(const TransferMatrix& p, double tol = 1e-13);
BowenResult bowen_root(PotentialSource& source, int n,
                       PressureMethod method = PressureMethod::transfer_matrix,
                       double tol = 1e-13);
double bowen_root(const BilliardTable& table, int n, double alpha, double tol = 1e-13);

struct GibbsIntegrals {
  double int_psi = 0.0;
  double int_dpsi = 0.0;
};

GibbsIntegrals gibbs_integrals(const TransferMatrix& p, double s);
GibbsIntegrals gibbs_integrals(const BilliardTable& table, double s, int n, double alpha);

struct DimensionOptions {
  int depth = 8;
  bool previous_depth = true;  // also run at n - 2 for the convergence proxy
  bool cross_check = true;     // periodic-sum pressure at the transfer-matrix root
  bool pool = true;            // solve all words of length 2..n into the pool
  double tol = 1e-13;
  SolveOptions solve;
};

struct DimensionReport {
  double alpha = 0.0;
  int n = 0;
  int m = 0;
  double Du = 0.0, Ds = 0.0, D = 0.0;
  double lower = 0.0, upper = 0.0;
  double h = 0.0;  // entropy of the equilibrium measure, D^(u) ∫psi
  double int_psi = 0.0, int_dpsi = 0.0;
  double dDu_dalpha = 0.0, dD_dalpha = 0.0;
  double dD_bound = 0.0;
  double mu0_lower = 0.0;  // 2 log(m-1) / ∫psi dmu_0, mu_0 the s = 0 Gibbs measure
  double pressure_at_root = 0.0;
  double periodic_pressure_at_root = std::numeric_limits<double>::quiet_NaN();
  double D_previous = std::numeric_limits<double>::quiet_NaN();
  double delta_n = std::numeric_limits<double>::quiet_NaN();
  int bowen_iterations = 0;
  PotentialBounds bounds;

  bool bracket_ok(double slack = 1e-12) const {
    return lower <= D + slack && D <= upper + slack;
  }
  bool derivative_bound_ok(double slack = 1e-12) const {
    return std::abs(dD_dalpha) <= dD_bound + slack;
  }
};

DimensionReport dimension_report(PotentialSource& source, const DimensionOptions& options = {});
DimensionReport dimension_report(const BilliardTable& table, double alpha,
                                 const DimensionOptions& options = {},
                                 std::shared_ptr<OrbitCache> cache = nullptr);
double dimension_derivative(const BilliardTable& table, double alpha, int n = 8);

}  // namespace bdim
