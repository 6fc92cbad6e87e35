#pragma once

// Symmetric cyclic tridiagonal matrices: A_jj = diag[j], A_{j,j-1} = A_{j-1,j} = sub[j]
// with indices mod n, so sub[0] is the corner coupling 0 <-> n-1. For n = 2 both
// couplings join the same pair and add up.

#include <span>
#include <vector>

namespace bdim {

struct CyclicTridiagonal {
  std::vector<double> diag;
  std::vector<double> sub;

  CyclicTridiagonal() = default;
  explicit CyclicTridiagonal(int n) : diag(n, 0.0), sub(n, 0.0) {}

  int size() const { return static_cast<int>(diag.size()); }
  // Row-major dense copy.
  std::vector<double> dense() const;
  std::vector<double> apply(std::span<const double> x) const;
  // min_i (|A_ii| - sum_{j != i} |A_ij|)
  double dominance_gap() const;
};

// O(n) solve (Thomas with a Sherman-Morrison corner correction; dense for n = 2).
// Throws NumericalError when the matrix is not strictly diagonally dominant by rows.
std::vector<double> cyclic_tridiag_solve(const CyclicTridiagonal& a, std::span<const double> b);

// Varah: ||A^{-1}||_inf <= 1/h.
double varah_bound(const CyclicTridiagonal& a);

}  // namespace bdim
