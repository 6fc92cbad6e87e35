#include "bdim/cyclic_tridiagonal.hpp"

#include <cmath>
#include <limits>

#include "bdim/error.hpp"

namespace bdim {

std::vector<double> CyclicTridiagonal::dense() const {
  const int n = size();
  std::vector<double> m(static_cast<std::size_t>(n) * n, 0.0);
  for (int j = 0; j < n; ++j) {
    m[j * n + j] += diag[j];
    const int i = (j + n - 1) % n;
    if (i == j) continue;
    m[j * n + i] += sub[j];
    m[i * n + j] += sub[j];
  }
  return m;
}

std::vector<double> CyclicTridiagonal::apply(std::span<const double> x) const {
  const int n = size();
  std::vector<double> y(n, 0.0);
  for (int j = 0; j < n; ++j) {
    y[j] += diag[j] * x[j];
    const int i = (j + n - 1) % n;
    if (i == j) continue;
    y[j] += sub[j] * x[i];
    y[i] += sub[j] * x[j];
  }
  return y;
}

double CyclicTridiagonal::dominance_gap() const {
  const int n = size();
  double h = std::numeric_limits<double>::infinity();
  for (int j = 0; j < n; ++j) {
    double off;
    if (n == 1) {
      off = 0.0;
    } else if (n == 2) {
      off = std::abs(sub[0] + sub[1]);
    } else {
      off = std::abs(sub[j]) + std::abs(sub[(j + 1) % n]);
    }
    h = std::min(h, std::abs(diag[j]) - off);
  }
  return h;
}

namespace {

// Tridiagonal solve with diagonal d, coupling c[j] between j and j-1 (c[0] ignored).
std::vector<double> thomas(std::vector<double> d, const std::vector<double>& c,
                           std::vector<double> rhs) {
  const int n = static_cast<int>(d.size());
  for (int j = 1; j < n; ++j) {
    const double w = c[j] / d[j - 1];
    d[j] -= w * c[j];
    rhs[j] -= w * rhs[j - 1];
  }
  rhs[n - 1] /= d[n - 1];
  for (int j = n - 2; j >= 0; --j) rhs[j] = (rhs[j] - c[j + 1] * rhs[j + 1]) / d[j];
  return rhs;
}

}  // namespace

std::vector<double> cyclic_tridiag_solve(const CyclicTridiagonal& a, std::span<const double> b) {
  const int n = a.size();
  if (static_cast<int>(b.size()) != n) throw DomainError("right-hand side size mismatch");
  if (n == 0) return {};
  if (!(a.dominance_gap() > 0.0)) {
    throw NumericalError("cyclic tridiagonal matrix is not diagonally dominant");
  }
  if (n == 1) return {b[0] / a.diag[0]};
  if (n == 2) {
    const double off = a.sub[0] + a.sub[1];
    const double det = a.diag[0] * a.diag[1] - off * off;
    return {(a.diag[1] * b[0] - off * b[1]) / det, (a.diag[0] * b[1] - off * b[0]) / det};
  }

  // A = T + w w^T / gamma-style correction with u = (g, 0.., c), v = (1, 0.., c/g).
  const double corner = a.sub[0];
  const double g = -a.diag[0];
  std::vector<double> d = a.diag;
  d[0] -= g;
  d[n - 1] -= corner * corner / g;

  std::vector<double> rhs(b.begin(), b.end());
  std::vector<double> y = thomas(d, a.sub, rhs);
  std::vector<double> u(n, 0.0);
  u[0] = g;
  u[n - 1] = corner;
  std::vector<double> z = thomas(d, a.sub, u);

  const double vy = y[0] + corner / g * y[n - 1];
  const double vz = z[0] + corner / g * z[n - 1];
  const double f = vy / (1.0 + vz);
  for (int j = 0; j < n; ++j) y[j] -= f * z[j];
  return y;
}

double varah_bound(const CyclicTridiagonal& a) {
  const double h = a.dominance_gap();
  if (!(h > 0.0)) throw NumericalError("Varah bound needs strict diagonal dominance");
  return 1.0 / h;
}

}  // namespace bdim
