#include "bdim/deform.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "bdim/error.hpp"

namespace bdim {

std::vector<double> mixed_partial(const std::vector<CurveJet>& jets) {
  const int n = static_cast<int>(jets.size());
  std::vector<double> out(n, 0.0);
  for (int j = 0; j < n; ++j) {
    const CurveJet& pj = jets[j];
    for (int i : {(j + n - 1) % n, (j + 1) % n}) {
      const CurveJet& pi = jets[i];
      const Vec2 e = pj.point() - pi.point();
      const double dist = norm(e);
      const double a = 1.0 / dist;
      const Vec2 v = e * a;
      const Vec2 w = pj.d[0][1] - pi.d[0][1];
      out[j] += dot(v, pj.d[1][1]) + a * dot(w, pj.tangent()) -
                a * dot(v, w) * dot(v, pj.tangent());
    }
  }
  return out;
}

std::vector<double> alpha_rhs(const PeriodicOrbit& o) {
  if (static_cast<int>(o.jets.size()) != o.size()) {
    throw DomainError("orbit carries no α-jets");
  }
  std::vector<double> b = mixed_partial(o.jets);
  for (int j = 0; j < o.size(); ++j) b[j] /= o.cos_phi[j];
  return b;
}

namespace {

std::vector<double> solve_y(const PeriodicOrbit& o, const std::vector<double>& b) {
  // H ∂u/∂α = -∂α∇G  becomes  A y = -b.
  std::vector<double> rhs(b.size());
  for (std::size_t j = 0; j < b.size(); ++j) rhs[j] = -b[j];
  return cyclic_tridiag_solve(scaled_system(o), rhs);
}

}  // namespace

std::vector<double> du_dalpha(const PeriodicOrbit& o) {
  const std::vector<double> y = solve_y(o, alpha_rhs(o));
  std::vector<double> du(y.size());
  for (int j = 0; j < o.size(); ++j) du[j] = y[j] / o.cos_phi[j];
  return du;
}

AlphaDerivatives quantity_derivs(const PeriodicOrbit& o, std::span<const double> du) {
  const int n = o.size();
  if (static_cast<int>(du.size()) != n) throw DomainError("∂u/∂α length mismatch");
  AlphaDerivatives r;
  r.du.assign(du.begin(), du.end());
  r.y.resize(n);
  r.dp.resize(n);
  r.dd.resize(n);
  r.dkappa.resize(n);
  r.dcos_phi.resize(n);
  r.dgamma.resize(n);
  for (int j = 0; j < n; ++j) {
    r.y[j] = du[j] * o.cos_phi[j];
    r.dp[j] = o.jets[j].tangent() * du[j] + o.jets[j].d[0][1];
    r.dkappa[j] = o.jets[j].curvature_du() * du[j] + o.jets[j].curvature_dalpha();
  }
  for (int j = 0; j < n; ++j) {
    const int i = (j + n - 1) % n;
    const Vec2 e = (o.p[j] - o.p[i]) / o.d[j];
    r.dd[j] = dot(e, r.dp[j] - r.dp[i]);
  }
  // Unit vector from p_j towards p_k and its α-derivative.
  auto unit = [&](int j, int k, double dist, Vec2& e, Vec2& de) {
    e = (o.p[k] - o.p[j]) / dist;
    const Vec2 dv = r.dp[k] - r.dp[j];
    de = (dv - e * dot(e, dv)) / dist;
  };
  for (int j = 0; j < n; ++j) {
    const int prev = (j + n - 1) % n, next = (j + 1) % n;
    Vec2 ep, dep, en, den;
    unit(j, prev, o.d[j], ep, dep);
    unit(j, next, o.d[next], en, den);
    const double dc2 = dot(dep, en) + dot(ep, den);
    const double c = o.cos_phi[j];
    r.dcos_phi[j] = dc2 / (4.0 * c);
    r.dgamma[j] = 2.0 * r.dkappa[j] / c - 2.0 * o.kappa[j] * r.dcos_phi[j] / (c * c);
  }
  r.b = alpha_rhs(o);
  return r;
}

AlphaDerivatives alpha_derivatives(const PeriodicOrbit& o) {
  const std::vector<double> du = du_dalpha(o);
  return quantity_derivs(o, du);
}

std::vector<double> d2u_dalpha2(const BilliardTable& table, const CyclicWord& word, double alpha,
                                double h) {
  const PeriodicOrbit mid = find_orbit(table, word, alpha);
  const PeriodicOrbit up = find_orbit(table, word, alpha + h, mid.u);
  const PeriodicOrbit dn = find_orbit(table, word, alpha - h, mid.u);
  const std::vector<double> a = du_dalpha(up), b = du_dalpha(dn);
  std::vector<double> out(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) out[j] = (a[j] - b[j]) / (2 * h);
  return out;
}

BoundConstants bound_constants(const DeformationConstants& dc, const PoolStats& pool,
                               bool multiple) {
  if (pool.orbits == 0) throw DomainError("bound constants need a nonempty orbit pool");
  BoundConstants k;
  k.deformation = dc;
  k.multiple = multiple;
  k.d_min = pool.d_min;
  k.cos_phi_max = pool.cos_phi_min;
  k.kappa_min = std::max(pool.kappa_min, dc.kappa_min);
  k.kappa_max = std::max(pool.kappa_max, dc.kappa_max);

  const double c01 = dc(0, 1), c11 = dc(1, 1), c21 = dc(2, 1), c30 = dc(3, 0);
  const double w = multiple ? 2.0 : 1.0;
  // Largest value of 2δ_j + δ_{j-1} + δ_{j+1} and of δ_j + δ_{j-1}.
  const double delta_sum = multiple ? 4.0 : 2.0;
  const double delta_pair = multiple ? 2.0 : 1.0;
  const double d = k.d_min, cmax = k.cos_phi_max;

  k.b_max = 2.0 * w * c01 / d + 2.0 * c11;
  k.C_u = (w * c01 + c11 * d) / (cmax * k.kappa_min * d);
  k.C_p = k.C_u + c01;
  k.C_d = 2.0 * dc(1, 0) * k.C_u + delta_pair * c01;
  k.C_kappa = c30 * k.C_u + c21;
  k.C_phi = (4.0 * k.C_u + delta_sum * c01) / (2.0 * d * cmax);
  k.C_gamma = 2.0 * k.C_kappa / cmax +
              (2.0 * k.kappa_max / cmax) * (4.0 * k.C_u + delta_sum * c01) / (2.0 * d * cmax * cmax);
  return k;
}

BoundConstants bound_constants(const BilliardTable& table, const PoolStats& pool) {
  const AlphaInterval I = table.interval();
  std::array<double, 9> grid{};
  for (int k = 0; k < 9; ++k) grid[k] = I.lo + (I.hi - I.lo) * k / 8.0;
  return bound_constants(deformation_constants(table, grid), pool, !table.single_deformed());
}

}  // namespace bdim
