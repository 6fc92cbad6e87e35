#include "bdim/front.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "bdim/error.hpp"

namespace bdim {
namespace {

using Mobius = std::array<double, 4>;  // (A B; C D): k -> (A k + B) / (C k + D)

Mobius step(double d, double gamma) { return {1.0 + gamma * d, gamma, d, 1.0}; }

Mobius compose(const Mobius& outer, const Mobius& inner) {
  Mobius r{outer[0] * inner[0] + outer[1] * inner[2], outer[0] * inner[1] + outer[1] * inner[3],
           outer[2] * inner[0] + outer[3] * inner[2], outer[2] * inner[1] + outer[3] * inner[3]};
  const double s = std::max({r[0], r[1], r[2], r[3]});
  for (double& v : r) v /= s;
  return r;
}

void check_lengths(std::size_t a, std::size_t b) {
  if (a != b || a == 0) throw DomainError("front inputs must be nonempty and of equal length");
}

}  // namespace

std::vector<double> cycle_curvatures(std::span<const double> d, std::span<const double> gamma,
                                     int base) {
  check_lengths(d.size(), gamma.size());
  const int n = static_cast<int>(d.size());
  base = ((base % n) + n) % n;
  Mobius m{1.0, 0.0, 0.0, 1.0};
  for (int l = 0; l < n; ++l) {
    const int j = (base + l) % n;
    m = compose(step(d[j], gamma[j]), m);
  }
  // C k^2 + (D - A) k - B = 0, positive root written without cancellation.
  const double A = m[0], B = m[1], C = m[2], D = m[3];
  const double disc = std::sqrt((A - D) * (A - D) + 4.0 * B * C);
  const double kb = (A - D) >= 0.0 ? ((A - D) + disc) / (2.0 * C) : 2.0 * B / (disc - (A - D));
  std::vector<double> k(n);
  k[base] = kb;
  for (int l = 0; l + 1 < n; ++l) {
    const int j = (base + l) % n;
    k[(j + 1) % n] = k[j] / (1.0 + d[j] * k[j]) + gamma[j];
  }
  return k;
}

std::vector<double> cycle_curvatures(const PeriodicOrbit& o) { return cycle_curvatures(o.d, o.gamma); }

Expansion expansion_and_potential(std::span<const double> d, std::span<const double> k) {
  check_lengths(d.size(), k.size());
  Expansion e;
  for (std::size_t j = 0; j < d.size(); ++j) {
    const double a = 1.0 + d[j] * k[j];
    e.a_u.push_back(a);
    e.a_s.push_back(1.0 / a);
    e.psi_u.push_back(std::log1p(d[j] * k[j]));
    e.psi_s.push_back(-e.psi_u.back());
  }
  return e;
}

Expansion expansion_and_potential(const PeriodicOrbit& o, std::span<const double> k) {
  return expansion_and_potential(o.d, k);
}

std::vector<double> dk_dalpha(std::span<const double> d, std::span<const double> k,
                              std::span<const double> dd, std::span<const double> dgamma) {
  check_lengths(d.size(), k.size());
  check_lengths(d.size(), dd.size());
  check_lengths(d.size(), dgamma.size());
  const int n = static_cast<int>(d.size());
  std::vector<double> beta(n), eta(n);
  for (int j = 0; j < n; ++j) {
    const double a = 1.0 + d[j] * k[j];
    beta[j] = 1.0 / (a * a);
    eta[j] = dgamma[j] - k[j] * k[j] / (a * a) * dd[j];
  }
  double prod = 1.0;
  for (double b : beta) prod *= b;
  std::vector<double> out(n);
  // dk_b = (eta_{b-1} + beta_{b-1} eta_{b-2} + ... + beta_{b-1}..beta_{b-n+1} eta_b) / (1 - prod beta)
  for (int b = 0; b < n; ++b) {
    double sum = 0.0, w = 1.0;
    for (int l = 1; l <= n; ++l) {
      const int j = ((b - l) % n + n) % n;
      sum += w * eta[j];
      w *= beta[j];
    }
    out[b] = sum / (1.0 - prod);
  }
  return out;
}

std::vector<double> dk_dalpha(const PeriodicOrbit& o, const AlphaDerivatives& a,
                              std::span<const double> k) {
  return dk_dalpha(o.d, k, a.dd, a.dgamma);
}

std::vector<double> dpsi_dalpha(std::span<const double> d, std::span<const double> k,
                                std::span<const double> dd, std::span<const double> dk) {
  check_lengths(d.size(), k.size());
  std::vector<double> out(d.size());
  for (std::size_t j = 0; j < d.size(); ++j) {
    out[j] = (dd[j] * k[j] + d[j] * dk[j]) / (1.0 + d[j] * k[j]);
  }
  return out;
}

std::vector<double> dpsi_dalpha(const PeriodicOrbit& o, const AlphaDerivatives& a,
                                std::span<const double> k, std::span<const double> dk) {
  return dpsi_dalpha(o.d, k, a.dd, dk);
}

FrontData front_data(const PeriodicOrbit& o, const AlphaDerivatives& a) {
  FrontData f;
  f.k = cycle_curvatures(o);
  Expansion e = expansion_and_potential(o, f.k);
  f.expansion = std::move(e.a_u);
  f.contraction = std::move(e.a_s);
  f.psi = std::move(e.psi_u);
  f.psi_s = std::move(e.psi_s);
  f.dk = dk_dalpha(o, a, f.k);
  f.dpsi = dpsi_dalpha(o, a, f.k, f.dk);
  return f;
}

KBounds k_bounds(double d_min, double d_max, double gamma_min, double gamma_max) {
  if (!(d_min > 0.0 && d_max >= d_min && gamma_min > 0.0 && gamma_max >= gamma_min)) {
    throw DomainError("k_bounds needs 0 < d_min <= d_max and 0 < gamma_min <= gamma_max");
  }
  KBounds kb;
  kb.initial_lo = gamma_min;
  kb.initial_hi = gamma_max + 1.0 / d_min;
  double lo = kb.initial_lo, hi = kb.initial_hi;
  for (int it = 0; it < 200; ++it) {
    const double nlo = lo / (1.0 + d_max * lo) + gamma_min;
    const double nhi = hi / (1.0 + d_min * hi) + gamma_max;
    kb.iterations = it + 1;
    const bool fixed = nlo == lo && nhi == hi;
    lo = nlo;
    hi = nhi;
    if (fixed) break;
  }
  kb.k_min = lo;
  kb.k_max = hi;
  return kb;
}

KBounds k_bounds(const PoolStats& p) {
  if (p.orbits == 0) throw DomainError("k_bounds needs a nonempty orbit pool");
  return k_bounds(p.d_min, p.d_max, p.gamma_min, p.gamma_max);
}

FrontBounds front_bounds(const BoundConstants& c, const KBounds& kb, double d_min, double d_max) {
  FrontBounds f;
  const double amin = 1.0 + d_min * kb.k_min;
  f.beta_max = 1.0 / (amin * amin);
  const double akmax = 1.0 + d_min * kb.k_max;
  f.eta_max = c.C_gamma + kb.k_max * kb.k_max * c.C_d / (akmax * akmax);
  f.C_k = f.eta_max / (1.0 - f.beta_max);
  for (double d : {d_min, d_max}) {
    for (double k : {kb.k_min, kb.k_max}) {
      f.C_psi = std::max(f.C_psi, (c.C_d * k + f.C_k * d) / (1.0 + d * k));
    }
  }
  return f;
}

}  // namespace bdim
