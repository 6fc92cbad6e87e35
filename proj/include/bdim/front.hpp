#pragma once

// Unstable-front curvatures along periodic orbits.
//
// k_j is the curvature of the front on segment j (arriving at bounce j):
//   k_{j+1} = k_j / (1 + d_j k_j) + gamma_j,
// and psi_j = log(1 + d_j k_j) is the expansion along that segment.

#include <span>
#include <vector>

#include "bdim/deform.hpp"
#include "bdim/orbit.hpp"

namespace bdim {

struct FrontData {
  std::vector<double> k;
  std::vector<double> expansion;    // a^(u) = 1 + d k
  std::vector<double> contraction;  // a^(s) = 1 / a^(u)
  std::vector<double> psi;          // psi^(u)
  std::vector<double> psi_s;        // psi^(s) = -psi^(u)
  std::vector<double> dk;
  std::vector<double> dpsi;
};

// Positive periodic fixed point started from `base`, propagated forward around the cycle.
std::vector<double> cycle_curvatures(std::span<const double> d, std::span<const double> gamma,
                                     int base = 0);
std::vector<double> cycle_curvatures(const PeriodicOrbit& orbit);

struct Expansion {
  std::vector<double> a_u, a_s, psi_u, psi_s;
};
Expansion expansion_and_potential(std::span<const double> d, std::span<const double> k);
Expansion expansion_and_potential(const PeriodicOrbit& orbit, std::span<const double> k);

// Cyclic geometric series with beta_j = (1 + d_j k_j)^-2,
// eta_j = dgamma_j - k_j^2 (1 + d_j k_j)^-2 dd_j, evaluated at every base index.
std::vector<double> dk_dalpha(std::span<const double> d, std::span<const double> k,
                              std::span<const double> dd, std::span<const double> dgamma);
std::vector<double> dk_dalpha(const PeriodicOrbit& orbit, const AlphaDerivatives& derivs,
                              std::span<const double> k);

std::vector<double> dpsi_dalpha(std::span<const double> d, std::span<const double> k,
                                std::span<const double> dd, std::span<const double> dk);
std::vector<double> dpsi_dalpha(const PeriodicOrbit& orbit, const AlphaDerivatives& derivs,
                                std::span<const double> k, std::span<const double> dk);

FrontData front_data(const PeriodicOrbit& orbit, const AlphaDerivatives& derivs);

struct KBounds {
  double k_min = 0.0;
  double k_max = 0.0;
  double initial_lo = 0.0;
  double initial_hi = 0.0;
  int iterations = 0;
};

// Interval extension of the recurrence started at [gamma_min, gamma_max + 1/d_min].
KBounds k_bounds(double d_min, double d_max, double gamma_min, double gamma_max);
KBounds k_bounds(const PoolStats& pool);

struct FrontBounds {
  double beta_max = 0.0;
  double eta_max = 0.0;
  double C_k = 0.0;
  double C_psi = 0.0;
};

FrontBounds front_bounds(const BoundConstants& c, const KBounds& kb, double d_min, double d_max);

}  // namespace bdim
