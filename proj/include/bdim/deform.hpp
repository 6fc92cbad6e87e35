#pragma once

// First α-derivatives along a solved periodic orbit and the explicit bound
// constants that control them uniformly in the period.

#include <span>
#include <vector>

#include "bdim/geometry.hpp"
#include "bdim/orbit.hpp"

namespace bdim {

struct AlphaDerivatives {
  std::vector<double> b;         // (1/cos phi_j) ∂²G/∂α∂u_j
  std::vector<double> y;         // cos(phi_j) ∂u_j/∂α
  std::vector<double> du;
  std::vector<Vec2> dp;
  std::vector<double> dd;
  std::vector<double> dkappa;
  std::vector<double> dcos_phi;
  std::vector<double> dgamma;
};

// ∂/∂α of grad G at fixed u, from the inner-product expansion; valid at any u.
std::vector<double> mixed_partial(const std::vector<CurveJet>& jets);

std::vector<double> alpha_rhs(const PeriodicOrbit& orbit);
std::vector<double> du_dalpha(const PeriodicOrbit& orbit);
AlphaDerivatives quantity_derivs(const PeriodicOrbit& orbit, std::span<const double> du);
AlphaDerivatives alpha_derivatives(const PeriodicOrbit& orbit);

// Central difference (step h) of the analytic ∂u/∂α; the only second-order estimate offered.
std::vector<double> d2u_dalpha2(const BilliardTable& table, const CyclicWord& word, double alpha,
                                double h = 1e-4);

struct BoundConstants {
  double C_u = 0.0;
  double C_p = 0.0;
  double C_d = 0.0;
  double C_kappa = 0.0;
  double C_phi = 0.0;
  double C_gamma = 0.0;
  double b_max = 0.0;

  // Inputs the constants were built from.
  DeformationConstants deformation;
  double d_min = 0.0;
  double cos_phi_max = 1.0;  // cos of the largest collision angle
  double kappa_min = 0.0;
  double kappa_max = 0.0;
  bool multiple = false;

  // Per-bounce form of the ∂u/∂α bound: C_u cos(phi_max) / cos(phi_j).
  double du_bound(double cos_phi) const { return C_u * cos_phi_max / cos_phi; }
};

BoundConstants bound_constants(const DeformationConstants& dc, const PoolStats& pool,
                               bool multiple_deformed);
// Deformation constants sampled on 9 α values across I and 256 arclength points.
BoundConstants bound_constants(const BilliardTable& table, const PoolStats& pool);

}  // namespace bdim
