#pragma once

// Periodic billiard orbits as minimizers of the length function
//
//   G(u_1..u_n) = sum_j |p_j - p_{j-1}|,  p_j = phi_{xi_j}(u_j),
//
// with indices mod n. Edge j joins p_{j-1} and p_j, so d_j is the length of
// the segment arriving at bounce j.

#include <optional>
#include <span>
#include <vector>

#include "bdim/cyclic_tridiagonal.hpp"
#include "bdim/geometry.hpp"
#include "bdim/symbolic.hpp"

namespace bdim {

struct PeriodicOrbit {
  CyclicWord word;
  double alpha = 0.0;
  std::vector<double> u;
  std::vector<Vec2> p;
  std::vector<double> d;
  std::vector<double> phi;
  std::vector<double> cos_phi;
  std::vector<double> kappa;
  std::vector<double> gamma;
  std::vector<CurveJet> jets;
  double residual = 0.0;             // ||grad G||_inf
  double reflection_residual = 0.0;  // max |angle in - angle out|
  double clearance = 0.0;            // min distance of a segment to a third obstacle
  int newton_steps = 0;
  bool used_fallback = false;

  int size() const { return static_cast<int>(u.size()); }
};

// Orbit of word.rotated(k) from the orbit of word.
PeriodicOrbit rotate_orbit(const PeriodicOrbit& orbit, int k);

double length_G(const TableAt& at, const CyclicWord& word, std::span<const double> u);
std::vector<double> grad_G(const TableAt& at, const CyclicWord& word, std::span<const double> u);
// Exact second derivatives of G (cyclic tridiagonal by structure).
CyclicTridiagonal exact_hessian(const TableAt& at, const CyclicWord& word,
                                std::span<const double> u);
// Hessian in the reflection form: diag (a_j + a_{j+1}) cos^2 phi_j + 2 kappa_j cos phi_j,
// coupling a_j cos phi_j cos phi_{j-1}; equal to the exact Hessian at stationary points.
CyclicTridiagonal hess_G(const TableAt& at, const CyclicWord& word, std::span<const double> u);

double length_G(const BilliardTable& table, const CyclicWord& word, std::span<const double> u,
                double alpha);
std::vector<double> grad_G(const BilliardTable& table, const CyclicWord& word,
                           std::span<const double> u, double alpha);
CyclicTridiagonal hess_G(const BilliardTable& table, const CyclicWord& word,
                         std::span<const double> u, double alpha);

struct FindOrbitOptions {
  double tol = 1e-10;
  int max_newton = 60;
  int fallback_sweeps = 200;
  double clearance_tol = 1e-9;
};

// Default starting point: on each obstacle, the boundary sample nearest the
// midpoint of the two neighbouring obstacle centers.
std::vector<double> initial_guess(const TableAt& at, const CyclicWord& word);

PeriodicOrbit find_orbit(const TableAt& at, const CyclicWord& word,
                         std::optional<std::vector<double>> init = std::nullopt,
                         const FindOrbitOptions& options = {});
PeriodicOrbit find_orbit(const BilliardTable& table, const CyclicWord& word, double alpha,
                         std::optional<std::vector<double>> init = std::nullopt,
                         const FindOrbitOptions& options = {});

// Bounce quantities (p, d, phi, kappa, gamma, jets, reflection) at parameters u.
PeriodicOrbit evaluate_orbit(const TableAt& at, const CyclicWord& word, std::vector<double> u);

// Hessian in the variables y_j = cos(phi_j) u_j:
// A_jj = a_j + a_{j+1} + gamma_j, coupling a_j = 1/d_j.
CyclicTridiagonal scaled_system(const PeriodicOrbit& orbit);

struct PoolStats {
  int orbits = 0;
  double d_min = 0.0, d_max = 0.0;
  double phi_max = 0.0, cos_phi_min = 1.0;
  double kappa_min = 0.0, kappa_max = 0.0;
  double gamma_min = 0.0, gamma_max = 0.0;

  void add(const PeriodicOrbit& orbit);
  void merge(const PoolStats& other);
};

}  // namespace bdim
