#pragma once

// Test tables shared by the unit and acceptance suites.

#include <cmath>
#include <numbers>
#include <vector>

#include "bdim/geometry.hpp"

namespace bdim::testing {

// Vertex k of an equilateral triangle with the given side, centroid at the origin.
inline Vec2 vertex(double side, int k) {
  const double r = side / std::sqrt(3.0);
  const double a = std::numbers::pi / 2.0 + 2.0 * std::numbers::pi * k / 3.0;
  return {r * std::cos(a), r * std::sin(a)};
}

inline CurveFamily disk_at(Vec2 c, Polynomial radius = {1.0}) {
  return CurveFamily::circle({c.x}, {c.y}, std::move(radius));
}

inline BilliardTable three_disks(double side = 6.0, AlphaInterval interval = {0.0, 0.0}) {
  std::vector<CurveFamily> obs;
  for (int k = 0; k < 3; ++k) obs.push_back(disk_at(vertex(side, k)));
  return BilliardTable(std::move(obs), interval);
}

// r_1(α) = 1 + α.
inline BilliardTable radius_family(double side = 6.0) {
  std::vector<CurveFamily> obs;
  obs.push_back(disk_at(vertex(side, 0), {1.0, 1.0}));
  for (int k = 1; k < 3; ++k) obs.push_back(disk_at(vertex(side, k)));
  return BilliardTable(std::move(obs), {-0.1, 0.2});
}

// K_1(α) = K_1(0) + α v.
inline BilliardTable shift_family(Vec2 v = {1.0, 0.0}, double side = 6.0) {
  std::vector<CurveFamily> obs;
  const Vec2 c = vertex(side, 0);
  obs.push_back(CurveFamily::circle({c.x, v.x}, {c.y, v.y}, {1.0}));
  for (int k = 1; k < 3; ++k) obs.push_back(disk_at(vertex(side, k)));
  return BilliardTable(std::move(obs), {-0.5, 0.5});
}

// Centers c_i (1 + α): every obstacle moves, shapes fixed.
inline BilliardTable expansion_family(double side = 6.0) {
  std::vector<CurveFamily> obs;
  for (int k = 0; k < 3; ++k) {
    const Vec2 c = vertex(side, k);
    obs.push_back(CurveFamily::circle({c.x, c.x}, {c.y, c.y}, {1.0}));
  }
  return BilliardTable(std::move(obs), {-0.2, 10.0}, true);
}

// Two disks and a (2,1) ellipse with its major axis along x and seam 0.
inline BilliardTable ellipse_table() {
  std::vector<CurveFamily> obs;
  obs.push_back(CurveFamily::ellipse({0.0}, {0.0}, {2.0}, {1.0}, {0.0}).with_seam(0.0));
  obs.push_back(disk_at({8.0, 0.0}));
  obs.push_back(disk_at({4.0, 7.0}));
  return BilliardTable(std::move(obs), {0.0, 0.0});
}

// Table mixing all three curve kinds with α in every shape coefficient of obstacle 1.
inline BilliardTable mixed_family() {
  std::vector<CurveFamily> obs;
  obs.push_back(CurveFamily::polar_harmonic({0.0, 0.3}, {4.0}, {1.0, 0.2}, {{0.0}, {0.08, 0.05}}));
  obs.push_back(CurveFamily::ellipse({-3.5}, {-2.0}, {1.2}, {0.8}, {0.4}));
  obs.push_back(disk_at({3.5, -2.0}, {0.9}));
  return BilliardTable(std::move(obs), {-0.2, 0.2});
}

}  // namespace bdim::testing
