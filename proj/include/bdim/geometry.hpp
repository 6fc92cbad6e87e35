#pragma once

// Deformable strictly convex obstacles and billiard tables.
//
// Every obstacle boundary is a family of closed curves phi(u, α), u the
// counterclockwise arclength measured from a fixed "seam" and α the
// deformation parameter. Shapes are given in a natural parameter t
// (polar angle, eccentric anomaly); non-circular shapes are reparametrized
// by arclength through a per-α quadrature table built when a TableAt
// snapshot is created. All objects are immutable after construction.

#include <array>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "bdim/jet.hpp"
#include "bdim/vec2.hpp"

namespace bdim {

// Polynomial in α, ascending coefficients.
using Polynomial = std::vector<double>;

double eval_poly(const Polynomial& p, double alpha);

template <int P>
Jet<P> eval_poly(const Polynomial& p, const Jet<P>& alpha) {
  Jet<P> r;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    r = r * alpha;
    r += *it;
  }
  return r;
}

struct AlphaInterval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double alpha, double tol = 1e-12) const {
    return alpha >= lo - tol && alpha <= hi + tol;
  }
  double mid() const { return 0.5 * (lo + hi); }
};

enum class CurveKind { circle, ellipse, polar_harmonic };

const char* to_string(CurveKind kind);

class CurveFamily {
 public:
  static CurveFamily circle(Polynomial cx, Polynomial cy, Polynomial radius);
  // Semi-axes (a along the rotated x axis, b along the rotated y axis), rotation angle.
  static CurveFamily ellipse(Polynomial cx, Polynomial cy, Polynomial semi_a,
                             Polynomial semi_b, Polynomial angle);
  // rho(θ) = base + sum_k cos_coeffs[k-1] * cos(k θ).
  static CurveFamily polar_harmonic(Polynomial cx, Polynomial cy, Polynomial base_radius,
                                    std::vector<Polynomial> cos_coeffs);

  // Natural parameter offset of the arclength origin u = 0.
  CurveFamily with_seam(double seam) const;
  // Similarity image x -> λ x.
  CurveFamily scaled(double lambda) const;

  CurveKind kind() const { return kind_; }
  double seam() const { return seam_; }
  bool has_explicit_seam() const { return explicit_seam_; }
  bool depends_on_alpha() const;

  const Polynomial& center_x() const { return cx_; }
  const Polynomial& center_y() const { return cy_; }
  // circle: {radius}; ellipse: {a, b, angle}; polar: {base, cos_1, cos_2, ...}
  const std::vector<Polynomial>& shape() const { return shape_; }

  Vec2 center(double alpha) const;

  // Boundary point at natural parameter t (angle offset by the seam).
  template <int P>
  std::array<Jet<P>, 2> natural_point(const Jet<P>& t, const Jet<P>& alpha) const;

  // Curvature from the natural parametrization (no arclength table needed).
  double natural_curvature(double t, double alpha) const;

 private:
  CurveFamily(CurveKind kind, Polynomial cx, Polynomial cy, std::vector<Polynomial> shape);

  CurveKind kind_;
  Polynomial cx_, cy_;
  std::vector<Polynomial> shape_;
  double seam_ = 0.0;
  bool explicit_seam_ = false;
};

template <int P>
std::array<Jet<P>, 2> CurveFamily::natural_point(const Jet<P>& t, const Jet<P>& alpha) const {
  const Jet<P> theta = t + seam_;
  const Jet<P> c = cos(theta);
  const Jet<P> s = sin(theta);
  const Jet<P> x0 = eval_poly(cx_, alpha);
  const Jet<P> y0 = eval_poly(cy_, alpha);
  switch (kind_) {
    case CurveKind::circle: {
      const Jet<P> r = eval_poly(shape_[0], alpha);
      return {x0 + r * c, y0 + r * s};
    }
    case CurveKind::ellipse: {
      const Jet<P> a = eval_poly(shape_[0], alpha);
      const Jet<P> b = eval_poly(shape_[1], alpha);
      const Jet<P> ang = eval_poly(shape_[2], alpha);
      const Jet<P> ca = cos(ang), sa = sin(ang);
      const Jet<P> ex = a * c, ey = b * s;
      return {x0 + ca * ex - sa * ey, y0 + sa * ex + ca * ey};
    }
    case CurveKind::polar_harmonic: {
      Jet<P> rho = eval_poly(shape_[0], alpha);
      for (std::size_t k = 1; k < shape_.size(); ++k) {
        rho += eval_poly(shape_[k], alpha) * cos(static_cast<double>(k) * theta);
      }
      return {x0 + rho * c, y0 + rho * s};
    }
  }
  return {x0, y0};
}

// Arclength jet at one boundary point: d[q][q'] = ∂^{q+q'} phi / ∂u^q ∂α^{q'}
// for q <= 3, q' <= 1.
struct CurveJet {
  std::array<std::array<Vec2, 2>, 4> d{};

  Vec2 point() const { return d[0][0]; }
  Vec2 tangent() const { return d[1][0]; }
  Vec2 normal() const { return perp_cw(d[1][0]); }
  double curvature() const { return cross(d[1][0], d[2][0]); }
  double curvature_du() const { return cross(d[1][0], d[3][0]); }
  double curvature_dalpha() const { return cross(d[1][1], d[2][0]) + cross(d[1][0], d[2][1]); }
};

inline constexpr int kMaxJetU = 3;
inline constexpr int kMaxJetAlpha = 1;

// One obstacle frozen at a deformation parameter value.
class CurveAt {
 public:
  static constexpr int kPanels = 128;
  static constexpr int kPolygonSamples = 512;

  CurveAt(const CurveFamily& family, double alpha);

  double alpha() const { return alpha_; }
  double perimeter() const { return perimeter_; }
  Vec2 center() const { return center_; }
  double wrap(double u) const;

  // Natural parameter of arclength position u (u wrapped first).
  double t_of_u(double u) const;
  CurveJet jets(double u) const;
  Vec2 point(double u) const;
  double curvature(double u) const;

  // Counterclockwise boundary samples of the given size.
  std::vector<Vec2> sample_boundary(int count) const;
  const std::vector<Vec2>& polygon() const { return polygon_; }

  const CurveFamily& family() const { return family_; }

 private:
  // Arclength from the seam to natural parameter t and its α-derivative at fixed t.
  std::pair<double, double> arclength(double t) const;
  std::pair<double, double> speed(double t) const;

  CurveFamily family_;
  double alpha_;
  double perimeter_ = 0.0;
  Vec2 center_;
  std::vector<double> cum_length_;   // panel boundaries, size kPanels + 1
  std::vector<double> cum_dalpha_;   // ∂/∂α of cum_length_ at fixed t
  std::vector<Vec2> polygon_;
};

class TableAt;

class BilliardTable {
 public:
  // Validates m >= 3, strict convexity over I and the deformed-obstacle rule.
  // Seams of obstacles without an explicit seam face away from the table centroid.
  BilliardTable(std::vector<CurveFamily> obstacles, AlphaInterval interval,
                bool allow_multiple_deformed = false);

  int size() const { return static_cast<int>(obstacles_->size()); }
  const CurveFamily& obstacle(int index) const { return (*obstacles_)[index]; }
  const std::vector<CurveFamily>& obstacles() const { return *obstacles_; }
  AlphaInterval interval() const { return interval_; }
  bool allow_multiple_deformed() const { return allow_multiple_; }

  // δ_i for 0-based index.
  bool deformed(int index) const { return deformed_[index]; }
  int deformed_count() const;
  bool single_deformed() const { return deformed_count() <= 1; }

  TableAt at(double alpha) const;
  BilliardTable scaled(double lambda) const;

 private:
  std::shared_ptr<const std::vector<CurveFamily>> obstacles_;
  std::vector<bool> deformed_;
  AlphaInterval interval_;
  bool allow_multiple_;
};

// Immutable snapshot of a table at one α; shared read-only across workers.
class TableAt {
 public:
  TableAt(const BilliardTable& table, double alpha);

  double alpha() const { return alpha_; }
  int size() const { return static_cast<int>(curves_.size()); }
  const CurveAt& curve(int index) const { return curves_[index]; }
  bool deformed(int index) const { return deformed_[index]; }
  bool single_deformed() const;
  Vec2 centroid() const;

 private:
  double alpha_;
  std::vector<CurveAt> curves_;
  std::vector<bool> deformed_;
};

// --- operations (obstacle indices are 1-based, as in words) ---

CurveJet point_and_jets(const BilliardTable& table, int obstacle, double u, double alpha,
                        int max_q = kMaxJetU, int max_q_alpha = kMaxJetAlpha);
double perimeter(const BilliardTable& table, int obstacle, double alpha);
double curvature(const BilliardTable& table, int obstacle, double u, double alpha);

struct NoEclipseReport {
  bool pass = true;
  bool disjoint = true;
  double min_distance = 0.0;             // min over triples of dist(hull(K_i ∪ K_j), K_k)
  std::array<int, 3> witness{0, 0, 0};   // 1-based (i, j, k) attaining the minimum
  double min_pair_distance = 0.0;
  std::array<int, 2> pair_witness{0, 0};
};

NoEclipseReport check_no_eclipse(const TableAt& at, int samples = 512, double margin = 1e-9);
NoEclipseReport check_no_eclipse(const BilliardTable& table, double alpha, int samples = 512,
                                 double margin = 1e-9);

struct DeformationConstants {
  // c[q][q'] = sup || ∂^{q+q'} phi / ∂u^q ∂α^{q'} ||, c[0][0] unused.
  std::array<std::array<double, 2>, 4> c{};
  double kappa_min = 0.0;
  double kappa_max = 0.0;

  double operator()(int q, int q_alpha) const { return c[q][q_alpha]; }
};

DeformationConstants deformation_constants(const BilliardTable& table,
                                           std::span<const double> alpha_samples,
                                           int u_samples = 256, double safety = 1.05);

}  // namespace bdim
