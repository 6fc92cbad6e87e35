#include "bdim/hull.hpp"

#include <algorithm>
#include <limits>

namespace bdim {

std::vector<Vec2> convex_hull(std::vector<Vec2> points) {
  std::sort(points.begin(), points.end(), [](Vec2 a, Vec2 b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  points.erase(std::unique(points.begin(), points.end(),
                           [](Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }),
               points.end());
  if (points.size() < 3) return points;

  std::vector<Vec2> hull(2 * points.size());
  std::size_t k = 0;
  for (const Vec2& p : points) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = points.size() - 1, lower = k + 1; i > 0; --i) {
    const Vec2& p = points[i - 1];
    while (k >= lower && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0.0) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  return hull;
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return norm(p - (a + t * ab));
}

bool point_in_convex_polygon(Vec2 p, std::span<const Vec2> poly) {
  const std::size_t n = poly.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = poly[i];
    const Vec2 b = poly[(i + 1) % n];
    if (cross(b - a, p - a) < 0.0) return false;
  }
  return true;
}

bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const double d1 = cross(d - c, a - c);
  const double d2 = cross(d - c, b - c);
  const double d3 = cross(b - a, c - a);
  const double d4 = cross(b - a, d - a);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return true;
  }
  auto on_segment = [](Vec2 p, Vec2 q, Vec2 r) {
    return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) && std::min(p.y, q.y) <= r.y &&
           r.y <= std::max(p.y, q.y);
  };
  if (d1 == 0 && on_segment(c, d, a)) return true;
  if (d2 == 0 && on_segment(c, d, b)) return true;
  if (d3 == 0 && on_segment(a, b, c)) return true;
  if (d4 == 0 && on_segment(a, b, d)) return true;
  return false;
}

double segment_polygon_distance(Vec2 a, Vec2 b, std::span<const Vec2> poly) {
  if (point_in_convex_polygon(a, poly) || point_in_convex_polygon(b, poly)) return 0.0;
  const std::size_t n = poly.size();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 c = poly[i];
    const Vec2 d = poly[(i + 1) % n];
    if (segments_intersect(a, b, c, d)) return 0.0;
    best = std::min({best, point_segment_distance(c, a, b), point_segment_distance(a, c, d),
                     point_segment_distance(b, c, d)});
  }
  return best;
}

double convex_polygon_distance(std::span<const Vec2> p, std::span<const Vec2> q) {
  if (p.empty() || q.empty()) return std::numeric_limits<double>::infinity();
  if (point_in_convex_polygon(p[0], q) || point_in_convex_polygon(q[0], p)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  const std::size_t np = p.size(), nq = q.size();
  for (std::size_t i = 0; i < np; ++i) {
    const Vec2 a = p[i];
    const Vec2 b = p[(i + 1) % np];
    for (std::size_t j = 0; j < nq; ++j) {
      const Vec2 c = q[j];
      const Vec2 d = q[(j + 1) % nq];
      if (segments_intersect(a, b, c, d)) return 0.0;
      best = std::min({best, point_segment_distance(c, a, b), point_segment_distance(a, c, d)});
    }
  }
  return best;
}

}  // namespace bdim
