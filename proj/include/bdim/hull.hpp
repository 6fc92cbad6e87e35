#pragma once

// Planar convex-polygon utilities for the sampled no-eclipse and clearance checks.

#include <span>
#include <vector>

#include "bdim/vec2.hpp"

namespace bdim {

// Counterclockwise convex hull (Andrew's monotone chain), collinear points dropped.
std::vector<Vec2> convex_hull(std::vector<Vec2> points);

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);
bool point_in_convex_polygon(Vec2 p, std::span<const Vec2> poly);
bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d);

// Distance between a segment and a convex counterclockwise polygon; 0 if they meet.
double segment_polygon_distance(Vec2 a, Vec2 b, std::span<const Vec2> poly);

// Distance between two convex counterclockwise polygons; 0 if they meet.
double convex_polygon_distance(std::span<const Vec2> p, std::span<const Vec2> q);

}  // namespace bdim
