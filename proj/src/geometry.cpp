#include "csf/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace csf {

InterfaceGeometry InterfaceGeometry::planar(double half_width) {
  InterfaceGeometry g;
  g.kind = GeometryKind::Planar1D;
  g.half_width = half_width;
  g.validate();
  return g;
}

InterfaceGeometry InterfaceGeometry::melt_pool(double center_radius, double bead_radius,
                                               double half_width) {
  InterfaceGeometry g;
  g.kind = GeometryKind::MeltPool2D;
  g.center_radius = center_radius;
  g.bead_radius = bead_radius;
  g.half_width = half_width;
  g.validate();
  return g;
}

void InterfaceGeometry::validate() const {
  require_positive(half_width, "domain half-width");
  if (kind == GeometryKind::MeltPool2D) {
    require_positive(center_radius, "center radius");
    require_positive(bead_radius, "bead radius");
    if (center_radius + bead_radius >= half_width) {
      throw InvalidInput("melt pool geometry requires r + b < a");
    }
  }
}

namespace {

void require_finite_point(Vec2 p) {
  require_finite(p.x, "point x");
  require_finite(p.y, "point y");
}

double sign_or_plus(double v) { return v < 0.0 ? -1.0 : 1.0; }

// Candidate projections onto the individual pieces of the melt pool midplane.

Projection project_arc(Vec2 p, double r) {
  Projection out;
  out.branch = InterfaceBranch::Arc;
  const double len = p.norm();
  if (p.y <= 0.0 && len > 0.0) {
    out.normal = p * (1.0 / len);
  } else if (p.y <= 0.0) {
    out.normal = {0.0, -1.0};
  } else {
    out.normal = {sign_or_plus(p.x), 0.0};
  }
  out.point = out.normal * r;
  return out;
}

Projection project_flat(Vec2 p, double side, double r, double b, double a) {
  Projection out;
  out.branch = InterfaceBranch::FlatSurface;
  const double ax = std::clamp(side * p.x, r + b, a);
  out.point = {side * ax, b};
  out.normal = {0.0, -1.0};
  return out;
}

Projection project_fillet(Vec2 p, double side, double r, double b) {
  Projection out;
  out.branch = InterfaceBranch::Fillet;
  const Vec2 center{side * (r + b), 0.0};
  const Vec2 v = p - center;
  const double len = v.norm();
  // The fillet covers the quarter of its circle facing the depression and
  // the flat surface: local direction (-side * cos t, sin t), t in [0, pi/2].
  const double lx = -side * v.x;
  Vec2 dir;
  if (len > 0.0 && lx >= 0.0 && v.y >= 0.0) {
    dir = v * (1.0 / len);
  } else {
    const Vec2 to_pool{-side, 0.0};
    const Vec2 to_top{0.0, 1.0};
    const Vec2 e1 = center + to_pool * b;
    const Vec2 e2 = center + to_top * b;
    dir = ((p - e1).norm() <= (p - e2).norm()) ? to_pool : to_top;
  }
  out.point = center + dir * b;
  out.normal = dir * -1.0;
  return out;
}

}  // namespace

double signed_distance(Vec2 p, const InterfaceGeometry& geom) {
  require_finite_point(p);
  if (geom.kind == GeometryKind::Planar1D) {
    return -p.x;
  }
  const double r = geom.center_radius;
  const double b = geom.bead_radius;
  const double ax = std::abs(p.x);
  if (p.y < 0.0) {
    if (ax < r + b) {
      return p.norm() - r;
    }
    return std::min(p.norm() - r, b - p.y);
  }
  if (ax >= r + b) {
    return b - p.y;
  }
  return b - std::hypot(r + b - ax, p.y);
}

Vec2 distance_gradient(Vec2 p, const InterfaceGeometry& geom) {
  require_finite_point(p);
  if (geom.kind == GeometryKind::Planar1D) {
    return {-1.0, 0.0};
  }
  const double r = geom.center_radius;
  const double b = geom.bead_radius;
  const double ax = std::abs(p.x);
  const double len = p.norm();
  const Vec2 radial = len > 0.0 ? p * (1.0 / len) : Vec2{0.0, -1.0};
  if (p.y < 0.0) {
    if (ax < r + b) {
      return radial;
    }
    return (len - r <= b - p.y) ? radial : Vec2{0.0, -1.0};
  }
  if (ax >= r + b) {
    return {0.0, -1.0};
  }
  const Vec2 center{sign_or_plus(p.x) * (r + b), 0.0};
  const Vec2 v = center - p;
  const double vl = v.norm();
  return vl > 0.0 ? v * (1.0 / vl) : Vec2{0.0, -1.0};
}

Projection closest_point(Vec2 p, const InterfaceGeometry& geom) {
  require_finite_point(p);
  if (geom.kind == GeometryKind::Planar1D) {
    return {{0.0, p.y}, {-1.0, 0.0}, InterfaceBranch::Plane1D};
  }
  const double r = geom.center_radius;
  const double b = geom.bead_radius;
  const double a = geom.half_width;
  const std::array<Projection, 5> candidates{
      project_arc(p, r),
      project_flat(p, 1.0, r, b, a),
      project_flat(p, -1.0, r, b, a),
      project_fillet(p, 1.0, r, b),
      project_fillet(p, -1.0, r, b),
  };
  std::size_t best = 0;
  double best_dist = (candidates[0].point - p).norm();
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double dist = (candidates[i].point - p).norm();
    if (dist < best_dist) {
      best = i;
      best_dist = dist;
    }
  }
  return candidates[best];
}

}  // namespace csf
