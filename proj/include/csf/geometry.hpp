// Signed-distance geometry of the benchmark interfaces.
//
// Sign convention: d < 0 in the gas, d > 0 in the liquid (metal), d = 0 on the
// interface midplane. The planar 1D interface sits at x = 0 with metal on the
// left, so d = -x.
//
// The melt pool interface is a semicircular depression of radius r below the
// flat metal surface y = b, joined to it by fillets of radius b centred at
// (+-(r + b), 0).
#pragma once

#include "csf/types.hpp"

namespace csf {

enum class GeometryKind { Planar1D, MeltPool2D };

struct InterfaceGeometry {
  GeometryKind kind = GeometryKind::Planar1D;
  double center_radius = 0.0;  // r (m), melt pool only
  double bead_radius = 0.0;    // b (m), melt pool only
  double half_width = 0.0;     // a (m); the domain is [-a, a] or [-a, a]^2

  static InterfaceGeometry planar(double half_width);
  static InterfaceGeometry melt_pool(double center_radius, double bead_radius, double half_width);

  void validate() const;
};

/// Segment of the interface a projection landed on, in the order the
/// piecewise distance formula lists them. Used to break ties.
enum class InterfaceBranch { Plane1D = 0, Arc = 1, FlatSurface = 2, Fillet = 3 };

struct Projection {
  Vec2 point;   // closest point on the midplane
  Vec2 normal;  // unit normal at `point`, pointing into the liquid
  InterfaceBranch branch = InterfaceBranch::Plane1D;
};

double signed_distance(Vec2 p, const InterfaceGeometry& geom);

/// Gradient of the signed distance, i.e. the unit normal (into the liquid) of
/// the level set through `p`. Where the gradient is undefined (the centre of
/// the depression, the symmetry axis above the fillets) a fixed direction is
/// returned.
Vec2 distance_gradient(Vec2 p, const InterfaceGeometry& geom);

/// Closest point on the interface midplane. Every candidate segment is
/// projected onto; the nearest wins and exact ties go to the segment listed
/// first (arc, flat surface, fillet; right side before left side).
Projection closest_point(Vec2 p, const InterfaceGeometry& geom);

}  // namespace csf
