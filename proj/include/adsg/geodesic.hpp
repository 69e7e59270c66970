#pragma once

// Complete geodesics of the upper half-plane, described by ideal endpoints.

#include "adsg/lie.hpp"

namespace adsg {

/// Point of the ideal boundary R u {infinity}.
struct Ideal {
  double x = 0;
  bool at_inf = false;

  static Ideal infinity() { return {0, true}; }
  bool operator==(const Ideal& o) const = default;
};

/// Angle of an ideal point on the circle model: 2*atan(x), infinity at pi.
double ideal_angle(const Ideal& p);
Ideal moebius_apply(const GroupElement& g, const Ideal& p);

/// Oriented complete geodesic from `from` to `to` (distinct ideal points).
struct Geodesic {
  Ideal from, to;

  Geodesic reversed() const { return {to, from}; }
};

Geodesic moebius_apply(const GroupElement& g, const Geodesic& geo);

/// Oriented axis of a hyperbolic element, from repelling to attracting fixed
/// point. Throws NonHyperbolicBase otherwise.
Geodesic axis(const GroupElement& g);

/// Orientation-preserving isometry sending geo.from to 0 and geo.to to infinity.
GroupElement to_standard(const Geodesic& geo);

/// +1 or -1 according to the side of geo containing p (0 on the geodesic,
/// within tol after normalization to the imaginary axis).
int side(const Geodesic& geo, const HPoint& p, double tol = 0.0);
/// Same for an ideal point; 0 when it is an endpoint.
int side(const Geodesic& geo, const Ideal& x, double tol = 1e-12);

/// True when the two geodesics cross in the interior of H^2.
bool crosses(const Geodesic& g1, const Geodesic& g2);

/// Unit tangent at p pointing toward an ideal point.
TangentVector unit_toward(const HPoint& p, const Ideal& x);

/// Complete geodesic through p with tangent direction dir.
Geodesic geodesic_through(const HPoint& p, Complex dir);

/// Nearest point of geo to p.
HPoint project(const Geodesic& geo, const HPoint& p);
double dist_to_geodesic(const Geodesic& geo, const HPoint& p);

struct CommonPerpendicular {
  Geodesic line;       // oriented from the first geodesic toward the second
  HPoint foot1, foot2; // feet on the first and second geodesic
  double length = 0;
};

/// Common perpendicular of two ultraparallel geodesics. Throws
/// InvalidArgument if they cross or share an endpoint.
CommonPerpendicular common_perpendicular(const Geodesic& g1, const Geodesic& g2);

/// Parameter s in (0, 1) where the segment [p, q] meets geo, found by
/// bisection; the segment must cross geo.
double segment_crossing(const Geodesic& geo, const HPoint& p, const HPoint& q);

}  // namespace adsg
