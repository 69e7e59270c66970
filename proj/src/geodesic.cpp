#include "adsg/geodesic.hpp"

#include <cmath>
#include <numbers>

#include "adsg/errors.hpp"

namespace adsg {

double ideal_angle(const Ideal& p) {
  return p.at_inf ? std::numbers::pi : 2.0 * std::atan(p.x);
}

Ideal moebius_apply(const GroupElement& g, const Ideal& p) {
  if (p.at_inf) {
    if (g.c() == 0) return Ideal::infinity();
    return {g.a() / g.c(), false};
  }
  const double den = g.c() * p.x + g.d();
  if (den == 0) return Ideal::infinity();
  return {(g.a() * p.x + g.b()) / den, false};
}

Geodesic moebius_apply(const GroupElement& g, const Geodesic& geo) {
  return {moebius_apply(g, geo.from), moebius_apply(g, geo.to)};
}

Geodesic axis(const GroupElement& g) {
  if (classify(g) != IsometryClass::Hyperbolic) {
    throw Error(ErrorCode::NonHyperbolicBase, "axis requested for a non-hyperbolic element");
  }
  const double a = g.a(), b = g.b(), c = g.c(), d = g.d();
  if (c == 0) {
    const Ideal fin{b / (d - a), false};
    return std::abs(a) > std::abs(d) ? Geodesic{fin, Ideal::infinity()}
                                     : Geodesic{Ideal::infinity(), fin};
  }
  const double disc = std::sqrt((a - d) * (a - d) + 4 * b * c);
  const double z1 = ((a - d) - disc) / (2 * c);
  const double z2 = ((a - d) + disc) / (2 * c);
  // Attracting fixed point: |cz + d| > 1.
  if (std::abs(c * z1 + d) > 1) return {{z2, false}, {z1, false}};
  return {{z1, false}, {z2, false}};
}

GroupElement to_standard(const Geodesic& geo) {
  if (geo.from == geo.to) throw Error(ErrorCode::InvalidArgument, "degenerate geodesic");
  if (geo.to.at_inf) return GroupElement::from_entries(1, -geo.from.x, 0, 1);
  if (geo.from.at_inf) return GroupElement::from_entries(0, -1, 1, -geo.to.x);
  const double u = geo.from.x, v = geo.to.x;
  // z -> (z - u)/(z - v) up to sign; choose the sign giving det > 0.
  if (u - v > 0) return GroupElement::from_entries(1, -u, 1, -v);
  return GroupElement::from_entries(-1, u, 1, -v);
}

int side(const Geodesic& geo, const HPoint& p, double tol) {
  const HPoint w = moebius_apply(to_standard(geo), p);
  const double r = w.x() / w.y();
  if (std::abs(r) <= tol) return 0;
  return r > 0 ? 1 : -1;
}

int side(const Geodesic& geo, const Ideal& x, double tol) {
  if (x == geo.from || x == geo.to) return 0;
  const Ideal w = moebius_apply(to_standard(geo), x);
  if (w.at_inf || std::abs(w.x) <= tol) return 0;
  return w.x > 0 ? 1 : -1;
}

bool crosses(const Geodesic& g1, const Geodesic& g2) {
  return side(g1, g2.from) * side(g1, g2.to) < 0;
}

TangentVector unit_toward(const HPoint& p, const Ideal& x) {
  return x.at_inf ? unit_toward_infinity(p) : unit_toward_ideal(p, x.x);
}

Geodesic geodesic_through(const HPoint& p, Complex dir) {
  const GroupElement f = frame_at(p, dir);
  return {moebius_apply(f, Ideal{0, false}), moebius_apply(f, Ideal::infinity())};
}

HPoint project(const Geodesic& geo, const HPoint& p) {
  const GroupElement m = to_standard(geo);
  const HPoint w = moebius_apply(m, p);
  return moebius_apply(m.inverse(), HPoint(0, std::abs(w.z())));
}

double dist_to_geodesic(const Geodesic& geo, const HPoint& p) {
  const HPoint w = moebius_apply(to_standard(geo), p);
  return std::asinh(std::abs(w.x()) / w.y());
}

CommonPerpendicular common_perpendicular(const Geodesic& g1, const Geodesic& g2) {
  const GroupElement m = to_standard(g1);
  const Ideal e1 = moebius_apply(m, g2.from), e2 = moebius_apply(m, g2.to);
  if (e1.at_inf || e2.at_inf || e1.x * e2.x <= 0) {
    throw Error(ErrorCode::InvalidArgument, "geodesics are not ultraparallel");
  }
  const double x1 = e1.x, x2 = e2.x;
  const double r = std::sqrt(x1 * x2);
  // Second foot: circle |z| = r meets the half-circle over [x1, x2].
  const double c = (x1 + x2) / 2, rad = std::abs(x2 - x1) / 2;
  const double xr = (r * r - rad * rad + c * c) / (2 * c);
  const double yr = std::sqrt(std::max(r * r - xr * xr, 0.0));
  const GroupElement mi = m.inverse();
  CommonPerpendicular out;
  // Orient from the first geodesic toward the second: the second lies on the
  // side of sign(x1) of the imaginary axis.
  const Ideal minus{-r, false}, plus{r, false};
  out.line = x1 > 0 ? Geodesic{moebius_apply(mi, minus), moebius_apply(mi, plus)}
                    : Geodesic{moebius_apply(mi, plus), moebius_apply(mi, minus)};
  out.foot1 = moebius_apply(mi, HPoint(0, r));
  out.foot2 = moebius_apply(mi, HPoint(xr, yr));
  out.length = hyp_dist(out.foot1, out.foot2);
  return out;
}

double segment_crossing(const Geodesic& geo, const HPoint& p, const HPoint& q) {
  const int s0 = side(geo, p);
  double lo = 0, hi = 1;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (side(geo, geodesic_lerp(p, q, mid)) == s0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace adsg
