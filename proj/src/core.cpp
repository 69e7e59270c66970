#include "adsg/core.hpp"

#include <cmath>

#include "adsg/errors.hpp"

namespace adsg {

int cached_side(const GroupElement& standard, const HPoint& p) {
  const double r = moebius_apply(standard, p).x();
  return r > 0 ? 1 : (r < 0 ? -1 : 0);
}

namespace {

bool same_ideal(const Ideal& a, const Ideal& b) {
  if (a.at_inf || b.at_inf) return a.at_inf == b.at_inf;
  return std::abs(a.x - b.x) <= 1e-9 * std::max(1.0, std::abs(a.x));
}

bool same_geodesic(const Geodesic& g, const Geodesic& h) {
  return (same_ideal(g.from, h.from) && same_ideal(g.to, h.to)) ||
         (same_ideal(g.from, h.to) && same_ideal(g.to, h.from));
}

}  // namespace

ConvexCore::ConvexCore(const SchottkyGroup& group) : group_(group) {
  const Geodesic ax0 = axis(group.j.generators[0]);
  const Geodesic ax1 = axis(group.j.generators[1]);
  if (crosses(ax0, ax1)) {
    // The generator axes lie in the core; use their crossing point.
    const GroupElement m = to_standard(ax0);
    const Ideal e1 = moebius_apply(m, ax1.from), e2 = moebius_apply(m, ax1.to);
    reference_ = moebius_apply(m.inverse(), HPoint(0, std::sqrt(-e1.x * e2.x)));
  } else {
    const CommonPerpendicular cp = common_perpendicular(ax0, ax1);
    reference_ = geodesic_lerp(cp.foot1, cp.foot2, 0.5);
  }
  for (const Word& h : reduced_words(group.j.rank(), 3)) {
    const GroupElement jh = eval_rep(group.j, h);
    const HPoint ref = moebius_apply(jh, reference_);
    for (const Word& w : group.boundary_words) {
      const Geodesic geo = moebius_apply(jh, axis(eval_rep(group.j, w)));
      bool dup = false;
      for (const auto& l : lifts_) dup = dup || same_geodesic(l.geodesic, geo);
      if (dup) continue;
      BoundaryLift lift{geo, to_standard(geo), 0};
      lift.core_side = cached_side(lift.standard, ref);
      if (lift.core_side == 0) {
        throw Error(ErrorCode::InvalidArgument, "core reference point lies on a boundary lift");
      }
      lifts_.push_back(lift);
    }
  }
}

int ConvexCore::funnel_of(const HPoint& p) const {
  for (std::size_t i = 0; i < lifts_.size(); ++i) {
    if (cached_side(lifts_[i].standard, p) == -lifts_[i].core_side) return static_cast<int>(i);
  }
  return -1;
}

bool ConvexCore::contains(const HPoint& p) const {
  return funnel_of(group_.reduce(p)) < 0;
}

HPoint ConvexCore::project(const HPoint& p) const {
  Word h;
  const HPoint q = group_.reduce(p, &h);
  const int idx = funnel_of(q);
  if (idx < 0) return p;
  return moebius_apply(eval_rep(group_.j, h), adsg::project(lifts_[idx].geodesic, q));
}

std::vector<HPoint> ConvexCore::domain_samples(int resolution) const {
  std::vector<HPoint> out;
  for (int i = 0; i < resolution; ++i) {
    for (int k = 0; k < resolution; ++k) {
      const Complex w(-1.0 + 2.0 * (i + 0.5) / resolution, -1.0 + 2.0 * (k + 0.5) / resolution);
      if (std::abs(w) >= 0.999) continue;
      const Complex z = Complex(0, 1) * (1.0 + w) / (1.0 - w);
      const HPoint p(z.real(), std::max(z.imag(), 1e-300));
      if (group_.in_fundamental_domain(p) && funnel_of(p) < 0) out.push_back(p);
    }
  }
  return out;
}

}  // namespace adsg
