#pragma once

// Convex core of a Schottky group: its boundary lifts, membership, the
// nearest-point retraction onto it, and samples of the core inside the
// ping-pong fundamental domain.

#include <vector>

#include "adsg/rep.hpp"

namespace adsg {

class ConvexCore {
 public:
  explicit ConvexCore(const SchottkyGroup& group);

  const SchottkyGroup& group() const { return group_; }
  /// A point in the interior of the core, off every boundary lift.
  const HPoint& reference() const { return reference_; }

  bool contains(const HPoint& p) const;
  /// Nearest point of the core (p itself when p is inside).
  HPoint project(const HPoint& p) const;
  /// Signed data for p in the fundamental domain: index of the boundary lift
  /// whose funnel contains p, or -1.
  int funnel_of(const HPoint& p) const;

  /// Deterministic samples of core and fundamental domain, from a grid on
  /// the disk model with `resolution` points per axis.
  std::vector<HPoint> domain_samples(int resolution) const;

  struct BoundaryLift {
    Geodesic geodesic;
    GroupElement standard;  // to_standard(geodesic), cached
    int core_side = 0;
  };
  const std::vector<BoundaryLift>& boundary_lifts() const { return lifts_; }

 private:
  SchottkyGroup group_;
  HPoint reference_;
  std::vector<BoundaryLift> lifts_;
};

/// Side test against a geodesic whose standardizing isometry is cached.
int cached_side(const GroupElement& standard, const HPoint& p);

}  // namespace adsg
