#pragma once

// Arcs on rank-2 Schottky surfaces, the pruned arc complex, macroscopic and
// infinitesimal strip deformations, and the strip map with its inverse.

#include <array>
#include <string>
#include <vector>

#include "adsg/contraction.hpp"
#include "adsg/core.hpp"
#include "adsg/rep.hpp"

namespace adsg {

/// The arc realized by the common perpendicular of axis(P_from) and
/// j(h) axis(P_to), where P_i are the boundary words of the surface.
struct ArcType {
  int from = 0, to = 0;
  Word h;
};

struct Arc {
  std::string name;
  ArcType type;
  Geodesic geodesic;    // lift whose waist lies in the fundamental domain
  HPoint foot1, foot2;  // feet on the two boundary lifts
  HPoint waist;         // midpoint of the feet
};

struct ArcSystem {
  std::vector<int> arcs;  // indices into ArcComplex::arcs, increasing
  int regions = 0;        // complementary regions of the cut surface
  int euler = 0;          // Euler characteristic of the cut surface
  bool fills = false;
  bool top = false;       // maximal dimension
};

struct ArcComplex {
  SchottkyGroup group;
  std::vector<Arc> arcs;
  std::vector<std::vector<char>> disjoint;  // pairwise, diagonal false
  std::vector<ArcSystem> systems;           // every nonempty system of disjoint arcs
  HPoint basepoint;                         // away from every arc lift

  /// Index into systems, or -1.
  int find_system(std::vector<int> arcs) const;
  int find_arc(const std::string& name) const;
};

/// Pants: the six arcs ab, bc, ac (between distinct boundaries) and aa, bb,
/// cc (from a boundary to itself). Torus: simple arcs (K, K, h) with
/// |h| <= max_word, up to the group action.
ArcComplex enumerate_arc_systems(const SchottkyGroup& group, int max_word = 3);

struct WeightedArcSystem {
  std::vector<int> arcs;
  std::vector<double> weights;
};

/// Parses names like {"ab": 1, "bc": 0.5}; throws InvalidArgument on
/// unknown names or non-disjoint arcs.
WeightedArcSystem make_weighted_system(const ArcComplex& cx,
                                       const std::vector<std::pair<std::string, double>>& w);

struct StripData {
  int arc = 0;
  Geodesic alpha, alpha_prime;
  HPoint p, p_prime;
  double width = 0;
};

struct ArcLift {
  int arc = 0;           // index into the complex
  double weight = 0;
  Word h;                // lift = j(h) . arc
  Geodesic geodesic;
  GroupElement standard; // to_standard(geodesic)
  HPoint waist;
  AlgebraElement toward_plus;  // unit translation at the waist toward side +1
  /// Sends the waist to i and side +1 to |z| > 1, so leaves of the strip
  /// are the circles |z| = e^sigma.
  GroupElement leaf_chart;
};

struct Crossing {
  int lift = 0;
  int from_side = 0;  // side of the segment start
  double param = 0;   // position along the segment in (0, 1)
};

class StripModel {
 public:
  StripModel(const ArcComplex& cx, WeightedArcSystem system, int lift_word_length = 5);

  const ArcComplex& complex() const { return cx_; }
  const SchottkyGroup& group() const { return cx_.group; }
  const WeightedArcSystem& system() const { return system_; }
  const HPoint& basepoint() const { return cx_.basepoint; }
  const std::vector<ArcLift>& lifts() const { return lifts_; }

  /// Lifts crossed by the segment [p, q], in order from p.
  std::vector<Crossing> crossings(const HPoint& p, const HPoint& q) const;
  /// Sum of weight * (unit translation toward the side of p) over crossings.
  AlgebraElement infinitesimal_path(const HPoint& p, const HPoint& q) const;
  /// Product of exp(scale * weight * translation) over crossings, in order.
  GroupElement macro_path(const HPoint& p, const HPoint& q, double scale) const;

  /// Strips of width scale * weight on side +1 of the arcs of the system.
  std::vector<StripData> strip_data(double scale) const;
  /// Leaf coordinate of p for a lift: signed distance along the
  /// perpendicular through the waist, positive on side +1.
  double leaf_coordinate(int lift, const HPoint& p) const;
  /// Throws StripsOverlap if two strips of width scale * weight meet or a
  /// strip contains the basepoint.
  void check_strips(double scale) const;

 private:
  ArcComplex cx_;
  WeightedArcSystem system_;
  std::vector<ArcLift> lifts_;
};

Cocycle strip_cocycle(const StripModel& m);
/// rho(g) = macro_path(x0, j(g) x0, scale) j(g). Throws StripsOverlap.
Representation macro_strip(const StripModel& m, double scale);

/// The 1-Lipschitz (j, rho)-equivariant map collapsing strips of width
/// scale * weight.
MapPtr strip_collapse_map(const StripModel& m, double scale);
/// Field equal to a Killing field on each complementary region of the arcs.
FieldPtr piecewise_killing_field(const StripModel& m);

struct RelaxationOptions {
  double kappa = 2.0;          // kernel (cosh d)^-kappa
  int cell_word_length = 4;    // translates j(h) c of the centres, |h| <= this
  int sample_resolution = 60;  // grid used for centres and the bound estimate
  double funnel_gain = 1.0;    // field only: pull toward the core
};

/// Smooth (j, rho)-equivariant map: kernel-weighted hyperboloid centroid of
/// the region isometries, precomposed with the retraction onto the convex
/// core. Its bound is the sampled local stretch over the core.
MapPtr relaxed_strip_map(const StripModel& m, double scale, const RelaxationOptions& o = {});
/// Smooth (j, u)-equivariant field: kernel-weighted average of the region
/// Killing fields at the core projection, plus funnel_gain times the pull
/// toward the core. Its bound is the sampled local lipschitz constant.
FieldPtr relaxed_strip_field(const StripModel& m, const RelaxationOptions& o = {});

/// Core samples inside the fundamental domain plus their images under the
/// generators and inverses.
std::vector<HPoint> collar_samples(const ConvexCore& core, int resolution);

// -- the strip map ---------------------------------------------------------------

/// dlambda on the basis words a, b, ab.
std::array<double, 3> class_vector(const Cocycle& u);
/// Unit-norm class vector with its first nonzero coordinate negative.
/// Throws NotFilling if the system does not fill.
std::array<double, 3> strip_map(const ArcComplex& cx, const WeightedArcSystem& x);

struct SimplexSolution {
  int system = 0;  // index into ArcComplex::systems
  std::array<double, 3> weights{};
  double residual = 0;
  bool positive = false;  // all weights > tol
  bool nonnegative = false;
};

struct InversionReport {
  AdmissibilityReport admissibility;
  std::vector<SimplexSolution> candidates;  // one per filling top system
  WeightedArcSystem solution;               // normalized to sum 1, zero weights dropped
  int solution_system = -1;
  std::vector<int> boundary_systems;        // top systems whose closed simplex holds the solution
  int positive_count = 0;                   // candidates with all weights positive
  double residual = 0;                      // projective class mismatch
};

/// Throws NotAdmissible when the admissibility test does not certify u, and
/// NoPositiveSolution when no candidate simplex has nonnegative weights.
InversionReport invert_strip_map(const ArcComplex& cx, const Cocycle& u, int max_len = 6,
                                 double tol = 1e-9);

}  // namespace adsg
