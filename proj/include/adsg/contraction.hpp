#pragma once

// Equivariant Lipschitz maps and lipschitz vector fields, the fibrations they
// induce on G and on the Lie algebra, length-based properness tests and a
// small analytic toolkit (interpolation, one-point Kirszbraun extension,
// stretch locus, Toponogov comparison).

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "adsg/core.hpp"
#include "adsg/rep.hpp"

namespace adsg {

// -- maps ---------------------------------------------------------------------

enum class MapKind { StripCollapse, IsometryComposed, Sampled, Interpolated, Custom };
const char* to_string(MapKind k) noexcept;

/// A (j, rho)-equivariant map H^2 -> H^2 with a Lipschitz bound. For the
/// sampled kinds the bound is a sampled estimate, not a proof.
class EquivariantMap {
 public:
  virtual ~EquivariantMap() = default;
  virtual HPoint operator()(const HPoint& p) const = 0;
  virtual MapKind kind() const = 0;

  const Representation& source() const { return j_; }
  const Representation& target() const { return rho_; }
  double lipschitz() const { return lipschitz_; }
  void set_lipschitz(double c) { lipschitz_ = c; }

 protected:
  EquivariantMap(Representation j, Representation rho, double c)
      : j_(std::move(j)), rho_(std::move(rho)), lipschitz_(c) {}

 private:
  Representation j_, rho_;
  double lipschitz_;
};

using MapPtr = std::shared_ptr<const EquivariantMap>;

/// Arbitrary callable with a caller-supplied bound (used for tests and for
/// non-equivariant toy maps with a trivial group).
MapPtr make_custom_map(Representation j, Representation rho,
                       std::function<HPoint(const HPoint&)> f, double lipschitz);
/// p -> g . base(p); equivariant for (j, g rho g^-1); same bound as base.
MapPtr compose_isometry(const GroupElement& g, MapPtr base);
/// Pointwise geodesic interpolation f_t(p) = geodesic_lerp(f0(p), f1(p), t).
/// The bound is the sampled estimate over `samples` (or max of the two
/// bounds when samples is empty).
MapPtr interpolate_maps(MapPtr f0, MapPtr f1, double t, const std::vector<HPoint>& samples = {});

/// Local stretch at p: largest singular value of df in the hyperbolic metric,
/// by central differences with step h * Im p.
double local_stretch(const std::function<HPoint(const HPoint&)>& f, const HPoint& p,
                     double h = 1e-5);

// -- fields -----------------------------------------------------------------

enum class FieldKind { PiecewiseKilling, Sampled, Custom };
const char* to_string(FieldKind k) noexcept;

/// A (j, u)-equivariant vector field with a lipschitz bound c (may be negative).
class EquivariantField {
 public:
  virtual ~EquivariantField() = default;
  virtual TangentVector operator()(const HPoint& p) const = 0;
  virtual FieldKind kind() const = 0;

  const Cocycle& cocycle() const { return u_; }
  double lipschitz() const { return c_; }
  void set_lipschitz(double c) { c_ = c; }

 protected:
  EquivariantField(Cocycle u, double c) : u_(std::move(u)), c_(c) {}

 private:
  Cocycle u_;
  double c_;
};

using FieldPtr = std::shared_ptr<const EquivariantField>;

FieldPtr make_custom_field(Cocycle u, std::function<TangentVector(const HPoint&)> y, double c);
/// -k * grad d(., p0)^2 / 2, i.e. k times log_map(p, p0): k-contracting
/// (c = -k) and equivariant for the trivial group.
FieldPtr radial_field(const HPoint& p0, double k, Cocycle u);

/// First variation of d(exp_p(t Y(p)), exp_q(t Y(q))) at t = 0, divided by
/// d(p, q). Throws CoincidentPoints when p = q.
double field_lipschitz_pair(const std::function<TangentVector(const HPoint&)>& y,
                            const HPoint& p, const HPoint& q);
double field_lipschitz_pair(const EquivariantField& y, const HPoint& p, const HPoint& q);

/// Local lipschitz constant at p: max over `directions` unit directions of
/// the pair quotient at separation h.
double local_field_lipschitz(const std::function<TangentVector(const HPoint&)>& y,
                             const HPoint& p, int directions = 16, double h = 1e-4);

/// Max of the local stretch (maps) or local field lipschitz constant
/// (fields) over the samples, refined by a local search from the best ones.
/// Requires at least two samples.
double lipschitz_bound_sampled(const EquivariantMap& f, const std::vector<HPoint>& samples);
double lipschitz_bound_sampled(const EquivariantField& y, const std::vector<HPoint>& samples);

// -- fibrations ---------------------------------------------------------------

struct SolverSettings {
  double tol = 1e-10;
  int max_iterations = 10000;
};

struct FixedPointResult {
  HPoint point;
  int iterations = 0;
  double residual = 0;
  /// Largest ratio of consecutive step lengths (observed contraction rate).
  double observed_rate = 0;
};

/// Unique fixed point of p -> g^-1 f(p). Throws NoContraction when the bound
/// of f is >= 1, MaxIterations when the iteration does not settle.
FixedPointResult fixed_point(const GroupElement& g, const EquivariantMap& f,
                             const SolverSettings& s = {}, const HPoint& start = HPoint());
/// Same fixed point found by Newton's method on p -> g^-1 f(p) - p with a
/// central-difference Jacobian; used when the contraction rate is close to 1.
FixedPointResult fixed_point_newton(const GroupElement& g, const EquivariantMap& f,
                                    const SolverSettings& s = {}, const HPoint& start = HPoint());

struct ZeroResult {
  HPoint point;
  int iterations = 0;
  double residual = 0;    // hyperbolic norm of (Y - X) at the zero
  double ball_radius = 0; // ||(Y - X)(start)|| / |c|
  double distance_from_start = 0;
};

/// Unique zero of Y - X (X read as a Killing field). Throws NoContraction when
/// c >= 0 and MaxIterations on failure.
ZeroResult zero_of_field(const AlgebraElement& x, const EquivariantField& y,
                         const SolverSettings& s = {}, const HPoint& start = HPoint());

class FibrationHandle {
 public:
  /// Throws NoContraction unless C < 1.
  static FibrationHandle macro(MapPtr f, SolverSettings s = {});
  /// Throws NoContraction unless c < 0.
  static FibrationHandle micro(FieldPtr y, SolverSettings s = {});

  bool is_macro() const { return map_ != nullptr; }
  const EquivariantMap& map() const;
  const EquivariantField& field() const;
  const SolverSettings& settings() const { return settings_; }

 private:
  MapPtr map_;
  FieldPtr field_;
  SolverSettings settings_;
};

/// pi(g) = fixed point of g^-1 f.
HPoint project_macro(const FibrationHandle& h, const GroupElement& g);
/// g . p = f(p) within tol.
bool in_macro_fiber(const FibrationHandle& h, const GroupElement& g, const HPoint& p,
                    double tol = 1e-8);
/// pi'(X) = zero of Y - X.
HPoint project_micro(const FibrationHandle& h, const AlgebraElement& x);
/// X(p) = Y(p) within tol.
bool in_micro_fiber(const FibrationHandle& h, const AlgebraElement& x, const HPoint& p,
                    double tol = 1e-8);

// -- length functions and properness ----------------------------------------

struct LengthRatio {
  double value = 0;
  Word argmax;
};

/// max over cyclically reduced |w| <= L of len(rho(w)) / len(j(w)).
/// Throws NonHyperbolicBase if some j(w) is not hyperbolic.
LengthRatio length_ratio_sup(const Representation& j, const Representation& rho, int max_len);

/// d/dt at 0 of the translation length of exp(t u(w)) j(w).
double dlambda(const Representation& j, const Cocycle& u, const Word& w);

enum class Verdict { CertifiedNegativeSlope, Violated, Inconclusive };
const char* to_string(Verdict v) noexcept;

struct AdmissibilityReport {
  Verdict verdict = Verdict::Inconclusive;
  double max_ratio = 0;      // max of dlambda / length over the words
  double min_ratio = 0;
  Word argmax, argmin;
  /// Set when -u is certified instead (u lengthens every curve).
  bool negation_certified = false;
  /// For Violated: a word with ratio >= -tol and one with ratio <= tol.
  std::optional<Word> witness_up, witness_down;
  /// max_ratio over words of length <= l, for l = 1..L.
  std::vector<double> margin_by_length;
};

/// Word-length test for the necessary condition of admissibility: the
/// length-normalized first variation must be uniformly negative. Certified
/// when max ratio < -eps; Violated when neither u nor -u can be negative on
/// all words (some ratio >= -tol and some ratio <= tol); Inconclusive
/// otherwise. Only a partial test: finitely many words are examined.
AdmissibilityReport admissibility_test(const Representation& j, const Cocycle& u, int max_len,
                                       double eps = 1e-6, double tol = 1e-9);

struct ProperGap {
  int n = 0;
  int psi = 0;
  double gap = 0;  // |mu(rho(w)) - mu(j(w))| for w = beta^n gamma^psi
};

struct PropernessReport {
  Word beta, gamma;
  std::vector<ProperGap> gaps;
  double max_gap = 0;
  bool witness = false;  // all gaps <= R
};

/// Searches for a sequence beta^n gamma^psi(n) along which mu(rho) - mu(j)
/// stays bounded. With beta or gamma empty they are chosen as the argmin and
/// argmax length-ratio words of length <= 4.
PropernessReport properness_violation_search(const Representation& j, const Representation& rho,
                                             double radius, int max_n, Word beta = {},
                                             Word gamma = {}, int psi_range = 64);

// -- analytic toolkit ----------------------------------------------------------

struct PointConstraint {
  HPoint p, q;  // p -> q
};

/// Point q minimizing max_i d(q, q_i) / max(d(p, p_i), floor). Throws
/// Infeasible if the constraints are not pairwise C0-Lipschitz.
HPoint kirszbraun_extend_point(const std::vector<PointConstraint>& constraints, const HPoint& p,
                               double c0, double floor = 1e-9);
/// The objective minimized by kirszbraun_extend_point.
double kirszbraun_objective(const std::vector<PointConstraint>& constraints, const HPoint& p,
                            const HPoint& q, double floor = 1e-9);

/// Samples whose local stretch exceeds c0 - eps.
std::vector<HPoint> stretch_locus_sample(const std::function<HPoint(const HPoint&)>& f, double c0,
                                         double eps, const std::vector<HPoint>& samples);

struct ToponogovResult {
  double lhs = 0, rhs = 0;
  bool holds = false;
};

/// d(exp_p(C0 r v), exp_p(C0 r v')) > C0 d(exp_p(r v), exp_p(r v')).
ToponogovResult toponogov_check(const HPoint& p, Complex v, Complex v2, double r, double c0);

// -- transition between the two fibrations -----------------------------------

struct TransitionRow {
  double t = 0;
  double field_gap = 0;  // max_p || (f_t(p) - p)/t - Y(p) || over samples
  double fiber_gap = 0;  // max_X d(pi_t(exp(tX)), pi'(X)) over the algebra samples
};

struct TransitionReport {
  std::vector<TransitionRow> rows;
  double max_rate = 0;  // max over rows of fiber_gap / t
};

using MapFamily = std::function<MapPtr(double)>;

/// Compares the macro fibrations of f_t with the micro fibration of y.
/// Fixed points are solved by Newton's method since f_t contracts only by
/// 1 - O(t).
TransitionReport transition_fiber_check(const MapFamily& family, const EquivariantField& y,
                                        const std::vector<AlgebraElement>& xs,
                                        const std::vector<HPoint>& samples,
                                        const std::vector<double>& ts);

}  // namespace adsg
