#include "adsg/contraction.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>

#include "adsg/errors.hpp"

namespace adsg {

const char* to_string(MapKind k) noexcept {
  switch (k) {
    case MapKind::StripCollapse: return "strip_collapse";
    case MapKind::IsometryComposed: return "isometry_composed";
    case MapKind::Sampled: return "sampled";
    case MapKind::Interpolated: return "interpolated";
    case MapKind::Custom: return "custom";
  }
  return "?";
}

const char* to_string(FieldKind k) noexcept {
  switch (k) {
    case FieldKind::PiecewiseKilling: return "piecewise_killing";
    case FieldKind::Sampled: return "sampled";
    case FieldKind::Custom: return "custom";
  }
  return "?";
}

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::CertifiedNegativeSlope: return "certified-negative-slope";
    case Verdict::Violated: return "violated";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

// -- maps ---------------------------------------------------------------------

namespace {

class CustomMap final : public EquivariantMap {
 public:
  CustomMap(Representation j, Representation rho, std::function<HPoint(const HPoint&)> f, double c)
      : EquivariantMap(std::move(j), std::move(rho), c), f_(std::move(f)) {}
  HPoint operator()(const HPoint& p) const override { return f_(p); }
  MapKind kind() const override { return MapKind::Custom; }

 private:
  std::function<HPoint(const HPoint&)> f_;
};

Representation conjugate(const GroupElement& g, const Representation& rho) {
  Representation out;
  const GroupElement gi = g.inverse();
  for (const GroupElement& r : rho.generators) out.generators.push_back(g * r * gi);
  return out;
}

class ComposedMap final : public EquivariantMap {
 public:
  ComposedMap(const GroupElement& g, MapPtr base)
      : EquivariantMap(base->source(), conjugate(g, base->target()), base->lipschitz()),
        g_(g),
        base_(std::move(base)) {}
  HPoint operator()(const HPoint& p) const override { return moebius_apply(g_, (*base_)(p)); }
  MapKind kind() const override { return MapKind::IsometryComposed; }

 private:
  GroupElement g_;
  MapPtr base_;
};

class InterpolatedMap final : public EquivariantMap {
 public:
  InterpolatedMap(MapPtr f0, MapPtr f1, double t)
      : EquivariantMap(f0->source(), f0->target(), std::max(f0->lipschitz(), f1->lipschitz())),
        f0_(std::move(f0)),
        f1_(std::move(f1)),
        t_(t) {}
  HPoint operator()(const HPoint& p) const override {
    return geodesic_lerp((*f0_)(p), (*f1_)(p), t_);
  }
  MapKind kind() const override { return MapKind::Interpolated; }

 private:
  MapPtr f0_, f1_;
  double t_;
};

class CustomField final : public EquivariantField {
 public:
  CustomField(Cocycle u, std::function<TangentVector(const HPoint&)> y, double c)
      : EquivariantField(std::move(u), c), y_(std::move(y)) {}
  TangentVector operator()(const HPoint& p) const override { return y_(p); }
  FieldKind kind() const override { return FieldKind::Custom; }

 private:
  std::function<TangentVector(const HPoint&)> y_;
};

// Orthonormal-frame components of a tangent vector.
std::array<double, 2> frame(const TangentVector& v) {
  return {v.vx / v.base.y(), v.vy / v.base.y()};
}

HPoint chart_point(double x, double s) { return HPoint(x, std::exp(s)); }

}  // namespace

MapPtr make_custom_map(Representation j, Representation rho,
                       std::function<HPoint(const HPoint&)> f, double lipschitz) {
  return std::make_shared<CustomMap>(std::move(j), std::move(rho), std::move(f), lipschitz);
}

MapPtr compose_isometry(const GroupElement& g, MapPtr base) {
  return std::make_shared<ComposedMap>(g, std::move(base));
}

MapPtr interpolate_maps(MapPtr f0, MapPtr f1, double t, const std::vector<HPoint>& samples) {
  if (!(t >= 0 && t <= 1)) throw Error(ErrorCode::InvalidArgument, "t must lie in [0, 1]");
  auto out = std::make_shared<InterpolatedMap>(std::move(f0), std::move(f1), t);
  if (samples.size() >= 2) out->set_lipschitz(lipschitz_bound_sampled(*out, samples));
  return out;
}

double local_stretch(const std::function<HPoint(const HPoint&)>& f, const HPoint& p, double h) {
  const double step = h * p.y();
  const HPoint fp = f(p);
  const HPoint xp = f(HPoint(p.x() + step, p.y())), xm = f(HPoint(p.x() - step, p.y()));
  const HPoint yp = f(HPoint(p.x(), p.y() + step)), ym = f(HPoint(p.x(), p.y() - step));
  // Jacobian in orthonormal frames at p and f(p).
  const double s = p.y() / (2 * step * fp.y());
  const double j00 = (xp.x() - xm.x()) * s, j10 = (xp.y() - xm.y()) * s;
  const double j01 = (yp.x() - ym.x()) * s, j11 = (yp.y() - ym.y()) * s;
  const double a = j00 * j00 + j10 * j10, b = j00 * j01 + j10 * j11, c = j01 * j01 + j11 * j11;
  const double lam = 0.5 * (a + c) + std::sqrt(0.25 * (a - c) * (a - c) + b * b);
  return std::sqrt(std::max(lam, 0.0));
}

// -- fields -------------------------------------------------------------------

FieldPtr make_custom_field(Cocycle u, std::function<TangentVector(const HPoint&)> y, double c) {
  return std::make_shared<CustomField>(std::move(u), std::move(y), c);
}

FieldPtr radial_field(const HPoint& p0, double k, Cocycle u) {
  return make_custom_field(
      std::move(u),
      [p0, k](const HPoint& p) {
        TangentVector v = log_map(p, p0);
        v.vx *= k;
        v.vy *= k;
        return v;
      },
      -k);
}

double field_lipschitz_pair(const std::function<TangentVector(const HPoint&)>& y, const HPoint& p,
                            const HPoint& q) {
  const double d = hyp_dist(p, q);
  if (d == 0) throw Error(ErrorCode::CoincidentPoints, "field_lipschitz_pair needs p != q");
  const TangentVector ep = unit_toward(p, q);
  const TangentVector eq = unit_toward(q, p);  // reversed below
  const TangentVector yp = y(p), yq = y(q);
  const double dp = hyp_inner(p, yp.v(), ep.v());
  const double dq = -hyp_inner(q, yq.v(), eq.v());
  return (dq - dp) / d;
}

double field_lipschitz_pair(const EquivariantField& y, const HPoint& p, const HPoint& q) {
  return field_lipschitz_pair([&y](const HPoint& z) { return y(z); }, p, q);
}

double local_field_lipschitz(const std::function<TangentVector(const HPoint&)>& y,
                             const HPoint& p, int directions, double h) {
  double best = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < directions; ++k) {
    const double th = M_PI * k / directions;  // pairs (p-v, p+v) cover both orientations
    const Complex dir = std::polar(h * p.y(), th);
    const HPoint a = exp_map(TangentVector::make(p, -dir));
    const HPoint b = exp_map(TangentVector::make(p, dir));
    best = std::max(best, field_lipschitz_pair(y, a, b));
  }
  return best;
}

namespace {

// Grid maximum of score, then compass search from the best few samples so
// that peaks between grid points are not missed.
double refined_max(const std::function<double(const HPoint&)>& score,
                   const std::vector<HPoint>& samples) {
  if (samples.size() < 2) throw Error(ErrorCode::InvalidArgument, "need at least two samples");
  std::vector<std::pair<double, HPoint>> scored;
  scored.reserve(samples.size());
  for (const HPoint& p : samples) scored.emplace_back(score(p), p);
  const std::size_t starts = std::min<std::size_t>(6, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + starts, scored.end(),
                    [](const auto& a, const auto& b) { return a.first > b.first; });
  double best = scored.front().first;
  for (std::size_t i = 0; i < starts; ++i) {
    auto [v, p] = scored[i];
    // Steps are relative to the hyperbolic scale Im p.
    for (double step = 0.05; step > 1e-4;) {
      bool moved = false;
      for (const auto& [dx, dy] : {std::pair{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}}) {
        const HPoint q(p.x() + dx * step * p.y(), p.y() * std::exp(dy * step));
        const double w = score(q);
        if (w > v) {
          v = w;
          p = q;
          moved = true;
          break;
        }
      }
      if (!moved) step *= 0.5;
    }
    best = std::max(best, v);
  }
  return best;
}

}  // namespace

double lipschitz_bound_sampled(const EquivariantMap& f, const std::vector<HPoint>& samples) {
  const auto fn = [&f](const HPoint& z) { return f(z); };
  return refined_max([&](const HPoint& p) { return local_stretch(fn, p); }, samples);
}

double lipschitz_bound_sampled(const EquivariantField& y, const std::vector<HPoint>& samples) {
  const auto fn = [&y](const HPoint& z) { return y(z); };
  return refined_max([&](const HPoint& p) { return local_field_lipschitz(fn, p); }, samples);
}

// -- solvers ------------------------------------------------------------------

namespace {

// Hyperbolic size of a few ulps at p. Near the ideal boundary no iteration can
// resolve distances below this.
double resolution_floor(const HPoint& p) {
  return 16 * std::numeric_limits<double>::epsilon() * (1 + std::abs(p.x()) + p.y()) / p.y();
}

// Newton's method for a zero of F : (x, log y) -> R^2, with a fallback step
// when the Newton step does not reduce |F|.
template <class Residual, class Fallback>
HPoint newton_2d(const Residual& residual, const Fallback& fallback, HPoint p,
                 const SolverSettings& s, int* iterations) {
  for (int it = 0; it < s.max_iterations; ++it) {
    *iterations = it;
    const double x = p.x(), ls = std::log(p.y());
    const auto r0 = residual(p);
    const double n0 = std::hypot(r0[0], r0[1]);
    if (n0 < s.tol) return p;
    const double h = 1e-6;
    const auto rxp = residual(chart_point(x + h * p.y(), ls));
    const auto rxm = residual(chart_point(x - h * p.y(), ls));
    const auto rsp = residual(chart_point(x, ls + h));
    const auto rsm = residual(chart_point(x, ls - h));
    const double a = (rxp[0] - rxm[0]) / (2 * h * p.y()), c = (rxp[1] - rxm[1]) / (2 * h * p.y());
    const double b = (rsp[0] - rsm[0]) / (2 * h), d = (rsp[1] - rsm[1]) / (2 * h);
    const double det = a * d - b * c;
    bool accepted = false;
    if (std::abs(det) > 1e-300) {
      double dx = -(d * r0[0] - b * r0[1]) / det;
      double ds = -(-c * r0[0] + a * r0[1]) / det;
      for (int k = 0; k < 60 && !accepted; ++k) {
        // Steps that leave the representable chart are shortened, not taken.
        if (std::isfinite(x + dx) && std::abs(ls + ds) < 60) {
          const HPoint cand = chart_point(x + dx, ls + ds);
          const auto rc = residual(cand);
          if (std::hypot(rc[0], rc[1]) < n0) {
            p = cand;
            accepted = true;
          }
        }
        dx *= 0.5;
        ds *= 0.5;
      }
    }
    if (!accepted) {
      const HPoint next = fallback(p);
      const auto rn = residual(next);
      if (!(std::hypot(rn[0], rn[1]) < n0) && hyp_dist(next, p) < std::max(s.tol, resolution_floor(p))) {
        *iterations = it + 1;
        return p;
      }
      p = next;
    }
  }
  throw Error(ErrorCode::MaxIterations, "Newton iteration did not converge");
}

}  // namespace

FixedPointResult fixed_point(const GroupElement& g, const EquivariantMap& f,
                             const SolverSettings& s, const HPoint& start) {
  if (!(f.lipschitz() < 1)) {
    throw Error(ErrorCode::NoContraction, "fixed_point needs a map with Lipschitz bound < 1");
  }
  const GroupElement gi = g.inverse();
  FixedPointResult r;
  HPoint p = start;
  double prev_step = -1;
  for (int it = 1; it <= s.max_iterations; ++it) {
    const HPoint next = moebius_apply(gi, f(p));
    const double step = hyp_dist(p, next);
    // Rates are only meaningful well above rounding level.
    if (prev_step > 1e3 * s.tol && step > 1e3 * s.tol) {
      r.observed_rate = std::max(r.observed_rate, step / prev_step);
    }
    prev_step = step;
    p = next;
    if (step < std::max(s.tol, resolution_floor(p))) {
      r.point = p;
      r.iterations = it;
      r.residual = hyp_dist(p, moebius_apply(gi, f(p)));
      return r;
    }
  }
  throw Error(ErrorCode::MaxIterations, "fixed-point iteration did not settle");
}

FixedPointResult fixed_point_newton(const GroupElement& g, const EquivariantMap& f,
                                    const SolverSettings& s, const HPoint& start) {
  const GroupElement gi = g.inverse();
  const auto map = [&](const HPoint& p) { return moebius_apply(gi, f(p)); };
  const auto residual = [&](const HPoint& p) { return frame(log_map(p, map(p))); };
  FixedPointResult r;
  r.point = newton_2d(residual, map, start, s, &r.iterations);
  r.residual = hyp_dist(r.point, map(r.point));
  return r;
}

ZeroResult zero_of_field(const AlgebraElement& x, const EquivariantField& y,
                         const SolverSettings& s, const HPoint& start) {
  const double c = y.lipschitz();
  if (!(c < 0)) throw Error(ErrorCode::NoContraction, "zero_of_field needs c < 0");
  const auto diff = [&](const HPoint& p) {
    const TangentVector a = y(p), b = killing_eval(x, p);
    return TangentVector{p, a.vx - b.vx, a.vy - b.vy};
  };
  const auto residual = [&](const HPoint& p) { return frame(diff(p)); };
  const auto flow = [&](const HPoint& p) {
    TangentVector v = diff(p);
    const double n = hyp_norm(v);
    const double eta = std::min(0.5, std::abs(c) * 0.5 / std::max(n, 1e-300));
    v.vx *= eta;
    v.vy *= eta;
    return exp_map(v);
  };
  ZeroResult r;
  r.ball_radius = hyp_norm(diff(start)) / std::abs(c);
  r.point = newton_2d(residual, flow, start, s, &r.iterations);
  r.residual = hyp_norm(diff(r.point));
  r.distance_from_start = hyp_dist(start, r.point);
  return r;
}

// -- fibrations ---------------------------------------------------------------

FibrationHandle FibrationHandle::macro(MapPtr f, SolverSettings s) {
  if (!f) throw Error(ErrorCode::InvalidArgument, "null map");
  if (!(f->lipschitz() < 1)) {
    throw Error(ErrorCode::NoContraction,
                "map bound " + std::to_string(f->lipschitz()) + " is not < 1");
  }
  FibrationHandle h;
  h.map_ = std::move(f);
  h.settings_ = s;
  return h;
}

FibrationHandle FibrationHandle::micro(FieldPtr y, SolverSettings s) {
  if (!y) throw Error(ErrorCode::InvalidArgument, "null field");
  if (!(y->lipschitz() < 0)) {
    throw Error(ErrorCode::NoContraction,
                "field bound " + std::to_string(y->lipschitz()) + " is not < 0");
  }
  FibrationHandle h;
  h.field_ = std::move(y);
  h.settings_ = s;
  return h;
}

const EquivariantMap& FibrationHandle::map() const {
  if (!map_) throw Error(ErrorCode::InvalidArgument, "not a macro fibration");
  return *map_;
}

const EquivariantField& FibrationHandle::field() const {
  if (!field_) throw Error(ErrorCode::InvalidArgument, "not a micro fibration");
  return *field_;
}

HPoint project_macro(const FibrationHandle& h, const GroupElement& g) {
  return fixed_point(g, h.map(), h.settings()).point;
}

bool in_macro_fiber(const FibrationHandle& h, const GroupElement& g, const HPoint& p, double tol) {
  return hyp_dist(moebius_apply(g, p), h.map()(p)) <= tol;
}

HPoint project_micro(const FibrationHandle& h, const AlgebraElement& x) {
  return zero_of_field(x, h.field(), h.settings()).point;
}

bool in_micro_fiber(const FibrationHandle& h, const AlgebraElement& x, const HPoint& p,
                    double tol) {
  const TangentVector a = h.field()(p), b = killing_eval(x, p);
  return hyp_norm({p, a.vx - b.vx, a.vy - b.vy}) <= tol;
}

// -- lengths --------------------------------------------------------------------

namespace {

double base_length(const Representation& j, const Word& w) {
  const GroupElement g = eval_rep(j, w);
  if (classify(g) != IsometryClass::Hyperbolic) {
    throw Error(ErrorCode::NonHyperbolicBase, "j(" + w.to_string() + ") is not hyperbolic");
  }
  return translation_length(g);
}

}  // namespace

LengthRatio length_ratio_sup(const Representation& j, const Representation& rho, int max_len) {
  LengthRatio out;
  out.value = -1;
  for (const Word& w : cyclically_reduced_words(j.rank(), max_len)) {
    const double r = translation_length(eval_rep(rho, w)) / base_length(j, w);
    if (r > out.value) {
      out.value = r;
      out.argmax = w;
    }
  }
  if (out.value < 0) out.value = 0;
  return out;
}

double dlambda(const Representation& j, const Cocycle& u, const Word& w) {
  const GroupElement g = eval_rep(j, w);
  if (classify(g) != IsometryClass::Hyperbolic) {
    throw Error(ErrorCode::NonHyperbolicBase, "j(" + w.to_string() + ") is not hyperbolic");
  }
  const double tr = g.trace();
  const double t = (eval_cocycle(u, w).matrix() * g.matrix()).trace();
  return 2 * (tr > 0 ? 1 : -1) * t / std::sqrt(tr * tr - 4);
}

AdmissibilityReport admissibility_test(const Representation& j, const Cocycle& u, int max_len,
                                       double eps, double tol) {
  AdmissibilityReport r;
  r.max_ratio = -std::numeric_limits<double>::infinity();
  r.min_ratio = std::numeric_limits<double>::infinity();
  r.margin_by_length.assign(std::max(max_len, 0), 0.0);
  for (const Word& w : cyclically_reduced_words(j.rank(), max_len)) {
    const double ratio = dlambda(j, u, w) / base_length(j, w);
    if (ratio > r.max_ratio) {
      r.max_ratio = ratio;
      r.argmax = w;
    }
    if (ratio < r.min_ratio) {
      r.min_ratio = ratio;
      r.argmin = w;
    }
    if (!r.witness_up && ratio >= -tol) r.witness_up = w;
    if (!r.witness_down && ratio <= tol) r.witness_down = w;
    r.margin_by_length[w.size() - 1] = r.max_ratio;
  }
  for (std::size_t l = 1; l < r.margin_by_length.size(); ++l) {
    r.margin_by_length[l] = std::max(r.margin_by_length[l], r.margin_by_length[l - 1]);
  }
  if (r.max_ratio < -eps) {
    r.verdict = Verdict::CertifiedNegativeSlope;
    r.witness_up.reset();
    r.witness_down.reset();
  } else if (r.witness_up && r.witness_down) {
    r.verdict = Verdict::Violated;
  } else {
    r.verdict = Verdict::Inconclusive;
    r.negation_certified = r.min_ratio > eps;
    r.witness_up.reset();
    r.witness_down.reset();
  }
  return r;
}

namespace {

// Moebius action, or nothing once the image leaves the representable range.
std::optional<HPoint> safe_apply(const GroupElement& g, const HPoint& p) {
  const double a = g.a(), b = g.b(), c = g.c(), d = g.d();
  const double re = c * p.x() + d, im = c * p.y();
  const double den = re * re + im * im;
  const double y = p.y() / den;
  if (!(den > 0) || !std::isfinite(den) || !(y > 1e-280) || !(y < 1e280)) return std::nullopt;
  const double x = ((a * p.x() + b) * re + a * c * p.y() * p.y()) / den;
  if (!std::isfinite(x)) return std::nullopt;
  return HPoint(x, y);
}

// o, g o, g^2 o, ... up to g^count o, truncated where points degenerate.
std::vector<HPoint> orbit(const GroupElement& g, int count) {
  std::vector<HPoint> pts{HPoint::basepoint()};
  while (static_cast<int>(pts.size()) <= count) {
    const auto next = safe_apply(g, pts.back());
    if (!next) break;
    pts.push_back(*next);
  }
  return pts;
}

}  // namespace

PropernessReport properness_violation_search(const Representation& j, const Representation& rho,
                                             double radius, int max_n, Word beta, Word gamma,
                                             int psi_range) {
  PropernessReport r;
  if (beta.empty() || gamma.empty()) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    Word wlo, whi;
    for (const Word& w : cyclically_reduced_words(j.rank(), 4)) {
      const double q = translation_length(eval_rep(rho, w)) / base_length(j, w);
      if (q < lo) {
        lo = q;
        wlo = w;
      }
      if (q > hi) {
        hi = q;
        whi = w;
      }
    }
    if (beta.empty()) beta = wlo;
    if (gamma.empty()) gamma = whi;
  }
  r.beta = beta;
  r.gamma = gamma;
  const GroupElement jb = eval_rep(j, beta), rb = eval_rep(rho, beta);
  const GroupElement jg = eval_rep(j, gamma), rg = eval_rep(rho, gamma);
  // Long products overflow as matrices, so mu(w) = d(o, w o) is evaluated by
  // pushing orbit points through one factor at a time.
  const std::vector<HPoint> jp = orbit(jg, psi_range), rp = orbit(rg, psi_range);
  const std::vector<HPoint> jm = orbit(jg.inverse(), psi_range), rm = orbit(rg.inverse(), psi_range);
  const HPoint o = HPoint::basepoint();
  const auto gap_at = [&](const HPoint& qj, const HPoint& qr, int n) {
    std::optional<HPoint> a = qj, b = qr;
    for (int i = 0; i < n && a && b; ++i) {
      a = safe_apply(jb, *a);
      b = safe_apply(rb, *b);
    }
    return a && b ? std::optional<double>(std::abs(hyp_dist(o, *b) - hyp_dist(o, *a))) : std::nullopt;
  };
  for (int n = 1; n <= max_n; ++n) {
    ProperGap best{n, 0, std::numeric_limits<double>::infinity()};
    if (const auto g0 = gap_at(o, o, n)) best.gap = *g0;
    for (int k = 1; k <= psi_range; ++k) {
      if (k < static_cast<int>(std::min(jp.size(), rp.size()))) {
        if (const auto g = gap_at(jp[k], rp[k], n); g && *g < best.gap) best = {n, k, *g};
      }
      if (k < static_cast<int>(std::min(jm.size(), rm.size()))) {
        if (const auto g = gap_at(jm[k], rm[k], n); g && *g < best.gap) best = {n, -k, *g};
      }
    }
    if (!std::isfinite(best.gap)) break;
    r.gaps.push_back(best);
    r.max_gap = std::max(r.max_gap, best.gap);
  }
  r.witness = !r.gaps.empty() && r.max_gap <= radius;
  return r;
}

// -- analytic toolkit -----------------------------------------------------------

double kirszbraun_objective(const std::vector<PointConstraint>& constraints, const HPoint& p,
                            const HPoint& q, double floor) {
  double best = 0;
  for (const PointConstraint& c : constraints) {
    best = std::max(best, hyp_dist(q, c.q) / std::max(hyp_dist(p, c.p), floor));
  }
  return best;
}

HPoint kirszbraun_extend_point(const std::vector<PointConstraint>& constraints, const HPoint& p,
                               double c0, double floor) {
  if (constraints.empty()) throw Error(ErrorCode::InvalidArgument, "no constraints");
  if (!(c0 >= 1)) throw Error(ErrorCode::InvalidArgument, "C0 must be >= 1");
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    for (std::size_t k = i + 1; k < constraints.size(); ++k) {
      const double dq = hyp_dist(constraints[i].q, constraints[k].q);
      const double dp = hyp_dist(constraints[i].p, constraints[k].p);
      if (dq > c0 * dp * (1 + 1e-12) + 1e-12) {
        throw Error(ErrorCode::Infeasible, "constraints are not C0-Lipschitz");
      }
    }
  }
  std::vector<double> radii;
  for (const PointConstraint& c : constraints) radii.push_back(std::max(hyp_dist(p, c.p), floor));

  // Log-sum-exp smoothing with increasing sharpness, each stage minimized by
  // compass search in geodesic directions, then a final stage on the max.
  const auto smooth = [&](const HPoint& q, double beta) {
    std::vector<double> v;
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < constraints.size(); ++i) {
      v.push_back(hyp_dist(q, constraints[i].q) / radii[i]);
      m = std::max(m, v.back());
    }
    if (beta <= 0) return m;
    double s = 0;
    for (double x : v) s += std::exp(beta * (x - m));
    return m + std::log(s) / beta;
  };
  HPoint q = constraints[0].q;
  double start = 0;
  for (const PointConstraint& c : constraints) start = std::max(start, hyp_dist(q, c.q));
  for (double beta : {10.0, 100.0, 1e3, 1e4, 1e5, 0.0}) {
    double step = std::max(start, 0.5);
    double val = smooth(q, beta);
    int rot = 0;
    while (step > 1e-11) {
      bool moved = false;
      for (int k = 0; k < 16; ++k) {
        const double th = 2 * M_PI * (k + 0.37 * rot) / 16;
        const HPoint cand = exp_map(TangentVector::make(q, std::polar(step * q.y(), th)));
        const double cv = smooth(cand, beta);
        if (cv < val) {
          q = cand;
          val = cv;
          moved = true;
          break;
        }
      }
      ++rot;
      if (!moved) step *= 0.5;
    }
    start = 0.1;
  }
  return q;
}

std::vector<HPoint> stretch_locus_sample(const std::function<HPoint(const HPoint&)>& f, double c0,
                                         double eps, const std::vector<HPoint>& samples) {
  std::vector<HPoint> out;
  for (const HPoint& p : samples) {
    if (local_stretch(f, p) > c0 - eps) out.push_back(p);
  }
  return out;
}

ToponogovResult toponogov_check(const HPoint& p, Complex v, Complex v2, double r, double c0) {
  const auto at = [&](Complex dir, double len) {
    return exp_map(TangentVector::make(p, dir / std::abs(dir) * p.y() * len));
  };
  ToponogovResult out;
  out.lhs = hyp_dist(at(v, c0 * r), at(v2, c0 * r));
  out.rhs = c0 * hyp_dist(at(v, r), at(v2, r));
  // Equality up to rounding (dependent directions) does not count.
  out.holds = out.lhs > out.rhs + 1e-12 * std::max(1.0, out.rhs);
  return out;
}

TransitionReport transition_fiber_check(const MapFamily& family, const EquivariantField& y,
                                        const std::vector<AlgebraElement>& xs,
                                        const std::vector<HPoint>& samples,
                                        const std::vector<double>& ts) {
  TransitionReport rep;
  SolverSettings s;
  s.tol = 1e-12;
  s.max_iterations = 200;
  std::vector<HPoint> zeros;
  for (const AlgebraElement& x : xs) zeros.push_back(zero_of_field(x, y, s).point);
  for (double t : ts) {
    const MapPtr f = family(t);
    TransitionRow row;
    row.t = t;
    for (const HPoint& p : samples) {
      const TangentVector d = log_map(p, (*f)(p));
      const TangentVector yp = y(p);
      row.field_gap =
          std::max(row.field_gap, hyp_norm({p, d.vx / t - yp.vx, d.vy / t - yp.vy}));
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const HPoint pi = fixed_point_newton(exp_alg(xs[i] * t), *f, s, zeros[i]).point;
      row.fiber_gap = std::max(row.fiber_gap, hyp_dist(pi, zeros[i]));
    }
    rep.max_rate = std::max(rep.max_rate, row.fiber_gap / t);
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace adsg
