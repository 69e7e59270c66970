// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "adsg/ads.hpp"
#include "adsg/contraction.hpp"
#include "adsg/errors.hpp"
#include "adsg/strip.hpp"
#include "strip_fixture.hpp"
#include "support.hpp"

namespace {

using namespace adsg;
using adsg::testing::Rng;
using Kind = LorentzDistance::Kind;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::string failures;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    failures += (pass ? "" : "; ") + what;
    pass = false;
  }
  std::string text() const { return pass ? detail.str() : detail.str() + " [" + failures + "]"; }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double delta_gap(const LorentzDistance& x, const LorentzDistance& y) {
  if (x.kind != y.kind) return std::numeric_limits<double>::infinity();
  if (x.kind == Kind::Imaginary) return imaginary_gap(x.value, y.value);
  return std::abs(x.value - y.value);
}

double mat_size(const Mat2& x) {
  return std::max({std::abs(x.m00), std::abs(x.m01), std::abs(x.m10), std::abs(x.m11)});
}

// Projective gap scaled by the entry size of the normalized element.
double rel_group_gap(const GroupElement& g, const GroupElement& h) {
  return adsg::testing::projective_gap(g, h.matrix()) / (1 + mat_size(g.matrix()));
}

double alg_size(const AlgebraElement& x) {
  return std::max({std::abs(x.a), std::abs(x.b), std::abs(x.c)});
}

Representation signed_macro(const StripModel& m, double s) {
  Representation rho;
  const HPoint x0 = m.basepoint();
  for (const GroupElement& g : m.group().j.generators) {
    rho.generators.push_back(m.macro_path(x0, moebius_apply(g, x0), s) * g);
  }
  return rho;
}

TangentVector smooth_field(const HPoint& p) {
  const double x = p.x(), y = p.y();
  return TangentVector::make(p, {y * std::sin(x) + 0.3 * y * y, y * std::cos(y) - 0.2 * x * y});
}

double flowed_distance(const HPoint& p, const HPoint& q, double t) {
  const TangentVector a = smooth_field(p), b = smooth_field(q);
  return hyp_dist(exp_map({p, a.vx * t, a.vy * t}), exp_map({q, b.vx * t, b.vy * t}));
}

// -- criteria -------------------------------------------------------------------------

void delta_oracles(Outcome& o) {
  const auto t0 = Clock::now();
  Rng rng(101);
  double worst = 0;
  int kind_mismatch = 0;
  for (int i = 0; i < 500; ++i) {
    const GroupElement a = adsg::testing::random_group(rng), b = adsg::testing::random_group(rng);
    const LorentzDistance t = delta_trace(a, b), c = delta_crossratio(a, b);
    if (t.kind != c.kind) {
      ++kind_mismatch;
      continue;
    }
    worst = std::max(worst, delta_gap(t, c));
  }
  const double secs = seconds_since(t0);
  o.require(kind_mismatch == 0, std::to_string(kind_mismatch) + " kind mismatches");
  o.require(worst < 1e-8, "value gap too large");
  o.require(secs < 5, "too slow");
  o.detail << "500 pairs, max gap " << worst << ", " << secs << " s";
}

void model_fixtures(Outcome& o) {
  const double e = std::exp(1.0);
  const GroupElement id;
  const GroupElement d = GroupElement::diag(e);
  for (const LorentzDistance& x : {delta_trace(id, d), delta_crossratio(id, d)}) {
    o.require(x.kind == Kind::Real && std::abs(x.value - 1) < 1e-10, "delta(Id, diag(e, 1/e)) != 1");
  }
  o.require(std::abs(translation_length(d) - 2) < 1e-10, "translation length != 2");
  double worst = 0;
  for (int k = 1; k <= 20; ++k) {
    const double theta = k * (std::numbers::pi / 2) / 21;
    const GroupElement r = adsg::testing::rotation(2 * theta);
    for (const LorentzDistance& x : {delta_trace(id, r), delta_crossratio(id, r)}) {
      o.require(x.kind == Kind::Imaginary, "rotation not imaginary");
      worst = std::max(worst, std::abs(x.value - theta));
    }
  }
  o.require(worst < 1e-10, "rotation values off");
  Rng rng(102);
  int tangent = 0;
  for (int i = 0; i < 20; ++i) {
    const GroupElement g = adsg::testing::random_group(rng);
    const GroupElement b = g * GroupElement::from_entries(1, adsg::testing::uniform(rng, 0.2, 3), 0, 1);
    tangent += delta_trace(g, b).kind == Kind::Zero && delta_crossratio(g, b).kind == Kind::Zero &&
               delta_trace(g, b).value == 0;
  }
  o.require(tangent == 20, "tangent line pair not zero");
  o.detail << "diag, 20 rotations (max err " << worst << "), 20 tangent pairs";
}

void flat_limit(Outcome& o) {
  const auto t0 = Clock::now();
  Rng rng(103);
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    const AlgebraElement x = adsg::testing::random_algebra(rng), y = adsg::testing::random_algebra(rng);
    for (double t : {1e-2, 1e-3}) worst = std::max(worst, rescaled_limit(x, y, t).error / t);
  }
  const double secs = seconds_since(t0);
  o.require(worst <= 5, "error exceeds 5t");
  o.require(secs < 10, "too slow");
  o.detail << "max error/t " << worst << ", " << secs << " s";
}

void macro_fibration(Outcome& o) {
  const FibrationHandle h = FibrationHandle::macro(adsg::testing::pants_relaxed_map(0.6));
  const EquivariantMap& f = h.map();
  const double c = f.lipschitz();
  o.require(c < 1, "relaxed bound not below 1");
  Rng rng(104);
  double resid = 0, equi = 0, rate = 0;
  int not_in = 0, not_unique = 0;
  HPoint prev = adsg::testing::pants_model().basepoint();
  for (int k = 0; k < 1000; ++k) {
    const GroupElement g = exp_alg(adsg::testing::random_algebra(rng));
    const FixedPointResult r = fixed_point(g, f, h.settings());
    resid = std::max(resid, r.residual);
    rate = std::max(rate, r.observed_rate);
    const HPoint p = project_macro(h, g);
    not_in += !in_macro_fiber(h, g, p, 1e-7);
    // The fibre over a clearly different point must not contain g.
    const HPoint q = hyp_dist(p, prev) > 1e-3 ? prev : HPoint(p.x() + p.y(), p.y());
    not_unique += in_macro_fiber(h, g, q, 1e-7);
    prev = p;
    const Word w = adsg::testing::random_word(rng, 2, 2);
    const GroupElement jw = eval_rep(f.source(), w);
    const HPoint lhs = project_macro(h, eval_rep(f.target(), w) * g * jw.inverse());
    equi = std::max(equi, hyp_dist(lhs, moebius_apply(jw, p)));
  }
  o.require(not_in == 0, std::to_string(not_in) + " samples off their fibre");
  o.require(not_unique == 0, std::to_string(not_unique) + " samples on two fibres");
  o.require(resid < 1e-6, "solver residual");
  o.require(equi < 1e-6, "equivariance residual");
  o.require(rate <= c, "observed rate above C");
  o.detail << "1000 samples, C " << c << ", rate " << rate << ", residual " << resid
           << ", equivariance " << equi;
}

void micro_fibration(Outcome& o) {
  const Cocycle u = strip_cocycle(adsg::testing::pants_model());
  const AdmissibilityReport a = admissibility_test(adsg::testing::pants_group().j, u, 6);
  o.require(a.verdict == Verdict::CertifiedNegativeSlope, "strip cocycle not certified");
  const FibrationHandle h = FibrationHandle::micro(adsg::testing::pants_relaxed_field());
  const EquivariantField& y = h.field();
  Rng rng(105);
  double equi = 0, resid = 0;
  int outside = 0, not_in = 0, not_unique = 0;
  for (int k = 0; k < 1000; ++k) {
    const AlgebraElement x = adsg::testing::random_algebra(rng);
    const ZeroResult z = zero_of_field(x, y, h.settings());
    resid = std::max(resid, z.residual);
    outside += z.distance_from_start > z.ball_radius * (1 + 1e-9) + 1e-12;
    const HPoint p = project_micro(h, x);
    not_in += !in_micro_fiber(h, x, p, 1e-7);
    not_unique += in_micro_fiber(h, x, HPoint(p.x() + 0.5 * p.y(), 1.5 * p.y()), 1e-7);
    const Word w = adsg::testing::random_word(rng, 2, 2);
    const GroupElement jw = eval_rep(y.cocycle().base, w);
    const AlgebraElement moved = eval_cocycle(y.cocycle(), w) + adjoint(jw, x);
    equi = std::max(equi, hyp_dist(project_micro(h, moved), moebius_apply(jw, p)));
  }
  o.require(not_in == 0, std::to_string(not_in) + " samples off their fibre");
  o.require(not_unique == 0, std::to_string(not_unique) + " samples on two fibres");
  o.require(outside == 0, std::to_string(outside) + " zeros outside the ball");
  o.require(equi < 1e-6, "equivariance residual");
  o.detail << "1000 samples, c " << y.lipschitz() << ", residual " << resid << ", equivariance "
           << equi;
}

void properness_coherence(Outcome& o) {
  const auto t0 = Clock::now();
  const Representation& j = adsg::testing::pants_group().j;
  const Representation rho = macro_strip(adsg::testing::pants_model(), 0.3);
  const LengthRatio lr = length_ratio_sup(j, rho, 6);
  o.require(lr.value < 1, "length ratio not below 1");
  const PropernessReport strip = properness_violation_search(j, rho, 1.0, 12);
  o.require(!strip.witness, "witness found for the strip deformation");
  const PropernessReport same = properness_violation_search(j, j, 1.0, 12);
  o.require(same.witness, "no witness for rho = j");
  const Representation mixed = schottky_fuchsian(SurfaceType::Pants, {2.4, 1.6, 2}).j;
  const PropernessReport mix = properness_violation_search(j, mixed, 1.0, 12);
  o.require(mix.witness, "no witness for the mixed deformation");
  const double secs = seconds_since(t0);
  o.require(secs < 60, "too slow");
  o.detail << "ratio " << lr.value << ", strip max gap " << strip.max_gap << ", mixed max gap "
           << mix.max_gap << ", " << secs << " s";
}

void first_variation_oracles(Outcome& o) {
  Rng rng(107);
  double field_err = 0;
  const double t = 1e-4;
  for (int k = 0; k < 100; ++k) {
    const HPoint p = adsg::testing::random_point(rng, 1.0), q = adsg::testing::random_point(rng, 1.0);
    const double fd = (flowed_distance(p, q, t) - flowed_distance(p, q, -t)) / (2 * t * hyp_dist(p, q));
    field_err = std::max(field_err, std::abs(field_lipschitz_pair(smooth_field, p, q) - fd));
  }
  const Representation& j = adsg::testing::pants_group().j;
  const std::vector<Word> words = cyclically_reduced_words(2, 3);
  double dl_err = 0;
  for (int k = 0; k < 100; ++k) {
    const Cocycle u{j, {adsg::testing::random_algebra(rng), adsg::testing::random_algebra(rng)}};
    const Word& w = words[k % words.size()];
    const GroupElement jw = eval_rep(j, w);
    const AlgebraElement uw = eval_cocycle(u, w);
    const auto central = [&](double s) {
      return (adsg::testing::length_from_trace(exp_alg(uw * s).matrix() * jw.matrix()) -
              adsg::testing::length_from_trace(exp_alg(uw * -s).matrix() * jw.matrix())) /
             (2 * s);
    };
    const double fd = (4 * central(t / 2) - central(t)) / 3;
    dl_err = std::max(dl_err, std::abs(dlambda(j, u, w) - fd) / (1 + std::abs(fd)));
  }
  o.require(field_err < 1e-5, "field lipschitz vs finite difference");
  o.require(dl_err < 1e-6, "dlambda vs finite difference");
  o.detail << "100+100 instances, field err " << field_err << ", dlambda rel err " << dl_err;
}

void inversion_round_trip(Outcome& o) {
  const auto t0 = Clock::now();
  const ArcComplex& cx = adsg::testing::pants_complex();
  Rng rng(108);
  int systems = 0, runs = 0, bad_support = 0, bad_count = 0;
  double worst = 0;
  for (const ArcSystem& s : cx.systems) {
    if (!s.fills) continue;
    ++systems;
    const std::size_t n = s.arcs.size();
    for (int k = 0; k < 50; ++k) {
      std::vector<double> w;
      double sum = 0;
      for (std::size_t i = 0; i < n; ++i) sum += w.emplace_back(adsg::testing::uniform(rng, 0.05, 1.0));
      const InversionReport r = invert_strip_map(cx, strip_cocycle(StripModel(cx, {s.arcs, w})));
      ++runs;
      if (r.solution.arcs != s.arcs) {
        ++bad_support;
        continue;
      }
      for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(r.solution.weights[i] - w[i] / sum));
      // A seam system is a common face of two top simplices.
      const bool ok = s.top ? r.positive_count == 1
                            : r.positive_count == 0 && r.boundary_systems.size() == 2;
      bad_count += !ok;
    }
  }
  const double secs = seconds_since(t0);
  o.require(systems == 7, "expected 7 filling systems, got " + std::to_string(systems));
  o.require(bad_support == 0, std::to_string(bad_support) + " wrong supports");
  o.require(bad_count == 0, std::to_string(bad_count) + " non-unique solutions");
  o.require(worst < 1e-6, "weight error");
  o.require(secs < 30, "too slow");
  o.detail << runs << " inversions on " << systems << " systems, max weight err " << worst << ", "
           << secs << " s";
}

void transition_proxy(Outcome& o) {
  const StripModel& m = adsg::testing::pants_model();
  const FieldPtr& y = adsg::testing::pants_relaxed_field();
  const std::vector<HPoint> pts = ConvexCore(m.group()).domain_samples(8);
  Rng rng(109);
  std::vector<AlgebraElement> xs;
  for (int i = 0; i < 4; ++i) {
    const HPoint& p = pts[i * pts.size() / 4];
    xs.push_back(killing_with_value((*y)(p)) + rotation_generator(p) * adsg::testing::uniform(rng, -1, 1));
  }
  const TransitionReport r = transition_fiber_check(
      [&](double t) { return relaxed_strip_map(m, t); }, *y, xs, pts, {1e-1, 1e-2, 1e-3});
  std::vector<double> rates;
  for (const TransitionRow& row : r.rows) rates.push_back(row.fiber_gap / row.t);
  o.require(rates.size() == 3, "missing rows");
  o.require(r.max_rate < 1, "gap/t not bounded by 1");
  // No growth as t shrinks.
  o.require(rates.back() <= 2 * rates.front() + 1e-3, "gap/t grows as t decreases");
  const Cocycle u = strip_cocycle(m);
  const Cocycle fd = derivative_cocycle([&](double s) { return signed_macro(m, s); }, 1e-3);
  double du = 0;
  for (int i = 0; i < 2; ++i) du = std::max(du, adsg::testing::alg_gap(fd.values[i], u.values[i]));
  o.require(du < 1e-5, "derivative cocycle mismatch");
  o.detail << "gap/t " << rates[0] << ", " << rates[1] << ", " << rates[2]
           << "; derivative cocycle err " << du;
}

void algebraic_laws(Outcome& o) {
  Rng rng(110);
  double worst = 0;
  const auto g = [&] { return adsg::testing::random_group(rng); };
  for (int k = 0; k < 100; ++k) {
    const GPair p{g(), g()}, q{g(), g()}, r{g(), g()};
    const GroupElement x = g();
    const GPair l = semidirect_mul(semidirect_mul(p, q), r), m = semidirect_mul(p, semidirect_mul(q, r));
    worst = std::max({worst, rel_group_gap(l.first, m.first), rel_group_gap(l.second, m.second)});
    const GPair ph = phi(semidirect_mul(p, q)), pp = product_mul(phi(p), phi(q));
    worst = std::max({worst, rel_group_gap(ph.first, pp.first), rel_group_gap(ph.second, pp.second)});
    worst = std::max(worst, rel_group_gap(act1(phi(p), x), act2(p, x)));
    worst = std::max(worst, rel_group_gap(act1(product_mul(p, q), x), act1(p, act1(q, x))));
    worst = std::max(worst, rel_group_gap(act2(semidirect_mul(p, q), x), act2(p, act2(q, x))));
    const AffinePair a{adsg::testing::random_algebra(rng), g()}, b{adsg::testing::random_algebra(rng), g()};
    const AlgebraElement v = adsg::testing::random_algebra(rng);
    const AlgebraElement lhs = act_affine(affine_mul(a, b), v), rhs = act_affine(a, act_affine(b, v));
    worst = std::max(worst, adsg::testing::alg_gap(lhs, rhs) / (1 + alg_size(lhs)));
  }
  // Cocycle law on derivative cocycles of a smooth family through j.
  const Representation& j = adsg::testing::pants_group().j;
  const AlgebraElement x0 = adsg::testing::random_algebra(rng), x1 = adsg::testing::random_algebra(rng);
  const Cocycle u = derivative_cocycle([&](double t) {
    return Representation{{exp_alg(x0 * t) * j.generators[0], exp_alg(x1 * t) * j.generators[1]}};
  });
  double law = 0;
  for (int k = 0; k < 100; ++k) {
    const Word w1 = adsg::testing::random_word(rng, 2, 3), w2 = adsg::testing::random_word(rng, 2, 3);
    const AlgebraElement a = eval_cocycle(u, w1);
    const AlgebraElement b = adjoint(eval_rep(j, w1), eval_cocycle(u, w2));
    const AlgebraElement ab = eval_cocycle(u, w1 * w2);
    law = std::max(law, adsg::testing::alg_gap(ab, a + b) / (1 + alg_size(a) + alg_size(b)));
  }
  o.require(worst < 1e-10, "group identities");
  o.require(law < 1e-10, "cocycle law");
  o.detail << "100 tuples, max rel err " << worst << ", cocycle law " << law;
}

struct Criterion {
  const char* name;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"delta-oracle-agreement", delta_oracles},
      {"model-geometry-fixtures", model_fixtures},
      {"flat-limit-constant", flat_limit},
      {"macro-fibration", macro_fibration},
      {"micro-fibration", micro_fibration},
      {"length-ratio-properness-coherence", properness_coherence},
      {"first-variation-oracles", first_variation_oracles},
      {"strip-map-round-trip", inversion_round_trip},
      {"micro-macro-transition", transition_proxy},
      {"algebraic-laws", algebraic_laws},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    failed += !o.pass;
    std::printf("%s [%zu] %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name,
                o.text().c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
