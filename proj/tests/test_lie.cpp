#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "adsg/errors.hpp"
#include "adsg/lie.hpp"
#include "support.hpp"

namespace adsg {
namespace {

using testing::Rng;

const double kE = std::exp(1.0);

GroupElement diag_e() { return GroupElement::diag(kE); }
GroupElement quarter() { return GroupElement::from_entries(0, -1, 1, 0); }
GroupElement unipotent() { return GroupElement::from_entries(1, 0, 1, 1); }

void expect_point(const HPoint& p, double x, double y, double tol = 1e-12) {
  EXPECT_NEAR(p.x(), x, tol);
  EXPECT_NEAR(p.y(), y, tol);
}

TEST(GroupElementTest, NormalizesDeterminantAndSign) {
  const GroupElement g = GroupElement::from_entries(-2, -4, -1, -3);
  EXPECT_NEAR(g.a() * g.d() - g.b() * g.c(), 1.0, 1e-12);
  EXPECT_GT(g.trace(), 0);
  EXPECT_TRUE(g.approx_equal(GroupElement::from_entries(2, 4, 1, 3)));
}

TEST(GroupElementTest, TracelessSignConvention) {
  const GroupElement g = GroupElement::from_entries(0, 1, -1, 0);
  EXPECT_GT(g.c(), 0);
  EXPECT_TRUE(g.approx_equal(quarter()));
}

TEST(GroupElementTest, RejectsNonPositiveDeterminant) {
  EXPECT_THROW(GroupElement::from_entries(1, 0, 0, -1), Error);
  EXPECT_THROW(GroupElement::from_entries(1, 1, 1, 1), Error);
}

TEST(GroupElementTest, NormalizationIsIdempotent) {
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    const GroupElement g = testing::random_group(rng);
    const GroupElement h = GroupElement::from_matrix(g.matrix());
    // Renormalizing only moves entries by rounding.
    const double tol = 1e-15 * g.matrix().max_abs();
    EXPECT_NEAR(g.a(), h.a(), tol);
    EXPECT_NEAR(g.b(), h.b(), tol);
    EXPECT_NEAR(g.c(), h.c(), tol);
    EXPECT_NEAR(g.d(), h.d(), tol);
  }
}

TEST(MoebiusTest, Fixtures) {
  expect_point(moebius_apply(GroupElement::from_entries(1, 1, 0, 1), HPoint()), 1, 1);
  expect_point(moebius_apply(quarter(), HPoint()), 0, 1);
  expect_point(moebius_apply(diag_e(), HPoint()), 0, kE * kE);
}

TEST(MoebiusTest, IsALeftAction) {
  Rng rng(12);
  for (int i = 0; i < 100; ++i) {
    const GroupElement g = testing::random_group(rng), h = testing::random_group(rng);
    const HPoint z = testing::random_point(rng);
    const HPoint lhs = moebius_apply(g * h, z);
    const HPoint rhs = moebius_apply(g, moebius_apply(h, z));
    EXPECT_LT(std::abs(lhs.z() - rhs.z()), 1e-12 * std::max(1.0, std::abs(lhs.z())));
  }
}

TEST(HypDistTest, Fixtures) {
  EXPECT_EQ(hyp_dist(HPoint(), HPoint()), 0.0);
  EXPECT_NEAR(hyp_dist(HPoint(), HPoint(0, kE * kE)), 2.0, 1e-14);
}

TEST(HypDistTest, MatchesNumericGeodesicIntegration) {
  Rng rng(13);
  for (int i = 0; i < 10; ++i) {
    const HPoint p = testing::random_point(rng), q = testing::random_point(rng);
    EXPECT_NEAR(hyp_dist(p, q), testing::geodesic_length_numeric(p, q), 1e-8);
  }
}

TEST(HypDistTest, SymmetricAndInvariant) {
  Rng rng(14);
  for (int i = 0; i < 100; ++i) {
    const HPoint p = testing::random_point(rng), q = testing::random_point(rng);
    const GroupElement g = testing::random_group(rng);
    EXPECT_NEAR(hyp_dist(p, q), hyp_dist(q, p), 1e-14);
    EXPECT_NEAR(hyp_dist(moebius_apply(g, p), moebius_apply(g, q)), hyp_dist(p, q), 1e-10);
    EXPECT_GE(hyp_dist(p, q), 0);
  }
}

TEST(ClassifyTest, Fixtures) {
  EXPECT_EQ(classify(quarter()), IsometryClass::Elliptic);
  EXPECT_EQ(classify(unipotent()), IsometryClass::Parabolic);
  EXPECT_EQ(classify(diag_e()), IsometryClass::Hyperbolic);
  EXPECT_EQ(classify(GroupElement()), IsometryClass::Identity);
  EXPECT_EQ(classify(GroupElement::from_entries(-1, 0, 0, -1)), IsometryClass::Identity);
}

TEST(TranslationLengthTest, Fixtures) {
  EXPECT_NEAR(translation_length(diag_e()), 2.0, 1e-14);
  EXPECT_EQ(translation_length(quarter()), 0.0);
  EXPECT_EQ(translation_length(unipotent()), 0.0);
}

TEST(TranslationLengthTest, PowersScaleLinearly) {
  Rng rng(15);
  int checked = 0;
  while (checked < 30) {
    const GroupElement g = testing::random_group(rng);
    if (classify(g) != IsometryClass::Hyperbolic || translation_length(g) < 0.2) continue;
    ++checked;
    GroupElement gn = g;
    for (int n = 2; n <= 8; ++n) {
      gn = gn * g;
      EXPECT_NEAR(translation_length(gn), n * translation_length(g), 1e-8 * n);
    }
  }
}

TEST(MuTest, Fixtures) {
  EXPECT_EQ(mu(GroupElement()), 0.0);
  EXPECT_NEAR(mu(diag_e()), 2.0, 1e-14);
  EXPECT_NEAR(mu(testing::rotation(0.7)), 0.0, 1e-14);
}

TEST(MuTest, SymmetricAndSubadditive) {
  Rng rng(16);
  for (int i = 0; i < 100; ++i) {
    const GroupElement g = testing::random_group(rng), h = testing::random_group(rng);
    EXPECT_NEAR(mu(g.inverse()), mu(g), 1e-10);
    EXPECT_LE(mu(g * h), mu(g) + mu(h) + 1e-10);
  }
}

TEST(MuTest, GrowthRateApproachesTranslationLength) {
  Rng rng(17);
  int checked = 0;
  while (checked < 10) {
    const GroupElement g = testing::random_group(rng);
    if (classify(g) != IsometryClass::Hyperbolic || translation_length(g) < 0.3) continue;
    ++checked;
    // Iterate on the orbit point to avoid forming g^64 as a matrix.
    HPoint p;
    for (int n = 0; n < 64; ++n) p = moebius_apply(g, p);
    EXPECT_NEAR(hyp_dist(HPoint(), p) / 64, translation_length(g), 0.1);
  }
}

TEST(ExpLogTest, Fixtures) {
  EXPECT_TRUE(exp_alg({0, 0, 0}).approx_equal(GroupElement()));
  for (double t : {0.1, 0.5, 2.0}) {
    EXPECT_TRUE(exp_alg({t, 0, 0}).approx_equal(GroupElement::diag(std::exp(t)), 1e-12));
  }
}

TEST(ExpLogTest, MatchesPowerSeries) {
  for (double t : {0.01, 0.3, 1.0, 2.5}) {
    const AlgebraElement x{0, -t, t};
    EXPECT_LT(testing::projective_gap(exp_alg(x), testing::exp_series(x.matrix())), 1e-10);
  }
  Rng rng(18);
  for (int i = 0; i < 50; ++i) {
    const AlgebraElement x = testing::random_algebra(rng, 1.5);
    EXPECT_LT(testing::projective_gap(exp_alg(x), testing::exp_series(x.matrix())), 1e-10);
  }
}

TEST(ExpLogTest, SmallArgumentsStayAccurate) {
  const AlgebraElement x{1e-7, 2e-7, -3e-7};
  EXPECT_LT(testing::projective_gap(exp_alg(x), testing::exp_series(x.matrix())), 1e-15);
}

TEST(ExpLogTest, RoundTrip) {
  Rng rng(19);
  for (int i = 0; i < 200; ++i) {
    const GroupElement g = testing::random_group(rng);
    if (std::abs(g.trace()) < 1e-3) continue;
    EXPECT_TRUE(exp_alg(log_grp(g)).approx_equal(g, 1e-9));
  }
}

TEST(ExpLogTest, HalfTurnHasNoPrincipalLog) {
  try {
    log_grp(quarter());
    FAIL() << "expected NoPrincipalLog";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoPrincipalLog);
  }
}

TEST(ExpLogTest, ExpIsTheKillingFlow) {
  Rng rng(20);
  for (int i = 0; i < 20; ++i) {
    const AlgebraElement x = testing::random_algebra(rng);
    const HPoint p = testing::random_point(rng);
    const TangentVector v = killing_eval(x, p);
    for (double t : {1e-3, 1e-4}) {
      const HPoint q = moebius_apply(exp_alg(x * t), p);
      const Complex fd = (q.z() - p.z()) / t;
      // First-order error O(t).
      EXPECT_LT(std::abs(fd - v.v()), 50 * t * (1 + std::abs(v.v())) * (1 + std::abs(p.z())));
    }
  }
}

TEST(AdjointTest, Properties) {
  Rng rng(21);
  const AlgebraElement x0 = testing::random_algebra(rng);
  EXPECT_LT(testing::alg_gap(adjoint(GroupElement(), x0), x0), 1e-15);
  for (int i = 0; i < 100; ++i) {
    const GroupElement g = testing::random_group(rng), h = testing::random_group(rng);
    const AlgebraElement x = testing::random_algebra(rng);
    EXPECT_NEAR(adjoint(g, x).det(), x.det(), 1e-12 * (1 + std::abs(x.det())) * 100);
    EXPECT_LT(testing::alg_gap(adjoint(g * h, x), adjoint(g, adjoint(h, x))), 1e-10);
  }
}

TEST(AdjointTest, PushforwardIdentity) {
  // (Ad(g) X)(g p) = dg_p (X(p)), with dg from finite differences of the action.
  Rng rng(22);
  for (int i = 0; i < 30; ++i) {
    const GroupElement g = testing::random_group(rng);
    const AlgebraElement x = testing::random_algebra(rng);
    const HPoint p = testing::random_point(rng, 1.0);
    const TangentVector v = killing_eval(x, p);
    const double h = 1e-6;
    const HPoint plus = HPoint::from_complex(p.z() + h * v.v());
    const HPoint minus = HPoint::from_complex(p.z() - h * v.v());
    const Complex dg = (moebius_apply(g, plus).z() - moebius_apply(g, minus).z()) / (2 * h);
    const TangentVector w = killing_eval(adjoint(g, x), moebius_apply(g, p));
    EXPECT_LT(std::abs(w.v() - dg), 1e-8 * (1 + std::abs(dg)) * 100);
    EXPECT_LT(std::abs(pushforward(g, v).v() - w.v()), 1e-10 * (1 + std::abs(w.v())));
  }
}

TEST(KillingTest, Fixtures) {
  const TangentVector k = killing_eval({0, -1, 1}, HPoint());
  EXPECT_NEAR(k.vx, 0, 1e-15);
  EXPECT_NEAR(k.vy, 0, 1e-15);
  const TangentVector d = killing_eval({1, 0, 0}, HPoint());
  EXPECT_NEAR(d.vx, 0, 1e-15);
  EXPECT_NEAR(d.vy, 2, 1e-15);
}

TEST(KillingTest, FramesAndGenerators) {
  Rng rng(23);
  for (int i = 0; i < 30; ++i) {
    const HPoint p = testing::random_point(rng);
    const double angle = testing::uniform(rng, 0, 2 * std::numbers::pi);
    const Complex dir = std::polar(1.0, angle);
    // Unit-speed translation: its field at p has hyperbolic norm 1.
    const AlgebraElement t = translation_generator(p, dir);
    EXPECT_NEAR(hyp_norm(killing_eval(t, p)), 1.0, 1e-12);
    // The rotation generator vanishes at p.
    EXPECT_LT(hyp_norm(killing_eval(rotation_generator(p), p)), 1e-12);
    // killing_with_value realizes the prescribed vector.
    const TangentVector v = TangentVector::make(p, p.y() * Complex(0.3, -0.8));
    const TangentVector w = killing_eval(killing_with_value(v), p);
    EXPECT_LT(std::abs(w.v() - v.v()), 1e-12 * p.y());
  }
}

TEST(ExpMapTest, LogInvertsExp) {
  Rng rng(24);
  for (int i = 0; i < 50; ++i) {
    const HPoint p = testing::random_point(rng), q = testing::random_point(rng);
    const TangentVector v = log_map(p, q);
    EXPECT_NEAR(hyp_norm(v), hyp_dist(p, q), 1e-10);
    const HPoint r = exp_map(v);
    EXPECT_LT(hyp_dist(r, q), 1e-9);
  }
}

TEST(ExpMapTest, GeodesicLerpSplitsDistance) {
  Rng rng(25);
  for (int i = 0; i < 50; ++i) {
    const HPoint p = testing::random_point(rng), q = testing::random_point(rng);
    const double t = testing::uniform(rng, 0, 1);
    const HPoint m = geodesic_lerp(p, q, t);
    EXPECT_NEAR(hyp_dist(p, m), t * hyp_dist(p, q), 1e-9);
    EXPECT_NEAR(hyp_dist(m, q), (1 - t) * hyp_dist(p, q), 1e-9);
  }
}

TEST(HPointTest, RejectsLowerHalfPlane) {
  EXPECT_THROW(HPoint(0, 0), Error);
  EXPECT_THROW(HPoint(0, -1), Error);
  EXPECT_THROW(HPoint(std::nan(""), 1), Error);
}

}  // namespace
}  // namespace adsg
