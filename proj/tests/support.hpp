#pragma once

// Shared helpers for the unit and acceptance tests: seeded generators and
// oracles that do not call the code they check.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "adsg/lie.hpp"
#include "adsg/rep.hpp"

namespace adsg::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline AlgebraElement random_algebra(Rng& rng, double scale = 1.0) {
  return {uniform(rng, -scale, scale), uniform(rng, -scale, scale), uniform(rng, -scale, scale)};
}

/// Random element with entries of moderate size.
inline GroupElement random_group(Rng& rng, double scale = 1.0) {
  for (;;) {
    const double a = uniform(rng, -2, 2), b = uniform(rng, -2, 2);
    const double c = uniform(rng, -2, 2), d = uniform(rng, -2, 2);
    const double det = a * d - b * c;
    if (det > 0.2) {
      const GroupElement g = GroupElement::from_entries(a, b, c, d);
      if (scale == 1.0) return g;
      return exp_alg(random_algebra(rng, scale)) * g;
    }
  }
}

inline HPoint random_point(Rng& rng, double spread = 1.5) {
  return {uniform(rng, -spread, spread), std::exp(uniform(rng, -spread, spread))};
}

inline Word random_word(Rng& rng, int rank, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len), gen(0, 2 * rank - 1);
  std::vector<int> letters;
  const int n = len(rng);
  while (static_cast<int>(letters.size()) < n) {
    const int g = gen(rng);
    const int letter = g < rank ? g + 1 : -(g - rank + 1);
    if (!letters.empty() && letters.back() == -letter) continue;
    letters.push_back(letter);
  }
  return Word(letters);
}

// -- oracles ------------------------------------------------------------------

/// Matrix exponential by truncated power series.
inline Mat2 exp_series(const Mat2& x, int terms = 40) {
  Mat2 sum, term;
  for (int k = 1; k < terms; ++k) {
    term = term * x * (1.0 / k);
    sum = sum + term;
  }
  return sum;
}

/// Projective distance between a normalized element and a raw matrix.
inline double projective_gap(const GroupElement& g, const Mat2& m) {
  const double s = std::sqrt(std::abs(m.det()));
  const Mat2 n = m * (1.0 / s);
  const auto gap = [&](double sign) {
    return std::max({std::abs(g.a() - sign * n.m00), std::abs(g.b() - sign * n.m01),
                     std::abs(g.c() - sign * n.m10), std::abs(g.d() - sign * n.m11)});
  };
  return std::min(gap(1), gap(-1));
}

/// Hyperbolic length of the geodesic from p to q, integrating |dz| / y along
/// the circle arc (or vertical segment) with composite Simpson.
inline double geodesic_length_numeric(const HPoint& p, const HPoint& q, int n = 20000) {
  std::vector<std::complex<double>> pts;
  if (std::abs(p.x() - q.x()) < 1e-14) {
    // Vertical segment, parametrized by log y.
    const double a = std::log(p.y()), b = std::log(q.y());
    for (int i = 0; i <= n; ++i) pts.emplace_back(p.x(), std::exp(a + (b - a) * i / n));
  } else {
    const double cx = (q.x() * q.x() + q.y() * q.y() - p.x() * p.x() - p.y() * p.y()) /
                      (2 * (q.x() - p.x()));
    const double r = std::hypot(p.x() - cx, p.y());
    const double t0 = std::atan2(p.y(), p.x() - cx), t1 = std::atan2(q.y(), q.x() - cx);
    for (int i = 0; i <= n; ++i) {
      const double t = t0 + (t1 - t0) * i / n;
      pts.emplace_back(cx + r * std::cos(t), r * std::sin(t));
    }
  }
  // Simpson on ds = |dz/du| / y, with the derivative from central differences.
  double sum = 0;
  for (int i = 0; i <= n; ++i) {
    std::complex<double> dz;
    if (i == 0) dz = (pts[1] - pts[0]) * static_cast<double>(n);
    else if (i == n) dz = (pts[n] - pts[n - 1]) * static_cast<double>(n);
    else dz = (pts[i + 1] - pts[i - 1]) * (n / 2.0);
    const double f = std::abs(dz) / pts[i].imag();
    const double w = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
    sum += w * f;
  }
  return sum / (3.0 * n);
}

/// Translation length from the trace, written out independently.
inline double length_from_trace(const Mat2& m) {
  const double t = std::abs(m.trace()) / std::sqrt(m.det());
  return t > 2 ? 2 * std::acosh(t / 2) : 0.0;
}

/// Rotation by angle phi about the basepoint.
inline GroupElement rotation(double phi) {
  return GroupElement::from_entries(std::cos(phi / 2), -std::sin(phi / 2), std::sin(phi / 2),
                                    std::cos(phi / 2));
}

/// Euclidean max-norm distance between algebra elements.
inline double alg_gap(const AlgebraElement& x, const AlgebraElement& y) {
  return std::max({std::abs(x.a - y.a), std::abs(x.b - y.b), std::abs(x.c - y.c)});
}

}  // namespace adsg::testing
