#include "adsg/ads.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "adsg/errors.hpp"

namespace adsg {

namespace {

using Vec4 = std::array<double, 4>;

double quad_form(const Vec4& x) { return x[0] * x[3] - x[1] * x[2]; }

double bilinear(const Vec4& x, const Vec4& y) {
  return 0.5 * (x[0] * y[3] + x[3] * y[0] - x[1] * y[2] - x[2] * y[1]);
}

double canonical_imaginary(double theta) {
  double r = std::fmod(theta, std::numbers::pi);
  if (r < 0) r += std::numbers::pi;
  return std::min(r, std::numbers::pi - r);
}

// Intersection quadratic Q(y) s^2 + 2 B s + Q(x) = 0 of the line {x + s y}
// with the quadric.
struct LineQuadratic {
  double qa = 0, bb = 0, qx = 0;
  double disc = 0;
  bool degenerate = false;
};

LineQuadratic line_quadratic(const GroupElement& a, const GroupElement& b, double disc_tol) {
  const Vec4 x = embed(a).coords();
  const Vec4 y = embed(b).coords();
  const bool same = [&] {
    double plus = 0, minus = 0;
    for (int i = 0; i < 4; ++i) {
      plus = std::max(plus, std::abs(x[i] - y[i]));
      minus = std::max(minus, std::abs(x[i] + y[i]));
    }
    return std::min(plus, minus) < 1e-14;
  }();
  if (same) throw Error(ErrorCode::SamePoint, "the two points coincide in G");
  LineQuadratic q;
  q.qa = quad_form(y);
  q.qx = quad_form(x);
  q.bb = bilinear(x, y);
  q.disc = q.bb * q.bb - q.qa * q.qx;
  const double scale = q.bb * q.bb + std::abs(q.qa * q.qx);
  q.degenerate = std::abs(q.disc) <= disc_tol * scale;
  return q;
}

}  // namespace

ProjPoint ProjPoint::from_coords(std::array<double, 4> v) {
  double n = 0;
  for (double c : v) n += c * c;
  n = std::sqrt(n);
  if (!(n > 0)) throw Error(ErrorCode::InvalidArgument, "zero vector is not a projective point");
  double sign = 1;
  for (double c : v) {
    if (c != 0) {
      sign = c > 0 ? 1 : -1;
      break;
    }
  }
  ProjPoint p;
  for (int i = 0; i < 4; ++i) p.v_[i] = v[i] * sign / n;
  return p;
}

ProjPoint embed(const GroupElement& g) { return ProjPoint::from_coords({g.a(), g.b(), g.c(), g.d()}); }

bool on_boundary(const ProjPoint& p, double tol) { return std::abs(quad_form(p.coords())) < tol; }

Complex LorentzDistance::as_complex() const {
  switch (kind) {
    case Kind::Real: return {value, 0};
    case Kind::Imaginary: return {0, value};
    case Kind::Zero: return {0, 0};
  }
  return {};
}

const char* to_string(LorentzDistance::Kind k) noexcept {
  switch (k) {
    case LorentzDistance::Kind::Real: return "real";
    case LorentzDistance::Kind::Imaginary: return "imaginary";
    case LorentzDistance::Kind::Zero: return "zero";
  }
  return "unknown";
}

double imaginary_gap(double u, double v) {
  return std::min(canonical_imaginary(u - v), canonical_imaginary(u + v));
}

LorentzDistance delta_trace(const GroupElement& a, const GroupElement& b, double tol) {
  const double t = std::abs((a.inverse() * b).trace()) / 2.0;
  if (std::abs(t - 1.0) <= tol) return {LorentzDistance::Kind::Zero, 0.0};
  if (t > 1.0) return {LorentzDistance::Kind::Real, std::acosh(t)};
  return {LorentzDistance::Kind::Imaginary, std::acos(t)};
}

LorentzDistance delta_crossratio(const GroupElement& a, const GroupElement& b, double disc_tol) {
  const LineQuadratic q = line_quadratic(a, b, disc_tol);
  if (q.degenerate) return {LorentzDistance::Kind::Zero, 0.0};
  // a sits at s = 0 and b at s = infinity. With roots s1 (= a') and s2
  // (= b'), the projective map sending a' -> 0, a -> 1, b' -> infinity sends
  // b to s2 / s1, which is the cross-ratio [a' : a : b : b'].
  if (q.disc > 0) {
    const double r = std::sqrt(q.disc);
    // Roots of qa s^2 + 2 bb s + qx, computed without cancellation.
    const double k = -(q.bb + std::copysign(r, q.bb));
    const double s1 = k / q.qa;
    const double s2 = q.qx / k;
    double ratio = std::abs(s2 / s1);
    if (ratio < 1) ratio = 1 / ratio;  // the labelling with a', a, b, b' in order
    return {LorentzDistance::Kind::Real, 0.5 * std::log(ratio)};
  }
  // Conjugate roots: the cross-ratio s2/s1 = s2^2/|s2|^2 has unit modulus and
  // half its logarithm is i * arg(s2), defined modulo i*pi and sign.
  const Complex s2 = Complex(-q.bb, std::sqrt(-q.disc)) / q.qa;
  return {LorentzDistance::Kind::Imaginary, canonical_imaginary(std::arg(s2))};
}

const char* to_string(LineClass c) noexcept {
  switch (c) {
    case LineClass::Spacelike: return "spacelike";
    case LineClass::Timelike: return "timelike";
    case LineClass::Lightlike: return "lightlike";
  }
  return "unknown";
}

LineClass classify_line(const GroupElement& a, const GroupElement& b, double disc_tol) {
  const LineQuadratic q = line_quadratic(a, b, disc_tol);
  if (q.degenerate) return LineClass::Lightlike;
  return q.disc > 0 ? LineClass::Spacelike : LineClass::Timelike;
}

SubsetFlags subset_membership(const GroupElement& g, double tol) {
  SubsetFlags f;
  f.in_S = std::abs(g.b() - g.c()) <= tol;
  f.in_K = std::abs(g.a() - g.d()) <= tol && std::abs(g.b() + g.c()) <= tol;
  f.in_A = std::abs(g.b()) <= tol && std::abs(g.c()) <= tol;
  f.in_C = std::abs(std::abs(g.trace()) - 2.0) <= tol;
  f.in_T = std::abs(g.b()) <= tol && f.in_C;
  f.in_J = std::abs(g.trace()) <= tol;
  return f;
}

GroupElement s_chart(const HPoint& p) {
  const double d = hyp_dist(HPoint::basepoint(), p);
  if (d == 0) return GroupElement::identity();
  const TangentVector e = unit_toward(HPoint::basepoint(), p);
  return exp_alg(translation_generator(HPoint::basepoint(), e.v()) * d);
}

GroupElement j_swap(const GroupElement& g) {
  return GroupElement::from_entries(0, -1, 1, 0) * g;
}

RescaledLimit rescaled_limit(const AlgebraElement& x, const AlgebraElement& y, double t) {
  if (!(t > 0 && t <= 0.1)) throw Error(ErrorCode::InvalidArgument, "t must lie in (0, 0.1]");
  RescaledLimit r;
  r.t = t;
  const GroupElement gx = exp_alg(x * t), gy = exp_alg(y * t);
  if (gx.approx_equal(gy, 1e-15)) {
    r.scaled = {LorentzDistance::Kind::Zero, 0};
  } else {
    r.scaled = delta_trace(gx, gy);
    r.scaled.value /= t;
  }
  const double m = -(y - x).det();
  if (m > 0) {
    r.prediction = {LorentzDistance::Kind::Real, std::sqrt(m)};
  } else if (m < 0) {
    r.prediction = {LorentzDistance::Kind::Imaginary, std::sqrt(-m)};
  } else {
    r.prediction = {LorentzDistance::Kind::Zero, 0};
  }
  r.error = std::abs(r.scaled.as_complex() - r.prediction.as_complex());
  return r;
}

}  // namespace adsg
