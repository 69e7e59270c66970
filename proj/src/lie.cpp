#include "adsg/lie.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "adsg/errors.hpp"

namespace adsg {

namespace {

constexpr Complex kI{0.0, 1.0};

// cosh(s) and sinh(s)/s as functions of s^2, continued to s^2 < 0.
void exp_coefficients(double s2, double& c, double& s) {
  if (std::abs(s2) < 1e-8) {
    c = 1 + s2 / 2 + s2 * s2 / 24 + s2 * s2 * s2 / 720;
    s = 1 + s2 / 6 + s2 * s2 / 120 + s2 * s2 * s2 / 5040;
  } else if (s2 > 0) {
    const double r = std::sqrt(s2);
    c = std::cosh(r);
    s = std::sinh(r) / r;
  } else {
    const double r = std::sqrt(-s2);
    c = std::cos(r);
    s = std::sin(r) / r;
  }
}

}  // namespace

double Mat2::max_abs() const {
  return std::max({std::abs(m00), std::abs(m01), std::abs(m10), std::abs(m11)});
}

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::BadIndex: return "BadIndex";
    case ErrorCode::NoPrincipalLog: return "NoPrincipalLog";
    case ErrorCode::SamePoint: return "SamePoint";
    case ErrorCode::NotPingPong: return "NotPingPong";
    case ErrorCode::NoContraction: return "NoContraction";
    case ErrorCode::MaxIterations: return "MaxIterations";
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::NonHyperbolicBase: return "NonHyperbolicBase";
    case ErrorCode::StripsOverlap: return "StripsOverlap";
    case ErrorCode::NotFilling: return "NotFilling";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::NoPositiveSolution: return "NoPositiveSolution";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

// -- GroupElement -----------------------------------------------------------

GroupElement GroupElement::from_matrix(const Mat2& m) {
  const double det = m.det();
  if (!(det > 0) || !std::isfinite(det)) {
    std::ostringstream os;
    os << "matrix does not have positive determinant (det = " << det << ")";
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
  Mat2 n = m * (1.0 / std::sqrt(det));
  const double tr = n.trace();
  const double tie = 1e-13 * std::max(1.0, n.max_abs());
  bool flip = false;
  if (std::abs(tr) > tie) {
    flip = tr < 0;
  } else if (n.m10 != 0) {
    flip = n.m10 < 0;
  } else {
    flip = n.m01 < 0;
  }
  if (flip) n = n * -1.0;
  return GroupElement(n);
}

GroupElement GroupElement::from_entries(double a, double b, double c, double d) {
  return from_matrix({a, b, c, d});
}

GroupElement GroupElement::inverse() const { return from_matrix(m_.adjugate()); }

GroupElement GroupElement::operator*(const GroupElement& o) const {
  return from_matrix(m_ * o.m_);
}

bool GroupElement::approx_equal(const GroupElement& o, double tol) const {
  return (m_ - o.m_).max_abs() <= tol || (m_ + o.m_).max_abs() <= tol;
}

// -- AlgebraElement ---------------------------------------------------------

AlgebraElement AlgebraElement::from_matrix(const Mat2& m) {
  return {(m.m00 - m.m11) / 2, m.m01, m.m10};
}

double AlgebraElement::norm() const { return std::sqrt(a * a + b * b + c * c); }

// -- HPoint -----------------------------------------------------------------

HPoint::HPoint(double x, double y) : x_(x), y_(y) {
  if (!(y > 0) || !std::isfinite(x) || !std::isfinite(y)) {
    std::ostringstream os;
    os << "point (" << x << ", " << y << ") is not in the upper half-plane";
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
}

const char* to_string(IsometryClass c) noexcept {
  switch (c) {
    case IsometryClass::Identity: return "identity";
    case IsometryClass::Elliptic: return "elliptic";
    case IsometryClass::Parabolic: return "parabolic";
    case IsometryClass::Hyperbolic: return "hyperbolic";
  }
  return "unknown";
}

// -- action and metric ------------------------------------------------------

HPoint moebius_apply(const GroupElement& g, const HPoint& p) {
  const Complex z = p.z();
  const Complex w = (g.a() * z + g.b()) / (g.c() * z + g.d());
  // Im w = y / |cz + d|^2 > 0; recompute it that way to avoid cancellation.
  const double den = std::norm(g.c() * z + g.d());
  return {w.real(), p.y() / den};
}

double hyp_dist(const HPoint& p, const HPoint& q) {
  const double e = std::abs(p.z() - q.z());
  return 2.0 * std::asinh(e / (2.0 * std::sqrt(p.y() * q.y())));
}

IsometryClass classify(const GroupElement& g, double tol) {
  if (g.approx_equal(GroupElement::identity(), tol)) return IsometryClass::Identity;
  const double t = std::abs(g.trace());
  if (std::abs(t - 2.0) <= tol) return IsometryClass::Parabolic;
  return t < 2.0 ? IsometryClass::Elliptic : IsometryClass::Hyperbolic;
}

double translation_length(const GroupElement& g, double tol) {
  if (classify(g, tol) != IsometryClass::Hyperbolic) return 0.0;
  return 2.0 * std::acosh(std::abs(g.trace()) / 2.0);
}

double mu(const GroupElement& g) {
  return hyp_dist(HPoint::basepoint(), moebius_apply(g, HPoint::basepoint()));
}

// -- exp / log / Ad ---------------------------------------------------------

GroupElement exp_alg(const AlgebraElement& x) {
  double c = 0, s = 0;
  exp_coefficients(x.a * x.a + x.b * x.c, c, s);
  const Mat2 m{c + s * x.a, s * x.b, s * x.c, c - s * x.a};
  return GroupElement::from_matrix(m);
}

AlgebraElement log_grp(const GroupElement& g, double tol) {
  const double t = g.trace() / 2.0;  // >= 0 by normalization
  if (t <= tol) {
    throw Error(ErrorCode::NoPrincipalLog,
                "rotation by pi has no principal logarithm (trace 0)");
  }
  const AlgebraElement k{(g.a() - g.d()) / 2, g.b(), g.c()};
  const double e = t - 1.0;
  double factor = 0;
  if (std::abs(e) < 1e-6) {
    factor = 1 - e / 3 + 2 * e * e / 15;
  } else if (t > 1) {
    const double s = std::acosh(t);
    factor = s / std::sinh(s);
  } else {
    const double w = std::acos(t);
    factor = w / std::sin(w);
  }
  return k * factor;
}

AlgebraElement adjoint(const GroupElement& g, const AlgebraElement& x) {
  const Mat2& m = g.matrix();
  return AlgebraElement::from_matrix(m * x.matrix() * m.adjugate());
}

TangentVector killing_eval(const AlgebraElement& x, const HPoint& p) {
  const Complex z = p.z();
  return TangentVector::make(p, -x.c * z * z + 2.0 * x.a * z + x.b);
}

// -- Riemannian helpers -----------------------------------------------------

double hyp_inner(const HPoint& p, Complex v, Complex w) {
  return (v.real() * w.real() + v.imag() * w.imag()) / (p.y() * p.y());
}

double hyp_norm(const TangentVector& v) { return std::abs(v.v()) / v.base.y(); }

namespace {

// Cayley map centred at p: phi(z) = (z - p)/(z - conj p) sends p to 0 and
// geodesics through p to diameters.
TangentVector unit_from_phi(const HPoint& p, Complex phi) {
  const double r = std::abs(phi);
  if (r == 0) {
    throw Error(ErrorCode::CoincidentPoints, "direction undefined for coincident points");
  }
  return TangentVector::make(p, kI * p.y() * phi / r);
}

}  // namespace

TangentVector unit_toward(const HPoint& p, const HPoint& q) {
  const Complex zp = p.z(), zq = q.z();
  return unit_from_phi(p, (zq - zp) / (zq - std::conj(zp)));
}

TangentVector unit_toward_ideal(const HPoint& p, double x) {
  const Complex zp = p.z();
  return unit_from_phi(p, (Complex(x, 0) - zp) / (Complex(x, 0) - std::conj(zp)));
}

TangentVector unit_toward_infinity(const HPoint& p) { return TangentVector::make(p, kI * p.y()); }

HPoint exp_map(const TangentVector& v) {
  const double speed = std::abs(v.v());
  if (speed == 0) return v.base;
  const double len = speed / v.base.y();
  const Complex u = -kI * v.v() / speed;
  const Complex w = std::tanh(len / 2) * u;
  const Complex zp = v.base.z();
  const Complex z = (zp - w * std::conj(zp)) / (1.0 - w);
  // Imaginary part: y (1 - |w|^2) / |1 - w|^2, exact positive form.
  const double y = v.base.y() * (1.0 - std::norm(w)) / std::norm(1.0 - w);
  return {z.real(), y};
}

TangentVector log_map(const HPoint& p, const HPoint& q) {
  const double d = hyp_dist(p, q);
  if (d == 0) return {p, 0, 0};
  TangentVector e = unit_toward(p, q);
  e.vx *= d;
  e.vy *= d;
  return e;
}

HPoint geodesic_lerp(const HPoint& p, const HPoint& q, double t) {
  TangentVector v = log_map(p, q);
  v.vx *= t;
  v.vy *= t;
  return exp_map(v);
}

TangentVector pushforward(const GroupElement& g, const TangentVector& v) {
  const Complex den = g.c() * v.base.z() + g.d();
  return TangentVector::make(moebius_apply(g, v.base), v.v() / (den * den));
}

GroupElement frame_at(const HPoint& p, Complex dir) {
  const double sy = std::sqrt(p.y());
  const Mat2 shift{sy, p.x() / sy, 0, 1 / sy};
  const double theta = std::arg(-kI * dir);
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  const Mat2 rot{c, s, -s, c};
  return GroupElement::from_matrix(shift * rot);
}

AlgebraElement translation_generator(const HPoint& p, Complex dir) {
  return adjoint(frame_at(p, dir), AlgebraElement{0.5, 0, 0});
}

AlgebraElement rotation_generator(const HPoint& p) {
  return adjoint(frame_at(p, kI), AlgebraElement{0, -0.5, 0.5});
}

AlgebraElement killing_with_value(const TangentVector& v) {
  const double n = hyp_norm(v);
  if (n == 0) return {};
  return translation_generator(v.base, v.v()) * n;
}

GroupElement isometry_taking(const HPoint& q, const HPoint& p) {
  return frame_at(p, kI) * frame_at(q, kI).inverse();
}

std::ostream& operator<<(std::ostream& os, const GroupElement& g) {
  return os << "[[" << g.a() << ", " << g.b() << "], [" << g.c() << ", " << g.d() << "]]";
}

std::ostream& operator<<(std::ostream& os, const HPoint& p) {
  return os << "(" << p.x() << ", " << p.y() << ")";
}

}  // namespace adsg
