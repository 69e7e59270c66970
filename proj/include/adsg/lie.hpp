#pragma once

// Numerics for PSL(2,R), its Lie algebra, the upper half-plane and Killing
// fields. Everything here is a value type; all functions are pure.

#include <array>
#include <complex>
#include <iosfwd>

namespace adsg {

using Complex = std::complex<double>;

/// Default absolute tolerance for projective comparisons.
inline constexpr double kDefaultTol = 1e-9;

/// Plain 2x2 real matrix, row-major. Used for intermediate products that are
/// not necessarily normalized.
struct Mat2 {
  double m00 = 1, m01 = 0, m10 = 0, m11 = 1;

  double det() const { return m00 * m11 - m01 * m10; }
  double trace() const { return m00 + m11; }
  Mat2 operator*(const Mat2& o) const {
    return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
            m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
  }
  Mat2 operator+(const Mat2& o) const {
    return {m00 + o.m00, m01 + o.m01, m10 + o.m10, m11 + o.m11};
  }
  Mat2 operator-(const Mat2& o) const {
    return {m00 - o.m00, m01 - o.m01, m10 - o.m10, m11 - o.m11};
  }
  Mat2 operator*(double s) const { return {m00 * s, m01 * s, m10 * s, m11 * s}; }
  /// Adjugate; equals the inverse when det = 1.
  Mat2 adjugate() const { return {m11, -m01, -m10, m00}; }
  double max_abs() const;
};

/// Element of G = PSL(2,R). Stored with det = 1 and the sign fixed by
/// tr > 0, or (tr = 0) c > 0, or (tr = 0, c = 0) b > 0.
class GroupElement {
 public:
  GroupElement() = default;  // identity

  /// Normalizes [[a,b],[c,d]]; throws InvalidArgument unless det > 0.
  static GroupElement from_entries(double a, double b, double c, double d);
  static GroupElement from_matrix(const Mat2& m);
  static GroupElement identity() { return {}; }
  static GroupElement diag(double lambda) { return from_entries(lambda, 0, 0, 1 / lambda); }

  double a() const { return m_.m00; }
  double b() const { return m_.m01; }
  double c() const { return m_.m10; }
  double d() const { return m_.m11; }
  const Mat2& matrix() const { return m_; }
  double trace() const { return m_.trace(); }

  GroupElement inverse() const;
  GroupElement operator*(const GroupElement& o) const;

  /// Projective comparison: matches g or -g entrywise within tol.
  bool approx_equal(const GroupElement& o, double tol = kDefaultTol) const;

 private:
  explicit GroupElement(const Mat2& normalized) : m_(normalized) {}
  Mat2 m_{};
};

/// Traceless matrix [[a, b], [c, -a]], doubling as a Killing field on H^2.
struct AlgebraElement {
  double a = 0, b = 0, c = 0;

  static AlgebraElement from_matrix(const Mat2& m);  // projects out the trace
  Mat2 matrix() const { return {a, b, c, -a}; }
  double det() const { return -a * a - b * c; }
  double norm() const;  // Euclidean norm of (a, b, c)

  AlgebraElement operator+(const AlgebraElement& o) const { return {a + o.a, b + o.b, c + o.c}; }
  AlgebraElement operator-(const AlgebraElement& o) const { return {a - o.a, b - o.b, c - o.c}; }
  AlgebraElement operator-() const { return {-a, -b, -c}; }
  AlgebraElement operator*(double s) const { return {a * s, b * s, c * s}; }
  AlgebraElement& operator+=(const AlgebraElement& o) {
    a += o.a; b += o.b; c += o.c;
    return *this;
  }
};

inline AlgebraElement operator*(double s, const AlgebraElement& x) { return x * s; }

/// Point of the upper half-plane.
class HPoint {
 public:
  HPoint() = default;  // basepoint i
  /// Throws InvalidArgument unless y > 0 and both coordinates are finite.
  HPoint(double x, double y);
  static HPoint basepoint() { return {}; }
  static HPoint from_complex(Complex z) { return {z.real(), z.imag()}; }

  double x() const { return x_; }
  double y() const { return y_; }
  Complex z() const { return {x_, y_}; }

 private:
  double x_ = 0, y_ = 1;
};

/// Tangent vector in half-plane chart coordinates.
struct TangentVector {
  HPoint base;
  double vx = 0, vy = 0;

  Complex v() const { return {vx, vy}; }
  static TangentVector make(const HPoint& p, Complex v) { return {p, v.real(), v.imag()}; }
};

enum class IsometryClass { Identity, Elliptic, Parabolic, Hyperbolic };

const char* to_string(IsometryClass c) noexcept;

// -- group action and metric ------------------------------------------------

HPoint moebius_apply(const GroupElement& g, const HPoint& z);
double hyp_dist(const HPoint& p, const HPoint& q);
IsometryClass classify(const GroupElement& g, double tol = 1e-10);
double translation_length(const GroupElement& g, double tol = 1e-10);
/// Displacement of the basepoint.
double mu(const GroupElement& g);

// -- exponential, logarithm, adjoint ----------------------------------------

GroupElement exp_alg(const AlgebraElement& x);
/// Principal logarithm; throws NoPrincipalLog for traceless g.
AlgebraElement log_grp(const GroupElement& g, double tol = 1e-12);
AlgebraElement adjoint(const GroupElement& g, const AlgebraElement& x);
TangentVector killing_eval(const AlgebraElement& x, const HPoint& p);

// -- Riemannian helpers on H^2 ----------------------------------------------

double hyp_inner(const HPoint& p, Complex v, Complex w);
double hyp_norm(const TangentVector& v);
/// Unit tangent at p pointing toward q (q != p).
TangentVector unit_toward(const HPoint& p, const HPoint& q);
/// Unit tangent at p pointing toward the ideal point x on the real line.
TangentVector unit_toward_ideal(const HPoint& p, double x);
/// Unit tangent at p pointing toward the ideal point at infinity.
TangentVector unit_toward_infinity(const HPoint& p);
HPoint exp_map(const TangentVector& v);
/// exp_map inverse: the tangent at p whose exponential is q.
TangentVector log_map(const HPoint& p, const HPoint& q);
/// Point at fraction t along the geodesic segment from p to q.
HPoint geodesic_lerp(const HPoint& p, const HPoint& q, double t);
/// Differential of the Moebius action.
TangentVector pushforward(const GroupElement& g, const TangentVector& v);

/// Isometry taking the basepoint to p and the upward unit vector to dir.
GroupElement frame_at(const HPoint& p, Complex dir);
/// Unit-speed translation along the geodesic through p with direction dir.
AlgebraElement translation_generator(const HPoint& p, Complex dir);
/// Unit-speed rotation vanishing at p.
AlgebraElement rotation_generator(const HPoint& p);
/// Killing field X with X(p) = v that vanishes nowhere else on the line
/// through p orthogonal to v; the fiber {X : X(p) = v} is this plus
/// multiples of rotation_generator(p).
AlgebraElement killing_with_value(const TangentVector& v);
/// Isometry with g(q) = p, chosen as frame_at(p) * frame_at(q)^{-1}.
GroupElement isometry_taking(const HPoint& q, const HPoint& p);

std::ostream& operator<<(std::ostream& os, const GroupElement& g);
std::ostream& operator<<(std::ostream& os, const HPoint& p);

}  // namespace adsg
