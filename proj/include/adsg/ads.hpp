#pragma once

// Projective quadric model of G inside RP^3 and its Lorentzian distance.

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "adsg/lie.hpp"

namespace adsg {

/// Homogeneous coordinates [a:b:c:d], unit Euclidean norm, first nonzero
/// coordinate positive.
class ProjPoint {
 public:
  static ProjPoint from_coords(std::array<double, 4> v);
  const std::array<double, 4>& coords() const { return v_; }

 private:
  std::array<double, 4> v_{};
};

ProjPoint embed(const GroupElement& g);
/// |ad - bc| < tol on the normalized coordinates.
bool on_boundary(const ProjPoint& p, double tol = 1e-10);

/// Lorentzian distance. Imaginary values are canonicalized to [0, pi/2]
/// (they are only defined modulo i*pi and sign).
struct LorentzDistance {
  enum class Kind { Real, Imaginary, Zero };
  Kind kind = Kind::Zero;
  double value = 0;

  /// Real values as x, imaginary ones as i*x.
  Complex as_complex() const;
};

const char* to_string(LorentzDistance::Kind k) noexcept;

/// Distance between two imaginary values taken modulo pi and sign.
double imaginary_gap(double u, double v);

LorentzDistance delta_trace(const GroupElement& a, const GroupElement& b, double tol = 1e-10);
/// Cross-ratio of a, b with the quadric intersections of the line through
/// them. Throws SamePoint when a = b.
LorentzDistance delta_crossratio(const GroupElement& a, const GroupElement& b,
                                 double disc_tol = 1e-10);

enum class LineClass { Spacelike, Timelike, Lightlike };
const char* to_string(LineClass c) noexcept;

LineClass classify_line(const GroupElement& a, const GroupElement& b, double disc_tol = 1e-10);

struct SubsetFlags {
  bool in_S = false;  // symmetric
  bool in_K = false;  // rotations about the basepoint
  bool in_A = false;  // diagonal
  bool in_C = false;  // parabolic cone (vertex at the identity)
  bool in_T = false;  // lower triangular unipotent (a line on the cone C)
  bool in_J = false;  // traceless (plane at infinity of the chart)
};

SubsetFlags subset_membership(const GroupElement& g, double tol = kDefaultTol);

/// The symmetric translation along the geodesic through the basepoint and p
/// taking the basepoint to p.
GroupElement s_chart(const HPoint& p);
/// Left multiplication by the quarter-turn [[0,-1],[1,0]]; swaps S and J.
GroupElement j_swap(const GroupElement& g);

struct RescaledLimit {
  double t = 0;
  LorentzDistance scaled;      // delta(exp tX, exp tY) / t
  LorentzDistance prediction;  // sqrt(-det(Y - X)), with its kind
  double error = 0;            // |scaled - prediction| as complex numbers
};

/// t must lie in (0, 0.1].
RescaledLimit rescaled_limit(const AlgebraElement& x, const AlgebraElement& y, double t);

// -- figure data ------------------------------------------------------------

struct FigurePoint {
  GroupElement g;
  std::array<double, 3> chart{};  // affine chart, or unit direction if at infinity
  IsometryClass cls = IsometryClass::Identity;
  SubsetFlags flags;
  bool at_infinity = false;
};

struct FigureData {
  std::vector<FigurePoint> points;
  std::vector<std::array<double, 3>> quadric;  // sampled boundary quadric
  std::vector<std::array<double, 3>> cone;     // sampled parabolic cone
};

/// Affine chart with the identity at the origin: (a-d)/2, (b+c)/2, (b-c)/2
/// divided by the half-trace. Returns false for traceless g.
bool chart_coords(const GroupElement& g, std::array<double, 3>& out);

/// Enumerates the projective classes of sign matrices (entries in {-1,0,1})
/// with positive determinant. `surface_samples` controls the resolution of
/// the sampled quadric and cone.
FigureData figure_data(int surface_samples = 24);

/// Column order: x,y,z,class,in_S,in_K,in_A,in_C,in_T,at_infinity
void write_figure_csv(std::ostream& os, const FigureData& data);
void write_surfaces_csv(std::ostream& os, const FigureData& data);
void write_figure_svg(std::ostream& os, const FigureData& data);

}  // namespace adsg
