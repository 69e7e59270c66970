#pragma once

// Free-group words, representations into G, j-cocycles into the Lie algebra,
// the three group structures on G x G / Lie algebra x G, Schottky groups.

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "adsg/geodesic.hpp"
#include "adsg/lie.hpp"

namespace adsg {

/// Letters are +-(i+1) for generator i; stored freely reduced.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<int> letters);  // reduces

  /// Accepts "a B a a", "aBaa", "" or "1"; uppercase letters are inverses.
  static Word parse(const std::string& text);
  static Word generator(int index, bool inverse = false);

  const std::vector<int>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  /// Largest generator index used, or -1 for the empty word.
  int max_generator() const;

  Word inverse() const;
  Word operator*(const Word& o) const;
  Word power(int n) const;
  bool cyclically_reduced() const;

  /// Space separated: "a B a a"; the empty word prints as "".
  std::string to_string() const;
  bool operator==(const Word& o) const = default;

 private:
  std::vector<int> letters_;
};

/// All nonempty cyclically reduced words of length <= max_len, ordered by
/// length and then lexicographically with a < A < b < B < ...
std::vector<Word> cyclically_reduced_words(int rank, int max_len);
/// All reduced words (including the empty word) of length <= max_len, same order.
std::vector<Word> reduced_words(int rank, int max_len);

struct Representation {
  std::vector<GroupElement> generators;
  int rank() const { return static_cast<int>(generators.size()); }
};

/// Throws BadIndex if w uses a generator outside the representation.
GroupElement eval_rep(const Representation& rep, const Word& w);

struct Cocycle {
  Representation base;
  std::vector<AlgebraElement> values;
  int rank() const { return static_cast<int>(values.size()); }
};

AlgebraElement eval_cocycle(const Cocycle& u, const Word& w);
/// The coboundary gamma -> X - Ad(j(gamma)) X.
Cocycle coboundary(const Representation& j, const AlgebraElement& x);
Cocycle zero_cocycle(const Representation& j);
Cocycle operator+(const Cocycle& u, const Cocycle& v);
Cocycle operator*(double s, const Cocycle& u);

// -- the groups G_1, G_2 and G' ---------------------------------------------

struct GPair {
  GroupElement first, second;
};

/// G_2 product (alpha, a)(beta, b) = (alpha a beta a^-1, ab).
GPair semidirect_mul(const GPair& p, const GPair& q);
/// G_1 product (componentwise).
GPair product_mul(const GPair& p, const GPair& q);
/// (alpha, a) -> (alpha a, a), from G_2 to G_1.
GPair phi(const GPair& p);
/// (g, h) . x = g x h^-1
GroupElement act1(const GPair& p, const GroupElement& x);
/// (alpha, a) . x = alpha a x a^-1
GroupElement act2(const GPair& p, const GroupElement& x);

struct AffinePair {
  AlgebraElement translation;
  GroupElement linear;
};

/// (A, a)(B, b) = (A + Ad(a) B, ab).
AffinePair affine_mul(const AffinePair& p, const AffinePair& q);
/// (A, a) . x = A + Ad(a) x
AlgebraElement act_affine(const AffinePair& p, const AlgebraElement& x);
/// (u(w), j(w)) obtained by multiplying generator pairs in G'.
AffinePair eval_affine(const Cocycle& u, const Word& w);

// -- Schottky groups ----------------------------------------------------------

enum class SurfaceType { Pants, OneHoledTorus };
const char* to_string(SurfaceType s) noexcept;
SurfaceType surface_from_string(const std::string& s);

struct PingPongHalfPlane {
  Geodesic boundary;   // the half-plane lies on side `sign` of the boundary
  int sign = 1;
  int generator = 0;
  bool attracting = true;  // contains the attracting fixed point
};

struct PingPongCertificate {
  std::array<PingPongHalfPlane, 4> half_planes;
  double margin = 0;  // smallest angular gap between the ideal intervals
};

struct SchottkyGroup {
  SurfaceType surface = SurfaceType::Pants;
  std::vector<double> lengths;  // pants: a, b, ab; torus: a, b
  Representation j;
  PingPongCertificate certificate;
  /// Boundary curves of the quotient surface as words.
  std::vector<Word> boundary_words;

  /// True if p lies in none of the four open half-planes.
  bool in_fundamental_domain(const HPoint& p) const;
  /// Returns q in the fundamental domain and h with p = j(h) q.
  HPoint reduce(const HPoint& p, Word* h = nullptr) const;
};

/// Pants: lengths (a, b, ab) of the three boundary curves. Torus: lengths of
/// a and b, with perpendicular axes crossing at the basepoint.
/// Throws NotPingPong if the four-half-plane certificate fails.
SchottkyGroup schottky_fuchsian(SurfaceType surface, const std::vector<double>& lengths);

/// Certificate for an arbitrary rank-2 representation, centred at the feet
/// of the common perpendicular (or the crossing point) of the two axes.
PingPongCertificate ping_pong_certificate(const Representation& j);

// -- derivative cocycles --------------------------------------------------

using RepFamily = std::function<Representation(double)>;

/// u(gen) = d/dt log(rho_t(gen) j(gen)^-1) at t = 0: central differences at
/// steps h and h/2 combined by Richardson extrapolation. The family is
/// evaluated at +-h and +-h/2.
Cocycle derivative_cocycle(const RepFamily& family, double h = 1e-3);

}  // namespace adsg
