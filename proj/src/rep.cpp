#include "adsg/rep.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>

#include "adsg/errors.hpp"

namespace adsg {

// -- Word -------------------------------------------------------------------

Word::Word(std::vector<int> letters) {
  for (int l : letters) {
    if (l == 0) throw Error(ErrorCode::InvalidArgument, "word letter 0 is not valid");
    if (!letters_.empty() && letters_.back() == -l) {
      letters_.pop_back();
    } else {
      letters_.push_back(l);
    }
  }
}

Word Word::parse(const std::string& text) {
  std::vector<int> letters;
  bool identity_token = false;
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    if (ch == '1') {
      identity_token = true;
      continue;
    }
    if (ch >= 'a' && ch <= 'z') {
      letters.push_back(ch - 'a' + 1);
    } else if (ch >= 'A' && ch <= 'Z') {
      letters.push_back(-(ch - 'A' + 1));
    } else {
      throw Error(ErrorCode::InvalidArgument, "invalid character in word: '" + text + "'");
    }
  }
  if (identity_token && !letters.empty()) {
    throw Error(ErrorCode::InvalidArgument, "'1' may only denote the empty word");
  }
  return Word(std::move(letters));
}

Word Word::generator(int index, bool inverse) {
  return Word({inverse ? -(index + 1) : index + 1});
}

int Word::max_generator() const {
  int m = -1;
  for (int l : letters_) m = std::max(m, std::abs(l) - 1);
  return m;
}

Word Word::inverse() const {
  std::vector<int> out(letters_.rbegin(), letters_.rend());
  for (int& l : out) l = -l;
  return Word(std::move(out));
}

Word Word::operator*(const Word& o) const {
  std::vector<int> all = letters_;
  all.insert(all.end(), o.letters_.begin(), o.letters_.end());
  return Word(std::move(all));
}

Word Word::power(int n) const {
  Word base = n >= 0 ? *this : inverse();
  Word out;
  for (int i = 0; i < std::abs(n); ++i) out = out * base;
  return out;
}

bool Word::cyclically_reduced() const {
  return letters_.size() <= 1 || letters_.front() != -letters_.back();
}

std::string Word::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) s += ' ';
    const int l = letters_[i];
    s += static_cast<char>(l > 0 ? 'a' + l - 1 : 'A' - l - 1);
  }
  return s;
}

namespace {

// a < A < b < B < ...
std::vector<int> alphabet(int rank) {
  std::vector<int> out;
  for (int i = 1; i <= rank; ++i) {
    out.push_back(i);
    out.push_back(-i);
  }
  return out;
}

}  // namespace

std::vector<Word> reduced_words(int rank, int max_len) {
  std::vector<std::vector<int>> frontier{{}};
  std::vector<Word> out{Word()};
  const std::vector<int> abc = alphabet(rank);
  for (int len = 1; len <= max_len; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& w : frontier) {
      for (int l : abc) {
        if (!w.empty() && w.back() == -l) continue;
        auto v = w;
        v.push_back(l);
        next.push_back(v);
      }
    }
    for (const auto& w : next) out.emplace_back(w);
    frontier = std::move(next);
  }
  return out;
}

std::vector<Word> cyclically_reduced_words(int rank, int max_len) {
  std::vector<Word> out;
  for (Word& w : reduced_words(rank, max_len)) {
    if (!w.empty() && w.cyclically_reduced()) out.push_back(std::move(w));
  }
  return out;
}

// -- evaluation -------------------------------------------------------------

namespace {

void check_word(const Word& w, int rank) {
  if (w.max_generator() >= rank) {
    std::ostringstream os;
    os << "word '" << w.to_string() << "' uses a generator beyond rank " << rank;
    throw Error(ErrorCode::BadIndex, os.str());
  }
}

}  // namespace

GroupElement eval_rep(const Representation& rep, const Word& w) {
  check_word(w, rep.rank());
  Mat2 m{};
  for (int l : w.letters()) {
    const GroupElement& g = rep.generators[std::abs(l) - 1];
    m = m * (l > 0 ? g.matrix() : g.matrix().adjugate());
  }
  return GroupElement::from_matrix(m);
}

AlgebraElement eval_cocycle(const Cocycle& u, const Word& w) {
  return eval_affine(u, w).translation;
}

AffinePair eval_affine(const Cocycle& u, const Word& w) {
  if (u.base.rank() != u.rank()) {
    throw Error(ErrorCode::InvalidArgument, "cocycle rank differs from its base representation");
  }
  check_word(w, u.rank());
  AffinePair acc{{}, GroupElement::identity()};
  for (int l : w.letters()) {
    const int i = std::abs(l) - 1;
    const GroupElement& g = u.base.generators[i];
    AffinePair gen{u.values[i], g};
    if (l < 0) {
      const GroupElement gi = g.inverse();
      gen = {-adjoint(gi, u.values[i]), gi};
    }
    acc = affine_mul(acc, gen);
  }
  return acc;
}

Cocycle coboundary(const Representation& j, const AlgebraElement& x) {
  Cocycle u{j, {}};
  for (const GroupElement& g : j.generators) u.values.push_back(x - adjoint(g, x));
  return u;
}

Cocycle zero_cocycle(const Representation& j) {
  return {j, std::vector<AlgebraElement>(j.generators.size())};
}

Cocycle operator+(const Cocycle& u, const Cocycle& v) {
  if (u.rank() != v.rank()) throw Error(ErrorCode::InvalidArgument, "cocycle ranks differ");
  Cocycle out = u;
  for (int i = 0; i < u.rank(); ++i) out.values[i] += v.values[i];
  return out;
}

Cocycle operator*(double s, const Cocycle& u) {
  Cocycle out = u;
  for (auto& x : out.values) x = x * s;
  return out;
}

// -- group structures -------------------------------------------------------

GPair semidirect_mul(const GPair& p, const GPair& q) {
  return {p.first * p.second * q.first * p.second.inverse(), p.second * q.second};
}

GPair product_mul(const GPair& p, const GPair& q) {
  return {p.first * q.first, p.second * q.second};
}

GPair phi(const GPair& p) { return {p.first * p.second, p.second}; }

GroupElement act1(const GPair& p, const GroupElement& x) {
  return p.first * x * p.second.inverse();
}

GroupElement act2(const GPair& p, const GroupElement& x) {
  return p.first * p.second * x * p.second.inverse();
}

AffinePair affine_mul(const AffinePair& p, const AffinePair& q) {
  return {p.translation + adjoint(p.linear, q.translation), p.linear * q.linear};
}

AlgebraElement act_affine(const AffinePair& p, const AlgebraElement& x) {
  return p.translation + adjoint(p.linear, x);
}

// -- Schottky groups ----------------------------------------------------------

const char* to_string(SurfaceType s) noexcept {
  return s == SurfaceType::Pants ? "pants" : "torus";
}

SurfaceType surface_from_string(const std::string& s) {
  if (s == "pants") return SurfaceType::Pants;
  if (s == "torus" || s == "one-holed-torus") return SurfaceType::OneHoledTorus;
  throw Error(ErrorCode::InvalidArgument, "unknown surface '" + s + "' (expected pants or torus)");
}

namespace {

bool in_half_plane(const PingPongHalfPlane& h, const HPoint& p) {
  return side(h.boundary, p) == h.sign;
}

// Ideal arc of a half-plane: counterclockwise start angle and length.
struct CircleArc {
  double start = 0, length = 0;
};

double wrap(double a) {
  const double two_pi = 2 * std::numbers::pi;
  a = std::fmod(a, two_pi);
  return a < 0 ? a + two_pi : a;
}

CircleArc ideal_arc(const Geodesic& boundary, const Ideal& inside) {
  const double t1 = ideal_angle(boundary.from), t2 = ideal_angle(boundary.to);
  const double ti = ideal_angle(inside);
  const double len12 = wrap(t2 - t1);
  if (wrap(ti - t1) < len12) return {wrap(t1), len12};
  return {wrap(t2), wrap(t1 - t2)};
}

}  // namespace

PingPongCertificate ping_pong_certificate(const Representation& j) {
  if (j.rank() != 2) throw Error(ErrorCode::InvalidArgument, "ping-pong certificate needs rank 2");
  std::array<Geodesic, 2> axes;
  for (int i = 0; i < 2; ++i) {
    try {
      axes[i] = axis(j.generators[i]);
    } catch (const Error&) {
      throw Error(ErrorCode::NotPingPong, "a generator is not hyperbolic");
    }
  }
  std::array<HPoint, 2> centers;
  if (crosses(axes[0], axes[1])) {
    // Intersection point: project along the first axis in standard position.
    const GroupElement m = to_standard(axes[0]);
    const Ideal e1 = moebius_apply(m, axes[1].from), e2 = moebius_apply(m, axes[1].to);
    // The half-circle over [e1, e2] meets the imaginary axis at height
    // sqrt(-e1 e2).
    const double r = std::sqrt(-e1.x * e2.x);
    centers[0] = centers[1] = moebius_apply(m.inverse(), HPoint(0, r));
  } else {
    const Ideal f0 = axes[0].from, t0 = axes[0].to;
    const Ideal f1 = axes[1].from, t1 = axes[1].to;
    if (f0 == f1 || f0 == t1 || t0 == f1 || t0 == t1) {
      throw Error(ErrorCode::NotPingPong, "generator axes share an endpoint");
    }
    const CommonPerpendicular cp = common_perpendicular(axes[0], axes[1]);
    centers[0] = cp.foot1;
    centers[1] = cp.foot2;
  }
  PingPongCertificate cert;
  std::array<CircleArc, 4> arcs;
  for (int i = 0; i < 2; ++i) {
    const double len = translation_length(j.generators[i]);
    for (int s = 0; s < 2; ++s) {
      const bool attracting = s == 0;
      const Ideal target = attracting ? axes[i].to : axes[i].from;
      const TangentVector e = unit_toward(centers[i], target);
      const HPoint q = exp_map({centers[i], e.vx * len / 2, e.vy * len / 2});
      const TangentVector along = unit_toward(q, target);
      const Geodesic boundary = geodesic_through(q, Complex(0, 1) * along.v());
      PingPongHalfPlane& h = cert.half_planes[2 * i + s];
      h.boundary = boundary;
      h.sign = side(boundary, target);
      h.generator = i;
      h.attracting = attracting;
      arcs[2 * i + s] = ideal_arc(boundary, target);
    }
  }
  std::sort(arcs.begin(), arcs.end(), [](const CircleArc& x, const CircleArc& y) {
    return x.start < y.start;
  });
  double margin = 2 * std::numbers::pi;
  for (int k = 0; k < 4; ++k) {
    const CircleArc& cur = arcs[k];
    const CircleArc& nxt = arcs[(k + 1) % 4];
    double gap = nxt.start - (cur.start + cur.length);
    if (k == 3) gap += 2 * std::numbers::pi;
    margin = std::min(margin, gap);
  }
  cert.margin = margin;
  return cert;
}

SchottkyGroup schottky_fuchsian(SurfaceType surface, const std::vector<double>& lengths) {
  SchottkyGroup s;
  s.surface = surface;
  s.lengths = lengths;
  for (double l : lengths) {
    if (!(l > 0) || !std::isfinite(l)) {
      throw Error(ErrorCode::InvalidArgument, "boundary lengths must be positive");
    }
  }
  const Word a = Word::generator(0), b = Word::generator(1);
  if (surface == SurfaceType::Pants) {
    if (lengths.size() != 3) throw Error(ErrorCode::InvalidArgument, "pants need 3 lengths");
    const double lam = std::exp(lengths[0] / 2);
    const double tb = 2 * std::cosh(lengths[1] / 2);
    const double tc = -2 * std::cosh(lengths[2] / 2);
    const double p = (tc - tb / lam) / (lam - 1 / lam);
    const double q0 = tb - p;
    const double r2 = 1 - p * q0;
    if (!(r2 > 0)) throw Error(ErrorCode::NotPingPong, "lengths do not define a pair of pants");
    const double r = std::sqrt(r2);
    s.j.generators = {GroupElement::diag(lam), GroupElement::from_entries(p, -r, r, q0)};
    s.boundary_words = {a, b, a * b};
  } else {
    if (lengths.size() != 2) throw Error(ErrorCode::InvalidArgument, "torus needs 2 lengths");
    const double m = lengths[1] / 2;
    s.j.generators = {GroupElement::diag(std::exp(lengths[0] / 2)),
                      GroupElement::from_entries(std::cosh(m), std::sinh(m), std::sinh(m),
                                                 std::cosh(m))};
    s.boundary_words = {a * b * a.inverse() * b.inverse()};
  }
  s.certificate = ping_pong_certificate(s.j);
  if (!(s.certificate.margin > 0)) {
    std::ostringstream os;
    os << "ping-pong half-planes overlap (margin " << s.certificate.margin << ")";
    throw Error(ErrorCode::NotPingPong, os.str());
  }
  return s;
}

bool SchottkyGroup::in_fundamental_domain(const HPoint& p) const {
  for (const auto& h : certificate.half_planes) {
    if (in_half_plane(h, p)) return false;
  }
  return true;
}

HPoint SchottkyGroup::reduce(const HPoint& p, Word* h) const {
  HPoint q = p;
  std::vector<int> letters;
  for (int it = 0; it < 10000; ++it) {
    bool moved = false;
    for (const auto& hp : certificate.half_planes) {
      if (!in_half_plane(hp, q)) continue;
      const GroupElement& g = j.generators[hp.generator];
      // The attracting half-plane is g(outside of the repelling one).
      if (hp.attracting) {
        q = moebius_apply(g.inverse(), q);
        letters.push_back(hp.generator + 1);
      } else {
        q = moebius_apply(g, q);
        letters.push_back(-(hp.generator + 1));
      }
      moved = true;
      break;
    }
    if (!moved) {
      if (h) *h = Word(std::move(letters));
      return q;
    }
  }
  throw Error(ErrorCode::MaxIterations, "fundamental-domain reduction did not terminate");
}

// -- derivative cocycles --------------------------------------------------

Cocycle derivative_cocycle(const RepFamily& family, double h) {
  const Representation j = family(0.0);
  const auto central = [&](double step) {
    const Representation plus = family(step), minus = family(-step);
    std::vector<AlgebraElement> out;
    for (int i = 0; i < j.rank(); ++i) {
      const GroupElement ji = j.generators[i].inverse();
      const AlgebraElement lp = log_grp(plus.generators[i] * ji);
      const AlgebraElement lm = log_grp(minus.generators[i] * ji);
      out.push_back((lp - lm) * (1.0 / (2 * step)));
    }
    return out;
  };
  const auto coarse = central(h), fine = central(h / 2);
  Cocycle u{j, {}};
  for (int i = 0; i < j.rank(); ++i) u.values.push_back((fine[i] * 4.0 - coarse[i]) * (1.0 / 3));
  return u;
}

}  // namespace adsg
