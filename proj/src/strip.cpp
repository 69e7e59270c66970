#include "adsg/strip.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "adsg/errors.hpp"

namespace adsg {

namespace {

// Unit normal at the waist pointing to side +1 of geo.
Complex plus_normal(const Geodesic& geo, const HPoint& waist) {
  const TangentVector t = unit_toward(waist, geo.to);
  Complex n = Complex(0, 1) * t.v();
  const HPoint probe = exp_map(TangentVector::make(waist, n * 1e-3));
  if (side(geo, probe) < 0) n = -n;
  return n;
}

const Geodesic kUnitCircle{{-1, false}, {1, false}};

}  // namespace

StripModel::StripModel(const ArcComplex& cx, WeightedArcSystem system, int lift_word_length)
    : cx_(cx), system_(std::move(system)) {
  if (system_.arcs.size() != system_.weights.size()) {
    throw Error(ErrorCode::InvalidArgument, "arcs and weights differ in length");
  }
  for (const Word& h : reduced_words(cx_.group.j.rank(), lift_word_length)) {
    const GroupElement jh = eval_rep(cx_.group.j, h);
    for (std::size_t i = 0; i < system_.arcs.size(); ++i) {
      const Arc& arc = cx_.arcs[system_.arcs[i]];
      ArcLift l;
      l.arc = system_.arcs[i];
      l.weight = system_.weights[i];
      l.h = h;
      l.geodesic = moebius_apply(jh, arc.geodesic);
      l.standard = to_standard(l.geodesic);
      l.waist = moebius_apply(jh, arc.waist);
      const Complex n = plus_normal(l.geodesic, l.waist);
      l.toward_plus = translation_generator(l.waist, n);
      l.leaf_chart = frame_at(l.waist, n).inverse();
      lifts_.push_back(std::move(l));
    }
  }
}

std::vector<Crossing> StripModel::crossings(const HPoint& p, const HPoint& q) const {
  std::vector<Crossing> out;
  for (std::size_t i = 0; i < lifts_.size(); ++i) {
    const int sp = cached_side(lifts_[i].standard, p);
    const int sq = cached_side(lifts_[i].standard, q);
    if (sp == 0 || sq == 0 || sp == sq) continue;
    out.push_back({static_cast<int>(i), sp, segment_crossing(lifts_[i].geodesic, p, q)});
  }
  std::sort(out.begin(), out.end(),
            [](const Crossing& a, const Crossing& b) { return a.param < b.param; });
  return out;
}

AlgebraElement StripModel::infinitesimal_path(const HPoint& p, const HPoint& q) const {
  AlgebraElement z;
  for (const Crossing& c : crossings(p, q)) {
    const ArcLift& l = lifts_[c.lift];
    z += l.toward_plus * (l.weight * c.from_side);
  }
  return z;
}

GroupElement StripModel::macro_path(const HPoint& p, const HPoint& q, double scale) const {
  GroupElement g;
  for (const Crossing& c : crossings(p, q)) {
    const ArcLift& l = lifts_[c.lift];
    g = g * exp_alg(l.toward_plus * (scale * l.weight * c.from_side));
  }
  return g;
}

double StripModel::leaf_coordinate(int lift, const HPoint& p) const {
  return std::log(std::abs(moebius_apply(lifts_[lift].leaf_chart, p).z()));
}

std::vector<StripData> StripModel::strip_data(double scale) const {
  std::vector<StripData> out;
  for (const ArcLift& l : lifts_) {
    if (!l.h.empty()) continue;
    StripData s;
    s.arc = l.arc;
    s.width = scale * l.weight;
    s.alpha = l.geodesic;
    const GroupElement shift = exp_alg(l.toward_plus * s.width);
    s.alpha_prime = moebius_apply(shift, l.geodesic);
    s.p = l.waist;
    s.p_prime = moebius_apply(shift, l.waist);
    out.push_back(s);
  }
  return out;
}

void StripModel::check_strips(double scale) const {
  if (!(scale >= 0) || !std::isfinite(scale)) {
    throw Error(ErrorCode::InvalidArgument, "strip scale must be nonnegative");
  }
  struct Strip {
    int lift;
    double width;
    Geodesic a, a2;
    HPoint p, p2, mid;
  };
  const auto make = [&](int i) {
    const ArcLift& l = lifts_[i];
    const double w = scale * l.weight;
    // Beyond this the far leaf is not representable in double precision.
    if (w > 30) {
      throw Error(ErrorCode::InvalidArgument,
                  "strip of arc " + cx_.arcs[l.arc].name + " is too wide to resolve");
    }
    const GroupElement back = l.leaf_chart.inverse();
    const GroupElement shift = back * GroupElement::diag(std::exp(w / 2));
    return Strip{i,
                 w,
                 l.geodesic,
                 moebius_apply(shift, kUnitCircle),
                 l.waist,
                 moebius_apply(back, HPoint(0, std::exp(w))),
                 moebius_apply(back, HPoint(0, std::exp(w / 2)))};
  };
  const auto inside = [&](const Strip& s, const HPoint& x) {
    const double sigma = leaf_coordinate(s.lift, x);
    return sigma > 1e-12 && sigma < s.width - 1e-12;
  };
  std::vector<Strip> all;
  for (std::size_t i = 0; i < lifts_.size(); ++i) {
    if (lifts_[i].weight > 0) all.push_back(make(static_cast<int>(i)));
  }
  for (const Strip& s : all) {
    if (!lifts_[s.lift].h.empty()) continue;
    for (const HPoint& x : {basepoint()}) {
      if (inside(s, x)) {
        throw Error(ErrorCode::StripsOverlap,
                    "strip of arc " + cx_.arcs[lifts_[s.lift].arc].name + " contains the basepoint");
      }
    }
    for (const Strip& t : all) {
      if (t.lift == s.lift) continue;
      bool meet = crosses(s.a, t.a) || crosses(s.a, t.a2) || crosses(s.a2, t.a) ||
                  crosses(s.a2, t.a2);
      for (const HPoint& x : {t.p, t.p2, t.mid}) meet = meet || inside(s, x);
      for (const HPoint& x : {s.p, s.p2, s.mid}) meet = meet || inside(t, x);
      if (meet) {
        std::ostringstream os;
        os << "strips of arcs " << cx_.arcs[lifts_[s.lift].arc].name << " and "
           << cx_.arcs[lifts_[t.lift].arc].name << " (lift " << lifts_[t.lift].h.to_string()
           << ") overlap at scale " << scale;
        throw Error(ErrorCode::StripsOverlap, os.str());
      }
    }
  }
}

Cocycle strip_cocycle(const StripModel& m) {
  Cocycle u{m.group().j, {}};
  const HPoint x0 = m.basepoint();
  for (const GroupElement& g : m.group().j.generators) {
    u.values.push_back(m.infinitesimal_path(x0, moebius_apply(g, x0)));
  }
  return u;
}

Representation macro_strip(const StripModel& m, double scale) {
  m.check_strips(scale);
  Representation rho;
  const HPoint x0 = m.basepoint();
  for (const GroupElement& g : m.group().j.generators) {
    rho.generators.push_back(m.macro_path(x0, moebius_apply(g, x0), scale) * g);
  }
  return rho;
}

// -- strip collapse and the piecewise Killing field ---------------------------------

namespace {

class StripCollapseMap final : public EquivariantMap {
 public:
  StripCollapseMap(const StripModel& m, double scale, Representation rho)
      : EquivariantMap(m.group().j, std::move(rho), 1.0), m_(m), scale_(scale) {}

  HPoint operator()(const HPoint& p) const override {
    Word h;
    const HPoint q = m_.group().reduce(p, &h);
    const auto& lifts = m_.lifts();
    for (std::size_t i = 0; i < lifts.size(); ++i) {
      const double w = scale_ * lifts[i].weight;
      if (w <= 0) continue;
      const double sigma = m_.leaf_coordinate(static_cast<int>(i), q);
      if (sigma > -1e-12 && sigma < w) {
        // Inside the strip: slide the leaf onto the far boundary leaf, where
        // the side test used by macro_path is unambiguous.
        const GroupElement slide = exp_alg(lifts[i].toward_plus * (w - sigma));
        const HPoint far = moebius_apply(slide, q);
        return moebius_apply(eval_rep(target(), h) * m_.macro_path(m_.basepoint(), far, scale_), far);
      }
    }
    return moebius_apply(eval_rep(target(), h) * m_.macro_path(m_.basepoint(), q, scale_), q);
  }
  MapKind kind() const override { return MapKind::StripCollapse; }

 private:
  StripModel m_;
  double scale_;
};

class PiecewiseField final : public EquivariantField {
 public:
  explicit PiecewiseField(const StripModel& m) : EquivariantField(strip_cocycle(m), 0.0), m_(m) {}

  TangentVector operator()(const HPoint& p) const override {
    Word h;
    const HPoint q = m_.group().reduce(p, &h);
    const TangentVector yq = killing_eval(m_.infinitesimal_path(m_.basepoint(), q), q);
    const TangentVector moved = pushforward(eval_rep(cocycle().base, h), yq);
    const TangentVector extra = killing_eval(eval_cocycle(cocycle(), h), p);
    return {p, moved.vx + extra.vx, moved.vy + extra.vy};
  }
  FieldKind kind() const override { return FieldKind::PiecewiseKilling; }

 private:
  StripModel m_;
};

}  // namespace

MapPtr strip_collapse_map(const StripModel& m, double scale) {
  return std::make_shared<StripCollapseMap>(m, scale, macro_strip(m, scale));
}

FieldPtr piecewise_killing_field(const StripModel& m) {
  return std::make_shared<PiecewiseField>(m);
}

// -- relaxed map and field ------------------------------------------------------

namespace {

struct Hyperboloid {
  double t = 0, x = 0, y = 0;
};

Hyperboloid lift(const HPoint& p) {
  const double r2 = std::norm(p.z());
  return {(1 + r2) / (2 * p.y()), (r2 - 1) / (2 * p.y()), p.x() / p.y()};
}

HPoint drop(const Hyperboloid& h) {
  const double n = std::sqrt(h.t * h.t - h.x * h.x - h.y * h.y);
  const double t = h.t / n, x = h.x / n, y = h.y / n;
  const double im = 1 / (t - x);
  return {y * im, im};
}

double cosh_dist(const HPoint& p, const HPoint& q) {
  return 1 + std::norm(p.z() - q.z()) / (2 * p.y() * q.y());
}

std::vector<HPoint> grid_in_domain(const SchottkyGroup& g, int resolution) {
  std::vector<HPoint> out;
  for (int i = 0; i < resolution; ++i) {
    for (int k = 0; k < resolution; ++k) {
      const Complex w(-1.0 + 2.0 * (i + 0.5) / resolution, -1.0 + 2.0 * (k + 0.5) / resolution);
      if (std::abs(w) >= 0.98) continue;
      const Complex z = Complex(0, 1) * (1.0 + w) / (1.0 - w);
      const HPoint p(z.real(), z.imag());
      if (g.in_fundamental_domain(p)) out.push_back(p);
    }
  }
  return out;
}

// Kernel-weighted blend over the translates j(h) c_m of the region centres.
// The kernel is cut off smoothly at `radius`, which is below the distance
// from the evaluation region to the first omitted translate, so the blend
// is exactly equivariant.
class Blend {
 public:
  struct Cell {
    HPoint pos;
    GroupElement iso;
    AlgebraElement field;
  };

  Blend(const StripModel& m, double scale, const RelaxationOptions& o)
      : core_(m.group()), kappa_(o.kappa) {
    const SchottkyGroup& group = m.group();
    const HPoint x0 = m.basepoint();
    std::map<std::vector<int>, Hyperboloid> regions;
    for (const HPoint& p : core_.domain_samples(o.sample_resolution)) {
      std::vector<int> key;
      for (const Crossing& c : m.crossings(x0, p)) key.push_back(c.lift);
      std::sort(key.begin(), key.end());
      Hyperboloid& acc = regions[key];
      const Hyperboloid h = lift(p);
      acc.t += h.t;
      acc.x += h.x;
      acc.y += h.y;
    }
    std::vector<HPoint> centres;
    for (const auto& [key, acc] : regions) centres.push_back(drop(acc));
    centres_ = centres;

    const Cocycle u = strip_cocycle(m);
    Representation rho;
    for (const GroupElement& g : group.j.generators) {
      rho.generators.push_back(m.macro_path(x0, moebius_apply(g, x0), scale) * g);
    }
    rho_ = rho;

    // Evaluation points: projections of domain samples onto the core.
    std::vector<HPoint> eval_points;
    for (const HPoint& p : grid_in_domain(group, 40)) eval_points.push_back(project_domain(p));

    const auto words = reduced_words(group.j.rank(), o.cell_word_length);
    double shell = std::numeric_limits<double>::infinity();
    for (const Word& h : words) {
      const GroupElement jh = eval_rep(group.j, h), jhi = jh.inverse();
      const GroupElement rh = eval_rep(rho, h);
      const AlgebraElement uh = eval_cocycle(u, h);
      for (const HPoint& c : centres) {
        const GroupElement gm = m.macro_path(x0, c, scale);
        const AlgebraElement zm = m.infinitesimal_path(x0, c);
        const Cell cell{moebius_apply(jh, c), rh * gm * jhi, uh + adjoint(jh, zm)};
        if (static_cast<int>(h.size()) == o.cell_word_length) {
          for (const HPoint& e : eval_points) {
            shell = std::min(shell, std::acosh(cosh_dist(e, cell.pos)));
          }
        }
        cells_.push_back(cell);
      }
    }
    radius_ = std::min(shell - 1e-6, 9.0);
    double nearest = 0;
    for (const HPoint& e : eval_points) {
      double d = std::numeric_limits<double>::infinity();
      for (const Cell& c : cells_) d = std::min(d, std::acosh(cosh_dist(e, c.pos)));
      nearest = std::max(nearest, d);
    }
    if (!(nearest < radius_ - 1)) {
      std::ostringstream os;
      os << "relaxation kernel radius " << radius_ << " does not cover the core (nearest centre "
         << nearest << "); increase cell_word_length";
      throw Error(ErrorCode::InvalidArgument, os.str());
    }
    // Keep only cells that can reach the evaluation region.
    std::vector<Cell> kept;
    for (const Cell& c : cells_) {
      double d = std::numeric_limits<double>::infinity();
      for (const HPoint& e : eval_points) d = std::min(d, std::acosh(cosh_dist(e, c.pos)));
      if (d < radius_ + 2) kept.push_back(c);
    }
    cells_ = std::move(kept);
  }

  const ConvexCore& core() const { return core_; }
  const Representation& rho() const { return rho_; }
  double radius() const { return radius_; }
  const std::vector<HPoint>& centres() const { return centres_; }
  std::size_t cell_count() const { return cells_.size(); }

  // Core projection of a point of the fundamental domain.
  HPoint project_domain(const HPoint& q) const {
    const int f = core_.funnel_of(q);
    if (f < 0) return q;
    return project(core_.boundary_lifts()[f].geodesic, q);
  }

  double weight(const HPoint& x, const HPoint& c) const {
    const double ch = cosh_dist(x, c);
    const double d = std::acosh(ch);
    if (d >= radius_) return 0;
    double w = std::pow(ch, -kappa_);
    if (d > radius_ - 1) {
      const double s = d - (radius_ - 1);
      w *= 1 - s * s * s * (10 - 15 * s + 6 * s * s);
    }
    return w;
  }

  HPoint map(const HPoint& x) const {
    Hyperboloid acc;
    for (const Cell& c : cells_) {
      const double w = weight(x, c.pos);
      if (w == 0) continue;
      const Hyperboloid h = lift(moebius_apply(c.iso, x));
      acc.t += w * h.t;
      acc.x += w * h.x;
      acc.y += w * h.y;
    }
    return drop(acc);
  }

  AlgebraElement field(const HPoint& x) const {
    AlgebraElement z;
    double total = 0;
    for (const Cell& c : cells_) {
      const double w = weight(x, c.pos);
      if (w == 0) continue;
      z += c.field * w;
      total += w;
    }
    return z * (1 / total);
  }

 private:
  ConvexCore core_;
  double kappa_;
  double radius_ = 0;
  Representation rho_;
  std::vector<HPoint> centres_;
  std::vector<Cell> cells_;
};

class RelaxedMap final : public EquivariantMap {
 public:
  RelaxedMap(std::shared_ptr<const Blend> b, Representation j)
      : EquivariantMap(std::move(j), b->rho(), 1.0), b_(std::move(b)) {}

  HPoint operator()(const HPoint& p) const override {
    Word h;
    const HPoint q = b_->core().group().reduce(p, &h);
    return moebius_apply(eval_rep(target(), h), b_->map(b_->project_domain(q)));
  }
  MapKind kind() const override { return MapKind::Sampled; }

 private:
  std::shared_ptr<const Blend> b_;
};

class RelaxedField final : public EquivariantField {
 public:
  RelaxedField(std::shared_ptr<const Blend> b, Cocycle u, double gain)
      : EquivariantField(std::move(u), 0.0), b_(std::move(b)), gain_(gain) {}

  TangentVector operator()(const HPoint& p) const override {
    Word h;
    const HPoint q = b_->core().group().reduce(p, &h);
    const HPoint x = b_->project_domain(q);
    TangentVector yq = killing_eval(b_->field(x), q);
    const TangentVector pull = log_map(q, x);
    yq.vx += gain_ * pull.vx;
    yq.vy += gain_ * pull.vy;
    const TangentVector moved = pushforward(eval_rep(cocycle().base, h), yq);
    const TangentVector extra = killing_eval(eval_cocycle(cocycle(), h), p);
    return {p, moved.vx + extra.vx, moved.vy + extra.vy};
  }
  FieldKind kind() const override { return FieldKind::Sampled; }

 private:
  std::shared_ptr<const Blend> b_;
  double gain_;
};

std::vector<HPoint> with_generator_images(const SchottkyGroup& g, const std::vector<HPoint>& base) {
  std::vector<HPoint> out = base;
  for (const GroupElement& gen : g.j.generators) {
    for (const GroupElement& e : {gen, gen.inverse()}) {
      for (const HPoint& p : base) out.push_back(moebius_apply(e, p));
    }
  }
  return out;
}

}  // namespace

std::vector<HPoint> collar_samples(const ConvexCore& core, int resolution) {
  return with_generator_images(core.group(), core.domain_samples(resolution));
}

MapPtr relaxed_strip_map(const StripModel& m, double scale, const RelaxationOptions& o) {
  m.check_strips(scale);
  auto blend = std::make_shared<const Blend>(m, scale, o);
  auto f = std::make_shared<RelaxedMap>(blend, m.group().j);
  f->set_lipschitz(lipschitz_bound_sampled(*f, collar_samples(blend->core(), o.sample_resolution)));
  return f;
}

FieldPtr relaxed_strip_field(const StripModel& m, const RelaxationOptions& o) {
  auto blend = std::make_shared<const Blend>(m, 0.0, o);
  auto y = std::make_shared<RelaxedField>(blend, strip_cocycle(m), o.funnel_gain);
  const auto samples =
      with_generator_images(m.group(), grid_in_domain(m.group(), o.sample_resolution));
  y->set_lipschitz(lipschitz_bound_sampled(*y, samples));
  return y;
}

// -- strip map and its inverse ------------------------------------------------

std::array<double, 3> class_vector(const Cocycle& u) {
  const Word a = Word::generator(0), b = Word::generator(1);
  return {dlambda(u.base, u, a), dlambda(u.base, u, b), dlambda(u.base, u, a * b)};
}

namespace {

std::array<double, 3> normalized(std::array<double, 3> v) {
  const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "zero class vector");
  for (double& x : v) x /= n;
  for (double x : v) {
    if (std::abs(x) > 1e-14) {
      if (x > 0) {
        for (double& y : v) y = -y;
      }
      break;
    }
  }
  return v;
}

std::array<double, 3> arc_class(const ArcComplex& cx, int arc) {
  const StripModel m(cx, {{arc}, {1.0}}, 4);
  return class_vector(strip_cocycle(m));
}

const ArcSystem& checked_system(const ArcComplex& cx, const WeightedArcSystem& x) {
  std::vector<int> support;
  for (std::size_t i = 0; i < x.arcs.size(); ++i) {
    if (x.weights[i] > 0) support.push_back(x.arcs[i]);
  }
  const int idx = cx.find_system(support);
  if (idx < 0 || !cx.systems[idx].fills) {
    throw Error(ErrorCode::NotFilling, "arc system does not fill the surface");
  }
  return cx.systems[idx];
}

}  // namespace

std::array<double, 3> strip_map(const ArcComplex& cx, const WeightedArcSystem& x) {
  checked_system(cx, x);
  const StripModel m(cx, x, 4);
  return normalized(class_vector(strip_cocycle(m)));
}

InversionReport invert_strip_map(const ArcComplex& cx, const Cocycle& u, int max_len,
                                 double tol) {
  InversionReport r;
  r.admissibility = admissibility_test(cx.group.j, u, max_len);
  if (r.admissibility.verdict != Verdict::CertifiedNegativeSlope) {
    throw Error(ErrorCode::NotAdmissible,
                std::string("cocycle is not certified admissible (verdict ") +
                    to_string(r.admissibility.verdict) + ")");
  }
  const std::array<double, 3> v = class_vector(u);
  std::vector<std::array<double, 3>> basis;
  for (std::size_t i = 0; i < cx.arcs.size(); ++i) basis.push_back(arc_class(cx, static_cast<int>(i)));

  for (std::size_t s = 0; s < cx.systems.size(); ++s) {
    const ArcSystem& sys = cx.systems[s];
    if (!sys.top || !sys.fills) continue;
    // Columns are the arc classes; Gaussian elimination with partial pivoting.
    double a[3][4];
    for (int row = 0; row < 3; ++row) {
      for (int col = 0; col < 3; ++col) a[row][col] = basis[sys.arcs[col]][row];
      a[row][3] = v[row];
    }
    bool singular = false;
    for (int col = 0; col < 3; ++col) {
      int piv = col;
      for (int row = col + 1; row < 3; ++row) {
        if (std::abs(a[row][col]) > std::abs(a[piv][col])) piv = row;
      }
      if (std::abs(a[piv][col]) < 1e-14) {
        singular = true;
        break;
      }
      std::swap(a[piv], a[col]);
      for (int row = 0; row < 3; ++row) {
        if (row == col) continue;
        const double f = a[row][col] / a[col][col];
        for (int k = col; k < 4; ++k) a[row][k] -= f * a[col][k];
      }
    }
    if (singular) continue;
    SimplexSolution sol;
    sol.system = static_cast<int>(s);
    double scale = 0;
    for (int i = 0; i < 3; ++i) {
      sol.weights[i] = a[i][3] / a[i][i];
      scale += std::abs(sol.weights[i]);
    }
    for (int row = 0; row < 3; ++row) {
      double acc = -v[row];
      for (int col = 0; col < 3; ++col) acc += basis[sys.arcs[col]][row] * sol.weights[col];
      sol.residual = std::max(sol.residual, std::abs(acc));
    }
    sol.positive = sol.nonnegative = true;
    for (double w : sol.weights) {
      sol.positive = sol.positive && w > tol * scale;
      sol.nonnegative = sol.nonnegative && w >= -tol * scale;
    }
    r.candidates.push_back(sol);
  }

  const SimplexSolution* chosen = nullptr;
  for (const SimplexSolution& c : r.candidates) {
    if (c.positive) {
      ++r.positive_count;
      if (!chosen) chosen = &c;
    }
  }
  for (const SimplexSolution& c : r.candidates) {
    if (c.nonnegative) {
      r.boundary_systems.push_back(c.system);
      if (!chosen) chosen = &c;
    }
  }
  if (!chosen) {
    std::ostringstream os;
    os << "no candidate simplex has nonnegative weights; sign patterns:";
    for (const SimplexSolution& c : r.candidates) {
      os << " [";
      for (const int arc : cx.systems[c.system].arcs) os << ' ' << cx.arcs[arc].name;
      os << " :";
      for (double w : c.weights) os << ' ' << (w > 0 ? '+' : (w < 0 ? '-' : '0'));
      os << " ]";
    }
    throw Error(ErrorCode::NoPositiveSolution, os.str());
  }

  const ArcSystem& sys = cx.systems[chosen->system];
  double total = 0;
  for (double w : chosen->weights) total += std::max(w, 0.0);
  std::array<double, 3> rebuilt{};
  std::vector<int> support;
  for (int i = 0; i < 3; ++i) {
    const double w = std::max(chosen->weights[i], 0.0) / total;
    if (w <= tol) continue;
    r.solution.arcs.push_back(sys.arcs[i]);
    r.solution.weights.push_back(w);
    support.push_back(sys.arcs[i]);
    for (int k = 0; k < 3; ++k) rebuilt[k] += w * basis[sys.arcs[i]][k];
  }
  r.solution_system = cx.find_system(support);
  const auto p = normalized(rebuilt), q = normalized(v);
  r.residual = std::sqrt((p[0] - q[0]) * (p[0] - q[0]) + (p[1] - q[1]) * (p[1] - q[1]) +
                         (p[2] - q[2]) * (p[2] - q[2]));
  return r;
}

}  // namespace adsg
