#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>

#include "adsg/errors.hpp"
#include "adsg/strip.hpp"

namespace adsg {

namespace {

bool same_ideal(const Ideal& a, const Ideal& b, double tol) {
  if (a.at_inf || b.at_inf) return a.at_inf == b.at_inf;
  return std::abs(a.x - b.x) <= tol * std::max(1.0, std::abs(a.x));
}

bool same_geodesic(const Geodesic& g, const Geodesic& h, double tol = 1e-8) {
  return (same_ideal(g.from, h.from, tol) && same_ideal(g.to, h.to, tol)) ||
         (same_ideal(g.from, h.to, tol) && same_ideal(g.to, h.from, tol));
}

// Realizes an arc type and moves it so that its waist lies in the
// fundamental domain.
Arc realize(const SchottkyGroup& group, const std::string& name, const ArcType& type) {
  const Geodesic g1 = axis(eval_rep(group.j, group.boundary_words[type.from]));
  const Geodesic g2 =
      moebius_apply(eval_rep(group.j, type.h), axis(eval_rep(group.j, group.boundary_words[type.to])));
  const CommonPerpendicular cp = common_perpendicular(g1, g2);
  Word h;
  const HPoint waist = geodesic_lerp(cp.foot1, cp.foot2, 0.5);
  const HPoint reduced = group.reduce(waist, &h);
  const GroupElement back = eval_rep(group.j, h).inverse();
  Arc arc;
  arc.name = name;
  arc.type = type;
  arc.geodesic = moebius_apply(back, cp.line);
  arc.foot1 = moebius_apply(back, cp.foot1);
  arc.foot2 = moebius_apply(back, cp.foot2);
  arc.waist = reduced;
  return arc;
}

// No lift of `b` (translates by words of length <= len) crosses `a`.
bool lifts_disjoint(const SchottkyGroup& group, const Geodesic& a, const Geodesic& b,
                    const std::vector<GroupElement>& words, bool allow_equal) {
  for (const GroupElement& g : words) {
    const Geodesic gb = moebius_apply(g, b);
    if (same_geodesic(a, gb)) {
      if (allow_equal) continue;
      return false;
    }
    if (crosses(a, gb)) return false;
  }
  (void)group;
  return true;
}

// Dual graph of a top system: each arc joins two of the complementary
// regions (numbered 0 and 1). On the pants a system containing an arc from a
// boundary to itself is a barbell whose bridge is that arc; every other top
// system, and every top system of the torus, is a theta graph.
std::vector<std::pair<int, int>> dual_graph(const ArcComplex& cx, const std::vector<int>& top) {
  std::vector<std::pair<int, int>> edges;
  int loop = -1;
  if (cx.group.surface == SurfaceType::Pants) {
    for (int a : top) {
      if (cx.arcs[a].type.from == cx.arcs[a].type.to) loop = a;
    }
  }
  int self_loops = 0;
  for (int a : top) {
    if (loop < 0 || a == loop) {
      edges.emplace_back(0, 1);
    } else {
      edges.emplace_back(self_loops, self_loops);
      ++self_loops;
    }
  }
  return edges;
}

// Components of the graph on two vertices with the given edges.
int components(const std::vector<std::pair<int, int>>& edges) {
  for (const auto& e : edges) {
    if (e.first != e.second) return 1;
  }
  return 2;
}

}  // namespace

int ArcComplex::find_system(std::vector<int> a) const {
  std::sort(a.begin(), a.end());
  for (std::size_t i = 0; i < systems.size(); ++i) {
    if (systems[i].arcs == a) return static_cast<int>(i);
  }
  return -1;
}

int ArcComplex::find_arc(const std::string& name) const {
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    if (arcs[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

ArcComplex enumerate_arc_systems(const SchottkyGroup& group, int max_word) {
  ArcComplex cx;
  cx.group = group;
  std::vector<GroupElement> short_words;
  for (const Word& w : reduced_words(group.j.rank(), 4)) short_words.push_back(eval_rep(group.j, w));

  if (group.surface == SurfaceType::Pants) {
    const Word a = Word::generator(0), b = Word::generator(1);
    const std::vector<std::pair<std::string, ArcType>> types = {
        {"ab", {0, 1, {}}}, {"bc", {1, 2, {}}}, {"ac", {0, 2, {}}},
        {"aa", {0, 0, b}},  {"bb", {1, 1, a}},  {"cc", {2, 2, a}},
    };
    for (const auto& [name, type] : types) cx.arcs.push_back(realize(group, name, type));
  } else {
    for (const Word& h : reduced_words(group.j.rank(), max_word)) {
      if (h.empty()) continue;
      Arc arc;
      try {
        arc = realize(group, "t_" + h.to_string(), {0, 0, h});
      } catch (const Error&) {
        continue;  // h stabilizes the boundary lift
      }
      arc.name.erase(std::remove(arc.name.begin(), arc.name.end(), ' '), arc.name.end());
      if (!lifts_disjoint(group, arc.geodesic, arc.geodesic, short_words, true)) continue;
      bool dup = false;
      for (const Arc& other : cx.arcs) {
        for (const GroupElement& g : short_words) {
          if (same_geodesic(moebius_apply(g, other.geodesic), arc.geodesic)) {
            dup = true;
            break;
          }
        }
        if (dup) break;
      }
      if (!dup) cx.arcs.push_back(arc);
    }
  }

  const int n = static_cast<int>(cx.arcs.size());
  cx.disjoint.assign(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i) {
    for (int k = i + 1; k < n; ++k) {
      const bool d = lifts_disjoint(group, cx.arcs[i].geodesic, cx.arcs[k].geodesic, short_words,
                                    false);
      cx.disjoint[i][k] = cx.disjoint[k][i] = d;
    }
  }

  // All cliques of the disjointness graph, in increasing lexicographic order.
  std::function<void(std::vector<int>&, int)> grow = [&](std::vector<int>& cur, int next) {
    for (int c = next; c < n; ++c) {
      bool ok = true;
      for (int a : cur) ok = ok && cx.disjoint[a][c];
      if (!ok) continue;
      cur.push_back(c);
      cx.systems.push_back({cur, 0, 0, false, false});
      grow(cur, c + 1);
      cur.pop_back();
    }
  };
  std::vector<int> cur;
  grow(cur, 0);
  std::stable_sort(cx.systems.begin(), cx.systems.end(),
                   [](const ArcSystem& x, const ArcSystem& y) { return x.arcs.size() < y.arcs.size(); });

  constexpr int kTopSize = 3;  // dimension of the arc complex of a rank-2 surface, plus one
  std::vector<std::vector<int>> tops;
  for (ArcSystem& s : cx.systems) {
    s.top = static_cast<int>(s.arcs.size()) == kTopSize;
    if (s.top) tops.push_back(s.arcs);
  }
  for (ArcSystem& s : cx.systems) {
    const int k = static_cast<int>(s.arcs.size());
    s.euler = -1 + k;  // both surfaces have Euler characteristic -1
    const std::vector<int>* host = nullptr;
    for (const auto& t : tops) {
      if (std::includes(t.begin(), t.end(), s.arcs.begin(), s.arcs.end())) {
        host = &t;
        break;
      }
    }
    if (host) {
      const auto edges = dual_graph(cx, *host);
      std::vector<std::pair<int, int>> glued;
      for (std::size_t e = 0; e < host->size(); ++e) {
        if (!std::binary_search(s.arcs.begin(), s.arcs.end(), (*host)[e])) glued.push_back(edges[e]);
      }
      s.regions = components(glued);
    } else {
      // Not contained in an enumerated top system (truncated enumeration):
      // complete it to a theta graph.
      s.regions = k < kTopSize ? 1 : 2;
    }
    // Every region of a cut surface has Euler characteristic <= 1, so the
    // regions are all disks exactly when their number equals the total.
    s.fills = s.regions == s.euler;
  }

  // Basepoint: core sample farthest from every arc lift.
  const ConvexCore core(group);
  std::vector<Geodesic> lifts;
  for (const Word& w : reduced_words(group.j.rank(), 3)) {
    const GroupElement g = eval_rep(group.j, w);
    for (const Arc& a : cx.arcs) lifts.push_back(moebius_apply(g, a.geodesic));
  }
  double best = -1;
  for (const HPoint& p : core.domain_samples(80)) {
    double m = std::numeric_limits<double>::infinity();
    for (const Geodesic& l : lifts) m = std::min(m, dist_to_geodesic(l, p));
    if (m > best) {
      best = m;
      cx.basepoint = p;
    }
  }
  return cx;
}

WeightedArcSystem make_weighted_system(const ArcComplex& cx,
                                       const std::vector<std::pair<std::string, double>>& w) {
  std::vector<std::pair<int, double>> items;
  for (const auto& [name, weight] : w) {
    const int idx = cx.find_arc(name);
    if (idx < 0) throw Error(ErrorCode::InvalidArgument, "unknown arc '" + name + "'");
    if (!(weight >= 0) || !std::isfinite(weight)) {
      throw Error(ErrorCode::InvalidArgument, "arc weights must be nonnegative");
    }
    items.emplace_back(idx, weight);
  }
  std::sort(items.begin(), items.end());
  WeightedArcSystem out;
  for (const auto& [idx, weight] : items) {
    if (!out.arcs.empty() && out.arcs.back() == idx) {
      throw Error(ErrorCode::InvalidArgument, "arc listed twice");
    }
    out.arcs.push_back(idx);
    out.weights.push_back(weight);
  }
  for (std::size_t i = 0; i < out.arcs.size(); ++i) {
    for (std::size_t k = i + 1; k < out.arcs.size(); ++k) {
      if (!cx.disjoint[out.arcs[i]][out.arcs[k]]) {
        throw Error(ErrorCode::InvalidArgument,
                    "arcs " + cx.arcs[out.arcs[i]].name + " and " + cx.arcs[out.arcs[k]].name +
                        " intersect");
      }
    }
  }
  return out;
}

}  // namespace adsg
