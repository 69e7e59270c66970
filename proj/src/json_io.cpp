#include "adsg/json_io.hpp"

#include <cmath>

#include "adsg/errors.hpp"

namespace adsg {

const Json& require(const Json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw InputError(std::string("missing field '") + key + "'");
  }
  return obj.at(key);
}

namespace {

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw InputError(std::string(what) + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw InputError(std::string(what) + " must be finite");
  return v;
}

Mat2 matrix(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() || j[0].size() != 2 ||
      j[1].size() != 2) {
    throw InputError("matrix must be [[a, b], [c, d]]");
  }
  return {number(j[0][0], "matrix entry"), number(j[0][1], "matrix entry"),
          number(j[1][0], "matrix entry"), number(j[1][1], "matrix entry")};
}

}  // namespace

Json to_json(const GroupElement& g) { return Json::array({{g.a(), g.b()}, {g.c(), g.d()}}); }

Json to_json(const AlgebraElement& x) { return Json::array({{x.a, x.b}, {x.c, -x.a}}); }

Json to_json(const HPoint& p) { return Json::array({p.x(), p.y()}); }

Json to_json(const TangentVector& v) {
  return {{"base", to_json(v.base)}, {"v", Json::array({v.vx, v.vy})}};
}

Json to_json(const Representation& r) {
  Json gens = Json::array();
  for (const GroupElement& g : r.generators) gens.push_back(to_json(g));
  return {{"rank", r.rank()}, {"generators", gens}};
}

Json to_json(const Cocycle& u) {
  Json vals = Json::array();
  for (const AlgebraElement& x : u.values) vals.push_back(to_json(x));
  return {{"rank", u.rank()}, {"base", to_json(u.base)}, {"values", vals}};
}

Json to_json(const LorentzDistance& d) { return {{"kind", to_string(d.kind)}, {"value", d.value}}; }

Json to_json(const Geodesic& g) {
  const auto end = [](const Ideal& x) { return x.at_inf ? Json("inf") : Json(x.x); };
  return Json::array({end(g.from), end(g.to)});
}

Json to_json(const AdmissibilityReport& r) {
  Json out = {{"verdict", to_string(r.verdict)},
              {"max_ratio", r.max_ratio},
              {"min_ratio", r.min_ratio},
              {"argmax", r.argmax.to_string()},
              {"argmin", r.argmin.to_string()},
              {"negation_certified", r.negation_certified},
              {"margin_by_length", r.margin_by_length},
              {"partial_test", true}};
  if (r.witness_up) out["witness_up"] = r.witness_up->to_string();
  if (r.witness_down) out["witness_down"] = r.witness_down->to_string();
  return out;
}

Json to_json(const PropernessReport& r) {
  Json gaps = Json::array();
  for (const ProperGap& g : r.gaps) gaps.push_back({{"n", g.n}, {"psi", g.psi}, {"gap", g.gap}});
  return {{"beta", r.beta.to_string()},
          {"gamma", r.gamma.to_string()},
          {"gaps", gaps},
          {"max_gap", r.max_gap},
          {"witness", r.witness}};
}

GroupElement group_element_from_json(const Json& j) {
  const Mat2 m = matrix(j);
  if (!(m.det() > 0)) throw InputError("group element needs positive determinant");
  return GroupElement::from_matrix(m);
}

AlgebraElement algebra_element_from_json(const Json& j) {
  const Mat2 m = matrix(j);
  if (std::abs(m.trace()) > 1e-9 * std::max(1.0, m.max_abs())) {
    throw InputError("algebra element must be traceless");
  }
  return AlgebraElement::from_matrix(m);
}

HPoint hpoint_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw InputError("point must be [x, y]");
  const double x = number(j[0], "x"), y = number(j[1], "y");
  if (!(y > 0)) throw InputError("point must have y > 0");
  return {x, y};
}

Word word_from_json(const Json& j) {
  if (!j.is_string()) throw InputError("word must be a string such as \"a B a a\"");
  try {
    return Word::parse(j.get<std::string>());
  } catch (const Error& e) {
    throw InputError(e.what());
  }
}

Representation representation_from_json(const Json& j) {
  const Json& gens = require(j, "generators");
  if (!gens.is_array() || gens.empty()) throw InputError("generators must be a nonempty array");
  Representation r;
  for (const Json& g : gens) r.generators.push_back(group_element_from_json(g));
  if (j.contains("rank") && j.at("rank") != Json(r.rank())) {
    throw InputError("rank does not match the number of generators");
  }
  return r;
}

Cocycle cocycle_from_json(const Json& j) {
  Cocycle u;
  u.base = representation_from_json(require(j, "base"));
  const Json& vals = require(j, "values");
  if (!vals.is_array()) throw InputError("values must be an array");
  for (const Json& v : vals) u.values.push_back(algebra_element_from_json(v));
  if (u.rank() != u.base.rank()) throw InputError("cocycle rank differs from its base");
  if (j.contains("rank") && j.at("rank") != Json(u.rank())) {
    throw InputError("rank does not match the number of values");
  }
  return u;
}

SchottkyGroup surface_from_json(const Json& j) {
  const Json& type = require(j, "type");
  if (!type.is_string()) throw InputError("surface type must be a string");
  SurfaceType s;
  try {
    s = surface_from_string(type.get<std::string>());
  } catch (const Error& e) {
    throw InputError(e.what());
  }
  std::vector<double> lengths;
  const Json& ls = require(j, "lengths");
  if (!ls.is_array()) throw InputError("lengths must be an array");
  for (const Json& l : ls) lengths.push_back(number(l, "length"));
  return schottky_fuchsian(s, lengths);
}

WeightedArcSystem weighted_system_from_json(const ArcComplex& cx, const Json& j) {
  std::vector<std::pair<std::string, double>> w;
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) w.emplace_back(it.key(), number(*it, "weight"));
  } else if (j.is_array()) {
    for (const Json& e : j) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_string()) {
        throw InputError("system entries must be [name, weight]");
      }
      w.emplace_back(e[0].get<std::string>(), number(e[1], "weight"));
    }
  } else {
    throw InputError("system must be an object of arc weights");
  }
  try {
    return make_weighted_system(cx, w);
  } catch (const Error& e) {
    throw InputError(e.what());
  }
}

Json weighted_system_to_json(const ArcComplex& cx, const WeightedArcSystem& x) {
  Json out = Json::object();
  for (std::size_t i = 0; i < x.arcs.size(); ++i) out[cx.arcs[x.arcs[i]].name] = x.weights[i];
  return out;
}

}  // namespace adsg
