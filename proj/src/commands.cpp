#include "adsg/commands.hpp"

#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "adsg/errors.hpp"

#ifndef ADSG_VERSION
#define ADSG_VERSION "0.0.0"
#endif

namespace adsg {

const char* library_version() noexcept { return ADSG_VERSION; }

namespace {

double get_number(const Json& c, const char* key, double fallback) {
  if (!c.contains(key)) return fallback;
  const Json& v = c.at(key);
  if (!v.is_number() || !std::isfinite(v.get<double>())) {
    throw InputError(std::string("'") + key + "' must be a finite number");
  }
  return v.get<double>();
}

int get_int(const Json& c, const char* key, int fallback, int lo, int hi) {
  if (!c.contains(key)) return fallback;
  const Json& v = c.at(key);
  if (!v.is_number_integer()) throw InputError(std::string("'") + key + "' must be an integer");
  const long long x = v.get<long long>();
  if (x < lo || x > hi) {
    throw InputError(std::string("'") + key + "' must lie in [" + std::to_string(lo) + ", " +
                     std::to_string(hi) + "]");
  }
  return static_cast<int>(x);
}

std::mt19937_64 rng_from(const Json& c) {
  return std::mt19937_64(static_cast<std::uint64_t>(get_int(c, "seed", 1, 0, 2147483647)));
}

AlgebraElement random_algebra(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  const double a = u(rng), b = u(rng), c = u(rng);
  return {a, b, c};
}

Word random_word(std::mt19937_64& rng, int rank, int max_len) {
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

Json flags_json(const SubsetFlags& f) {
  return {{"S", f.in_S}, {"K", f.in_K}, {"A", f.in_A}, {"C", f.in_C}, {"T", f.in_T}, {"J", f.in_J}};
}

// -- commands ------------------------------------------------------------------------

Json cmd_classify(const Json& c, CommandResult&) {
  const GroupElement g = group_element_from_json(require(c, "matrix"));
  return {{"class", to_string(classify(g))},
          {"normalized", to_json(g)},
          {"trace", g.trace()},
          {"translation_length", translation_length(g)},
          {"mu", mu(g)},
          {"subsets", flags_json(subset_membership(g))}};
}

Json cmd_delta(const Json& c, CommandResult&) {
  const GroupElement a = group_element_from_json(require(c, "a"));
  const GroupElement b = group_element_from_json(require(c, "b"));
  const LorentzDistance d = delta_trace(a, b);
  Json out = to_json(d);
  if (a.approx_equal(b, 1e-14)) {
    out["line"] = nullptr;
    out["crossratio"] = nullptr;
  } else {
    out["line"] = to_string(classify_line(a, b));
    out["crossratio"] = to_json(delta_crossratio(a, b));
  }
  return out;
}

Json cmd_figure(const Json& c, CommandResult& res) {
  const int samples = get_int(c, "surface_samples", 24, 4, 400);
  const FigureData data = figure_data(samples);
  std::ostringstream csv, surf;
  write_figure_csv(csv, data);
  write_surfaces_csv(surf, data);
  res.artifacts.emplace_back("figure.csv", csv.str());
  res.artifacts.emplace_back("surfaces.csv", surf.str());
  const std::string format = c.value("format", std::string("csv"));
  if (format == "svg") {
    std::ostringstream svg;
    write_figure_svg(svg, data);
    res.artifacts.emplace_back("figure.svg", svg.str());
  } else if (format != "csv" && format != "json") {
    throw InputError("format must be json, csv or svg");
  }
  int at_inf = 0;
  for (const FigurePoint& p : data.points) at_inf += p.at_infinity;
  Json artifacts = Json::array();
  for (const auto& [name, text] : res.artifacts) artifacts.push_back(name);
  return {{"points", data.points.size()},
          {"at_infinity", at_inf},
          {"columns", "x,y,z,class,in_S,in_K,in_A,in_C,in_T,at_infinity"},
          {"artifacts", artifacts}};
}

Json cmd_properness(const Json& c, CommandResult&) {
  const Representation j = representation_from_json(require(c, "j"));
  const Representation rho = representation_from_json(require(c, "rho"));
  if (j.rank() != rho.rank()) throw InputError("j and rho have different ranks");
  const int max_word = get_int(c, "max_word", 6, 1, 10);
  const int n = get_int(c, "n", 12, 1, 64);
  const double radius = get_number(c, "radius", 2.0);
  const int psi = get_int(c, "psi_range", 64, 1, 512);
  const Word beta = c.contains("beta") ? word_from_json(c.at("beta")) : Word();
  const Word gamma = c.contains("gamma") ? word_from_json(c.at("gamma")) : Word();
  const LengthRatio lr = length_ratio_sup(j, rho, max_word);
  const PropernessReport pr = properness_violation_search(j, rho, radius, n, beta, gamma, psi);
  const bool below = lr.value < 1;
  const char* verdict = pr.witness ? "violated" : "inconclusive";
  return {{"verdict", verdict},
          {"length_ratio", {{"value", lr.value}, {"argmax", lr.argmax.to_string()}}},
          {"length_ratio_below_one", below},
          {"search", to_json(pr)},
          {"note",
           "word-length truncation cannot certify properness; a bounded gap sequence is a "
           "violation witness"}};
}

Json cmd_admissible(const Json& c, CommandResult&) {
  const Cocycle u = cocycle_from_json(require(c, "cocycle"));
  const int max_word = get_int(c, "max_word", 6, 1, 10);
  const double eps = get_number(c, "eps", 1e-6);
  const double tol = get_number(c, "tol", 1e-9);
  return to_json(admissibility_test(u.base, u, max_word, eps, tol));
}

struct StripSetup {
  SchottkyGroup group;
  ArcComplex cx;
  WeightedArcSystem system;
};

StripSetup strip_setup(const Json& c) {
  StripSetup s;
  s.group = surface_from_json(require(c, "surface"));
  s.cx = enumerate_arc_systems(s.group, get_int(c, "max_word", 3, 1, 4));
  s.system = weighted_system_from_json(s.cx, require(c, "system"));
  return s;
}

Json arc_json(const Arc& a) {
  return {{"name", a.name},
          {"from", a.type.from},
          {"to", a.type.to},
          {"h", a.type.h.to_string()},
          {"geodesic", to_json(a.geodesic)},
          {"waist", to_json(a.waist)}};
}

Json cmd_strip(const Json& c, CommandResult&) {
  const StripSetup s = strip_setup(c);
  const double scale = get_number(c, "scale", 0.3);
  const int max_len = get_int(c, "max_len", 6, 1, 10);
  const StripModel m(s.cx, s.system);
  const Representation rho = macro_strip(m, scale);
  const Cocycle u = strip_cocycle(m);
  Json arcs = Json::array();
  for (const Arc& a : s.cx.arcs) arcs.push_back(arc_json(a));
  Json strips = Json::array();
  for (const StripData& d : m.strip_data(scale)) {
    strips.push_back({{"arc", s.cx.arcs[d.arc].name},
                      {"alpha", to_json(d.alpha)},
                      {"alpha_prime", to_json(d.alpha_prime)},
                      {"p", to_json(d.p)},
                      {"p_prime", to_json(d.p_prime)},
                      {"width", d.width}});
  }
  const LengthRatio lr = length_ratio_sup(s.group.j, rho, max_len);
  Json out = {{"arcs", arcs},
              {"system", weighted_system_to_json(s.cx, s.system)},
              {"basepoint", to_json(m.basepoint())},
              {"j", to_json(s.group.j)},
              {"rho", to_json(rho)},
              {"cocycle", to_json(u)},
              {"strips", strips},
              {"length_ratio", {{"value", lr.value}, {"argmax", lr.argmax.to_string()}}}};
  try {
    const auto v = strip_map(s.cx, s.system);
    out["class"] = Json::array({v[0], v[1], v[2]});
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotFilling) throw;
    out["class"] = nullptr;
    out["fills"] = false;
  }
  return out;
}

Json cmd_invert(const Json& c, CommandResult&) {
  const SchottkyGroup group = surface_from_json(require(c, "surface"));
  const ArcComplex cx = enumerate_arc_systems(group, get_int(c, "max_word", 3, 1, 4));
  const Cocycle u = cocycle_from_json(require(c, "cocycle"));
  const int max_len = get_int(c, "max_len", 6, 1, 10);
  const double tol = get_number(c, "tol", 1e-9);
  const InversionReport r = invert_strip_map(cx, u, max_len, tol);
  const auto names = [&](int sys) {
    Json a = Json::array();
    for (int i : cx.systems[sys].arcs) a.push_back(cx.arcs[i].name);
    return a;
  };
  Json cands = Json::array();
  for (const SimplexSolution& s : r.candidates) {
    cands.push_back({{"arcs", names(s.system)},
                     {"weights", Json::array({s.weights[0], s.weights[1], s.weights[2]})},
                     {"residual", s.residual},
                     {"positive", s.positive},
                     {"nonnegative", s.nonnegative}});
  }
  Json boundary = Json::array();
  for (int s : r.boundary_systems) boundary.push_back(names(s));
  return {{"admissibility", to_json(r.admissibility)},
          {"solution", weighted_system_to_json(cx, r.solution)},
          {"positive_count", r.positive_count},
          {"boundary_systems", boundary},
          {"candidates", cands},
          {"residual", r.residual}};
}

RelaxationOptions relaxation_from(const Json& c) {
  RelaxationOptions o;
  o.kappa = get_number(c, "kappa", o.kappa);
  o.funnel_gain = get_number(c, "funnel_gain", o.funnel_gain);
  o.sample_resolution = get_int(c, "sample_resolution", o.sample_resolution, 8, 400);
  o.cell_word_length = get_int(c, "cell_word_length", o.cell_word_length, 2, 6);
  return o;
}

Json cmd_fibration(const Json& c, CommandResult&) {
  const StripSetup s = strip_setup(c);
  const StripModel m(s.cx, s.system);
  const std::string mode = c.value("mode", std::string("macro"));
  const int samples = get_int(c, "samples", 100, 1, 100000);
  SolverSettings settings;
  settings.tol = get_number(c, "tol", settings.tol);
  auto rng = rng_from(c);
  const RelaxationOptions o = relaxation_from(c);
  const Representation& j = s.group.j;
  std::uniform_int_distribution<int> pick(0, j.rank() - 1);
  Json out;
  if (mode == "macro") {
    const double scale = get_number(c, "scale", 0.6);
    const FibrationHandle h = FibrationHandle::macro(relaxed_strip_map(m, scale, o), settings);
    const EquivariantMap& f = h.map();
    double max_res = 0, max_eq = 0, max_rate = 0;
    int on_fiber = 0;
    for (int i = 0; i < samples; ++i) {
      const GroupElement g = exp_alg(random_algebra(rng, 1.0)) * eval_rep(j, random_word(rng, 2, 2));
      const FixedPointResult r = fixed_point(g, f, settings);
      max_res = std::max(max_res, r.residual);
      max_rate = std::max(max_rate, r.observed_rate);
      on_fiber += in_macro_fiber(h, g, r.point);
      const int k = pick(rng);
      const GroupElement moved = f.target().generators[k] * g * j.generators[k].inverse();
      const HPoint pm = fixed_point(moved, f, settings).point;
      max_eq = std::max(max_eq, hyp_dist(pm, moebius_apply(j.generators[k], r.point)));
    }
    out = {{"mode", "macro"},
           {"scale", scale},
           {"bound", f.lipschitz()},
           {"rho", to_json(f.target())},
           {"on_fiber", on_fiber},
           {"max_residual", max_res},
           {"max_equivariance_error", max_eq},
           {"max_observed_rate", max_rate}};
  } else if (mode == "micro") {
    const FibrationHandle h = FibrationHandle::micro(relaxed_strip_field(m, o), settings);
    const EquivariantField& y = h.field();
    double max_res = 0, max_eq = 0, worst_ball = -1e300;
    int on_fiber = 0, in_ball = 0;
    for (int i = 0; i < samples; ++i) {
      const AlgebraElement x = random_algebra(rng, 1.0);
      const ZeroResult r = zero_of_field(x, y, settings);
      max_res = std::max(max_res, r.residual);
      on_fiber += in_micro_fiber(h, x, r.point);
      in_ball += r.distance_from_start <= r.ball_radius * (1 + 1e-9);
      worst_ball = std::max(worst_ball, r.distance_from_start - r.ball_radius);
      const int k = pick(rng);
      const AlgebraElement moved = y.cocycle().values[k] + adjoint(j.generators[k], x);
      const HPoint pm = zero_of_field(moved, y, settings).point;
      max_eq = std::max(max_eq, hyp_dist(pm, moebius_apply(j.generators[k], r.point)));
    }
    out = {{"mode", "micro"},
           {"bound", y.lipschitz()},
           {"cocycle", to_json(y.cocycle())},
           {"on_fiber", on_fiber},
           {"within_ball", in_ball},
           {"max_ball_excess", worst_ball},
           {"max_residual", max_res},
           {"max_equivariance_error", max_eq}};
  } else {
    throw InputError("mode must be macro or micro");
  }
  out["samples"] = samples;
  return out;
}

Json cmd_transition(const Json& c, CommandResult& res) {
  const StripSetup s = strip_setup(c);
  const StripModel m(s.cx, s.system);
  const RelaxationOptions o = relaxation_from(c);
  std::vector<double> ts = {1e-1, 1e-2, 1e-3};
  if (c.contains("ts")) {
    ts.clear();
    for (const Json& t : c.at("ts")) {
      const double v = t.is_number() ? t.get<double>() : -1;
      if (!(v > 0 && v <= 1)) throw InputError("ts entries must lie in (0, 1]");
      ts.push_back(v);
    }
  }
  const int directions = get_int(c, "directions", 4, 1, 100);
  const FieldPtr y = relaxed_strip_field(m, o);
  const ConvexCore core(s.group);
  const std::vector<HPoint> pts = core.domain_samples(get_int(c, "sample_resolution_core", 8, 3, 60));
  if (pts.empty()) throw InputError("no core samples at this resolution");
  auto rng = rng_from(c);
  std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
  std::uniform_real_distribution<double> spin(-1, 1);
  // Algebra elements whose micro fibre lies over a core point.
  std::vector<AlgebraElement> xs;
  for (int i = 0; i < directions; ++i) {
    const HPoint& p = pts[pick(rng)];
    xs.push_back(killing_with_value((*y)(p)) + rotation_generator(p) * spin(rng));
  }
  const TransitionReport r = transition_fiber_check(
      [&](double t) { return relaxed_strip_map(m, t, o); }, *y, xs, pts, ts);
  Json rows = Json::array();
  std::ostringstream csv;
  csv << "t,field_gap,fiber_gap,fiber_gap_over_t\n";
  csv.precision(17);
  for (const TransitionRow& row : r.rows) {
    rows.push_back({{"t", row.t},
                    {"field_gap", row.field_gap},
                    {"fiber_gap", row.fiber_gap},
                    {"fiber_gap_over_t", row.fiber_gap / row.t}});
    csv << row.t << ',' << row.field_gap << ',' << row.fiber_gap << ',' << row.fiber_gap / row.t
        << '\n';
  }
  res.artifacts.emplace_back("transition.csv", csv.str());
  return {{"field_bound", y->lipschitz()}, {"rows", rows}, {"max_rate", r.max_rate}};
}

using Runner = Json (*)(const Json&, CommandResult&);

const std::map<std::string, Runner>& runners() {
  static const std::map<std::string, Runner> m = {
      {"classify", cmd_classify},     {"delta", cmd_delta},   {"figure", cmd_figure},
      {"properness", cmd_properness}, {"admissible", cmd_admissible},
      {"strip", cmd_strip},           {"invert", cmd_invert}, {"fibration", cmd_fibration},
      {"transition", cmd_transition},
  };
  return m;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"classify",   "delta",  "figure",
                                                 "properness", "admissible", "strip",
                                                 "invert",     "fibration",  "transition"};
  return names;
}

CommandResult run_command(const std::string& name, const Json& config) {
  const auto it = runners().find(name);
  if (it == runners().end()) throw InputError("unknown command '" + name + "'");
  if (!config.is_object()) throw InputError("config must be a JSON object");
  CommandResult res;
  Json result;
  try {
    result = it->second(config, res);
  } catch (const Json::exception& e) {
    throw InputError(e.what());
  }
  res.report = {{"version", library_version()},
                {"command", name},
                {"config", config},
                {"result", result}};
  return res;
}

Json error_report(const std::string& name, const Json& config, const std::string& code,
                  int value, const std::string& message) {
  return {{"version", library_version()},
          {"command", name},
          {"config", config},
          {"error", {{"code", code}, {"value", value}, {"message", message}}}};
}

}  // namespace adsg
