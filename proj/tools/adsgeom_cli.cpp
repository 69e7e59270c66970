// Command-line front end. Builds a JSON config from --input and inline flags,
// runs it through the C API and writes the report and artifacts.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "adsgeom.h"

namespace {

using Json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInput = 2;
constexpr int kExitDomain = 3;

struct Options {
  std::string input;
  std::string out;
  std::string format = "json";
  std::vector<std::string> sets;
  std::string matrix, a, b, mode;
  double tol = -1;
  double scale = -1;
  int max_word = -1;
  int samples = -1;
  long long seed = -1;
  int jobs = 1;
};

struct InputFailure {
  std::string message;
};

Json parse_value(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error&) {
    return Json(text);
  }
}

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputFailure{what + " is not valid JSON: " + e.what()};
  }
}

Json build_config(const Options& o) {
  Json config = Json::object();
  if (!o.input.empty()) {
    std::ifstream in(o.input);
    if (!in) throw InputFailure{"cannot read " + o.input};
    std::stringstream ss;
    ss << in.rdbuf();
    config = parse_json(ss.str(), o.input);
    if (!config.is_object()) throw InputFailure{"config must be a JSON object"};
  }
  if (!o.matrix.empty()) config["matrix"] = parse_json(o.matrix, "--matrix");
  if (!o.a.empty()) config["a"] = parse_json(o.a, "--a");
  if (!o.b.empty()) config["b"] = parse_json(o.b, "--b");
  if (!o.mode.empty()) config["mode"] = o.mode;
  if (o.tol >= 0) config["tol"] = o.tol;
  if (o.scale >= 0) config["scale"] = o.scale;
  if (o.max_word >= 0) config["max_word"] = o.max_word;
  if (o.samples >= 0) config["samples"] = o.samples;
  if (o.seed >= 0) config["seed"] = o.seed;
  if (o.format == "svg") config["format"] = "svg";
  for (const std::string& kv : o.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw InputFailure{"--set expects key=value, got " + kv};
    config[kv.substr(0, eq)] = parse_value(kv.substr(eq + 1));
  }
  return config;
}

void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream f(p);
  if (!f) throw InputFailure{"cannot write " + p.string()};
  f << content;
}

// Prints the artifact whose name ends in ext, or the report when none does.
void print_selected(const adsg_report* r, const std::string& ext) {
  const std::size_t n = adsg_report_artifact_count(r);
  for (std::size_t i = 0; i < n; ++i) {
    const char* name = nullptr;
    const char* content = nullptr;
    if (adsg_report_artifact(r, i, &name, &content) != ADSG_OK) continue;
    const std::string s = name;
    if (s.size() >= ext.size() && s.compare(s.size() - ext.size(), ext.size(), ext) == 0) {
      std::cout << content;
      return;
    }
  }
  std::cout << adsg_report_json(r) << "\n";
}

int exit_code_for(adsg_status st) {
  if (st == ADSG_OK) return kExitOk;
  if (st == ADSG_ERR_INPUT) return kExitInput;
  if (st == ADSG_ERR_INTERNAL) return kExitInternal;
  return kExitDomain;
}

int run(const std::string& command, const Options& o) {
  Json config;
  try {
    config = build_config(o);
  } catch (const InputFailure& e) {
    const Json err = {{"version", adsg_version()},
                      {"command", command},
                      {"error", {{"code", "InputError"}, {"value", 2}, {"message", e.message}}}};
    std::cerr << err.dump(2) << "\n";
    return kExitInput;
  }

  adsg_report* report = nullptr;
  const adsg_status st = adsg_run_command(command.c_str(), config.dump().c_str(), &report);
  if (!report) {
    const Json err = {{"version", adsg_version()},
                      {"command", command},
                      {"error", {{"code", adsg_status_name(st)},
                                 {"value", static_cast<int>(st)},
                                 {"message", adsg_last_error()}}}};
    std::cerr << err.dump(2) << "\n";
    return exit_code_for(st);
  }
  if (st != ADSG_OK) {
    std::cerr << adsg_report_json(report) << "\n";
    adsg_report_free(report);
    return exit_code_for(st);
  }

  int code = kExitOk;
  try {
    if (!o.out.empty()) {
      const std::filesystem::path dir(o.out);
      std::filesystem::create_directories(dir);
      write_file(dir / (command + ".json"), std::string(adsg_report_json(report)) + "\n");
      for (std::size_t i = 0; i < adsg_report_artifact_count(report); ++i) {
        const char* name = nullptr;
        const char* content = nullptr;
        if (adsg_report_artifact(report, i, &name, &content) == ADSG_OK) write_file(dir / name, content);
      }
    }
    if (o.format == "json") {
      std::cout << adsg_report_json(report) << "\n";
    } else {
      print_selected(report, "." + o.format);
    }
  } catch (const InputFailure& e) {
    std::cerr << e.message << "\n";
    code = kExitInput;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << e.what() << "\n";
    code = kExitInput;
  }
  adsg_report_free(report);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anti-de Sitter geometry toolkit: Margulis spacetimes, strip deformations and contractions"};
  app.set_version_flag("--version", std::string(adsg_version()));
  app.require_subcommand(1);

  Options o;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"classify", "Classify an isometry of the hyperbolic plane"},
      {"delta", "Lorentzian distance between two elements of PSL(2,R)"},
      {"figure", "Sample spacelike, timelike and lightlike separated subsets"},
      {"properness", "Search for non-properness witnesses of a pair (j, rho)"},
      {"admissible", "Length-ratio admissibility test for a cocycle"},
      {"strip", "Strip deformation of a weighted arc system"},
      {"invert", "Recover arc weights from a cocycle"},
      {"fibration", "Build a fibration (macro or micro) and sample its fibres"},
      {"transition", "Compare micro and macro fibres for small deformations"},
  };

  std::string chosen;
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--input,-i", o.input, "JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--out,-o", o.out, "Directory for the report and artifacts");
    sub->add_option("--format,-f", o.format, "Output written to stdout")
        ->check(CLI::IsMember({"json", "csv", "svg"}));
    sub->add_option("--tol", o.tol, "Numerical tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--max-word", o.max_word, "Word length bound")->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", o.seed, "Random seed")->check(CLI::NonNegativeNumber);
    sub->add_option("--jobs,-j", o.jobs, "Worker threads (runs are sequential)")->check(CLI::PositiveNumber);
    sub->add_option("--set", o.sets, "Config override key=value, value parsed as JSON when possible");
    if (name == "classify") sub->add_option("--matrix", o.matrix, "Matrix as JSON [[a,b],[c,d]]");
    if (name == "delta") {
      sub->add_option("--a", o.a, "First element as JSON matrix");
      sub->add_option("--b", o.b, "Second element as JSON matrix");
    }
    if (name == "fibration") {
      sub->add_option("--mode", o.mode, "macro or micro")->check(CLI::IsMember({"macro", "micro"}));
      sub->add_option("--samples", o.samples, "Number of sample points")->check(CLI::PositiveNumber);
    }
    if (name == "strip" || name == "fibration") {
      sub->add_option("--scale", o.scale, "Strip width scale")->check(CLI::PositiveNumber);
    }
    sub->callback([&chosen, name = name] { chosen = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }
  return run(chosen, o);
}
