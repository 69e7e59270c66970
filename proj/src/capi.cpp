#include "adsgeom.h"

#include <new>
#include <string>
#include <vector>

#include "adsg/commands.hpp"
#include "adsg/errors.hpp"

struct adsg_element {
  adsg::GroupElement g;
};

struct adsg_surface {
  adsg::SchottkyGroup s;
};

struct adsg_report {
  std::string json;
  std::vector<std::pair<std::string, std::string>> artifacts;
};

namespace {

thread_local std::string last_error;

adsg_status fail(adsg_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

// Runs body, translating exceptions to status codes.
template <class F>
adsg_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return ADSG_OK;
  } catch (const adsg::Error& e) {
    return fail(static_cast<adsg_status>(static_cast<int>(e.code())), e.what());
  } catch (const adsg::InputError& e) {
    return fail(ADSG_ERR_INPUT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(ADSG_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(ADSG_ERR_INTERNAL, e.what());
  }
}

adsg_status null_arg(const char* what) {
  return fail(ADSG_ERR_INPUT, std::string("null argument: ") + what);
}

adsg_delta_kind kind_of(const adsg::LorentzDistance& d) {
  switch (d.kind) {
    case adsg::LorentzDistance::Kind::Real: return ADSG_DELTA_REAL;
    case adsg::LorentzDistance::Kind::Imaginary: return ADSG_DELTA_IMAGINARY;
    case adsg::LorentzDistance::Kind::Zero: return ADSG_DELTA_ZERO;
  }
  return ADSG_DELTA_ZERO;
}

}  // namespace

extern "C" {

const char* adsg_version(void) { return adsg::library_version(); }

const char* adsg_last_error(void) { return last_error.c_str(); }

const char* adsg_status_name(adsg_status s) {
  switch (s) {
    case ADSG_OK: return "Ok";
    case ADSG_ERR_INTERNAL: return "Internal";
    case ADSG_ERR_INPUT: return "InputError";
    default: break;
  }
  const int v = static_cast<int>(s);
  if (v >= 10 && v <= 23) return adsg::error_code_name(static_cast<adsg::ErrorCode>(v));
  return "Unknown";
}

adsg_status adsg_element_new(double a, double b, double c, double d, adsg_element** out) {
  if (!out) return null_arg("out");
  return guarded([&] { *out = new adsg_element{adsg::GroupElement::from_entries(a, b, c, d)}; });
}

void adsg_element_free(adsg_element* g) { delete g; }

adsg_status adsg_element_entries(const adsg_element* g, double out[4]) {
  if (!g || !out) return null_arg("element or out");
  out[0] = g->g.a();
  out[1] = g->g.b();
  out[2] = g->g.c();
  out[3] = g->g.d();
  return ADSG_OK;
}

adsg_status adsg_element_multiply(const adsg_element* g, const adsg_element* h, adsg_element** out) {
  if (!g || !h || !out) return null_arg("element or out");
  return guarded([&] { *out = new adsg_element{g->g * h->g}; });
}

adsg_status adsg_classify(const adsg_element* g, adsg_isometry_class* out) {
  if (!g || !out) return null_arg("element or out");
  return guarded([&] { *out = static_cast<adsg_isometry_class>(static_cast<int>(adsg::classify(g->g))); });
}

adsg_status adsg_translation_length(const adsg_element* g, double* out) {
  if (!g || !out) return null_arg("element or out");
  return guarded([&] { *out = adsg::translation_length(g->g); });
}

adsg_status adsg_delta(const adsg_element* a, const adsg_element* b, adsg_delta_kind* kind, double* value) {
  if (!a || !b || !kind || !value) return null_arg("element or out");
  return guarded([&] {
    const adsg::LorentzDistance d = adsg::delta_trace(a->g, b->g);
    *kind = kind_of(d);
    *value = d.value;
  });
}

adsg_status adsg_delta_crossratio(const adsg_element* a, const adsg_element* b, adsg_delta_kind* kind,
                                  double* value) {
  if (!a || !b || !kind || !value) return null_arg("element or out");
  return guarded([&] {
    const adsg::LorentzDistance d = adsg::delta_crossratio(a->g, b->g);
    *kind = kind_of(d);
    *value = d.value;
  });
}

adsg_status adsg_surface_new(adsg_surface_kind kind, const double* lengths, size_t n, adsg_surface** out) {
  if (!out || (!lengths && n > 0)) return null_arg("lengths or out");
  return guarded([&] {
    const auto type = kind == ADSG_PANTS ? adsg::SurfaceType::Pants : adsg::SurfaceType::OneHoledTorus;
    *out = new adsg_surface{adsg::schottky_fuchsian(type, std::vector<double>(lengths, lengths + n))};
  });
}

void adsg_surface_free(adsg_surface* s) { delete s; }

adsg_status adsg_surface_generator(const adsg_surface* s, int index, adsg_element** out) {
  if (!s || !out) return null_arg("surface or out");
  if (index < 0 || index >= s->s.j.rank()) return fail(ADSG_ERR_BAD_INDEX, "generator index out of range");
  return guarded([&] { *out = new adsg_element{s->s.j.generators[index]}; });
}

adsg_status adsg_surface_margin(const adsg_surface* s, double* out) {
  if (!s || !out) return null_arg("surface or out");
  *out = s->s.certificate.margin;
  return ADSG_OK;
}

adsg_status adsg_run_command(const char* command, const char* config_json, adsg_report** out) {
  if (!command || !config_json || !out) return null_arg("command, config or out");
  *out = nullptr;
  adsg::Json config;
  const adsg_status parsed = guarded([&] {
    config = adsg::Json::parse(config_json);
  });
  if (parsed != ADSG_OK) return fail(ADSG_ERR_INPUT, "config is not valid JSON: " + last_error);
  adsg::CommandResult res;
  const adsg_status st = guarded([&] { res = adsg::run_command(command, config); });
  if (st != ADSG_OK) {
    const std::string msg = last_error;
    res.report = adsg::error_report(command, config, adsg_status_name(st), static_cast<int>(st), msg);
    res.artifacts.clear();
  }
  const adsg_status built = guarded([&] {
    *out = new adsg_report{res.report.dump(2), std::move(res.artifacts)};
  });
  if (built != ADSG_OK) return built;
  if (st != ADSG_OK) last_error = res.report["error"]["message"].get<std::string>();
  return st;
}

void adsg_report_free(adsg_report* r) { delete r; }

const char* adsg_report_json(const adsg_report* r) { return r ? r->json.c_str() : ""; }

size_t adsg_report_artifact_count(const adsg_report* r) { return r ? r->artifacts.size() : 0; }

adsg_status adsg_report_artifact(const adsg_report* r, size_t i, const char** name, const char** content) {
  if (!r || !name || !content) return null_arg("report, name or content");
  if (i >= r->artifacts.size()) return fail(ADSG_ERR_BAD_INDEX, "artifact index out of range");
  *name = r->artifacts[i].first.c_str();
  *content = r->artifacts[i].second.c_str();
  return ADSG_OK;
}

}  // extern "C"
