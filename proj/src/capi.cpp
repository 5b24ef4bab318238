#include "dlfd/dlfd.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "dlfd/finder.hpp"
#include "dlfd/model_io.hpp"
#include "dlfd/parser.hpp"
#include "dlfd/tiling.hpp"

struct dlfd_terminology {
  dlfd::Terminology value;
};

struct dlfd_model {
  dlfd::FiniteInterpretation value;
};

struct dlfd_tiling {
  dlfd::TilingInstance value;
};

namespace {

using nlohmann::json;

thread_local std::string g_last_error;

dlfd_status fail(dlfd_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

// Every entry point funnels exceptions through here so nothing crosses the
// C boundary.
template <class F>
dlfd_status guarded(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const dlfd::ParseError& e) {
    return fail(DLFD_ERR_PARSE, e.what());
  } catch (const dlfd::ModelFormatError& e) {
    return fail(DLFD_ERR_PARSE, e.what());
  } catch (const dlfd::UnknownNameError& e) {
    return fail(DLFD_ERR_UNKNOWN_NAME, e.what());
  } catch (const dlfd::EnumerationLimitError& e) {
    return fail(DLFD_ERR_LIMIT, e.what());
  } catch (const std::invalid_argument& e) {
    // InterpretationError and TilingError land here too.
    return fail(DLFD_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(DLFD_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(DLFD_ERR_INTERNAL, "unknown error");
  }
}

#define REQUIRE(cond, what) \
  if (!(cond)) return fail(DLFD_ERR_INVALID_ARGUMENT, what)

dlfd::SearchBounds bounds_from(const dlfd_search_options* opts) {
  const dlfd_search_options o = opts ? *opts : dlfd_default_search_options();
  dlfd::SearchBounds b;
  b.min_size = o.min_size;
  b.max_size = o.max_size;
  if (o.node_limit) b.per_size_node_limit = o.node_limit;
  if (auto env = dlfd::node_limit_from_env()) b.per_size_node_limit = env;
  b.validate();
  return b;
}

dlfd_search_kind kind_of(const dlfd::SearchOutcome& o) {
  switch (o.kind) {
    case dlfd::SearchOutcome::Kind::model_found: return DLFD_MODEL_FOUND;
    case dlfd::SearchOutcome::Kind::no_model_up_to: return DLFD_NO_MODEL_UP_TO;
    case dlfd::SearchOutcome::Kind::resource_limit: return DLFD_RESOURCE_LIMIT;
  }
  return DLFD_RESOURCE_LIMIT;
}

dlfd::ReductionMode mode_of(dlfd_reduction_mode m) {
  return m == DLFD_MODE_DESUGARED ? dlfd::ReductionMode::desugared : dlfd::ReductionMode::direct;
}

json witness_json(const dlfd::ViolationWitness& w) {
  json j{{"kind", w.kind == dlfd::ViolationWitness::Kind::pfd ? "pfd" : "simple"},
         {"x", w.x},
         {"conjunct", w.conjunct}};
  if (w.kind == dlfd::ViolationWitness::Kind::pfd) {
    j["y"] = w.y;
    j["agreeing"] = w.agreeing;
    j["rhs_x"] = w.rhs_x;
    j["rhs_y"] = w.rhs_y;
  }
  return j;
}

dlfd_status finish_search(const dlfd::SearchOutcome& o, const dlfd_search_options* opts, dlfd_search_kind* kind,
                          dlfd_model** model, char** report_json) {
  json report = dlfd::search_report_json(o, opts && opts->include_timings);
  char* text = report_json ? dup(report.dump(2)) : nullptr;
  if (model && o.model) *model = new dlfd_model{*o.model};
  *kind = kind_of(o);
  if (report_json) *report_json = text;
  return DLFD_OK;
}

}  // namespace

extern "C" {

const char* dlfd_version(void) { return "0.1.0"; }

const char* dlfd_last_error(void) { return g_last_error.c_str(); }

void dlfd_string_free(char* s) { std::free(s); }

dlfd_search_options dlfd_default_search_options(void) {
  dlfd_search_options o;
  o.min_size = 1;
  o.max_size = 12;
  o.node_limit = 0;
  o.include_timings = 0;
  return o;
}

dlfd_status dlfd_terminology_parse(const char* text, dlfd_terminology** out) {
  REQUIRE(text && out, "null argument");
  return guarded([&] {
    *out = new dlfd_terminology{dlfd::parse_terminology(text)};
    return DLFD_OK;
  });
}

void dlfd_terminology_free(dlfd_terminology* t) { delete t; }

size_t dlfd_terminology_size(const dlfd_terminology* t) { return t ? t->value.axioms.size() : 0; }

dlfd_status dlfd_terminology_render(const dlfd_terminology* t, char** out) {
  REQUIRE(t && out, "null argument");
  return guarded([&] {
    *out = dup(dlfd::render_terminology(t->value));
    return DLFD_OK;
  });
}

dlfd_status dlfd_model_read(const char* text, dlfd_model** out) {
  REQUIRE(text && out, "null argument");
  return guarded([&] {
    *out = new dlfd_model{dlfd::read_model(text)};
    return DLFD_OK;
  });
}

void dlfd_model_free(dlfd_model* m) { delete m; }

size_t dlfd_model_size(const dlfd_model* m) { return m ? m->value.size() : 0; }

dlfd_status dlfd_model_write(const dlfd_model* m, char** out) {
  REQUIRE(m && out, "null argument");
  return guarded([&] {
    *out = dup(dlfd::write_model(m->value));
    return DLFD_OK;
  });
}

dlfd_status dlfd_model_export_dot(const dlfd_model* m, int hide_selfloops, char** out) {
  REQUIRE(m && out, "null argument");
  return guarded([&] {
    *out = dup(dlfd::export_dot(m->value, dlfd::DotOptions{hide_selfloops != 0}));
    return DLFD_OK;
  });
}

dlfd_status dlfd_check(const dlfd_terminology* t, const dlfd_model* m, int default_empty_concepts, int* satisfied,
                       char** report_json) {
  REQUIRE(t && m && satisfied, "null argument");
  return guarded([&] {
    const dlfd::EvalOptions opts{default_empty_concepts != 0};
    const dlfd::CheckReport rep = dlfd::check_terminology(m->value, t->value, opts);
    if (report_json) {
      json axioms = json::array();
      for (std::size_t k = 0; k < rep.statuses.size(); ++k) {
        std::string text = dlfd::render(t->value.axioms[k]);
        while (!text.empty() && text.back() == '\n') text.pop_back();
        json a{{"index", k}, {"axiom", text}, {"status", rep.statuses[k] ? "violated" : "satisfied"}};
        if (rep.statuses[k]) a["witness"] = witness_json(*rep.statuses[k]);
        axioms.push_back(std::move(a));
      }
      json j{{"satisfied", rep.satisfied}, {"domain_size", m->value.size()}, {"axioms", std::move(axioms)}};
      *report_json = dup(j.dump(2));
    }
    *satisfied = rep.satisfied ? 1 : 0;
    return DLFD_OK;
  });
}

dlfd_status dlfd_eval(const dlfd_model* m, const char* concept_text, int default_empty_concepts,
                      char** members_json) {
  REQUIRE(m && concept_text && members_json, "null argument");
  return guarded([&] {
    const dlfd::RhsConcept c = dlfd::parse_rhs_concept(concept_text);
    const dlfd::ElementSet s = dlfd::eval_concept(m->value, c, dlfd::EvalOptions{default_empty_concepts != 0});
    *members_json = dup(json(dlfd::members(s)).dump());
    return DLFD_OK;
  });
}

dlfd_status dlfd_find_model(const dlfd_terminology* t, const char* goal_text, const dlfd_search_options* opts,
                            dlfd_search_kind* kind, dlfd_model** model, char** report_json) {
  REQUIRE(t && goal_text && kind, "null argument");
  return guarded([&] {
    const dlfd::Concept goal = dlfd::parse_concept(goal_text);
    const dlfd::SearchOutcome o = dlfd::find_model_iter(t->value, goal, bounds_from(opts));
    return finish_search(o, opts, kind, model, report_json);
  });
}

dlfd_status dlfd_refute(const dlfd_terminology* t, const char* axiom_text, const dlfd_search_options* opts,
                        dlfd_search_kind* kind, dlfd_model** model, char** report_json) {
  REQUIRE(t && axiom_text && kind, "null argument");
  return guarded([&] {
    const dlfd::Axiom a = dlfd::parse_axiom(axiom_text);
    const dlfd::SearchOutcome o = dlfd::refute_bounded(t->value, a, bounds_from(opts));
    return finish_search(o, opts, kind, model, report_json);
  });
}

dlfd_status dlfd_tiling_read(const char* text, dlfd_tiling** out) {
  REQUIRE(text && out, "null argument");
  try {
    *out = new dlfd_tiling{dlfd::read_tiling_instance(text)};
    g_last_error.clear();
    return DLFD_OK;
  } catch (const dlfd::TilingError& e) {
    // Both malformed JSON and a bad problem come through as TilingError.
    return fail(DLFD_ERR_PARSE, e.what());
  } catch (const std::exception& e) {
    return fail(DLFD_ERR_INTERNAL, e.what());
  }
}

void dlfd_tiling_free(dlfd_tiling* u) { delete u; }

dlfd_status dlfd_reduce(const dlfd_tiling* u, dlfd_reduction_mode mode, char** out) {
  REQUIRE(u && out, "null argument");
  return guarded([&] {
    const dlfd::Reduction r = dlfd::reduce_to_terminology(u->value.problem, u->value.t0, mode_of(mode));
    std::string text = dlfd::render_terminology(r.terminology);
    text += "# goal: " + dlfd::render(r.goal) + "\n";
    *out = dup(text);
    return DLFD_OK;
  });
}

dlfd_status dlfd_tile(const dlfd_tiling* u, size_t max_dim, int* found, char** tiling_json) {
  REQUIRE(u && found, "null argument");
  return guarded([&] {
    const auto s = dlfd::solve_torus_upto(u->value.problem, u->value.t0, max_dim);
    if (tiling_json) *tiling_json = dup((s ? dlfd::tiling_to_json(*s) : json(nullptr)).dump(2));
    *found = s ? 1 : 0;
    return DLFD_OK;
  });
}

dlfd_status dlfd_witness(const dlfd_tiling* u, size_t max_dim, dlfd_reduction_mode mode, int* found,
                         dlfd_model** model, char** tiling_json) {
  REQUIRE(u && found && model, "null argument");
  return guarded([&] {
    const auto s = dlfd::solve_torus_upto(u->value.problem, u->value.t0, max_dim);
    if (!s) {
      if (tiling_json) *tiling_json = dup(json(nullptr).dump());
      *found = 0;
      return DLFD_OK;
    }
    const bool odd = s->width % 2 != 0 || s->height % 2 != 0;
    const dlfd::TorusTiling even = odd ? dlfd::double_tiling(*s) : *s;
    auto* m = new dlfd_model{dlfd::build_torus_witness(u->value.problem, even, mode_of(mode))};
    if (tiling_json) *tiling_json = dup(dlfd::tiling_to_json(even).dump(2));
    *model = m;
    *found = 1;
    return DLFD_OK;
  });
}

dlfd_status dlfd_verify(const dlfd_tiling* u, size_t max_dim, const dlfd_search_options* opts,
                        dlfd_verify_outcome* outcome, dlfd_model** witness, char** report_json) {
  REQUIRE(u && outcome, "null argument");
  return guarded([&] {
    const dlfd::VerificationReport r =
        dlfd::verify_reduction_instance(u->value.problem, u->value.t0, max_dim, bounds_from(opts));
    char* text =
        report_json ? dup(dlfd::verification_report_json(r, opts && opts->include_timings).dump(2)) : nullptr;
    if (witness && r.witness) *witness = new dlfd_model{*r.witness};
    *outcome = static_cast<dlfd_verify_outcome>(r.outcome);
    if (report_json) *report_json = text;
    return DLFD_OK;
  });
}

}  // extern "C"
