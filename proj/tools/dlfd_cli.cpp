// dlfd: batch front end over libdlfd.
//
// Exit codes: 0 positive / satisfied / found, 1 negative / violated / none
// found, 2 usage or I/O error, 3 resource limit.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "dlfd/dlfd.h"

namespace {

using nlohmann::json;

constexpr int kPositive = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;
constexpr int kLimit = 3;

struct Failure {
  int code;
};

using TermPtr = std::unique_ptr<dlfd_terminology, decltype(&dlfd_terminology_free)>;
using ModelPtr = std::unique_ptr<dlfd_model, decltype(&dlfd_model_free)>;
using TilingPtr = std::unique_ptr<dlfd_tiling, decltype(&dlfd_tiling_free)>;

// Takes ownership of a library string.
std::string take(char* s) {
  if (!s) return {};
  std::string out(s);
  dlfd_string_free(s);
  return out;
}

[[noreturn]] void die(const std::string& msg, int code = kUsage) {
  std::cerr << "dlfd: " << msg << "\n";
  throw Failure{code};
}

void check(dlfd_status s, const std::string& what) {
  if (s == DLFD_OK) return;
  die(what + ": " + dlfd_last_error());
}

std::string read_file(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path, std::ios::binary);
  if (!in) die("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) die("cannot write " + path);
}

// -o target or stdout.
void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    write_file(out_path, text);
  }
}

TermPtr load_terminology(const std::string& path) {
  const std::string text = read_file(path);
  dlfd_terminology* t = nullptr;
  check(dlfd_terminology_parse(text.c_str(), &t), path);
  return TermPtr(t, dlfd_terminology_free);
}

ModelPtr load_model(const std::string& path) {
  const std::string text = read_file(path);
  dlfd_model* m = nullptr;
  check(dlfd_model_read(text.c_str(), &m), path);
  return ModelPtr(m, dlfd_model_free);
}

TilingPtr load_tiling(const std::string& path) {
  const std::string text = read_file(path);
  dlfd_tiling* u = nullptr;
  check(dlfd_tiling_read(text.c_str(), &u), path);
  return TilingPtr(u, dlfd_tiling_free);
}

std::string model_text(const dlfd_model* m) {
  char* out = nullptr;
  check(dlfd_model_write(m, &out), "model");
  return take(out);
}

std::string render_set(const json& members) {
  std::string s = "{";
  for (std::size_t k = 0; k < members.size(); ++k) s += (k ? ", " : "") + std::to_string(members[k].get<long>());
  return s + "}";
}

std::string render_rows(const json& tiling) {
  std::string s;
  for (const auto& row : tiling.at("rows")) {
    std::string line;
    for (const auto& t : row) line += (line.empty() ? "" : " ") + t.get<std::string>();
    s += "  " + line + "\n";
  }
  return s;
}

// --- subcommands -----------------------------------------------------------

struct Common {
  bool json_out = false;
  bool timings = false;
  std::string out;
};

int run_check(const std::string& tpath, const std::string& mpath, bool default_empty, const Common& c) {
  auto t = load_terminology(tpath);
  auto m = load_model(mpath);
  int ok = 0;
  char* report = nullptr;
  check(dlfd_check(t.get(), m.get(), default_empty, &ok, &report), "check");
  const json j = json::parse(take(report));
  if (c.json_out) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::size_t bad = 0;
    for (const auto& a : j.at("axioms")) {
      const bool fine = a.at("status") == "satisfied";
      std::cout << (fine ? "ok   " : "FAIL ") << "[" << a.at("index").get<std::size_t>() << "] "
                << a.at("axiom").get<std::string>() << "\n";
      if (fine) continue;
      ++bad;
      const json& w = a.at("witness");
      std::cout << "     element " << w.at("x").get<long>() << " fails conjunct " << w.at("conjunct").get<long>();
      if (w.at("kind") == "pfd") {
        std::cout << "; element " << w.at("y").get<long>() << " agrees on the left paths "
                  << render_set(w.at("agreeing")) << " but the right path gives " << w.at("rhs_x").get<long>()
                  << " vs " << w.at("rhs_y").get<long>();
      }
      std::cout << "\n";
    }
    if (bad == 0) {
      std::cout << "satisfied (" << j.at("axioms").size() << " axioms)\n";
    } else {
      std::cout << "violated (" << bad << " of " << j.at("axioms").size() << " axioms)\n";
    }
  }
  return ok ? kPositive : kNegative;
}

int run_eval(const std::string& mpath, const std::string& concept_text, bool default_empty, const Common& c) {
  auto m = load_model(mpath);
  char* members = nullptr;
  check(dlfd_eval(m.get(), concept_text.c_str(), default_empty, &members), "eval");
  const json j = json::parse(take(members));
  std::cout << (c.json_out ? j.dump() : render_set(j)) << "\n";
  return kPositive;
}

int search_exit(dlfd_search_kind kind) {
  switch (kind) {
    case DLFD_MODEL_FOUND: return kPositive;
    case DLFD_NO_MODEL_UP_TO: return kNegative;
    case DLFD_RESOURCE_LIMIT: return kLimit;
  }
  return kLimit;
}

// Shared tail of find-model and refute.
int report_search(dlfd_search_kind kind, dlfd_model* raw_model, char* raw_report, const Common& c) {
  ModelPtr model(raw_model, dlfd_model_free);
  json report = json::parse(take(raw_report));
  std::string mtext = model ? model_text(model.get()) : "";
  const bool to_file = !c.out.empty() && c.out != "-";
  if (model && to_file) write_file(c.out, mtext);
  if (c.json_out) {
    if (model) report["model"] = json::parse(mtext);
    if (model && to_file) report["model_path"] = c.out;
    std::cout << report.dump(2) << "\n";
  } else if (model && !to_file) {
    std::cerr << report.at("summary").get<std::string>() << "\n";
    std::cout << mtext;
  } else {
    std::cout << report.at("summary").get<std::string>() << "\n";
    if (model) std::cout << "model written to " << c.out << "\n";
  }
  return search_exit(kind);
}

dlfd_search_options search_options(std::size_t min, std::size_t max, const Common& c) {
  dlfd_search_options o = dlfd_default_search_options();
  o.min_size = min;
  o.max_size = max;
  o.include_timings = c.timings;
  return o;
}

int run_find_model(const std::string& tpath, const std::string& goal, std::size_t min, std::size_t max,
                   const Common& c) {
  auto t = load_terminology(tpath);
  const dlfd_search_options o = search_options(min, max, c);
  dlfd_search_kind kind{};
  dlfd_model* m = nullptr;
  char* report = nullptr;
  check(dlfd_find_model(t.get(), goal.c_str(), &o, &kind, &m, &report), "find-model");
  return report_search(kind, m, report, c);
}

int run_refute(const std::string& tpath, const std::string& axiom, std::size_t min, std::size_t max,
               const Common& c) {
  auto t = load_terminology(tpath);
  const dlfd_search_options o = search_options(min, max, c);
  dlfd_search_kind kind{};
  dlfd_model* m = nullptr;
  char* report = nullptr;
  check(dlfd_refute(t.get(), axiom.c_str(), &o, &kind, &m, &report), "refute");
  return report_search(kind, m, report, c);
}

dlfd_reduction_mode parse_mode(const std::string& mode) {
  return mode == "desugared" ? DLFD_MODE_DESUGARED : DLFD_MODE_DIRECT;
}

int run_reduce(const std::string& upath, const std::string& mode, const Common& c) {
  auto u = load_tiling(upath);
  char* text = nullptr;
  check(dlfd_reduce(u.get(), parse_mode(mode), &text), "reduce");
  emit(c.out, take(text));
  return kPositive;
}

int run_tile(const std::string& upath, std::size_t max_dim, const Common& c) {
  auto u = load_tiling(upath);
  int found = 0;
  char* text = nullptr;
  check(dlfd_tile(u.get(), max_dim, &found, &text), "tile");
  const json j = json::parse(take(text));
  if (c.json_out) {
    emit(c.out, j.dump(2) + "\n");
  } else if (found) {
    emit(c.out, std::to_string(j.at("width").get<long>()) + "x" + std::to_string(j.at("height").get<long>()) +
                    " torus tiling:\n" + render_rows(j));
  } else {
    std::cout << "no torus tiling up to " << max_dim << "x" << max_dim << "\n";
  }
  return found ? kPositive : kNegative;
}

int run_witness(const std::string& upath, std::size_t max_dim, const std::string& mode, const Common& c) {
  auto u = load_tiling(upath);
  int found = 0;
  dlfd_model* raw = nullptr;
  char* text = nullptr;
  check(dlfd_witness(u.get(), max_dim, parse_mode(mode), &found, &raw, &text), "witness");
  ModelPtr m(raw, dlfd_model_free);
  take(text);
  if (!found) {
    std::cerr << "dlfd: no torus tiling up to " << max_dim << "x" << max_dim << "\n";
    return kNegative;
  }
  emit(c.out, model_text(m.get()));
  return kPositive;
}

int run_verify(const std::string& upath, std::size_t max_dim, std::size_t min, std::size_t max, const Common& c) {
  auto u = load_tiling(upath);
  const dlfd_search_options o = search_options(min, max, c);
  dlfd_verify_outcome outcome{};
  dlfd_model* raw = nullptr;
  char* text = nullptr;
  check(dlfd_verify(u.get(), max_dim, &o, &outcome, &raw, &text), "verify");
  ModelPtr witness(raw, dlfd_model_free);
  json report = json::parse(take(text));

  if (witness) {
    std::string path = c.out;
    if (path.empty()) path = std::filesystem::path(upath).stem().string() + ".witness.dlfdmodel";
    write_file(path, model_text(witness.get()));
    report["witness_path"] = path;
  }
  if (c.json_out) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << "outcome: " << report.at("outcome").get<std::string>() << "\n";
    for (const auto& n : report.at("notes")) std::cout << "  " << n.get<std::string>() << "\n";
    if (report.contains("witness_path")) std::cout << "witness: " << report.at("witness_path").get<std::string>() << "\n";
  }
  switch (outcome) {
    case DLFD_VERIFY_POSITIVE:
    case DLFD_VERIFY_MIXED: return kPositive;
    case DLFD_VERIFY_BOUNDED_NEGATIVE:
    case DLFD_VERIFY_WITNESS_REJECTED: return kNegative;
    case DLFD_VERIFY_RESOURCE_LIMIT: return kLimit;
  }
  return kLimit;
}

int run_export_dot(const std::string& mpath, bool hide_selfloops, const Common& c) {
  auto m = load_model(mpath);
  char* text = nullptr;
  check(dlfd_model_export_dot(m.get(), hide_selfloops, &text), "export-dot");
  emit(c.out, take(text));
  return kPositive;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DLFD finite-model workbench"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(dlfd_version()));

  Common common;
  std::string a, b, mode = "direct";
  bool default_empty = false, hide_selfloops = false;
  std::size_t min_size = 1, max_size = 12, max_dim = 8;

  auto add_json = [&](CLI::App* s) { s->add_flag("--json", common.json_out, "Machine-readable output"); };
  auto add_out = [&](CLI::App* s) { s->add_option("-o,--output", common.out, "Output file (default stdout)"); };
  auto add_bounds = [&](CLI::App* s, std::size_t default_max) {
    s->add_option("--min", min_size, "Smallest domain size")->capture_default_str();
    s->add_option("--max,--max-size", max_size, "Largest domain size")->default_val(default_max);
    s->add_flag("--timings", common.timings, "Include wall-clock times in JSON reports");
  };
  auto add_mode = [&](CLI::App* s) {
    s->add_option("--mode", mode, "Reduction mode")->check(CLI::IsMember({"direct", "desugared"}))->capture_default_str();
  };

  auto* check_cmd = app.add_subcommand("check", "Check a model against a terminology");
  check_cmd->add_option("terminology", a, ".dlfd file")->required();
  check_cmd->add_option("model", b, ".dlfdmodel file")->required();
  check_cmd->add_flag("--default-empty-concepts", default_empty, "Treat missing concepts as empty");
  add_json(check_cmd);

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a concept in a model");
  eval_cmd->add_option("model", a, ".dlfdmodel file")->required();
  eval_cmd->add_option("concept", b, "Concept text")->required();
  eval_cmd->add_flag("--default-empty-concepts", default_empty, "Treat missing concepts as empty");
  add_json(eval_cmd);

  auto* find_cmd = app.add_subcommand("find-model", "Search for a finite model with a nonempty goal");
  find_cmd->add_option("terminology", a, ".dlfd file")->required();
  find_cmd->add_option("goal", b, "Goal concept")->required();
  add_bounds(find_cmd, 12);
  add_json(find_cmd);
  add_out(find_cmd);

  auto* refute_cmd = app.add_subcommand("refute", "Search for a finite countermodel to an inclusion");
  refute_cmd->add_option("terminology", a, ".dlfd file")->required();
  refute_cmd->add_option("axiom", b, "Inclusion such as 'X & T_t <= Bot'")->required();
  add_bounds(refute_cmd, 12);
  add_json(refute_cmd);
  add_out(refute_cmd);

  auto* reduce_cmd = app.add_subcommand("reduce", "Translate a tiling problem to a terminology");
  reduce_cmd->add_option("tiles", a, ".tiles file")->required();
  add_mode(reduce_cmd);
  add_out(reduce_cmd);

  auto* tile_cmd = app.add_subcommand("tile", "Solve a tiling problem on small tori");
  tile_cmd->add_option("tiles", a, ".tiles file")->required();
  tile_cmd->add_option("--max-dim", max_dim, "Largest torus side")->capture_default_str();
  add_json(tile_cmd);
  add_out(tile_cmd);

  auto* witness_cmd = app.add_subcommand("witness", "Build the torus model of a tiling");
  witness_cmd->add_option("tiles", a, ".tiles file")->required();
  witness_cmd->add_option("--max-dim", max_dim, "Largest torus side")->capture_default_str();
  add_mode(witness_cmd);
  add_out(witness_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "Run both directions of the reduction on one instance");
  verify_cmd->add_option("tiles", a, ".tiles file")->required();
  verify_cmd->add_option("--max-dim", max_dim, "Largest torus side")->default_val(4);
  add_bounds(verify_cmd, 6);
  add_json(verify_cmd);
  add_out(verify_cmd);

  auto* dot_cmd = app.add_subcommand("export-dot", "Render a model as a Graphviz graph");
  dot_cmd->add_option("model", a, ".dlfdmodel file")->required();
  dot_cmd->add_flag("--hide-selfloops", hide_selfloops, "Omit x -f-> x edges");
  add_out(dot_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*check_cmd) return run_check(a, b, default_empty, common);
    if (*eval_cmd) return run_eval(a, b, default_empty, common);
    if (*find_cmd) return run_find_model(a, b, min_size, max_size, common);
    if (*refute_cmd) return run_refute(a, b, min_size, max_size, common);
    if (*reduce_cmd) return run_reduce(a, mode, common);
    if (*tile_cmd) return run_tile(a, max_dim, common);
    if (*witness_cmd) return run_witness(a, max_dim, mode, common);
    if (*verify_cmd) return run_verify(a, max_dim, min_size, max_size, common);
    if (*dot_cmd) return run_export_dot(a, hide_selfloops, common);
  } catch (const Failure& f) {
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "dlfd: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
