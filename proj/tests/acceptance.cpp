// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Sample counts and time limits are fixed here, not taken from the command line.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "dlfd/finder.hpp"
#include "dlfd/parser.hpp"
#include "dlfd/tiling.hpp"
#include "dlfd/transform.hpp"
#include "support.hpp"

using namespace dlfd;
using dlfd::testing::Rng;
using dlfd::testing::Vocab;
using dlfd::testing::pick;

namespace {

struct Verdict {
  bool ok = true;
  std::string detail;
};

// Records the first failure only; later ones would mostly repeat it.
struct Tally {
  bool ok = true;
  std::string first;
  void fail(const std::string& why) {
    if (ok) first = why;
    ok = false;
  }
  void expect(bool cond, const std::string& why) {
    if (!cond) fail(why);
  }
};

ElementSet set_and(const ElementSet& a, const ElementSet& b) {
  ElementSet r(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) r[x] = a[x] && b[x];
  return r;
}

SearchScope scope_of(const Vocab& v) {
  SearchScope s;
  for (const auto& c : v.concepts) s.extra.concepts.insert(ConceptName(c));
  for (const auto& f : v.features) s.extra.features.insert(FeatureName(f));
  return s;
}

SearchBounds upto(std::size_t max) {
  SearchBounds b;
  b.max_size = max;
  return b;
}

// 1 ------------------------------------------------------------------------

constexpr int kSemanticsSamples = 1200;
constexpr double kSemanticsLimit = 30.0;

Verdict semantics_suite() {
  Rng rng(101);
  const Vocab v{{"A", "B", "C"}, {"f", "g"}};
  Tally t;
  std::size_t checks = 0;
  for (int k = 0; k < kSemanticsSamples && t.ok; ++k) {
    const std::size_t n = 1 + pick(rng, 5);
    // S holds a single element so the vacuity check has a one-element D.
    FiniteInterpretation i = dlfd::testing::random_interpretation(rng, v, n);
    const Element x0 = static_cast<Element>(pick(rng, n));
    ConceptExtents exts = i.concept_lists();
    exts[ConceptName("S")] = {x0};
    i = build_interpretation(n, i.features(), exts);

    const Concept a = dlfd::testing::random_concept(rng, v, 2, false);
    const Concept b = dlfd::testing::random_concept(rng, v, 2, false);
    const ElementSet ea = eval_concept(i, a), eb = eval_concept(i, b);
    const std::string where = "sample " + std::to_string(k);

    t.expect(eval_concept(i, Concept::conj(a, b)) == set_and(ea, eb), where + ": intersection");
    ElementSet comp(n);
    for (std::size_t x = 0; x < n; ++x) comp[x] = !ea[x];
    t.expect(eval_concept(i, Concept::neg(a)) == comp, where + ": complement");
    for (const auto& f : v.features) {
      const auto& table = i.table(FeatureName(f));
      ElementSet vr(n);
      for (std::size_t x = 0; x < n; ++x) vr[x] = ea[table[x]];
      t.expect(eval_concept(i, Concept::all(FeatureName(f), a)) == vr, where + ": value restriction");
    }

    const ElementSet all(n, true);
    const std::vector<PathExpr> lhs{dlfd::testing::random_path(rng, v, 2)};
    const PathExpr rhs = dlfd::testing::random_path(rng, v, 2);

    // Only y = x itself can be compared against, so x0 is always a member.
    t.expect(eval_pfd(i, Pfd{Concept::primitive("S"), lhs, rhs})[x0], where + ": reflexive vacuity");
    t.expect(is_subset(eval_pfd(i, Pfd{a, lhs, rhs}), eval_pfd(i, Pfd{Concept::conj(a, b), lhs, rhs})),
             where + ": anti-monotonicity");
    t.expect(eval_pfd(i, Pfd{Concept::conj(a, Concept::neg(a)), lhs, rhs}) == all, where + ": empty quantifier");
    t.expect(eval_pfd(i, Pfd{a, {rhs}, rhs}) == all, where + ": fd(D : p -> p)");

    // The same PFD by the definition, pair by pair.
    ElementSet direct(n);
    for (std::size_t x = 0; x < n; ++x) {
      bool in = true;
      for (std::size_t y = 0; y < n && in; ++y) {
        if (!ea[y]) continue;
        const bool agree = eval_path(i, lhs[0], x) == eval_path(i, lhs[0], y);
        if (agree && eval_path(i, rhs, x) != eval_path(i, rhs, y)) in = false;
      }
      direct[x] = in;
    }
    t.expect(eval_pfd(i, Pfd{a, lhs, rhs}) == direct, where + ": pfd membership");
    checks += 9 + v.features.size();
  }
  return {t.ok, t.ok ? std::to_string(kSemanticsSamples) + " interpretations, " + std::to_string(checks) + " checks"
                     : t.first};
}

// 2 ------------------------------------------------------------------------

constexpr int kOracleSamples = 600;
constexpr double kOracleLimit = 300.0;

Verdict finder_oracle() {
  Rng rng(202);
  const Vocab v{{"A", "B"}, {"f"}};
  const SearchScope scope = scope_of(v);
  Tally t;
  std::size_t sat = 0, unsat = 0;
  for (int k = 0; k < kOracleSamples && t.ok; ++k) {
    const Terminology term = dlfd::testing::random_terminology(rng, v, 3, 2, 2);
    const Concept goal = dlfd::testing::random_concept(rng, v, 1, false);
    for (std::size_t n = 1; n <= 3; ++n) {
      const auto found = find_model(term, goal, n, std::nullopt, scope);
      const auto models = enumerate_all(term, goal, n, scope);
      if (found.has_value() != !models.empty()) {
        t.fail("disagreement at n=" + std::to_string(n) + " on: " + render_terminology(term));
        break;
      }
      if (found && std::find(models.begin(), models.end(), *found) == models.end()) {
        t.fail("finder model not among enumerated models at n=" + std::to_string(n));
        break;
      }
      (found ? sat : unsat)++;
    }
  }
  return {t.ok, t.ok ? std::to_string(kOracleSamples) + " terminologies, " + std::to_string(sat) + " sat / " +
                           std::to_string(unsat) + " unsat cases"
                     : t.first};
}

// 3 ------------------------------------------------------------------------

constexpr double kStrengtheningLimit = 120.0;

Verdict strengthening() {
  const Terminology original = parse_terminology("A <= fd(B : f -> h);");
  const Terminology triple = desugar_asymmetric_pfds(original);
  const Axiom forward = parse_axiom("A <= fd(B : f -> h)");
  const Axiom backward = parse_axiom("B <= fd(A : f -> h)");
  const Vocab v{{"A", "B", "_u_A_B"}, {"f", "h"}};
  Tally t;
  t.expect(triple.size() == 3, "desugaring did not produce three axioms");
  std::size_t models = 0;
  for (std::size_t n = 1; n <= 3 && t.ok; ++n) {
    for (const auto& m : enumerate_all(triple, Concept::top(), n, scope_of(v))) {
      ++models;
      if (check_axiom(m, forward) || check_axiom(m, backward)) {
        t.fail("counterexample of size " + std::to_string(n));
        break;
      }
    }
  }
  t.expect(models > 0, "no models enumerated");
  return {t.ok, t.ok ? std::to_string(models) + " models, 0 counterexamples" : t.first};
}

// 4 ------------------------------------------------------------------------

constexpr double kPositiveLimit = 10.0;

Verdict positive_end_to_end() {
  Tally t;
  std::ostringstream detail;
  const std::vector<std::pair<TilingProblem, std::string>> cases{{dlfd::testing::one_tile(), "t"},
                                                                  {dlfd::testing::swap_ab(), "a"}};
  for (const auto& [u, t0] : cases) {
    const auto s = solve_torus_upto(u, t0, 4);
    if (!s) {
      t.fail("no tiling found for t0=" + t0);
      continue;
    }
    const TorusTiling d = double_tiling(*s);
    for (auto mode : {ReductionMode::direct, ReductionMode::desugared}) {
      const Reduction r = reduce_to_terminology(u, t0, mode);
      const FiniteInterpretation w = build_torus_witness(u, d, mode);
      const std::string tag = t0 + "/" + to_string(mode);
      t.expect(w.size() == 4 * d.width * d.height, tag + ": wrong witness size");
      t.expect(check_terminology(w, r.terminology).satisfied, tag + ": witness fails the terminology");
      t.expect(!is_empty(eval_concept(w, r.goal)), tag + ": goal is empty");
    }
    detail << u.tiles.size() << "-tile " << d.width << "x" << d.height << " witness of "
           << 4 * d.width * d.height << "; ";
  }
  return {t.ok, t.ok ? detail.str() + "both modes" : t.first};
}

// 5 ------------------------------------------------------------------------

constexpr double kNegativeLimit = 600.0;

Verdict negative_bounded() {
  Tally t;
  const TilingProblem u = dlfd::testing::empty_h();
  t.expect(!solve_torus_upto(u, "t", 4), "a tiling was found");
  const Reduction r = reduce_to_terminology(u, "t", ReductionMode::direct);
  const SearchOutcome o = refute_bounded(r.terminology, Axiom{r.goal, RhsConcept::plain(Concept::bot())}, upto(6));
  t.expect(o.kind == SearchOutcome::Kind::no_model_up_to, std::string("finder returned ") + to_string(o.kind));
  t.expect(o.size == 6, "bound reached is " + std::to_string(o.size));
  t.expect(o.summary().find("bounded evidence") != std::string::npos, "summary lacks the bounded-evidence label");
  t.expect(search_report_json(o).value("bounded_evidence_only", false), "report lacks bounded_evidence_only");
  return {t.ok, t.ok ? o.summary() : t.first};
}

// 6 ------------------------------------------------------------------------

constexpr double kPigeonholeLimit = 300.0;
constexpr int kPigeonholeExtras = 150;

bool pigeonhole_holds(const FiniteInterpretation& m, std::string& why) {
  const ElementSet& x = *m.extent(ConceptName("X"));
  const ElementSet& a = *m.extent(ConceptName("A"));
  if (count(x) != count(a)) {
    why = "|X| = " + std::to_string(count(x)) + " but |A| = " + std::to_string(count(a));
    return false;
  }
  const auto& f = m.table(FeatureName("f"));
  ElementSet hit(m.size());
  for (Element e : members(a)) hit[f[e]] = true;
  for (Element e : members(x))
    if (!hit[e]) {
      why = "X element " + std::to_string(e) + " has no incoming f from A";
      return false;
    }
  return true;
}

Verdict pigeonhole() {
  const Terminology block = parse_terminology(
      "X <= all a . A & fd(X : a -> id);\n"
      "A <= all f . X & fd(A : f -> id);\n");
  const Vocab v{{"X", "A", "B"}, {"a", "f", "g"}};
  std::vector<FiniteInterpretation> corpus;

  for (const char* g : {"X", "A", "X & B", "A & ~B"}) {
    const SearchOutcome o = find_model_iter(block, parse_concept(g), upto(6), scope_of(v));
    if (o.model) corpus.push_back(*o.model);
  }
  Rng rng(606);
  for (int k = 0; k < kPigeonholeExtras; ++k) {
    Terminology t = block;
    const Terminology extra = dlfd::testing::random_terminology(rng, v, 2, 2, 1);
    t.axioms.insert(t.axioms.end(), extra.axioms.begin(), extra.axioms.end());
    const Concept goal = Concept::conj(Concept::primitive("X"), dlfd::testing::random_concept(rng, v, 1, false));
    const SearchOutcome o = find_model_iter(t, goal, upto(5), scope_of(v));
    if (o.model) corpus.push_back(*o.model);
  }
  for (const auto& [u, t0] : std::vector<std::pair<TilingProblem, std::string>>{{dlfd::testing::one_tile(), "t"},
                                                                               {dlfd::testing::swap_ab(), "a"}}) {
    for (auto mode : {ReductionMode::direct, ReductionMode::desugared}) {
      const Reduction r = reduce_to_terminology(u, t0, mode);
      for (std::size_t n = 4; n <= 8; ++n)
        if (auto m = find_model(r.terminology, r.goal, n)) corpus.push_back(*m);
      if (auto s = solve_torus_upto(u, t0, 4)) corpus.push_back(build_torus_witness(u, double_tiling(*s), mode));
    }
  }

  Tally t;
  t.expect(!corpus.empty(), "empty corpus");
  std::size_t k = 0;
  for (const auto& m : corpus) {
    std::string why;
    if (!pigeonhole_holds(m, why)) t.fail("model " + std::to_string(k) + " (size " + std::to_string(m.size()) + "): " + why);
    ++k;
  }
  return {t.ok, t.ok ? std::to_string(corpus.size()) + " models, 0 violations" : t.first};
}

// 7 ------------------------------------------------------------------------

constexpr double kRoundTripLimit = 30.0;
constexpr int kRoundTripRandom = 500;

Verdict determinism_round_trip() {
  Tally t;
  std::vector<Terminology> corpus;
  std::size_t generated = 0;
  for (const auto& [u, t0] : std::vector<std::pair<TilingProblem, std::string>>{
           {dlfd::testing::one_tile(), "t"}, {dlfd::testing::swap_ab(), "a"}, {dlfd::testing::empty_h(), "t"}}) {
    for (auto mode : {ReductionMode::direct, ReductionMode::desugared}) {
      const std::string first = render_terminology(reduce_to_terminology(u, t0, mode).terminology);
      const std::string second = render_terminology(reduce_to_terminology(u, t0, mode).terminology);
      t.expect(first == second, "reduce output differs between runs");
      corpus.push_back(parse_terminology(first));
      ++generated;
    }
  }
  Rng rng(707);
  const Vocab v{{"A", "B", "C'", "_u_A_B"}, {"f", "g", "h'"}};
  for (int k = 0; k < kRoundTripRandom; ++k) corpus.push_back(dlfd::testing::random_terminology(rng, v, 4, 3, 3));

  for (const auto& term : corpus) {
    const std::string text = render_terminology(term);
    const Terminology back = parse_terminology(text);
    t.expect(back == term, "parse(render(T)) != T for:\n" + text);
    t.expect(render_terminology(back) == text, "render(parse(text)) != text for:\n" + text);
  }
  return {t.ok, t.ok ? std::to_string(corpus.size()) + " terminologies (" + std::to_string(generated) +
                           " generated reductions)"
                     : t.first};
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Verdict()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "semantics conformance", kSemanticsLimit, semantics_suite},
      {2, "finder agrees with enumeration", kOracleLimit, finder_oracle},
      {3, "asymmetric PFD desugaring strengthens", kStrengtheningLimit, strengthening},
      {4, "positive end-to-end reduction", kPositiveLimit, positive_end_to_end},
      {5, "negative bounded evidence", kNegativeLimit, negative_bounded},
      {6, "pigeonhole consequence", kPigeonholeLimit, pigeonhole},
      {7, "determinism and round trip", kRoundTripLimit, determinism_round_trip},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (v.ok && secs > c.limit_seconds) {
      v.ok = false;
      v.detail += "; over the time limit";
    }
    if (!v.ok) ++failures;
    std::printf("%s %d %s: %s [%.2fs / %.0fs]\n", v.ok ? "PASS" : "FAIL", c.id, c.name, v.detail.c_str(), secs,
                c.limit_seconds);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
