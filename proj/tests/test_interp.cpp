#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dlfd/model_io.hpp"
#include "dlfd/parser.hpp"
#include "dlfd/tiling.hpp"
#include "support.hpp"

using namespace dlfd;
using dlfd::testing::Rng;
using dlfd::testing::Vocab;

namespace {

FeatureName F(const char* f) { return FeatureName(f); }
ConceptName C(const char* c) { return ConceptName(c); }

ElementSet set_of(std::size_t n, std::initializer_list<Element> xs) {
  ElementSet s(n, false);
  for (Element x : xs) s[x] = true;
  return s;
}

ElementSet eval(const FiniteInterpretation& i, const char* text) { return eval_concept(i, parse_rhs_concept(text)); }

FiniteInterpretation one_tile_witness(ReductionMode mode = ReductionMode::direct) {
  return build_torus_witness(dlfd::testing::one_tile(), double_tiling(TorusTiling{1, 1, {"t"}}), mode);
}

}  // namespace

TEST_CASE("build_interpretation validates tables") {
  const auto one = build_interpretation(1, {{F("f"), {0}}}, {{C("C"), {0}}});
  CHECK(one.size() == 1);
  CHECK_THROWS_AS(build_interpretation(2, {{F("f"), {1}}}, {}), InterpretationError);
  CHECK_THROWS_AS(build_interpretation(2, {{F("f"), {0, 2}}}, {}), InterpretationError);
  CHECK_THROWS_AS(build_interpretation(2, {}, {{C("C"), {5}}}), InterpretationError);
  CHECK_THROWS_AS(build_interpretation(0, {}, {}), InterpretationError);

  const auto w = one_tile_witness();
  CHECK(w.size() == 16);
  CHECK(w.features().size() == 12);
  CHECK(w.concepts().size() == 7);
}

TEST_CASE("eval_path composes first step first") {
  const auto i = build_interpretation(3, {{F("f"), {1, 2, 0}}, {F("g"), {0, 0, 0}}}, {});
  CHECK(eval_path(i, PathExpr::identity(), 2) == 2);
  CHECK(eval_path(i, PathExpr::of({"f", "g"}), 0) == 0);
  CHECK(eval_path(i, PathExpr::of({"f", "f"}), 0) == 2);
  CHECK_THROWS_AS(eval_path(i, PathExpr::of({"h"}), 0), UnknownNameError);

  const auto w = one_tile_witness();
  const ElementSet& x = *w.extent(C("X"));
  for (Element e : members(*w.extent(C("A")))) CHECK(x[eval_path(w, PathExpr::of({"f"}), e)]);
}

TEST_CASE("eval_concept examples") {
  const auto i = build_interpretation(3, {{F("f"), {2, 2, 2}}, {F("g"), {0, 1, 2}}},
                                      {{C("C1"), {0, 1}}, {C("C2"), {1, 2}}, {C("C"), {0, 1}}, {C("D"), {}}});
  CHECK(eval(i, "C1 & C2") == set_of(3, {1}));
  CHECK(eval(i, "C1 | C2") == set_of(3, {0, 1, 2}));
  CHECK(eval(i, "~C1") == set_of(3, {2}));
  CHECK(eval(i, "all f . C2") == set_of(3, {0, 1, 2}));
  // f is constant, so every element agrees with 0 and 1 on f and must then
  // agree on g with both of them, which none does.
  CHECK(eval(i, "fd(C : f -> g)") == set_of(3, {}));
  const auto j = build_interpretation(3, {{F("f"), {0, 0, 1}}, {F("g"), {0, 1, 2}}}, {{C("C"), {0, 1}}});
  CHECK(eval(j, "fd(C : f -> g)") == set_of(3, {2}));
  CHECK(eval(i, "fd(D : f -> g)") == set_of(3, {0, 1, 2}));
  CHECK(eval(i, "Top") == set_of(3, {0, 1, 2}));
  CHECK(eval(i, "Bot") == set_of(3, {}));
  CHECK_THROWS_AS(eval(i, "Missing"), UnknownNameError);
  CHECK(eval_concept(i, parse_concept("Missing | C1"), EvalOptions{true}) == set_of(3, {0, 1}));
}

TEST_CASE("check_axiom witnesses") {
  const auto one = build_interpretation(1, {}, {{C("C"), {0}}});
  CHECK_FALSE(check_axiom(one, parse_axiom("C <= C")));

  const auto i = build_interpretation(2, {{F("f"), {0, 0}}}, {{C("A"), {0, 1}}});
  const Axiom key = parse_axiom("A <= fd(A : f -> id)");
  const auto w = check_axiom(i, key);
  REQUIRE(w);
  CHECK(w->kind == ViolationWitness::Kind::pfd);
  CHECK(w->x == 0);
  CHECK(w->y == 1);
  CHECK(w->agreeing == std::vector<Element>{0});
  CHECK(w->rhs_x == 0);
  CHECK(w->rhs_y == 1);
  CHECK(replay_witness(i, key, *w));

  const auto s = build_interpretation(3, {}, {{C("A"), {1, 2}}, {C("B"), {2}}});
  const auto sw = check_axiom(s, parse_axiom("A <= B"));
  REQUIRE(sw);
  CHECK(sw->kind == ViolationWitness::Kind::simple);
  CHECK(sw->x == 1);
}

TEST_CASE("check_terminology on the torus witness") {
  const Terminology t = reduce_to_terminology(dlfd::testing::one_tile(), "t", ReductionMode::direct).terminology;
  const auto w = one_tile_witness();
  const CheckReport rep = check_terminology(w, t);
  CHECK(rep.satisfied);
  CHECK(rep.statuses.size() == 52);
  CHECK_FALSE(rep.first_violation());

  CHECK(check_terminology(w, Terminology{}).satisfied);

  // Add a second tile concept overlapping T_t on one cell; only the injected
  // disjointness axiom fails.
  Terminology mutated = t;
  mutated.axioms.push_back(parse_axiom("T_t & T_u <= Bot"));
  ConceptExtents exts = w.concept_lists();
  exts[C("T_u")] = {0};
  const auto w2 = build_interpretation(w.size(), w.features(), exts);
  const CheckReport bad = check_terminology(w2, mutated);
  CHECK_FALSE(bad.satisfied);
  REQUIRE(bad.first_violation());
  CHECK(*bad.first_violation() == 52);
  CHECK(bad.statuses[52]->x == 0);
  for (std::size_t k = 0; k < 52; ++k) CHECK_FALSE(bad.statuses[k]);
}

TEST_CASE("is_finite_countermodel") {
  const Terminology t = reduce_to_terminology(dlfd::testing::one_tile(), "t", ReductionMode::direct).terminology;
  const auto w = one_tile_witness();
  CHECK(is_finite_countermodel(w, t, parse_axiom("X & T_t <= Bot")));

  const auto i = build_interpretation(1, {}, {{C("C"), {0}}, {C("D"), {}}});
  CHECK_FALSE(is_finite_countermodel(i, parse_terminology("C <= D;"), parse_axiom("C <= Bot")));
  CHECK_FALSE(is_finite_countermodel(i, Terminology{}, parse_axiom("C <= C")));
  CHECK(is_finite_countermodel(i, Terminology{}, parse_axiom("C <= D")));
}

TEST_CASE("semantic laws on random interpretations") {
  Rng rng(3);
  const Vocab v{{"A", "B", "C"}, {"f", "g"}};
  for (int k = 0; k < 300; ++k) {
    const std::size_t n = 1 + dlfd::testing::pick(rng, 5);
    const auto i = dlfd::testing::random_interpretation(rng, v, n);
    const Concept a = dlfd::testing::random_concept(rng, v, 2, false);
    const Concept b = dlfd::testing::random_concept(rng, v, 2, false);
    const ElementSet ea = eval_concept(i, a), eb = eval_concept(i, b);
    ElementSet uni(n);
    for (std::size_t x = 0; x < n; ++x) uni[x] = ea[x] || eb[x];
    CHECK(eval_concept(i, Concept::neg(Concept::conj(Concept::neg(a), Concept::neg(b)))) == uni);

    const PathExpr p = dlfd::testing::random_path(rng, v, 2);
    const ElementSet all(n, true);
    CHECK(eval_pfd(i, Pfd{a, {p}, p}) == all);

    const ElementSet narrow = eval_pfd(i, Pfd{Concept::conj(a, b), {PathExpr::of({"f"})}, PathExpr::of({"g"})});
    const ElementSet wide = eval_pfd(i, Pfd{a, {PathExpr::of({"f"})}, PathExpr::of({"g"})});
    CHECK(is_subset(wide, narrow));
  }
}

TEST_CASE("pigeonhole on hand-built models") {
  const Terminology block = parse_terminology(
      "X <= all a . A & fd(X : a -> id);\n"
      "A <= all f . X & fd(A : f -> id);\n");
  // Three X cells and three A edges, f inverse to a.
  const auto good = build_interpretation(6, {{F("a"), {3, 4, 5, 3, 4, 5}}, {F("f"), {0, 1, 2, 0, 1, 2}}},
                                         {{C("X"), {0, 1, 2}}, {C("A"), {3, 4, 5}}});
  CHECK(check_terminology(good, block).satisfied);
  // One more A edge must break injectivity of f somewhere.
  const auto extra = build_interpretation(
      7, {{F("a"), {3, 4, 5, 3, 4, 5, 6}}, {F("f"), {0, 1, 2, 0, 1, 2, 0}}},
      {{C("X"), {0, 1, 2}}, {C("A"), {3, 4, 5, 6}}});
  CHECK_FALSE(check_terminology(extra, block).satisfied);
}

TEST_CASE("model JSON round trip and DOT export") {
  const auto w = one_tile_witness();
  const std::string text = write_model(w);
  CHECK(read_model(text) == w);
  CHECK(write_model(read_model(text)) == text);
  CHECK_THROWS_AS(read_model("{\"n\": 2, \"features\": {\"f\": [0]}, \"concepts\": {}}"), InterpretationError);
  CHECK_THROWS_AS(read_model("not json"), ModelFormatError);

  const auto count = [](const std::string& s, const std::string& needle) {
    std::size_t c = 0;
    for (std::size_t p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++c;
    return c;
  };
  const std::string dot = export_dot(w);
  CHECK(count(dot, " -> ") == 12 * 16);
  CHECK(count(dot, "[label=\"") - count(dot, " -> ") == 16);
  CHECK(count(export_dot(w, DotOptions{true}), " -> ") < 12 * 16);

  const auto single = build_interpretation(1, {{F("f"), {0}}}, {});
  CHECK(count(export_dot(single), " -> ") == 1);
  const auto bare = build_interpretation(2, {}, {});
  CHECK(count(export_dot(bare), " -> ") == 0);
}
