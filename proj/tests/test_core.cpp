#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dlfd/parser.hpp"
#include "dlfd/tiling.hpp"
#include "dlfd/transform.hpp"
#include "support.hpp"

using namespace dlfd;
using dlfd::testing::Rng;
using dlfd::testing::Vocab;

namespace {

Concept P(const char* n) { return Concept::primitive(n); }

ParseError::Kind parse_error_kind(std::string_view text) {
  try {
    parse_terminology(text);
  } catch (const ParseError& e) {
    return e.kind();
  }
  FAIL("expected a parse error for: " << text);
  return ParseError::Kind::lexical;
}

}  // namespace

TEST_CASE("parse disjointness axiom") {
  const Terminology t = parse_terminology("A & B <= Bot;");
  REQUIRE(t.size() == 1);
  CHECK(t.axioms[0].lhs == Concept::conj(P("A"), P("B")));
  CHECK(t.axioms[0].rhs == RhsConcept::plain(Concept::bot()));
}

TEST_CASE("parse asymmetric pfd") {
  const Terminology t = parse_terminology("A <= fd(B : f -> h);");
  REQUIRE(t.size() == 1);
  CHECK(t.axioms[0].rhs == RhsConcept::pfd(P("B"), {PathExpr::of({"f"})}, PathExpr::of({"h"})));
}

TEST_CASE("parse errors carry their kind and position") {
  CHECK(parse_error_kind("fd(B : f -> h) <= A;") == ParseError::Kind::syntax);
  CHECK(parse_error_kind("A <= ~fd(B : f -> h);") == ParseError::Kind::pfd_position);
  CHECK(parse_error_kind("A <= all f . fd(B : f -> h);") == ParseError::Kind::pfd_position);
  CHECK(parse_error_kind("A <= B | fd(B : f -> h);") == ParseError::Kind::pfd_position);
  CHECK(parse_error_kind("A <= fd(B : -> h);") == ParseError::Kind::empty_path_list);
  CHECK(parse_error_kind("A <= B $ C;") == ParseError::Kind::lexical);
  CHECK(parse_error_kind("A <= B") == ParseError::Kind::syntax);

  try {
    parse_terminology("A <= B;\nC <= (D;\n");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 8);
  }
}

TEST_CASE("comments, paths and precedence") {
  const Terminology t = parse_terminology(
      "# header\n"
      "C <= fd(C : f.g, id -> id);  # trailing\n"
      "A | B & ~C <= all f . A & B;\n");
  REQUIRE(t.size() == 2);
  const Pfd& p = t.axioms[0].rhs.pfd();
  CHECK(p.lhs == std::vector<PathExpr>{PathExpr::of({"f", "g"}), PathExpr::identity()});
  CHECK(p.rhs.is_identity());
  // & binds tighter than |, ~ and all bind tightest.
  CHECK(t.axioms[1].lhs == Concept::disj(P("A"), Concept::conj(P("B"), Concept::neg(P("C")))));
  CHECK(t.axioms[1].rhs.plain_concept() == Concept::conj(Concept::all(FeatureName("f"), P("A")), P("B")));
}

TEST_CASE("render") {
  const Terminology t{{Axiom{P("X"), RhsConcept::pfd(P("X"), {PathExpr::of({"a"})}, PathExpr::identity())}}};
  CHECK(render_terminology(t) == "X <= fd(X : a -> id);\n");
  CHECK(render_terminology(Terminology{}).empty());
  CHECK(render(Concept::neg(Concept::conj(P("A"), P("B")))) == "~(A & B)");
  CHECK(render(Concept::all(FeatureName("f"), Concept::disj(P("A"), P("B")))) == "all f . (A | B)");
  CHECK(render(Concept::conj(P("A"), Concept::conj(P("B"), P("C")))) == "A & (B & C)");
}

TEST_CASE("round trip on the generated reductions") {
  for (auto mode : {ReductionMode::direct, ReductionMode::desugared}) {
    const Terminology t = reduce_to_terminology(dlfd::testing::one_tile(), "t", mode).terminology;
    const std::string text = render_terminology(t);
    CHECK(parse_terminology(text) == t);
    CHECK(render_terminology(parse_terminology(text)) == text);
  }
}

TEST_CASE("round trip on random terminologies") {
  Rng rng(11);
  const Vocab v{{"A", "B", "C'", "_x"}, {"f", "g", "h'"}};
  for (int k = 0; k < 500; ++k) {
    const Terminology t = dlfd::testing::random_terminology(rng, v, 4, 4, 3);
    const std::string text = render_terminology(t);
    const Terminology back = parse_terminology(text);
    REQUIRE_MESSAGE(back == t, text);
    CHECK(render_terminology(back) == text);
  }
}

TEST_CASE("classify axioms") {
  const auto cls = [](const char* s) { return classify_axiom(parse_axiom(s)); };
  CHECK(cls("A <= fd(B : f -> h)") == ConstraintClass::pfd_constraint);
  CHECK(cls("A <= all f . X") == ConstraintClass::simple_constraint);
  CHECK(cls("A <= all f . X & fd(A : a -> id)") == ConstraintClass::pfd_constraint);

  const Terminology t = reduce_to_terminology(dlfd::testing::one_tile(), "t", ReductionMode::direct).terminology;
  std::size_t pfd = 0, simple = 0;
  for (const auto& a : t.axioms) (classify_axiom(a) == ConstraintClass::pfd_constraint ? pfd : simple)++;
  // 8 cell keys + 8 edge keys + 16 square PFDs; the rest are plain inclusions.
  CHECK(pfd == 32);
  CHECK(simple == 20);
}

TEST_CASE("signatures") {
  const Terminology t = reduce_to_terminology(dlfd::testing::one_tile(), "t", ReductionMode::direct).terminology;
  const Signature s = signature_of(t);
  std::set<std::string> features, concepts;
  for (const auto& f : s.features) features.insert(f.value);
  for (const auto& c : s.concepts) concepts.insert(c.value);
  CHECK(features == std::set<std::string>{"a", "b", "c", "d", "a'", "b'", "c'", "d'", "f", "g", "h", "i"});
  CHECK(concepts == std::set<std::string>{"A", "B", "C", "D", "X", "Y", "T_t"});
  CHECK(s.max_path_len == 1);

  CHECK(signature_of(Terminology{}) == Signature{});
  const Signature two = signature_of(parse_terminology("C <= fd(C : f.g -> id);"));
  CHECK(two.features.size() == 2);
  CHECK(two.max_path_len == 2);
}

TEST_CASE("desugar concept examples") {
  const Concept base = P("A");
  CHECK(desugar_concept(Concept::disj(P("T_1"), P("T_2")), ConceptName("A")) ==
        Concept::neg(Concept::conj(Concept::neg(P("T_1")), Concept::neg(P("T_2")))));
  CHECK(desugar_concept(Concept::top(), ConceptName("A")) == Concept::neg(Concept::conj(base, Concept::neg(base))));
  CHECK(desugar_concept(Concept::bot(), ConceptName("A")) == Concept::conj(base, Concept::neg(base)));
  // Without any names the fresh base is used.
  CHECK(desugar_concept(Concept::top()) == Concept::neg(Concept::conj(P("_c0"), Concept::neg(P("_c0")))));
  CHECK(sugar_base(signature_of(parse_terminology("Z <= B; C <= B;"))) == ConceptName("B"));
}

TEST_CASE("desugaring is idempotent and sugar free") {
  Rng rng(5);
  const Vocab v{{"A", "B", "C"}, {"f", "g"}};
  for (int k = 0; k < 1000; ++k) {
    const Concept c = dlfd::testing::random_concept(rng, v, 5, true);
    const Concept d = desugar_concept(c);
    CHECK(d.is_sugar_free());
    CHECK(desugar_concept(d) == d);
  }
}

TEST_CASE("desugaring preserves extensions") {
  Rng rng(7);
  const Vocab v{{"A", "B", "C"}, {"f", "g"}};
  for (int k = 0; k < 400; ++k) {
    const std::size_t n = 1 + dlfd::testing::pick(rng, 4);
    const FiniteInterpretation i = dlfd::testing::random_interpretation(rng, v, n);
    const Concept c = dlfd::testing::random_concept(rng, v, 4, true);
    CHECK(eval_concept(i, c) == eval_concept(i, desugar_concept(c, ConceptName("A"))));
  }
}

TEST_CASE("asymmetric pfd desugaring") {
  const Terminology t = parse_terminology("A <= fd(B : f -> h);");
  CHECK(render_terminology(desugar_asymmetric_pfds(t)) ==
        "A <= _u_A_B;\nB <= _u_A_B;\n_u_A_B <= fd(_u_A_B : f -> h);\n");

  const Terminology sym = parse_terminology("X <= fd(X : a -> id);");
  CHECK(desugar_asymmetric_pfds(sym) == sym);

  // Shared union per unordered pair; the pair's subsumptions appear once.
  const Terminology shared = parse_terminology("A <= fd(B : f -> h); B <= fd(A : g -> i);");
  CHECK(render_terminology(desugar_asymmetric_pfds(shared)) ==
        "A <= _u_A_B;\nB <= _u_A_B;\n_u_A_B <= fd(_u_A_B : f -> h);\n_u_A_B <= fd(_u_A_B : g -> i);\n");

  // Non-primitive sides stay and draw a warning.
  const Terminology odd = parse_terminology("A & C <= fd(B : f -> h);");
  CHECK(desugar_asymmetric_pfds(odd) == odd);
  CHECK(validate_terminology(odd).size() == 1);
}

TEST_CASE("reduction axiom counts") {
  using dlfd::testing::one_tile;
  CHECK(reduce_to_terminology(one_tile(), "t", ReductionMode::direct).terminology.size() == 52);
  CHECK(reduce_to_terminology(one_tile(), "t", ReductionMode::desugared).terminology.size() == 60);
  CHECK(desugar_asymmetric_pfds(reduce_to_terminology(one_tile(), "t", ReductionMode::direct).terminology).size() ==
        60);
}

TEST_CASE("identifiers") {
  CHECK(is_identifier("a'"));
  CHECK(is_identifier("_u_A_B"));
  CHECK_FALSE(is_identifier("1a"));
  CHECK_FALSE(is_identifier("fd"));
  CHECK_FALSE(is_identifier("Top"));
  CHECK_THROWS_AS(RhsConcept::pfd(P("A"), {}, PathExpr::identity()), std::invalid_argument);
}
