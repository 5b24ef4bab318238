// Abstract syntax for DLFD terminologies.
//
// Concepts come in two layers: `Concept` is the negation-closed D-grammar
// (primitive, conjunction, negation, value restriction, plus the parser sugar
// Or/Top/Bot), and `RhsConcept` is the E-grammar that may additionally house
// path functional dependencies. A PFD can therefore never sit under a
// negation or a value restriction: those constructors only accept `Concept`.

#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dlfd {

/// True for `[a-zA-Z_][a-zA-Z0-9_']*` that is not a reserved word.
bool is_identifier(std::string_view s);
bool is_reserved_word(std::string_view s);

struct FeatureName {
  std::string value;

  FeatureName() = default;
  explicit FeatureName(std::string v) : value(std::move(v)) {}

  auto operator<=>(const FeatureName&) const = default;
};

struct ConceptName {
  std::string value;

  ConceptName() = default;
  explicit ConceptName(std::string v) : value(std::move(v)) {}

  auto operator<=>(const ConceptName&) const = default;
};

/// A composition of features; the empty sequence is `id`.
struct PathExpr {
  std::vector<FeatureName> steps;

  bool is_identity() const { return steps.empty(); }
  std::size_t length() const { return steps.size(); }

  static PathExpr identity() { return {}; }
  static PathExpr of(std::initializer_list<const char*> names);

  auto operator<=>(const PathExpr&) const = default;
};

class Concept {
 public:
  enum class Kind { primitive, conj, neg, all, disj, top, bot };

  static Concept primitive(ConceptName name);
  static Concept primitive(std::string name) { return primitive(ConceptName(std::move(name))); }
  static Concept conj(Concept a, Concept b);
  static Concept neg(Concept a);
  static Concept all(FeatureName f, Concept a);
  static Concept disj(Concept a, Concept b);
  static Concept top();
  static Concept bot();

  /// Left-nested conjunction / disjunction; empty input yields Top / Bot.
  static Concept conj_of(const std::vector<Concept>& parts);
  static Concept disj_of(const std::vector<Concept>& parts);

  Kind kind() const;
  bool is_sugar() const;
  /// No Or/Top/Bot anywhere below (and including) this node.
  bool is_sugar_free() const;
  std::size_t depth() const;

  const ConceptName& name() const;
  const FeatureName& feature() const;
  const Concept& left() const;
  const Concept& right() const;
  /// Operand of Not and All.
  const Concept& operand() const;

  friend bool operator==(const Concept& a, const Concept& b);

 private:
  struct Node;
  explicit Concept(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Pfd {
  Concept over;
  std::vector<PathExpr> lhs;
  PathExpr rhs;

  friend bool operator==(const Pfd&, const Pfd&) = default;
};

class RhsConcept {
 public:
  enum class Kind { plain, conj, pfd };

  static RhsConcept plain(Concept c);
  /// Two plain operands collapse to `plain(conj(a, b))`, the form the parser
  /// produces, so that render/parse is the identity on every value.
  static RhsConcept conj(RhsConcept a, RhsConcept b);
  /// Throws std::invalid_argument when `lhs` is empty.
  static RhsConcept pfd(Concept over, std::vector<PathExpr> lhs, PathExpr rhs);

  Kind kind() const;
  const Concept& plain_concept() const;
  const RhsConcept& left() const;
  const RhsConcept& right() const;
  const Pfd& pfd() const;

  bool contains_pfd() const;
  /// Left-to-right list of the maximal non-conjunction parts.
  std::vector<RhsConcept> conjuncts() const;

  friend bool operator==(const RhsConcept& a, const RhsConcept& b);

 private:
  struct Node;
  explicit RhsConcept(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Axiom {
  Concept lhs;
  RhsConcept rhs;

  friend bool operator==(const Axiom&, const Axiom&) = default;
};

struct Terminology {
  std::vector<Axiom> axioms;

  std::size_t size() const { return axioms.size(); }
  bool empty() const { return axioms.empty(); }

  friend bool operator==(const Terminology&, const Terminology&) = default;
};

enum class ConstraintClass { pfd_constraint, simple_constraint };

ConstraintClass classify_axiom(const Axiom& a);

struct Signature {
  std::set<ConceptName> concepts;
  std::set<FeatureName> features;
  std::size_t max_path_len = 0;

  void merge(const Signature& other);

  friend bool operator==(const Signature&, const Signature&) = default;
};

Signature signature_of(const Terminology& t);
Signature signature_of(const Axiom& a);
Signature signature_of(const Concept& c);
Signature signature_of(const RhsConcept& c);

// Concrete syntax. Rendering is deterministic and emits the minimal
// parenthesization; `parse_*` of a rendered value returns an equal value.
std::string render(const PathExpr& p);
std::string render(const Concept& c);
std::string render(const RhsConcept& c);
std::string render(const Axiom& a);
std::string render_terminology(const Terminology& t);

}  // namespace dlfd
