// Explicit finite interpretations and an exact evaluator for DLFD semantics.
//
// Elements are 0..n-1. Features are total functions stored as tables,
// concepts as membership vectors. Path application follows
// [[f.Pf]] = [[Pf]] o [[f]]: the first step is applied first.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "dlfd/ast.hpp"

namespace dlfd {

using Element = std::uint32_t;
/// Membership vector of length n.
using ElementSet = std::vector<bool>;

std::vector<Element> members(const ElementSet& s);
bool is_subset(const ElementSet& a, const ElementSet& b);
bool is_empty(const ElementSet& s);
std::size_t count(const ElementSet& s);

class InterpretationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnknownNameError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

using FeatureTables = std::map<FeatureName, std::vector<Element>>;
using ConceptExtents = std::map<ConceptName, std::set<Element>>;

class FiniteInterpretation {
 public:
  /// Throws InterpretationError on n = 0, a table whose length differs from
  /// n, or any out-of-range element.
  static FiniteInterpretation build(std::size_t n, FeatureTables features, const ConceptExtents& concepts);

  std::size_t size() const { return n_; }
  const FeatureTables& features() const { return features_; }
  const std::map<ConceptName, ElementSet>& concepts() const { return concepts_; }

  bool has_feature(const FeatureName& f) const { return features_.count(f) != 0; }
  bool has_concept(const ConceptName& c) const { return concepts_.count(c) != 0; }

  const std::vector<Element>& table(const FeatureName& f) const;
  /// Null when the concept is not interpreted.
  const ElementSet* extent(const ConceptName& c) const;

  ConceptExtents concept_lists() const;

  friend bool operator==(const FiniteInterpretation&, const FiniteInterpretation&) = default;

 private:
  FiniteInterpretation() = default;
  std::size_t n_ = 0;
  FeatureTables features_;
  std::map<ConceptName, ElementSet> concepts_;
};

inline FiniteInterpretation build_interpretation(std::size_t n, FeatureTables features,
                                                 const ConceptExtents& concepts) {
  return FiniteInterpretation::build(n, std::move(features), concepts);
}

struct EvalOptions {
  /// Treat concept names absent from the interpretation as empty instead of
  /// raising UnknownNameError. Features are always required.
  bool default_empty_concepts = false;
};

/// Throws UnknownNameError naming the first missing symbol of `sig`.
void require_signature(const FiniteInterpretation& i, const Signature& sig, const EvalOptions& opts = {});

Element eval_path(const FiniteInterpretation& i, const PathExpr& p, Element x);

ElementSet eval_concept(const FiniteInterpretation& i, const Concept& c, const EvalOptions& opts = {});
ElementSet eval_concept(const FiniteInterpretation& i, const RhsConcept& c, const EvalOptions& opts = {});
ElementSet eval_pfd(const FiniteInterpretation& i, const Pfd& pfd, const EvalOptions& opts = {});

struct ViolationWitness {
  enum class Kind { simple, pfd };

  std::size_t axiom_index = 0;
  Kind kind = Kind::simple;
  /// Least element of [[lhs]] \ [[rhs]].
  Element x = 0;
  /// Index of the first right-hand conjunct that x fails.
  std::size_t conjunct = 0;
  // PFD only: least y in [[over]] agreeing with x on every left path while
  // disagreeing on the right path.
  Element y = 0;
  std::vector<Element> agreeing;
  Element rhs_x = 0;
  Element rhs_y = 0;

  friend bool operator==(const ViolationWitness&, const ViolationWitness&) = default;
};

/// nullopt when [[lhs]] is a subset of [[rhs]].
std::optional<ViolationWitness> check_axiom(const FiniteInterpretation& i, const Axiom& a,
                                            const EvalOptions& opts = {}, std::size_t axiom_index = 0);

/// Re-derives the violation from scratch.
bool replay_witness(const FiniteInterpretation& i, const Axiom& a, const ViolationWitness& w,
                    const EvalOptions& opts = {});

struct CheckReport {
  std::vector<std::optional<ViolationWitness>> statuses;
  bool satisfied = true;

  std::optional<std::size_t> first_violation() const;
};

CheckReport check_terminology(const FiniteInterpretation& i, const Terminology& t, const EvalOptions& opts = {});

/// True iff i satisfies t and violates a, i.e. i witnesses that t does not
/// finitely imply a.
bool is_finite_countermodel(const FiniteInterpretation& i, const Terminology& t, const Axiom& a,
                            const EvalOptions& opts = {});

}  // namespace dlfd
