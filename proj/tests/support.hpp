// Random generators and fixtures shared by the unit tests and the
// acceptance runner. Everything is seeded so failures replay.

#pragma once

#include <random>
#include <string>
#include <vector>

#include "dlfd/ast.hpp"
#include "dlfd/interp.hpp"
#include "dlfd/tiling.hpp"

namespace dlfd::testing {

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }
inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

struct Vocab {
  std::vector<std::string> concepts;
  std::vector<std::string> features;
};

inline PathExpr random_path(Rng& rng, const Vocab& v, std::size_t max_len) {
  PathExpr p;
  const std::size_t len = pick(rng, max_len + 1);
  for (std::size_t k = 0; k < len; ++k) p.steps.emplace_back(v.features[pick(rng, v.features.size())]);
  return p;
}

/// depth counts constructor nesting; 0 gives a primitive (or Top/Bot when sugar is on).
inline Concept random_concept(Rng& rng, const Vocab& v, std::size_t depth, bool sugar) {
  const std::size_t leaf_choices = sugar ? 3 : 1;
  if (depth == 0 || coin(rng, 0.25)) {
    const std::size_t k = pick(rng, leaf_choices * 4);
    if (sugar && k == 0) return Concept::top();
    if (sugar && k == 1) return Concept::bot();
    return Concept::primitive(v.concepts[pick(rng, v.concepts.size())]);
  }
  const std::size_t ops = sugar ? 4 : 3;
  switch (pick(rng, ops)) {
    case 0: return Concept::conj(random_concept(rng, v, depth - 1, sugar), random_concept(rng, v, depth - 1, sugar));
    case 1: return Concept::neg(random_concept(rng, v, depth - 1, sugar));
    case 2:
      return Concept::all(FeatureName(v.features[pick(rng, v.features.size())]),
                          random_concept(rng, v, depth - 1, sugar));
    default:
      return Concept::disj(random_concept(rng, v, depth - 1, sugar), random_concept(rng, v, depth - 1, sugar));
  }
}

inline RhsConcept random_pfd(Rng& rng, const Vocab& v, std::size_t depth, std::size_t max_path) {
  std::vector<PathExpr> lhs;
  const std::size_t k = 1 + pick(rng, 2);
  for (std::size_t j = 0; j < k; ++j) lhs.push_back(random_path(rng, v, max_path));
  return RhsConcept::pfd(random_concept(rng, v, depth, true), std::move(lhs), random_path(rng, v, max_path));
}

inline RhsConcept random_rhs(Rng& rng, const Vocab& v, std::size_t depth, std::size_t max_path) {
  switch (pick(rng, 4)) {
    case 0: return random_pfd(rng, v, depth > 0 ? depth - 1 : 0, max_path);
    case 1:
      return RhsConcept::conj(RhsConcept::plain(random_concept(rng, v, depth, true)),
                              random_pfd(rng, v, depth > 0 ? depth - 1 : 0, max_path));
    default: return RhsConcept::plain(random_concept(rng, v, depth, true));
  }
}

inline Axiom random_axiom(Rng& rng, const Vocab& v, std::size_t depth, std::size_t max_path) {
  return Axiom{random_concept(rng, v, depth, true), random_rhs(rng, v, depth, max_path)};
}

inline Terminology random_terminology(Rng& rng, const Vocab& v, std::size_t max_axioms, std::size_t depth,
                                      std::size_t max_path) {
  Terminology t;
  const std::size_t k = pick(rng, max_axioms + 1);
  for (std::size_t j = 0; j < k; ++j) t.axioms.push_back(random_axiom(rng, v, depth, max_path));
  return t;
}

inline FiniteInterpretation random_interpretation(Rng& rng, const Vocab& v, std::size_t n) {
  FeatureTables tables;
  for (const auto& f : v.features) {
    std::vector<Element> table(n);
    for (auto& e : table) e = static_cast<Element>(pick(rng, n));
    tables.emplace(FeatureName(f), std::move(table));
  }
  ConceptExtents exts;
  for (const auto& c : v.concepts) {
    auto& ext = exts[ConceptName(c)];
    for (std::size_t x = 0; x < n; ++x)
      if (coin(rng)) ext.insert(static_cast<Element>(x));
  }
  return FiniteInterpretation::build(n, std::move(tables), exts);
}

// Sample tiling problems.

inline TilingProblem one_tile() { return {{"t"}, {{"t", "t"}}, {{"t", "t"}}}; }

inline TilingProblem swap_ab() { return {{"a", "b"}, {{"a", "b"}, {"b", "a"}}, {{"a", "a"}, {"b", "b"}}}; }

/// One tile with no horizontal neighbour: no torus tiling of any size.
inline TilingProblem empty_h() { return {{"t"}, {}, {{"t", "t"}}}; }

inline TilingProblem random_problem(Rng& rng, std::size_t m, double density) {
  TilingProblem u;
  for (std::size_t k = 0; k < m; ++k) u.tiles.push_back("t" + std::to_string(k));
  for (const auto& a : u.tiles)
    for (const auto& b : u.tiles) {
      if (coin(rng, density)) u.horiz.emplace_back(a, b);
      if (coin(rng, density)) u.vert.emplace_back(a, b);
    }
  return u;
}

}  // namespace dlfd::testing
