// Bounded finite-model search.
//
// Finite implication is undecidable for DLFD, so no procedure can decide
// whether a terminology has a finite model with a nonempty goal. What this
// module offers is the semi-decision half: for each fixed domain size n the
// search is exact (a model is found iff one of size n exists), and a
// size-bounded sweep either returns a verified model or reports that none
// exists up to the bound. The latter is evidence, never a proof.
//
// Each size is compiled to CNF: one-hot variables for every feature table
// entry, one variable per concept/element, Tseitin definitions for compound
// concepts and path values, and pairwise clauses for PFDs. Returned models
// are always re-checked by the evaluator in interp.hpp.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "dlfd/ast.hpp"
#include "dlfd/interp.hpp"

namespace dlfd {

struct SearchBounds {
  std::size_t min_size = 1;
  std::size_t max_size = 12;
  /// Per-size cap on solver conflicts.
  std::optional<std::uint64_t> per_size_node_limit;

  void validate() const;
};

/// Name of the environment variable overriding the per-size node limit.
inline constexpr const char* kNodeLimitEnv = "DLFD_NODE_LIMIT";

/// Reads kNodeLimitEnv; nullopt when unset. Throws std::invalid_argument on
/// a value that is not a positive integer.
std::optional<std::uint64_t> node_limit_from_env();

struct SearchStats {
  std::uint64_t decisions = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t propagations = 0;
  std::uint64_t variables = 0;
  std::uint64_t clauses = 0;

  SearchStats& operator+=(const SearchStats& o);
};

class ResourceLimitError : public std::runtime_error {
 public:
  ResourceLimitError(std::size_t size, const std::string& what) : std::runtime_error(what), size_(size) {}
  std::size_t size() const { return size_; }

 private:
  std::size_t size_;
};

/// Extra symbols to interpret beyond those of the terminology and goal.
struct SearchScope {
  Signature extra;
};

/// Exact for size n: a model of t with nonempty [[goal]], or nullopt when
/// none of that size exists. Throws ResourceLimitError when the node limit
/// is hit before either answer is established.
std::optional<FiniteInterpretation> find_model(const Terminology& t, const Concept& goal, std::size_t n,
                                               std::optional<std::uint64_t> node_limit = std::nullopt,
                                               const SearchScope& scope = {}, SearchStats* stats = nullptr);

struct SearchOutcome {
  enum class Kind { model_found, no_model_up_to, resource_limit };

  Kind kind = Kind::no_model_up_to;
  std::optional<FiniteInterpretation> model;
  /// Size of the model, the bound reached, or the size that ran out of budget.
  std::size_t size = 0;
  std::vector<std::size_t> sizes_searched;
  SearchStats stats;
  double wall_seconds = 0.0;

  /// Human-readable reading of the outcome; for no_model_up_to it states
  /// that the result is bounded evidence only.
  std::string summary() const;
};

const char* to_string(SearchOutcome::Kind k);

/// Sweeps n = min_size..max_size; first model wins.
SearchOutcome find_model_iter(const Terminology& t, const Concept& goal, const SearchBounds& b,
                              const SearchScope& scope = {});

/// Searches for a finite countermodel to t |= a: a model of t with an
/// element in [[lhs(a)]] \ [[rhs(a)]]. A found model always passes
/// is_finite_countermodel.
SearchOutcome refute_bounded(const Terminology& t, const Axiom& a, const SearchBounds& b,
                             const SearchScope& scope = {});

nlohmann::json search_report_json(const SearchOutcome& o, bool include_timings = false);

class EnumerationLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kDefaultEnumerationCeiling = 1e8;

/// Brute force over every interpretation of size n over
/// signature_of(t) + goal + scope. Results come in lexicographic order of
/// the encoding (feature tables in name order, then concept membership bits
/// in name order, element 0 first). Throws EnumerationLimitError when the
/// candidate count exceeds `ceiling`.
std::vector<FiniteInterpretation> enumerate_all(const Terminology& t, const Concept& goal, std::size_t n,
                                                const SearchScope& scope = {},
                                                double ceiling = kDefaultEnumerationCeiling);

}  // namespace dlfd
