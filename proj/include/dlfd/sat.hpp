// A small deterministic CDCL SAT solver: two watched literals, first-UIP
// learning, VSIDS branching with phase saving, Luby restarts.
//
// Determinism matters more than raw speed here: identical clause sequences
// always yield identical models, which the model finder relies on.

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

namespace dlfd::sat {

using Var = std::uint32_t;

struct Lit {
  std::uint32_t code = 0;  // 2 * var + negated

  static constexpr Lit pos(Var v) { return Lit{v << 1}; }
  static constexpr Lit neg(Var v) { return Lit{(v << 1) | 1u}; }
  constexpr Var var() const { return code >> 1; }
  constexpr bool negated() const { return (code & 1u) != 0; }
  constexpr Lit operator~() const { return Lit{code ^ 1u}; }

  auto operator<=>(const Lit&) const = default;
};

enum class Result { sat, unsat, unknown };

struct Stats {
  std::uint64_t decisions = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t propagations = 0;
  std::uint64_t restarts = 0;
};

class Solver {
 public:
  Var new_var();
  std::size_t num_vars() const { return values_.size(); }
  std::size_t num_clauses() const { return clauses_.size(); }

  /// Clauses may be added before or between solve() calls.
  void add_clause(std::vector<Lit> lits);
  void add_clause(std::initializer_list<Lit> lits) { add_clause(std::vector<Lit>(lits)); }

  /// `conflict_budget` bounds the number of conflicts of this call; when it
  /// is exhausted the result is `unknown`.
  Result solve(std::optional<std::uint64_t> conflict_budget = std::nullopt);

  /// Valid after solve() returned `sat`.
  bool model_value(Var v) const { return model_[v]; }
  bool model_value(Lit l) const { return model_[l.var()] != l.negated(); }

  const Stats& stats() const { return stats_; }

 private:
  using ClauseRef = std::uint32_t;
  static constexpr ClauseRef kNoReason = 0xffffffffu;

  // +1 true, -1 false, 0 unassigned.
  int value(Lit l) const {
    const int v = values_[l.var()];
    return l.negated() ? -v : v;
  }
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  void enqueue(Lit l, ClauseRef reason);
  std::optional<ClauseRef> propagate();
  void analyze(ClauseRef conflict, std::vector<Lit>& learnt, int& backtrack_level);
  void backtrack(int level);
  std::optional<Lit> pick_branch();
  ClauseRef attach(std::vector<Lit> lits);

  void bump(Var v);
  void heap_insert(Var v);
  void heap_up(std::size_t pos);
  void heap_down(std::size_t pos);
  Var heap_pop();

  std::vector<std::vector<Lit>> clauses_;
  std::vector<std::vector<ClauseRef>> watches_;  // indexed by Lit::code
  std::vector<int> values_;
  std::vector<int> levels_;
  std::vector<ClauseRef> reasons_;
  std::vector<bool> phase_;
  std::vector<Lit> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t qhead_ = 0;
  bool ok_ = true;

  std::vector<double> activity_;
  double var_inc_ = 1.0;
  std::vector<Var> heap_;
  std::vector<int> heap_pos_;  // -1 when not in heap

  std::vector<char> seen_;
  std::vector<bool> model_;
  Stats stats_;
};

}  // namespace dlfd::sat
