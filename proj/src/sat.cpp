#include "dlfd/sat.hpp"

#include <algorithm>
#include <cmath>

namespace dlfd::sat {

namespace {

constexpr double kVarDecay = 0.95;
constexpr std::uint64_t kRestartBase = 100;

// Luby sequence 1 1 2 1 1 2 4 1 1 2 1 1 2 4 8 ...
std::uint64_t luby(std::uint64_t i) {
  std::uint64_t size = 1, seq = 0;
  while (size < i + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != i) {
    size = (size - 1) >> 1;
    --seq;
    i = i % size;
  }
  return std::uint64_t{1} << seq;
}

}  // namespace

Var Solver::new_var() {
  const Var v = static_cast<Var>(values_.size());
  values_.push_back(0);
  levels_.push_back(0);
  reasons_.push_back(kNoReason);
  phase_.push_back(false);
  activity_.push_back(0.0);
  heap_pos_.push_back(-1);
  seen_.push_back(0);
  watches_.emplace_back();
  watches_.emplace_back();
  heap_insert(v);
  return v;
}

void Solver::add_clause(std::vector<Lit> lits) {
  if (!ok_) return;
  backtrack(0);
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  std::vector<Lit> kept;
  for (std::size_t k = 0; k < lits.size(); ++k) {
    if (k + 1 < lits.size() && lits[k + 1] == ~lits[k]) return;  // tautology
    const int v = value(lits[k]);
    if (v > 0) return;  // satisfied at level 0
    if (v == 0) kept.push_back(lits[k]);
  }
  if (kept.empty()) {
    ok_ = false;
    return;
  }
  if (kept.size() == 1) {
    enqueue(kept[0], kNoReason);
    if (propagate()) ok_ = false;
    return;
  }
  attach(std::move(kept));
}

Solver::ClauseRef Solver::attach(std::vector<Lit> lits) {
  const auto ref = static_cast<ClauseRef>(clauses_.size());
  watches_[lits[0].code].push_back(ref);
  watches_[lits[1].code].push_back(ref);
  clauses_.push_back(std::move(lits));
  return ref;
}

void Solver::enqueue(Lit l, ClauseRef reason) {
  const Var v = l.var();
  values_[v] = l.negated() ? -1 : 1;
  levels_[v] = decision_level();
  reasons_[v] = reason;
  trail_.push_back(l);
}

std::optional<Solver::ClauseRef> Solver::propagate() {
  while (qhead_ < trail_.size()) {
    const Lit falsified = ~trail_[qhead_++];
    ++stats_.propagations;
    auto& ws = watches_[falsified.code];
    std::size_t i = 0, j = 0;
    while (i < ws.size()) {
      const ClauseRef ref = ws[i++];
      auto& c = clauses_[ref];
      if (c[0] == falsified) std::swap(c[0], c[1]);
      if (value(c[0]) > 0) {
        ws[j++] = ref;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.size(); ++k) {
        if (value(c[k]) >= 0) {
          std::swap(c[1], c[k]);
          watches_[c[1].code].push_back(ref);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = ref;
      if (value(c[0]) < 0) {
        while (i < ws.size()) ws[j++] = ws[i++];
        ws.resize(j);
        qhead_ = trail_.size();
        return ref;
      }
      enqueue(c[0], ref);
    }
    ws.resize(j);
  }
  return std::nullopt;
}

void Solver::analyze(ClauseRef conflict, std::vector<Lit>& learnt, int& backtrack_level) {
  learnt.clear();
  learnt.push_back(Lit{});
  int open = 0;
  std::optional<Lit> p;
  std::size_t idx = trail_.size();
  ClauseRef reason = conflict;
  do {
    const auto& c = clauses_[reason];
    for (std::size_t k = p ? 1 : 0; k < c.size(); ++k) {
      const Lit q = c[k];
      const Var v = q.var();
      if (seen_[v] || levels_[v] == 0) continue;
      seen_[v] = 1;
      bump(v);
      if (levels_[v] >= decision_level()) {
        ++open;
      } else {
        learnt.push_back(q);
      }
    }
    while (!seen_[trail_[idx - 1].var()]) --idx;
    p = trail_[--idx];
    reason = reasons_[p->var()];
    seen_[p->var()] = 0;
    --open;
  } while (open > 0);
  learnt[0] = ~*p;

  backtrack_level = 0;
  std::size_t max_pos = 1;
  for (std::size_t k = 1; k < learnt.size(); ++k) {
    seen_[learnt[k].var()] = 0;
    if (levels_[learnt[k].var()] > backtrack_level) {
      backtrack_level = levels_[learnt[k].var()];
      max_pos = k;
    }
  }
  if (learnt.size() > 1) std::swap(learnt[1], learnt[max_pos]);
}

void Solver::backtrack(int level) {
  if (decision_level() <= level) return;
  const std::size_t stop = trail_lim_[static_cast<std::size_t>(level)];
  for (std::size_t k = trail_.size(); k > stop; --k) {
    const Var v = trail_[k - 1].var();
    phase_[v] = values_[v] > 0;
    values_[v] = 0;
    reasons_[v] = kNoReason;
    if (heap_pos_[v] < 0) heap_insert(v);
  }
  trail_.resize(stop);
  trail_lim_.resize(static_cast<std::size_t>(level));
  qhead_ = trail_.size();
}

std::optional<Lit> Solver::pick_branch() {
  while (!heap_.empty()) {
    const Var v = heap_pop();
    if (values_[v] == 0) return phase_[v] ? Lit::pos(v) : Lit::neg(v);
  }
  return std::nullopt;
}

Result Solver::solve(std::optional<std::uint64_t> conflict_budget) {
  model_.clear();
  if (!ok_) return Result::unsat;
  backtrack(0);
  if (propagate()) {
    ok_ = false;
    return Result::unsat;
  }
  std::uint64_t conflicts_here = 0;
  std::uint64_t restart_index = 0;
  std::uint64_t until_restart = luby(restart_index) * kRestartBase;
  std::vector<Lit> learnt;
  for (;;) {
    if (auto conflict = propagate()) {
      ++stats_.conflicts;
      ++conflicts_here;
      if (decision_level() == 0) {
        ok_ = false;
        return Result::unsat;
      }
      int level = 0;
      analyze(*conflict, learnt, level);
      backtrack(level);
      if (learnt.size() == 1) {
        enqueue(learnt[0], kNoReason);
      } else {
        const ClauseRef ref = attach(learnt);
        enqueue(learnt[0], ref);
      }
      var_inc_ /= kVarDecay;
      if (until_restart > 0) --until_restart;
      continue;
    }
    if (conflict_budget && conflicts_here >= *conflict_budget) {
      backtrack(0);
      return Result::unknown;
    }
    if (until_restart == 0) {
      ++stats_.restarts;
      backtrack(0);
      until_restart = luby(++restart_index) * kRestartBase;
      continue;
    }
    const auto next = pick_branch();
    if (!next) {
      model_.resize(values_.size());
      for (std::size_t v = 0; v < values_.size(); ++v) model_[v] = values_[v] > 0;
      backtrack(0);
      return Result::sat;
    }
    ++stats_.decisions;
    trail_lim_.push_back(trail_.size());
    enqueue(*next, kNoReason);
  }
}

// ---------------------------------------------------------------------------
// VSIDS heap (max-activity first, ties by lower variable index)

void Solver::bump(Var v) {
  activity_[v] += var_inc_;
  if (activity_[v] > 1e100) {
    for (auto& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  if (heap_pos_[v] >= 0) heap_up(static_cast<std::size_t>(heap_pos_[v]));
}

namespace {

bool before(const std::vector<double>& act, Var a, Var b) {
  return act[a] > act[b] || (act[a] == act[b] && a < b);
}

}  // namespace

void Solver::heap_insert(Var v) {
  heap_pos_[v] = static_cast<int>(heap_.size());
  heap_.push_back(v);
  heap_up(heap_.size() - 1);
}

void Solver::heap_up(std::size_t pos) {
  const Var v = heap_[pos];
  while (pos > 0) {
    const std::size_t parent = (pos - 1) / 2;
    if (!before(activity_, v, heap_[parent])) break;
    heap_[pos] = heap_[parent];
    heap_pos_[heap_[pos]] = static_cast<int>(pos);
    pos = parent;
  }
  heap_[pos] = v;
  heap_pos_[v] = static_cast<int>(pos);
}

void Solver::heap_down(std::size_t pos) {
  const Var v = heap_[pos];
  for (;;) {
    std::size_t child = 2 * pos + 1;
    if (child >= heap_.size()) break;
    if (child + 1 < heap_.size() && before(activity_, heap_[child + 1], heap_[child])) ++child;
    if (!before(activity_, heap_[child], v)) break;
    heap_[pos] = heap_[child];
    heap_pos_[heap_[pos]] = static_cast<int>(pos);
    pos = child;
  }
  heap_[pos] = v;
  heap_pos_[v] = static_cast<int>(pos);
}

Var Solver::heap_pop() {
  const Var top = heap_.front();
  heap_pos_[top] = -1;
  const Var last = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_[0] = last;
    heap_pos_[last] = 0;
    heap_down(0);
  }
  return top;
}

}  // namespace dlfd::sat
