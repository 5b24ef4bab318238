#include "dlfd/finder.hpp"

#include <chrono>
#include <cstdlib>
#include <map>
#include <tuple>

#include "dlfd/sat.hpp"

namespace dlfd {

using sat::Lit;

void SearchBounds::validate() const {
  if (min_size == 0) throw std::invalid_argument("search bounds: min size must be positive");
  if (max_size < min_size) throw std::invalid_argument("search bounds: max size is below min size");
  if (per_size_node_limit && *per_size_node_limit == 0) {
    throw std::invalid_argument("search bounds: node limit must be positive");
  }
}

std::optional<std::uint64_t> node_limit_from_env() {
  const char* raw = std::getenv(kNodeLimitEnv);
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (*end != '\0' || v == 0 || raw[0] == '-') {
    throw std::invalid_argument(std::string(kNodeLimitEnv) + " must be a positive integer");
  }
  return v;
}

SearchStats& SearchStats::operator+=(const SearchStats& o) {
  decisions += o.decisions;
  conflicts += o.conflicts;
  propagations += o.propagations;
  variables += o.variables;
  clauses += o.clauses;
  return *this;
}

namespace {

class Encoder {
 public:
  Encoder(const Signature& sig, std::size_t n) : sig_(sig), n_(n) {
    true_lit_ = Lit::pos(solver_.new_var());
    solver_.add_clause({true_lit_});
    for (const auto& f : sig_.features) {
      auto& table = features_[f];
      table.resize(n_ * n_);
      for (auto& l : table) l = Lit::pos(solver_.new_var());
      for (std::size_t x = 0; x < n_; ++x) exactly_one(&table[x * n_]);
    }
    for (const auto& c : sig_.concepts) {
      auto& ext = concepts_[c];
      for (std::size_t x = 0; x < n_; ++x) ext.push_back(Lit::pos(solver_.new_var()));
    }
  }

  sat::Solver& solver() { return solver_; }

  void require_axiom(const Axiom& a) {
    const auto& lhs = concept_lits(a.lhs);
    for (const auto& part : a.rhs.conjuncts()) {
      if (part.kind() == RhsConcept::Kind::plain) {
        const auto& rhs = concept_lits(part.plain_concept());
        for (std::size_t x = 0; x < n_; ++x) solver_.add_clause({~lhs[x], rhs[x]});
      } else {
        require_pfd(lhs, part.pfd());
      }
    }
  }

  void require_nonempty(const Concept& goal) {
    const auto& g = concept_lits(goal);
    solver_.add_clause(std::vector<Lit>(g.begin(), g.end()));
  }

  // Some element of [[lhs]] fails some conjunct of the right-hand side.
  void require_violation(const Axiom& a) {
    const auto& lhs = concept_lits(a.lhs);
    const auto parts = a.rhs.conjuncts();
    std::vector<Lit> someone;
    for (std::size_t x = 0; x < n_; ++x) {
      const Lit w = fresh();
      someone.push_back(w);
      solver_.add_clause({~w, lhs[x]});
      std::vector<Lit> fails{~w};
      for (const auto& part : parts) {
        if (part.kind() == RhsConcept::Kind::plain) {
          fails.push_back(~concept_lits(part.plain_concept())[x]);
        } else if (auto l = pfd_failure(part.pfd(), x)) {
          fails.push_back(*l);
        }
      }
      solver_.add_clause(fails);
    }
    solver_.add_clause(someone);
  }

  FiniteInterpretation decode() const {
    FeatureTables tables;
    for (const auto& [f, lits] : features_) {
      std::vector<Element> table(n_, 0);
      for (std::size_t x = 0; x < n_; ++x)
        for (std::size_t v = 0; v < n_; ++v)
          if (solver_.model_value(lits[x * n_ + v])) table[x] = static_cast<Element>(v);
      tables.emplace(f, std::move(table));
    }
    ConceptExtents exts;
    for (const auto& [c, lits] : concepts_) {
      std::set<Element> ext;
      for (std::size_t x = 0; x < n_; ++x)
        if (solver_.model_value(lits[x])) ext.insert(static_cast<Element>(x));
      exts.emplace(c, std::move(ext));
    }
    return FiniteInterpretation::build(n_, std::move(tables), exts);
  }

 private:
  Lit fresh() { return Lit::pos(solver_.new_var()); }
  Lit constant(bool b) const { return b ? true_lit_ : ~true_lit_; }

  void exactly_one(const Lit* lits) {
    solver_.add_clause(std::vector<Lit>(lits, lits + n_));
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = a + 1; b < n_; ++b) solver_.add_clause({~lits[a], ~lits[b]});
  }

  const std::vector<Lit>& concept_lits(const Concept& c) {
    const std::string key = render(c);
    if (auto it = concept_cache_.find(key); it != concept_cache_.end()) return it->second;
    std::vector<Lit> out(n_);
    switch (c.kind()) {
      case Concept::Kind::primitive:
        out = concepts_.at(c.name());
        break;
      case Concept::Kind::top:
      case Concept::Kind::bot:
        for (auto& l : out) l = constant(c.kind() == Concept::Kind::top);
        break;
      case Concept::Kind::neg: {
        const auto& inner = concept_lits(c.operand());
        for (std::size_t x = 0; x < n_; ++x) out[x] = ~inner[x];
        break;
      }
      case Concept::Kind::conj:
      case Concept::Kind::disj: {
        const std::vector<Lit> a = concept_lits(c.left());
        const std::vector<Lit> b = concept_lits(c.right());
        // a | b is encoded as ~(~a & ~b).
        const bool is_or = c.kind() == Concept::Kind::disj;
        for (std::size_t x = 0; x < n_; ++x) {
          const Lit la = is_or ? ~a[x] : a[x];
          const Lit lb = is_or ? ~b[x] : b[x];
          const Lit z = fresh();
          solver_.add_clause({~z, la});
          solver_.add_clause({~z, lb});
          solver_.add_clause({z, ~la, ~lb});
          out[x] = is_or ? ~z : z;
        }
        break;
      }
      case Concept::Kind::all: {
        const auto& f = features_.at(c.feature());
        const std::vector<Lit> inner = concept_lits(c.operand());
        for (std::size_t x = 0; x < n_; ++x) {
          const Lit z = fresh();
          for (std::size_t v = 0; v < n_; ++v) {
            const Lit step = f[x * n_ + v];
            solver_.add_clause({~z, ~step, inner[v]});
            solver_.add_clause({z, ~step, ~inner[v]});
          }
          out[x] = z;
        }
        break;
      }
    }
    return concept_cache_.emplace(key, std::move(out)).first->second;
  }

  // Literal for "[[p]](x) = v".
  Lit path_lit(const PathExpr& p, std::size_t x, std::size_t v) {
    if (p.is_identity()) return constant(x == v);
    if (p.length() == 1) return features_.at(p.steps[0])[x * n_ + v];
    return path_table(p)[x * n_ + v];
  }

  const std::vector<Lit>& path_table(const PathExpr& p) {
    const std::string key = render(p);
    if (auto it = path_cache_.find(key); it != path_cache_.end()) return it->second;
    PathExpr prefix = p;
    const FeatureName last = prefix.steps.back();
    prefix.steps.pop_back();
    const auto& step = features_.at(last);
    std::vector<Lit> table(n_ * n_);
    for (auto& l : table) l = fresh();
    for (std::size_t x = 0; x < n_; ++x) {
      exactly_one(&table[x * n_]);
      for (std::size_t v = 0; v < n_; ++v) {
        const Lit via = path_lit(prefix, x, v);
        for (std::size_t w = 0; w < n_; ++w) solver_.add_clause({~via, ~step[v * n_ + w], table[x * n_ + w]});
      }
    }
    return path_cache_.emplace(key, std::move(table)).first->second;
  }

  // Literal for "[[p]](x) = [[p]](y)", fully defined in both polarities.
  Lit eq_lit(const PathExpr& p, std::size_t x, std::size_t y) {
    if (x == y) return constant(true);
    if (p.is_identity()) return constant(false);
    if (x > y) std::swap(x, y);
    const auto key = std::make_tuple(render(p), x, y);
    if (auto it = eq_cache_.find(key); it != eq_cache_.end()) return it->second;
    const Lit e = fresh();
    for (std::size_t v = 0; v < n_; ++v) {
      const Lit px = path_lit(p, x, v);
      const Lit py = path_lit(p, y, v);
      solver_.add_clause({~px, ~py, e});
      solver_.add_clause({~e, ~px, py});
    }
    eq_cache_.emplace(key, e);
    return e;
  }

  static bool vacuous_for_distinct(const Pfd& pfd) {
    for (const auto& p : pfd.lhs) {
      // An identity left path never agrees on distinct elements; a right
      // path repeated on the left always agrees when the left does.
      if (p.is_identity() || p == pfd.rhs) return true;
    }
    return false;
  }

  void require_pfd(const std::vector<Lit>& lhs, const Pfd& pfd) {
    if (vacuous_for_distinct(pfd)) return;
    const auto& over = concept_lits(pfd.over);
    const bool direct = pfd.rhs.is_identity() && pfd.lhs.size() == 1;
    for (std::size_t x = 0; x < n_; ++x) {
      for (std::size_t y = 0; y < n_; ++y) {
        if (x == y) continue;
        if (direct) {
          // Injectivity form: no two distinct elements share a value.
          for (std::size_t v = 0; v < n_; ++v) {
            solver_.add_clause({~lhs[x], ~over[y], ~path_lit(pfd.lhs[0], x, v), ~path_lit(pfd.lhs[0], y, v)});
          }
          continue;
        }
        std::vector<Lit> clause{~lhs[x], ~over[y]};
        for (const auto& p : pfd.lhs) clause.push_back(~eq_lit(p, x, y));
        if (!pfd.rhs.is_identity()) clause.push_back(eq_lit(pfd.rhs, x, y));
        solver_.add_clause(clause);
      }
    }
  }

  // Literal implying that x is outside [[pfd]]; nullopt if impossible.
  std::optional<Lit> pfd_failure(const Pfd& pfd, std::size_t x) {
    if (vacuous_for_distinct(pfd)) return std::nullopt;
    const auto& over = concept_lits(pfd.over);
    const Lit fail = fresh();
    std::vector<Lit> pick{~fail};
    for (std::size_t y = 0; y < n_; ++y) {
      if (y == x) continue;
      const Lit pair = fresh();
      pick.push_back(pair);
      solver_.add_clause({~pair, over[y]});
      for (const auto& p : pfd.lhs) solver_.add_clause({~pair, eq_lit(p, x, y)});
      if (!pfd.rhs.is_identity()) solver_.add_clause({~pair, ~eq_lit(pfd.rhs, x, y)});
    }
    solver_.add_clause(pick);
    return fail;
  }

  Signature sig_;
  std::size_t n_;
  sat::Solver solver_;
  Lit true_lit_;
  std::map<FeatureName, std::vector<Lit>> features_;
  std::map<ConceptName, std::vector<Lit>> concepts_;
  std::map<std::string, std::vector<Lit>> concept_cache_;
  std::map<std::string, std::vector<Lit>> path_cache_;
  std::map<std::tuple<std::string, std::size_t, std::size_t>, Lit> eq_cache_;
};

enum class GoalKind { nonempty, violation };

struct Goal {
  GoalKind kind;
  Concept target;               // nonempty
  std::optional<Axiom> query;   // set when refuting an inclusion
};

Signature search_signature(const Terminology& t, const Goal& g, const SearchScope& scope) {
  Signature sig = signature_of(t);
  sig.merge(signature_of(g.target));
  if (g.query) sig.merge(signature_of(*g.query));
  sig.merge(scope.extra);
  return sig;
}

std::optional<FiniteInterpretation> search_size(const Terminology& t, const Goal& g, std::size_t n,
                                                std::optional<std::uint64_t> node_limit, const SearchScope& scope,
                                                SearchStats* stats) {
  if (n == 0) throw std::invalid_argument("domain size must be positive");
  Encoder enc(search_signature(t, g, scope), n);
  for (const auto& a : t.axioms) enc.require_axiom(a);
  if (g.kind == GoalKind::nonempty) {
    enc.require_nonempty(g.target);
  } else {
    enc.require_violation(*g.query);
  }
  auto& solver = enc.solver();
  const sat::Result r = solver.solve(node_limit);
  if (stats) {
    SearchStats s;
    s.decisions = solver.stats().decisions;
    s.conflicts = solver.stats().conflicts;
    s.propagations = solver.stats().propagations;
    s.variables = solver.num_vars();
    s.clauses = solver.num_clauses();
    *stats += s;
  }
  if (r == sat::Result::unknown) {
    throw ResourceLimitError(n, "node limit reached at domain size " + std::to_string(n));
  }
  if (r == sat::Result::unsat) return std::nullopt;

  FiniteInterpretation model = enc.decode();
  // Never trust the encoding: re-verify with the definitional evaluator.
  if (!check_terminology(model, t).satisfied) {
    throw std::logic_error("finder produced an interpretation that violates the terminology");
  }
  if (g.kind == GoalKind::nonempty && is_empty(eval_concept(model, g.target))) {
    throw std::logic_error("finder produced an interpretation with an empty goal");
  }
  if (g.query && !is_finite_countermodel(model, t, *g.query)) {
    throw std::logic_error("finder produced an interpretation that does not violate the query");
  }
  return model;
}

SearchOutcome sweep(const Terminology& t, const Goal& g, const SearchBounds& b, const SearchScope& scope) {
  b.validate();
  const auto start = std::chrono::steady_clock::now();
  SearchOutcome out;
  for (std::size_t n = b.min_size; n <= b.max_size; ++n) {
    out.sizes_searched.push_back(n);
    try {
      if (auto m = search_size(t, g, n, b.per_size_node_limit, scope, &out.stats)) {
        out.kind = SearchOutcome::Kind::model_found;
        out.model = std::move(m);
        out.size = n;
        break;
      }
    } catch (const ResourceLimitError&) {
      out.kind = SearchOutcome::Kind::resource_limit;
      out.size = n;
      break;
    }
    out.kind = SearchOutcome::Kind::no_model_up_to;
    out.size = n;
  }
  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

bool is_bot(const RhsConcept& r) {
  return r.kind() == RhsConcept::Kind::plain && r.plain_concept().kind() == Concept::Kind::bot;
}

}  // namespace

std::optional<FiniteInterpretation> find_model(const Terminology& t, const Concept& goal, std::size_t n,
                                               std::optional<std::uint64_t> node_limit, const SearchScope& scope,
                                               SearchStats* stats) {
  return search_size(t, Goal{GoalKind::nonempty, goal, std::nullopt}, n, node_limit, scope,
                     stats);
}

SearchOutcome find_model_iter(const Terminology& t, const Concept& goal, const SearchBounds& b,
                              const SearchScope& scope) {
  return sweep(t, Goal{GoalKind::nonempty, goal, std::nullopt}, b, scope);
}

SearchOutcome refute_bounded(const Terminology& t, const Axiom& a, const SearchBounds& b, const SearchScope& scope) {
  if (is_bot(a.rhs)) return sweep(t, Goal{GoalKind::nonempty, a.lhs, a}, b, scope);
  if (!a.rhs.contains_pfd()) {
    const Concept goal = Concept::conj(a.lhs, Concept::neg(a.rhs.plain_concept()));
    return sweep(t, Goal{GoalKind::nonempty, goal, a}, b, scope);
  }
  return sweep(t, Goal{GoalKind::violation, a.lhs, a}, b, scope);
}

const char* to_string(SearchOutcome::Kind k) {
  switch (k) {
    case SearchOutcome::Kind::model_found:
      return "model_found";
    case SearchOutcome::Kind::no_model_up_to:
      return "no_model_up_to";
    case SearchOutcome::Kind::resource_limit:
      return "resource_limit";
  }
  return "?";
}

std::string SearchOutcome::summary() const {
  switch (kind) {
    case Kind::model_found:
      return "model found with domain size " + std::to_string(size);
    case Kind::no_model_up_to:
      return "no model with domain size up to " + std::to_string(size) +
             "; bounded evidence only, not a proof that no finite model exists";
    case Kind::resource_limit:
      return "node limit reached at domain size " + std::to_string(size) + "; no conclusion for this size";
  }
  return {};
}

nlohmann::json search_report_json(const SearchOutcome& o, bool include_timings) {
  nlohmann::json j;
  j["outcome"] = to_string(o.kind);
  j["size"] = o.size;
  j["sizes_searched"] = o.sizes_searched;
  j["decisions"] = o.stats.decisions;
  j["conflicts"] = o.stats.conflicts;
  j["propagations"] = o.stats.propagations;
  j["variables"] = o.stats.variables;
  j["clauses"] = o.stats.clauses;
  j["bounded_evidence_only"] = o.kind != SearchOutcome::Kind::model_found;
  j["summary"] = o.summary();
  if (include_timings) j["wall_seconds"] = o.wall_seconds;
  return j;
}

}  // namespace dlfd
