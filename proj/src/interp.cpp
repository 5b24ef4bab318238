#include "dlfd/interp.hpp"

#include <algorithm>

namespace dlfd {

std::vector<Element> members(const ElementSet& s) {
  std::vector<Element> out;
  for (std::size_t x = 0; x < s.size(); ++x)
    if (s[x]) out.push_back(static_cast<Element>(x));
  return out;
}

bool is_subset(const ElementSet& a, const ElementSet& b) {
  for (std::size_t x = 0; x < a.size(); ++x)
    if (a[x] && !b[x]) return false;
  return true;
}

bool is_empty(const ElementSet& s) { return std::find(s.begin(), s.end(), true) == s.end(); }

std::size_t count(const ElementSet& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), true)); }

FiniteInterpretation FiniteInterpretation::build(std::size_t n, FeatureTables features,
                                                 const ConceptExtents& concepts) {
  if (n == 0) throw InterpretationError("domain size must be positive");
  for (const auto& [f, table] : features) {
    if (table.size() != n) {
      throw InterpretationError("feature '" + f.value + "' has a table of length " + std::to_string(table.size()) +
                                ", expected " + std::to_string(n));
    }
    for (Element v : table) {
      if (v >= n) {
        throw InterpretationError("feature '" + f.value + "' maps to " + std::to_string(v) +
                                  ", outside the domain 0.." + std::to_string(n - 1));
      }
    }
  }
  FiniteInterpretation out;
  out.n_ = n;
  out.features_ = std::move(features);
  for (const auto& [c, ext] : concepts) {
    ElementSet bits(n, false);
    for (Element x : ext) {
      if (x >= n) {
        throw InterpretationError("concept '" + c.value + "' contains " + std::to_string(x) +
                                  ", outside the domain 0.." + std::to_string(n - 1));
      }
      bits[x] = true;
    }
    out.concepts_.emplace(c, std::move(bits));
  }
  return out;
}

const std::vector<Element>& FiniteInterpretation::table(const FeatureName& f) const {
  auto it = features_.find(f);
  if (it == features_.end()) throw UnknownNameError("feature '" + f.value + "' is not interpreted");
  return it->second;
}

const ElementSet* FiniteInterpretation::extent(const ConceptName& c) const {
  auto it = concepts_.find(c);
  return it == concepts_.end() ? nullptr : &it->second;
}

ConceptExtents FiniteInterpretation::concept_lists() const {
  ConceptExtents out;
  for (const auto& [c, bits] : concepts_) {
    auto m = members(bits);
    out.emplace(c, std::set<Element>(m.begin(), m.end()));
  }
  return out;
}

void require_signature(const FiniteInterpretation& i, const Signature& sig, const EvalOptions& opts) {
  for (const auto& f : sig.features) {
    if (!i.has_feature(f)) throw UnknownNameError("feature '" + f.value + "' is not interpreted");
  }
  if (opts.default_empty_concepts) return;
  for (const auto& c : sig.concepts) {
    if (!i.has_concept(c)) throw UnknownNameError("concept '" + c.value + "' is not interpreted");
  }
}

Element eval_path(const FiniteInterpretation& i, const PathExpr& p, Element x) {
  for (const auto& f : p.steps) x = i.table(f).at(x);
  return x;
}

namespace {

std::vector<Element> path_values(const FiniteInterpretation& i, const PathExpr& p) {
  std::vector<Element> out(i.size());
  for (std::size_t x = 0; x < i.size(); ++x) out[x] = eval_path(i, p, static_cast<Element>(x));
  return out;
}

// Least y in [[over]] that agrees with x on every left path and differs on
// the right path.
std::optional<Element> pfd_counterpart(const std::vector<std::vector<Element>>& lhs_vals,
                                       const std::vector<Element>& rhs_vals, const ElementSet& over, Element x) {
  for (std::size_t y = 0; y < over.size(); ++y) {
    if (!over[y]) continue;
    bool agree = true;
    for (const auto& vals : lhs_vals) {
      if (vals[x] != vals[y]) {
        agree = false;
        break;
      }
    }
    if (agree && rhs_vals[x] != rhs_vals[y]) return static_cast<Element>(y);
  }
  return std::nullopt;
}

struct PfdTables {
  ElementSet over;
  std::vector<std::vector<Element>> lhs;
  std::vector<Element> rhs;
};

PfdTables pfd_tables(const FiniteInterpretation& i, const Pfd& pfd, const EvalOptions& opts) {
  PfdTables t;
  t.over = eval_concept(i, pfd.over, opts);
  for (const auto& p : pfd.lhs) t.lhs.push_back(path_values(i, p));
  t.rhs = path_values(i, pfd.rhs);
  return t;
}

}  // namespace

ElementSet eval_concept(const FiniteInterpretation& i, const Concept& c, const EvalOptions& opts) {
  const std::size_t n = i.size();
  switch (c.kind()) {
    case Concept::Kind::primitive: {
      if (const ElementSet* e = i.extent(c.name())) return *e;
      if (opts.default_empty_concepts) return ElementSet(n, false);
      throw UnknownNameError("concept '" + c.name().value + "' is not interpreted");
    }
    case Concept::Kind::top:
      return ElementSet(n, true);
    case Concept::Kind::bot:
      return ElementSet(n, false);
    case Concept::Kind::neg: {
      ElementSet s = eval_concept(i, c.operand(), opts);
      s.flip();
      return s;
    }
    case Concept::Kind::conj:
    case Concept::Kind::disj: {
      ElementSet a = eval_concept(i, c.left(), opts);
      const ElementSet b = eval_concept(i, c.right(), opts);
      const bool is_and = c.kind() == Concept::Kind::conj;
      for (std::size_t x = 0; x < n; ++x) a[x] = is_and ? (a[x] && b[x]) : (a[x] || b[x]);
      return a;
    }
    case Concept::Kind::all: {
      const auto& f = i.table(c.feature());
      const ElementSet inner = eval_concept(i, c.operand(), opts);
      ElementSet s(n, false);
      for (std::size_t x = 0; x < n; ++x) s[x] = inner[f[x]];
      return s;
    }
  }
  return ElementSet(n, false);
}

ElementSet eval_pfd(const FiniteInterpretation& i, const Pfd& pfd, const EvalOptions& opts) {
  const PfdTables t = pfd_tables(i, pfd, opts);
  ElementSet s(i.size(), false);
  for (std::size_t x = 0; x < i.size(); ++x) {
    s[x] = !pfd_counterpart(t.lhs, t.rhs, t.over, static_cast<Element>(x)).has_value();
  }
  return s;
}

ElementSet eval_concept(const FiniteInterpretation& i, const RhsConcept& c, const EvalOptions& opts) {
  switch (c.kind()) {
    case RhsConcept::Kind::plain:
      return eval_concept(i, c.plain_concept(), opts);
    case RhsConcept::Kind::pfd:
      return eval_pfd(i, c.pfd(), opts);
    case RhsConcept::Kind::conj: {
      ElementSet a = eval_concept(i, c.left(), opts);
      const ElementSet b = eval_concept(i, c.right(), opts);
      for (std::size_t x = 0; x < a.size(); ++x) a[x] = a[x] && b[x];
      return a;
    }
  }
  return ElementSet(i.size(), false);
}

std::optional<ViolationWitness> check_axiom(const FiniteInterpretation& i, const Axiom& a, const EvalOptions& opts,
                                            std::size_t axiom_index) {
  require_signature(i, signature_of(a), opts);
  const ElementSet lhs = eval_concept(i, a.lhs, opts);
  const ElementSet rhs = eval_concept(i, a.rhs, opts);
  std::optional<Element> x;
  for (std::size_t e = 0; e < lhs.size(); ++e) {
    if (lhs[e] && !rhs[e]) {
      x = static_cast<Element>(e);
      break;
    }
  }
  if (!x) return std::nullopt;

  ViolationWitness w;
  w.axiom_index = axiom_index;
  w.x = *x;
  const auto parts = a.rhs.conjuncts();
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const RhsConcept& part = parts[k];
    if (part.kind() == RhsConcept::Kind::plain) {
      if (!eval_concept(i, part.plain_concept(), opts)[*x]) {
        w.kind = ViolationWitness::Kind::simple;
        w.conjunct = k;
        return w;
      }
      continue;
    }
    const PfdTables t = pfd_tables(i, part.pfd(), opts);
    if (auto y = pfd_counterpart(t.lhs, t.rhs, t.over, *x)) {
      w.kind = ViolationWitness::Kind::pfd;
      w.conjunct = k;
      w.y = *y;
      for (const auto& vals : t.lhs) w.agreeing.push_back(vals[*x]);
      w.rhs_x = t.rhs[*x];
      w.rhs_y = t.rhs[*y];
      return w;
    }
  }
  throw std::logic_error("check_axiom: element outside the right-hand side satisfies every conjunct");
}

bool replay_witness(const FiniteInterpretation& i, const Axiom& a, const ViolationWitness& w,
                    const EvalOptions& opts) {
  if (w.x >= i.size()) return false;
  if (!eval_concept(i, a.lhs, opts)[w.x]) return false;
  const auto parts = a.rhs.conjuncts();
  if (w.conjunct >= parts.size()) return false;
  const RhsConcept& part = parts[w.conjunct];
  if (w.kind == ViolationWitness::Kind::simple) {
    return part.kind() == RhsConcept::Kind::plain && !eval_concept(i, part.plain_concept(), opts)[w.x];
  }
  if (part.kind() != RhsConcept::Kind::pfd || w.y >= i.size()) return false;
  const Pfd& pfd = part.pfd();
  if (!eval_concept(i, pfd.over, opts)[w.y]) return false;
  if (w.agreeing.size() != pfd.lhs.size()) return false;
  for (std::size_t k = 0; k < pfd.lhs.size(); ++k) {
    const Element vx = eval_path(i, pfd.lhs[k], w.x);
    if (vx != eval_path(i, pfd.lhs[k], w.y) || vx != w.agreeing[k]) return false;
  }
  const Element rx = eval_path(i, pfd.rhs, w.x);
  const Element ry = eval_path(i, pfd.rhs, w.y);
  return rx != ry && rx == w.rhs_x && ry == w.rhs_y;
}

std::optional<std::size_t> CheckReport::first_violation() const {
  for (std::size_t k = 0; k < statuses.size(); ++k)
    if (statuses[k]) return k;
  return std::nullopt;
}

CheckReport check_terminology(const FiniteInterpretation& i, const Terminology& t, const EvalOptions& opts) {
  require_signature(i, signature_of(t), opts);
  CheckReport r;
  r.statuses.reserve(t.size());
  for (std::size_t k = 0; k < t.size(); ++k) {
    r.statuses.push_back(check_axiom(i, t.axioms[k], opts, k));
    if (r.statuses.back()) r.satisfied = false;
  }
  return r;
}

bool is_finite_countermodel(const FiniteInterpretation& i, const Terminology& t, const Axiom& a,
                            const EvalOptions& opts) {
  if (!check_terminology(i, t, opts).satisfied) return false;
  return check_axiom(i, a, opts).has_value();
}

}  // namespace dlfd
