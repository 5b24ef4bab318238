#include "dlfd/transform.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

namespace dlfd {

ConceptName sugar_base(const Signature& sig) {
  return sig.concepts.empty() ? kFallbackBase : *sig.concepts.begin();
}

Concept desugar_concept(const Concept& c, const ConceptName& base) {
  switch (c.kind()) {
    case Concept::Kind::primitive:
      return c;
    case Concept::Kind::conj:
      return Concept::conj(desugar_concept(c.left(), base), desugar_concept(c.right(), base));
    case Concept::Kind::neg:
      return Concept::neg(desugar_concept(c.operand(), base));
    case Concept::Kind::all:
      return Concept::all(c.feature(), desugar_concept(c.operand(), base));
    case Concept::Kind::disj:
      return Concept::neg(Concept::conj(Concept::neg(desugar_concept(c.left(), base)),
                                        Concept::neg(desugar_concept(c.right(), base))));
    case Concept::Kind::top:
      return Concept::neg(Concept::conj(Concept::primitive(base), Concept::neg(Concept::primitive(base))));
    case Concept::Kind::bot:
      return Concept::conj(Concept::primitive(base), Concept::neg(Concept::primitive(base)));
  }
  return c;
}

Concept desugar_concept(const Concept& c) { return desugar_concept(c, sugar_base(signature_of(c))); }

RhsConcept desugar_rhs(const RhsConcept& r, const ConceptName& base) {
  switch (r.kind()) {
    case RhsConcept::Kind::plain:
      return RhsConcept::plain(desugar_concept(r.plain_concept(), base));
    case RhsConcept::Kind::conj:
      return RhsConcept::conj(desugar_rhs(r.left(), base), desugar_rhs(r.right(), base));
    case RhsConcept::Kind::pfd:
      return RhsConcept::pfd(desugar_concept(r.pfd().over, base), r.pfd().lhs, r.pfd().rhs);
  }
  return r;
}

Terminology desugar_terminology(const Terminology& t) {
  const ConceptName base = sugar_base(signature_of(t));
  Terminology out;
  out.axioms.reserve(t.size());
  for (const auto& a : t.axioms) {
    out.axioms.push_back(Axiom{desugar_concept(a.lhs, base), desugar_rhs(a.rhs, base)});
  }
  return out;
}

ConceptName union_concept_name(const ConceptName& a, const ConceptName& b) {
  const auto& [lo, hi] = std::minmax(a, b);
  return ConceptName("_u_" + lo.value + "_" + hi.value);
}

namespace {

bool is_asymmetric_primitive_pfd(const Axiom& a) {
  if (a.rhs.kind() != RhsConcept::Kind::pfd) return false;
  const Concept& over = a.rhs.pfd().over;
  return a.lhs.kind() == Concept::Kind::primitive && over.kind() == Concept::Kind::primitive &&
         a.lhs.name() != over.name();
}

}  // namespace

Terminology desugar_asymmetric_pfds(const Terminology& t) {
  Terminology out;
  std::set<ConceptName> introduced;
  for (const auto& a : t.axioms) {
    if (!is_asymmetric_primitive_pfd(a)) {
      out.axioms.push_back(a);
      continue;
    }
    const Pfd& pfd = a.rhs.pfd();
    const ConceptName u = union_concept_name(a.lhs.name(), pfd.over.name());
    const Concept uc = Concept::primitive(u);
    if (introduced.insert(u).second) {
      out.axioms.push_back(Axiom{a.lhs, RhsConcept::plain(uc)});
      out.axioms.push_back(Axiom{pfd.over, RhsConcept::plain(uc)});
    }
    out.axioms.push_back(Axiom{uc, RhsConcept::pfd(uc, pfd.lhs, pfd.rhs)});
  }
  return out;
}

std::vector<Diagnostic> validate_terminology(const Terminology& t) {
  std::vector<Diagnostic> out;
  for (std::size_t k = 0; k < t.size(); ++k) {
    const Axiom& a = t.axioms[k];
    for (const auto& part : a.rhs.conjuncts()) {
      if (part.kind() != RhsConcept::Kind::pfd) continue;
      const Concept& over = part.pfd().over;
      const bool lhs_prim = a.lhs.kind() == Concept::Kind::primitive;
      const bool over_prim = over.kind() == Concept::Kind::primitive;
      if (lhs_prim && over_prim) {
        if (a.rhs.kind() != RhsConcept::Kind::pfd && a.lhs.name() != over.name()) {
          out.push_back({k, "asymmetric PFD inside a conjunction is not desugared"});
        }
        continue;
      }
      if (!(a.lhs == over)) {
        out.push_back({k, "asymmetric PFD over a non-primitive concept is not desugared"});
      }
    }
  }
  return out;
}

}  // namespace dlfd
