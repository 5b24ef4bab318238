// Syntactic transformations over DLFD terminologies.

#pragma once

#include <string>
#include <vector>

#include "dlfd/ast.hpp"

namespace dlfd {

/// Concept used to spell Top/Bot when a signature names no concepts.
inline const ConceptName kFallbackBase{"_c0"};

/// Least concept name of `sig`, or `_c0` when it has none.
ConceptName sugar_base(const Signature& sig);

/// Rewrites Or/Top/Bot into the primitive/and/not/all fragment:
///   a | b  ~>  ~(~a & ~b)
///   Top    ~>  ~(base & ~base)
///   Bot    ~>  base & ~base
/// Idempotent; the result denotes the same set in every interpretation.
Concept desugar_concept(const Concept& c, const ConceptName& base);

/// Uses `sugar_base(signature_of(c))`.
Concept desugar_concept(const Concept& c);

RhsConcept desugar_rhs(const RhsConcept& r, const ConceptName& base);

/// Desugars every concept of `t` with the base taken from `t`'s signature.
Terminology desugar_terminology(const Terminology& t);

/// Name of the shared union concept for an unordered pair, e.g. `_u_A_B`.
ConceptName union_concept_name(const ConceptName& a, const ConceptName& b);

/// Replaces each `L <= fd(D : paths -> p)` with primitive L != D by
/// `L <= U; D <= U; U <= fd(U : paths -> p)` where U is the union concept
/// of the pair. The two subsumptions are emitted once per pair, at the
/// pair's first occurrence. Symmetric PFDs and PFDs over non-primitive
/// concepts are left as they are.
Terminology desugar_asymmetric_pfds(const Terminology& t);

struct Diagnostic {
  std::size_t axiom_index;
  std::string message;
};

/// Non-fatal findings, e.g. asymmetric PFDs that desugar_asymmetric_pfds
/// will not rewrite because a side is not a concept name.
std::vector<Diagnostic> validate_terminology(const Terminology& t);

}  // namespace dlfd
