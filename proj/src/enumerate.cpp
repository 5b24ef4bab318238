// Brute-force enumeration of interpretations, kept deliberately naive: it is
// the oracle the SAT-backed finder is cross-checked against, so it shares
// nothing with the encoding and relies only on the evaluator.

#include <cmath>

#include "dlfd/finder.hpp"

namespace dlfd {

std::vector<FiniteInterpretation> enumerate_all(const Terminology& t, const Concept& goal, std::size_t n,
                                                const SearchScope& scope, double ceiling) {
  if (n == 0) throw std::invalid_argument("domain size must be positive");
  Signature sig = signature_of(t);
  sig.merge(signature_of(goal));
  sig.merge(scope.extra);

  const std::vector<FeatureName> features(sig.features.begin(), sig.features.end());
  const std::vector<ConceptName> concepts(sig.concepts.begin(), sig.concepts.end());
  const double feature_digits = static_cast<double>(features.size() * n);
  const double concept_digits = static_cast<double>(concepts.size() * n);
  const double log_count = feature_digits * std::log10(static_cast<double>(n)) + concept_digits * std::log10(2.0);
  if (log_count > std::log10(ceiling)) {
    throw EnumerationLimitError("enumeration would visit about 10^" + std::to_string(log_count) +
                                " candidates, above the ceiling of " + std::to_string(ceiling));
  }

  // Digits of the encoding, most significant first.
  const std::size_t fd_count = features.size() * n;
  const std::size_t total = fd_count + concepts.size() * n;
  std::vector<std::size_t> digits(total, 0);
  auto radix = [&](std::size_t k) { return k < fd_count ? n : std::size_t{2}; };

  std::vector<FiniteInterpretation> out;
  for (;;) {
    FeatureTables tables;
    for (std::size_t f = 0; f < features.size(); ++f) {
      std::vector<Element> table(n);
      for (std::size_t x = 0; x < n; ++x) table[x] = static_cast<Element>(digits[f * n + x]);
      tables.emplace(features[f], std::move(table));
    }
    ConceptExtents exts;
    for (std::size_t c = 0; c < concepts.size(); ++c) {
      std::set<Element> ext;
      for (std::size_t x = 0; x < n; ++x)
        if (digits[fd_count + c * n + x]) ext.insert(static_cast<Element>(x));
      exts.emplace(concepts[c], std::move(ext));
    }
    const FiniteInterpretation candidate = FiniteInterpretation::build(n, std::move(tables), exts);

    bool ok = true;
    for (const auto& a : t.axioms) {
      if (check_axiom(candidate, a)) {
        ok = false;
        break;
      }
    }
    if (ok && !is_empty(eval_concept(candidate, goal))) out.push_back(candidate);

    std::size_t k = total;
    while (k > 0) {
      --k;
      if (++digits[k] < radix(k)) break;
      digits[k] = 0;
      if (k == 0) return out;
    }
    if (total == 0) return out;
  }
}

}  // namespace dlfd
