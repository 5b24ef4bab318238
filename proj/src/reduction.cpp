#include "reduction_tables.hpp"

#include "dlfd/tiling.hpp"
#include "dlfd/transform.hpp"

namespace dlfd {

const char* to_string(ReductionMode m) { return m == ReductionMode::direct ? "direct" : "desugared"; }

ReductionMode reduction_mode_from_string(const std::string& s) {
  if (s == "direct") return ReductionMode::direct;
  if (s == "desugared") return ReductionMode::desugared;
  throw std::invalid_argument("unknown reduction mode '" + s + "' (expected direct or desugared)");
}

ConceptName tile_concept(const std::string& tile) { return ConceptName("T_" + tile); }

namespace {

Concept prim(const std::string& n) { return Concept::primitive(ConceptName(n)); }
Concept all(const std::string& f, Concept c) { return Concept::all(FeatureName(f), std::move(c)); }
PathExpr path(const std::string& f) { return PathExpr{{FeatureName(f)}}; }

Axiom sub(Concept lhs, Concept rhs) { return Axiom{std::move(lhs), RhsConcept::plain(std::move(rhs))}; }

Axiom key(const std::string& lhs, const std::string& over, const std::string& from, const std::string& to) {
  const PathExpr target = to == "id" ? PathExpr::identity() : path(to);
  return Axiom{prim(lhs), RhsConcept::pfd(prim(over), {path(from)}, target)};
}

Concept tile_union(const TilingProblem& u, const std::string& from, bool vertical) {
  std::vector<Concept> parts;
  for (const auto& t : u.tiles) {
    if (vertical ? u.allows_vert(from, t) : u.allows_horiz(from, t)) {
      parts.push_back(Concept::primitive(tile_concept(t)));
    }
  }
  return Concept::disj_of(parts);
}

}  // namespace

const std::array<SquarePfd, 16>& square_pfds() {
  // Row by row: f-to-corner, corner-to-f, g-to-corner, corner-to-g.
  static const std::array<SquarePfd, 16> table = {{
      {"A", "B", "f", "h"}, {"B", "C", "f", "i"}, {"C", "D", "f", "h"}, {"D", "A", "f", "i"},
      {"A", "B", "h", "f"}, {"B", "C", "i", "f"}, {"C", "D", "h", "f"}, {"D", "A", "i", "f"},
      {"A", "B", "g", "i"}, {"B", "C", "g", "h"}, {"C", "D", "g", "i"}, {"D", "A", "g", "h"},
      {"A", "B", "i", "g"}, {"B", "C", "h", "g"}, {"C", "D", "i", "g"}, {"D", "A", "h", "g"},
  }};
  return table;
}

Reduction reduce_to_terminology(const TilingProblem& u, const std::string& t0, ReductionMode mode) {
  u.validate();
  if (!u.declares(t0)) throw TilingError("initial tile '" + t0 + "' is not declared");

  const std::array<std::string, 4> edges = {"A", "B", "C", "D"};
  const std::array<std::string, 4> x_feats = {"a", "b", "c", "d"};
  const std::array<std::string, 4> y_feats = {"a'", "b'", "c'", "d'"};
  std::vector<Axiom> out;

  // Edge concepts are pairwise disjoint.
  for (std::size_t p = 0; p < 4; ++p)
    for (std::size_t q = p + 1; q < 4; ++q) out.push_back(sub(Concept::conj(prim(edges[p]), prim(edges[q])), Concept::bot()));

  // Cells see one edge of each type through a..d (X) and a'..d' (Y).
  std::vector<Concept> x_typing, y_typing;
  for (std::size_t k = 0; k < 4; ++k) {
    x_typing.push_back(all(x_feats[k], prim(edges[k])));
    y_typing.push_back(all(y_feats[k], prim(edges[k])));
  }
  out.push_back(sub(prim("X"), Concept::conj_of(x_typing)));
  out.push_back(sub(prim("Y"), Concept::conj_of(y_typing)));
  for (const auto& f : x_feats) out.push_back(key("X", "X", f, "id"));
  for (const auto& f : y_feats) out.push_back(key("Y", "Y", f, "id"));
  for (const auto& e : edges) out.push_back(sub(prim(e), Concept::conj(all("f", prim("X")), all("g", prim("Y")))));
  for (const auto& e : edges) out.push_back(key(e, e, "f", "id"));
  for (const auto& e : edges) out.push_back(key(e, e, "g", "id"));

  // Squares close through the corner features h and i.
  Terminology squares;
  for (const auto& s : square_pfds()) squares.axioms.push_back(key(s.lhs, s.over, s.from, s.to));
  if (mode == ReductionMode::desugared) squares = desugar_asymmetric_pfds(squares);
  out.insert(out.end(), squares.axioms.begin(), squares.axioms.end());

  // Squares extend to the neighbouring cells.
  out.push_back(sub(prim("A"), all("g", prim("Y"))));
  out.push_back(sub(prim("B"), all("g", prim("Y"))));
  out.push_back(sub(prim("C"), all("f", prim("X"))));
  out.push_back(sub(prim("D"), all("f", prim("X"))));

  // Adjacency: A and C carry V successors, B and D carry H successors.
  struct Family {
    const char* edge;
    const char* from;
    const char* to;
    bool vertical;
  };
  constexpr std::array<Family, 4> families = {{
      {"A", "g", "f", true},
      {"C", "f", "g", true},
      {"B", "f", "g", false},
      {"D", "g", "f", false},
  }};
  for (const auto& fam : families) {
    for (const auto& t : u.tiles) {
      const Concept lhs = Concept::conj(prim(fam.edge), all(fam.from, Concept::primitive(tile_concept(t))));
      out.push_back(sub(lhs, all(fam.to, tile_union(u, t, fam.vertical))));
    }
  }

  for (std::size_t p = 0; p < u.tiles.size(); ++p) {
    for (std::size_t q = p + 1; q < u.tiles.size(); ++q) {
      out.push_back(sub(Concept::conj(Concept::primitive(tile_concept(u.tiles[p])),
                                      Concept::primitive(tile_concept(u.tiles[q]))),
                        Concept::bot()));
    }
  }

  return Reduction{Terminology{std::move(out)}, Concept::conj(prim("X"), Concept::primitive(tile_concept(t0)))};
}

}  // namespace dlfd
