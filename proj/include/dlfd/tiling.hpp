// Torus tiling problems and their reduction to DLFD terminologies.
//
// A problem (T, H, V) is solved on a w x h torus by t : Z_w x Z_h -> T with
// (t(i,j), t(i+1,j)) in H and (t(i,j), t(i,j+1)) in V everywhere, indices
// taken modulo the dimensions.
//
// reduce_to_terminology builds T_U: edge concepts A, B, C, D, cell concepts
// X and Y reached through the incoming features f and g, and corner
// features h and i that force cells to close into squares. A finite model of
// T_U with a nonempty X & T_t0 exists iff U has a finite torus solution with
// t0 at the origin; build_torus_witness produces such a model from a
// concrete tiling.

#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "dlfd/ast.hpp"
#include "dlfd/finder.hpp"
#include "dlfd/interp.hpp"

namespace dlfd {

class TilingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct TilingProblem {
  std::vector<std::string> tiles;
  std::vector<std::pair<std::string, std::string>> horiz;
  std::vector<std::pair<std::string, std::string>> vert;

  /// Throws TilingError on an empty tile list, duplicate tiles, tile ids that
  /// cannot form a concept name, or pairs mentioning undeclared tiles.
  void validate() const;
  bool declares(const std::string& tile) const;
  std::size_t index_of(const std::string& tile) const;
  bool allows_horiz(const std::string& a, const std::string& b) const;
  bool allows_vert(const std::string& a, const std::string& b) const;
};

/// Contents of a `.tiles` file.
struct TilingInstance {
  TilingProblem problem;
  std::string t0;
};

/// `{"tiles": [..], "H": [[t,t'],..], "V": [[t,t'],..], "t0": t}`.
/// Throws TilingError on malformed content.
TilingInstance tiling_instance_from_json(const nlohmann::json& j);
TilingInstance read_tiling_instance(std::string_view text);
nlohmann::json tiling_instance_to_json(const TilingInstance& inst);

struct TorusTiling {
  std::size_t width = 0;
  std::size_t height = 0;
  /// Row-major: grid[j * width + i] = t(i, j).
  std::vector<std::string> grid;

  const std::string& at(std::size_t i, std::size_t j) const { return grid[(j % height) * width + (i % width)]; }

  friend bool operator==(const TorusTiling&, const TorusTiling&) = default;
};

nlohmann::json tiling_to_json(const TorusTiling& s);

/// Throws TilingError when the grid has the wrong size or names an
/// undeclared tile.
bool check_torus_tiling(const TilingProblem& u, const TorusTiling& s);

/// Lexicographically least valid tiling (row-major cell order, tiles in
/// declaration order) with t(0,0) = t0, or nullopt.
std::optional<TorusTiling> solve_torus(const TilingProblem& u, const std::string& t0, std::size_t w, std::size_t h);

/// Tries every w, h in 1..max_dim by increasing area, then increasing w.
std::optional<TorusTiling> solve_torus_upto(const TilingProblem& u, const std::string& t0, std::size_t max_dim);

/// The 2w x 2h periodic extension t'(i,j) = t(i mod w, j mod h).
TorusTiling double_tiling(const TorusTiling& s);

enum class ReductionMode { direct, desugared };

const char* to_string(ReductionMode m);
ReductionMode reduction_mode_from_string(const std::string& s);

struct Reduction {
  Terminology terminology;
  Concept goal;
};

/// Concept name of a tile: `T_<id>`.
ConceptName tile_concept(const std::string& tile);

/// Axioms in fixed order: edge disjointness, cell/edge typing and the
/// injectivity PFDs, the sixteen square-forming PFDs (run through
/// desugar_asymmetric_pfds in desugared mode), extension axioms, the
/// adjacency rules (one axiom per family and tile), tile disjointness.
/// Goal is X & T_<t0>.
Reduction reduce_to_terminology(const TilingProblem& u, const std::string& t0, ReductionMode mode);

// ---------------------------------------------------------------------------
// Witness construction

/// Sides of a cell on the torus lattice. H steps change i, V steps change j.
enum class Side { h_minus, h_plus, v_minus, v_plus };

/// Edge concepts in order A, B, C, D.
inline constexpr std::size_t kEdgeTypes = 4;

/// Geometry of the witness. `x_side[k]` is the side of an X cell on which
/// the edge of type k (A, B, C, D) lies; a Y cell carries the same type on
/// the opposite side. Each edge has two end corners along the axis
/// perpendicular to it; `h_at_plus_end[k]` selects which one its h feature
/// points to (i takes the other).
struct WitnessOrientation {
  std::array<Side, kEdgeTypes> x_side;
  std::array<bool, kEdgeTypes> h_at_plus_end;

  friend bool operator==(const WitnessOrientation&, const WitnessOrientation&) = default;
};

/// The orientation fixed by calibrate_orientation().
WitnessOrientation default_orientation();

/// Enumerates every orientation (24 side permutations x 16 corner choices)
/// in a fixed order and returns the first whose witnesses pass
/// check_terminology in both reduction modes on the calibration instances:
/// the one-tile problem on a 2x2 torus, a two-tile problem on a 4x2 torus,
/// and a three-tile problem whose H and V are directed cycles (6x6), which
/// rules out mirror images.
std::optional<WitnessOrientation> calibrate_orientation();

/// The torus interpretation of an even-dimension valid tiling:
/// 4wh elements (cells, then H-edges, then V-edges, then corners). Cells
/// with even i+j are X, odd are Y. In desugared mode the union concepts of
/// the desugared terminology are interpreted as the unions of their parts.
/// Throws TilingError on odd dimensions or an invalid tiling.
FiniteInterpretation build_torus_witness(const TilingProblem& u, const TorusTiling& s,
                                         ReductionMode mode = ReductionMode::direct,
                                         const WitnessOrientation& orientation = default_orientation());

// ---------------------------------------------------------------------------
// End-to-end check of one instance

struct VerificationReport {
  enum class Outcome {
    positive,          // tiling found, witness verified
    bounded_negative,  // no tiling up to max_dim, no countermodel up to max_size
    mixed,             // no tiling up to max_dim, but the finder found a model
    resource_limit,    // finder gave up before reaching max_size
    witness_rejected,  // tiling found but the witness failed the checker
  };

  Outcome outcome = Outcome::bounded_negative;
  std::optional<TorusTiling> tiling;
  std::optional<TorusTiling> doubled;
  std::optional<FiniteInterpretation> witness;
  bool witness_direct_ok = false;
  bool witness_desugared_ok = false;
  bool witness_goal_nonempty = false;
  bool witness_is_countermodel = false;
  std::optional<SearchOutcome> search;
  std::size_t max_dim = 0;
  SearchBounds bounds;
  std::vector<std::string> notes;
};

const char* to_string(VerificationReport::Outcome o);

VerificationReport verify_reduction_instance(const TilingProblem& u, const std::string& t0, std::size_t max_dim,
                                             const SearchBounds& b);

nlohmann::json verification_report_json(const VerificationReport& r, bool include_timings = false);

}  // namespace dlfd
