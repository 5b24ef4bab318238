#include "dlfd/tiling.hpp"

#include <algorithm>
#include <set>

namespace dlfd {

using nlohmann::json;

void TilingProblem::validate() const {
  if (tiles.empty()) throw TilingError("tiling problem declares no tiles");
  std::set<std::string> seen;
  for (const auto& t : tiles) {
    if (!is_identifier("T_" + t)) throw TilingError("tile id '" + t + "' cannot form a concept name");
    if (!seen.insert(t).second) throw TilingError("tile '" + t + "' declared twice");
  }
  for (const auto* rel : {&horiz, &vert}) {
    for (const auto& [a, b] : *rel) {
      if (!seen.count(a) || !seen.count(b)) {
        throw TilingError("adjacency pair (" + a + ", " + b + ") uses an undeclared tile");
      }
    }
  }
}

bool TilingProblem::declares(const std::string& tile) const {
  return std::find(tiles.begin(), tiles.end(), tile) != tiles.end();
}

std::size_t TilingProblem::index_of(const std::string& tile) const {
  auto it = std::find(tiles.begin(), tiles.end(), tile);
  if (it == tiles.end()) throw TilingError("undeclared tile '" + tile + "'");
  return static_cast<std::size_t>(it - tiles.begin());
}

bool TilingProblem::allows_horiz(const std::string& a, const std::string& b) const {
  return std::find(horiz.begin(), horiz.end(), std::make_pair(a, b)) != horiz.end();
}

bool TilingProblem::allows_vert(const std::string& a, const std::string& b) const {
  return std::find(vert.begin(), vert.end(), std::make_pair(a, b)) != vert.end();
}

namespace {

std::vector<std::pair<std::string, std::string>> pairs_from_json(const json& j, const char* key) {
  std::vector<std::pair<std::string, std::string>> out;
  if (!j.contains(key)) return out;
  const json& arr = j.at(key);
  if (!arr.is_array()) throw TilingError(std::string(key) + ": expected an array of pairs");
  for (const auto& p : arr) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string()) {
      throw TilingError(std::string(key) + ": expected pairs of tile ids");
    }
    out.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
  }
  return out;
}

}  // namespace

TilingInstance tiling_instance_from_json(const json& j) {
  if (!j.is_object()) throw TilingError("tiling file: expected a JSON object");
  if (!j.contains("tiles") || !j.at("tiles").is_array()) throw TilingError("tiling file: missing \"tiles\" array");
  TilingInstance inst;
  for (const auto& t : j.at("tiles")) {
    if (!t.is_string()) throw TilingError("tiles: expected strings");
    inst.problem.tiles.push_back(t.get<std::string>());
  }
  inst.problem.horiz = pairs_from_json(j, "H");
  inst.problem.vert = pairs_from_json(j, "V");
  if (!j.contains("t0") || !j.at("t0").is_string()) throw TilingError("tiling file: missing \"t0\"");
  inst.t0 = j.at("t0").get<std::string>();
  inst.problem.validate();
  if (!inst.problem.declares(inst.t0)) throw TilingError("initial tile '" + inst.t0 + "' is not declared");
  return inst;
}

TilingInstance read_tiling_instance(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw TilingError(std::string("tiling file: ") + e.what());
  }
  return tiling_instance_from_json(j);
}

json tiling_instance_to_json(const TilingInstance& inst) {
  json j;
  j["tiles"] = inst.problem.tiles;
  auto pairs = [](const auto& rel) {
    json arr = json::array();
    for (const auto& [a, b] : rel) arr.push_back({a, b});
    return arr;
  };
  j["H"] = pairs(inst.problem.horiz);
  j["V"] = pairs(inst.problem.vert);
  j["t0"] = inst.t0;
  return j;
}

json tiling_to_json(const TorusTiling& s) {
  json rows = json::array();
  for (std::size_t j = 0; j < s.height; ++j) {
    json row = json::array();
    for (std::size_t i = 0; i < s.width; ++i) row.push_back(s.at(i, j));
    rows.push_back(std::move(row));
  }
  return json{{"width", s.width}, {"height", s.height}, {"rows", std::move(rows)}};
}

bool check_torus_tiling(const TilingProblem& u, const TorusTiling& s) {
  if (s.width == 0 || s.height == 0 || s.grid.size() != s.width * s.height) {
    throw TilingError("tiling grid does not match its dimensions");
  }
  for (const auto& t : s.grid) {
    if (!u.declares(t)) throw TilingError("tiling uses undeclared tile '" + t + "'");
  }
  for (std::size_t j = 0; j < s.height; ++j) {
    for (std::size_t i = 0; i < s.width; ++i) {
      if (!u.allows_horiz(s.at(i, j), s.at(i + 1, j))) return false;
      if (!u.allows_vert(s.at(i, j), s.at(i, j + 1))) return false;
    }
  }
  return true;
}

namespace {

class TorusSolver {
 public:
  TorusSolver(const TilingProblem& u, std::size_t w, std::size_t h) : u_(u), w_(w), h_(h), cells_(w * h) {
    const std::size_t m = u.tiles.size();
    horiz_.assign(m * m, false);
    vert_.assign(m * m, false);
    for (const auto& [a, b] : u.horiz) horiz_[u.index_of(a) * m + u.index_of(b)] = true;
    for (const auto& [a, b] : u.vert) vert_[u.index_of(a) * m + u.index_of(b)] = true;
  }

  std::optional<TorusTiling> solve(std::size_t t0) {
    if (!fits(0, t0)) return std::nullopt;
    cells_[0] = t0;
    if (!extend(1)) return std::nullopt;
    TorusTiling out{w_, h_, {}};
    for (std::size_t c : cells_) out.grid.push_back(u_.tiles[c]);
    return out;
  }

 private:
  bool h_ok(std::size_t a, std::size_t b) const { return horiz_[a * u_.tiles.size() + b]; }
  bool v_ok(std::size_t a, std::size_t b) const { return vert_[a * u_.tiles.size() + b]; }

  // Constraints between cell k = (i, j) and already placed neighbours,
  // including the wrap-around pairs closed by the last column/row.
  bool fits(std::size_t k, std::size_t t) const {
    const std::size_t i = k % w_, j = k / w_;
    if (i > 0 && !h_ok(cells_[k - 1], t)) return false;
    if (i + 1 == w_ && !h_ok(t, i == 0 ? t : cells_[j * w_])) return false;
    if (j > 0 && !v_ok(cells_[k - w_], t)) return false;
    if (j + 1 == h_ && !v_ok(t, j == 0 ? t : cells_[i])) return false;
    return true;
  }

  bool extend(std::size_t k) {
    if (k == cells_.size()) return true;
    for (std::size_t t = 0; t < u_.tiles.size(); ++t) {
      if (!fits(k, t)) continue;
      cells_[k] = t;
      if (extend(k + 1)) return true;
    }
    return false;
  }

  const TilingProblem& u_;
  std::size_t w_, h_;
  std::vector<std::size_t> cells_;
  std::vector<bool> horiz_, vert_;
};

}  // namespace

std::optional<TorusTiling> solve_torus(const TilingProblem& u, const std::string& t0, std::size_t w, std::size_t h) {
  u.validate();
  if (w == 0 || h == 0) throw TilingError("torus dimensions must be positive");
  return TorusSolver(u, w, h).solve(u.index_of(t0));
}

std::optional<TorusTiling> solve_torus_upto(const TilingProblem& u, const std::string& t0, std::size_t max_dim) {
  if (max_dim == 0) throw TilingError("max_dim must be positive");
  std::vector<std::pair<std::size_t, std::size_t>> dims;
  for (std::size_t w = 1; w <= max_dim; ++w)
    for (std::size_t h = 1; h <= max_dim; ++h) dims.emplace_back(w, h);
  std::stable_sort(dims.begin(), dims.end(), [](const auto& a, const auto& b) {
    return std::make_pair(a.first * a.second, a.first) < std::make_pair(b.first * b.second, b.first);
  });
  for (const auto& [w, h] : dims) {
    if (auto s = solve_torus(u, t0, w, h)) return s;
  }
  return std::nullopt;
}

TorusTiling double_tiling(const TorusTiling& s) {
  TorusTiling out{2 * s.width, 2 * s.height, {}};
  out.grid.reserve(out.width * out.height);
  for (std::size_t j = 0; j < out.height; ++j)
    for (std::size_t i = 0; i < out.width; ++i) out.grid.push_back(s.at(i, j));
  return out;
}

}  // namespace dlfd
