#include "dlfd/model_io.hpp"

#include <sstream>

namespace dlfd {

using nlohmann::json;

json model_to_json(const FiniteInterpretation& i) {
  json j;
  j["n"] = i.size();
  json features = json::object();
  for (const auto& [f, table] : i.features()) features[f.value] = table;
  json concepts = json::object();
  for (const auto& [c, bits] : i.concepts()) concepts[c.value] = members(bits);
  j["features"] = std::move(features);
  j["concepts"] = std::move(concepts);
  return j;
}

namespace {

std::size_t as_index(const json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ModelFormatError(where + ": expected a non-negative integer");
  }
  return v.get<std::size_t>();
}

}  // namespace

FiniteInterpretation model_from_json(const json& j) {
  if (!j.is_object()) throw ModelFormatError("model: expected a JSON object");
  if (!j.contains("n")) throw ModelFormatError("model: missing \"n\"");
  const std::size_t n = as_index(j.at("n"), "n");

  FeatureTables features;
  if (j.contains("features")) {
    const json& fs = j.at("features");
    if (!fs.is_object()) throw ModelFormatError("features: expected an object");
    for (const auto& [name, table] : fs.items()) {
      if (!is_identifier(name)) throw ModelFormatError("features: invalid feature name '" + name + "'");
      if (!table.is_array()) throw ModelFormatError("features." + name + ": expected an array");
      std::vector<Element> vals;
      for (const auto& v : table) vals.push_back(static_cast<Element>(as_index(v, "features." + name)));
      features.emplace(FeatureName(name), std::move(vals));
    }
  }

  ConceptExtents concepts;
  if (j.contains("concepts")) {
    const json& cs = j.at("concepts");
    if (!cs.is_object()) throw ModelFormatError("concepts: expected an object");
    for (const auto& [name, ext] : cs.items()) {
      if (!is_identifier(name)) throw ModelFormatError("concepts: invalid concept name '" + name + "'");
      if (!ext.is_array()) throw ModelFormatError("concepts." + name + ": expected an array");
      std::set<Element> elems;
      for (const auto& v : ext) elems.insert(static_cast<Element>(as_index(v, "concepts." + name)));
      concepts.emplace(ConceptName(name), std::move(elems));
    }
  }
  return FiniteInterpretation::build(n, std::move(features), concepts);
}

std::string write_model(const FiniteInterpretation& i) { return model_to_json(i).dump(2) + "\n"; }

FiniteInterpretation read_model(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ModelFormatError(std::string("model: ") + e.what());
  }
  return model_from_json(j);
}

std::string export_dot(const FiniteInterpretation& i, const DotOptions& opts) {
  std::ostringstream out;
  out << "digraph model {\n";
  out << "  node [shape=circle];\n";
  for (std::size_t x = 0; x < i.size(); ++x) {
    std::string label = std::to_string(x);
    std::string names;
    for (const auto& [c, bits] : i.concepts()) {
      if (!bits[x]) continue;
      if (!names.empty()) names += ",";
      names += c.value;
    }
    if (!names.empty()) label += "\\n" + names;
    out << "  n" << x << " [label=\"" << label << "\"];\n";
  }
  for (const auto& [f, table] : i.features()) {
    for (std::size_t x = 0; x < i.size(); ++x) {
      if (opts.hide_selfloops && table[x] == x) continue;
      out << "  n" << x << " -> n" << table[x] << " [label=\"" << f.value << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace dlfd
