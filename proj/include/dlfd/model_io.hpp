// Interchange formats for finite interpretations.
//
// `.dlfdmodel` is JSON: {"n": int, "features": {name: [int; n]},
// "concepts": {name: [sorted ints]}}. Keys are emitted in sorted order so
// that output is byte-stable.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

#include "dlfd/interp.hpp"

namespace dlfd {

class ModelFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json model_to_json(const FiniteInterpretation& i);
/// Throws ModelFormatError on malformed JSON or shape, InterpretationError
/// on tables that are not total functions.
FiniteInterpretation model_from_json(const nlohmann::json& j);

std::string write_model(const FiniteInterpretation& i);
FiniteInterpretation read_model(std::string_view text);

struct DotOptions {
  /// Drop edges x -f-> x.
  bool hide_selfloops = false;
};

/// Feature graph: one node per element labeled with its concepts, one edge
/// per (feature, element) labeled with the feature name.
std::string export_dot(const FiniteInterpretation& i, const DotOptions& opts = {});

}  // namespace dlfd
