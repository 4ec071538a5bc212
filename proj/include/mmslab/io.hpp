#pragma once

#include "mmslab/corpus.hpp"
#include "mmslab/fields.hpp"
#include "mmslab/space.hpp"

#include <json.hpp>

#include <string>

namespace mmslab {

/// Fixed 12-significant-digit float formatting used by every artifact.
std::string g12(double x);

/// Rounds a double through the 12-digit representation so that emitted JSON
/// numbers are byte-stable.
double round12(double x);

nlohmann::json space_to_json(const MetricMeasureSpace& space);

/// Space file: {"coords": [[...]], "metric": "euclidean"} or
/// {"dist_matrix": [[...]]}, plus optional "mass", "label", "step".
MetricMeasureSpace space_from_json(const nlohmann::json& j);

MetricMeasureSpace load_space(const std::string& path);
void save_space(const MetricMeasureSpace& space, const std::string& path);

/// Function file: {"label": "...", "values": [...]} aligned with point order.
ScalarField field_from_json(const nlohmann::json& j, const MetricMeasureSpace& space);
ScalarField load_field(const std::string& path, const MetricMeasureSpace& space);
void save_field(const ScalarField& field, const std::string& path);

/// Field mini-language (used by CLI flags and the acceptance suite):
///   file:PATH | coord:K | linear:c0,c1[,c2] | dist:ID | rand:SEED[:ANCHORS]
///   const:V | cut:ID
ScalarField parse_field_spec(const std::string& spec, const MetricMeasureSpace& space);

GeneratorSpec generator_from_json(const nlohmann::json& j);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace mmslab
