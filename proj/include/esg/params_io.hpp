#pragma once

#include <json.hpp>
#include <string>

#include "esg/estimation.hpp"
#include "esg/market_model.hpp"
#include "esg/preferences.hpp"

namespace esg {

void to_json(nlohmann::json& j, const ModelParams& p);
void from_json(const nlohmann::json& j, ModelParams& p);
void to_json(nlohmann::json& j, const EsgScoreTable& s);
void from_json(const nlohmann::json& j, EsgScoreTable& s);

/// ModelParams fields at top level, estimation diagnostics under "estimation".
nlohmann::json estimated_to_json(const EstimatedParams& e);

/// Reads a parameter file. Throws IoError if unreadable, ParseError on bad
/// JSON or missing fields, DomainError if the parameters are invalid.
ModelParams load_params(const std::string& path);
EsgScoreTable load_scores(const std::string& path);

void write_json(const std::string& path, const nlohmann::json& j);

}  // namespace esg
