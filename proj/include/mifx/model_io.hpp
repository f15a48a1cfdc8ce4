#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "mifx/evaluation.hpp"
#include "mifx/extraction.hpp"

namespace mifx {

nlohmann::ordered_json hist_to_json(const HistogramConfig& cfg);
HistogramConfig hist_from_json(const nlohmann::json& j);

nlohmann::ordered_json ga_to_json(const GaConfig& cfg);
GaConfig ga_from_json(const nlohmann::json& j);

// Model document: {"d","t","method","vectors","hist","seed","diagnostics"}.
nlohmann::ordered_json model_to_json(const ExtractionResult& result,
                                     const HistogramConfig& hist, std::uint64_t seed);
ExtractionResult model_from_json(const nlohmann::json& j);

nlohmann::ordered_json report_to_json(const EvaluationReport& report);
EvaluationReport report_from_json(const nlohmann::json& j);

void write_json(const nlohmann::ordered_json& doc, const std::string& path);
nlohmann::json read_json(const std::string& path);

// FNV-1a 64 over a canonical JSON dump; stable across runs.
std::string config_digest(const nlohmann::ordered_json& config);

} // namespace mifx
