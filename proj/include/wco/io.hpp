#ifndef WCO_IO_HPP
#define WCO_IO_HPP

#include <string>

#include "json.hpp"
#include "wco/bridge.hpp"
#include "wco/continuous.hpp"
#include "wco/dense.hpp"
#include "wco/system.hpp"

namespace wco::io {

using nlohmann::json;

inline constexpr const char* kToolVersion = "0.1.0";

enum class InputKind { System, Matrix };

json load_json_file(const std::string& path);
InputKind detect_kind(const json& doc);

struct LoadedSystem {
  WeightedCompositionSystem sys;
  AnalysisOptions opts;
};

// {"masses": [...], "phi": [1-based...], "u": [...], "options": {...}}
LoadedSystem system_from_json(const json& doc);
json system_to_json(const WeightedCompositionSystem& sys);

// {"dim": n, "entries": [[re, im], ...] row-major, "masses": [...]?}
MatrixOperator matrix_from_json(const json& doc);
json matrix_to_json(const MatrixOperator& T);

// FNV-1a hash of the canonical serialization, hex-encoded.
std::string digest(const json& doc);

json certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const json& doc);

json system_report_to_json(const AnalysisReport& rep, const json& input);
json matrix_report_to_json(const DenseAnalysis& rep, const json& input);
json continuous_report_to_json(const ContinuousReport& rep);

// Re-runs the checkers behind every certificate in a persisted report.
bool reverify_report(const json& report, const json& input);

// Human-readable rendering of a structured report; numeric content is
// printed from the same json the structured output serializes.
std::string render_text(const json& report);

}  // namespace wco::io

#endif
