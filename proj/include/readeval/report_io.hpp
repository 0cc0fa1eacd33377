#pragma once

#include <string>

#include <json.hpp>

#include "readeval/analysis.hpp"

namespace readeval {

// Type-tagged JSON documents; `render_saved_report` re-renders them.
nlohmann::ordered_json metrics_json(const MetricsReport& report);
nlohmann::ordered_json evaluation_json(const EvaluationResult& result, const std::string& system);
nlohmann::ordered_json sweep_json(const ThresholdSweepResult& sweep);
nlohmann::ordered_json strata_json(const StratifiedReport& strata, const std::string& system);

// CSV tables. Agreement scores print at three decimals, percentage cells
// at one decimal, undefined cells stay blank.
std::string evaluation_csv(const EvaluationResult& result, const std::string& system);
std::string sweep_csv(const ThresholdSweepResult& sweep);
std::string strata_csv(const StratifiedReport& strata, const std::string& system);

// Word-level audit table: recording id, prompt index, reference, predicted.
std::string labels_audit_csv(const Corpus& corpus, const SystemSelector& system,
                             const StatusSet& use = {RecordingStatus::ok});

// Minimal standalone charts.
std::string sweep_svg(const ThresholdSweepResult& sweep);
std::string strata_svg(const StratifiedReport& strata);
std::string evaluation_svg(const EvaluationResult& result, const std::string& system);

// Fixed-width console summaries.
std::string evaluation_table(const EvaluationResult& result, const std::string& system);
std::string strata_table(const StratifiedReport& strata, const std::string& system);
std::string sweep_summary(const ThresholdSweepResult& sweep);

struct RenderedReport {
  std::string kind;  // "evaluate" | "sweep" | "strata"
  std::string csv;
  std::string svg;
};

// Re-renders a saved JSON report to CSV/SVG, dispatching on its "type".
RenderedReport render_saved_report(const nlohmann::json& saved);

// Shared numeric formatting.
std::string fmt_fixed(double v, int decimals);
std::string fmt_score3(const std::optional<double>& v);   // "0.422" or ""
std::string fmt_pct1(const std::optional<double>& v);     // "72.5" or ""

}  // namespace readeval
