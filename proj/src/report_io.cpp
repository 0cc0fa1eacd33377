#include "readeval/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "readeval/error.hpp"

namespace readeval {

using nlohmann::json;
using nlohmann::ordered_json;

std::string fmt_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

std::string fmt_score3(const std::optional<double>& v) {
  return v ? fmt_fixed(*v, 3) : std::string();
}

std::string fmt_pct1(const std::optional<double>& v) {
  return v ? fmt_fixed(*v * 100.0, 1) : std::string();
}

namespace {

ordered_json opt_json(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

std::optional<double> opt_from_json(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

ordered_json matrix_json(const ConfusionMatrix& cm) {
  ordered_json j;
  j["ca"] = cm.ca;
  j["cr"] = cm.cr;
  j["fa"] = cm.fa;
  j["fr"] = cm.fr;
  return j;
}

ConfusionMatrix matrix_from_json(const json& j) {
  ConfusionMatrix cm;
  cm.ca = j.at("ca").get<std::uint64_t>();
  cm.cr = j.at("cr").get<std::uint64_t>();
  cm.fa = j.at("fa").get<std::uint64_t>();
  cm.fr = j.at("fr").get<std::uint64_t>();
  return cm;
}

constexpr const char* kMetricsCsvHeader =
    "kappa,mcc,ca_pct,cr_pct,fa_pct,fr_pct,"
    "precision_ca,precision_cr,recall_ca,recall_cr,f_ca,f_cr,words";

std::string metrics_csv_cells(const MetricsReport& r) {
  std::ostringstream out;
  out << fmt_score3(r.kappa) << ',' << fmt_score3(r.mcc) << ',' << fmt_pct1(r.car) << ','
      << fmt_pct1(r.crr) << ',' << fmt_pct1(r.far) << ',' << fmt_pct1(r.frr) << ','
      << fmt_pct1(r.ca_class.precision) << ',' << fmt_pct1(r.cr_class.precision) << ','
      << fmt_pct1(r.ca_class.recall) << ',' << fmt_pct1(r.cr_class.recall) << ','
      << fmt_pct1(r.ca_class.f1) << ',' << fmt_pct1(r.cr_class.f1) << ',' << r.total_words;
  return out.str();
}

}  // namespace

ordered_json metrics_json(const MetricsReport& r) {
  ordered_json j;
  j["kappa"] = opt_json(r.kappa);
  j["mcc"] = opt_json(r.mcc);
  j["rates"] = {{"car", opt_json(r.car)},
                {"crr", opt_json(r.crr)},
                {"far", opt_json(r.far)},
                {"frr", opt_json(r.frr)}};
  j["ca"] = {{"precision", opt_json(r.ca_class.precision)},
             {"recall", opt_json(r.ca_class.recall)},
             {"f1", opt_json(r.ca_class.f1)}};
  j["cr"] = {{"precision", opt_json(r.cr_class.precision)},
             {"recall", opt_json(r.cr_class.recall)},
             {"f1", opt_json(r.cr_class.f1)}};
  j["words"] = r.total_words;
  j["matrix"] = matrix_json(r.matrix);
  return j;
}

ordered_json evaluation_json(const EvaluationResult& result, const std::string& system) {
  ordered_json j;
  j["type"] = "evaluate";
  j["system"] = system;
  j["recordings_used"] = result.recordings_used;
  j["recordings_skipped"] = result.recordings_skipped;
  j["metrics"] = metrics_json(result.report);
  return j;
}

ordered_json sweep_json(const ThresholdSweepResult& sweep) {
  ordered_json j;
  j["type"] = "sweep";
  j["objective"] = to_string(sweep.objective);
  j["best_threshold"] = sweep.best_threshold;
  j["best_value"] = sweep.best_value;
  ordered_json points = ordered_json::array();
  for (const SweepPoint& p : sweep.points) {
    ordered_json jp;
    jp["threshold"] = p.threshold;
    jp["kappa"] = opt_json(p.kappa);
    jp["mcc"] = opt_json(p.mcc);
    points.push_back(std::move(jp));
  }
  j["points"] = std::move(points);
  return j;
}

ordered_json strata_json(const StratifiedReport& strata, const std::string& system) {
  ordered_json j;
  j["type"] = "strata";
  j["system"] = system;
  j["dimension"] = to_string(strata.dimension);
  j["recordings_used"] = strata.recordings_used;
  j["recordings_skipped"] = strata.recordings_skipped;
  ordered_json rows = ordered_json::array();
  for (const StratumReport& s : strata.strata) {
    ordered_json row;
    row["stratum"] = s.stratum;
    row["metrics"] = metrics_json(s.report);
    rows.push_back(std::move(row));
  }
  j["strata"] = std::move(rows);
  j["overall"] = metrics_json(strata.overall);
  return j;
}

std::string evaluation_csv(const EvaluationResult& result, const std::string& system) {
  std::ostringstream out;
  out << "system," << kMetricsCsvHeader << '\n';
  out << system << ',' << metrics_csv_cells(result.report) << '\n';
  return out.str();
}

std::string sweep_csv(const ThresholdSweepResult& sweep) {
  std::ostringstream out;
  out << "threshold," << to_string(sweep.objective) << '\n';
  for (const SweepPoint& p : sweep.points) {
    const std::optional<double>& v =
        sweep.objective == SweepObjective::kappa ? p.kappa : p.mcc;
    out << fmt_fixed(p.threshold, 0) << ',' << fmt_score3(v) << '\n';
  }
  return out.str();
}

std::string strata_csv(const StratifiedReport& strata, const std::string& system) {
  std::ostringstream out;
  out << "system,stratum," << kMetricsCsvHeader << '\n';
  for (const StratumReport& s : strata.strata)
    out << system << ',' << s.stratum << ',' << metrics_csv_cells(s.report) << '\n';
  out << system << ",all," << metrics_csv_cells(strata.overall) << '\n';
  return out.str();
}

std::string labels_audit_csv(const Corpus& corpus, const SystemSelector& system,
                             const StatusSet& use) {
  std::ostringstream out;
  out << "recording_id,prompt_index,reference,predicted\n";
  for_each_word_pair(
      corpus, system,
      [&](const WordPair& p) {
        out << p.recording->id << ',' << p.word_index << ',' << (p.reference ? 1 : 0) << ','
            << (p.predicted ? 1 : 0) << '\n';
      },
      use);
  return out.str();
}

namespace {

// Hand-rendered charts: fixed 640x400 canvas, no styling dependencies.
constexpr int kW = 640, kH = 400, kMargin = 50;

std::string svg_open(const std::string& title) {
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
      << "\" viewBox=\"0 0 " << kW << ' ' << kH << "\">\n"
      << "<rect width=\"" << kW << "\" height=\"" << kH << "\" fill=\"white\"/>\n"
      << "<text x=\"" << kW / 2 << "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\""
      << " font-size=\"14\">" << title << "</text>\n";
  return out.str();
}

void svg_axes(std::ostringstream& out) {
  out << "<line x1=\"" << kMargin << "\" y1=\"" << kH - kMargin << "\" x2=\"" << kW - kMargin
      << "\" y2=\"" << kH - kMargin << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin << "\" y2=\""
      << kH - kMargin << "\" stroke=\"black\"/>\n";
}

std::string bar_chart(const std::string& title, const std::vector<std::string>& labels,
                      const std::vector<std::optional<double>>& values) {
  std::ostringstream out;
  out << svg_open(title);
  svg_axes(out);
  const double plot_w = kW - 2 * kMargin;
  const double plot_h = kH - 2 * kMargin;
  const double slot = plot_w / static_cast<double>(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double x = kMargin + slot * static_cast<double>(i) + slot * 0.15;
    if (values[i]) {
      const double v = std::max(0.0, std::min(1.0, *values[i]));
      const double h = v * plot_h;
      out << "<rect x=\"" << fmt_fixed(x, 1) << "\" y=\"" << fmt_fixed(kH - kMargin - h, 1)
          << "\" width=\"" << fmt_fixed(slot * 0.7, 1) << "\" height=\"" << fmt_fixed(h, 1)
          << "\" fill=\"steelblue\"/>\n";
    }
    out << "<text x=\"" << fmt_fixed(x + slot * 0.35, 1) << "\" y=\"" << kH - kMargin + 16
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << labels[i]
        << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace

std::string sweep_svg(const ThresholdSweepResult& sweep) {
  std::ostringstream out;
  out << svg_open(std::string("threshold sweep (") + to_string(sweep.objective) + ")");
  svg_axes(out);
  if (!sweep.points.empty()) {
    const double lo = sweep.points.front().threshold;
    const double hi = sweep.points.back().threshold;
    const double span = hi > lo ? hi - lo : 1.0;
    std::ostringstream pts;
    bool open = false;
    for (const SweepPoint& p : sweep.points) {
      const std::optional<double>& v =
          sweep.objective == SweepObjective::kappa ? p.kappa : p.mcc;
      if (!v) continue;
      const double x = kMargin + (p.threshold - lo) / span * (kW - 2 * kMargin);
      // Map [-1, 1] onto the plot height.
      const double y = kH - kMargin - (*v + 1.0) / 2.0 * (kH - 2 * kMargin);
      if (open) pts << ' ';
      pts << fmt_fixed(x, 1) << ',' << fmt_fixed(y, 1);
      open = true;
    }
    out << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\""
        << pts.str() << "\"/>\n";
    const double bx = kMargin + (sweep.best_threshold - lo) / span * (kW - 2 * kMargin);
    out << "<line x1=\"" << fmt_fixed(bx, 1) << "\" y1=\"" << kMargin << "\" x2=\""
        << fmt_fixed(bx, 1) << "\" y2=\"" << kH - kMargin
        << "\" stroke=\"tomato\" stroke-dasharray=\"4 3\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string strata_svg(const StratifiedReport& strata) {
  std::vector<std::string> labels;
  std::vector<std::optional<double>> values;
  for (const StratumReport& s : strata.strata) {
    labels.push_back(s.stratum);
    values.push_back(s.report.kappa);
  }
  labels.emplace_back("all");
  values.push_back(strata.overall.kappa);
  return bar_chart(std::string("kappa by ") + to_string(strata.dimension), labels, values);
}

std::string evaluation_svg(const EvaluationResult& result, const std::string& system) {
  const MetricsReport& r = result.report;
  return bar_chart("decision rates: " + system, {"CA", "CR", "FA", "FR"},
                   {r.car, r.crr, r.far, r.frr});
}

namespace {

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

constexpr const char* kTableHeader =
    "kappa  mcc    CA%   CR%   FA%   FR%   P_CA  P_CR  R_CA  R_CR  F_CA  F_CR  words";

std::string metrics_table_cells(const MetricsReport& r) {
  std::ostringstream out;
  out << pad(fmt_score3(r.kappa), 7) << pad(fmt_score3(r.mcc), 7) << pad(fmt_pct1(r.car), 6)
      << pad(fmt_pct1(r.crr), 6) << pad(fmt_pct1(r.far), 6) << pad(fmt_pct1(r.frr), 6)
      << pad(fmt_pct1(r.ca_class.precision), 6) << pad(fmt_pct1(r.cr_class.precision), 6)
      << pad(fmt_pct1(r.ca_class.recall), 6) << pad(fmt_pct1(r.cr_class.recall), 6)
      << pad(fmt_pct1(r.ca_class.f1), 6) << pad(fmt_pct1(r.cr_class.f1), 6) << r.total_words;
  return out.str();
}

}  // namespace

std::string evaluation_table(const EvaluationResult& result, const std::string& system) {
  std::ostringstream out;
  const std::size_t name_w = std::max<std::size_t>(system.size() + 2, 14);
  out << pad("system", name_w) << kTableHeader << '\n';
  out << pad(system, name_w) << metrics_table_cells(result.report) << '\n';
  out << "recordings used: " << result.recordings_used
      << ", skipped: " << result.recordings_skipped << '\n';
  return out.str();
}

std::string strata_table(const StratifiedReport& strata, const std::string& system) {
  std::size_t name_w = 10;
  for (const StratumReport& s : strata.strata)
    name_w = std::max(name_w, s.stratum.size() + 2);
  std::ostringstream out;
  out << "system: " << system << ", by " << to_string(strata.dimension) << '\n';
  out << pad("stratum", name_w) << kTableHeader << '\n';
  for (const StratumReport& s : strata.strata)
    out << pad(s.stratum, name_w) << metrics_table_cells(s.report) << '\n';
  out << pad("all", name_w) << metrics_table_cells(strata.overall) << '\n';
  return out.str();
}

std::string sweep_summary(const ThresholdSweepResult& sweep) {
  std::ostringstream out;
  out << "grid points: " << sweep.points.size() << ", objective: " << to_string(sweep.objective)
      << '\n';
  out << "best threshold: " << fmt_fixed(sweep.best_threshold, 0) << " ("
      << to_string(sweep.objective) << " = " << fmt_fixed(sweep.best_value, 3) << ")\n";
  return out.str();
}

namespace {

MetricsReport metrics_from_json(const json& j) {
  return compute_metrics(matrix_from_json(j.at("matrix")));
}

}  // namespace

RenderedReport render_saved_report(const json& saved) {
  if (!saved.is_object() || !saved.contains("type"))
    throw DataError("saved report lacks a \"type\" field");
  const std::string type = saved.at("type").get<std::string>();
  RenderedReport out;
  out.kind = type;

  try {
    if (type == "evaluate") {
      EvaluationResult result;
      result.report = metrics_from_json(saved.at("metrics"));
      result.recordings_used = saved.value("recordings_used", 0u);
      result.recordings_skipped = saved.value("recordings_skipped", 0u);
      const std::string system = saved.value("system", std::string("?"));
      out.csv = evaluation_csv(result, system);
      out.svg = evaluation_svg(result, system);
    } else if (type == "sweep") {
      ThresholdSweepResult sweep;
      sweep.objective = saved.value("objective", std::string("kappa")) == "mcc"
                            ? SweepObjective::mcc
                            : SweepObjective::kappa;
      sweep.best_threshold = saved.at("best_threshold").get<double>();
      sweep.best_value = saved.at("best_value").get<double>();
      for (const auto& jp : saved.at("points")) {
        SweepPoint p;
        p.threshold = jp.at("threshold").get<double>();
        p.kappa = opt_from_json(jp.at("kappa"));
        p.mcc = opt_from_json(jp.at("mcc"));
        sweep.points.push_back(p);
      }
      out.csv = sweep_csv(sweep);
      out.svg = sweep_svg(sweep);
    } else if (type == "strata") {
      StratifiedReport strata;
      strata.dimension = saved.value("dimension", std::string("task")) == "word_category"
                             ? StrataDimension::word_category
                             : StrataDimension::task;
      for (const auto& js : saved.at("strata"))
        strata.strata.push_back(
            {js.at("stratum").get<std::string>(), metrics_from_json(js.at("metrics"))});
      strata.overall = metrics_from_json(saved.at("overall"));
      const std::string system = saved.value("system", std::string("?"));
      out.csv = strata_csv(strata, system);
      out.svg = strata_svg(strata);
    } else {
      throw DataError("unknown saved report type '" + type + "'");
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("saved report is malformed: ") + e.what());
  }
  return out;
}

}  // namespace readeval
