#include "readeval/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "readeval/error.hpp"

namespace readeval {

SystemSelector SystemSelector::hypothesis(std::string name) {
  if (name.empty()) throw DataError("hypothesis system name is empty");
  SystemSelector s;
  s.name_ = std::move(name);
  return s;
}

SystemSelector SystemSelector::threshold(double t) {
  SystemSelector s;
  s.is_threshold_ = true;
  s.threshold_ = t;
  return s;
}

SystemSelector SystemSelector::parse(const std::string& spec) {
  constexpr const char* kPrefix = "threshold:";
  if (spec.rfind(kPrefix, 0) == 0) {
    const std::string rest = spec.substr(std::string(kPrefix).size());
    std::size_t used = 0;
    double t = 0;
    try {
      t = std::stod(rest, &used);
    } catch (const std::exception&) {
      throw DataError("malformed threshold selector '" + spec + "'");
    }
    if (used != rest.size()) throw DataError("malformed threshold selector '" + spec + "'");
    return threshold(t);
  }
  return hypothesis(spec);
}

std::string SystemSelector::to_string() const {
  if (!is_threshold_) return name_;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "threshold:%g", threshold_);
  return buf;
}

std::pair<std::size_t, std::size_t> for_each_word_pair(
    const Corpus& corpus, const SystemSelector& system,
    const std::function<void(const WordPair&)>& sink, const StatusSet& use) {
  std::size_t used = 0;
  std::size_t skipped = 0;
  for (const Recording& rec : corpus.recordings) {
    if (!use.count(rec.status)) continue;
    const Prompt& prompt = corpus.prompt_of(rec);

    BinaryLabels predicted;
    if (system.is_threshold()) {
      if (!rec.confidences) {
        ++skipped;
        continue;
      }
      predicted = threshold_labels(*rec.confidences, system.threshold_value());
    } else {
      auto it = rec.hypotheses.find(system.name());
      if (it == rec.hypotheses.end()) {
        ++skipped;
        continue;
      }
      predicted = hypothesis_labels(rec, prompt, system.name());
    }

    const BinaryLabels reference = reference_labels(rec, prompt);
    ++used;
    for (std::size_t i = 0; i < reference.size(); ++i)
      sink({&rec, &prompt, i, reference[i] != 0, predicted[i] != 0});
  }
  return {used, skipped};
}

EvaluationResult evaluate(const Corpus& corpus, const SystemSelector& system,
                          const StatusSet& use) {
  ConfusionMatrix pooled;
  ConfusionMatrix per_recording;
  const Recording* current = nullptr;

  auto flush = [&] {
    if (current) pooled = merge(pooled, per_recording);
    per_recording = {};
  };

  const auto [used, skipped] = for_each_word_pair(
      corpus, system,
      [&](const WordPair& p) {
        if (p.recording != current) {
          flush();
          current = p.recording;
        }
        if (p.reference)
          p.predicted ? ++per_recording.ca : ++per_recording.fr;
        else
          p.predicted ? ++per_recording.fa : ++per_recording.cr;
      },
      use);
  flush();

  if (used == 0)
    throw DataError("no usable recordings for system '" + system.to_string() + "' (" +
                    std::to_string(skipped) + " kept recordings lack its output)");

  EvaluationResult result;
  result.report = compute_metrics(pooled);
  result.recordings_used = used;
  result.recordings_skipped = skipped;
  return result;
}

const char* to_string(SweepObjective o) {
  return o == SweepObjective::kappa ? "kappa" : "mcc";
}

ThresholdSweepResult sweep_threshold(const Corpus& corpus, const std::vector<double>& grid,
                                     SweepObjective objective, const StatusSet& use) {
  if (grid.empty()) throw ComputeError("threshold sweep over an empty grid");

  // Pool (reference, confidence) pairs once; each grid point then only
  // re-thresholds the scores.
  std::vector<std::pair<bool, double>> pairs;
  const auto [used, skipped] = for_each_word_pair(
      corpus, SystemSelector::threshold(0.0),
      [&](const WordPair& p) {
        pairs.emplace_back(p.reference, (*p.recording->confidences)[p.word_index]);
      },
      use);
  (void)skipped;
  if (used == 0 || pairs.empty())
    throw DataError("no kept recording carries confidence scores");

  std::vector<double> sorted_grid = grid;
  std::sort(sorted_grid.begin(), sorted_grid.end());
  sorted_grid.erase(std::unique(sorted_grid.begin(), sorted_grid.end()), sorted_grid.end());

  ThresholdSweepResult result;
  result.objective = objective;
  bool any_defined = false;

  for (double t : sorted_grid) {
    ConfusionMatrix cm;
    for (const auto& [ref, conf] : pairs) {
      const bool accept = conf >= t;
      if (ref)
        accept ? ++cm.ca : ++cm.fr;
      else
        accept ? ++cm.fa : ++cm.cr;
    }
    SweepPoint point;
    point.threshold = t;
    point.kappa = cohens_kappa(cm);
    point.mcc = mcc(cm);
    const std::optional<double> value =
        objective == SweepObjective::kappa ? point.kappa : point.mcc;
    if (value && (!any_defined || *value > result.best_value)) {
      any_defined = true;
      result.best_value = *value;
      result.best_threshold = t;
    }
    result.points.push_back(point);
  }

  if (!any_defined)
    throw ComputeError(std::string("all ") + to_string(objective) +
                       " values are undefined across the grid");
  return result;
}

std::vector<double> parse_grid(const std::string& spec) {
  double lo = 0, hi = 0, step = 0;
  char extra = 0;
  const int got = std::sscanf(spec.c_str(), "%lf:%lf:%lf%c", &lo, &hi, &step, &extra);
  if (got != 3 || step <= 0 || hi < lo)
    throw DataError("malformed grid spec '" + spec + "' (want LO:HI:STEP with STEP > 0)");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>((hi - lo) / step) + 2);
  // Index-based stepping avoids accumulating rounding error.
  for (std::size_t k = 0;; ++k) {
    const double t = lo + static_cast<double>(k) * step;
    if (t > hi + step * 1e-9) break;
    grid.push_back(std::min(t, hi));
  }
  return grid;
}

const char* to_string(StrataDimension d) {
  return d == StrataDimension::task ? "task" : "word_category";
}

StratifiedReport evaluate_strata(const Corpus& corpus, const SystemSelector& system,
                                 StrataDimension dimension, const FunctionLexicon* lexicon,
                                 const StatusSet& use) {
  if (dimension == StrataDimension::word_category && lexicon == nullptr)
    throw DataError("word_category stratification requires a function lexicon");

  std::vector<std::string> names;
  if (dimension == StrataDimension::task) {
    for (TaskType t : kAllTasks) names.emplace_back(to_string(t));
  } else {
    names = {to_string(WordCategory::function_word), to_string(WordCategory::content_word)};
  }

  std::vector<ConfusionMatrix> cells(names.size());
  ConfusionMatrix overall;

  const auto [used, skipped] = for_each_word_pair(
      corpus, system,
      [&](const WordPair& p) {
        std::size_t slot;
        if (dimension == StrataDimension::task) {
          slot = static_cast<std::size_t>(p.prompt->task);
        } else {
          const WordCategory cat =
              classify_word_category(p.prompt->words[p.word_index], *lexicon);
          slot = cat == WordCategory::function_word ? 0 : 1;
        }
        ConfusionMatrix& cm = cells[slot];
        if (p.reference)
          p.predicted ? ++cm.ca : ++cm.fr;
        else
          p.predicted ? ++cm.fa : ++cm.cr;
        if (p.reference)
          p.predicted ? ++overall.ca : ++overall.fr;
        else
          p.predicted ? ++overall.fa : ++overall.cr;
      },
      use);

  if (used == 0)
    throw DataError("no usable recordings for system '" + system.to_string() + "'");

  StratifiedReport report;
  report.dimension = dimension;
  report.recordings_used = used;
  report.recordings_skipped = skipped;
  for (std::size_t i = 0; i < names.size(); ++i)
    report.strata.push_back({names[i], compute_metrics(cells[i])});
  report.overall = compute_metrics(overall);
  return report;
}

Corpus remove_stratum(const Corpus& corpus, TaskType task) {
  Corpus out;
  out.prompts = corpus.prompts;
  out.recordings.reserve(corpus.recordings.size());
  for (const Recording& r : corpus.recordings)
    if (corpus.prompt_of(r).task != task) out.recordings.push_back(r);
  return out;
}

}  // namespace readeval
