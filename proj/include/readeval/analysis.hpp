#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "readeval/metrics.hpp"

namespace readeval {

// Which per-word system judgment to evaluate: a named hypothesis aligned
// to the prompt, or per-word confidence scores cut at a threshold.
class SystemSelector {
 public:
  static SystemSelector hypothesis(std::string name);
  static SystemSelector threshold(double t);

  // "threshold:T" selects the confidence classifier; anything else is a
  // hypothesis name.
  static SystemSelector parse(const std::string& spec);

  bool is_threshold() const { return is_threshold_; }
  double threshold_value() const { return threshold_; }
  const std::string& name() const { return name_; }
  std::string to_string() const;

 private:
  SystemSelector() = default;
  bool is_threshold_ = false;
  std::string name_;
  double threshold_ = 0;
};

using StatusSet = std::set<RecordingStatus>;

// One pooled word-level decision pair.
struct WordPair {
  const Recording* recording = nullptr;
  const Prompt* prompt = nullptr;
  std::size_t word_index = 0;
  bool reference = false;
  bool predicted = false;
};

// Streams every (reference, predicted) pair over recordings whose status
// is in `use`. Recordings that lack the selected output are skipped.
// Returns {recordings used, recordings skipped}.
std::pair<std::size_t, std::size_t> for_each_word_pair(
    const Corpus& corpus, const SystemSelector& system,
    const std::function<void(const WordPair&)>& sink,
    const StatusSet& use = {RecordingStatus::ok});

struct EvaluationResult {
  MetricsReport report;
  std::size_t recordings_used = 0;
  std::size_t recordings_skipped = 0;  // kept status, but missing the selected output
};

// Pools word-level decisions across recordings into one confusion matrix
// and computes the full report. Throws when no recording is usable.
EvaluationResult evaluate(const Corpus& corpus, const SystemSelector& system,
                          const StatusSet& use = {RecordingStatus::ok});

enum class SweepObjective { kappa, mcc };

struct SweepPoint {
  double threshold = 0;
  std::optional<double> kappa;
  std::optional<double> mcc;
};

struct ThresholdSweepResult {
  std::vector<SweepPoint> points;  // ascending threshold order
  double best_threshold = 0;       // smallest grid point attaining best_value
  double best_value = 0;           // max of the defined objective values
  SweepObjective objective = SweepObjective::kappa;
};

const char* to_string(SweepObjective);

// Evaluates the confidence classifier at every grid threshold. Undefined
// objective values are excluded from the argmax; ties go to the smallest
// threshold. Throws when no recording carries confidences or when every
// grid point is undefined.
ThresholdSweepResult sweep_threshold(const Corpus& corpus, const std::vector<double>& grid,
                                     SweepObjective objective = SweepObjective::kappa,
                                     const StatusSet& use = {RecordingStatus::ok});

// "LO:HI:STEP" -> inclusive ascending grid; "0:100:1" has 101 points.
std::vector<double> parse_grid(const std::string& spec);

enum class StrataDimension { task, word_category };

const char* to_string(StrataDimension);

struct StratumReport {
  std::string stratum;
  MetricsReport report;
};

struct StratifiedReport {
  StrataDimension dimension = StrataDimension::task;
  std::vector<StratumReport> strata;  // fixed order: task enum order, or function/content
  MetricsReport overall;
  std::size_t recordings_used = 0;
  std::size_t recordings_skipped = 0;
};

// Assigns each pooled word pair to exactly one stratum — the prompt's
// task, or the prompt word's lexicon category — and reports per-stratum
// metrics. Empty strata get a null-marked report with zero count. The
// lexicon is required for the word_category dimension.
StratifiedReport evaluate_strata(const Corpus& corpus, const SystemSelector& system,
                                 StrataDimension dimension,
                                 const FunctionLexicon* lexicon = nullptr,
                                 const StatusSet& use = {RecordingStatus::ok});

// Corpus without the recordings whose prompt has the given task.
Corpus remove_stratum(const Corpus& corpus, TaskType task);

}  // namespace readeval
