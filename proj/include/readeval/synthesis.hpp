#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "readeval/analysis.hpp"
#include "readeval/random.hpp"

namespace readeval {

inline constexpr const char* kSimSystemName = "sim";

// Knobs for the synthetic corpus generator. Every probability is a
// per-word Bernoulli; confidences are drawn from score distributions
// conditioned on whether the word was read correctly.
struct GeneratorConfig {
  std::uint64_t seed = 1;

  // Total words generated per task; prompts are cut to task-typical lengths.
  std::map<TaskType, std::size_t> words_per_task = {
      {TaskType::isolated_word, 40},
      {TaskType::sentence, 120},
      {TaskType::word_list, 160},
      {TaskType::story, 200},
  };

  double function_word_fraction = 0.4;
  double miscue_prob_function = 0.10;
  double miscue_prob_content = 0.20;

  double p_accept_given_correct = 0.90;
  double p_accept_given_miscue = 0.30;

  PiecewiseConstant confidence_correct = {{{55, 95, 1.0}}};
  PiecewiseConstant confidence_miscue = {{{5, 65, 1.0}}};

  // Optional transcript noise. Miscues are otherwise realized purely as
  // substitutions with unique out-of-vocabulary tokens, which keeps the
  // alignment labels identical to the drawn truth; these knobs break
  // that identity on purpose.
  double deletion_prob = 0.0;
  double insertion_prob = 0.0;

  void validate() const;

  // Marginal probability that a word is misread, mixing the two categories.
  double marginal_miscue_prob() const;
};

struct GroundTruthRow {
  std::string recording_id;
  std::size_t word_index = 0;
  bool read_correctly = false;
  bool system_accepted = false;
};

struct GeneratedCorpus {
  Corpus corpus;
  std::vector<GroundTruthRow> truth;
};

// Draws prompts and recordings per the config. Identical seeds yield
// identical corpora. The simulated system's hypotheses are stored under
// kSimSystemName; confidences cover every prompt word.
GeneratedCorpus generate_corpus(const GeneratorConfig& cfg);

// Analytic expected cell rates, with m the marginal miscue probability:
//   car = (1-m) * p_accept_given_correct    frr = (1-m) * (1 - p_accept_given_correct)
//   far = m * p_accept_given_miscue         crr = m * (1 - p_accept_given_miscue)
ConfusionRates expected_confusion(const GeneratorConfig& cfg);

// The function-word vocabulary the generator draws from, as a lexicon
// for category stratification of generated corpora.
FunctionLexicon generator_function_lexicon();

// Sidecar ground-truth table (CSV with header).
std::string ground_truth_csv(const std::vector<GroundTruthRow>& rows);

}  // namespace readeval
