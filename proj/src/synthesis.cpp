#include "readeval/synthesis.hpp"

#include <sstream>

#include "readeval/error.hpp"

namespace readeval {

namespace {

const std::vector<std::string>& function_vocab() {
  static const std::vector<std::string> v = {
      "de", "het", "een", "en", "ik",  "je", "hij", "ze", "we",  "in",
      "op", "van", "te",  "is", "was", "er", "aan", "om", "dat", "die"};
  return v;
}

const std::vector<std::string>& content_vocab() {
  static const std::vector<std::string> v = {
      "maan", "roos", "vis",  "boom", "kat",  "huis", "bal",  "pen",  "zon",  "dak",
      "loop", "zit",  "lees", "boot", "raam", "muur", "vuur", "doos", "noot", "aap",
      "teen", "neus", "oog",  "pan",  "sok",  "tak",  "wiel", "jas",  "kip",  "duif"};
  return v;
}

std::size_t prompt_length_for(TaskType task) {
  switch (task) {
    case TaskType::isolated_word: return 1;
    case TaskType::sentence: return 6;
    case TaskType::word_list: return 10;
    case TaskType::story: return 25;
  }
  return 1;
}

void check_prob(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0))
    throw DataError(std::string(what) + " must lie in [0,1]");
}

}  // namespace

void GeneratorConfig::validate() const {
  check_prob(function_word_fraction, "function_word_fraction");
  check_prob(miscue_prob_function, "miscue_prob_function");
  check_prob(miscue_prob_content, "miscue_prob_content");
  check_prob(p_accept_given_correct, "p_accept_given_correct");
  check_prob(p_accept_given_miscue, "p_accept_given_miscue");
  check_prob(deletion_prob, "deletion_prob");
  check_prob(insertion_prob, "insertion_prob");
  confidence_correct.validate();
  confidence_miscue.validate();
  std::size_t total = 0;
  for (const auto& [task, count] : words_per_task) total += count;
  if (total == 0) throw DataError("generator config requests zero words");
}

double GeneratorConfig::marginal_miscue_prob() const {
  return function_word_fraction * miscue_prob_function +
         (1.0 - function_word_fraction) * miscue_prob_content;
}

GeneratedCorpus generate_corpus(const GeneratorConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);

  GeneratedCorpus out;
  std::size_t prompt_counter = 0;
  std::size_t recording_counter = 0;
  std::uint64_t oov_counter = 0;

  // Fixed per-word draw order keeps a seed's stream stable: category,
  // word, miscue, acceptance, confidence, deletion, insertion.
  for (TaskType task : kAllTasks) {
    auto it = cfg.words_per_task.find(task);
    if (it == cfg.words_per_task.end() || it->second == 0) continue;
    std::size_t remaining = it->second;
    const std::size_t per_prompt = prompt_length_for(task);

    while (remaining > 0) {
      const std::size_t n_words = std::min(per_prompt, remaining);
      remaining -= n_words;

      Prompt prompt;
      prompt.id = "p" + std::to_string(++prompt_counter);
      prompt.task = task;
      prompt.exercise = exercise_for(task);

      Recording rec;
      rec.id = "r" + std::to_string(++recording_counter);
      rec.prompt_id = prompt.id;
      rec.speaker_id = "spk" + std::to_string(1 + recording_counter % 8);
      rec.status = RecordingStatus::ok;
      std::vector<WordToken> hypothesis;
      std::vector<double> confidences;

      for (std::size_t w = 0; w < n_words; ++w) {
        const bool is_function = rng.bernoulli(cfg.function_word_fraction);
        const auto& vocab = is_function ? function_vocab() : content_vocab();
        const WordToken word = token(vocab[rng.below(vocab.size())]);
        prompt.words.push_back(word);

        const double miscue_prob =
            is_function ? cfg.miscue_prob_function : cfg.miscue_prob_content;
        const bool miscue = rng.bernoulli(miscue_prob);
        const bool accepted =
            rng.bernoulli(miscue ? cfg.p_accept_given_miscue : cfg.p_accept_given_correct);
        const double confidence =
            (miscue ? cfg.confidence_miscue : cfg.confidence_correct).sample(rng);

        // Miscues and rejections become unique out-of-vocabulary tokens,
        // so the alignment can only recover the drawn labels.
        const bool deleted = rng.bernoulli(cfg.deletion_prob);
        if (miscue)
          rec.transcript.push_back(token("zz" + std::to_string(++oov_counter)));
        else if (!deleted)
          rec.transcript.push_back(word);

        if (rng.bernoulli(cfg.insertion_prob))
          rec.transcript.push_back(token("zz" + std::to_string(++oov_counter)));

        hypothesis.push_back(accepted ? word : token("zz" + std::to_string(++oov_counter)));
        confidences.push_back(confidence);

        out.truth.push_back({rec.id, w, !miscue, accepted});
      }

      rec.hypotheses.emplace(kSimSystemName, std::move(hypothesis));
      rec.confidences = std::move(confidences);
      out.corpus.prompts.push_back(std::move(prompt));
      out.corpus.recordings.push_back(std::move(rec));
    }
  }

  return out;
}

ConfusionRates expected_confusion(const GeneratorConfig& cfg) {
  cfg.validate();
  const double m = cfg.marginal_miscue_prob();
  ConfusionRates r;
  r.car = (1.0 - m) * cfg.p_accept_given_correct;
  r.frr = (1.0 - m) * (1.0 - cfg.p_accept_given_correct);
  r.far = m * cfg.p_accept_given_miscue;
  r.crr = m * (1.0 - cfg.p_accept_given_miscue);
  return r;
}

FunctionLexicon generator_function_lexicon() {
  FunctionLexicon lex;
  for (const std::string& w : function_vocab()) lex.words.insert(w);
  return lex;
}

std::string ground_truth_csv(const std::vector<GroundTruthRow>& rows) {
  std::ostringstream out;
  out << "recording_id,word_index,read_correctly,system_accepted\n";
  for (const GroundTruthRow& r : rows)
    out << r.recording_id << ',' << r.word_index << ',' << (r.read_correctly ? 1 : 0) << ','
        << (r.system_accepted ? 1 : 0) << '\n';
  return out.str();
}

}  // namespace readeval
