#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "readeval/corpus.hpp"
#include "readeval/random.hpp"

namespace readeval {

inline constexpr int kMaxAttempts = 3;

// What a pupil produced for one target word on one attempt.
struct Attempt {
  WordToken spoken;
  std::optional<double> confidence;
};

// Accept/reject contract of the word-level decision backend.
class Judge {
 public:
  virtual ~Judge() = default;
  virtual bool accept(const WordToken& target, const Attempt& attempt, int attempt_index) = 0;
};

// Produces attempts; scripted or stochastic.
class Reader {
 public:
  virtual ~Reader() = default;
  virtual Attempt speak(const WordToken& target, int attempt_index) = 0;
};

// Accepts exactly the correctly read words.
class ExactJudge : public Judge {
 public:
  bool accept(const WordToken& target, const Attempt& attempt, int) override {
    return tokens_match(target, attempt.spoken);
  }
};

// Confusion-rate model: accepts a correct reading with probability
// p_accept_correct and a miscue with probability p_accept_miscue.
class RateJudge : public Judge {
 public:
  RateJudge(double p_accept_correct, double p_accept_miscue, std::uint64_t seed)
      : p_correct_(p_accept_correct), p_miscue_(p_accept_miscue), rng_(seed) {}

  bool accept(const WordToken& target, const Attempt& attempt, int) override {
    const bool correct = tokens_match(target, attempt.spoken);
    return rng_.bernoulli(correct ? p_correct_ : p_miscue_);
  }

 private:
  double p_correct_;
  double p_miscue_;
  Rng rng_;
};

// Accepts iff the attempt carries a confidence >= threshold.
class ThresholdJudge : public Judge {
 public:
  explicit ThresholdJudge(double threshold) : threshold_(threshold) {}

  bool accept(const WordToken&, const Attempt& attempt, int) override {
    return attempt.confidence.has_value() && *attempt.confidence >= threshold_;
  }

 private:
  double threshold_;
};

class FunctionJudge : public Judge {
 public:
  using Fn = std::function<bool(const WordToken&, const Attempt&, int)>;
  explicit FunctionJudge(Fn fn) : fn_(std::move(fn)) {}
  bool accept(const WordToken& t, const Attempt& a, int i) override { return fn_(t, a, i); }

 private:
  Fn fn_;
};

// Always reads the target word.
class PerfectReader : public Reader {
 public:
  Attempt speak(const WordToken& target, int) override { return {target, std::nullopt}; }
};

// Misreads with a fixed probability; miscues come out as unique
// out-of-vocabulary tokens so they never match anything. Optional score
// distributions attach a confidence to each attempt.
class MiscueReader : public Reader {
 public:
  MiscueReader(double miscue_prob, std::uint64_t seed,
               const PiecewiseConstant* confidence_correct = nullptr,
               const PiecewiseConstant* confidence_miscue = nullptr)
      : miscue_prob_(miscue_prob),
        rng_(seed),
        conf_correct_(confidence_correct),
        conf_miscue_(confidence_miscue) {}

  Attempt speak(const WordToken& target, int) override;

 private:
  double miscue_prob_;
  Rng rng_;
  const PiecewiseConstant* conf_correct_;
  const PiecewiseConstant* conf_miscue_;
  std::uint64_t oov_counter_ = 0;
};

class FunctionReader : public Reader {
 public:
  using Fn = std::function<Attempt(const WordToken&, int)>;
  explicit FunctionReader(Fn fn) : fn_(std::move(fn)) {}
  Attempt speak(const WordToken& t, int i) override { return fn_(t, i); }

 private:
  Fn fn_;
};

// One accuracy item: up to three attempts, stop on the first accept.
// A multi-word (sentence) attempt is accepted iff every word is accepted.
struct AccuracyOutcome {
  std::string item_id;
  int attempts_used = 0;
  bool final_accepted = false;
  std::vector<bool> attempt_decisions;  // one per attempt made
};

// One fluency session over a word list or story: round 1 judges every
// item, the retry phase re-presents exactly the rejected items, round 2
// re-presents (and re-judges) the whole list.
struct FluencySessionLog {
  std::string item_id;
  std::vector<bool> round1;
  std::vector<std::size_t> retry_indices;
  std::vector<bool> retry_decisions;
  std::vector<bool> round2;
};

AccuracyOutcome run_accuracy_item(const Prompt& item, Judge& judge, Reader& reader);
FluencySessionLog run_fluency_session(const Prompt& list, Judge& judge, Reader& reader);

// JSON-lines session events, one object per judged attempt:
// {"session","phase","item","attempt","decision",...}.
void write_accuracy_events(std::ostream& out, const std::string& session_id,
                           const AccuracyOutcome& outcome);
void write_fluency_events(std::ostream& out, const std::string& session_id,
                          const FluencySessionLog& log);

}  // namespace readeval
