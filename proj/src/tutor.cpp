#include "readeval/tutor.hpp"

#include <json.hpp>

#include "readeval/error.hpp"

namespace readeval {

Attempt MiscueReader::speak(const WordToken& target, int) {
  Attempt a;
  const bool miscue = rng_.bernoulli(miscue_prob_);
  a.spoken = miscue ? token("zz" + std::to_string(++oov_counter_)) : target;
  const PiecewiseConstant* dist = miscue ? conf_miscue_ : conf_correct_;
  if (dist) a.confidence = dist->sample(rng_);
  return a;
}

namespace {

// One whole-item attempt: every word is read and judged; the attempt is
// accepted iff every word is accepted.
bool judge_item(const Prompt& item, Judge& judge, Reader& reader, int attempt_index) {
  bool all_accepted = true;
  for (const WordToken& word : item.words) {
    const Attempt a = reader.speak(word, attempt_index);
    if (!judge.accept(word, a, attempt_index)) all_accepted = false;
  }
  return all_accepted;
}

}  // namespace

AccuracyOutcome run_accuracy_item(const Prompt& item, Judge& judge, Reader& reader) {
  if (item.exercise != ExerciseKind::accuracy)
    throw DataError("prompt '" + item.id + "' is not an accuracy exercise");

  AccuracyOutcome outcome;
  outcome.item_id = item.id;
  for (int attempt = 1; attempt <= kMaxAttempts; ++attempt) {
    const bool accepted = judge_item(item, judge, reader, attempt);
    outcome.attempt_decisions.push_back(accepted);
    outcome.attempts_used = attempt;
    if (accepted) {
      outcome.final_accepted = true;
      break;
    }
  }
  return outcome;
}

FluencySessionLog run_fluency_session(const Prompt& list, Judge& judge, Reader& reader) {
  if (list.exercise != ExerciseKind::fluency)
    throw DataError("prompt '" + list.id + "' is not a fluency exercise");

  FluencySessionLog log;
  log.item_id = list.id;

  for (const WordToken& word : list.words) {
    const Attempt a = reader.speak(word, 1);
    log.round1.push_back(judge.accept(word, a, 1));
  }
  for (std::size_t i = 0; i < log.round1.size(); ++i)
    if (!log.round1[i]) log.retry_indices.push_back(i);

  for (std::size_t i : log.retry_indices) {
    const Attempt a = reader.speak(list.words[i], 2);
    log.retry_decisions.push_back(judge.accept(list.words[i], a, 2));
  }

  for (const WordToken& word : list.words) {
    const Attempt a = reader.speak(word, 3);
    log.round2.push_back(judge.accept(word, a, 3));
  }
  return log;
}

namespace {

void emit_event(std::ostream& out, const std::string& session_id, const char* phase,
                const std::string& item, std::size_t word_index, bool has_word_index,
                int attempt, bool accepted) {
  nlohmann::ordered_json e;
  e["session"] = session_id;
  e["phase"] = phase;
  e["item"] = item;
  if (has_word_index) e["word_index"] = word_index;
  e["attempt"] = attempt;
  e["decision"] = accepted ? "accept" : "reject";
  out << e.dump() << '\n';
}

}  // namespace

void write_accuracy_events(std::ostream& out, const std::string& session_id,
                           const AccuracyOutcome& outcome) {
  for (std::size_t k = 0; k < outcome.attempt_decisions.size(); ++k)
    emit_event(out, session_id, "accuracy", outcome.item_id, 0, false,
               static_cast<int>(k) + 1, outcome.attempt_decisions[k]);
}

void write_fluency_events(std::ostream& out, const std::string& session_id,
                          const FluencySessionLog& log) {
  for (std::size_t i = 0; i < log.round1.size(); ++i)
    emit_event(out, session_id, "round1", log.item_id, i, true, 1, log.round1[i]);
  for (std::size_t k = 0; k < log.retry_indices.size(); ++k)
    emit_event(out, session_id, "retry", log.item_id, log.retry_indices[k], true, 2,
               log.retry_decisions[k]);
  for (std::size_t i = 0; i < log.round2.size(); ++i)
    emit_event(out, session_id, "round2", log.item_id, i, true, 3, log.round2[i]);
}

}  // namespace readeval
