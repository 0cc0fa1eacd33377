#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "readeval/token.hpp"

namespace readeval {

enum class TaskType { isolated_word, sentence, word_list, story };
enum class ExerciseKind { accuracy, fluency };
enum class RecordingStatus { ok, empty, damaged, noisy };

inline constexpr std::array<TaskType, 4> kAllTasks = {
    TaskType::isolated_word, TaskType::sentence, TaskType::word_list, TaskType::story};
inline constexpr std::array<RecordingStatus, 4> kAllStatuses = {
    RecordingStatus::ok, RecordingStatus::empty, RecordingStatus::damaged,
    RecordingStatus::noisy};

// Isolated words and sentences train accuracy; word lists and stories
// train fluency.
ExerciseKind exercise_for(TaskType task);

const char* to_string(TaskType);
const char* to_string(ExerciseKind);
const char* to_string(RecordingStatus);
TaskType task_from_string(const std::string&);
ExerciseKind exercise_from_string(const std::string&);
RecordingStatus status_from_string(const std::string&);

// The target word sequence of one exercise item.
struct Prompt {
  std::string id;
  std::vector<WordToken> words;
  TaskType task = TaskType::sentence;
  ExerciseKind exercise = ExerciseKind::accuracy;

  friend bool operator==(const Prompt&, const Prompt&) = default;
};

// One pupil attempt at a prompt: the human transcript, per-system
// hypothesis token sequences, and (when the engine reports them)
// per-prompt-word confidence scores in [0, 100].
struct Recording {
  std::string id;
  std::string prompt_id;
  std::string speaker_id;
  RecordingStatus status = RecordingStatus::ok;
  std::vector<WordToken> transcript;
  std::map<std::string, std::vector<WordToken>> hypotheses;
  std::optional<std::vector<double>> confidences;

  friend bool operator==(const Recording&, const Recording&) = default;
};

struct Corpus {
  std::vector<Prompt> prompts;
  std::vector<Recording> recordings;

  const Prompt* find_prompt(const std::string& id) const;
  // Throws DataError when the recording references an unknown prompt.
  const Prompt& prompt_of(const Recording& rec) const;

  friend bool operator==(const Corpus&, const Corpus&) = default;
};

// Cross-record invariants: ids unique, prompt references resolve,
// confidence vectors sized to the prompt, scores inside [0, 100].
void validate_corpus(const Corpus& corpus);

// JSON manifest ingestion. `load_corpus` reads a file; the _text variant
// parses an in-memory document (handy for tests).
Corpus load_corpus(const std::string& path);
Corpus load_corpus_text(const std::string& json_text);

// Flat TSV ingestion: one record per line, one token per column,
// '#'-prefixed comment lines ignored. Row kinds:
//   prompt     <id> <task> <word>...
//   recording  <id> <prompt_id> <speaker_id> <status>
//   transcript <id> <token>...
//   hypothesis <id> <system> <token>...
//   confidences <id> <score>...
Corpus load_corpus_tsv(const std::string& path);

void save_corpus(const Corpus& corpus, const std::string& path);
std::string corpus_to_json_text(const Corpus& corpus);

// Keeps exactly the recordings whose status is in `keep`; prompts unchanged.
Corpus filter_recordings(const Corpus& corpus, const std::set<RecordingStatus>& keep);

// Normalized word forms designated as function words.
struct FunctionLexicon {
  std::set<std::string> words;

  bool contains(const WordToken& t) const { return words.count(t.normalized) > 0; }
};

enum class WordCategory { function_word, content_word };

const char* to_string(WordCategory);

// Function iff the normalized form is in the lexicon, else content.
WordCategory classify_word_category(const WordToken& token, const FunctionLexicon& lexicon);

// One word per line, UTF-8; entries are normalized on load.
FunctionLexicon load_function_lexicon(const std::string& path);
FunctionLexicon parse_function_lexicon(std::istream& in);

}  // namespace readeval
