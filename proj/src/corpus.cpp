#include "readeval/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "readeval/error.hpp"

namespace readeval {

using nlohmann::json;
using nlohmann::ordered_json;

ExerciseKind exercise_for(TaskType task) {
  switch (task) {
    case TaskType::isolated_word:
    case TaskType::sentence:
      return ExerciseKind::accuracy;
    case TaskType::word_list:
    case TaskType::story:
      return ExerciseKind::fluency;
  }
  throw DataError("unknown task type");
}

const char* to_string(TaskType t) {
  switch (t) {
    case TaskType::isolated_word: return "isolated_word";
    case TaskType::sentence: return "sentence";
    case TaskType::word_list: return "word_list";
    case TaskType::story: return "story";
  }
  return "?";
}

const char* to_string(ExerciseKind k) {
  return k == ExerciseKind::accuracy ? "accuracy" : "fluency";
}

const char* to_string(RecordingStatus s) {
  switch (s) {
    case RecordingStatus::ok: return "ok";
    case RecordingStatus::empty: return "empty";
    case RecordingStatus::damaged: return "damaged";
    case RecordingStatus::noisy: return "noisy";
  }
  return "?";
}

const char* to_string(WordCategory c) {
  return c == WordCategory::function_word ? "function" : "content";
}

TaskType task_from_string(const std::string& s) {
  for (TaskType t : kAllTasks)
    if (s == to_string(t)) return t;
  throw DataError("unknown task type: '" + s + "'");
}

ExerciseKind exercise_from_string(const std::string& s) {
  if (s == "accuracy") return ExerciseKind::accuracy;
  if (s == "fluency") return ExerciseKind::fluency;
  throw DataError("unknown exercise kind: '" + s + "'");
}

RecordingStatus status_from_string(const std::string& s) {
  for (RecordingStatus st : kAllStatuses)
    if (s == to_string(st)) return st;
  throw DataError("unknown recording status: '" + s + "'");
}

const Prompt* Corpus::find_prompt(const std::string& id) const {
  for (const Prompt& p : prompts)
    if (p.id == id) return &p;
  return nullptr;
}

const Prompt& Corpus::prompt_of(const Recording& rec) const {
  const Prompt* p = find_prompt(rec.prompt_id);
  if (!p)
    throw DataError("recording '" + rec.id + "' references unknown prompt '" + rec.prompt_id +
                    "'");
  return *p;
}

namespace {

std::vector<WordToken> normalize_all(const std::vector<std::string>& raws) {
  std::vector<WordToken> out;
  out.reserve(raws.size());
  for (const std::string& r : raws)
    if (auto t = normalize_token(r)) out.push_back(std::move(*t));
  return out;
}

std::unordered_map<std::string, const Prompt*> index_prompts(const Corpus& c) {
  std::unordered_map<std::string, const Prompt*> idx;
  idx.reserve(c.prompts.size());
  for (const Prompt& p : c.prompts) idx.emplace(p.id, &p);
  return idx;
}

}  // namespace

void validate_corpus(const Corpus& corpus) {
  std::unordered_set<std::string> prompt_ids;
  for (const Prompt& p : corpus.prompts) {
    if (p.id.empty()) throw DataError("prompt with empty id");
    if (!prompt_ids.insert(p.id).second)
      throw DataError("duplicate prompt id '" + p.id + "'");
    if (p.words.empty()) throw DataError("prompt '" + p.id + "' has no words");
    if (p.task == TaskType::isolated_word && p.words.size() != 1)
      throw DataError("prompt '" + p.id + "' is isolated_word but has " +
                      std::to_string(p.words.size()) + " words");
    if (p.exercise != exercise_for(p.task))
      throw DataError("prompt '" + p.id + "' pairs task " + to_string(p.task) +
                      " with exercise " + to_string(p.exercise));
  }

  const auto idx = index_prompts(corpus);
  std::unordered_set<std::string> recording_ids;
  for (const Recording& r : corpus.recordings) {
    if (r.id.empty()) throw DataError("recording with empty id");
    if (!recording_ids.insert(r.id).second)
      throw DataError("duplicate recording id '" + r.id + "'");
    auto it = idx.find(r.prompt_id);
    if (it == idx.end())
      throw DataError("recording '" + r.id + "' references unknown prompt '" + r.prompt_id +
                      "'");
    if (r.confidences) {
      const std::size_t want = it->second->words.size();
      if (r.confidences->size() != want)
        throw DataError("recording '" + r.id + "' has " +
                        std::to_string(r.confidences->size()) + " confidences for a " +
                        std::to_string(want) + "-word prompt");
      for (double c : *r.confidences)
        if (!(c >= 0.0 && c <= 100.0))
          throw DataError("recording '" + r.id + "' has confidence " + std::to_string(c) +
                          " outside [0,100]");
    }
  }
}

namespace {

std::vector<std::string> string_array(const json& j, const std::string& where) {
  if (!j.is_array()) throw DataError(where + ": expected an array of strings");
  std::vector<std::string> out;
  out.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_string()) throw DataError(where + ": expected an array of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

Corpus corpus_from_json(const json& doc) {
  if (!doc.is_object()) throw DataError("corpus manifest: top level must be an object");
  Corpus corpus;

  for (const auto& jp : doc.value("prompts", json::array())) {
    Prompt p;
    try {
      p.id = jp.at("id").get<std::string>();
      p.task = task_from_string(jp.at("task").get<std::string>());
      p.exercise = jp.contains("exercise")
                       ? exercise_from_string(jp.at("exercise").get<std::string>())
                       : exercise_for(p.task);
      p.words = normalize_all(string_array(jp.at("words"), "prompt words"));
    } catch (const json::exception& e) {
      throw DataError("prompt '" + jp.value("id", std::string("?")) + "': " + e.what());
    }
    corpus.prompts.push_back(std::move(p));
  }

  for (const auto& jr : doc.value("recordings", json::array())) {
    Recording r;
    try {
      r.id = jr.at("id").get<std::string>();
      r.prompt_id = jr.at("prompt_id").get<std::string>();
      r.speaker_id = jr.value("speaker_id", std::string());
      r.status = status_from_string(jr.value("status", std::string("ok")));
      r.transcript = normalize_all(string_array(jr.at("transcript"), "transcript"));
      if (jr.contains("hypotheses")) {
        if (!jr.at("hypotheses").is_object())
          throw DataError("recording '" + r.id + "': hypotheses must be an object");
        for (const auto& [name, toks] : jr.at("hypotheses").items())
          r.hypotheses.emplace(name, normalize_all(string_array(toks, "hypothesis " + name)));
      }
      if (jr.contains("confidences")) {
        std::vector<double> conf;
        for (const auto& v : jr.at("confidences")) {
          if (!v.is_number())
            throw DataError("recording '" + r.id + "': confidences must be numeric");
          conf.push_back(v.get<double>());
        }
        r.confidences = std::move(conf);
      }
    } catch (const json::exception& e) {
      throw DataError("recording '" + jr.value("id", std::string("?")) + "': " + e.what());
    }
    corpus.recordings.push_back(std::move(r));
  }

  validate_corpus(corpus);
  return corpus;
}

}  // namespace

Corpus load_corpus_text(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw DataError(std::string("corpus manifest parse failed: ") + e.what());
  }
  return corpus_from_json(doc);
}

Corpus load_corpus(const std::string& path) {
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".tsv") == 0)
    return load_corpus_tsv(path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open corpus manifest '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return load_corpus_text(buf.str());
  } catch (const DataError& e) {
    throw DataError(std::string(e.what()) + " (in '" + path + "')");
  }
}

Corpus load_corpus_tsv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open corpus manifest '" + path + "'");

  Corpus corpus;
  std::unordered_map<std::string, std::size_t> rec_index;
  std::string line;
  std::size_t line_no = 0;

  auto recording_at = [&](const std::string& id, const std::string& where) -> Recording& {
    auto it = rec_index.find(id);
    if (it == rec_index.end())
      throw DataError(where + " row for unknown recording '" + id + "' (line " +
                      std::to_string(line_no) + ")");
    return corpus.recordings[it->second];
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;

    std::vector<std::string> cols;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == '\t') {
        cols.push_back(line.substr(start, i - start));
        start = i + 1;
      }
    }

    const std::string& kind = cols[0];
    auto need = [&](std::size_t n) {
      if (cols.size() < n)
        throw DataError("malformed '" + kind + "' row at line " + std::to_string(line_no));
    };

    if (kind == "prompt") {
      need(4);
      Prompt p;
      p.id = cols[1];
      p.task = task_from_string(cols[2]);
      p.exercise = exercise_for(p.task);
      p.words = normalize_all({cols.begin() + 3, cols.end()});
      corpus.prompts.push_back(std::move(p));
    } else if (kind == "recording") {
      need(5);
      Recording r;
      r.id = cols[1];
      r.prompt_id = cols[2];
      r.speaker_id = cols[3];
      r.status = status_from_string(cols[4]);
      rec_index.emplace(r.id, corpus.recordings.size());
      corpus.recordings.push_back(std::move(r));
    } else if (kind == "transcript") {
      need(2);
      recording_at(cols[1], kind).transcript = normalize_all({cols.begin() + 2, cols.end()});
    } else if (kind == "hypothesis") {
      need(3);
      recording_at(cols[1], kind).hypotheses[cols[2]] =
          normalize_all({cols.begin() + 3, cols.end()});
    } else if (kind == "confidences") {
      need(3);
      std::vector<double> conf;
      for (auto it = cols.begin() + 2; it != cols.end(); ++it) {
        try {
          conf.push_back(std::stod(*it));
        } catch (const std::exception&) {
          throw DataError("non-numeric confidence '" + *it + "' at line " +
                          std::to_string(line_no));
        }
      }
      recording_at(cols[1], kind).confidences = std::move(conf);
    } else {
      throw DataError("unknown row kind '" + kind + "' at line " + std::to_string(line_no));
    }
  }

  validate_corpus(corpus);
  return corpus;
}

std::string corpus_to_json_text(const Corpus& corpus) {
  ordered_json doc;
  doc["prompts"] = ordered_json::array();
  for (const Prompt& p : corpus.prompts) {
    ordered_json jp;
    jp["id"] = p.id;
    jp["task"] = to_string(p.task);
    jp["exercise"] = to_string(p.exercise);
    ordered_json words = ordered_json::array();
    for (const WordToken& w : p.words) words.push_back(w.raw);
    jp["words"] = std::move(words);
    doc["prompts"].push_back(std::move(jp));
  }
  doc["recordings"] = ordered_json::array();
  for (const Recording& r : corpus.recordings) {
    ordered_json jr;
    jr["id"] = r.id;
    jr["prompt_id"] = r.prompt_id;
    jr["speaker_id"] = r.speaker_id;
    jr["status"] = to_string(r.status);
    ordered_json transcript = ordered_json::array();
    for (const WordToken& w : r.transcript) transcript.push_back(w.raw);
    jr["transcript"] = std::move(transcript);
    ordered_json hyps = ordered_json::object();
    for (const auto& [name, toks] : r.hypotheses) {
      ordered_json arr = ordered_json::array();
      for (const WordToken& w : toks) arr.push_back(w.raw);
      hyps[name] = std::move(arr);
    }
    jr["hypotheses"] = std::move(hyps);
    if (r.confidences) jr["confidences"] = *r.confidences;
    doc["recordings"].push_back(std::move(jr));
  }
  return doc.dump(2) + "\n";
}

void save_corpus(const Corpus& corpus, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write corpus manifest '" + path + "'");
  out << corpus_to_json_text(corpus);
}

Corpus filter_recordings(const Corpus& corpus, const std::set<RecordingStatus>& keep) {
  Corpus out;
  out.prompts = corpus.prompts;
  out.recordings.reserve(corpus.recordings.size());
  for (const Recording& r : corpus.recordings)
    if (keep.count(r.status)) out.recordings.push_back(r);
  return out;
}

WordCategory classify_word_category(const WordToken& token, const FunctionLexicon& lexicon) {
  return lexicon.contains(token) ? WordCategory::function_word : WordCategory::content_word;
}

FunctionLexicon parse_function_lexicon(std::istream& in) {
  FunctionLexicon lex;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (auto t = normalize_token(line)) lex.words.insert(t->normalized);
  }
  return lex;
}

FunctionLexicon load_function_lexicon(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open function lexicon '" + path + "'");
  return parse_function_lexicon(in);
}

}  // namespace readeval
