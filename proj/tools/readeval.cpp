// readeval: offline word-level evaluation of ASR-based reading tutors.
// Subcommands: evaluate, sweep, strata, simulate, report, align.
// Exit codes: 0 success, 2 usage error, 3 data error, 4 computation error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "readeval/analysis.hpp"
#include "readeval/report_io.hpp"
#include "readeval/synthesis.hpp"
#include "readeval/tutor.hpp"

namespace fs = std::filesystem;
using namespace readeval;

namespace {

struct CommonOpts {
  std::string corpus_path;
  std::string system_spec;
  std::string out_dir = "out";
  std::string formats = "json,csv";
  std::string keep_status = "ok";
  std::vector<std::string> drop_tasks;
};

std::set<std::string> parse_formats(const std::string& spec) {
  std::set<std::string> out;
  std::string cur;
  for (char c : spec + ",") {
    if (c == ',') {
      if (!cur.empty()) {
        if (cur != "json" && cur != "csv" && cur != "svg")
          throw DataError("unknown output format '" + cur + "'");
        out.insert(cur);
      }
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  return out;
}

StatusSet parse_status_set(const std::string& spec) {
  StatusSet out;
  std::string cur;
  for (char c : spec + ",") {
    if (c == ',') {
      if (!cur.empty()) out.insert(status_from_string(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  return out;
}

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out << content;
}

Corpus load_prepared(const CommonOpts& opts) {
  if (!fs::exists(opts.corpus_path))
    throw DataError("corpus manifest not found: '" + opts.corpus_path + "'");
  Corpus corpus = load_corpus(opts.corpus_path);
  for (const std::string& task : opts.drop_tasks)
    corpus = remove_stratum(corpus, task_from_string(task));
  return corpus;
}

int run_evaluate(const CommonOpts& opts, const std::string& audit_path) {
  const Corpus corpus = load_prepared(opts);
  const SystemSelector system = SystemSelector::parse(opts.system_spec);
  const StatusSet use = parse_status_set(opts.keep_status);
  const auto formats = parse_formats(opts.formats);

  const EvaluationResult result = evaluate(corpus, system, use);
  std::cout << evaluation_table(result, system.to_string());

  const fs::path out(opts.out_dir);
  if (formats.count("json"))
    write_file(out / "evaluate.json", evaluation_json(result, system.to_string()).dump(2) + "\n");
  if (formats.count("csv"))
    write_file(out / "evaluate.csv", evaluation_csv(result, system.to_string()));
  if (formats.count("svg"))
    write_file(out / "evaluate.svg", evaluation_svg(result, system.to_string()));
  if (!audit_path.empty())
    write_file(fs::path(audit_path), labels_audit_csv(corpus, system, use));
  return 0;
}

int run_sweep(const CommonOpts& opts, const std::string& grid_spec,
              const std::string& objective_name) {
  const Corpus corpus = load_prepared(opts);
  const StatusSet use = parse_status_set(opts.keep_status);
  const auto formats = parse_formats(opts.formats);
  const SweepObjective objective =
      objective_name == "mcc" ? SweepObjective::mcc : SweepObjective::kappa;

  const ThresholdSweepResult sweep =
      sweep_threshold(corpus, parse_grid(grid_spec), objective, use);
  std::cout << sweep_summary(sweep);

  const fs::path out(opts.out_dir);
  if (formats.count("json")) write_file(out / "sweep.json", sweep_json(sweep).dump(2) + "\n");
  if (formats.count("csv")) write_file(out / "sweep.csv", sweep_csv(sweep));
  if (formats.count("svg")) write_file(out / "sweep.svg", sweep_svg(sweep));
  return 0;
}

int run_strata(const CommonOpts& opts, const std::string& by, const std::string& lexicon_path) {
  const Corpus corpus = load_prepared(opts);
  const SystemSelector system = SystemSelector::parse(opts.system_spec);
  const StatusSet use = parse_status_set(opts.keep_status);
  const auto formats = parse_formats(opts.formats);

  const StrataDimension dimension =
      by == "category" ? StrataDimension::word_category : StrataDimension::task;
  FunctionLexicon lexicon;
  if (dimension == StrataDimension::word_category) {
    if (lexicon_path.empty()) {
      std::cerr << "strata --by category requires --function-lexicon\n";
      return 2;
    }
    lexicon = load_function_lexicon(lexicon_path);
  }

  const StratifiedReport strata = evaluate_strata(
      corpus, system, dimension,
      dimension == StrataDimension::word_category ? &lexicon : nullptr, use);
  std::cout << strata_table(strata, system.to_string());

  const fs::path out(opts.out_dir);
  if (formats.count("json"))
    write_file(out / "strata.json", strata_json(strata, system.to_string()).dump(2) + "\n");
  if (formats.count("csv"))
    write_file(out / "strata.csv", strata_csv(strata, system.to_string()));
  if (formats.count("svg")) write_file(out / "strata.svg", strata_svg(strata));
  return 0;
}

struct SimulateOpts {
  std::uint64_t seed = 1;
  std::string out_dir = "out";
  std::string words_per_task;
  double miscue_function = 0.10;
  double miscue_content = 0.20;
  double p_accept_correct = 0.90;
  double p_accept_miscue = 0.30;
};

std::map<TaskType, std::size_t> parse_words_per_task(const std::string& spec) {
  std::map<TaskType, std::size_t> out;
  std::string cur;
  for (char c : spec + ",") {
    if (c == ',') {
      if (!cur.empty()) {
        const auto eq = cur.find('=');
        if (eq == std::string::npos)
          throw DataError("malformed words-per-task entry '" + cur + "' (want task=count)");
        out[task_from_string(cur.substr(0, eq))] =
            static_cast<std::size_t>(std::stoul(cur.substr(eq + 1)));
      }
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  return out;
}

int run_simulate(const SimulateOpts& opts) {
  GeneratorConfig cfg;
  cfg.seed = opts.seed;
  if (!opts.words_per_task.empty()) cfg.words_per_task = parse_words_per_task(opts.words_per_task);
  cfg.miscue_prob_function = opts.miscue_function;
  cfg.miscue_prob_content = opts.miscue_content;
  cfg.p_accept_given_correct = opts.p_accept_correct;
  cfg.p_accept_given_miscue = opts.p_accept_miscue;

  const GeneratedCorpus generated = generate_corpus(cfg);

  const fs::path out(opts.out_dir);
  fs::create_directories(out);
  save_corpus(generated.corpus, (out / "corpus.json").string());
  write_file(out / "ground_truth.csv", ground_truth_csv(generated.truth));

  // One tutor session per prompt, with a stochastic reader and a judge
  // realized from the configured acceptance rates.
  std::ostringstream sessions;
  RateJudge judge(cfg.p_accept_given_correct, cfg.p_accept_given_miscue, cfg.seed + 1);
  MiscueReader reader(cfg.marginal_miscue_prob(), cfg.seed + 2);
  std::size_t accuracy_items = 0, fluency_items = 0, retries = 0;
  for (const Prompt& prompt : generated.corpus.prompts) {
    if (prompt.exercise == ExerciseKind::accuracy) {
      const AccuracyOutcome outcome = run_accuracy_item(prompt, judge, reader);
      write_accuracy_events(sessions, prompt.id, outcome);
      ++accuracy_items;
    } else {
      const FluencySessionLog log = run_fluency_session(prompt, judge, reader);
      write_fluency_events(sessions, prompt.id, log);
      ++fluency_items;
      retries += log.retry_indices.size();
    }
  }
  write_file(out / "sessions.jsonl", sessions.str());

  std::cout << "generated " << generated.corpus.prompts.size() << " prompts, "
            << generated.truth.size() << " words (seed " << cfg.seed << ")\n"
            << "sessions: " << accuracy_items << " accuracy, " << fluency_items
            << " fluency (" << retries << " retried items)\n"
            << "wrote corpus.json, ground_truth.csv, sessions.jsonl to " << out.string() << "\n";
  return 0;
}

int run_report(const std::string& in_path, const std::string& out_dir,
               const std::string& formats_spec) {
  if (!fs::exists(in_path)) throw DataError("report file not found: '" + in_path + "'");
  std::ifstream in(in_path, std::ios::binary);
  nlohmann::json saved;
  try {
    in >> saved;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("cannot parse '" + in_path + "': " + e.what());
  }

  const RenderedReport rendered = render_saved_report(saved);
  const auto formats = parse_formats(formats_spec);
  const std::string stem = fs::path(in_path).stem().string();
  const fs::path out(out_dir);
  if (formats.count("csv")) {
    write_file(out / (stem + ".csv"), rendered.csv);
    std::cout << "wrote " << (out / (stem + ".csv")).string() << "\n";
  }
  if (formats.count("svg")) {
    write_file(out / (stem + ".svg"), rendered.svg);
    std::cout << "wrote " << (out / (stem + ".svg")).string() << "\n";
  }
  return 0;
}

int run_align(const std::string& corpus_path, const std::string& recording_id,
              const std::string& system) {
  if (!fs::exists(corpus_path))
    throw DataError("corpus manifest not found: '" + corpus_path + "'");
  const Corpus corpus = load_corpus(corpus_path);
  for (const Recording& rec : corpus.recordings) {
    if (rec.id != recording_id) continue;
    const Prompt& prompt = corpus.prompt_of(rec);
    const std::vector<WordToken>* observed = &rec.transcript;
    if (!system.empty()) {
      auto it = rec.hypotheses.find(system);
      if (it == rec.hypotheses.end())
        throw DataError("recording '" + rec.id + "' has no hypothesis for system '" + system +
                        "'");
      observed = &it->second;
    }
    const AlignmentResult a = align(*observed, prompt);
    std::cout << render_alignment(a, *observed, prompt);
    std::cout << "cost: " << a.cost << "\n";
    return 0;
  }
  throw DataError("recording '" + recording_id + "' not found in '" + corpus_path + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"word-level evaluation toolkit for ASR-based reading tutors"};
  app.require_subcommand(1);

  CommonOpts ev, sw, st;
  std::string audit_path;
  CLI::App* evaluate_cmd = app.add_subcommand("evaluate", "score one system against the corpus");
  evaluate_cmd->add_option("--corpus", ev.corpus_path, "corpus manifest (.json or .tsv)")
      ->required();
  evaluate_cmd->add_option("--system", ev.system_spec, "hypothesis name or threshold:T")
      ->required();
  evaluate_cmd->add_option("--out", ev.out_dir, "output directory");
  evaluate_cmd->add_option("--format", ev.formats, "comma list of json,csv,svg");
  evaluate_cmd->add_option("--keep-status", ev.keep_status, "statuses to evaluate");
  evaluate_cmd->add_option("--drop-task", ev.drop_tasks, "drop recordings of this task");
  evaluate_cmd->add_option("--audit", audit_path, "write per-word label pairs to this CSV");

  std::string grid_spec = "0:100:1";
  std::string objective = "kappa";
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "optimize the confidence threshold");
  sweep_cmd->add_option("--corpus", sw.corpus_path, "corpus manifest (.json or .tsv)")->required();
  sweep_cmd->add_option("--grid", grid_spec, "threshold grid LO:HI:STEP");
  sweep_cmd->add_option("--objective", objective, "kappa or mcc")
      ->check(CLI::IsMember({"kappa", "mcc"}));
  sweep_cmd->add_option("--out", sw.out_dir, "output directory");
  sweep_cmd->add_option("--format", sw.formats, "comma list of json,csv,svg");
  sweep_cmd->add_option("--keep-status", sw.keep_status, "statuses to evaluate");
  sweep_cmd->add_option("--drop-task", sw.drop_tasks, "drop recordings of this task");

  std::string by = "task";
  std::string lexicon_path;
  CLI::App* strata_cmd = app.add_subcommand("strata", "stratified breakdown of one system");
  strata_cmd->add_option("--corpus", st.corpus_path, "corpus manifest (.json or .tsv)")
      ->required();
  strata_cmd->add_option("--system", st.system_spec, "hypothesis name or threshold:T")
      ->required();
  strata_cmd->add_option("--by", by, "task or category")
      ->check(CLI::IsMember({"task", "category"}));
  strata_cmd->add_option("--function-lexicon", lexicon_path, "function word list, one per line");
  strata_cmd->add_option("--out", st.out_dir, "output directory");
  strata_cmd->add_option("--format", st.formats, "comma list of json,csv,svg");
  strata_cmd->add_option("--keep-status", st.keep_status, "statuses to evaluate");
  strata_cmd->add_option("--drop-task", st.drop_tasks, "drop recordings of this task");

  SimulateOpts sim;
  CLI::App* simulate_cmd =
      app.add_subcommand("simulate", "generate a corpus and run tutor sessions over it");
  simulate_cmd->add_option("--seed", sim.seed, "generator seed");
  simulate_cmd->add_option("--out", sim.out_dir, "output directory");
  simulate_cmd->add_option("--words-per-task", sim.words_per_task,
                           "e.g. sentence=120,story=200");
  simulate_cmd->add_option("--miscue-function", sim.miscue_function,
                           "miscue probability, function words");
  simulate_cmd->add_option("--miscue-content", sim.miscue_content,
                           "miscue probability, content words");
  simulate_cmd->add_option("--p-accept-correct", sim.p_accept_correct,
                           "acceptance probability given a correct reading");
  simulate_cmd->add_option("--p-accept-miscue", sim.p_accept_miscue,
                           "acceptance probability given a miscue");

  std::string report_in, report_out = "out", report_formats = "csv";
  CLI::App* report_cmd = app.add_subcommand("report", "re-render a saved JSON report");
  report_cmd->add_option("--in", report_in, "saved report (evaluate/sweep/strata JSON)")
      ->required();
  report_cmd->add_option("--out", report_out, "output directory");
  report_cmd->add_option("--format", report_formats, "comma list of csv,svg");

  std::string align_corpus, align_recording, align_system;
  CLI::App* align_cmd = app.add_subcommand("align", "print one recording's alignment diagram");
  align_cmd->add_option("--corpus", align_corpus, "corpus manifest (.json or .tsv)")->required();
  align_cmd->add_option("--recording", align_recording, "recording id")->required();
  align_cmd->add_option("--system", align_system,
                        "align this hypothesis instead of the transcript");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(evaluate_cmd)) return run_evaluate(ev, audit_path);
    if (app.got_subcommand(sweep_cmd)) return run_sweep(sw, grid_spec, objective);
    if (app.got_subcommand(strata_cmd)) return run_strata(st, by, lexicon_path);
    if (app.got_subcommand(simulate_cmd)) return run_simulate(sim);
    if (app.got_subcommand(report_cmd)) return run_report(report_in, report_out, report_formats);
    if (app.got_subcommand(align_cmd))
      return run_align(align_corpus, align_recording, align_system);
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const ComputeError& e) {
    std::cerr << "computation error: " << e.what() << "\n";
    return 4;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
