// slurover/cli.hpp

// Copyright 2026  The slurover Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

// The `slurover` command line:
//
//   slurover validate --input parses.jsonl
//   slurover eval     --ref ref.tsv --hyp a.jsonl --hyp b.jsonl --task slu --report r.json
//   slurover combine  --hyp best.jsonl --hyp second.jsonl ... --out combined.jsonl
//   slurover simulate --n 1000 --systems 5 --sub-rate 0.1 --seed 7 --out DIR
//
// Exit codes: 0 ok, 1 usage, 2 data error, 3 metric precondition.

#ifndef SLUROVER_CLI_HPP_
#define SLUROVER_CLI_HPP_

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "slurover/corpus_io.hpp"
#include "slurover/parse_tree.hpp"
#include "slurover/pipeline.hpp"
#include "slurover/synth.hpp"

namespace slurover {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitMetric = 3,
};

inline int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidParams: return kExitUsage;
    case ErrorCode::kEmptyReference:
    case ErrorCode::kEmptyCorpus:
    case ErrorCode::kEmptyReferencePool:
    case ErrorCode::kMissingConfidences: return kExitMetric;
    default: return kExitData;
  }
}

namespace cli {

struct CommonFlags {
  std::string task = "slu";
  bool lowercase = false;
  bool allow_missing = false;
  std::size_t threads = 1;
};

inline void AddCommonFlags(CLI::App *cmd, CommonFlags &f) {
  cmd->add_option("--task", f.task, "asr (transcripts) or slu (linearized parses)")
      ->check(CLI::IsMember({"asr", "slu"}))
      ->capture_default_str();
  cmd->add_flag("--lowercase", f.lowercase, "lowercase texts before scoring and combining");
  cmd->add_flag("--allow-missing", f.allow_missing,
                "treat absent hypotheses as empty instead of failing");
  cmd->add_option("--threads", f.threads, "worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

inline Task ParseTask(const std::string &name) { return name == "asr" ? Task::kAsr : Task::kSlu; }

/// File stems, disambiguated with "#<position>" when two files share one.
inline std::vector<Corpus> LoadSystems(const std::vector<std::string> &paths) {
  std::map<std::string, int> seen;
  for (const auto &p : paths) ++seen[std::filesystem::path(p).stem().string()];
  std::vector<Corpus> systems;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    std::string id = std::filesystem::path(paths[i]).stem().string();
    if (seen[id] > 1) id += "#" + std::to_string(i);
    systems.push_back(LoadCorpus(paths[i], FormatFromPath(paths[i]), id));
  }
  return systems;
}

inline std::vector<std::string> SystemIds(const std::vector<Corpus> &systems) {
  std::vector<std::string> ids;
  for (const auto &s : systems) ids.push_back(s.system_id);
  return ids;
}

inline ReportFormat ReportFormatFor(const std::string &flag, const std::string &path) {
  if (flag == "tsv") return ReportFormat::kTsv;
  if (flag == "json") return ReportFormat::kJson;
  return std::filesystem::path(path).extension() == ".tsv" ? ReportFormat::kTsv
                                                           : ReportFormat::kJson;
}

inline LabelCharset CharsetFor(const CommonFlags &f) {
  return f.lowercase ? LabelCharset::CaseInsensitive() : LabelCharset();
}

struct ValidateArgs {
  std::string input;
  std::string format = "auto";
};

inline int RunValidate(const ValidateArgs &a, std::ostream &out) {
  CorpusFormat format = a.format == "auto" ? FormatFromPath(a.input)
                        : a.format == "tsv" ? CorpusFormat::kTsv
                                            : CorpusFormat::kJsonl;
  const Corpus corpus = LoadCorpus(a.input, format);
  std::vector<std::pair<std::size_t, const std::string *>> order;
  for (const auto &[id, entry] : corpus.entries) order.emplace_back(entry.line, &id);
  std::sort(order.begin(), order.end());

  std::size_t valid = 0;
  for (const auto &[line, id] : order) {
    const Verdict v = Validate(corpus.entries.at(*id).text);
    valid += v.valid() ? 1 : 0;
    out << *id << '\t' << v.name() << '\n';
  }
  out << valid << "/" << corpus.entries.size() << " valid\n";
  return kExitOk;
}

struct EvalArgs {
  std::string ref;
  std::vector<std::string> hyps;
  CommonFlags common;
  std::string report;
  std::string report_format = "auto";
};

inline int RunEval(const EvalArgs &a, std::ostream &out) {
  const Corpus refs = LoadCorpus(a.ref);
  const auto systems = LoadSystems(a.hyps);
  NormalizationOptions norm{a.common.lowercase};
  const auto bundles = JoinSystems(
      systems, &refs, a.common.allow_missing ? JoinPolicy::kAllowMissing : JoinPolicy::kStrict,
      norm);
  EvalOptions opts;
  opts.score_em = ParseTask(a.common.task) == Task::kSlu;
  opts.task_name = a.common.task;
  opts.threads = a.common.threads;
  const EvalReport report = Evaluate(bundles, SystemIds(systems), nullptr, opts);
  if (!a.report.empty()) WriteReport(report, a.report, ReportFormatFor(a.report_format, a.report));
  PrintSummaryTable(report, out);
  return kExitOk;
}

struct CombineArgs {
  std::vector<std::string> hyps;
  CommonFlags common;
  double alpha = 1.0;
  double null_confidence = 0.0;
  std::size_t fallback = 0;
  std::string out;
  std::string ref;
  std::string report;
  std::string report_format = "auto";
};

inline int RunCombine(const CombineArgs &a, std::ostream &out) {
  const auto systems = LoadSystems(a.hyps);
  if (a.fallback >= systems.size())
    throw Error(ErrorCode::kInvalidParams, "--fallback " + std::to_string(a.fallback) +
                                               " but only " + std::to_string(systems.size()) +
                                               " systems");
  std::optional<Corpus> refs;
  if (!a.ref.empty()) refs = LoadCorpus(a.ref);
  NormalizationOptions norm{a.common.lowercase};
  const auto bundles = JoinSystems(
      systems, refs ? &*refs : nullptr,
      a.common.allow_missing ? JoinPolicy::kAllowMissing : JoinPolicy::kStrict, norm);

  CombineOptions copts;
  copts.task = ParseTask(a.common.task);
  copts.vote = {a.alpha, a.null_confidence};
  copts.fallback_index = a.fallback;
  copts.charset = CharsetFor(a.common);
  copts.threads = a.common.threads;
  const auto outputs = CombineBundles(bundles, copts);

  {
    std::ofstream file(a.out, std::ios::binary);
    if (!file) throw Error(ErrorCode::kIoError, "cannot write " + a.out);
    for (std::size_t i = 0; i < bundles.size(); ++i) {
      nlohmann::ordered_json row;
      row["id"] = bundles[i].utterance_id;
      row["text"] = outputs[i].text;
      if (outputs[i].valid) row["valid"] = *outputs[i].valid;
      if (outputs[i].fell_back) row["fell_back"] = *outputs[i].fell_back;
      file << row.dump() << '\n';
    }
    if (!file) throw Error(ErrorCode::kIoError, "write failed: " + a.out);
  }

  if (refs) {
    EvalOptions eopts;
    eopts.score_em = copts.task == Task::kSlu;
    eopts.task_name = a.common.task;
    eopts.threads = a.common.threads;
    const EvalReport report = Evaluate(bundles, SystemIds(systems), &outputs, eopts);
    if (!a.report.empty())
      WriteReport(report, a.report, ReportFormatFor(a.report_format, a.report));
    PrintSummaryTable(report, out);
  } else {
    std::size_t fell_back = 0;
    for (const auto &o : outputs) fell_back += o.fell_back.value_or(false) ? 1 : 0;
    out << "combined " << bundles.size() << " utterances from " << systems.size() << " systems";
    if (copts.task == Task::kSlu) out << ", " << fell_back << " fell back";
    out << '\n';
  }
  return kExitOk;
}

struct SimulateArgs {
  std::size_t n = 1000;
  std::size_t systems = 5;
  double sub_rate = 0.10;
  double del_rate = 0.0;
  double ins_rate = 0.0;
  std::uint64_t seed = 7;
  std::string task = "asr";
  double alpha = 1.0;
  std::size_t fallback = 0;
  bool no_protect_brackets = false;
  int max_depth = 3;
  std::string out_dir;
  std::size_t threads = 1;
  bool quiet = false;
};

/// Writes reference.jsonl, sys<i>.jsonl, combined.jsonl, report.json,
/// experiment.json and summary.txt into the output directory.
inline int RunSimulate(const SimulateArgs &a, std::ostream &out) {
  ExperimentParams p;
  p.n_utts = a.n;
  p.n_systems = a.systems;
  p.mode = a.task == "slu" ? CorpusMode::kParse : CorpusMode::kTranscript;
  p.corruption = {a.sub_rate, a.del_rate, a.ins_rate, a.seed, !a.no_protect_brackets};
  p.vote.alpha = a.alpha;
  p.fallback_index = a.fallback;
  p.max_depth = a.max_depth;
  p.threads = a.threads;
  if (p.fallback_index >= p.n_systems)
    throw Error(ErrorCode::kInvalidParams, "--fallback out of range");
  const ExperimentResult r = RunCombinationExperiment(p);

  namespace fs = std::filesystem;
  const fs::path dir(a.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot create " + dir.string() + ": " + ec.message());
  WriteCorpus(r.reference, dir / "reference.jsonl", CorpusFormat::kJsonl);
  for (const auto &sys : r.systems)
    WriteCorpus(sys, dir / (sys.system_id + ".jsonl"), CorpusFormat::kJsonl);
  WriteCorpus(r.combined, dir / "combined.jsonl", CorpusFormat::kJsonl);
  WriteReport(r.report, dir / "report.json", ReportFormat::kJson);
  {
    std::ofstream f(dir / "experiment.json", std::ios::binary);
    f << ExperimentParamsJson(p).dump(2) << '\n';
    if (!f) throw Error(ErrorCode::kIoError, "cannot write experiment.json");
  }
  std::ostringstream table;
  PrintSummaryTable(r.report, table);
  {
    std::ofstream f(dir / "summary.txt", std::ios::binary);
    f << table.str();
    if (!f) throw Error(ErrorCode::kIoError, "cannot write summary.txt");
  }
  if (!a.quiet) out << table.str();
  return kExitOk;
}

}  // namespace cli

/// Entry point shared by the binary and the tests.
inline int RunCli(int argc, const char *const *argv, std::ostream &out = std::cout,
                  std::ostream &err = std::cerr) {
  CLI::App app{"Evaluate and ROVER-combine spoken semantic parsing outputs", "slurover"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  cli::ValidateArgs validate;
  auto *validate_cmd = app.add_subcommand("validate", "check linearized parses line by line");
  validate_cmd->add_option("--input", validate.input, "JSONL or TSV file")->required();
  validate_cmd->add_option("--format", validate.format, "jsonl, tsv or auto (by extension)")
      ->check(CLI::IsMember({"auto", "jsonl", "tsv"}))
      ->capture_default_str();

  cli::EvalArgs eval;
  auto *eval_cmd = app.add_subcommand("eval", "score systems against references");
  eval_cmd->add_option("--ref", eval.ref, "reference corpus")->required();
  eval_cmd->add_option("--hyp", eval.hyps, "system corpus; repeat per system")->required();
  cli::AddCommonFlags(eval_cmd, eval.common);
  eval_cmd->add_option("--report", eval.report, "write the report here");
  eval_cmd->add_option("--report-format", eval.report_format, "json, tsv or auto")
      ->check(CLI::IsMember({"auto", "json", "tsv"}));

  cli::CombineArgs combine;
  auto *combine_cmd = app.add_subcommand("combine", "ROVER-combine systems (best system first)");
  combine_cmd->add_option("--hyp", combine.hyps, "system corpus, in quality order")->required();
  cli::AddCommonFlags(combine_cmd, combine.common);
  combine_cmd->add_option("--alpha", combine.alpha, "frequency weight in [0,1]")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  combine_cmd->add_option("--null-confidence", combine.null_confidence, "NULL confidence")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  combine_cmd->add_option("--fallback", combine.fallback, "system used when a vote is invalid")
      ->capture_default_str();
  combine_cmd->add_option("--out", combine.out, "combined JSONL output")->required();
  combine_cmd->add_option("--ref", combine.ref, "references; adds a scored report");
  combine_cmd->add_option("--report", combine.report, "write the report here (needs --ref)");
  combine_cmd->add_option("--report-format", combine.report_format, "json, tsv or auto")
      ->check(CLI::IsMember({"auto", "json", "tsv"}));

  cli::SimulateArgs sim;
  auto *sim_cmd = app.add_subcommand("simulate", "synthetic corrupt-and-combine experiment");
  sim_cmd->add_option("--n", sim.n, "utterances")->check(CLI::PositiveNumber)->capture_default_str();
  sim_cmd->add_option("--systems", sim.systems, "simulated systems")->capture_default_str();
  sim_cmd->add_option("--sub-rate", sim.sub_rate)->check(CLI::Range(0.0, 1.0))->capture_default_str();
  sim_cmd->add_option("--del-rate", sim.del_rate)->check(CLI::Range(0.0, 1.0))->capture_default_str();
  sim_cmd->add_option("--ins-rate", sim.ins_rate)->check(CLI::Range(0.0, 1.0))->capture_default_str();
  sim_cmd->add_option("--seed", sim.seed)->capture_default_str();
  sim_cmd->add_option("--task", sim.task, "asr (transcripts) or slu (parses)")
      ->check(CLI::IsMember({"asr", "slu"}))
      ->capture_default_str();
  sim_cmd->add_option("--alpha", sim.alpha)->check(CLI::Range(0.0, 1.0))->capture_default_str();
  sim_cmd->add_option("--fallback", sim.fallback)->capture_default_str();
  sim_cmd->add_flag("--no-protect-brackets", sim.no_protect_brackets,
                    "let corruption touch intent/slot/close tokens");
  sim_cmd->add_option("--max-depth", sim.max_depth, "parse tree depth bound")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sim_cmd->add_option("--out", sim.out_dir, "output directory")->required();
  sim_cmd->add_option("--threads", sim.threads)->check(CLI::PositiveNumber)->capture_default_str();
  sim_cmd->add_flag("--quiet", sim.quiet, "no summary on stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*validate_cmd) return cli::RunValidate(validate, out);
    if (*eval_cmd) return cli::RunEval(eval, out);
    if (*combine_cmd) return cli::RunCombine(combine, out);
    if (*sim_cmd) return cli::RunSimulate(sim, out);
  } catch (const Error &e) {
    err << "slurover: " << e.what() << '\n';
    return ExitCodeFor(e.code());
  } catch (const std::exception &e) {
    err << "slurover: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace slurover

#endif  // SLUROVER_CLI_HPP_
