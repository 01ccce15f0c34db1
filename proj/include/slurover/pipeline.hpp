// slurover/pipeline.hpp

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

// Corpus-level combination and scoring over joined utterance bundles.

#ifndef SLUROVER_PIPELINE_HPP_
#define SLUROVER_PIPELINE_HPP_

#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "slurover/corpus_io.hpp"
#include "slurover/metrics.hpp"
#include "slurover/parallel.hpp"
#include "slurover/parse_tree.hpp"
#include "slurover/rover.hpp"

namespace slurover {

enum class Task { kAsr, kSlu };

inline std::string_view TaskName(Task task) { return task == Task::kAsr ? "asr" : "slu"; }

struct CombinedOutput {
  std::string text;
  std::optional<bool> valid;  // set for kSlu only
  std::optional<bool> fell_back;
};

struct CombineOptions {
  Task task = Task::kSlu;
  VoteConfig vote;
  std::size_t fallback_index = 0;
  LabelCharset charset;
  std::size_t threads = 1;
};

inline std::vector<CombinedOutput> CombineBundles(const std::vector<UtteranceBundle> &bundles,
                                                  const CombineOptions &opts) {
  std::vector<CombinedOutput> out(bundles.size());
  ParallelFor(bundles.size(), opts.threads, [&](std::size_t i) {
    const auto &hyps = bundles[i].per_system;
    if (opts.task == Task::kAsr) {
      out[i].text = JoinTokens(Combine(hyps, opts.vote));
    } else {
      auto parse = CombineParses(hyps, opts.vote, opts.fallback_index, opts.charset);
      out[i] = {std::move(parse.text), parse.valid, parse.fell_back};
    }
  });
  return out;
}

struct EvalOptions {
  bool score_em = true;  // WER is always scored
  std::string task_name = "slu";
  std::size_t threads = 1;
};

/// Scores every system and, when given, the combined outputs against the
/// bundle references. Bundles must all carry a reference.
inline EvalReport Evaluate(const std::vector<UtteranceBundle> &bundles,
                           const std::vector<std::string> &system_ids,
                           const std::vector<CombinedOutput> *combined, const EvalOptions &opts) {
  if (bundles.empty()) throw Error(ErrorCode::kEmptyCorpus, "no utterances to score");
  const std::size_t num_systems = system_ids.size();

  EvalReport report;
  report.task = opts.task_name;
  report.utterances.resize(bundles.size());
  ParallelFor(bundles.size(), opts.threads, [&](std::size_t i) {
    const auto &b = bundles[i];
    if (!b.reference) throw Error(ErrorCode::kInvalidParams, "no reference for " + b.utterance_id);
    const auto ref = SplitWhitespace(*b.reference);
    UtteranceRow &row = report.utterances[i];
    row.id = b.utterance_id;
    row.ref_len = ref.size();
    row.missing = b.missing;
    for (const auto &hyp : b.per_system) {
      row.errors.push_back(EditAlign(hyp.tokens, ref).errors());
      if (opts.score_em) row.em.push_back(ExactMatch(JoinTokens(hyp.tokens), *b.reference));
    }
    if (combined) {
      const auto &c = (*combined)[i];
      row.combined_errors = EditAlign(SplitWhitespace(c.text), ref).errors();
      if (opts.score_em) row.combined_em = ExactMatch(c.text, *b.reference);
      row.combined_valid = c.valid;
      row.fell_back = c.fell_back;
    }
  });

  // Integer reduction in bundle order.
  std::vector<ErrorTally> tallies(num_systems);
  std::vector<std::uint64_t> matches(num_systems, 0);
  ErrorTally combined_tally;
  std::uint64_t combined_matches = 0;
  for (const auto &row : report.utterances) {
    for (std::size_t s = 0; s < num_systems; ++s) {
      tallies[s] += {row.errors[s], row.ref_len};
      if (opts.score_em && row.em[s]) ++matches[s];
    }
    if (combined) {
      combined_tally += {*row.combined_errors, row.ref_len};
      if (row.combined_em.value_or(false)) ++combined_matches;
    }
  }
  const std::uint64_t n = bundles.size();
  for (std::size_t s = 0; s < num_systems; ++s) {
    SystemScore score{system_ids[s], n, std::nullopt, tallies[s].Wer()};
    if (opts.score_em) score.em = Rational{matches[s], n};
    report.systems.push_back(std::move(score));
  }
  if (combined) {
    SystemScore score{"combined", n, std::nullopt, combined_tally.Wer()};
    if (opts.score_em) score.em = Rational{combined_matches, n};
    report.combined = std::move(score);
  }
  return report;
}

/// Human-readable results table (not meant for machine parsing).
inline void PrintSummaryTable(const EvalReport &report, std::ostream &out) {
  std::size_t width = 8;
  for (const auto &s : report.systems) width = std::max(width, s.system_id.size());
  auto line = [&](const SystemScore &s) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%-*s %6llu %8s %8s  %s\n", static_cast<int>(width),
                  s.system_id.c_str(), static_cast<unsigned long long>(s.n_utterances),
                  s.em ? (s.em->Fixed4()).c_str() : "-", s.wer ? s.wer->Fixed4().c_str() : "-",
                  ((s.em ? "em " + s.em->ToString() : std::string()) +
                   (s.wer ? "  wer " + s.wer->ToString() : std::string()))
                      .c_str());
    out << buf;
  };
  char head[128];
  std::snprintf(head, sizeof(head), "%-*s %6s %8s %8s\n", static_cast<int>(width), "system", "n",
                "EM", "WER");
  out << head;
  for (const auto &s : report.systems) line(s);
  if (report.combined) line(*report.combined);
}

}  // namespace slurover

#endif  // SLUROVER_PIPELINE_HPP_
