// slurover/metrics.hpp

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

#ifndef SLUROVER_METRICS_HPP_
#define SLUROVER_METRICS_HPP_

#include <cstdint>
#include <optional>
#include <ranges>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "slurover/align.hpp"
#include "slurover/common.hpp"
#include "slurover/normalize.hpp"

namespace slurover {

struct AlignmentResult {
  std::vector<EditStep> ops;
  std::size_t num_match = 0;
  std::size_t num_sub = 0;
  std::size_t num_del = 0;  // reference token absent from the hypothesis
  std::size_t num_ins = 0;  // hypothesis token absent from the reference
  std::size_t ref_len = 0;
  std::size_t hyp_len = 0;

  std::size_t errors() const { return num_sub + num_del + num_ins; }
};

/// Word-level Levenshtein alignment of `hyp` against `ref`.
template <std::ranges::random_access_range Hyp, std::ranges::random_access_range Ref>
AlignmentResult EditAlign(const Hyp &hyp, const Ref &ref) {
  AlignmentResult r;
  r.ref_len = std::ranges::size(ref);
  r.hyp_len = std::ranges::size(hyp);
  auto hb = std::ranges::begin(hyp);
  auto rb = std::ranges::begin(ref);
  r.ops = AlignGrid(r.ref_len, r.hyp_len,
                    [&](std::size_t i, std::size_t j) { return rb[i] == hb[j]; });
  for (const auto &step : r.ops) {
    switch (step.op) {
      case EditOp::kMatch: ++r.num_match; break;
      case EditOp::kSubstitute: ++r.num_sub; break;
      case EditOp::kDelete: ++r.num_del; break;
      case EditOp::kInsert: ++r.num_ins; break;
    }
  }
  return r;
}

/// Pooled error counter. Sums of integers, so merge order never matters.
struct ErrorTally {
  std::uint64_t errors = 0;
  std::uint64_t ref_len = 0;

  void Add(const AlignmentResult &a) {
    errors += a.errors();
    ref_len += a.ref_len;
  }
  ErrorTally &operator+=(const ErrorTally &o) {
    errors += o.errors;
    ref_len += o.ref_len;
    return *this;
  }
  /// Throws EmptyReferencePool when no reference tokens were seen.
  Rational Wer() const {
    if (ref_len == 0) throw Error(ErrorCode::kEmptyReferencePool);
    return {errors, ref_len};
  }
};

/// Errors over reference length; may exceed 1. wer([], []) is 0/1.
template <std::ranges::random_access_range Hyp, std::ranges::random_access_range Ref>
Rational Wer(const Hyp &hyp, const Ref &ref) {
  if (std::ranges::empty(ref)) {
    if (std::ranges::empty(hyp)) return {0, 1};
    throw Error(ErrorCode::kEmptyReference, "hypothesis has tokens but reference is empty");
  }
  auto a = EditAlign(hyp, ref);
  return {a.errors(), a.ref_len};
}

using TokenList = std::vector<std::string>;

/// Pooled corpus WER: total errors over total reference length, not the
/// mean of sentence WERs.
inline Rational CorpusWer(const std::vector<std::pair<TokenList, TokenList>> &pairs) {
  ErrorTally tally;
  for (const auto &[hyp, ref] : pairs) tally.Add(EditAlign(hyp, ref));
  return tally.Wer();
}

inline bool ExactMatch(std::string_view hyp, std::string_view ref,
                       const NormalizationOptions &norm = {}) {
  return Normalize(hyp, norm) == Normalize(ref, norm);
}

inline Rational EmAccuracy(const std::vector<std::pair<std::string, std::string>> &pairs,
                           const NormalizationOptions &norm = {}) {
  if (pairs.empty()) throw Error(ErrorCode::kEmptyCorpus);
  Rational r{0, pairs.size()};
  for (const auto &[hyp, ref] : pairs) r.num += ExactMatch(hyp, ref, norm) ? 1 : 0;
  return r;
}

// ---------------------------------------------------------------------------
// Reports

/// One row of a results table: an input system or the combination.
struct SystemScore {
  std::string system_id;
  std::uint64_t n_utterances = 0;
  std::optional<Rational> em;   // absent for transcript-only scoring
  std::optional<Rational> wer;

  friend bool operator==(const SystemScore &, const SystemScore &) = default;
};

struct UtteranceRow {
  std::string id;
  std::uint64_t ref_len = 0;
  std::vector<std::uint64_t> errors;  // per system
  std::vector<bool> em;               // per system; empty when EM is not scored
  std::vector<bool> missing;          // per system; hypothesis absent from its file
  std::optional<std::uint64_t> combined_errors;
  std::optional<bool> combined_em;
  std::optional<bool> combined_valid;
  std::optional<bool> fell_back;

  friend bool operator==(const UtteranceRow &, const UtteranceRow &) = default;
};

struct EvalReport {
  std::string task;  // "asr" or "slu"
  std::vector<SystemScore> systems;
  std::optional<SystemScore> combined;
  std::vector<UtteranceRow> utterances;

  friend bool operator==(const EvalReport &, const EvalReport &) = default;
};

}  // namespace slurover

#endif  // SLUROVER_METRICS_HPP_
