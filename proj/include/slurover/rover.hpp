// slurover/rover.hpp

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

// ROVER (recognizer output voting error reduction) over 1-best token
// sequences.
//
// The first hypothesis becomes a word transition network (WTN) with one
// correspondence set per token. Every later hypothesis is aligned to the
// network with unit costs; a set "matches" a token when the token is one
// of its non-NULL candidates. Matched and substituted tokens join their
// set, network positions the hypothesis skips receive a NULL vote, and
// hypothesis tokens with no set open a new set that carries a NULL vote
// for every system aligned before. Voting then picks one candidate per
// set and drops NULL winners.
//
// Networks are built progressively in the declared system order, so the
// result depends on that order. Put the strongest system first: it wins
// ties and is the default fallback for parse combination.

#ifndef SLUROVER_ROVER_HPP_
#define SLUROVER_ROVER_HPP_

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "slurover/align.hpp"
#include "slurover/common.hpp"
#include "slurover/parse_tree.hpp"

namespace slurover {

struct Hypothesis {
  std::string utterance_id;
  std::vector<std::string> tokens;
  std::optional<std::vector<double>> confidences;  // one per token, in [0,1]
  std::size_t system_index = 0;
};

struct Candidate {
  std::optional<std::string> token;  // nullopt is NULL
  std::uint32_t count = 0;
  double conf_sum = 0.0;
  std::size_t min_system_index = 0;

  bool is_null() const { return !token.has_value(); }
};

class CorrespondenceSet {
 public:
  const std::vector<Candidate> &candidates() const { return candidates_; }

  /// Candidate for `token` (nullopt for NULL), or nullptr.
  const Candidate *Find(const std::optional<std::string> &token) const {
    for (const auto &c : candidates_)
      if (c.token == token) return &c;
    return nullptr;
  }

  bool HasWord(const std::string &token) const {
    for (const auto &c : candidates_)
      if (c.token && *c.token == token) return true;
    return false;
  }

  void Add(const std::optional<std::string> &token, std::uint32_t count, double conf,
           std::size_t system_index) {
    for (auto &c : candidates_) {
      if (c.token == token) {
        c.count += count;
        c.conf_sum += conf;
        c.min_system_index = std::min(c.min_system_index, system_index);
        return;
      }
    }
    candidates_.push_back({token, count, conf, system_index});
  }

  std::uint64_t TotalCount() const {
    std::uint64_t total = 0;
    for (const auto &c : candidates_) total += c.count;
    return total;
  }

 private:
  std::vector<Candidate> candidates_;  // first-seen order
};

struct WordTransitionNetwork {
  std::string utterance_id;
  std::vector<CorrespondenceSet> sets;
  std::size_t num_systems = 0;
  std::size_t min_system_index = 0;  // lowest index among aligned systems
  bool has_confidences = true;       // every aligned hypothesis supplied them

  /// Every set's vote count equals num_systems.
  bool CountsConserved() const {
    return std::all_of(sets.begin(), sets.end(),
                       [&](const CorrespondenceSet &s) { return s.TotalCount() == num_systems; });
  }
};

struct VoteConfig {
  double alpha = 1.0;            // weight of vote frequency against confidence
  double null_confidence = 0.0;  // confidence credited to NULL
};

namespace internal {

inline double ConfidenceAt(const Hypothesis &hyp, std::size_t i) {
  return hyp.confidences ? (*hyp.confidences)[i] : 0.0;
}

inline void CheckHypothesis(const Hypothesis &hyp) {
  if (hyp.confidences && hyp.confidences->size() != hyp.tokens.size())
    throw Error(ErrorCode::kConfidenceLengthMismatch, hyp.utterance_id);
}

}  // namespace internal

inline WordTransitionNetwork WtnFromHypothesis(const Hypothesis &hyp) {
  internal::CheckHypothesis(hyp);
  WordTransitionNetwork wtn;
  wtn.utterance_id = hyp.utterance_id;
  wtn.num_systems = 1;
  wtn.min_system_index = hyp.system_index;
  wtn.has_confidences = hyp.confidences.has_value();
  wtn.sets.resize(hyp.tokens.size());
  for (std::size_t i = 0; i < hyp.tokens.size(); ++i)
    wtn.sets[i].Add(hyp.tokens[i], 1, internal::ConfidenceAt(hyp, i), hyp.system_index);
  return wtn;
}

/// Aligns one more hypothesis into the network and merges its votes.
inline WordTransitionNetwork AlignIntoWtn(WordTransitionNetwork wtn, const Hypothesis &hyp) {
  internal::CheckHypothesis(hyp);
  if (wtn.num_systems == 0) return WtnFromHypothesis(hyp);

  const auto steps = AlignGrid(wtn.sets.size(), hyp.tokens.size(),
                               [&](std::size_t set, std::size_t tok) {
                                 return wtn.sets[set].HasWord(hyp.tokens[tok]);
                               });
  const auto prior = static_cast<std::uint32_t>(wtn.num_systems);
  std::vector<CorrespondenceSet> merged;
  merged.reserve(steps.size());
  for (const auto &step : steps) {
    switch (step.op) {
      case EditOp::kMatch:
      case EditOp::kSubstitute:
        merged.push_back(std::move(wtn.sets[step.ref_index]));
        merged.back().Add(hyp.tokens[step.hyp_index], 1,
                          internal::ConfidenceAt(hyp, step.hyp_index), hyp.system_index);
        break;
      case EditOp::kDelete:
        merged.push_back(std::move(wtn.sets[step.ref_index]));
        merged.back().Add(std::nullopt, 1, 0.0, hyp.system_index);
        break;
      case EditOp::kInsert: {
        CorrespondenceSet fresh;
        fresh.Add(std::nullopt, prior, 0.0, wtn.min_system_index);
        fresh.Add(hyp.tokens[step.hyp_index], 1, internal::ConfidenceAt(hyp, step.hyp_index),
                  hyp.system_index);
        merged.push_back(std::move(fresh));
        break;
      }
    }
  }
  wtn.sets = std::move(merged);
  wtn.num_systems += 1;
  wtn.min_system_index = std::min(wtn.min_system_index, hyp.system_index);
  wtn.has_confidences = wtn.has_confidences && hyp.confidences.has_value();
  return wtn;
}

/// Progressive construction in list order. Throws EmptyInput or
/// MixedUtteranceIds.
inline WordTransitionNetwork BuildWtn(const std::vector<Hypothesis> &hyps) {
  if (hyps.empty()) throw Error(ErrorCode::kEmptyInput, "no hypotheses to combine");
  for (const auto &h : hyps)
    if (h.utterance_id != hyps.front().utterance_id)
      throw Error(ErrorCode::kMixedUtteranceIds,
                  "'" + hyps.front().utterance_id + "' vs '" + h.utterance_id + "'");
  WordTransitionNetwork wtn = WtnFromHypothesis(hyps.front());
  for (std::size_t i = 1; i < hyps.size(); ++i) wtn = AlignIntoWtn(std::move(wtn), hyps[i]);
  return wtn;
}

/// Per set, score(w) = alpha * count(w) / num_systems
///                   + (1 - alpha) * conf_sum(w) / count(w),
/// with NULL scored at null_confidence. Highest score wins; ties go to a
/// word over NULL, then to the lowest system index.
inline std::vector<std::string> Vote(const WordTransitionNetwork &wtn, const VoteConfig &config) {
  if (!(config.alpha >= 0.0 && config.alpha <= 1.0) ||
      !(config.null_confidence >= 0.0 && config.null_confidence <= 1.0))
    throw Error(ErrorCode::kInvalidParams, "alpha and null_confidence must lie in [0,1]");
  if (wtn.num_systems == 0) throw Error(ErrorCode::kInvalidParams, "empty network");
  if (config.alpha < 1.0 && !wtn.has_confidences)
    throw Error(ErrorCode::kMissingConfidences, wtn.utterance_id);

  const double n = static_cast<double>(wtn.num_systems);
  auto score = [&](const Candidate &c) {
    const double freq = c.count / n;
    if (config.alpha == 1.0) return freq;
    const double conf = c.is_null() ? config.null_confidence : c.conf_sum / c.count;
    return config.alpha * freq + (1.0 - config.alpha) * conf;
  };
  // True if a should win over b.
  auto better = [&](const Candidate &a, double sa, const Candidate &b, double sb) {
    if (sa != sb) return sa > sb;
    if (a.is_null() != b.is_null()) return !a.is_null();
    return a.min_system_index < b.min_system_index;
  };

  std::vector<std::string> out;
  for (const auto &set : wtn.sets) {
    const Candidate *best = nullptr;
    double best_score = 0.0;
    for (const auto &c : set.candidates()) {
      const double s = score(c);
      if (!best || better(c, s, *best, best_score)) {
        best = &c;
        best_score = s;
      }
    }
    if (best && !best->is_null()) out.push_back(*best->token);
  }
  return out;
}

inline std::vector<std::string> Combine(const std::vector<Hypothesis> &hyps,
                                        const VoteConfig &config = {}) {
  return Vote(BuildWtn(hyps), config);
}

struct ParseCombination {
  std::string text;
  bool valid = false;      // `text` is a well-formed parse
  bool fell_back = false;  // `text` is the fallback system's own output
};

/// Combines linearized parses token by token (bracket tokens are atomic).
/// When the vote is not a well-formed parse, the fallback system's own
/// output is returned instead.
inline ParseCombination CombineParses(const std::vector<Hypothesis> &hyps, const VoteConfig &config,
                                      std::size_t fallback_index,
                                      const LabelCharset &charset = LabelCharset()) {
  if (fallback_index >= hyps.size())
    throw Error(ErrorCode::kInvalidParams, "fallback index " + std::to_string(fallback_index) +
                                               " out of range for " +
                                               std::to_string(hyps.size()) + " systems");
  ParseCombination result;
  result.text = JoinTokens(Combine(hyps, config));
  if (Validate(result.text, charset).valid()) {
    result.valid = true;
    return result;
  }
  result.text = JoinTokens(hyps[fallback_index].tokens);
  result.valid = Validate(result.text, charset).valid();
  result.fell_back = true;
  return result;
}

}  // namespace slurover

#endif  // SLUROVER_ROVER_HPP_
