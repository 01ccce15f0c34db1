// slurover/synth.hpp

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

// Synthetic combination experiments: random reference corpora, N
// independently corrupted "systems", ROVER over them, and a report.
// Every random draw is seeded from (seed, stream, item index), so results
// do not depend on the thread count.

#ifndef SLUROVER_SYNTH_HPP_
#define SLUROVER_SYNTH_HPP_

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "json.hpp"
#include "slurover/corpus_io.hpp"
#include "slurover/parallel.hpp"
#include "slurover/parse_tree.hpp"
#include "slurover/pipeline.hpp"
#include "slurover/random.hpp"

namespace slurover {

enum class CorpusMode { kTranscript, kParse };

inline const std::vector<std::string> &DefaultVocabulary() {
  static const std::vector<std::string> words = {
      "set",      "an",      "alarm",    "for",     "nine",     "five",     "am",
      "pm",       "remind",  "me",       "to",      "call",     "mom",      "dad",
      "play",     "some",    "jazz",     "music",   "the",      "weather",  "in",
      "boston",   "london",  "tomorrow", "today",   "tonight",  "what",     "is",
      "time",     "send",    "a",        "message", "john",     "running",  "late",
      "cancel",   "my",      "timer",    "minutes", "hours",    "traffic",  "on",
      "way",      "home",    "work",     "turn",    "off",      "lights",   "volume",
      "up",       "down",    "next",     "song",    "pause",    "resume",   "event",
      "near",     "directions", "how",   "long",     "will",     "it",
      "take",     "get",     "there",    "rain",    "sunny",    "cold",     "hot",
      "morning",  "evening", "weekend",  "monday",  "friday",   "birthday", "party",
      "dinner",   "with",    "sarah",    "office",  "school",   "gym",      "every",
      "day",      "week",    "ten",      "seven",   "thirty",   "fifteen",  "snooze",
      "check",    "update",  "delete",   "reminders", "alarms", "playlist", "radio",
      "podcast",  "news",    "forecast", "degrees", "outside",  "umbrella", "need",
  };
  return words;
}

inline const std::vector<std::string> &DefaultIntentLabels() {
  static const std::vector<std::string> labels = {
      "GET_WEATHER", "CREATE_ALARM",  "CREATE_REMINDER", "PLAY_MUSIC", "SEND_MESSAGE",
      "GET_TIME",    "CREATE_TIMER",  "GET_EVENT",       "GET_ESTIMATED_DURATION",
      "DELETE_ALARM", "GET_DIRECTIONS", "UPDATE_TIMER",
  };
  return labels;
}

inline const std::vector<std::string> &DefaultSlotLabels() {
  static const std::vector<std::string> labels = {
      "LOCATION",  "DATE_TIME", "TODO",     "CONTACT",    "MUSIC_GENRE", "RECIPIENT",
      "CONTENT",   "DESTINATION", "SOURCE", "METHOD_TIMER", "WEATHER_ATTRIBUTE",
      "ALARM_NAME",
  };
  return labels;
}

struct GenParams {
  std::uint64_t seed = 0;
  std::size_t n = 100;
  CorpusMode mode = CorpusMode::kTranscript;
  std::vector<std::string> vocab = DefaultVocabulary();
  int min_words = 4;  // transcript length range, inclusive
  int max_words = 12;
  RandomTreeParams tree{3, DefaultIntentLabels(), DefaultSlotLabels(), DefaultVocabulary()};
  std::size_t threads = 1;
};

namespace internal {

inline constexpr std::uint64_t kStreamReference = 0x5245464552454e43ULL;
inline constexpr std::uint64_t kStreamCorrupt = 0x434f525255505400ULL;

inline std::string UtteranceId(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "utt%06zu", i);
  return buf;
}

/// Fills `corpus` from per-index results; ids must already be unique.
inline void Fill(Corpus &corpus, const std::vector<std::string> &ids,
                 std::vector<std::string> &texts) {
  for (std::size_t i = 0; i < ids.size(); ++i)
    corpus.entries.emplace(ids[i], CorpusEntry{std::move(texts[i]), std::nullopt, 0});
}

}  // namespace internal

/// Ids are utt000000, utt000001, ...; texts are either uniform-length
/// random word strings or serialized random parse trees.
inline Corpus GenReferenceCorpus(const GenParams &p) {
  if (p.n < 1) throw Error(ErrorCode::kInvalidParams, "corpus size must be >= 1");
  if (p.vocab.empty() || p.min_words < 1 || p.max_words < p.min_words)
    throw Error(ErrorCode::kInvalidParams, "bad transcript vocabulary or length range");

  std::vector<std::string> ids(p.n), texts(p.n);
  ParallelFor(p.n, p.threads, [&](std::size_t i) {
    ids[i] = internal::UtteranceId(i);
    const auto seed = DeriveSeed(p.seed, internal::kStreamReference, i);
    if (p.mode == CorpusMode::kParse) {
      texts[i] = Serialize(RandomTree(seed, p.tree));
    } else {
      Rng rng(seed);
      std::vector<std::string> words(static_cast<std::size_t>(rng.Between(p.min_words, p.max_words)));
      for (auto &w : words) w = p.vocab[rng.Index(p.vocab.size())];
      texts[i] = JoinTokens(words);
    }
  });
  Corpus corpus;
  corpus.system_id = "reference";
  internal::Fill(corpus, ids, texts);
  return corpus;
}

/// Per-token event probabilities. The three events are disjoint.
struct CorruptionSpec {
  double sub_rate = 0.0;
  double del_rate = 0.0;
  double ins_rate = 0.0;
  std::uint64_t seed = 0;
  bool protect_brackets = false;  // never touch intent/slot/close tokens

  void Check() const {
    for (double r : {sub_rate, del_rate, ins_rate})
      if (!(r >= 0.0 && r <= 1.0))
        throw Error(ErrorCode::kInvalidParams, "corruption rates must lie in [0,1]");
    if (sub_rate + del_rate + ins_rate > 1.0 + 1e-12)
      throw Error(ErrorCode::kInvalidParams, "corruption rates sum above 1");
  }
};

/// For each unprotected token draw one event: with sub_rate replace it by
/// a different vocabulary word, with del_rate drop it, with ins_rate keep
/// it and insert a random word after it. Entry i (in id order) uses its
/// own seed derived from spec.seed.
inline Corpus Corrupt(const Corpus &corpus, const CorruptionSpec &spec, std::string system_id,
                      const std::vector<std::string> &vocab = DefaultVocabulary(),
                      std::size_t threads = 1) {
  spec.Check();
  if (vocab.empty() && spec.sub_rate + spec.ins_rate > 0.0)
    throw Error(ErrorCode::kInvalidParams, "corruption needs a vocabulary");

  std::vector<const std::pair<const std::string, CorpusEntry> *> items;
  for (const auto &kv : corpus.entries) items.push_back(&kv);
  std::vector<std::string> ids(items.size()), texts(items.size());

  ParallelFor(items.size(), threads, [&](std::size_t i) {
    ids[i] = items[i]->first;
    Rng rng(DeriveSeed(spec.seed, internal::kStreamCorrupt, i));
    std::vector<std::string> out;
    for (const auto &tok : SplitWhitespace(items[i]->second.text)) {
      if (spec.protect_brackets && ClassifyField(tok) != TagRole::kWord) {
        out.push_back(tok);
        continue;
      }
      const double u = rng.Unit();
      if (u < spec.sub_rate) {
        // Uniform over the vocabulary entries that differ from tok.
        if (std::all_of(vocab.begin(), vocab.end(), [&](const auto &w) { return w == tok; }))
          throw Error(ErrorCode::kInvalidParams, "no substitute available for '" + tok + "'");
        const std::string *pick;
        do {
          pick = &vocab[rng.Index(vocab.size())];
        } while (*pick == tok);
        out.push_back(*pick);
      } else if (u < spec.sub_rate + spec.del_rate) {
        // dropped
      } else if (u < spec.sub_rate + spec.del_rate + spec.ins_rate) {
        out.push_back(tok);
        out.push_back(vocab[rng.Index(vocab.size())]);
      } else {
        out.push_back(tok);
      }
    }
    texts[i] = JoinTokens(out);
  });
  Corpus result;
  result.system_id = std::move(system_id);
  internal::Fill(result, ids, texts);
  return result;
}

struct ExperimentParams {
  std::size_t n_utts = 1000;
  std::size_t n_systems = 5;
  CorpusMode mode = CorpusMode::kTranscript;
  CorruptionSpec corruption{0.10, 0.0, 0.0, 7, true};  // seed is the base seed
  VoteConfig vote;
  std::size_t fallback_index = 0;
  int max_depth = 3;
  std::size_t threads = 1;
};

struct ExperimentResult {
  ExperimentParams params;
  Corpus reference;
  std::vector<Corpus> systems;
  Corpus combined;
  EvalReport report;
};

/// References use the base seed; system i is corrupted with seed + i.
/// Both EM and pooled WER are scored in either mode.
inline ExperimentResult RunCombinationExperiment(const ExperimentParams &p) {
  if (p.n_systems < 2) throw Error(ErrorCode::kInvalidParams, "need at least two systems");
  ExperimentResult r;
  r.params = p;

  GenParams gen;
  gen.seed = p.corruption.seed;
  gen.n = p.n_utts;
  gen.mode = p.mode;
  gen.tree.max_depth = p.max_depth;
  gen.threads = p.threads;
  r.reference = GenReferenceCorpus(gen);

  std::vector<std::string> system_ids;
  for (std::size_t s = 0; s < p.n_systems; ++s) {
    CorruptionSpec spec = p.corruption;
    spec.seed = p.corruption.seed + s;
    system_ids.push_back("sys" + std::to_string(s));
    r.systems.push_back(Corrupt(r.reference, spec, system_ids.back(), gen.vocab, p.threads));
  }

  const auto bundles = JoinSystems(r.systems, &r.reference, JoinPolicy::kStrict);
  CombineOptions copts;
  copts.task = p.mode == CorpusMode::kParse ? Task::kSlu : Task::kAsr;
  copts.vote = p.vote;
  copts.fallback_index = p.fallback_index;
  copts.threads = p.threads;
  const auto outputs = CombineBundles(bundles, copts);

  r.combined.system_id = "combined";
  for (std::size_t i = 0; i < bundles.size(); ++i)
    r.combined.entries.emplace(bundles[i].utterance_id, CorpusEntry{outputs[i].text, {}, 0});

  EvalOptions eopts;
  eopts.score_em = true;
  eopts.task_name = std::string(TaskName(copts.task));
  eopts.threads = p.threads;
  r.report = Evaluate(bundles, system_ids, &outputs, eopts);
  return r;
}

/// Parameter and seed echo; enough to re-run the experiment.
inline nlohmann::ordered_json ExperimentParamsJson(const ExperimentParams &p) {
  nlohmann::ordered_json j;
  j["n_utts"] = p.n_utts;
  j["n_systems"] = p.n_systems;
  j["mode"] = p.mode == CorpusMode::kParse ? "parse" : "transcript";
  j["sub_rate"] = p.corruption.sub_rate;
  j["del_rate"] = p.corruption.del_rate;
  j["ins_rate"] = p.corruption.ins_rate;
  j["protect_brackets"] = p.corruption.protect_brackets;
  j["seed"] = p.corruption.seed;
  std::vector<std::uint64_t> seeds;
  for (std::size_t s = 0; s < p.n_systems; ++s) seeds.push_back(p.corruption.seed + s);
  j["system_seeds"] = seeds;
  j["alpha"] = p.vote.alpha;
  j["null_confidence"] = p.vote.null_confidence;
  j["fallback_index"] = p.fallback_index;
  j["max_depth"] = p.max_depth;
  j["version"] = std::string(kVersion);
  return j;
}

}  // namespace slurover

#endif  // SLUROVER_SYNTH_HPP_
