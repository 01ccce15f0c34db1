// tests/acceptance_test.cpp

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

// Acceptance run: one PASS/FAIL line per criterion. Exit status is
// nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>

#include "fixture_check.hpp"
#include "oracles.hpp"
#include "slurover/slurover.hpp"
#include "test_util.hpp"

namespace slurover {
namespace {

using Tokens = std::vector<std::string>;

constexpr double kWerOracleSeconds = 10.0;
constexpr double kRoundTripSeconds = 5.0;
constexpr double kRoverSeconds = 10.0;
constexpr double kAsrGainSeconds = 30.0;
constexpr double kParseGainSeconds = 60.0;
constexpr double kGainFactor = 0.5;

struct Outcome {
  enum Status { kPass, kFail, kNotApplicable } status = kPass;
  std::string detail;
};

Outcome Fail(std::string detail) { return {Outcome::kFail, std::move(detail)}; }

std::vector<Tokens> AllSequences(std::size_t max_len, const Tokens &alphabet) {
  std::vector<Tokens> out = {{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (const auto &a : alphabet) {
        Tokens t = out[i];
        t.push_back(a);
        out.push_back(std::move(t));
      }
    begin = end;
  }
  return out;
}

Tokens RandomTokens(Rng &rng, std::size_t max_len, const Tokens &alphabet) {
  Tokens out(rng.Index(max_len + 1));
  for (auto &t : out) t = alphabet[rng.Index(alphabet.size())];
  return out;
}

Outcome WerOracle() {
  const Tokens alphabet = {"a", "b", "c"};
  const auto seqs = AllSequences(4, alphabet);
  std::size_t pairs = 0;
  for (const auto &hyp : seqs)
    for (const auto &ref : seqs) {
      ++pairs;
      if (EditAlign(hyp, ref).errors() != oracle::EditDistance(hyp, ref))
        return Fail("mismatch on " + JoinTokens(hyp) + " / " + JoinTokens(ref));
    }
  Rng rng(2024);
  for (int i = 0; i < 1000; ++i, ++pairs) {
    const Tokens hyp = RandomTokens(rng, 8, alphabet), ref = RandomTokens(rng, 8, alphabet);
    if (EditAlign(hyp, ref).errors() != oracle::EditDistance(hyp, ref))
      return Fail("mismatch on " + JoinTokens(hyp) + " / " + JoinTokens(ref));
  }
  return {Outcome::kPass, std::to_string(pairs) + " pairs"};
}

Outcome ParseRoundTrip() {
  const RandomTreeParams params{4, DefaultIntentLabels(), DefaultSlotLabels(), DefaultVocabulary()};
  for (std::uint64_t i = 0; i < 10000; ++i) {
    const ParseTree t = RandomTree(42 + i, params);
    if (t.Depth() > 4) return Fail("depth bound exceeded at draw " + std::to_string(i));
    const std::string s = Serialize(t);
    if (!(ParseLinearized(TokenizeLinearized(s)) == t)) return Fail("round trip failed: " + s);
  }
  return {Outcome::kPass, "10000 trees"};
}

Outcome RoverIdentity() {
  Rng rng(99);
  const Tokens alphabet = {"a", "b", "c", "d", "e", "f", "g"};
  for (int trial = 0; trial < 1000; ++trial) {
    const Tokens t = RandomTokens(rng, 12, alphabet);
    for (std::size_t k : {1u, 2u, 3u, 5u}) {
      std::vector<Hypothesis> hyps;
      for (std::size_t s = 0; s < k; ++s) hyps.push_back({"u", t, std::nullopt, s});
      auto wtn = WtnFromHypothesis(hyps[0]);
      if (!wtn.CountsConserved()) return Fail("counts not conserved");
      for (std::size_t s = 1; s < k; ++s) {
        wtn = AlignIntoWtn(std::move(wtn), hyps[s]);
        if (!wtn.CountsConserved()) return Fail("counts not conserved");
      }
      if (Vote(wtn, {}) != t || Combine(hyps) != t) return Fail("identity failed: " + JoinTokens(t));
    }
    // Conservation on distinct random systems too.
    std::vector<Hypothesis> mixed;
    for (std::size_t s = 0; s < 5; ++s) mixed.push_back({"u", RandomTokens(rng, 10, alphabet), {}, s});
    auto wtn = WtnFromHypothesis(mixed[0]);
    for (std::size_t s = 1; s < mixed.size(); ++s) {
      wtn = AlignIntoWtn(std::move(wtn), mixed[s]);
      if (!wtn.CountsConserved()) return Fail("counts not conserved on mixed systems");
    }
  }
  return {Outcome::kPass, "1000 sequences x k in {1,2,3,5}"};
}

EvalReport Simulate(const std::string &task, const testutil::TempDir &dir) {
  auto run = testutil::RunCli({"simulate", "--n", "1000", "--systems", "5", "--sub-rate", "0.10",
                               "--del-rate", "0", "--ins-rate", "0", "--seed", "7", "--alpha", "1",
                               "--task", task, "--quiet", "--out", dir.path().string()});
  if (run.code != 0) throw std::runtime_error("simulate exited " + std::to_string(run.code) + ": " + run.err);
  return ReadReportJson(dir / "report.json");
}

Outcome AsrGain() {
  testutil::TempDir dir;
  const EvalReport r = Simulate("asr", dir);
  double best = 1e9;
  for (const auto &s : r.systems) best = std::min(best, s.wer->Value());
  const double combined = r.combined->wer->Value();
  char buf[160];
  std::snprintf(buf, sizeof(buf), "combined WER %.4f, best single %.4f, bound %.4f", combined,
                best, kGainFactor * best);
  if (combined < best && combined < kGainFactor * best) return {Outcome::kPass, buf};
  return Fail(buf);
}

Outcome ParseGain() {
  testutil::TempDir dir;
  const EvalReport r = Simulate("slu", dir);
  std::size_t bad = 0, fell_back = 0;
  for (const auto &row : r.utterances) {
    fell_back += row.fell_back.value_or(false) ? 1 : 0;
    if (!row.combined_valid.value_or(false) && !row.fell_back.value_or(false)) ++bad;
  }
  // Cross-check the flags against the written combined corpus.
  const Corpus combined = LoadCorpus(dir / "combined.jsonl");
  for (const auto &row : r.utterances)
    if (!Validate(combined.entries.at(row.id).text).valid() && !row.fell_back.value_or(false)) ++bad;
  double best = 0.0;
  for (const auto &s : r.systems) best = std::max(best, s.em->Value());
  const double em = r.combined->em->Value();
  char buf[200];
  std::snprintf(buf, sizeof(buf), "combined EM %.4f, best single %.4f, %zu fell back, %zu unflagged invalid",
                em, best, fell_back, bad);
  if (bad == 0 && em >= best) return {Outcome::kPass, buf};
  return Fail(buf);
}

std::vector<std::string> FixtureArgs(const std::string &cmd) {
  using testutil::Fixture;
  return {cmd, "--ref", Fixture("ref.tsv"), "--hyp", Fixture("sys_a.tsv"), "--hyp",
          Fixture("sys_b.tsv"), "--hyp", Fixture("sys_c.jsonl"), "--hyp", Fixture("sys_d.tsv")};
}

Outcome FixtureCheck() {
  testutil::TempDir dir;
  std::vector<std::string> diffs;
  auto args = FixtureArgs("combine");
  for (const std::string &extra : std::initializer_list<std::string>{"--out", dir / "c.jsonl", "--report", dir / "r.json"}) args.push_back(extra);
  auto run = testutil::RunCli(args);
  if (run.code != 0) return Fail("combine exited " + std::to_string(run.code) + ": " + run.err);
  const auto expected = testutil::LoadExpected(testutil::Fixture("expected.json"));
  diffs = testutil::CompareToExpected(ReadReportJson(dir / "r.json"), expected.at("case_sensitive"));

  args = FixtureArgs("combine");
  for (const std::string &extra : std::initializer_list<std::string>{"--lowercase", "--out", dir / "c2.jsonl", "--report", dir / "r2.json"})
    args.push_back(extra);
  run = testutil::RunCli(args);
  if (run.code != 0) return Fail("combine --lowercase exited " + std::to_string(run.code));
  for (auto &d : testutil::CompareToExpected(ReadReportJson(dir / "r2.json"), expected.at("lowercase")))
    diffs.push_back("lowercase " + d);
  if (!diffs.empty()) return Fail(diffs.front());
  return {Outcome::kPass, "4 systems x 6 utterances, both case modes"};
}

Outcome Determinism() {
  std::vector<testutil::TempDir> dirs(6);
  const std::vector<std::vector<std::string>> runs = {
      {"--task", "asr", "--threads", "1"}, {"--task", "asr", "--threads", "4"},
      {"--task", "asr", "--threads", "1"}, {"--task", "slu", "--threads", "1"},
      {"--task", "slu", "--threads", "4"}, {"--task", "slu", "--threads", "1"}};
  for (std::size_t i = 0; i < runs.size(); ++i) {
    std::vector<std::string> args = {"simulate", "--n", "1000", "--seed", "7", "--quiet", "--out",
                                     dirs[i].path().string()};
    args.insert(args.end(), runs[i].begin(), runs[i].end());
    if (testutil::RunCli(args).code != 0) return Fail("simulate failed");
  }
  for (std::size_t base : {0u, 3u})
    for (std::size_t other : {1u, 2u})
      if (testutil::Snapshot(dirs[base].path()) != testutil::Snapshot(dirs[base + other].path()))
        return Fail("simulate outputs differ (" + runs[base][1] + ")");

  testutil::TempDir fx;
  std::map<std::string, std::string> first;
  for (std::string threads : {"1", "4", "1"}) {
    auto args = FixtureArgs("combine");
    for (const std::string &extra : std::initializer_list<std::string>{"--threads", threads, "--out", fx / "c.jsonl", "--report", fx / "r.json"})
      args.push_back(extra);
    if (testutil::RunCli(args).code != 0) return Fail("combine failed");
    auto snap = testutil::Snapshot(fx.path());
    if (first.empty()) first = snap;
    else if (snap != first) return Fail("combine outputs differ at threads=" + threads);
  }
  return {Outcome::kPass, "simulate asr/slu and fixture combine, threads 1/4, repeated"};
}

struct Criterion {
  const char *name;
  double limit_seconds;  // 0 = no limit
  std::function<Outcome()> run;
};

int RunAll() {
  const std::vector<Criterion> criteria = {
      {"C1 published-number reproduction", 0,
       [] {
         return Outcome{Outcome::kNotApplicable,
                        "needs the original audio corpus and pretrained models"};
       }},
      {"C2 WER oracle equivalence", kWerOracleSeconds, WerOracle},
      {"C3 parse round trip", kRoundTripSeconds, ParseRoundTrip},
      {"C4 ROVER identity and conservation", kRoverSeconds, RoverIdentity},
      {"C5 transcript combination gain", kAsrGainSeconds, AsrGain},
      {"C6 parse combination validity", kParseGainSeconds, ParseGain},
      {"C7 CLI fixture check", 0, FixtureCheck},
      {"C8 determinism", 0, Determinism},
  };
  int failures = 0;
  for (const auto &c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception &e) {
      o = Fail(std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.status == Outcome::kPass && c.limit_seconds > 0 && secs >= c.limit_seconds) {
      char buf[96];
      std::snprintf(buf, sizeof(buf), "; over time limit %.0fs", c.limit_seconds);
      o = Fail(o.detail + buf);
    }
    const char *tag = o.status == Outcome::kPass   ? "PASS"
                      : o.status == Outcome::kFail ? "FAIL"
                                                   : "N/A ";
    std::printf("[%s] %-38s %7.2fs  %s\n", tag, c.name, secs, o.detail.c_str());
    std::fflush(stdout);
    if (o.status == Outcome::kFail) ++failures;
  }
  std::printf("%d failed\n", failures);
  return failures == 0 ? 0 : 1;
}

}  // namespace
}  // namespace slurover

int main() { return slurover::RunAll(); }
