// tests/rover_test.cpp

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

#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "slurover/random.hpp"
#include "slurover/rover.hpp"

namespace slurover {
namespace {

using Tokens = std::vector<std::string>;

Hypothesis Hyp(Tokens tokens, std::size_t system = 0, std::string id = "u") {
  Hypothesis h;
  h.utterance_id = std::move(id);
  h.tokens = std::move(tokens);
  h.system_index = system;
  return h;
}

oracle::Network AsNetwork(const WordTransitionNetwork &wtn) {
  oracle::Network net;
  for (const auto &set : wtn.sets) {
    oracle::Set s;
    for (const auto &c : set.candidates()) s[c.token.value_or("")] += static_cast<int>(c.count);
    net.push_back(s);
  }
  return net;
}

oracle::Network Net(std::vector<oracle::Set> sets) { return sets; }

TEST(WtnFromHypothesis, OneSetPerToken) {
  auto wtn = WtnFromHypothesis(Hyp({"a", "b"}));
  EXPECT_EQ(wtn.num_systems, 1u);
  EXPECT_EQ(AsNetwork(wtn), Net({{{"a", 1}}, {{"b", 1}}}));
  EXPECT_TRUE(WtnFromHypothesis(Hyp({})).sets.empty());

  Hypothesis h = Hyp({"a", "b"});
  h.confidences = std::vector<double>{0.25, 0.5};
  auto c = WtnFromHypothesis(h);
  EXPECT_DOUBLE_EQ(c.sets[0].candidates()[0].conf_sum, 0.25);
  EXPECT_DOUBLE_EQ(c.sets[1].candidates()[0].conf_sum, 0.5);
  EXPECT_TRUE(c.has_confidences);
}

// The expected networks below were checked against the exhaustive
// alignment oracle: each is the unique minimum-cost result.
TEST(AlignIntoWtn, DeletionGetsNull) {
  auto base = WtnFromHypothesis(Hyp({"a", "b", "c"}));
  auto all = oracle::AlignAll(AsNetwork(base), 1, {"a", "c"});
  EXPECT_EQ(all.best_cost, 1);
  ASSERT_EQ(all.best_networks.size(), 1u);
  auto wtn = AlignIntoWtn(base, Hyp({"a", "c"}, 1));
  const auto expected = Net({{{"a", 2}}, {{"b", 1}, {"", 1}}, {{"c", 2}}});
  EXPECT_EQ(*all.best_networks.begin(), expected);
  EXPECT_EQ(AsNetwork(wtn), expected);
  EXPECT_EQ(wtn.num_systems, 2u);
}

TEST(AlignIntoWtn, InsertionPadsPriorSystems) {
  auto base = WtnFromHypothesis(Hyp({"a"}));
  auto all = oracle::AlignAll(AsNetwork(base), 1, {"a", "x"});
  ASSERT_EQ(all.best_networks.size(), 1u);
  auto wtn = AlignIntoWtn(base, Hyp({"a", "x"}, 1));
  const auto expected = Net({{{"a", 2}}, {{"", 1}, {"x", 1}}});
  EXPECT_EQ(*all.best_networks.begin(), expected);
  EXPECT_EQ(AsNetwork(wtn), expected);
}

TEST(AlignIntoWtn, EmptyNetwork) {
  auto wtn = BuildWtn({Hyp({}, 0), Hyp({}, 1), Hyp({"a"}, 2)});
  EXPECT_EQ(AsNetwork(wtn), Net({{{"", 2}, {"a", 1}}}));
  EXPECT_TRUE(wtn.CountsConserved());
}

TEST(BuildWtn, Examples) {
  EXPECT_EQ(AsNetwork(BuildWtn({Hyp({"a", "b"})})), Net({{{"a", 1}}, {{"b", 1}}}));
  EXPECT_EQ(AsNetwork(BuildWtn({Hyp({"x", "y"}, 0), Hyp({"x", "y"}, 1), Hyp({"x", "y"}, 2)})),
            Net({{{"x", 3}}, {{"y", 3}}}));
  auto wtn = BuildWtn({Hyp({"a", "b"}, 0), Hyp({"a", "c"}, 1), Hyp({"a", "b"}, 2)});
  EXPECT_EQ(AsNetwork(wtn), Net({{{"a", 3}}, {{"b", 2}, {"c", 1}}}));
}

TEST(BuildWtn, Errors) {
  try {
    BuildWtn({});
    ADD_FAILURE();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyInput);
  }
  try {
    BuildWtn({Hyp({"a"}, 0, "u1"), Hyp({"a"}, 1, "u2")});
    ADD_FAILURE();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kMixedUtteranceIds);
  }
  Hypothesis bad = Hyp({"a", "b"});
  bad.confidences = std::vector<double>{0.5};
  EXPECT_THROW(WtnFromHypothesis(bad), Error);
}

// Random small networks: the library result is always one of the
// oracle's minimum-cost networks.
TEST(AlignIntoWtn, AgreesWithExhaustiveOracle) {
  Rng rng(19);
  const Tokens alphabet = {"a", "b", "c"};
  for (int trial = 0; trial < 400; ++trial) {
    std::vector<Hypothesis> hyps;
    const auto systems = 1 + rng.Index(3);
    for (std::size_t s = 0; s < systems; ++s) {
      Tokens t(rng.Index(5));
      for (auto &w : t) w = alphabet[rng.Index(3)];
      hyps.push_back(Hyp(t, s));
    }
    Tokens next(rng.Index(5));
    for (auto &w : next) w = alphabet[rng.Index(3)];

    const auto base = BuildWtn(hyps);
    const auto all = oracle::AlignAll(AsNetwork(base), static_cast<int>(systems), next);
    const auto got = AlignIntoWtn(base, Hyp(next, systems));
    ASSERT_TRUE(all.best_networks.count(AsNetwork(got))) << "trial " << trial;
    ASSERT_TRUE(got.CountsConserved());
  }
}

TEST(Vote, MajorityAndTies) {
  auto wtn = BuildWtn({Hyp({"a", "b"}, 0), Hyp({"a", "c"}, 1), Hyp({"a", "b"}, 2)});
  EXPECT_EQ(Vote(wtn, {}), (Tokens{"a", "b"}));

  // {b:1, NULL:1}: the word wins the tie.
  auto with_null = BuildWtn({Hyp({"b"}, 0), Hyp({}, 1)});
  EXPECT_EQ(Vote(with_null, {}), (Tokens{"b"}));
  auto null_first = BuildWtn({Hyp({}, 0), Hyp({"b"}, 1)});
  EXPECT_EQ(Vote(null_first, {}), (Tokens{"b"}));

  // {b:1 (sys0), c:1 (sys1)}: lower system index wins.
  EXPECT_EQ(Vote(BuildWtn({Hyp({"b"}, 0), Hyp({"c"}, 1)}), {}), (Tokens{"b"}));
  EXPECT_EQ(Vote(BuildWtn({Hyp({"c"}, 1), Hyp({"b"}, 0)}), {}), (Tokens{"b"}));

  // NULL majority drops the position.
  EXPECT_EQ(Vote(BuildWtn({Hyp({"a", "x"}, 0), Hyp({"a"}, 1), Hyp({"a"}, 2)}), {}),
            (Tokens{"a"}));
}

TEST(Vote, ConfidenceWeighting) {
  Hypothesis h0 = Hyp({"b"}, 0), h1 = Hyp({"c"}, 1), h2 = Hyp({"c"}, 2);
  h0.confidences = std::vector<double>{0.99};
  h1.confidences = std::vector<double>{0.1};
  h2.confidences = std::vector<double>{0.1};
  auto wtn = BuildWtn({h0, h1, h2});
  EXPECT_EQ(Vote(wtn, {1.0, 0.0}), (Tokens{"c"}));
  // alpha 0: confidence only; b's 0.99 beats c's 0.1.
  EXPECT_EQ(Vote(wtn, {0.0, 0.0}), (Tokens{"b"}));
  // 0.5 * 1/3 + 0.5 * 0.99 = 0.6617 vs 0.5 * 2/3 + 0.5 * 0.1 = 0.3833
  EXPECT_EQ(Vote(wtn, {0.5, 0.0}), (Tokens{"b"}));

  // High NULL confidence can drop a word.
  Hypothesis w = Hyp({"x"}, 0);
  w.confidences = std::vector<double>{0.2};
  Hypothesis e = Hyp({}, 1);
  e.confidences = std::vector<double>{};
  EXPECT_EQ(Vote(BuildWtn({w, e}), {0.5, 0.9}), Tokens{});
  EXPECT_EQ(Vote(BuildWtn({w, e}), {0.5, 0.1}), (Tokens{"x"}));
}

TEST(Vote, Errors) {
  auto wtn = BuildWtn({Hyp({"a"}, 0), Hyp({"b"}, 1)});
  try {
    Vote(wtn, {0.5, 0.0});
    ADD_FAILURE();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingConfidences);
  }
  EXPECT_THROW(Vote(wtn, {1.5, 0.0}), Error);
  EXPECT_THROW(Vote(WordTransitionNetwork{}, {}), Error);
}

TEST(Combine, Examples) {
  EXPECT_EQ(Combine({Hyp({"only", "one"})}), (Tokens{"only", "one"}));
  EXPECT_EQ(Combine({Hyp({"set", "alarm", "for", "nine"}, 0),
                     Hyp({"set", "alarm", "for", "five"}, 1),
                     Hyp({"set", "alarm", "for", "nine"}, 2)}),
            (Tokens{"set", "alarm", "for", "nine"}));
}

TEST(Combine, IdentityAndConservationProperty) {
  Rng rng(5);
  const Tokens alphabet = {"a", "b", "c", "d", "e", "f"};
  for (int trial = 0; trial < 1000; ++trial) {
    Tokens t(rng.Index(10));
    for (auto &w : t) w = alphabet[rng.Index(alphabet.size())];
    for (std::size_t k : {1u, 2u, 3u, 5u}) {
      std::vector<Hypothesis> hyps;
      for (std::size_t s = 0; s < k; ++s) hyps.push_back(Hyp(t, s));
      ASSERT_EQ(Combine(hyps), t);
    }
  }
}

// No invented tokens, counts conserved at every step, deterministic, and
// output length bounded by the set count and the strict-majority count.
TEST(Combine, StructuralProperties) {
  Rng rng(23);
  const Tokens alphabet = {"a", "b", "c", "d"};
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Hypothesis> hyps;
    std::set<std::string> seen;
    const auto systems = 2 + rng.Index(4);
    for (std::size_t s = 0; s < systems; ++s) {
      Tokens t(rng.Index(7));
      for (auto &w : t) w = alphabet[rng.Index(alphabet.size())];
      seen.insert(t.begin(), t.end());
      hyps.push_back(Hyp(t, s));
    }
    WordTransitionNetwork wtn = WtnFromHypothesis(hyps[0]);
    ASSERT_TRUE(wtn.CountsConserved());
    for (std::size_t s = 1; s < systems; ++s) {
      wtn = AlignIntoWtn(std::move(wtn), hyps[s]);
      ASSERT_TRUE(wtn.CountsConserved());
      ASSERT_EQ(wtn.num_systems, s + 1);
    }
    const auto out = Vote(wtn, {});
    for (const auto &w : out) ASSERT_TRUE(seen.count(w));
    ASSERT_EQ(out, Combine(hyps));
    ASSERT_LE(out.size(), wtn.sets.size());
    std::size_t strict = 0;
    for (const auto &set : wtn.sets)
      for (const auto &c : set.candidates())
        if (!c.is_null() && 2 * c.count > wtn.num_systems) ++strict;
    ASSERT_GE(out.size(), strict);
  }
}

TEST(CombineParses, MajorityParse) {
  auto split = [](const char *s) { return SplitWhitespace(s); };
  std::vector<Hypothesis> hyps = {
      Hyp(split("[IN:GET_WEATHER [SL:LOCATION boston ] ]"), 0),
      Hyp(split("[IN:GET_WEATHER [SL:LOCATION austin ] ]"), 1),
      Hyp(split("[IN:GET_WEATHER [SL:LOCATION boston ] ]"), 2)};
  auto r = CombineParses(hyps, {}, 0);
  EXPECT_EQ(r.text, "[IN:GET_WEATHER [SL:LOCATION boston ] ]");
  EXPECT_TRUE(r.valid);
  EXPECT_FALSE(r.fell_back);

  hyps[1] = hyps[0];
  r = CombineParses(hyps, {}, 2);
  EXPECT_EQ(r.text, "[IN:GET_WEATHER [SL:LOCATION boston ] ]");
  EXPECT_TRUE(r.valid);
}

TEST(CombineParses, NullMajorityAtCloseFallsBack) {
  auto split = [](const char *s) { return SplitWhitespace(s); };
  std::vector<Hypothesis> hyps = {Hyp(split("[IN:A [SL:B x ] ]"), 0),
                                  Hyp(split("[IN:A [SL:B x ]"), 1),
                                  Hyp(split("[IN:A [SL:B x ]"), 2)};
  EXPECT_EQ(JoinTokens(Combine(hyps)), "[IN:A [SL:B x ]");
  auto r = CombineParses(hyps, {}, 0);
  EXPECT_TRUE(r.fell_back);
  EXPECT_TRUE(r.valid);
  EXPECT_EQ(r.text, "[IN:A [SL:B x ] ]");

  r = CombineParses(hyps, {}, 1);
  EXPECT_TRUE(r.fell_back);
  EXPECT_FALSE(r.valid);
  EXPECT_EQ(r.text, "[IN:A [SL:B x ]");

  EXPECT_THROW(CombineParses(hyps, {}, 3), Error);
}

}  // namespace
}  // namespace slurover
