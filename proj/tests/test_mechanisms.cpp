// Copyright 2026 The fairassign Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <random>

#include "fairassign/errors.hpp"
#include "fairassign/mechanisms.hpp"
#include "fairassign/properties.hpp"
#include "support.hpp"

using namespace fairassign;
using fa_test::q;
using fa_test::qs;

namespace {

ItemSet named(const Instance& inst, const char* letters) {
  ItemSet s(inst.m());
  for (const char* p = letters; *p; ++p) s.insert(inst.item_index(std::string(1, *p)));
  return s;
}

fa_test::ref::Matrix matrix_of(const std::vector<std::vector<const char*>>& rows) {
  fa_test::ref::Matrix out;
  for (const auto& r : rows) {
    out.emplace_back();
    for (const char* x : r) out.back().push_back(q(x));
  }
  return out;
}

}  // namespace

TEST_SUITE("mechanisms") {

TEST_CASE("ebm on Example 1 with agent 1 winning the contest") {
  const auto inst = fa_test::example1();
  ScriptedTieBreaker ties({0});
  const auto a = ebm(inst, inst.all_items(), ties);
  CHECK(a == fa_test::bundles(inst, {{"1", "a"}, {"2", "c"}}));
  CHECK(ties.branching() == std::vector<std::size_t>{2});

  ScriptedTieBreaker second({0});
  CHECK(ebm(inst, named(inst, "bd"), second) == fa_test::bundles(inst, {{"1", "b"}, {"2", "d"}}));
}

TEST_CASE("ebm with a single agent and empty input") {
  const auto inst = make_instance({"x", "y"}, {{"1", {"x", "y"}}});
  SeededTieBreaker ties(1);
  CHECK(ebm(inst, inst.all_items(), ties) == fa_test::bundles(inst, {{"1", "x"}}));
  CHECK_THROWS_AS(ebm(inst, ItemSet(2), ties), InputError);
}

TEST_CASE("gebm with both contests won by agent 1") {
  const auto inst = fa_test::example1();
  ScriptedTieBreaker ties({0, 0});
  const auto out = gebm(inst, ties);
  CHECK(out.total == fa_test::bundles(inst, {{"1", "ab"}, {"2", "cd"}}));
  REQUIRE(out.rounds.size() == 2);
  CHECK(out.rounds[0] == fa_test::bundles(inst, {{"1", "a"}, {"2", "c"}}));
  CHECK(out.rounds[1] == fa_test::bundles(inst, {{"1", "b"}, {"2", "d"}}));
  CHECK(out.remaining[0] == inst.all_items());
  CHECK(out.remaining[1] == named(inst, "bd"));
}

TEST_CASE("gebm with one agent takes one item per round") {
  const auto inst = make_instance({"a", "b", "c"}, {{"1", {"b", "c", "a"}}});
  const auto out = gebm_sample(inst, 5);
  CHECK(out.total.is_complete());
  REQUIRE(out.rounds.size() == 3);
  CHECK(out.rounds[0].bundle(0) == std::vector<ItemIndex>{1});
  CHECK(out.rounds[1].bundle(0) == std::vector<ItemIndex>{2});
  CHECK(out.rounds[2].bundle(0) == std::vector<ItemIndex>{0});
}

TEST_CASE("gebm sampling is deterministic given the seed") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    const auto inst = fa_test::random_instance(rng, 3, 7);
    const auto a = gebm_sample(inst, 1000 + t), b = gebm_sample(inst, 1000 + t);
    CHECK(a.total == b.total);
    CHECK(a.rounds == b.rounds);
  }
}

TEST_CASE("gebm exact lottery on Example 1") {
  const auto inst = fa_test::example1();
  const auto lottery = gebm_lottery(inst);
  REQUIRE(lottery.size() == 4);
  for (const auto& atom : lottery.atoms()) CHECK(atom.probability == q("1/4"));
  const Lottery expected_atoms = Lottery::from_atoms({
      {q("1/4"), fa_test::bundles(inst, {{"1", "ab"}, {"2", "cd"}})},
      {q("1/4"), fa_test::bundles(inst, {{"1", "ad"}, {"2", "bc"}})},
      {q("1/4"), fa_test::bundles(inst, {{"1", "bc"}, {"2", "ad"}})},
      {q("1/4"), fa_test::bundles(inst, {{"1", "bd"}, {"2", "ac"}})},
  });
  CHECK(lottery == expected_atoms);
  const auto ref = fa_test::ref::expected(fa_test::ref::gebm_lottery(inst), 2, 4);
  const auto want = matrix_of({{"1/2", "3/4", "1/4", "1/2"}, {"1/2", "1/4", "3/4", "1/2"}});
  CHECK(ref == want);
  CHECK(fa_test::ref::to_matrix(gebm_expected(inst)) == want);
}

TEST_CASE("gebm exact lottery on the manipulation profile") {
  const auto inst = fa_test::prop2_r();
  const auto lottery = gebm_lottery(inst);
  CHECK(lottery == Lottery::from_atoms({
                       {q("1/2"), fa_test::bundles(inst, {{"1", "ab"}, {"2", "cd"}})},
                       {q("1/2"), fa_test::bundles(inst, {{"1", "ac"}, {"2", "bd"}})},
                   }));
}

TEST_CASE("gebm with identical preferences on two items") {
  const auto inst = make_instance({"a", "b"}, {{"1", {"a", "b"}}, {"2", {"a", "b"}}});
  const auto lottery = gebm_lottery(inst);
  CHECK(lottery.size() == 2);
  const auto p = gebm_expected(inst);
  for (AgentIndex j = 0; j < 2; ++j) {
    for (ItemIndex o = 0; o < 2; ++o) CHECK(p.at(j, o) == q("1/2"));
  }
}

TEST_CASE("gebm exact mode refuses oversized instances") {
  std::vector<std::string> items;
  for (int i = 0; i < 12; ++i) items.push_back("o" + std::to_string(i));
  std::vector<std::pair<std::string, std::vector<std::string>>> agents;
  for (int j = 0; j < 6; ++j) agents.emplace_back(std::to_string(j + 1), items);
  const auto inst = make_instance(items, agents);
  CHECK_THROWS_AS(gebm_lottery(inst, 1000), SizeError);
  try {
    gebm_lottery(inst, 1000);
  } catch (const SizeError& e) {
    CHECK(std::string(e.what()).find("sample") != std::string::npos);
  }
}

TEST_CASE("property: gebm lottery matches the recursive reference enumerator") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + rng() % 4, m = 1 + rng() % 7;
    const auto inst = fa_test::random_instance(rng, n, m);
    const auto lottery = gebm_lottery(inst);
    const auto ref = fa_test::ref::gebm_lottery(inst);
    REQUIRE(lottery.size() == ref.size());
    for (const auto& atom : lottery.atoms()) {
      const auto it = ref.find(fa_test::ref::to_holders(atom.assignment));
      REQUIRE(it != ref.end());
      REQUIRE(it->second == atom.probability);
    }
    REQUIRE(fa_test::ref::to_matrix(gebm_expected(inst)) == fa_test::ref::expected(ref, n, m));
  }
}

TEST_CASE("property: gebm realizations are balanced, ordered across rounds and FERI per round") {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 1 + rng() % 4, m = 1 + rng() % 8;
    const auto inst = fa_test::random_instance(rng, n, m);
    const auto out = gebm_sample(inst, rng());
    REQUIRE(out.total.is_complete());
    REQUIRE(out.rounds.size() == inst.rounds());
    for (AgentIndex j = 0; j < n; ++j) {
      const auto size = out.total.bundle(j).size();
      REQUIRE(size >= m / n);
      REQUIRE(size <= inst.rounds());
    }
    for (std::size_t c = 0; c < out.rounds.size(); ++c) {
      REQUIRE(check_feri(inst, out.rounds[c], out.remaining[c]).verdict);
      if (c + 1 < out.rounds.size()) {
        ItemSet next = out.remaining[c];
        for (ItemIndex o = 0; o < m; ++o) {
          if (out.rounds[c].is_assigned(o)) next.erase(o);
        }
        REQUIRE(next == out.remaining[c + 1]);
      }
    }
    REQUIRE(check_round_ordering(inst, out.rounds).verdict);
  }
}

TEST_CASE("gpbm reproduces the per-round tables of the worked example") {
  const auto inst = fa_test::example1();
  const auto out = gpbm(inst, true);
  REQUIRE(out.rounds.size() == 2);
  CHECK(fa_test::ref::to_matrix(out.rounds[0]) ==
        matrix_of({{"1/2", "1/2", "0", "0"}, {"1/2", "0", "1/2", "0"}}));
  CHECK(fa_test::ref::to_matrix(out.rounds[1]) ==
        matrix_of({{"0", "1/2", "0", "1/2"}, {"0", "0", "1/2", "1/2"}}));
  // Round 2 allocates only in consumption rounds 2 and 4.
  for (const auto& e : out.trace) {
    if (e.round == 2) CHECK((e.consumption_round == 2 || e.consumption_round == 4));
  }
  CHECK_FALSE(out.trace.empty());
}

TEST_CASE("gpbm on the four-agent envy instance") {
  const auto out = gpbm(fa_test::remark2());
  CHECK(fa_test::ref::to_matrix(out.total) == matrix_of({{"1/3", "1/2", "1/6", "0"},
                                                         {"1/3", "1/2", "1/6", "0"},
                                                         {"1/3", "0", "2/3", "0"},
                                                         {"0", "0", "0", "1"}}));
}

TEST_CASE("gpbm on the manipulation profile is deterministic") {
  const auto inst = fa_test::prop2_r();
  const auto out = gpbm(inst);
  CHECK(out.total == RandomAssignment::from(fa_test::bundles(inst, {{"1", "ab"}, {"2", "cd"}})));
}

TEST_CASE("waterfilling with unequal budgets") {
  CHECK(waterfill(qs({"1", "1"}), q("1")) == qs({"1/2", "1/2"}));
  CHECK(waterfill(qs({"1/4", "1"}), q("1")) == qs({"1/4", "3/4"}));
  CHECK(waterfill(qs({"1/4", "1/4"}), q("1")) == qs({"1/4", "1/4"}));
  CHECK(waterfill(qs({"1/2", "1", "1"}), q("1")) == qs({"1/3", "1/3", "1/3"}));
  CHECK(waterfill(qs({"1/6", "1", "1"}), q("1")) == qs({"1/6", "5/12", "5/12"}));
  CHECK(waterfill(qs({}), q("1")).empty());
}

TEST_CASE("property: gpbm matches direct simulation and conserves supply") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 1 + rng() % 4, m = 1 + rng() % 8;
    const auto inst = fa_test::random_instance(rng, n, m);
    const auto out = gpbm(inst);
    const auto ref = fa_test::ref::gpbm_rounds(inst);
    REQUIRE(out.rounds.size() == inst.rounds());
    REQUIRE(ref.size() == inst.rounds());
    for (std::size_t c = 0; c < ref.size(); ++c) {
      REQUIRE(fa_test::ref::to_matrix(out.rounds[c]) == ref[c]);
      Rational consumed = 0;
      for (AgentIndex j = 0; j < n; ++j) {
        REQUIRE(out.rounds[c].row_sum(j) <= 1);
        if (c + 1 < ref.size()) REQUIRE(out.rounds[c].row_sum(j) == 1);
        consumed += out.rounds[c].row_sum(j);
      }
      REQUIRE(consumed == Rational(static_cast<long>(std::min(n, m - c * n))));
      REQUIRE(check_sde_acyclic(inst, out.total).verdict);
    }
    REQUIRE(out.total.is_fully_allocating());
    REQUIRE(fa_test::ref::to_matrix(out.total) == fa_test::ref::sum(ref));
  }
}

TEST_CASE("rsdq block picks") {
  const auto inst = fa_test::prop_a1();
  const std::vector<AgentIndex> first{0, 1}, second{1, 0};
  CHECK(rsdq(inst, first, 2) == fa_test::bundles(inst, {{"1", "ab"}, {"2", "cd"}}));
  CHECK(rsdq(inst, second, 2) == fa_test::bundles(inst, {{"1", "cd"}, {"2", "ab"}}));
  const auto solo = make_instance({"a", "b", "c"}, {{"1", {"c", "a", "b"}}});
  const std::vector<AgentIndex> only{0};
  CHECK(rsdq(solo, only, 2).bundle(0) == std::vector<ItemIndex>{0, 2});
  CHECK_THROWS_AS(rsdq(inst, first, 0), InputError);
  const std::vector<AgentIndex> bad{0, 0};
  CHECK_THROWS_AS(rsdq(inst, bad, 2), InputError);
  const auto lottery = rsdq_lottery(inst, 2);
  CHECK(lottery.size() == 2);
}

TEST_CASE("mechanism names") {
  CHECK(parse_mechanism("gpbm") == Mechanism::kGpbm);
  CHECK(mechanism_name(Mechanism::kRsdq) == "rsdq");
  CHECK_THROWS_AS(parse_mechanism("boston"), InputError);
}

}
