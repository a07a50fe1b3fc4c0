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

#include "support.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "fairassign/rational.hpp"

namespace fa_test {

Rational q(const char* text) { return fairassign::parse_rational(text); }

std::vector<Rational> qs(std::initializer_list<const char*> texts) {
  std::vector<Rational> out;
  for (const char* t : texts) out.push_back(q(t));
  return out;
}

namespace {

std::vector<std::string> split(const char* letters) {
  std::vector<std::string> out;
  for (const char* p = letters; *p; ++p) {
    if (*p != ' ') out.emplace_back(1, *p);
  }
  return out;
}

}  // namespace

Instance example1() {
  return fairassign::make_instance(split("abcd"), {{"1", split("abcd")}, {"2", split("acbd")}});
}

Instance prop2_r() {
  return fairassign::make_instance(split("abcd"), {{"1", split("abcd")}, {"2", split("dabc")}});
}

Instance remark2() {
  return fairassign::make_instance(split("abcd"), {{"1", split("abcd")},
                                                   {"2", split("abcd")},
                                                   {"3", split("adbc")},
                                                   {"4", split("dabc")}});
}

Instance prop_a1() {
  return fairassign::make_instance(split("abcd"), {{"1", split("abcd")}, {"2", split("abcd")}});
}

Instance prop_a2() {
  return fairassign::make_instance(split("abcdefgh"), {{"1", split("abcdefgh")},
                                                       {"2", split("abcdefgh")},
                                                       {"3", split("abcdefgh")},
                                                       {"4", split("cdabefgh")}});
}

Instance random_instance(std::mt19937_64& rng, std::size_t n, std::size_t m) {
  std::vector<std::string> items;
  for (std::size_t o = 0; o < m; ++o) items.push_back(std::string(1, static_cast<char>('a' + o)));
  std::vector<std::pair<std::string, std::vector<std::string>>> agents;
  for (std::size_t j = 0; j < n; ++j) {
    auto prefs = items;
    std::shuffle(prefs.begin(), prefs.end(), rng);
    agents.emplace_back(std::to_string(j + 1), prefs);
  }
  return fairassign::make_instance(items, agents);
}

fairassign::Assignment bundles(const Instance& instance,
                               std::initializer_list<std::pair<const char*, const char*>> agent_items) {
  fairassign::Assignment a(instance.n(), instance.m());
  for (const auto& [agent, items] : agent_items) {
    for (const auto& item : split(items)) a.assign(instance.item_index(item), instance.agent_index(agent));
  }
  return a;
}

namespace ref {

std::vector<std::vector<int>> orders(const Instance& instance) {
  std::vector<std::vector<int>> out;
  for (const auto& agent : instance.agents()) {
    out.emplace_back(agent.prefs.ranking().begin(), agent.prefs.ranking().end());
  }
  return out;
}

bool sd(const std::vector<int>& order, const std::vector<Rational>& p, const std::vector<Rational>& q) {
  Rational cp = 0, cq = 0;
  for (int o : order) {
    cp += p[o];
    cq += q[o];
    if (cp < cq) return false;
  }
  return true;
}

bool lex(const std::vector<int>& order, const std::vector<Rational>& p, const std::vector<Rational>& q) {
  for (int o : order) {
    if (p[o] != q[o]) return p[o] > q[o];
  }
  return false;
}

namespace {

struct GebmEnumerator {
  std::vector<std::vector<int>> prefs;
  std::size_t n, m, rounds;
  std::map<Holders, Rational> leaves;

  void round(std::size_t c, Holders holders, Rational prob) {
    std::vector<bool> avail(m);
    bool any = false;
    for (std::size_t o = 0; o < m; ++o) {
      avail[o] = holders[o] < 0;
      any = any || avail[o];
    }
    if (c == rounds || !any) {
      leaves[holders] += prob;
      return;
    }
    step(c, std::vector<bool>(n, true), avail, holders, prob);
  }

  void step(std::size_t c, const std::vector<bool>& active, const std::vector<bool>& avail,
            const Holders& holders, const Rational& prob) {
    std::vector<std::vector<int>> applicants(m);
    bool any = false;
    for (std::size_t j = 0; j < n; ++j) {
      if (!active[j]) continue;
      for (int o : prefs[j]) {
        if (avail[o]) {
          applicants[o].push_back(static_cast<int>(j));
          any = true;
          break;
        }
      }
    }
    if (!any) {
      round(c + 1, holders, prob);
      return;
    }
    std::vector<int> applied;
    for (std::size_t o = 0; o < m; ++o) {
      if (!applicants[o].empty()) applied.push_back(static_cast<int>(o));
    }
    std::vector<int> winners(applied.size());
    std::function<void(std::size_t, Rational)> choose = [&](std::size_t i, Rational p) {
      if (i == applied.size()) {
        auto next_active = active;
        auto next_avail = avail;
        auto next_holders = holders;
        for (std::size_t k = 0; k < applied.size(); ++k) {
          next_avail[applied[k]] = false;
          next_active[winners[k]] = false;
          next_holders[applied[k]] = winners[k];
        }
        step(c, next_active, next_avail, next_holders, p);
        return;
      }
      const auto& who = applicants[applied[i]];
      for (int w : who) {
        winners[i] = w;
        choose(i + 1, p / static_cast<long>(who.size()));
      }
    };
    choose(0, prob);
  }
};

}  // namespace

std::map<Holders, Rational> gebm_lottery(const Instance& instance) {
  GebmEnumerator e{orders(instance), instance.n(), instance.m(),
                   (instance.m() + instance.n() - 1) / instance.n(), {}};
  e.round(0, Holders(instance.m(), -1), Rational(1));
  return e.leaves;
}

Matrix expected(const std::map<Holders, Rational>& lottery, std::size_t n, std::size_t m) {
  Matrix out(n, std::vector<Rational>(m, Rational(0)));
  for (const auto& [holders, p] : lottery) {
    for (std::size_t o = 0; o < m; ++o) {
      if (holders[o] >= 0) out[holders[o]][o] += p;
    }
  }
  return out;
}

std::vector<Matrix> gpbm_rounds(const Instance& instance) {
  const std::size_t n = instance.n(), m = instance.m();
  const auto prefs = orders(instance);
  std::vector<Rational> supply(m, Rational(1));
  std::vector<Matrix> out;
  auto left = [&] {
    Rational s = 0;
    for (const auto& x : supply) s += x;
    return s;
  };
  while (left() > 0) {
    Matrix p(n, std::vector<Rational>(m, Rational(0)));
    std::vector<Rational> budget(n, Rational(1));
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t o = 0; o < m; ++o) {
        if (supply[o] == 0) continue;
        std::vector<int> eaters;
        for (std::size_t j = 0; j < n; ++j) {
          if (budget[j] > 0 && prefs[j][r] == static_cast<int>(o)) eaters.push_back(static_cast<int>(j));
        }
        std::sort(eaters.begin(), eaters.end(), [&](int x, int y) { return budget[x] < budget[y]; });
        std::size_t k = eaters.size();
        for (std::size_t i = 0; i < eaters.size(); ++i, --k) {
          Rational share = supply[o] / static_cast<long>(k);
          Rational take = std::min<Rational>(budget[eaters[i]], share);
          if (budget[eaters[i]] > share) {
            for (std::size_t t = i; t < eaters.size(); ++t) {
              p[eaters[t]][o] += share;
              budget[eaters[t]] -= share;
            }
            supply[o] = 0;
            break;
          }
          p[eaters[i]][o] += take;
          budget[eaters[i]] -= take;
          supply[o] -= take;
        }
      }
    }
    out.push_back(p);
  }
  return out;
}

Matrix sum(const std::vector<Matrix>& rounds) {
  Matrix out = rounds.front();
  for (std::size_t c = 1; c < rounds.size(); ++c) {
    for (std::size_t j = 0; j < out.size(); ++j) {
      for (std::size_t o = 0; o < out[j].size(); ++o) out[j][o] += rounds[c][j][o];
    }
  }
  return out;
}

namespace {

std::vector<Rational> indicator(const Holders& holders, int j) {
  std::vector<Rational> v(holders.size(), Rational(0));
  for (std::size_t o = 0; o < holders.size(); ++o) {
    if (holders[o] == j) v[o] = 1;
  }
  return v;
}

}  // namespace

bool pe(const Instance& instance, const Holders& holders) {
  const std::size_t n = instance.n(), m = instance.m();
  const auto prefs = orders(instance);
  Holders other(m, 0);
  while (true) {
    bool some_better = false, others_equal = true;
    for (std::size_t j = 0; j < n && others_equal; ++j) {
      auto mine = indicator(holders, static_cast<int>(j));
      auto theirs = indicator(other, static_cast<int>(j));
      if (mine == theirs) continue;
      if (lex(prefs[j], theirs, mine)) {
        some_better = true;
      } else {
        others_equal = false;
      }
    }
    if (some_better && others_equal) return false;
    std::size_t o = 0;
    while (o < m && ++other[o] == static_cast<int>(n)) other[o++] = 0;
    if (o == m) return true;
  }
}

bool ef1(const Instance& instance, const Holders& holders) {
  const auto prefs = orders(instance);
  for (std::size_t j = 0; j < instance.n(); ++j) {
    const auto mine = indicator(holders, static_cast<int>(j));
    for (std::size_t k = 0; k < instance.n(); ++k) {
      if (j == k) continue;
      auto theirs = indicator(holders, static_cast<int>(k));
      bool ok = std::all_of(theirs.begin(), theirs.end(), [](const Rational& x) { return x == 0; });
      for (std::size_t o = 0; o < theirs.size() && !ok; ++o) {
        if (theirs[o] == 0) continue;
        auto reduced = theirs;
        reduced[o] = 0;
        ok = sd(prefs[j], mine, reduced);
      }
      if (!ok) return false;
    }
  }
  return true;
}

bool fcm(const Instance& instance, const Holders& holders) {
  const auto prefs = orders(instance);
  for (std::size_t j = 0; j < instance.n(); ++j) {
    const int top = prefs[j][0];
    const int h = holders[top];
    if (h < 0 || prefs[h][0] != top) return false;
  }
  return true;
}

Matrix to_matrix(const fairassign::RandomAssignment& p) {
  Matrix out(p.n(), std::vector<Rational>(p.m()));
  for (std::size_t j = 0; j < p.n(); ++j) {
    for (std::size_t o = 0; o < p.m(); ++o) out[j][o] = p.at(j, o);
  }
  return out;
}

Holders to_holders(const fairassign::Assignment& a) {
  Holders out(a.m());
  for (std::size_t o = 0; o < a.m(); ++o) {
    out[o] = a.is_assigned(o) ? static_cast<int>(a.holder(o)) : -1;
  }
  return out;
}

}  // namespace ref
}  // namespace fa_test
