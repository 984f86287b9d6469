// Copyright 2026 The stitresp authors
//
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

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "stitresp/semantics.hpp"

using namespace stitresp;

namespace {

StitModel build(const StitModelDesc& d) {
  std::vector<Violation> fatal;
  auto m = StitModel::build(d, fatal);
  REQUIRE(fatal.empty());
  return std::move(*m);
}

std::vector<std::vector<std::string>> cell_names(const StitModel& m,
                                                 const std::vector<std::vector<int>>& cells) {
  std::vector<std::vector<std::string>> out;
  for (const auto& c : cells) {
    std::vector<std::string> names;
    for (int h : c) names.push_back(m.history_name(h));
    std::sort(names.begin(), names.end());
    out.push_back(names);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> ext_names(const StitModel& m, const std::string& text) {
  std::vector<std::string> out;
  for (const Index& ix : extension_indices(m, parse(text))) out.push_back(ix.str());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("states collapse to the full slice for a lone agent") {
  StitModel m1 = build(fixtures::m1());
  auto states = states_for(m1, 0, m1.moment("m0"));
  REQUIRE(states.size() == 1);
  REQUIRE(states[0] == m1.histories_at(m1.moment("m0")));

  StitModel m2 = build(fixtures::m2());
  states = states_for(m2, 0, m2.moment("m1"));
  REQUIRE(states.size() == 1);
  REQUIRE(states[0] == m2.histories_at(m2.moment("m1")));
}

TEST_CASE("epistemic clusters follow the generator closure") {
  StitModel m = build(fixtures::m2());
  int m1 = m.moment("m1"), m2 = m.moment("m2");
  auto a1 = std::vector<int>{m.history("g1")};
  auto b1 = std::vector<int>{m.history("g2")};
  REQUIRE(epistemic_cluster(m, 0, m1, a1, m2) == std::vector<int>{m.history("g3")});
  REQUIRE(epistemic_cluster(m, 0, m1, b1, m2) == std::vector<int>{m.history("g4")});
  REQUIRE(epistemic_cluster(m, 0, m1, a1, m1) == a1);
  REQUIRE_THROWS_AS(epistemic_cluster(m, 0, m1, std::vector<int>{m.history("g3")}, m2),
                    Error);
}

TEST_CASE("optimal and s-optimal cells") {
  StitModel m1 = build(fixtures::m1());
  int mo = m1.moment("m0");
  REQUIRE(cell_names(m1, optimal(m1, 0, mo)) ==
          std::vector<std::vector<std::string>>{{"h1", "h2"}});
  REQUIRE(cell_names(m1, soptimal(m1, 0, mo)) ==
          std::vector<std::vector<std::string>>{{"h1", "h2"}});

  // In M2 the subjectively visible outcomes at m2 flip the comparison: B1
  // beats A1 at m1 (0 < 3) but loses at m2 through the clusters (2 > 1).
  StitModel m2 = build(fixtures::m2());
  int mm = m2.moment("m1");
  REQUIRE(cell_names(m2, optimal(m2, 0, mm)) ==
          std::vector<std::vector<std::string>>{{"g2"}});
  REQUIRE(cell_names(m2, soptimal(m2, 0, mm)) ==
          std::vector<std::vector<std::string>>{{"g1"}, {"g2"}});

  // Flat values collapse both orders: every cell is optimal either way.
  StitModelDesc flat = fixtures::m1();
  for (auto& [h, v] : flat.value_objective) v = 1;
  StitModel mf = build(flat);
  REQUIRE(cell_names(mf, optimal(mf, 0, mf.moment("m0"))) ==
          std::vector<std::vector<std::string>>{{"h1", "h2"}, {"h3", "h4"}});
  REQUIRE(cell_names(mf, soptimal(mf, 0, mf.moment("m0"))) ==
          cell_names(mf, optimal(mf, 0, mf.moment("m0"))));
}

TEST_CASE("dominance orders on M2 cells") {
  StitModel m = build(fixtures::m2());
  int mm = m.moment("m1");
  auto states = states_for(m, 0, mm);
  auto a1 = std::vector<int>{m.history("g1")};
  auto b1 = std::vector<int>{m.history("g2")};
  REQUIRE(obj_leq(m, states, a1, b1));
  REQUIRE_FALSE(obj_leq(m, states, b1, a1));
  REQUIRE_FALSE(subj_leq(m, 0, mm, a1, b1));
  REQUIRE_FALSE(subj_leq(m, 0, mm, b1, a1));
}

TEST_CASE("frozen evaluations on M1") {
  StitModel m = build(fixtures::m1());
  Evaluator ev(m);

  REQUIRE(ev.eval(Index{"m0", "h1"}, parse("[a]p & <>[a]~p")));
  REQUIRE_FALSE(ev.eval(Index{"m0", "h3"}, parse("[a]p")));
  REQUIRE(ev.eval(Index{"m0", "h3"}, parse("[a]~p")));

  REQUIRE(ext_names(m, "p") == std::vector<std::string>{"m0:h1", "m0:h2"});
  REQUIRE(ext_names(m, "box p").empty());
  REQUIRE(ext_names(m, "<>p") ==
          std::vector<std::string>{"m0:h1", "m0:h2", "m0:h3", "m0:h4"});

  REQUIRE(ev.eval(Index{"m0", "h1"}, parse("K a.p")));
  REQUIRE_FALSE(ev.eval(Index{"m0", "h3"}, parse("K a.p")));
  REQUIRE(ev.eval(Index{"m0", "h3"}, parse("K a.~p")));

  // Opens are only ∅ and the full slice, so nothing contingent is intended.
  REQUIRE(ext_names(m, "I a.p").empty());
  REQUIRE(ext_names(m, "I a.(p | ~p)") ==
          std::vector<std::string>{"h1:h1", "h2:h2", "h3:h3", "h4:h4", "m0:h1",
                                   "m0:h2", "m0:h3", "m0:h4"});

  REQUIRE(ev.eval(Index{"m0", "h3"}, parse("Ob a.p")));
  REQUIRE(ev.eval(Index{"m0", "h3"}, parse("Os a.p")));
  REQUIRE_FALSE(ev.eval(Index{"m0", "h1"}, parse("Ob a.q")));
}

TEST_CASE("frozen evaluations on M2") {
  StitModel m = build(fixtures::m2());
  Evaluator ev(m);

  REQUIRE(ev.eval(Index{"m1", "g1"}, parse("Ob a.p")));
  REQUIRE_FALSE(ev.eval(Index{"m1", "g1"}, parse("Os a.p")));
  REQUIRE(ev.eval(Index{"m1", "g1"}, parse("I a.p")));

  REQUIRE(ext_names(m, "I a.p") ==
          std::vector<std::string>{"m1:g1", "m1:g2", "m2:g3", "m2:g4"});
  REQUIRE(ext_names(m, "p") == std::vector<std::string>{"m1:g2", "m2:g4"});

  // The class {⟨m1,g2⟩,⟨m2,g4⟩} coincides with the p-extension.
  REQUIRE(ext_names(m, "K a.p") == std::vector<std::string>{"m1:g2", "m2:g4"});
  REQUIRE(ev.eval(Index{"m1", "g2"}, parse("[a]p")));
  REQUIRE_FALSE(ev.eval(Index{"m1", "g1"}, parse("[a]p")));
  REQUIRE_FALSE(ev.eval(Index{"m1", "g1"}, parse("box p")));
  REQUIRE(ev.eval(Index{"m1", "g1"}, parse("<>p")));
}

TEST_CASE("evaluator caches extensions per instance") {
  StitModel m = build(fixtures::m2());
  Evaluator ev(m);
  const auto& first = ev.extension(parse("Ob a.p & I a.p"));
  const auto& second = ev.extension(parse("Ob a.p & I a.p"));
  REQUIRE(&first == &second);
}

TEST_CASE("eval free function matches the evaluator") {
  StitModel m = build(fixtures::m1());
  Evaluator ev(m);
  for (const char* text : {"p", "q", "[a]p", "box q", "K a.p", "I a.p", "Ob a.p", "Os a.q"})
    for (int ix = 0; ix < m.index_count(); ++ix) {
      Index at = parse_index(m.index_name(ix));
      REQUIRE(eval(m, at, parse(text)) == ev.eval(ix, parse(text)));
    }
}
