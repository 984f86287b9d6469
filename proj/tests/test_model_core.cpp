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
#include <random>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "stitresp/validate.hpp"

using namespace stitresp;

namespace {

std::vector<std::string> names(const StitModel& m, const std::vector<int>& ixs) {
  std::vector<std::string> out;
  for (int ix : ixs) out.push_back(m.index_name(ix));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> hist_names(const StitModel& m, const std::vector<int>& hs) {
  std::vector<std::string> out;
  for (int h : hs) out.push_back(m.history_name(h));
  std::sort(out.begin(), out.end());
  return out;
}

StitModel build_ok(const StitModelDesc& d) {
  std::vector<Violation> fatal;
  auto m = StitModel::build(d, fatal);
  for (const auto& v : fatal) UNSCOPED_INFO(v.condition + ": " + v.detail);
  REQUIRE(fatal.empty());
  REQUIRE(m.has_value());
  return std::move(*m);
}

bool fatal_mentions(const StitModelDesc& d, const std::string& needle) {
  std::vector<Violation> fatal;
  auto m = StitModel::build(d, fatal);
  if (m.has_value()) return false;
  for (const auto& v : fatal)
    if (v.detail.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("M1 builds with the declared structure") {
  StitModel m = build_ok(fixtures::m1());

  REQUIRE(m.agent_count() == 1);
  REQUIRE(m.agent("a") == 0);
  REQUIRE(m.moment_count() == 5);
  REQUIRE(m.history_count() == 4);
  REQUIRE(m.index_count() == 8);

  int m0 = m.moment("m0");
  REQUIRE(m.parent(m0) == -1);
  REQUIRE(m.children(m0).size() == 4);
  REQUIRE(hist_names(m, m.histories_at(m0)) ==
          std::vector<std::string>{"h1", "h2", "h3", "h4"});
  REQUIRE(histories_through(m, m0) == m.histories_at(m0));
  REQUIRE(names(m, m.indices_at(m0)) ==
          std::vector<std::string>{"m0:h1", "m0:h2", "m0:h3", "m0:h4"});

  REQUIRE(m.cells(0, m0).size() == 2);
  REQUIRE(hist_names(m, m.cell_histories(0, m0, m.history("h3"))) ==
          std::vector<std::string>{"h3", "h4"});

  int i1 = m.index_of(Index{"m0", "h1"});
  int i2 = m.index_of(Index{"m0", "h2"});
  int i3 = m.index_of(Index{"m0", "h3"});
  REQUIRE(i1 >= 0);
  REQUIRE(m.index_name(i1) == "m0:h1");
  REQUIRE(m.related(0, i1, i2));
  REQUIRE(m.related(0, i1, i1));
  REQUIRE_FALSE(m.related(0, i1, i3));
  REQUIRE(names(m, m.epi_class_members(0, m.epi_class(0, i1))) ==
          std::vector<std::string>{"m0:h1", "m0:h2"});

  // The information set of <m0,h1> is the full m0 slice, not just its class.
  REQUIRE(names(m, m.info_set(0, i1)) ==
          std::vector<std::string>{"m0:h1", "m0:h2", "m0:h3", "m0:h4"});

  const StitModel::Topology& t = m.topology_at(0, i1);
  REQUIRE(t.carrier == m.info_set(0, i1));
  REQUIRE(t.opens.size() == 2);
  REQUIRE(t.opens[0].empty());
  REQUIRE(t.opens[1] == t.carrier);
  REQUIRE(t.declared_at == std::vector<std::string>{"m0:h1"});
  REQUIRE(t.conflicts.empty());

  // Leaf indices have singleton information sets with the trivial topology.
  int leaf = m.index_of(Index{"h1", "h1"});
  REQUIRE(names(m, m.info_set(0, leaf)) == std::vector<std::string>{"h1:h1"});
  REQUIRE(m.topology_at(0, leaf).opens.size() == 2);

  REQUIRE(m.mode() == ValueMode::Single);
  REQUIRE(m.value_obj(m.history("h1")) == 1.0);
  REQUIRE(m.value_obj(m.history("h4")) == 0.0);
  for (int h = 0; h < m.history_count(); ++h) REQUIRE(m.value_subj(h) == m.value_obj(h));

  REQUIRE(m.prop_true_at("p", i1));
  REQUIRE_FALSE(m.prop_true_at("p", i3));
  REQUIRE(m.prop_true_at("q", i3));
  REQUIRE_FALSE(m.prop_true_at("r", i1));
}

TEST_CASE("M2 information sets span both decision moments") {
  StitModel m = build_ok(fixtures::m2());

  REQUIRE(m.moment_count() == 7);
  REQUIRE(m.history_count() == 4);
  REQUIRE(m.index_count() == 12);

  int g1m1 = m.index_of(Index{"m1", "g1"});
  int g4m2 = m.index_of(Index{"m2", "g4"});
  REQUIRE(names(m, m.epi_class_members(0, m.epi_class(0, g1m1))) ==
          std::vector<std::string>{"m1:g1", "m2:g3"});
  REQUIRE(names(m, m.info_set(0, g1m1)) ==
          std::vector<std::string>{"m1:g1", "m1:g2", "m2:g3", "m2:g4"});
  REQUIRE(m.info_set(0, g4m2) == m.info_set(0, g1m1));

  // The declared topology resolves for every index of the information set.
  const StitModel::Topology& t = m.topology_at(0, g4m2);
  REQUIRE(t.declared_at == std::vector<std::string>{"m1:g1"});
  REQUIRE(t.opens.size() == 3);
  REQUIRE(t.opens[0].empty());
  REQUIRE(t.opens[1] == t.carrier);
  REQUIRE(names(m, t.opens[2]) == std::vector<std::string>{"m1:g2", "m2:g4"});

  // The root chain relates all four root indices.
  int r1 = m.index_of(Index{"r", "g1"});
  REQUIRE(names(m, m.epi_class_members(0, m.epi_class(0, r1))) ==
          std::vector<std::string>{"r:g1", "r:g2", "r:g3", "r:g4"});
  REQUIRE(m.topology_at(0, r1).opens.size() == 2);

  // related_moments is moment-level: the class of <m1,g1> reaches m2.
  std::vector<int> rel = m.related_moments(0, m.moment("m1"));
  REQUIRE(std::count(rel.begin(), rel.end(), m.moment("m2")) == 1);
}

TEST_CASE("the fixture frames validate clean") {
  REQUIRE(validate_stit(fixtures::m1()).ok());
  REQUIRE(validate_stit(fixtures::m2()).ok());
  REQUIRE(validate_frame(build_ok(fixtures::m1())).ok());
  REQUIRE(validate_frame(build_ok(fixtures::m2())).ok());
}

TEST_CASE("parse_index splits at the first colon") {
  Index ix = parse_index("m0:h1");
  REQUIRE(ix.moment == "m0");
  REQUIRE(ix.history == "h1");
  REQUIRE(ix.str() == "m0:h1");
  REQUIRE_THROWS_AS(parse_index("m0h1"), Error);
  REQUIRE_THROWS_AS(parse_index(":h1"), Error);
  REQUIRE_THROWS_AS(parse_index("m0:"), Error);
}

TEST_CASE("ex_ante_info_set resolves names") {
  StitModel m = build_ok(fixtures::m2());
  std::vector<Index> got = ex_ante_info_set(m, "a", Index{"m1", "g1"});
  std::vector<std::string> s;
  for (const auto& ix : got) s.push_back(ix.str());
  std::sort(s.begin(), s.end());
  REQUIRE(s == std::vector<std::string>{"m1:g1", "m1:g2", "m2:g3", "m2:g4"});
}

TEST_CASE("to_desc round trips through build") {
  for (const StitModelDesc& d : {fixtures::m1(), fixtures::m2()}) {
    StitModel a = build_ok(d);
    StitModel b = build_ok(a.to_desc());
    REQUIRE(b.moment_count() == a.moment_count());
    REQUIRE(b.history_count() == a.history_count());
    REQUIRE(b.index_count() == a.index_count());
    REQUIRE(b.mode() == a.mode());
    for (int ix = 0; ix < a.index_count(); ++ix)
      REQUIRE(b.index_of(parse_index(a.index_name(ix))) >= 0);
    for (int ag = 0; ag < a.agent_count(); ++ag)
      for (int ix = 0; ix < a.index_count(); ++ix) {
        int bx = b.index_of(parse_index(a.index_name(ix)));
        REQUIRE(names(b, b.info_set(ag, bx)) == names(a, a.info_set(ag, ix)));
        for (int jx = 0; jx < a.index_count(); ++jx) {
          int by = b.index_of(parse_index(a.index_name(jx)));
          REQUIRE(b.related(ag, bx, by) == a.related(ag, ix, jx));
        }
        REQUIRE(b.topology_at(ag, bx).opens.size() == a.topology_at(ag, ix).opens.size());
      }
    for (int h = 0; h < a.history_count(); ++h) {
      int bh = b.history(a.history_name(h));
      REQUIRE(b.value_obj(bh) == a.value_obj(h));
      REQUIRE(b.value_subj(bh) == a.value_subj(h));
    }
    for (const auto& [prop, bits] : a.valuation())
      for (int ix = 0; ix < a.index_count(); ++ix)
        REQUIRE(b.prop_true_at(prop, b.index_of(parse_index(a.index_name(ix)))) ==
                (bits[ix] != 0));
    REQUIRE(validate_frame(b).ok() == validate_frame(a).ok());
  }
}

TEST_CASE("structural defects are fatal") {
  StitModelDesc d = fixtures::m1();
  d.agents.clear();
  REQUIRE(fatal_mentions(d, "no agents"));

  d = fixtures::m1();
  d.moments.push_back({"x", "nope"});
  REQUIRE(fatal_mentions(d, "unknown parent 'nope'"));

  d = fixtures::m1();
  d.moments.push_back({"r2", ""});
  REQUIRE(fatal_mentions(d, "two roots"));

  d = fixtures::m1();
  d.moments.push_back({"m0", "m0"});
  REQUIRE(fatal_mentions(d, "duplicate moment 'm0'"));

  d = fixtures::m1();
  d.choices[0].cells = {{"h1", "h2"}, {"h3", "h9"}};
  REQUIRE(fatal_mentions(d, "unknown history 'h9'"));

  d = fixtures::m1();
  d.choices[0].cells = {{"h1", "h2"}, {"h2", "h3", "h4"}};
  REQUIRE(fatal_mentions(d, "occurs in two cells"));

  d = fixtures::m1();
  d.choices[0].cells = {{"h1", "h2"}, {"h3"}};
  REQUIRE(fatal_mentions(d, "do not cover every history"));

  d = fixtures::m1();
  d.epistemic[0].pairs.push_back({Index{"m0", "h1"}, Index{"h1", "h2"}});
  REQUIRE(fatal_mentions(d, "does not pass through 'h1'"));

  d = fixtures::m1();
  d.value_objective.erase("h4");
  REQUIRE(fatal_mentions(d, "history 'h4' has no value"));

  d = fixtures::m1();
  d.value_subjective = {{"h1", 2}};
  REQUIRE(fatal_mentions(d, "single-valued model carries subjective values"));

  d = fixtures::m2();
  d.mode = ValueMode::Dual;
  d.value_subjective = {{"g1", 1}, {"g2", 1}, {"g3", 1}};
  REQUIRE(fatal_mentions(d, "history 'g4' has no subjective value"));

  d = fixtures::m1();
  d.valuation["2bad"] = {Index{"m0", "h1"}};
  REQUIRE(fatal_mentions(d, "bad proposition name '2bad'"));
}

TEST_CASE("broken frames are rejected with the right condition") {
  SECTION("NC") {
    ValidationReport rep = validate_stit(fixtures::m2_break_nc());
    REQUIRE_FALSE(rep.ok());
    REQUIRE(rep.fatal.empty());
    REQUIRE(rep.has("NC"));
    REQUIRE(rep.to_text().find("share later moment m1 but lie in different cells") !=
            std::string::npos);
    REQUIRE_FALSE(rep.has("IA"));
    REQUIRE_FALSE(rep.has("OAC"));
  }
  SECTION("IA") {
    ValidationReport rep = validate_stit(fixtures::m1_break_ia());
    REQUIRE(rep.has("IA"));
    REQUIRE(rep.to_text().find("a:{h1}, b:{h3,h4} has empty intersection") !=
            std::string::npos);
    REQUIRE(rep.violations.size() == 1);
  }
  SECTION("OAC") {
    ValidationReport rep = validate_stit(fixtures::m1_break_oac());
    REQUIRE(rep.has("OAC"));
    REQUIRE(rep.to_text().find("h3 and h4 share a cell at m0") != std::string::npos);
    REQUIRE_FALSE(rep.has("NC"));
    REQUIRE_FALSE(rep.has("Unif-H"));
  }
  SECTION("Unif-H") {
    ValidationReport rep = validate_stit(fixtures::m2_break_unifh());
    REQUIRE(rep.has("Unif-H"));
    REQUIRE(rep.to_text().find("history g2 through m1 has no related history at m2") !=
            std::string::npos);
    REQUIRE_FALSE(rep.has("OAC"));
    REQUIRE_FALSE(rep.has("CI"));
  }
  SECTION("CI") {
    ValidationReport rep = validate_stit(fixtures::m1_break_ci());
    REQUIRE(rep.has("CI"));
    REQUIRE(rep.to_text().find("{m0:h1,m0:h2} and {m0:h3,m0:h4} are disjoint") !=
            std::string::npos);
    REQUIRE_FALSE(rep.has("topology"));
  }
  SECTION("KI") {
    ValidationReport rep = validate_stit(fixtures::m1_break_ki());
    REQUIRE(rep.has("KI"));
    REQUIRE(rep.to_text().find("conflicting topology declarations (m0:h1 vs m0:h3)") !=
            std::string::npos);
    REQUIRE(rep.violations.size() == 1);
  }
  SECTION("topology") {
    ValidationReport rep = validate_stit(fixtures::m1_break_topology());
    REQUIRE(rep.has("topology"));
    REQUIRE(rep.to_text().find("union of {m0:h1,m0:h2} and {m0:h2,m0:h3} is missing") !=
            std::string::npos);
    REQUIRE_FALSE(rep.has("CI"));
    REQUIRE_FALSE(rep.has("KI"));
  }
}

TEST_CASE("ci_all_pairs and ci_minimal_opens agree") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 800; ++t) {
    std::vector<std::vector<int>> opens;
    int k = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < k; ++i) {
      std::vector<int> u;
      for (int x = 0; x < 6; ++x)
        if (rng() % 2) u.push_back(x);
      opens.push_back(u);
    }
    REQUIRE(ci_all_pairs(opens) == ci_minimal_opens(opens));
  }
}
