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

#ifndef STITRESP_TESTS_FIXTURES_HPP
#define STITRESP_TESTS_FIXTURES_HPP

#include "stitresp/kripke.hpp"
#include "stitresp/model.hpp"

namespace fixtures {

using stitresp::Index;
using stitresp::KripkeModelDesc;
using stitresp::StitModelDesc;
using stitresp::ValueMode;

// One moment that matters (m0) with four one-step histories h1..h4, one
// agent, two actions, knowledge exactly of the own action, trivial topology.
inline StitModelDesc m1() {
  StitModelDesc d;
  d.agents = {"a"};
  d.moments = {{"m0", ""}, {"h1", "m0"}, {"h2", "m0"}, {"h3", "m0"}, {"h4", "m0"}};
  d.choices = {{"a", "m0", {{"h1", "h2"}, {"h3", "h4"}}}};
  d.epistemic = {{"a",
                  {{Index{"m0", "h1"}, Index{"m0", "h2"}},
                   {Index{"m0", "h3"}, Index{"m0", "h4"}}}}};
  d.topologies = {{"a",
                   Index{"m0", "h1"},
                   {{},
                    {Index{"m0", "h1"}, Index{"m0", "h2"}, Index{"m0", "h3"},
                     Index{"m0", "h4"}}}}};
  d.value_objective = {{"h1", 1}, {"h2", 1}, {"h3", 0}, {"h4", 0}};
  d.valuation = {{"p", {Index{"m0", "h1"}, Index{"m0", "h2"}}}, {"q", {Index{"m0", "h3"}}}};
  return d;
}

// Two sibling decision moments whose actions the agent cannot tell apart;
// the cross-moment epistemic links make objective and subjective verdicts
// come apart, and the extra open U supports a present-directed intention.
inline StitModelDesc m2() {
  StitModelDesc d;
  d.agents = {"a"};
  d.moments = {{"r", ""},    {"m1", "r"},  {"m2", "r"},  {"g1", "m1"},
               {"g2", "m1"}, {"g3", "m2"}, {"g4", "m2"}};
  d.choices = {{"a", "m1", {{"g1"}, {"g2"}}}, {"a", "m2", {{"g3"}, {"g4"}}}};
  d.epistemic = {{"a",
                  {{Index{"m1", "g1"}, Index{"m2", "g3"}},
                   {Index{"m1", "g2"}, Index{"m2", "g4"}},
                   {Index{"r", "g1"}, Index{"r", "g2"}},
                   {Index{"r", "g2"}, Index{"r", "g3"}},
                   {Index{"r", "g3"}, Index{"r", "g4"}}}}};
  d.topologies = {{"a",
                   Index{"m1", "g1"},
                   {{},
                    {Index{"m1", "g1"}, Index{"m1", "g2"}, Index{"m2", "g3"},
                     Index{"m2", "g4"}},
                    {Index{"m1", "g2"}, Index{"m2", "g4"}}}}};
  d.value_objective = {{"g1", 0}, {"g2", 3}, {"g3", 2}, {"g4", 1}};
  d.valuation = {{"p", {Index{"m1", "g2"}, Index{"m2", "g4"}}}};
  return d;
}

// Two worlds in one historical-necessity class, bi-valued so that the
// objectively best and subjectively best actions disagree.
inline KripkeModelDesc k1() {
  KripkeModelDesc d;
  d.mode = ValueMode::Dual;
  d.agents = {"a"};
  d.worlds = {"w1", "w2"};
  d.classes = {{"w1", "w2"}};
  d.choices = {{"a", "w1", {{"w1"}, {"w2"}}}};
  d.intention = {{"a", {{"w1", "w2"}, {"w2", "w2"}}}};
  d.value_objective = {{"w1", 0}, {"w2", 1}};
  d.value_subjective = {{"w1", 1}, {"w2", 0}};
  d.valuation = {{"p", {"w2"}}};
  return d;
}

// M2 recast relationally: the two decision moments become historical-necessity
// classes, the cross-moment epistemic pairs become ≈, and the intention
// relation points every world at {g2,g4} so the derived opens share M2's
// minimal non-empty open.
inline KripkeModelDesc k_m2() {
  KripkeModelDesc d;
  d.agents = {"a"};
  d.worlds = {"g1", "g2", "g3", "g4"};
  d.classes = {{"g1", "g2"}, {"g3", "g4"}};
  d.choices = {{"a", "g1", {{"g1"}, {"g2"}}}, {"a", "g3", {{"g3"}, {"g4"}}}};
  d.epistemic = {{"a", {{"g1", "g3"}, {"g2", "g4"}}}};
  d.intention = {{"a",
                  {{"g1", "g2"},
                   {"g1", "g4"},
                   {"g2", "g2"},
                   {"g2", "g4"},
                   {"g3", "g2"},
                   {"g3", "g4"},
                   {"g4", "g2"},
                   {"g4", "g4"}}}};
  d.value_objective = {{"g1", 0}, {"g2", 3}, {"g3", 2}, {"g4", 1}};
  d.valuation = {{"p", {"g2", "g4"}}};
  return d;
}

// ---- hand-broken variants, one frame condition each ------------------------

// Histories g1, g2 share the later moment m1 but sit in different root cells.
inline StitModelDesc m2_break_nc() {
  StitModelDesc d = m2();
  d.choices.push_back({"a", "r", {{"g1"}, {"g2", "g3", "g4"}}});
  return d;
}

// A second agent whose cells cross the first agent's: the selection
// ({h1}, {h3,h4}) has empty intersection.
inline StitModelDesc m1_break_ia() {
  StitModelDesc d = m1();
  d.agents = {"a", "b"};
  d.choices = {{"a", "m0", {{"h1"}, {"h2", "h3", "h4"}}},
               {"b", "m0", {{"h1", "h2"}, {"h3", "h4"}}}};
  d.epistemic = {{"a",
                  {{Index{"m0", "h2"}, Index{"m0", "h3"}},
                   {Index{"m0", "h3"}, Index{"m0", "h4"}}}},
                 {"b",
                  {{Index{"m0", "h1"}, Index{"m0", "h2"}},
                   {Index{"m0", "h3"}, Index{"m0", "h4"}}}}};
  d.topologies.clear();
  return d;
}

// Cell mates h3, h4 are no longer epistemically related.
inline StitModelDesc m1_break_oac() {
  StitModelDesc d = m1();
  d.epistemic = {{"a", {{Index{"m0", "h1"}, Index{"m0", "h2"}}}}};
  return d;
}

// The class of <m1,g1> reaches m2, but g2 at m1 loses its partner there.
inline StitModelDesc m2_break_unifh() {
  StitModelDesc d = m2();
  auto& pairs = d.epistemic[0].pairs;
  pairs.erase(pairs.begin() + 1);  // <m1,g2> ~ <m2,g4>
  return d;
}

// Two disjoint non-empty opens.
inline StitModelDesc m1_break_ci() {
  StitModelDesc d = m1();
  d.topologies = {{"a",
                   Index{"m0", "h1"},
                   {{},
                    {Index{"m0", "h1"}, Index{"m0", "h2"}},
                    {Index{"m0", "h3"}, Index{"m0", "h4"}},
                    {Index{"m0", "h1"}, Index{"m0", "h2"}, Index{"m0", "h3"},
                     Index{"m0", "h4"}}}}};
  return d;
}

// Two declarations disagree about the topology of the m0 information set.
inline StitModelDesc m1_break_ki() {
  StitModelDesc d = m1();
  d.topologies.push_back({"a",
                          Index{"m0", "h3"},
                          {{},
                           {Index{"m0", "h1"}, Index{"m0", "h2"}},
                           {Index{"m0", "h1"}, Index{"m0", "h2"}, Index{"m0", "h3"},
                            Index{"m0", "h4"}}}});
  return d;
}

// The union of the two proper opens is missing.
inline StitModelDesc m1_break_topology() {
  StitModelDesc d = m1();
  d.topologies = {{"a",
                   Index{"m0", "h1"},
                   {{},
                    {Index{"m0", "h1"}, Index{"m0", "h2"}},
                    {Index{"m0", "h2"}, Index{"m0", "h3"}},
                    {Index{"m0", "h1"}, Index{"m0", "h2"}, Index{"m0", "h3"},
                     Index{"m0", "h4"}}}}};
  return d;
}

// Two agents with identical singleton partitions: choosing w1 and w2 at once
// is unrealizable.
inline KripkeModelDesc k_break_ia() {
  KripkeModelDesc d;
  d.agents = {"a", "b"};
  d.worlds = {"w1", "w2"};
  d.classes = {{"w1", "w2"}};
  d.choices = {{"a", "w1", {{"w1"}, {"w2"}}}, {"b", "w1", {{"w1"}, {"w2"}}}};
  d.intention = {{"a", {{"w1", "w1"}, {"w2", "w1"}}}, {"b", {{"w1", "w1"}, {"w2", "w1"}}}};
  d.value_objective = {{"w1", 0}, {"w2", 1}};
  d.valuation = {{"p", {"w2"}}};
  return d;
}

// One joint cell whose members the agent cannot tell apart.
inline KripkeModelDesc k_break_oac() {
  KripkeModelDesc d;
  d.agents = {"a"};
  d.worlds = {"w1", "w2"};
  d.classes = {{"w1", "w2"}};
  d.choices = {{"a", "w1", {{"w1", "w2"}}}};
  d.intention = {{"a", {{"w1", "w1"}, {"w2", "w1"}}}};
  d.value_objective = {{"w1", 0}, {"w2", 1}};
  d.valuation = {{"p", {"w2"}}};
  return d;
}

// w1 ~ w3 links the two classes, but w2 has no partner in the second.
inline KripkeModelDesc k_break_unifh() {
  KripkeModelDesc d;
  d.agents = {"a"};
  d.worlds = {"w1", "w2", "w3"};
  d.classes = {{"w1", "w2"}, {"w3"}};
  d.choices = {{"a", "w1", {{"w1"}, {"w2"}}}};
  d.epistemic = {{"a", {{"w1", "w3"}}}};
  d.intention = {{"a", {{"w1", "w1"}, {"w2", "w1"}, {"w3", "w1"}}}};
  d.value_objective = {{"w1", 0}, {"w2", 1}, {"w3", 2}};
  d.valuation = {{"p", {"w2"}}};
  return d;
}

// Identity intentions: w1 and w2 share an information set but no target.
inline KripkeModelDesc k1_break_den() {
  KripkeModelDesc d = k1();
  d.intention = {{"a", {{"w1", "w1"}, {"w2", "w2"}}}};
  return d;
}

inline KripkeModelDesc k1_break_serial() {
  KripkeModelDesc d = k1();
  d.intention = {{"a", {{"w1", "w2"}}}};
  return d;
}

inline KripkeModelDesc k1_break_transitive() {
  KripkeModelDesc d = k1();
  d.intention = {{"a", {{"w1", "w2"}, {"w2", "w1"}}}};
  return d;
}

inline KripkeModelDesc k1_break_euclidean() {
  KripkeModelDesc d = k1();
  d.intention = {{"a", {{"w1", "w1"}, {"w1", "w2"}, {"w2", "w2"}}}};
  return d;
}

// The intention arrow leaves the ex ante information set of w1.
inline KripkeModelDesc k_break_scope() {
  KripkeModelDesc d;
  d.agents = {"a"};
  d.worlds = {"w1", "w2"};
  d.classes = {{"w1"}, {"w2"}};
  d.intention = {{"a", {{"w1", "w2"}, {"w2", "w2"}}}};
  d.value_objective = {{"w1", 0}, {"w2", 1}};
  d.valuation = {{"p", {"w2"}}};
  return d;
}

}  // namespace fixtures

#endif  // STITRESP_TESTS_FIXTURES_HPP
