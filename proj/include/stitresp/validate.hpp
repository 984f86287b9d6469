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

#ifndef STITRESP_VALIDATE_HPP
#define STITRESP_VALIDATE_HPP

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "stitresp/model.hpp"

namespace stitresp {

namespace detail {

inline std::vector<int> intersect_sorted(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline std::vector<int> union_sorted(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline std::string history_set_str(const StitModel& m, const std::vector<int>& hs) {
  std::string s = "{";
  for (std::size_t i = 0; i < hs.size(); ++i)
    s += (i ? "," : "") + m.history_name(hs[i]);
  return s + "}";
}

inline std::string index_set_str(const StitModel& m, const std::vector<int>& ixs) {
  std::string s = "{";
  for (std::size_t i = 0; i < ixs.size(); ++i)
    s += (i ? "," : "") + m.index_name(ixs[i]);
  return s + "}";
}

}  // namespace detail

// (CI) as literally stated: any two non-empty opens intersect.
inline bool ci_all_pairs(const std::vector<std::vector<int>>& opens) {
  for (std::size_t i = 0; i < opens.size(); ++i)
    for (std::size_t j = i + 1; j < opens.size(); ++j) {
      if (opens[i].empty() || opens[j].empty()) continue;
      if (detail::intersect_sorted(opens[i], opens[j]).empty()) return false;
    }
  return true;
}

// (CI) restricted to inclusion-minimal non-empty opens; equivalent to the
// all-pairs check because every non-empty open contains a minimal one.
inline bool ci_minimal_opens(const std::vector<std::vector<int>>& opens) {
  std::vector<const std::vector<int>*> minimal;
  for (const auto& u : opens) {
    if (u.empty()) continue;
    bool is_min = true;
    for (const auto& v : opens) {
      if (v.empty() || &v == &u) continue;
      if (v != u && std::includes(u.begin(), u.end(), v.begin(), v.end())) {
        is_min = false;
        break;
      }
    }
    if (is_min) minimal.push_back(&u);
  }
  for (std::size_t i = 0; i < minimal.size(); ++i)
    for (std::size_t j = i + 1; j < minimal.size(); ++j)
      if (detail::intersect_sorted(*minimal[i], *minimal[j]).empty()) return false;
  return true;
}

// Checks the frame conditions on a structurally sound model: (NC) no choice
// between undivided histories, (IA) independence of agents, (OAC) own-action
// knowledge, (Unif-H) uniformity of historical possibility, the topology
// axioms, (CI) compatibility of intentions and (KI) knowledge of intentions.
inline ValidationReport validate_frame(const StitModel& m) {
  ValidationReport rep;
  auto hit = [&](const char* cond, std::string detail) {
    rep.violations.push_back({cond, std::move(detail)});
  };

  std::vector<int> depth(m.moment_count(), 0);
  for (int mo = 0; mo < m.moment_count(); ++mo)
    for (int cur = mo; m.parent(cur) >= 0; cur = m.parent(cur)) ++depth[mo];

  // (NC): histories that are still undivided at m (they share a moment
  // strictly after m, i.e. pass through the same child) must share cells.
  for (int mo = 0; mo < m.moment_count(); ++mo) {
    if (m.children(mo).empty()) continue;
    std::map<int, std::vector<int>> by_child;
    for (int h : m.histories_at(mo)) by_child[m.path(h)[depth[mo] + 1]].push_back(h);
    for (int a = 0; a < m.agent_count(); ++a)
      for (const auto& [child, hs] : by_child)
        for (std::size_t k = 1; k < hs.size(); ++k)
          if (m.cell_of(a, mo, hs[k]) != m.cell_of(a, mo, hs[0])) {
            hit("NC", "agent " + m.agent_name(a) + ", moment " + m.moment_name(mo) +
                          ": histories " + m.history_name(hs[0]) + " and " +
                          m.history_name(hs[k]) + " share later moment " +
                          m.moment_name(child) + " but lie in different cells");
            break;
          }
  }

  // (IA): every selection of one cell per agent has non-empty intersection.
  for (int mo = 0; mo < m.moment_count(); ++mo) {
    std::vector<int> pick(m.agent_count(), 0);
    bool done = false;
    while (!done) {
      std::vector<int> inter = m.histories_at(mo);
      for (int a = 0; a < m.agent_count(); ++a)
        inter = detail::intersect_sorted(inter, m.cells(a, mo)[pick[a]]);
      if (inter.empty()) {
        std::string sel;
        for (int a = 0; a < m.agent_count(); ++a)
          sel += (a ? ", " : "") + m.agent_name(a) + ":" +
                 detail::history_set_str(m, m.cells(a, mo)[pick[a]]);
        hit("IA", "moment " + m.moment_name(mo) + ": selection " + sel +
                      " has empty intersection");
      }
      done = true;
      for (int a = m.agent_count() - 1; a >= 0; --a) {
        if (++pick[a] < static_cast<int>(m.cells(a, mo).size())) {
          done = false;
          break;
        }
        pick[a] = 0;
      }
    }
  }

  // (OAC): indices in one cell slice are epistemically related. For an
  // equivalence relation this is exactly the own-action condition.
  for (int a = 0; a < m.agent_count(); ++a)
    for (int mo = 0; mo < m.moment_count(); ++mo)
      for (const auto& cell : m.cells(a, mo))
        for (std::size_t k = 1; k < cell.size(); ++k)
          if (!m.related(a, m.index_of(mo, cell[0]), m.index_of(mo, cell[k])))
            hit("OAC", "agent " + m.agent_name(a) + ": histories " +
                           m.history_name(cell[0]) + " and " + m.history_name(cell[k]) +
                           " share a cell at " + m.moment_name(mo) + " but " +
                           m.moment_name(mo) + ":" + m.history_name(cell[0]) + " and " +
                           m.moment_name(mo) + ":" + m.history_name(cell[k]) +
                           " are not related");

  // (Unif-H): if some index at m is related to some index at m', every
  // history through m has a related partner at m'. Deduplicated per epistemic
  // class and ordered moment pair.
  for (int a = 0; a < m.agent_count(); ++a) {
    std::set<std::pair<int, int>> seen;
    int ncls = 0;
    for (int ix = 0; ix < m.index_count(); ++ix) ncls = std::max(ncls, m.epi_class(a, ix) + 1);
    for (int cls = 0; cls < ncls; ++cls) {
      std::set<int> moments;
      for (int ix : m.epi_class_members(a, cls)) moments.insert(m.index_moment(ix));
      for (int mi : moments)
        for (int mj : moments) {
          if (!seen.insert({mi, mj}).second) continue;
          for (int h : m.histories_at(mi)) {
            bool found = false;
            for (int h2 : m.histories_at(mj))
              if (m.related(a, m.index_of(mi, h), m.index_of(mj, h2))) {
                found = true;
                break;
              }
            if (!found)
              hit("Unif-H", "agent " + m.agent_name(a) + ": " + m.moment_name(mi) +
                                " and " + m.moment_name(mj) +
                                " carry related indices but history " + m.history_name(h) +
                                " through " + m.moment_name(mi) +
                                " has no related history at " + m.moment_name(mj));
          }
        }
    }
  }

  // Topology axioms, (CI) and (KI), per information set.
  for (int a = 0; a < m.agent_count(); ++a)
    for (int id = 0; id < m.info_count(a); ++id) {
      const auto& topo = m.topology_of_info(a, id);
      std::string where =
          "agent " + m.agent_name(a) + ", information set " + detail::index_set_str(m, topo.carrier);
      std::set<std::vector<int>> opens(topo.opens.begin(), topo.opens.end());
      for (const auto& u : topo.opens)
        if (!std::includes(topo.carrier.begin(), topo.carrier.end(), u.begin(), u.end()))
          hit("topology", where + ": open " + detail::index_set_str(m, u) +
                              " is not contained in the information set");
      if (!opens.count({})) hit("topology", where + ": opens do not contain the empty set");
      if (!opens.count(topo.carrier))
        hit("topology", where + ": opens do not contain the information set itself");
      for (const auto& u : topo.opens)
        for (const auto& v : topo.opens) {
          if (&v < &u) continue;
          if (!opens.count(detail::union_sorted(u, v)))
            hit("topology", where + ": union of " + detail::index_set_str(m, u) + " and " +
                                detail::index_set_str(m, v) + " is missing");
          if (!opens.count(detail::intersect_sorted(u, v)))
            hit("topology", where + ": intersection of " + detail::index_set_str(m, u) +
                                " and " + detail::index_set_str(m, v) + " is missing");
        }
      for (std::size_t i = 0; i < topo.opens.size(); ++i)
        for (std::size_t j = i + 1; j < topo.opens.size(); ++j) {
          const auto& u = topo.opens[i];
          const auto& v = topo.opens[j];
          if (u.empty() || v.empty()) continue;
          if (detail::intersect_sorted(u, v).empty())
            hit("CI", where + ": non-empty opens " + detail::index_set_str(m, u) + " and " +
                          detail::index_set_str(m, v) + " are disjoint");
        }
      if (!topo.conflicts.empty()) {
        std::string anchors = topo.declared_at.empty() ? "" : topo.declared_at.front();
        for (const auto& c : topo.conflicts) anchors += " vs " + c;
        hit("KI", where + ": conflicting topology declarations (" + anchors + ")");
      }
    }

  return rep;
}

// Convenience: build + frame conditions in one step.
inline ValidationReport validate_stit(const StitModelDesc& desc) {
  ValidationReport rep;
  auto model = StitModel::build(desc, rep.fatal);
  if (!model) return rep;
  ValidationReport frame = validate_frame(*model);
  rep.violations = std::move(frame.violations);
  return rep;
}

}  // namespace stitresp

#endif  // STITRESP_VALIDATE_HPP
