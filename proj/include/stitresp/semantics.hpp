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

#ifndef STITRESP_SEMANTICS_HPP
#define STITRESP_SEMANTICS_HPP

#include <limits>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "stitresp/formula.hpp"
#include "stitresp/model.hpp"
#include "stitresp/validate.hpp"

namespace stitresp {

// States for an agent at a moment: all intersections of one cell per *other*
// agent. With a single agent the empty intersection convention gives {H_m}.
// Duplicates are collapsed.
inline std::vector<std::vector<int>> states_for(const StitModel& m, int agent, int mo) {
  std::vector<int> others;
  for (int a = 0; a < m.agent_count(); ++a)
    if (a != agent) others.push_back(a);
  std::set<std::vector<int>> out;
  std::vector<int> pick(others.size(), 0);
  while (true) {
    std::vector<int> inter = m.histories_at(mo);
    for (std::size_t k = 0; k < others.size(); ++k)
      inter = detail::intersect_sorted(inter, m.cells(others[k], mo)[pick[k]]);
    out.insert(inter);
    std::size_t k = others.size();
    while (k > 0) {
      --k;
      if (++pick[k] < static_cast<int>(m.cells(others[k], mo).size())) break;
      pick[k] = 0;
      if (k == 0) return {out.begin(), out.end()};
    }
    if (others.empty()) return {out.begin(), out.end()};
  }
}

// The epistemic cluster of a history set L ⊆ H_home, viewed from `target`:
// histories h at target with some index ⟨home,h*⟩, h* ∈ L, related to
// ⟨target,h⟩.
inline std::vector<int> epistemic_cluster(const StitModel& m, int agent, int home,
                                          const std::vector<int>& cell, int target) {
  std::vector<int> sources;
  for (int h : cell) {
    int ix = m.index_of(home, h);
    if (ix < 0)
      throw Error("cluster source history '" + m.history_name(h) +
                  "' does not pass through moment '" + m.moment_name(home) + "'");
    sources.push_back(ix);
  }
  std::vector<int> out;
  for (int h : m.histories_at(target)) {
    int jx = m.index_of(target, h);
    for (int ix : sources)
      if (m.related(agent, ix, jx)) {
        out.push_back(h);
        break;
      }
  }
  return out;
}

namespace detail {

// X ≤ Y under the pointwise lifting: every value in X is at most every value
// in Y. Empty sides compare vacuously.
inline bool value_le(const StitModel& m, const std::vector<int>& x, const std::vector<int>& y,
                     bool subjective) {
  if (x.empty() || y.empty()) return true;
  double worst = -std::numeric_limits<double>::infinity();
  double best = std::numeric_limits<double>::infinity();
  for (int h : x) worst = std::max(worst, subjective ? m.value_subj(h) : m.value_obj(h));
  for (int h : y) best = std::min(best, subjective ? m.value_subj(h) : m.value_obj(h));
  return worst <= best;
}

}  // namespace detail

// Objective dominance at a moment: L ⪯ L' iff L∩S ≤ L'∩S for every state S.
inline bool obj_leq(const StitModel& m, const std::vector<std::vector<int>>& states,
                    const std::vector<int>& l1, const std::vector<int>& l2) {
  for (const auto& s : states)
    if (!detail::value_le(m, detail::intersect_sorted(l1, s), detail::intersect_sorted(l2, s),
                          false))
      return false;
  return true;
}

// Subjective dominance: quantifies over every epistemically related moment,
// comparing the clusters of the two cells against the states there.
inline bool subj_leq(const StitModel& m, int agent, int mo, const std::vector<int>& l1,
                     const std::vector<int>& l2) {
  for (int m2 : m.related_moments(agent, mo)) {
    auto c1 = epistemic_cluster(m, agent, mo, l1, m2);
    auto c2 = epistemic_cluster(m, agent, mo, l2, m2);
    for (const auto& s : states_for(m, agent, m2))
      if (!detail::value_le(m, detail::intersect_sorted(c1, s), detail::intersect_sorted(c2, s),
                            true))
        return false;
  }
  return true;
}

// Cells not strictly dominated under ⪯ (objective) at the moment.
inline std::vector<std::vector<int>> optimal(const StitModel& m, int agent, int mo) {
  const auto& cells = m.cells(agent, mo);
  auto states = states_for(m, agent, mo);
  std::vector<std::vector<int>> out;
  for (const auto& l : cells) {
    bool dominated = false;
    for (const auto& l2 : cells)
      if (obj_leq(m, states, l, l2) && !obj_leq(m, states, l2, l)) {
        dominated = true;
        break;
      }
    if (!dominated) out.push_back(l);
  }
  return out;
}

// Cells not strictly dominated under ⪯_s (subjective) at the moment.
inline std::vector<std::vector<int>> soptimal(const StitModel& m, int agent, int mo) {
  const auto& cells = m.cells(agent, mo);
  std::vector<std::vector<int>> out;
  for (const auto& l : cells) {
    bool dominated = false;
    for (const auto& l2 : cells)
      if (subj_leq(m, agent, mo, l, l2) && !subj_leq(m, agent, mo, l2, l)) {
        dominated = true;
        break;
      }
    if (!dominated) out.push_back(l);
  }
  return out;
}

// Evaluates formulas against a model by computing whole extensions bottom-up.
// Extensions, states and optimal sets are cached per Evaluator instance, so
// keep one instance around when checking many formulas on one model.
// Requires a model that passes validate_frame; on invalid models the clause
// definitions are applied literally but several metatheorems fail.
class Evaluator {
 public:
  explicit Evaluator(const StitModel& m) : m_(m) {}

  const StitModel& model() const { return m_; }

  bool eval(int ix, const FormulaPtr& f) { return extension(f)[ix] != 0; }
  bool eval(const Index& at, const FormulaPtr& f) { return eval(m_.index_of(at), f); }

  const std::vector<char>& extension(const FormulaPtr& f) {
    std::string key = print(f);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    std::vector<char> bits = compute(f);
    return memo_.emplace(std::move(key), std::move(bits)).first->second;
  }

  const std::vector<std::vector<int>>& optimal_cells(int agent, int mo) {
    auto key = std::make_pair(agent, mo);
    auto it = optimal_.find(key);
    if (it == optimal_.end()) it = optimal_.emplace(key, stitresp::optimal(m_, agent, mo)).first;
    return it->second;
  }

  const std::vector<std::vector<int>>& soptimal_cells(int agent, int mo) {
    auto key = std::make_pair(agent, mo);
    auto it = soptimal_.find(key);
    if (it == soptimal_.end())
      it = soptimal_.emplace(key, stitresp::soptimal(m_, agent, mo)).first;
    return it->second;
  }

 private:
  const StitModel& m_;
  std::unordered_map<std::string, std::vector<char>> memo_;
  std::map<std::pair<int, int>, std::vector<std::vector<int>>> optimal_, soptimal_;

  std::vector<char> compute(const FormulaPtr& f) {
    int ni = m_.index_count();
    std::vector<char> bits(ni, 0);
    switch (f->op) {
      case Op::Atom: {
        for (int ix = 0; ix < ni; ++ix) bits[ix] = m_.prop_true_at(f->name, ix);
        return bits;
      }
      case Op::Not: {
        const auto& sub = extension(f->a);
        for (int ix = 0; ix < ni; ++ix) bits[ix] = !sub[ix];
        return bits;
      }
      case Op::And: {
        const auto& l = extension(f->a);
        const auto& r = extension(f->b);
        for (int ix = 0; ix < ni; ++ix) bits[ix] = l[ix] && r[ix];
        return bits;
      }
      case Op::Box: {
        const auto& sub = extension(f->a);
        for (int mo = 0; mo < m_.moment_count(); ++mo) {
          bool all = true;
          for (int ix : m_.indices_at(mo)) all = all && sub[ix];
          if (all)
            for (int ix : m_.indices_at(mo)) bits[ix] = 1;
        }
        return bits;
      }
      case Op::Stit: {
        int a = m_.agent(f->name);
        const auto& sub = extension(f->a);
        for (int mo = 0; mo < m_.moment_count(); ++mo)
          for (const auto& cell : m_.cells(a, mo)) {
            bool all = true;
            for (int h : cell) all = all && sub[m_.index_of(mo, h)];
            if (all)
              for (int h : cell) bits[m_.index_of(mo, h)] = 1;
          }
        return bits;
      }
      case Op::Know: {
        int a = m_.agent(f->name);
        const auto& sub = extension(f->a);
        int ncls = 0;
        for (int ix = 0; ix < ni; ++ix) ncls = std::max(ncls, m_.epi_class(a, ix) + 1);
        for (int cls = 0; cls < ncls; ++cls) {
          const auto& members = m_.epi_class_members(a, cls);
          bool all = true;
          for (int ix : members) all = all && sub[ix];
          if (all)
            for (int ix : members) bits[ix] = 1;
        }
        return bits;
      }
      case Op::Intend: {
        int a = m_.agent(f->name);
        const auto& sub = extension(f->a);
        std::vector<char> per_info(m_.info_count(a), 0);
        for (int id = 0; id < m_.info_count(a); ++id) {
          for (const auto& open : m_.topology_of_info(a, id).opens) {
            if (open.empty()) continue;
            bool inside = true;
            for (int ix : open) inside = inside && sub[ix];
            if (inside) {
              per_info[id] = 1;
              break;
            }
          }
        }
        for (int ix = 0; ix < ni; ++ix) bits[ix] = per_info[m_.info_id(a, ix)];
        return bits;
      }
      case Op::OughtObj: {
        int a = m_.agent(f->name);
        const auto& sub = extension(f->a);
        for (int mo = 0; mo < m_.moment_count(); ++mo) {
          bool holds = true;
          for (const auto& l : optimal_cells(a, mo))
            for (int h : l) holds = holds && sub[m_.index_of(mo, h)];
          if (holds)
            for (int ix : m_.indices_at(mo)) bits[ix] = 1;
        }
        return bits;
      }
      case Op::OughtSubj: {
        int a = m_.agent(f->name);
        const auto& sub = extension(f->a);
        for (int mo = 0; mo < m_.moment_count(); ++mo) {
          bool holds = true;
          for (const auto& l : soptimal_cells(a, mo))
            for (int m2 : m_.related_moments(a, mo))
              for (int h : epistemic_cluster(m_, a, mo, l, m2))
                holds = holds && sub[m_.index_of(m2, h)];
          if (holds)
            for (int ix : m_.indices_at(mo)) bits[ix] = 1;
        }
        return bits;
      }
    }
    return bits;
  }
};

inline bool eval(const StitModel& m, const Index& at, const FormulaPtr& f) {
  Evaluator ev(m);
  return ev.eval(at, f);
}

inline std::vector<Index> extension_indices(const StitModel& m, const FormulaPtr& f) {
  Evaluator ev(m);
  const auto& bits = ev.extension(f);
  std::vector<Index> out;
  for (int ix = 0; ix < m.index_count(); ++ix)
    if (bits[ix])
      out.push_back(Index{m.moment_name(m.index_moment(ix)), m.history_name(m.index_history(ix))});
  return out;
}

}  // namespace stitresp

#endif  // STITRESP_SEMANTICS_HPP
