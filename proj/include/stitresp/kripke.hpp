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

#ifndef STITRESP_KRIPKE_HPP
#define STITRESP_KRIPKE_HPP

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "stitresp/formula.hpp"
#include "stitresp/model.hpp"
#include "stitresp/semantics.hpp"
#include "stitresp/validate.hpp"

namespace stitresp {

// ---------------------------------------------------------------------------
// Relational presentation of the same semantics: worlds partitioned into
// historical-necessity classes, choice partitions per class, an epistemic
// equivalence, and a serial/transitive/euclidean intention relation whose
// reflexive-closure up-sets generate the intention topology.
// ---------------------------------------------------------------------------

struct KripkeChoiceDesc {
  std::string agent;
  std::string cls;  // any world of the class
  std::vector<std::vector<std::string>> cells;
};

struct KripkeEpistemicDesc {
  std::string agent;
  std::vector<std::pair<std::string, std::string>> pairs;  // closed to an equivalence
};

struct KripkeIntentionDesc {
  std::string agent;
  std::vector<std::pair<std::string, std::string>> pairs;  // taken literally, directed
};

struct KripkeModelDesc {
  ValueMode mode = ValueMode::Single;
  std::vector<std::string> agents;
  std::vector<std::string> worlds;
  std::vector<std::vector<std::string>> classes;  // partition of the worlds
  std::vector<KripkeChoiceDesc> choices;
  std::vector<KripkeEpistemicDesc> epistemic;
  std::vector<KripkeIntentionDesc> intention;
  std::map<std::string, double> value_objective;
  std::map<std::string, double> value_subjective;
  std::map<std::string, std::vector<std::string>> valuation;  // prop -> worlds
};

class KripkeModel {
 public:
  static std::optional<KripkeModel> build(const KripkeModelDesc& desc,
                                          std::vector<Violation>& fatal);

  int agent_count() const { return static_cast<int>(agents_.size()); }
  const std::string& agent_name(int a) const { return agents_[a]; }
  int agent(const std::string& name) const {
    for (int a = 0; a < agent_count(); ++a)
      if (agents_[a] == name) return a;
    throw Error("unknown agent '" + name + "'");
  }
  bool has_agent(const std::string& name) const {
    return std::find(agents_.begin(), agents_.end(), name) != agents_.end();
  }

  int world_count() const { return static_cast<int>(worlds_.size()); }
  const std::string& world_name(int w) const { return worlds_[w]; }
  int world(const std::string& name) const {
    auto it = world_lookup_.find(name);
    if (it == world_lookup_.end()) throw Error("unknown world '" + name + "'");
    return it->second;
  }

  int class_count() const { return static_cast<int>(class_members_.size()); }
  int class_of(int w) const { return class_of_[w]; }
  const std::vector<int>& class_members(int c) const { return class_members_[c]; }

  const std::vector<std::vector<int>>& cells(int agent, int c) const { return cells_[agent][c]; }
  int cell_of(int agent, int c, int w) const { return cell_of_[agent][c].at(w); }

  bool related(int agent, int v, int w) const {
    return epi_class_[agent][v] == epi_class_[agent][w];
  }
  int epi_class(int agent, int w) const { return epi_class_[agent][w]; }
  int epi_class_count(int agent) const { return static_cast<int>(epi_members_[agent].size()); }
  const std::vector<int>& epi_class_members(int agent, int cls) const {
    return epi_members_[agent][cls];
  }

  bool intends(int agent, int v, int w) const { return intent_[agent][v][w] != 0; }
  const std::vector<int>& intent_successors(int agent, int w) const {
    return intent_succ_[agent][w];
  }
  // w-up-set under the reflexive closure of the intention relation.
  std::vector<int> up_set(int agent, int w) const {
    std::vector<int> out = intent_succ_[agent][w];
    if (!std::binary_search(out.begin(), out.end(), w)) {
      out.push_back(w);
      std::sort(out.begin(), out.end());
    }
    return out;
  }

  // The ex ante information set of w: first ≈, then saturate by classes.
  const std::vector<int>& pi(int agent, int w) const { return pi_[agent][w]; }
  // Classes d carrying an index epistemically related to class c.
  const std::vector<int>& related_classes(int agent, int c) const {
    return related_classes_[agent][c];
  }

  ValueMode mode() const { return mode_; }
  double value_obj(int w) const { return value_obj_[w]; }
  double value_subj(int w) const { return value_subj_[w]; }

  bool prop_true_at(const std::string& prop, int w) const {
    auto it = valuation_.find(prop);
    return it != valuation_.end() && it->second[w];
  }
  const std::map<std::string, std::vector<char>>& valuation() const { return valuation_; }

 private:
  std::vector<std::string> agents_;
  std::vector<std::string> worlds_;
  std::map<std::string, int> world_lookup_;
  std::vector<int> class_of_;
  std::vector<std::vector<int>> class_members_;
  std::vector<std::vector<std::vector<std::vector<int>>>> cells_;  // [agent][class]
  std::vector<std::vector<std::map<int, int>>> cell_of_;
  std::vector<std::vector<int>> epi_class_;                 // [agent][world]
  std::vector<std::vector<std::vector<int>>> epi_members_;  // [agent][class]
  std::vector<std::vector<std::vector<char>>> intent_;      // [agent][v][w]
  std::vector<std::vector<std::vector<int>>> intent_succ_;  // [agent][v] sorted
  std::vector<std::vector<std::vector<int>>> pi_;           // [agent][world] sorted
  std::vector<std::vector<std::vector<int>>> related_classes_;
  ValueMode mode_ = ValueMode::Single;
  std::vector<double> value_obj_, value_subj_;
  std::map<std::string, std::vector<char>> valuation_;
};

inline std::optional<KripkeModel> KripkeModel::build(const KripkeModelDesc& desc,
                                                     std::vector<Violation>& fatal) {
  KripkeModel m;
  auto bad = [&](std::string s) { fatal.push_back({"structure", std::move(s)}); };
  std::size_t fatal_before = fatal.size();

  if (desc.agents.empty()) bad("model declares no agents");
  for (const auto& a : desc.agents) {
    if (!detail::valid_symbol(a)) bad("agent name '" + a + "' is not a plain identifier");
    if (std::count(desc.agents.begin(), desc.agents.end(), a) > 1)
      bad("duplicate agent '" + a + "'");
  }
  m.agents_ = detail::sorted_unique(desc.agents);

  for (const auto& w : desc.worlds) {
    if (!detail::valid_name(w)) {
      bad("bad world id '" + w + "'");
      continue;
    }
    if (m.world_lookup_.count(w)) {
      bad("duplicate world '" + w + "'");
      continue;
    }
    m.world_lookup_[w] = static_cast<int>(m.worlds_.size());
    m.worlds_.push_back(w);
  }
  if (m.worlds_.empty()) bad("model has no worlds");
  if (fatal.size() > fatal_before) return std::nullopt;
  int nw = m.world_count();

  m.class_of_.assign(nw, -1);
  for (const auto& cls : desc.classes) {
    std::vector<int> members;
    for (const auto& wid : cls) {
      auto it = m.world_lookup_.find(wid);
      if (it == m.world_lookup_.end()) {
        bad("class names unknown world '" + wid + "'");
        continue;
      }
      if (m.class_of_[it->second] >= 0) {
        bad("world '" + wid + "' occurs in two classes");
        continue;
      }
      m.class_of_[it->second] = static_cast<int>(m.class_members_.size());
      members.push_back(it->second);
    }
    if (members.empty()) {
      bad("empty class");
      continue;
    }
    std::sort(members.begin(), members.end());
    m.class_members_.push_back(std::move(members));
  }
  for (int w = 0; w < nw; ++w)
    if (m.class_of_[w] < 0) bad("world '" + m.worlds_[w] + "' belongs to no class");
  if (fatal.size() > fatal_before) return std::nullopt;
  int nc = m.class_count();
  int na = m.agent_count();

  m.cells_.assign(na, std::vector<std::vector<std::vector<int>>>(nc));
  m.cell_of_.assign(na, std::vector<std::map<int, int>>(nc));
  std::set<std::pair<int, int>> declared;
  for (const auto& c : desc.choices) {
    if (!m.has_agent(c.agent)) {
      bad("choice entry for unknown agent '" + c.agent + "'");
      continue;
    }
    auto it = m.world_lookup_.find(c.cls);
    if (it == m.world_lookup_.end()) {
      bad("choice entry anchored at unknown world '" + c.cls + "'");
      continue;
    }
    int a = m.agent(c.agent);
    int cl = m.class_of_[it->second];
    if (!declared.insert({a, cl}).second) {
      bad("duplicate choice entry for agent '" + c.agent + "' in the class of '" + c.cls + "'");
      continue;
    }
    std::set<int> covered;
    for (const auto& cell : c.cells) {
      std::vector<int> ws;
      for (const auto& wid : cell) {
        auto wit = m.world_lookup_.find(wid);
        if (wit == m.world_lookup_.end()) {
          bad("choice cell names unknown world '" + wid + "'");
          continue;
        }
        if (m.class_of_[wit->second] != cl) {
          bad("choice cell mixes classes: world '" + wid + "' is outside the class of '" +
              c.cls + "'");
          continue;
        }
        if (!covered.insert(wit->second).second) {
          bad("world '" + wid + "' occurs in two cells of one partition");
          continue;
        }
        ws.push_back(wit->second);
      }
      if (ws.empty()) {
        bad("empty choice cell for agent '" + c.agent + "'");
        continue;
      }
      std::sort(ws.begin(), ws.end());
      int cell_id = static_cast<int>(m.cells_[a][cl].size());
      for (int w : ws) m.cell_of_[a][cl][w] = cell_id;
      m.cells_[a][cl].push_back(std::move(ws));
    }
    if (covered.size() != m.class_members_[cl].size())
      bad("choice cells for agent '" + c.agent + "' do not cover the class of '" + c.cls + "'");
  }
  for (int a = 0; a < na; ++a)
    for (int cl = 0; cl < nc; ++cl)
      if (m.cells_[a][cl].empty()) {
        m.cells_[a][cl].push_back(m.class_members_[cl]);
        for (int w : m.class_members_[cl]) m.cell_of_[a][cl][w] = 0;
      }
  if (fatal.size() > fatal_before) return std::nullopt;

  // Epistemic equivalence per agent.
  std::vector<detail::UnionFind> uf(na, detail::UnionFind(nw));
  for (const auto& e : desc.epistemic) {
    if (!m.has_agent(e.agent)) {
      bad("epistemic entry for unknown agent '" + e.agent + "'");
      continue;
    }
    int a = m.agent(e.agent);
    for (const auto& pr : e.pairs) {
      auto i = m.world_lookup_.find(pr.first);
      auto j = m.world_lookup_.find(pr.second);
      if (i == m.world_lookup_.end()) bad("epistemic pair names unknown world '" + pr.first + "'");
      if (j == m.world_lookup_.end())
        bad("epistemic pair names unknown world '" + pr.second + "'");
      if (i != m.world_lookup_.end() && j != m.world_lookup_.end())
        uf[a].unite(i->second, j->second);
    }
  }
  if (fatal.size() > fatal_before) return std::nullopt;
  m.epi_class_.assign(na, std::vector<int>(nw, -1));
  m.epi_members_.assign(na, {});
  for (int a = 0; a < na; ++a) {
    std::map<int, int> renum;
    for (int w = 0; w < nw; ++w) {
      int r = uf[a].find(w);
      auto it = renum.find(r);
      int cls;
      if (it == renum.end()) {
        cls = static_cast<int>(m.epi_members_[a].size());
        renum[r] = cls;
        m.epi_members_[a].push_back({});
      } else {
        cls = it->second;
      }
      m.epi_class_[a][w] = cls;
      m.epi_members_[a][cls].push_back(w);
    }
  }

  // Intention relation, exactly as given.
  m.intent_.assign(na, std::vector<std::vector<char>>(nw, std::vector<char>(nw, 0)));
  m.intent_succ_.assign(na, std::vector<std::vector<int>>(nw));
  for (const auto& e : desc.intention) {
    if (!m.has_agent(e.agent)) {
      bad("intention entry for unknown agent '" + e.agent + "'");
      continue;
    }
    int a = m.agent(e.agent);
    for (const auto& pr : e.pairs) {
      auto i = m.world_lookup_.find(pr.first);
      auto j = m.world_lookup_.find(pr.second);
      if (i == m.world_lookup_.end()) bad("intention pair names unknown world '" + pr.first + "'");
      if (j == m.world_lookup_.end())
        bad("intention pair names unknown world '" + pr.second + "'");
      if (i != m.world_lookup_.end() && j != m.world_lookup_.end())
        m.intent_[a][i->second][j->second] = 1;
    }
  }
  if (fatal.size() > fatal_before) return std::nullopt;
  for (int a = 0; a < na; ++a)
    for (int v = 0; v < nw; ++v)
      for (int w = 0; w < nw; ++w)
        if (m.intent_[a][v][w]) m.intent_succ_[a][v].push_back(w);

  // π and class-level reachability.
  m.pi_.assign(na, std::vector<std::vector<int>>(nw));
  m.related_classes_.assign(na, std::vector<std::vector<int>>(nc));
  for (int a = 0; a < na; ++a) {
    for (int w = 0; w < nw; ++w) {
      std::set<int> acc;
      for (int v = 0; v < nw; ++v)
        if (m.related(a, w, v))
          for (int u : m.class_members_[m.class_of_[v]]) acc.insert(u);
      m.pi_[a][w].assign(acc.begin(), acc.end());
    }
    for (int c = 0; c < nc; ++c) {
      std::set<int> ds;
      for (int v : m.class_members_[c])
        for (int x = 0; x < nw; ++x)
          if (m.related(a, v, x)) ds.insert(m.class_of_[x]);
      m.related_classes_[a][c].assign(ds.begin(), ds.end());
    }
  }

  // Values and valuation.
  m.mode_ = desc.mode;
  m.value_obj_.assign(nw, 0.0);
  m.value_subj_.assign(nw, 0.0);
  {
    std::set<int> have;
    for (const auto& [wid, v] : desc.value_objective) {
      auto it = m.world_lookup_.find(wid);
      if (it == m.world_lookup_.end()) {
        bad("value for unknown world '" + wid + "'");
        continue;
      }
      m.value_obj_[it->second] = v;
      have.insert(it->second);
    }
    for (int w = 0; w < nw; ++w)
      if (!have.count(w)) bad("world '" + m.worlds_[w] + "' has no value");
    if (desc.mode == ValueMode::Single) {
      if (!desc.value_subjective.empty()) bad("single-valued model carries subjective values");
      m.value_subj_ = m.value_obj_;
    } else {
      std::set<int> have_s;
      for (const auto& [wid, v] : desc.value_subjective) {
        auto it = m.world_lookup_.find(wid);
        if (it == m.world_lookup_.end()) {
          bad("subjective value for unknown world '" + wid + "'");
          continue;
        }
        m.value_subj_[it->second] = v;
        have_s.insert(it->second);
      }
      for (int w = 0; w < nw; ++w)
        if (!have_s.count(w)) bad("world '" + m.worlds_[w] + "' has no subjective value");
    }
  }
  for (const auto& [prop, ws] : desc.valuation) {
    if (!detail::valid_symbol(prop)) {
      bad("bad proposition name '" + prop + "'");
      continue;
    }
    std::vector<char> bits(nw, 0);
    for (const auto& wid : ws) {
      auto it = m.world_lookup_.find(wid);
      if (it == m.world_lookup_.end()) {
        bad("valuation of '" + prop + "' names unknown world '" + wid + "'");
        continue;
      }
      bits[it->second] = 1;
    }
    m.valuation_[prop] = std::move(bits);
  }
  if (fatal.size() > fatal_before) return std::nullopt;
  return m;
}

// Frame conditions on the relational side: (IA)_K, (OAC)_K, (Unif-H)_K, the
// intention relation's seriality/transitivity/euclideanness and containment
// in ≈∘R_□, and the denseness condition (Den)_K across information sets.
inline ValidationReport validate_kripke(const KripkeModel& m) {
  ValidationReport rep;
  auto hit = [&](const char* cond, std::string detail) {
    rep.violations.push_back({cond, std::move(detail)});
  };
  auto wset = [&](const std::vector<int>& ws) {
    std::string s = "{";
    for (std::size_t i = 0; i < ws.size(); ++i) s += (i ? "," : "") + m.world_name(ws[i]);
    return s + "}";
  };

  // (IA)_K
  for (int c = 0; c < m.class_count(); ++c) {
    std::vector<int> pick(m.agent_count(), 0);
    bool done = false;
    while (!done) {
      std::vector<int> inter = m.class_members(c);
      for (int a = 0; a < m.agent_count(); ++a)
        inter = detail::intersect_sorted(inter, m.cells(a, c)[pick[a]]);
      if (inter.empty()) {
        std::string sel;
        for (int a = 0; a < m.agent_count(); ++a)
          sel += (a ? ", " : "") + m.agent_name(a) + ":" + wset(m.cells(a, c)[pick[a]]);
        hit("IA_K", "class " + wset(m.class_members(c)) + ": selection " + sel +
                        " has empty intersection");
      }
      done = true;
      for (int a = m.agent_count() - 1; a >= 0; --a) {
        if (++pick[a] < static_cast<int>(m.cells(a, c).size())) {
          done = false;
          break;
        }
        pick[a] = 0;
      }
    }
  }

  // (OAC)_K: cell mates are epistemically related.
  for (int a = 0; a < m.agent_count(); ++a)
    for (int c = 0; c < m.class_count(); ++c)
      for (const auto& cell : m.cells(a, c))
        for (std::size_t k = 1; k < cell.size(); ++k)
          if (!m.related(a, cell[0], cell[k]))
            hit("OAC_K", "agent " + m.agent_name(a) + ": worlds " + m.world_name(cell[0]) +
                             " and " + m.world_name(cell[k]) +
                             " share a cell but are not epistemically related");

  // (Unif-H)_K: linked classes cover each other through ≈.
  for (int a = 0; a < m.agent_count(); ++a) {
    std::set<std::pair<int, int>> linked;
    for (int v = 0; v < m.world_count(); ++v)
      for (int u = 0; u < m.world_count(); ++u)
        if (m.related(a, v, u)) linked.insert({m.class_of(v), m.class_of(u)});
    for (const auto& [c, d] : linked)
      for (int v : m.class_members(c)) {
        bool found = false;
        for (int u : m.class_members(d))
          if (m.related(a, v, u)) {
            found = true;
            break;
          }
        if (!found)
          hit("UnifH_K", "agent " + m.agent_name(a) + ": classes " +
                             wset(m.class_members(c)) + " and " + wset(m.class_members(d)) +
                             " carry related worlds but " + m.world_name(v) +
                             " has no related world in the second");
      }
  }

  // Intention relation shape.
  for (int a = 0; a < m.agent_count(); ++a) {
    for (int v = 0; v < m.world_count(); ++v)
      if (m.intent_successors(a, v).empty())
        hit("intention-serial",
            "agent " + m.agent_name(a) + ": world " + m.world_name(v) + " has no successor");
    for (int v = 0; v < m.world_count(); ++v)
      for (int u : m.intent_successors(a, v))
        for (int z : m.intent_successors(a, u))
          if (!m.intends(a, v, z))
            hit("intention-transitive",
                "agent " + m.agent_name(a) + ": " + m.world_name(v) + "->" + m.world_name(u) +
                    "->" + m.world_name(z) + " but not " + m.world_name(v) + "->" +
                    m.world_name(z));
    for (int v = 0; v < m.world_count(); ++v)
      for (int u : m.intent_successors(a, v))
        for (int z : m.intent_successors(a, v))
          if (!m.intends(a, u, z))
            hit("intention-euclidean",
                "agent " + m.agent_name(a) + ": " + m.world_name(v) + " reaches both " +
                    m.world_name(u) + " and " + m.world_name(z) + " but " + m.world_name(u) +
                    " does not reach " + m.world_name(z));
    for (int v = 0; v < m.world_count(); ++v)
      for (int u : m.intent_successors(a, v)) {
        // u must lie in a class carrying a world related to v.
        bool ok = false;
        for (int z = 0; z < m.world_count(); ++z)
          if (m.related(a, v, z) && m.class_of(z) == m.class_of(u)) {
            ok = true;
            break;
          }
        if (!ok)
          hit("intention-scope", "agent " + m.agent_name(a) + ": " + m.world_name(v) + "->" +
                                     m.world_name(u) +
                                     " leaves the ex ante information set of " +
                                     m.world_name(v));
      }
    // (Den)_K: pairs across one information set share a successor.
    std::set<std::pair<int, int>> checked;
    for (int v = 0; v < m.world_count(); ++v)
      for (int u : m.pi(a, v)) {
        int x = std::min(v, u), y = std::max(v, u);
        if (x == y || !checked.insert({x, y}).second) continue;
        bool found = false;
        for (int z = 0; z < m.world_count(); ++z)
          if (m.intends(a, x, z) && m.intends(a, y, z)) {
            found = true;
            break;
          }
        if (!found)
          hit("Den_K", "agent " + m.agent_name(a) + ": " + m.world_name(x) + " and " +
                           m.world_name(y) +
                           " share an information set but have no common successor");
      }
  }

  return rep;
}

inline ValidationReport validate_kripke_desc(const KripkeModelDesc& desc) {
  ValidationReport rep;
  auto model = KripkeModel::build(desc, rep.fatal);
  if (!model) return rep;
  ValidationReport frame = validate_kripke(*model);
  rep.violations = std::move(frame.violations);
  return rep;
}

// ---------------------------------------------------------------------------
// Evaluation on Kripke models. The ought clauses exist in two provably
// equivalent forms: the dominated-action clause quantifying over all cells,
// and the quantification over non-dominated (optimal) cells. Both are kept so
// their agreement can be asserted by tests.
// ---------------------------------------------------------------------------

enum class OughtRoute { DominatedAction, OptimalSets };

inline std::vector<std::vector<int>> kripke_states_for(const KripkeModel& m, int agent, int c) {
  std::vector<int> others;
  for (int a = 0; a < m.agent_count(); ++a)
    if (a != agent) others.push_back(a);
  std::set<std::vector<int>> out;
  std::vector<int> pick(others.size(), 0);
  while (true) {
    std::vector<int> inter = m.class_members(c);
    for (std::size_t k = 0; k < others.size(); ++k)
      inter = detail::intersect_sorted(inter, m.cells(others[k], c)[pick[k]]);
    out.insert(inter);
    if (others.empty()) return {out.begin(), out.end()};
    std::size_t k = others.size();
    while (k > 0) {
      --k;
      if (++pick[k] < static_cast<int>(m.cells(others[k], c).size())) break;
      pick[k] = 0;
      if (k == 0) return {out.begin(), out.end()};
    }
  }
}

// Cluster of a cell L (worlds of class c) inside class d: worlds of d related
// to some member of L.
inline std::vector<int> kripke_cluster(const KripkeModel& m, int agent, const std::vector<int>& l,
                                       int d) {
  std::vector<int> out;
  for (int x : m.class_members(d))
    for (int u : l)
      if (m.related(agent, u, x)) {
        out.push_back(x);
        break;
      }
  return out;
}

namespace detail {

inline bool kripke_value_le(const KripkeModel& m, const std::vector<int>& x,
                            const std::vector<int>& y, bool subjective) {
  if (x.empty() || y.empty()) return true;
  double worst = -std::numeric_limits<double>::infinity();
  double best = std::numeric_limits<double>::infinity();
  for (int w : x) worst = std::max(worst, subjective ? m.value_subj(w) : m.value_obj(w));
  for (int w : y) best = std::min(best, subjective ? m.value_subj(w) : m.value_obj(w));
  return worst <= best;
}

}  // namespace detail

inline bool kripke_obj_leq(const KripkeModel& m, const std::vector<std::vector<int>>& states,
                           const std::vector<int>& l1, const std::vector<int>& l2) {
  for (const auto& s : states)
    if (!detail::kripke_value_le(m, detail::intersect_sorted(l1, s),
                                 detail::intersect_sorted(l2, s), false))
      return false;
  return true;
}

inline bool kripke_subj_leq(const KripkeModel& m, int agent, int c, const std::vector<int>& l1,
                            const std::vector<int>& l2) {
  for (int d : m.related_classes(agent, c)) {
    auto c1 = kripke_cluster(m, agent, l1, d);
    auto c2 = kripke_cluster(m, agent, l2, d);
    for (const auto& s : kripke_states_for(m, agent, d))
      if (!detail::kripke_value_le(m, detail::intersect_sorted(c1, s),
                                   detail::intersect_sorted(c2, s), true))
        return false;
  }
  return true;
}

inline std::vector<std::vector<int>> kripke_optimal(const KripkeModel& m, int agent, int c) {
  const auto& cells = m.cells(agent, c);
  auto states = kripke_states_for(m, agent, c);
  std::vector<std::vector<int>> out;
  for (const auto& l : cells) {
    bool dominated = false;
    for (const auto& l2 : cells)
      if (kripke_obj_leq(m, states, l, l2) &&
          !kripke_obj_leq(m, states, l2, l)) {
        dominated = true;
        break;
      }
    if (!dominated) out.push_back(l);
  }
  return out;
}

inline std::vector<std::vector<int>> kripke_soptimal(const KripkeModel& m, int agent, int c) {
  const auto& cells = m.cells(agent, c);
  std::vector<std::vector<int>> out;
  for (const auto& l : cells) {
    bool dominated = false;
    for (const auto& l2 : cells)
      if (kripke_subj_leq(m, agent, c, l, l2) && !kripke_subj_leq(m, agent, c, l2, l)) {
        dominated = true;
        break;
      }
    if (!dominated) out.push_back(l);
  }
  return out;
}

class KripkeEvaluator {
 public:
  explicit KripkeEvaluator(const KripkeModel& m, OughtRoute route = OughtRoute::DominatedAction)
      : m_(m), route_(route) {}

  const KripkeModel& model() const { return m_; }

  bool eval(int w, const FormulaPtr& f) { return extension(f)[w] != 0; }
  bool eval(const std::string& world, const FormulaPtr& f) { return eval(m_.world(world), f); }

  const std::vector<char>& extension(const FormulaPtr& f) {
    std::string key = print(f);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    std::vector<char> bits = compute(f);
    return memo_.emplace(std::move(key), std::move(bits)).first->second;
  }

 private:
  const KripkeModel& m_;
  OughtRoute route_;
  std::unordered_map<std::string, std::vector<char>> memo_;
  std::map<std::pair<int, int>, std::vector<std::vector<int>>> optimal_, soptimal_;

  const std::vector<std::vector<int>>& optimal_cells(int a, int c) {
    auto it = optimal_.find({a, c});
    if (it == optimal_.end()) it = optimal_.emplace(std::make_pair(a, c), kripke_optimal(m_, a, c)).first;
    return it->second;
  }
  const std::vector<std::vector<int>>& soptimal_cells(int a, int c) {
    auto it = soptimal_.find({a, c});
    if (it == soptimal_.end())
      it = soptimal_.emplace(std::make_pair(a, c), kripke_soptimal(m_, a, c)).first;
    return it->second;
  }

  bool cell_inside(const std::vector<int>& l, const std::vector<char>& ext) const {
    for (int w : l)
      if (!ext[w]) return false;
    return true;
  }

  bool clusters_inside(int a, int c, const std::vector<int>& l,
                       const std::vector<char>& ext) const {
    for (int d : m_.related_classes(a, c))
      for (int x : kripke_cluster(m_, a, l, d))
        if (!ext[x]) return false;
    return true;
  }

  bool ought_obj_at_class(int a, int c, const std::vector<char>& ext) {
    if (route_ == OughtRoute::OptimalSets) {
      for (const auto& l : optimal_cells(a, c))
        if (!cell_inside(l, ext)) return false;
      return true;
    }
    const auto& cells = m_.cells(a, c);
    auto states = kripke_states_for(m_, a, c);
    for (const auto& l : cells) {
      if (cell_inside(l, ext)) continue;
      bool rescued = false;
      for (const auto& l2 : cells) {
        if (!(kripke_obj_leq(m_, states, l, l2) &&
              !kripke_obj_leq(m_, states, l2, l)))
          continue;
        bool upward = true;
        for (const auto& l3 : cells)
          if (&l3 == &l2 || kripke_obj_leq(m_, states, l2, l3))
            upward = upward && cell_inside(l3, ext);
        if (upward) {
          rescued = true;
          break;
        }
      }
      if (!rescued) return false;
    }
    return true;
  }

  bool ought_subj_at_class(int a, int c, const std::vector<char>& ext) {
    if (route_ == OughtRoute::OptimalSets) {
      for (const auto& l : soptimal_cells(a, c))
        if (!clusters_inside(a, c, l, ext)) return false;
      return true;
    }
    const auto& cells = m_.cells(a, c);
    for (const auto& l : cells) {
      if (clusters_inside(a, c, l, ext)) continue;
      bool rescued = false;
      for (const auto& l2 : cells) {
        if (!(kripke_subj_leq(m_, a, c, l, l2) && !kripke_subj_leq(m_, a, c, l2, l))) continue;
        bool upward = true;
        for (const auto& l3 : cells)
          if (&l3 == &l2 || kripke_subj_leq(m_, a, c, l2, l3))
            upward = upward && clusters_inside(a, c, l3, ext);
        if (upward) {
          rescued = true;
          break;
        }
      }
      if (!rescued) return false;
    }
    return true;
  }

  std::vector<char> compute(const FormulaPtr& f) {
    int nw = m_.world_count();
    std::vector<char> bits(nw, 0);
    switch (f->op) {
      case Op::Atom:
        for (int w = 0; w < nw; ++w) bits[w] = m_.prop_true_at(f->name, w);
        return bits;
      case Op::Not: {
        const auto& sub = extension(f->a);
        for (int w = 0; w < nw; ++w) bits[w] = !sub[w];
        return bits;
      }
      case Op::And: {
        const auto& l = extension(f->a);
        const auto& r = extension(f->b);
        for (int w = 0; w < nw; ++w) bits[w] = l[w] && r[w];
        return bits;
      }
      case Op::Box: {
        const auto& sub = extension(f->a);
        for (int c = 0; c < m_.class_count(); ++c) {
          bool all = true;
          for (int w : m_.class_members(c)) all = all && sub[w];
          if (all)
            for (int w : m_.class_members(c)) bits[w] = 1;
        }
        return bits;
      }
      case Op::Stit: {
        int a = m_.agent(f->name);
        const auto& sub = extension(f->a);
        for (int c = 0; c < m_.class_count(); ++c)
          for (const auto& cell : m_.cells(a, c))
            if (cell_inside(cell, sub))
              for (int w : cell) bits[w] = 1;
        return bits;
      }
      case Op::Know: {
        int a = m_.agent(f->name);
        const auto& sub = extension(f->a);
        for (int cls = 0; cls < m_.epi_class_count(a); ++cls) {
          const auto& members = m_.epi_class_members(a, cls);
          bool all = true;
          for (int w : members) all = all && sub[w];
          if (all)
            for (int w : members) bits[w] = 1;
        }
        return bits;
      }
      case Op::Intend: {
        int a = m_.agent(f->name);
        const auto& sub = extension(f->a);
        std::vector<char> good(nw, 0);
        for (int x = 0; x < nw; ++x) {
          good[x] = 1;
          for (int y : m_.up_set(a, x)) good[x] = good[x] && sub[y];
        }
        for (int w = 0; w < nw; ++w)
          for (int x : m_.pi(a, w))
            if (good[x]) {
              bits[w] = 1;
              break;
            }
        return bits;
      }
      case Op::OughtObj: {
        int a = m_.agent(f->name);
        const auto& sub = extension(f->a);
        for (int c = 0; c < m_.class_count(); ++c)
          if (ought_obj_at_class(a, c, sub))
            for (int w : m_.class_members(c)) bits[w] = 1;
        return bits;
      }
      case Op::OughtSubj: {
        int a = m_.agent(f->name);
        const auto& sub = extension(f->a);
        for (int c = 0; c < m_.class_count(); ++c)
          if (ought_subj_at_class(a, c, sub))
            for (int w : m_.class_members(c)) bits[w] = 1;
        return bits;
      }
    }
    return bits;
  }
};

inline bool eval_kripke(const KripkeModel& m, const std::string& world, const FormulaPtr& f,
                        OughtRoute route = OughtRoute::DominatedAction) {
  KripkeEvaluator ev(m, route);
  return ev.eval(world, f);
}

// ---------------------------------------------------------------------------
// Unravelling: a three-level moment tree (root, one moment per class, one
// leaf per world). Histories are in bijection with worlds; world w embeds as
// the index <class-moment of w, history w>. Epistemics at class level copy ≈,
// topologies are the up-set bases closed under union/intersection, and the
// root/leaf levels carry vacuous structure.
// ---------------------------------------------------------------------------

struct UnravelResult {
  StitModelDesc desc;
  std::map<std::string, Index> embedding;  // world -> index in the tree model
};

inline UnravelResult unravel(const KripkeModel& k) {
  UnravelResult res;
  StitModelDesc& d = res.desc;

  std::string prefix = "_";
  {
    bool clash = true;
    while (clash) {
      clash = false;
      for (int w = 0; w < k.world_count(); ++w)
        if (k.world_name(w).rfind(prefix, 0) == 0) {
          clash = true;
          prefix += "_";
          break;
        }
    }
  }
  std::string root = prefix + "root";
  auto cls_name = [&](int c) { return prefix + "c" + std::to_string(c); };

  for (int a = 0; a < k.agent_count(); ++a) d.agents.push_back(k.agent_name(a));
  d.moments.push_back({root, ""});
  for (int c = 0; c < k.class_count(); ++c) d.moments.push_back({cls_name(c), root});
  for (int w = 0; w < k.world_count(); ++w)
    d.moments.push_back({k.world_name(w), cls_name(k.class_of(w))});

  for (int w = 0; w < k.world_count(); ++w)
    res.embedding[k.world_name(w)] = Index{cls_name(k.class_of(w)), k.world_name(w)};

  // Choices: lift the class partitions to the class moments; root and leaf
  // moments keep the default vacuous cell.
  for (int a = 0; a < k.agent_count(); ++a)
    for (int c = 0; c < k.class_count(); ++c) {
      ChoiceDesc ch{k.agent_name(a), cls_name(c), {}};
      for (const auto& cell : k.cells(a, c)) {
        std::vector<std::string> names;
        for (int w : cell) names.push_back(k.world_name(w));
        ch.cells.push_back(std::move(names));
      }
      d.choices.push_back(std::move(ch));
    }

  // Epistemics: ≈ at class level and at leaf level, everything related at the
  // root.
  for (int a = 0; a < k.agent_count(); ++a) {
    EpistemicDesc e{k.agent_name(a), {}};
    for (int v = 0; v < k.world_count(); ++v)
      for (int u = v + 1; u < k.world_count(); ++u)
        if (k.related(a, v, u)) {
          e.pairs.push_back({res.embedding[k.world_name(v)], res.embedding[k.world_name(u)]});
          e.pairs.push_back({Index{k.world_name(v), k.world_name(v)},
                             Index{k.world_name(u), k.world_name(u)}});
        }
    for (int w = 0; w + 1 < k.world_count(); ++w)
      e.pairs.push_back(
          {Index{root, k.world_name(w)}, Index{root, k.world_name(w + 1)}});
    d.epistemic.push_back(std::move(e));
  }

  // Topologies: one per distinct information set, generated by the up-sets.
  for (int a = 0; a < k.agent_count(); ++a) {
    std::set<std::vector<int>> done;
    for (int w = 0; w < k.world_count(); ++w) {
      const auto& p = k.pi(a, w);
      if (!done.insert(p).second) continue;
      std::set<std::vector<int>> opens;
      opens.insert(std::vector<int>{});
      for (int x : p) {
        auto up = k.up_set(a, x);
        opens.insert(detail::sorted_unique(up));
      }
      bool grew = true;
      while (grew) {
        grew = false;
        std::vector<std::vector<int>> cur(opens.begin(), opens.end());
        for (const auto& u : cur)
          for (const auto& v : cur) {
            if (opens.insert(detail::union_sorted(u, v)).second) grew = true;
            if (opens.insert(detail::intersect_sorted(u, v)).second) grew = true;
          }
      }
      TopologyDesc t;
      t.agent = k.agent_name(a);
      t.at = res.embedding[k.world_name(p[0])];
      for (const auto& u : opens) {
        std::vector<Index> open;
        for (int x : u) open.push_back(res.embedding[k.world_name(x)]);
        t.opens.push_back(std::move(open));
      }
      d.topologies.push_back(std::move(t));
    }
  }

  // Values per history; collapse to single mode when both coordinates agree.
  bool single = true;
  for (int w = 0; w < k.world_count(); ++w) single = single && k.value_obj(w) == k.value_subj(w);
  d.mode = single ? ValueMode::Single : ValueMode::Dual;
  for (int w = 0; w < k.world_count(); ++w) {
    d.value_objective[k.world_name(w)] = k.value_obj(w);
    if (!single) d.value_subjective[k.world_name(w)] = k.value_subj(w);
  }

  // Valuation lifts to the embedded (class-level) indices only.
  for (const auto& [prop, bits] : k.valuation()) {
    std::vector<Index> ixs;
    for (int w = 0; w < k.world_count(); ++w)
      if (bits[w]) ixs.push_back(res.embedding.at(k.world_name(w)));
    d.valuation[prop] = std::move(ixs);
  }

  return res;
}

struct CorrespondenceReport {
  long points = 0;
  struct Divergence {
    std::string world;
    std::string formula;
    bool kripke = false;
    bool tree = false;
  };
  std::vector<Divergence> divergences;
  bool ok() const { return divergences.empty(); }
};

// Evaluates each formula at every world on the Kripke model and at the
// embedded index of the unravelled tree model; reports every disagreement.
inline CorrespondenceReport correspondence_check(const KripkeModel& k,
                                                 const std::vector<FormulaPtr>& formulas) {
  UnravelResult u = unravel(k);
  std::vector<Violation> fatal;
  auto tree = StitModel::build(u.desc, fatal);
  if (!tree) throw Error("unravelled model failed to build: " +
                         (fatal.empty() ? std::string("unknown") : fatal.front().detail));
  KripkeEvaluator kev(k);
  Evaluator tev(*tree);
  CorrespondenceReport rep;
  for (const auto& f : formulas)
    for (int w = 0; w < k.world_count(); ++w) {
      bool kv = kev.eval(w, f);
      bool tv = tev.eval(tree->index_of(u.embedding.at(k.world_name(w))), f);
      ++rep.points;
      if (kv != tv)
        rep.divergences.push_back({k.world_name(w), print(f), kv, tv});
    }
  return rep;
}

}  // namespace stitresp

#endif  // STITRESP_KRIPKE_HPP
