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

#ifndef STITRESP_MODEL_HPP
#define STITRESP_MODEL_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace stitresp {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A violated condition together with a concrete witness description.
struct Violation {
  std::string condition;
  std::string detail;
};

// validate_* results. `fatal` holds structural problems (dangling ids, a
// non-tree parent relation, malformed partitions); when it is non-empty the
// frame conditions were not checked. `violations` holds condition failures.
struct ValidationReport {
  std::vector<Violation> fatal;
  std::vector<Violation> violations;

  bool ok() const { return fatal.empty() && violations.empty(); }
  bool has(const std::string& condition) const {
    for (const auto& v : fatal)
      if (v.condition == condition) return true;
    for (const auto& v : violations)
      if (v.condition == condition) return true;
    return false;
  }
  std::string to_text() const {
    if (ok()) return "valid\n";
    std::string out;
    for (const auto& v : fatal) out += "fatal " + v.condition + ": " + v.detail + "\n";
    for (const auto& v : violations) out += v.condition + ": " + v.detail + "\n";
    return out;
  }
};

enum class ValueMode { Single, Dual };

// An evaluation point: a moment paired with a history passing through it.
// Histories are named after the leaf that terminates them.
struct Index {
  std::string moment;
  std::string history;

  friend bool operator==(const Index& a, const Index& b) {
    return a.moment == b.moment && a.history == b.history;
  }
  friend bool operator<(const Index& a, const Index& b) {
    return a.moment != b.moment ? a.moment < b.moment : a.history < b.history;
  }
  std::string str() const { return moment + ":" + history; }
};

inline Index parse_index(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == s.size())
    throw Error("malformed index '" + s + "', expected moment:history");
  return Index{s.substr(0, colon), s.substr(colon + 1)};
}

// ---------------------------------------------------------------------------
// Model description: the literal content of a model file, before any derived
// structure is computed. Tests and the random generators build these directly.
// ---------------------------------------------------------------------------

struct MomentDesc {
  std::string id;
  std::string parent;  // empty for the root
};

struct ChoiceDesc {
  std::string agent;
  std::string moment;
  std::vector<std::vector<std::string>> cells;  // histories, by leaf id
};

struct EpistemicDesc {
  std::string agent;
  // Generator pairs; the model closes them reflexively, symmetrically and
  // transitively. Own-cell relatedness is *not* seeded automatically so that
  // (OAC) remains a checkable condition.
  std::vector<std::pair<Index, Index>> pairs;
};

struct TopologyDesc {
  std::string agent;
  Index at;  // any index; the topology serves that index's information set
  std::vector<std::vector<Index>> opens;
};

struct StitModelDesc {
  ValueMode mode = ValueMode::Single;
  std::vector<std::string> agents;
  std::vector<MomentDesc> moments;
  std::vector<ChoiceDesc> choices;
  std::vector<EpistemicDesc> epistemic;
  std::vector<TopologyDesc> topologies;
  std::map<std::string, double> value_objective;   // by history id
  std::map<std::string, double> value_subjective;  // ignored in Single mode
  std::map<std::string, std::vector<Index>> valuation;
};

namespace detail {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

inline bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c == ':' || c == ' ' || c == '\t' || c == '\n' || c == '\r') return false;
  return true;
}

inline bool valid_symbol(const std::string& s) {
  // Agents and propositions occur in formulas, so they must be identifiers
  // and must avoid the operator keywords.
  if (s.empty()) return false;
  if (!((s[0] >= 'a' && s[0] <= 'z') || (s[0] >= 'A' && s[0] <= 'Z'))) return false;
  for (char c : s)
    if (!((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9')))
      return false;
  return !(s == "box" || s == "K" || s == "I" || s == "Ob" || s == "Os");
}

template <typename T>
std::vector<T> sorted_unique(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// StitModel: a moment tree with per-moment choice partitions, epistemic
// equivalences over indices, per-information-set intention topologies, and
// history values (one value in Single mode, objective/subjective in Dual).
// All derived tables are computed once at build time; ids are interned.
// ---------------------------------------------------------------------------

class StitModel {
 public:
  struct Topology {
    std::vector<int> carrier;              // the information set, sorted index ids
    std::vector<std::vector<int>> opens;   // each open sorted
    std::vector<std::string> declared_at;  // anchors of the TopologyDescs resolved here
    std::vector<std::string> conflicts;    // anchors whose opens differ from the first
  };

  // Builds the derived structure. Structural problems are appended to `fatal`
  // and nullopt is returned; frame conditions are *not* checked here.
  static std::optional<StitModel> build(const StitModelDesc& desc,
                                        std::vector<Violation>& fatal);

  // -- naming ---------------------------------------------------------------
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

  int moment_count() const { return static_cast<int>(moment_ids_.size()); }
  const std::string& moment_name(int m) const { return moment_ids_[m]; }
  int moment(const std::string& id) const {
    auto it = moment_lookup_.find(id);
    if (it == moment_lookup_.end()) throw Error("unknown moment '" + id + "'");
    return it->second;
  }

  int history_count() const { return static_cast<int>(history_leaf_.size()); }
  const std::string& history_name(int h) const { return moment_ids_[history_leaf_[h]]; }
  int history(const std::string& id) const {
    auto it = history_lookup_.find(id);
    if (it == history_lookup_.end()) throw Error("unknown history '" + id + "'");
    return it->second;
  }

  // -- tree -----------------------------------------------------------------
  int root() const { return root_; }
  int parent(int m) const { return parent_[m]; }
  const std::vector<int>& children(int m) const { return children_[m]; }
  const std::vector<int>& path(int h) const { return history_path_[h]; }

  // H_m, sorted by history id.
  const std::vector<int>& histories_at(int m) const { return hist_at_[m]; }

  // -- indices ----------------------------------------------------------------
  int index_count() const { return static_cast<int>(index_moment_.size()); }
  int index_moment(int ix) const { return index_moment_[ix]; }
  int index_history(int ix) const { return index_history_[ix]; }
  const std::vector<int>& indices_at(int m) const { return index_at_moment_[m]; }
  int index_of(int m, int h) const {
    auto it = index_lookup_.find({m, h});
    return it == index_lookup_.end() ? -1 : it->second;
  }
  int index_of(const Index& ix) const {
    int m = moment(ix.moment);
    int h = history(ix.history);
    int id = index_of(m, h);
    if (id < 0) throw Error("history '" + ix.history + "' does not pass through moment '" +
                            ix.moment + "'");
    return id;
  }
  std::string index_name(int ix) const {
    return moment_ids_[index_moment_[ix]] + ":" + history_name(index_history_[ix]);
  }

  // -- choices ----------------------------------------------------------------
  const std::vector<std::vector<int>>& cells(int agent, int m) const {
    return cells_[agent][m];
  }
  int cell_of(int agent, int m, int h) const { return cell_of_[agent][m].at(h); }
  const std::vector<int>& cell_histories(int agent, int m, int h) const {
    return cells_[agent][m][cell_of(agent, m, h)];
  }

  // -- epistemics ---------------------------------------------------------------
  int epi_class(int agent, int ix) const { return epi_class_[agent][ix]; }
  const std::vector<int>& epi_class_members(int agent, int cls) const {
    return epi_members_[agent][cls];
  }
  bool related(int agent, int ix, int jx) const {
    return epi_class_[agent][ix] == epi_class_[agent][jx];
  }
  // Moments m' with m ~ m' (some index at m related to some index at m').
  const std::vector<int>& related_moments(int agent, int m) const {
    return related_moments_[agent][m];
  }

  // Ex ante information set of `ix` for `agent`: every index at a moment the
  // epistemic class of `ix` reaches. Always a union of full H_m slices.
  const std::vector<int>& info_set(int agent, int ix) const {
    return info_members_[agent][info_of_[agent][ix]];
  }
  int info_id(int agent, int ix) const { return info_of_[agent][ix]; }
  int info_count(int agent) const { return static_cast<int>(info_members_[agent].size()); }
  const std::vector<int>& info_members(int agent, int id) const {
    return info_members_[agent][id];
  }
  const Topology& topology_at(int agent, int ix) const {
    return topologies_[agent][info_of_[agent][ix]];
  }
  const Topology& topology_of_info(int agent, int id) const { return topologies_[agent][id]; }

  // -- values -------------------------------------------------------------------
  ValueMode mode() const { return mode_; }
  double value_obj(int h) const { return value_obj_[h]; }
  double value_subj(int h) const { return value_subj_[h]; }

  // -- valuation ------------------------------------------------------------------
  bool prop_true_at(const std::string& prop, int ix) const {
    auto it = valuation_.find(prop);
    return it != valuation_.end() && it->second[ix];
  }
  const std::map<std::string, std::vector<char>>& valuation() const { return valuation_; }

  StitModelDesc to_desc() const;  // inverse of build, for serialization

 private:
  std::vector<std::string> agents_;
  std::vector<std::string> moment_ids_;
  std::map<std::string, int> moment_lookup_;
  std::vector<int> parent_;
  std::vector<std::vector<int>> children_;
  int root_ = -1;

  std::vector<int> history_leaf_;
  std::map<std::string, int> history_lookup_;
  std::vector<std::vector<int>> history_path_;
  std::vector<std::vector<int>> hist_at_;

  std::vector<int> index_moment_, index_history_;
  std::vector<std::vector<int>> index_at_moment_;
  std::map<std::pair<int, int>, int> index_lookup_;

  std::vector<std::vector<std::vector<std::vector<int>>>> cells_;  // [agent][moment]
  std::vector<std::vector<std::map<int, int>>> cell_of_;           // [agent][moment] h->cell

  std::vector<std::vector<int>> epi_class_;               // [agent][index]
  std::vector<std::vector<std::vector<int>>> epi_members_;  // [agent][class]
  std::vector<std::vector<std::vector<int>>> related_moments_;

  std::vector<std::vector<int>> info_of_;                 // [agent][index] -> info id
  std::vector<std::vector<std::vector<int>>> info_members_;
  std::vector<std::vector<Topology>> topologies_;         // [agent][info id]

  ValueMode mode_ = ValueMode::Single;
  std::vector<double> value_obj_, value_subj_;

  std::map<std::string, std::vector<char>> valuation_;  // prop -> bitset over indices

  friend class KripkeModel;
};

inline std::optional<StitModel> StitModel::build(const StitModelDesc& desc,
                                                 std::vector<Violation>& fatal) {
  StitModel m;
  auto bad = [&](std::string s) { fatal.push_back({"structure", std::move(s)}); };
  std::size_t fatal_before = fatal.size();

  // Agents.
  if (desc.agents.empty()) bad("model declares no agents");
  for (const auto& a : desc.agents) {
    if (!detail::valid_symbol(a)) bad("agent name '" + a + "' is not a plain identifier");
    if (std::count(desc.agents.begin(), desc.agents.end(), a) > 1)
      bad("duplicate agent '" + a + "'");
  }
  m.agents_ = detail::sorted_unique(desc.agents);

  // Moment tree.
  for (const auto& mo : desc.moments) {
    if (!detail::valid_name(mo.id)) {
      bad("bad moment id '" + mo.id + "'");
      continue;
    }
    if (m.moment_lookup_.count(mo.id)) {
      bad("duplicate moment '" + mo.id + "'");
      continue;
    }
    m.moment_lookup_[mo.id] = static_cast<int>(m.moment_ids_.size());
    m.moment_ids_.push_back(mo.id);
  }
  if (fatal.size() > fatal_before) return std::nullopt;
  int n = m.moment_count();
  if (n == 0) {
    bad("model has no moments");
    return std::nullopt;
  }
  m.parent_.assign(n, -1);
  m.children_.assign(n, {});
  for (const auto& mo : desc.moments) {
    int id = m.moment_lookup_[mo.id];
    if (mo.parent.empty()) {
      if (m.root_ >= 0) bad("two roots: '" + m.moment_ids_[m.root_] + "' and '" + mo.id + "'");
      m.root_ = id;
    } else if (!m.moment_lookup_.count(mo.parent)) {
      bad("moment '" + mo.id + "' has unknown parent '" + mo.parent + "'");
    } else {
      m.parent_[id] = m.moment_lookup_[mo.parent];
      m.children_[m.parent_[id]].push_back(id);
    }
  }
  if (m.root_ < 0) bad("no root moment");
  if (fatal.size() > fatal_before) return std::nullopt;
  {
    // Reachability from the root; anything missed sits on a cycle.
    std::vector<char> seen(n, 0);
    std::vector<int> stack{m.root_};
    seen[m.root_] = 1;
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      for (int c : m.children_[cur]) {
        seen[c] = 1;
        stack.push_back(c);
      }
    }
    for (int i = 0; i < n; ++i)
      if (!seen[i]) bad("moment '" + m.moment_ids_[i] + "' is not reachable from the root");
  }
  if (fatal.size() > fatal_before) return std::nullopt;

  // Histories: root-to-leaf branches, named by their leaf.
  for (int i = 0; i < n; ++i) {
    if (!m.children_[i].empty()) continue;
    int h = static_cast<int>(m.history_leaf_.size());
    m.history_leaf_.push_back(i);
    m.history_lookup_[m.moment_ids_[i]] = h;
    std::vector<int> path;
    for (int cur = i; cur >= 0; cur = m.parent_[cur]) path.push_back(cur);
    std::reverse(path.begin(), path.end());
    m.history_path_.push_back(std::move(path));
  }
  m.hist_at_.assign(n, {});
  for (int h = 0; h < m.history_count(); ++h)
    for (int mo : m.history_path_[h]) m.hist_at_[mo].push_back(h);

  // Index table.
  m.index_at_moment_.assign(n, {});
  for (int mo = 0; mo < n; ++mo)
    for (int h : m.hist_at_[mo]) {
      int ix = static_cast<int>(m.index_moment_.size());
      m.index_moment_.push_back(mo);
      m.index_history_.push_back(h);
      m.index_at_moment_[mo].push_back(ix);
      m.index_lookup_[{mo, h}] = ix;
    }

  auto resolve_index = [&](const Index& ix, const char* where) -> int {
    auto mit = m.moment_lookup_.find(ix.moment);
    if (mit == m.moment_lookup_.end()) {
      bad(std::string(where) + ": unknown moment '" + ix.moment + "'");
      return -1;
    }
    auto hit = m.history_lookup_.find(ix.history);
    if (hit == m.history_lookup_.end()) {
      bad(std::string(where) + ": unknown history '" + ix.history + "'");
      return -1;
    }
    int id = m.index_of(mit->second, hit->second);
    if (id < 0)
      bad(std::string(where) + ": history '" + ix.history + "' does not pass through '" +
          ix.moment + "'");
    return id;
  };

  // Choice partitions; absent entries default to the single vacuous cell.
  int na = m.agent_count();
  m.cells_.assign(na, std::vector<std::vector<std::vector<int>>>(n));
  m.cell_of_.assign(na, std::vector<std::map<int, int>>(n));
  std::set<std::pair<int, int>> declared;
  for (const auto& c : desc.choices) {
    if (!m.has_agent(c.agent)) {
      bad("choice entry for unknown agent '" + c.agent + "'");
      continue;
    }
    auto mit = m.moment_lookup_.find(c.moment);
    if (mit == m.moment_lookup_.end()) {
      bad("choice entry for unknown moment '" + c.moment + "'");
      continue;
    }
    int a = m.agent(c.agent);
    int mo = mit->second;
    if (!declared.insert({a, mo}).second) {
      bad("duplicate choice entry for agent '" + c.agent + "' at '" + c.moment + "'");
      continue;
    }
    std::set<int> covered;
    for (const auto& cell : c.cells) {
      std::vector<int> hs;
      for (const auto& hid : cell) {
        auto hit = m.history_lookup_.find(hid);
        if (hit == m.history_lookup_.end()) {
          bad("choice cell at '" + c.moment + "' names unknown history '" + hid + "'");
          continue;
        }
        int h = hit->second;
        if (std::find(m.hist_at_[mo].begin(), m.hist_at_[mo].end(), h) == m.hist_at_[mo].end()) {
          bad("choice cell at '" + c.moment + "' names history '" + hid +
              "' that does not pass through it");
          continue;
        }
        if (!covered.insert(h).second) {
          bad("history '" + hid + "' occurs in two cells at '" + c.moment + "' for agent '" +
              c.agent + "'");
          continue;
        }
        hs.push_back(h);
      }
      if (hs.empty()) {
        bad("empty choice cell at '" + c.moment + "' for agent '" + c.agent + "'");
        continue;
      }
      std::sort(hs.begin(), hs.end());
      int cell_id = static_cast<int>(m.cells_[a][mo].size());
      for (int h : hs) m.cell_of_[a][mo][h] = cell_id;
      m.cells_[a][mo].push_back(std::move(hs));
    }
    if (static_cast<int>(covered.size()) != static_cast<int>(m.hist_at_[mo].size()))
      bad("choice cells for agent '" + c.agent + "' at '" + c.moment +
          "' do not cover every history through it");
  }
  for (int a = 0; a < na; ++a)
    for (int mo = 0; mo < n; ++mo)
      if (m.cells_[a][mo].empty()) {
        m.cells_[a][mo].push_back(m.hist_at_[mo]);
        for (int h : m.hist_at_[mo]) m.cell_of_[a][mo][h] = 0;
      }
  if (fatal.size() > fatal_before) return std::nullopt;

  // Epistemic closure per agent (reflexive / symmetric / transitive).
  int ni = m.index_count();
  m.epi_class_.assign(na, {});
  m.epi_members_.assign(na, {});
  m.related_moments_.assign(na, std::vector<std::vector<int>>(n));
  std::vector<detail::UnionFind> uf(na, detail::UnionFind(ni));
  for (const auto& e : desc.epistemic) {
    if (!m.has_agent(e.agent)) {
      bad("epistemic entry for unknown agent '" + e.agent + "'");
      continue;
    }
    int a = m.agent(e.agent);
    for (const auto& pr : e.pairs) {
      int i = resolve_index(pr.first, "epistemic pair");
      int j = resolve_index(pr.second, "epistemic pair");
      if (i >= 0 && j >= 0) uf[a].unite(i, j);
    }
  }
  if (fatal.size() > fatal_before) return std::nullopt;
  for (int a = 0; a < na; ++a) {
    m.epi_class_[a].assign(ni, -1);
    std::map<int, int> renum;
    for (int ix = 0; ix < ni; ++ix) {
      int r = uf[a].find(ix);
      auto it = renum.find(r);
      int cls;
      if (it == renum.end()) {
        cls = static_cast<int>(m.epi_members_[a].size());
        renum[r] = cls;
        m.epi_members_[a].push_back({});
      } else {
        cls = it->second;
      }
      m.epi_class_[a][ix] = cls;
      m.epi_members_[a][cls].push_back(ix);
    }
    std::vector<std::set<int>> rel(n);
    for (const auto& members : m.epi_members_[a]) {
      std::set<int> moments;
      for (int ix : members) moments.insert(m.index_moment_[ix]);
      for (int x : moments)
        for (int y : moments) rel[x].insert(y);
    }
    for (int mo = 0; mo < n; ++mo)
      m.related_moments_[a][mo].assign(rel[mo].begin(), rel[mo].end());
  }

  // Information sets: the class of an index reaches a set of moments; the
  // info set is the union of those moments' full slices.
  m.info_of_.assign(na, std::vector<int>(ni, -1));
  m.info_members_.assign(na, {});
  for (int a = 0; a < na; ++a) {
    std::map<std::vector<int>, int> interned;
    for (std::size_t cls = 0; cls < m.epi_members_[a].size(); ++cls) {
      std::set<int> moments;
      for (int ix : m.epi_members_[a][cls]) moments.insert(m.index_moment_[ix]);
      std::vector<int> members;
      for (int mo : moments)
        members.insert(members.end(), m.index_at_moment_[mo].begin(),
                       m.index_at_moment_[mo].end());
      std::sort(members.begin(), members.end());
      auto it = interned.find(members);
      int id;
      if (it == interned.end()) {
        id = static_cast<int>(m.info_members_[a].size());
        interned[members] = id;
        m.info_members_[a].push_back(members);
      } else {
        id = it->second;
      }
      for (int ix : m.epi_members_[a][cls]) m.info_of_[a][ix] = id;
    }
  }

  // Topologies, keyed by information set; absent ones default to {∅, carrier}.
  m.topologies_.assign(na, {});
  for (int a = 0; a < na; ++a) {
    m.topologies_[a].resize(m.info_members_[a].size());
    for (std::size_t id = 0; id < m.info_members_[a].size(); ++id)
      m.topologies_[a][id].carrier = m.info_members_[a][id];
  }
  for (const auto& t : desc.topologies) {
    if (!m.has_agent(t.agent)) {
      bad("topology entry for unknown agent '" + t.agent + "'");
      continue;
    }
    int a = m.agent(t.agent);
    int at = resolve_index(t.at, "topology anchor");
    if (at < 0) continue;
    std::vector<std::vector<int>> opens;
    bool broken = false;
    for (const auto& open : t.opens) {
      std::vector<int> o;
      for (const auto& ix : open) {
        int id = resolve_index(ix, "topology open");
        if (id < 0) broken = true;
        else o.push_back(id);
      }
      opens.push_back(detail::sorted_unique(o));
    }
    if (broken) continue;
    Topology& topo = m.topologies_[a][m.info_of_[a][at]];
    topo.declared_at.push_back(t.at.str());
    if (topo.declared_at.size() == 1)
      topo.opens = detail::sorted_unique(opens);
    // Further declarations for the same information set stay recorded for the
    // validator's (KI) check; the first one remains in force.
    else if (detail::sorted_unique(opens) != topo.opens)
      topo.conflicts.push_back(t.at.str());
  }
  for (int a = 0; a < na; ++a)
    for (auto& topo : m.topologies_[a])
      if (topo.declared_at.empty()) topo.opens = {{}, topo.carrier};
  if (fatal.size() > fatal_before) return std::nullopt;

  // Values.
  m.mode_ = desc.mode;
  m.value_obj_.assign(m.history_count(), 0.0);
  m.value_subj_.assign(m.history_count(), 0.0);
  {
    std::set<int> have;
    for (const auto& [hid, v] : desc.value_objective) {
      auto hit = m.history_lookup_.find(hid);
      if (hit == m.history_lookup_.end()) {
        bad("value for unknown history '" + hid + "'");
        continue;
      }
      m.value_obj_[hit->second] = v;
      have.insert(hit->second);
    }
    for (int h = 0; h < m.history_count(); ++h)
      if (!have.count(h)) bad("history '" + m.history_name(h) + "' has no value");
    if (desc.mode == ValueMode::Single) {
      if (!desc.value_subjective.empty())
        bad("single-valued model carries subjective values");
      m.value_subj_ = m.value_obj_;
    } else {
      std::set<int> have_s;
      for (const auto& [hid, v] : desc.value_subjective) {
        auto hit = m.history_lookup_.find(hid);
        if (hit == m.history_lookup_.end()) {
          bad("subjective value for unknown history '" + hid + "'");
          continue;
        }
        m.value_subj_[hit->second] = v;
        have_s.insert(hit->second);
      }
      for (int h = 0; h < m.history_count(); ++h)
        if (!have_s.count(h)) bad("history '" + m.history_name(h) + "' has no subjective value");
    }
  }

  // Valuation.
  for (const auto& [prop, ixs] : desc.valuation) {
    if (!detail::valid_symbol(prop)) {
      bad("bad proposition name '" + prop + "'");
      continue;
    }
    std::vector<char> bits(ni, 0);
    for (const auto& ix : ixs) {
      int id = resolve_index(ix, ("valuation of '" + prop + "'").c_str());
      if (id >= 0) bits[id] = 1;
    }
    m.valuation_[prop] = std::move(bits);
  }
  if (fatal.size() > fatal_before) return std::nullopt;

  return m;
}

inline StitModelDesc StitModel::to_desc() const {
  StitModelDesc d;
  d.mode = mode_;
  d.agents = agents_;
  for (int mo = 0; mo < moment_count(); ++mo)
    d.moments.push_back({moment_ids_[mo], parent_[mo] < 0 ? "" : moment_ids_[parent_[mo]]});
  for (int a = 0; a < agent_count(); ++a)
    for (int mo = 0; mo < moment_count(); ++mo) {
      if (cells_[a][mo].size() == 1 &&
          cells_[a][mo][0].size() == hist_at_[mo].size())
        continue;  // vacuous cell, the loader default
      ChoiceDesc c{agents_[a], moment_ids_[mo], {}};
      for (const auto& cell : cells_[a][mo]) {
        std::vector<std::string> names;
        for (int h : cell) names.push_back(history_name(h));
        c.cells.push_back(std::move(names));
      }
      d.choices.push_back(std::move(c));
    }
  for (int a = 0; a < agent_count(); ++a) {
    EpistemicDesc e{agents_[a], {}};
    for (const auto& members : epi_members_[a]) {
      for (std::size_t k = 0; k + 1 < members.size(); ++k) {
        Index lhs{moment_name(index_moment_[members[k]]), history_name(index_history_[members[k]])};
        Index rhs{moment_name(index_moment_[members[k + 1]]),
                  history_name(index_history_[members[k + 1]])};
        e.pairs.push_back({lhs, rhs});
      }
    }
    if (!e.pairs.empty()) d.epistemic.push_back(std::move(e));
  }
  for (int a = 0; a < agent_count(); ++a)
    for (const auto& topo : topologies_[a]) {
      if (topo.carrier.empty()) continue;
      bool is_default = topo.opens.size() == 2 && topo.opens[0].empty() &&
                        topo.opens[1] == topo.carrier;
      if (is_default) continue;
      TopologyDesc t;
      t.agent = agents_[a];
      t.at = Index{moment_name(index_moment_[topo.carrier[0]]),
                   history_name(index_history_[topo.carrier[0]])};
      for (const auto& open : topo.opens) {
        std::vector<Index> o;
        for (int ix : open)
          o.push_back(Index{moment_name(index_moment_[ix]), history_name(index_history_[ix])});
        t.opens.push_back(std::move(o));
      }
      d.topologies.push_back(std::move(t));
    }
  for (int h = 0; h < history_count(); ++h) {
    d.value_objective[history_name(h)] = value_obj_[h];
    if (mode_ == ValueMode::Dual) d.value_subjective[history_name(h)] = value_subj_[h];
  }
  for (const auto& [prop, bits] : valuation_) {
    std::vector<Index> ixs;
    for (int ix = 0; ix < index_count(); ++ix)
      if (bits[ix])
        ixs.push_back(Index{moment_name(index_moment_[ix]), history_name(index_history_[ix])});
    d.valuation[prop] = std::move(ixs);
  }
  return d;
}

// Spec-facing helpers.
inline const std::vector<int>& histories_through(const StitModel& m, int moment) {
  return m.histories_at(moment);
}
inline std::vector<Index> ex_ante_info_set(const StitModel& m, const std::string& agent,
                                           const Index& at) {
  int a = m.agent(agent);
  int ix = m.index_of(at);
  std::vector<Index> out;
  for (int j : m.info_set(a, ix))
    out.push_back(Index{m.moment_name(m.index_moment(j)), m.history_name(m.index_history(j))});
  return out;
}

}  // namespace stitresp

#endif  // STITRESP_MODEL_HPP
