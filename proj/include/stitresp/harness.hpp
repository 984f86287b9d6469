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

#ifndef STITRESP_HARNESS_HPP
#define STITRESP_HARNESS_HPP

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "stitresp/formula.hpp"
#include "stitresp/kripke.hpp"
#include "stitresp/model.hpp"
#include "stitresp/semantics.hpp"
#include "stitresp/validate.hpp"

namespace stitresp {

namespace detail {

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Deterministic helpers on top of the engine; the engine's raw output is
// stable across platforms, the distribution adapters are not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t raw() { return eng_(); }
  int below(int n) { return n <= 1 ? 0 : static_cast<int>(raw() % static_cast<unsigned>(n)); }
  bool chance_percent(int p) { return below(100) < p; }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[below(static_cast<int>(v.size()))];
  }
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (int i = static_cast<int>(v.size()) - 1; i > 0; --i)
      std::swap(v[i], v[below(i + 1)]);
  }

 private:
  std::mt19937_64 eng_;
};

inline int env_threads() {
  const char* s = std::getenv("STITRESP_THREADS");
  if (!s) return 1;
  int n = std::atoi(s);
  if (n < 1) return 1;
  return n > 64 ? 64 : n;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Axiom schemata. Each takes two metavariable fill-ins and a non-empty agent
// list; schemata that need fewer ignore the rest. The two-agent independence
// schema degrades to its one-conjunct form on single-agent vocabularies.
// ---------------------------------------------------------------------------

struct Schema {
  std::string name;
  std::function<FormulaPtr(const FormulaPtr&, const FormulaPtr&,
                           const std::vector<std::string>&)>
      make;
};

inline const std::vector<Schema>& schemata_lambda_r() {
  using F = const FormulaPtr&;
  using A = const std::vector<std::string>&;
  static const std::vector<Schema> table = [] {
    std::vector<Schema> t;
    auto add = [&](const char* n, auto fn) { t.push_back({n, fn}); };

    add("SET", [](F f, F, A ag) { return impl(box(f), stit(ag[0], f)); });
    add("IA", [](F f, F g, A ag) {
      if (ag.size() < 2) return impl(diam(stit(ag[0], f)), diam(stit(ag[0], f)));
      return impl(conj(diam(stit(ag[0], f)), diam(stit(ag[1], g))),
                  diam(conj(stit(ag[0], f), stit(ag[1], g))));
    });
    add("OAC", [](F f, F, A ag) { return impl(know(ag[0], f), stit(ag[0], f)); });
    add("Unif-H", [](F f, F, A ag) { return impl(diam(know(ag[0], f)), know(ag[0], diam(f))); });
    add("A1", [](F f, F g, A ag) {
      return impl(ought_obj(ag[0], impl(f, g)),
                  impl(ought_obj(ag[0], f), ought_obj(ag[0], g)));
    });
    add("A2", [](F f, F, A ag) { return impl(box(f), ought_obj(ag[0], f)); });
    add("A3", [](F f, F, A ag) { return impl(ought_obj(ag[0], f), box(ought_obj(ag[0], f))); });
    add("A4", [](F f, F, A ag) {
      return impl(ought_obj(ag[0], f), ought_obj(ag[0], stit(ag[0], f)));
    });
    add("Oic", [](F f, F, A ag) { return impl(ought_obj(ag[0], f), diam(stit(ag[0], f))); });
    add("A5", [](F f, F g, A ag) {
      return impl(ought_subj(ag[0], impl(f, g)),
                  impl(ought_subj(ag[0], f), ought_subj(ag[0], g)));
    });
    add("A6", [](F f, F, A ag) {
      return impl(ought_subj(ag[0], f), ought_subj(ag[0], know(ag[0], f)));
    });
    add("SuN", [](F f, F, A ag) { return impl(know(ag[0], box(f)), ought_subj(ag[0], f)); });
    add("s.Oic", [](F f, F, A ag) { return impl(ought_subj(ag[0], f), diam(know(ag[0], f))); });
    add("s.Cl", [](F f, F, A ag) {
      return impl(ought_subj(ag[0], f), know(ag[0], box(ought_subj(ag[0], f))));
    });
    add("ConSO", [](F f, F, A ag) {
      return impl(ought_subj(ag[0], f), neg(ought_obj(ag[0], neg(f))));
    });
    add("InN", [](F f, F, A ag) { return impl(box(know(ag[0], f)), intend(ag[0], f)); });
    add("KI", [](F f, F, A ag) {
      return impl(intend(ag[0], f), box(know(ag[0], intend(ag[0], f))));
    });

    struct Wrap {
      const char* tag;
      std::function<FormulaPtr(const std::string&, const FormulaPtr&)> w;
    };
    std::vector<Wrap> wraps = {
        {"box", [](const std::string&, const FormulaPtr& f) { return box(f); }},
        {"stit", [](const std::string& a, const FormulaPtr& f) { return stit(a, f); }},
        {"know", [](const std::string& a, const FormulaPtr& f) { return know(a, f); }},
    };
    for (const auto& wr : wraps) {
      auto w = wr.w;
      add((std::string("K-") + wr.tag).c_str(), nullptr);
      t.back().make = [w](F f, F g, A ag) {
        return impl(w(ag[0], impl(f, g)), impl(w(ag[0], f), w(ag[0], g)));
      };
      add((std::string("T-") + wr.tag).c_str(), nullptr);
      t.back().make = [w](F f, F, A ag) { return impl(w(ag[0], f), f); };
      add((std::string("4-") + wr.tag).c_str(), nullptr);
      t.back().make = [w](F f, F, A ag) { return impl(w(ag[0], f), w(ag[0], w(ag[0], f))); };
      add((std::string("5-") + wr.tag).c_str(), nullptr);
      t.back().make = [w](F f, F, A ag) {
        return impl(neg(w(ag[0], f)), w(ag[0], neg(w(ag[0], f))));
      };
    }
    add("K-intend", [](F f, F g, A ag) {
      return impl(intend(ag[0], impl(f, g)), impl(intend(ag[0], f), intend(ag[0], g)));
    });
    add("D-intend", [](F f, F, A ag) {
      return impl(intend(ag[0], f), neg(intend(ag[0], neg(f))));
    });
    return t;
  }();
  return table;
}

// Λ_R with or without the single-valued consistency schema (ConSO).
inline std::vector<Schema> schemata(bool include_conso) {
  std::vector<Schema> out;
  for (const auto& s : schemata_lambda_r())
    if (include_conso || s.name != "ConSO") out.push_back(s);
  return out;
}

// ---------------------------------------------------------------------------
// Random formulas and random valid Kripke models.
// ---------------------------------------------------------------------------

inline FormulaPtr gen_random_formula(detail::Rng& rng, int depth,
                                     const std::vector<std::string>& props,
                                     const std::vector<std::string>& agents) {
  if (depth <= 0) return atom(rng.pick(props));
  switch (rng.below(12)) {
    case 0:
      return atom(rng.pick(props));
    case 1:
    case 2:
      return neg(gen_random_formula(rng, depth - 1, props, agents));
    case 3:
      return conj(gen_random_formula(rng, depth - 1, props, agents),
                  gen_random_formula(rng, depth - 1, props, agents));
    case 4:
      return disj(gen_random_formula(rng, depth - 1, props, agents),
                  gen_random_formula(rng, depth - 1, props, agents));
    case 5:
      return impl(gen_random_formula(rng, depth - 1, props, agents),
                  gen_random_formula(rng, depth - 1, props, agents));
    case 6:
      return box(gen_random_formula(rng, depth - 1, props, agents));
    case 7:
      return diam(gen_random_formula(rng, depth - 1, props, agents));
    case 8:
      return stit(rng.pick(agents), gen_random_formula(rng, depth - 1, props, agents));
    case 9:
      return know(rng.pick(agents), gen_random_formula(rng, depth - 1, props, agents));
    case 10:
      return intend(rng.pick(agents), gen_random_formula(rng, depth - 1, props, agents));
    default:
      return rng.chance_percent(50)
                 ? ought_obj(rng.pick(agents), gen_random_formula(rng, depth - 1, props, agents))
                 : ought_subj(rng.pick(agents),
                              gen_random_formula(rng, depth - 1, props, agents));
  }
}

struct GenParams {
  std::uint64_t seed = 1;
  int classes = 2;
  int worldsPerClass = 3;  // upper bound per class
  int agents = 2;          // 1..3
  ValueMode mode = ValueMode::Single;
  std::vector<std::string> props = {"p", "q"};
};

// Builds a model that satisfies every frame condition by construction:
// choice cells come from a product grid (so selections always intersect), the
// epistemic relation starts from the cells and is repaired until linked
// classes cover each other, and the intention relation points every member of
// an information set at one common cluster.
inline KripkeModelDesc gen_random_kripke(const GenParams& params) {
  detail::Rng rng(params.seed);
  int ncls = params.classes < 1 ? 1 : (params.classes > 6 ? 6 : params.classes);
  int maxw = params.worldsPerClass < 1 ? 1 : (params.worldsPerClass > 6 ? 6 : params.worldsPerClass);
  int na = params.agents < 1 ? 1 : (params.agents > 3 ? 3 : params.agents);
  static const std::vector<std::string> agent_pool = {"a", "b", "c"};

  KripkeModelDesc d;
  d.mode = params.mode;
  for (int a = 0; a < na; ++a) d.agents.push_back(agent_pool[a]);

  std::vector<std::vector<int>> classes;
  int next = 0;
  for (int c = 0; c < ncls; ++c) {
    int size = 1 + rng.below(maxw);
    std::vector<int> members;
    for (int k = 0; k < size; ++k) members.push_back(next++);
    classes.push_back(std::move(members));
  }
  int nw = next;
  auto wname = [](int w) { return "w" + std::to_string(w + 1); };
  for (int w = 0; w < nw; ++w) d.worlds.push_back(wname(w));
  for (const auto& cls : classes) {
    std::vector<std::string> names;
    for (int w : cls) names.push_back(wname(w));
    d.classes.push_back(std::move(names));
  }

  // Product-grid choices: cell counts with product <= class size, worlds
  // labelled by mixed-radix digits so every combination is realized.
  std::vector<std::vector<std::vector<int>>> cell_of_class(ncls);  // [class][agent] -> cell per local world
  std::vector<std::vector<int>> counts(ncls, std::vector<int>(na, 1));
  for (int c = 0; c < ncls; ++c) {
    int size = static_cast<int>(classes[c].size());
    int product = 1;
    for (int round = 0; round < 2 * na; ++round) {
      int a = rng.below(na);
      if (product / counts[c][a] * (counts[c][a] + 1) <= size && rng.chance_percent(60)) {
        product = product / counts[c][a] * (counts[c][a] + 1);
        counts[c][a]++;
      }
    }
    std::vector<int> order(classes[c].begin(), classes[c].end());
    rng.shuffle(order);
    cell_of_class[c].assign(na, std::vector<int>(nw, -1));
    for (int i = 0; i < size; ++i) {
      int code = i % product;
      for (int a = 0; a < na; ++a) {
        cell_of_class[c][a][order[i]] = code % counts[c][a];
        code /= counts[c][a];
      }
    }
    for (int a = 0; a < na; ++a) {
      if (counts[c][a] == 1) continue;
      KripkeChoiceDesc ch;
      ch.agent = d.agents[a];
      ch.cls = wname(classes[c][0]);
      ch.cells.assign(counts[c][a], {});
      for (int w : classes[c]) ch.cells[cell_of_class[c][a][w]].push_back(wname(w));
      d.choices.push_back(std::move(ch));
    }
  }
  std::vector<int> class_of(nw);
  for (int c = 0; c < ncls; ++c)
    for (int w : classes[c]) class_of[w] = c;

  // Epistemics: own cells, some random cross links, then cover repair.
  for (int a = 0; a < na; ++a) {
    detail::UnionFind uf(nw);
    std::vector<std::pair<int, int>> gens;
    auto unite = [&](int v, int u) {
      uf.unite(v, u);
      gens.push_back({v, u});
    };
    for (int c = 0; c < ncls; ++c) {
      std::vector<std::vector<int>> cells(counts[c][a]);
      for (int w : classes[c]) cells[cell_of_class[c][a][w]].push_back(w);
      for (const auto& cell : cells)
        for (std::size_t k = 1; k < cell.size(); ++k) unite(cell[0], cell[k]);
    }
    int links = rng.below(ncls + 1);
    for (int k = 0; k < links && nw > 1; ++k) {
      int v = rng.below(nw), u = rng.below(nw);
      if (v != u) unite(v, u);
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (int v = 0; v < nw && !changed; ++v)
        for (int u = 0; u < nw && !changed; ++u) {
          if (uf.find(v) != uf.find(u)) continue;
          // Classes of v and u are linked, so every world of v's class needs
          // a related partner in u's class. Each repair merges two distinct
          // components, so the loop runs out after at most nw-1 unions.
          int d2 = class_of[u];
          for (int x : classes[class_of[v]]) {
            bool covered = false;
            for (int y : classes[d2])
              if (uf.find(x) == uf.find(y)) {
                covered = true;
                break;
              }
            if (!covered) {
              unite(x, classes[d2][rng.below(static_cast<int>(classes[d2].size()))]);
              changed = true;
              break;
            }
          }
        }
    }
    KripkeEpistemicDesc e;
    e.agent = d.agents[a];
    for (const auto& [v, u] : gens) e.pairs.push_back({wname(v), wname(u)});
    d.epistemic.push_back(std::move(e));

    // Intentions: one common target cluster per information set.
    std::vector<std::vector<int>> pis;
    std::vector<int> pi_of(nw, -1);
    for (int v = 0; v < nw; ++v) {
      if (pi_of[v] >= 0) continue;
      std::set<int> acc;
      for (int u = 0; u < nw; ++u)
        if (uf.find(u) == uf.find(v))
          for (int x : classes[class_of[u]]) acc.insert(x);
      std::vector<int> pi(acc.begin(), acc.end());
      for (int x : pi) pi_of[x] = static_cast<int>(pis.size());
      pis.push_back(std::move(pi));
    }
    KripkeIntentionDesc in;
    in.agent = d.agents[a];
    for (const auto& pi : pis) {
      std::vector<int> pool = pi;
      rng.shuffle(pool);
      int core = 1 + rng.below(std::min<int>(2, static_cast<int>(pool.size())));
      for (int x : pi)
        for (int k = 0; k < core; ++k) in.pairs.push_back({wname(x), wname(pool[k])});
    }
    d.intention.push_back(std::move(in));
  }
  for (int w = 0; w < nw; ++w) {
    d.value_objective[wname(w)] = rng.below(5);
    if (params.mode == ValueMode::Dual) d.value_subjective[wname(w)] = rng.below(5);
  }
  for (const auto& prop : params.props) {
    std::vector<std::string> where;
    for (int w = 0; w < nw; ++w)
      if (rng.chance_percent(50)) where.push_back(wname(w));
    d.valuation[prop] = std::move(where);
  }
  return d;
}

// ---------------------------------------------------------------------------
// Soundness suite: random models, random instances, evaluation at every
// world of the Kripke model and every index of its unravelling.
// ---------------------------------------------------------------------------

struct SoundnessParams {
  std::uint64_t seed = 20260815;
  int trials = 500;
  int instances = 20;  // per schema per model
  int formulaDepth = 2;
  ValueMode mode = ValueMode::Single;
  bool includeConso = true;
  int threads = 0;  // 0: STITRESP_THREADS, default 1
  int maxClasses = 3;
  int maxWorldsPerClass = 3;
  int maxAgents = 2;
};

struct SchemaReport {
  std::string schema;
  long instances = 0;
  long points = 0;
  long counterexamples = 0;
  std::string firstWitness;
};

struct SoundnessReport {
  long models = 0;
  long badModels = 0;  // generated models failing validation (expected 0)
  std::vector<SchemaReport> schemata;
  long counterexamples() const {
    long n = 0;
    for (const auto& s : schemata) n += s.counterexamples;
    return n;
  }
  bool ok() const { return badModels == 0 && counterexamples() == 0; }
  std::string to_text() const {
    std::ostringstream os;
    os << "models: " << models << " (invalid: " << badModels << ")\n";
    for (const auto& s : schemata) {
      os << s.schema << ": " << s.instances << " instances, " << s.points << " points, "
         << s.counterexamples << " counterexamples";
      if (!s.firstWitness.empty()) os << "  [" << s.firstWitness << "]";
      os << "\n";
    }
    os << "total counterexamples: " << counterexamples() << "\n";
    return os.str();
  }
};

namespace detail {

struct TrialOutcome {
  bool invalid = false;
  std::vector<long> instances, points, counterexamples;
  std::vector<std::string> firstWitness;
};

inline TrialOutcome run_soundness_trial(const SoundnessParams& sp,
                                        const std::vector<Schema>& table, int trial) {
  TrialOutcome out;
  std::size_t ns = table.size();
  out.instances.assign(ns, 0);
  out.points.assign(ns, 0);
  out.counterexamples.assign(ns, 0);
  out.firstWitness.assign(ns, "");

  Rng rng(mix64(sp.seed ^ (0x5157ULL + static_cast<std::uint64_t>(trial) * 0x9E3779B97F4A7C15ULL)));
  GenParams gp;
  gp.seed = rng.raw();
  gp.classes = 1 + rng.below(sp.maxClasses);
  gp.worldsPerClass = 1 + rng.below(sp.maxWorldsPerClass);
  gp.agents = 1 + rng.below(sp.maxAgents);
  gp.mode = sp.mode;
  KripkeModelDesc kd = gen_random_kripke(gp);
  std::vector<Violation> fatal;
  auto km = KripkeModel::build(kd, fatal);
  if (!km || !validate_kripke(*km).ok()) {
    out.invalid = true;
    return out;
  }
  UnravelResult u = unravel(*km);
  std::vector<Violation> tf;
  auto tm = StitModel::build(u.desc, tf);
  if (!tm || !validate_frame(*tm).ok()) {
    out.invalid = true;
    return out;
  }

  KripkeEvaluator kev(*km);
  Evaluator tev(*tm);
  std::vector<std::string> props = {"p", "q", "r"};
  std::vector<std::string> ags = kd.agents;

  for (std::size_t si = 0; si < ns; ++si) {
    for (int inst = 0; inst < sp.instances; ++inst) {
      FormulaPtr f1 = gen_random_formula(rng, sp.formulaDepth, props, kd.agents);
      FormulaPtr f2 = gen_random_formula(rng, sp.formulaDepth, props, kd.agents);
      rng.shuffle(ags);
      FormulaPtr inst_f = table[si].make(f1, f2, ags);
      out.instances[si]++;
      const auto& ke = kev.extension(inst_f);
      for (int w = 0; w < km->world_count(); ++w) {
        out.points[si]++;
        if (!ke[w]) {
          out.counterexamples[si]++;
          if (out.firstWitness[si].empty())
            out.firstWitness[si] = "trial " + std::to_string(trial) + ", world " +
                                   km->world_name(w) + ": " + print(inst_f);
        }
      }
      const auto& te = tev.extension(inst_f);
      for (int ix = 0; ix < tm->index_count(); ++ix) {
        out.points[si]++;
        if (!te[ix]) {
          out.counterexamples[si]++;
          if (out.firstWitness[si].empty())
            out.firstWitness[si] = "trial " + std::to_string(trial) + ", tree index " +
                                   tm->index_name(ix) + ": " + print(inst_f);
        }
      }
    }
  }
  return out;
}

}  // namespace detail

inline SoundnessReport soundness_suite(const SoundnessParams& params) {
  std::vector<Schema> table = schemata(params.includeConso);
  int trials = params.trials < 0 ? 0 : params.trials;
  int nthreads = params.threads > 0 ? params.threads : detail::env_threads();
  if (nthreads > trials && trials > 0) nthreads = trials;
  if (nthreads < 1) nthreads = 1;

  std::vector<detail::TrialOutcome> results(trials);
  std::atomic<int> cursor{0};
  auto worker = [&] {
    while (true) {
      int t = cursor.fetch_add(1);
      if (t >= trials) break;
      results[t] = detail::run_soundness_trial(params, table, t);
    }
  };
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < nthreads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  SoundnessReport rep;
  rep.models = trials;
  rep.schemata.resize(table.size());
  for (std::size_t si = 0; si < table.size(); ++si) rep.schemata[si].schema = table[si].name;
  for (int t = 0; t < trials; ++t) {
    const auto& r = results[t];
    if (r.invalid) {
      rep.badModels++;
      continue;
    }
    for (std::size_t si = 0; si < table.size(); ++si) {
      rep.schemata[si].instances += r.instances[si];
      rep.schemata[si].points += r.points[si];
      rep.schemata[si].counterexamples += r.counterexamples[si];
      if (rep.schemata[si].firstWitness.empty() && !r.firstWitness[si].empty())
        rep.schemata[si].firstWitness = r.firstWitness[si];
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Countermodel search for the consistency schema on bi-valued models.
// ---------------------------------------------------------------------------

struct ConsoWitness {
  int trial = -1;
  std::string world;
  std::string agent;
  std::string phi;  // printed; the failing instance is Os phi -> ~Ob ~phi
  KripkeModelDesc model;
};

inline std::optional<ConsoWitness> conso_countermodel_search(std::uint64_t seed, int trials,
                                                             ValueMode mode = ValueMode::Dual,
                                                             int formulaDepth = 2,
                                                             int instances = 8) {
  for (int t = 0; t < trials; ++t) {
    detail::Rng rng(detail::mix64(seed ^ (0xC0507ULL + static_cast<std::uint64_t>(t) *
                                                           0x9E3779B97F4A7C15ULL)));
    GenParams gp;
    gp.seed = rng.raw();
    gp.classes = 1 + rng.below(2);
    gp.worldsPerClass = 1 + rng.below(3);
    gp.agents = 1 + rng.below(2);
    gp.mode = mode;
    KripkeModelDesc kd = gen_random_kripke(gp);
    std::vector<Violation> fatal;
    auto km = KripkeModel::build(kd, fatal);
    if (!km || !validate_kripke(*km).ok()) continue;
    KripkeEvaluator ev(*km);
    std::vector<std::string> props = {"p", "q"};
    std::vector<FormulaPtr> pool = {neg(atom("p")), atom("p"), neg(atom("q")), atom("q")};
    for (int k = 0; k < instances; ++k)
      pool.push_back(gen_random_formula(rng, formulaDepth, props, kd.agents));
    for (const auto& phi : pool)
      for (const auto& ag : kd.agents) {
        FormulaPtr os = ought_subj(ag, phi);
        FormulaPtr ob = ought_obj(ag, neg(phi));
        for (int w = 0; w < km->world_count(); ++w)
          if (ev.eval(w, os) && ev.eval(w, ob)) {
            ConsoWitness wit;
            wit.trial = t;
            wit.world = km->world_name(w);
            wit.agent = ag;
            wit.phi = print(phi);
            wit.model = kd;
            return wit;
          }
      }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Reference evaluation: a direct, allocation-heavy transcription of the
// defining clauses, recursing per index with no memoization. Kept free of any
// code shared with Evaluator so the two can arbitrate each other.
// ---------------------------------------------------------------------------

namespace naive {

inline bool holds(const StitModel& m, int ix, const FormulaPtr& f);

namespace detail2 {

inline double hval(const StitModel& m, int h, bool subj) {
  return subj ? m.value_subj(h) : m.value_obj(h);
}

inline bool all_le(const StitModel& m, const std::vector<int>& xs, const std::vector<int>& ys,
                   bool subj) {
  for (int x : xs)
    for (int y : ys)
      if (hval(m, x, subj) > hval(m, y, subj)) return false;
  return true;
}

inline std::vector<int> common(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  for (int x : a)
    for (int y : b)
      if (x == y) out.push_back(x);
  return out;
}

inline void build_states(const StitModel& m, int mo, const std::vector<int>& others,
                         std::size_t k, std::vector<int> acc, std::vector<std::vector<int>>& out) {
  if (k == others.size()) {
    out.push_back(std::move(acc));
    return;
  }
  for (const auto& cell : m.cells(others[k], mo)) build_states(m, mo, others, k + 1, common(acc, cell), out);
}

inline std::vector<std::vector<int>> states(const StitModel& m, int agent, int mo) {
  std::vector<int> others;
  for (int a = 0; a < m.agent_count(); ++a)
    if (a != agent) others.push_back(a);
  std::vector<std::vector<int>> out;
  build_states(m, mo, others, 0, m.histories_at(mo), out);
  return out;
}

inline std::vector<int> cluster(const StitModel& m, int agent, int home, const std::vector<int>& l,
                                int target) {
  std::vector<int> out;
  for (int h2 : m.histories_at(target)) {
    bool in = false;
    for (int h : l)
      if (m.related(agent, m.index_of(home, h), m.index_of(target, h2))) {
        in = true;
        break;
      }
    if (in) out.push_back(h2);
  }
  return out;
}

inline std::vector<int> rel_moments(const StitModel& m, int agent, int mo) {
  std::vector<int> out;
  for (int m2 = 0; m2 < m.moment_count(); ++m2) {
    bool rel = false;
    for (int j : m.histories_at(mo)) {
      for (int j2 : m.histories_at(m2))
        if (m.related(agent, m.index_of(mo, j), m.index_of(m2, j2))) {
          rel = true;
          break;
        }
      if (rel) break;
    }
    if (rel) out.push_back(m2);
  }
  return out;
}

inline bool obj_le(const StitModel& m, int agent, int mo, const std::vector<int>& l1,
                   const std::vector<int>& l2) {
  for (const auto& s : states(m, agent, mo))
    if (!all_le(m, common(l1, s), common(l2, s), false)) return false;
  return true;
}

inline bool subj_le(const StitModel& m, int agent, int mo, const std::vector<int>& l1,
                    const std::vector<int>& l2) {
  for (int m2 : rel_moments(m, agent, mo)) {
    auto c1 = cluster(m, agent, mo, l1, m2);
    auto c2 = cluster(m, agent, mo, l2, m2);
    for (const auto& s : states(m, agent, m2))
      if (!all_le(m, common(c1, s), common(c2, s), true)) return false;
  }
  return true;
}

inline std::vector<std::vector<int>> best_cells(const StitModel& m, int agent, int mo,
                                                bool subjective) {
  std::vector<std::vector<int>> out;
  for (const auto& l : m.cells(agent, mo)) {
    bool dominated = false;
    for (const auto& l2 : m.cells(agent, mo)) {
      bool le12 = subjective ? subj_le(m, agent, mo, l, l2) : obj_le(m, agent, mo, l, l2);
      bool le21 = subjective ? subj_le(m, agent, mo, l2, l) : obj_le(m, agent, mo, l2, l);
      if (le12 && !le21) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(l);
  }
  return out;
}

}  // namespace detail2

inline bool holds(const StitModel& m, int ix, const FormulaPtr& f) {
  int mo = m.index_moment(ix);
  int h = m.index_history(ix);
  switch (f->op) {
    case Op::Atom:
      return m.prop_true_at(f->name, ix);
    case Op::Not:
      return !holds(m, ix, f->a);
    case Op::And:
      return holds(m, ix, f->a) && holds(m, ix, f->b);
    case Op::Box:
      for (int h2 : m.histories_at(mo))
        if (!holds(m, m.index_of(mo, h2), f->a)) return false;
      return true;
    case Op::Stit: {
      int a = m.agent(f->name);
      for (int h2 : m.cell_histories(a, mo, h))
        if (!holds(m, m.index_of(mo, h2), f->a)) return false;
      return true;
    }
    case Op::Know: {
      int a = m.agent(f->name);
      for (int jx = 0; jx < m.index_count(); ++jx)
        if (m.related(a, ix, jx) && !holds(m, jx, f->a)) return false;
      return true;
    }
    case Op::Intend: {
      int a = m.agent(f->name);
      const StitModel::Topology& t = m.topology_at(a, ix);
      for (const auto& open : t.opens) {
        if (open.empty()) continue;
        bool inside = true;
        for (int jx : open)
          if (!holds(m, jx, f->a)) {
            inside = false;
            break;
          }
        if (inside) return true;
      }
      return false;
    }
    case Op::OughtObj: {
      int a = m.agent(f->name);
      for (const auto& l : detail2::best_cells(m, a, mo, false))
        for (int h2 : l)
          if (!holds(m, m.index_of(mo, h2), f->a)) return false;
      return true;
    }
    case Op::OughtSubj: {
      int a = m.agent(f->name);
      for (const auto& l : detail2::best_cells(m, a, mo, true))
        for (int m2 : detail2::rel_moments(m, a, mo))
          for (int h2 : detail2::cluster(m, a, mo, l, m2))
            if (!holds(m, m.index_of(m2, h2), f->a)) return false;
      return true;
    }
  }
  return false;
}

}  // namespace naive

}  // namespace stitresp

#endif  // STITRESP_HARNESS_HPP
