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

#ifndef STITRESP_IO_HPP
#define STITRESP_IO_HPP

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "stitresp/harness.hpp"
#include "stitresp/kripke.hpp"
#include "stitresp/model.hpp"
#include "stitresp/responsibility.hpp"

namespace stitresp {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Model descriptions as JSON. Branching-time models carry a "moments" array,
// relational models a "worlds" array; the loader keys on that.
// ---------------------------------------------------------------------------

inline json to_json(const StitModelDesc& d) {
  json j;
  j["mode"] = d.mode == ValueMode::Dual ? "dual" : "single";
  j["agents"] = d.agents;
  j["moments"] = json::array();
  for (const auto& mo : d.moments) {
    json e;
    e["id"] = mo.id;
    if (mo.parent.empty())
      e["parent"] = nullptr;
    else
      e["parent"] = mo.parent;
    j["moments"].push_back(e);
  }
  j["choices"] = json::array();
  for (const auto& c : d.choices)
    j["choices"].push_back({{"agent", c.agent}, {"moment", c.moment}, {"cells", c.cells}});
  j["epistemic"] = json::array();
  for (const auto& e : d.epistemic) {
    json pairs = json::array();
    for (const auto& pr : e.pairs) pairs.push_back({pr.first.str(), pr.second.str()});
    j["epistemic"].push_back({{"agent", e.agent}, {"pairs", pairs}});
  }
  j["topologies"] = json::array();
  for (const auto& t : d.topologies) {
    json opens = json::array();
    for (const auto& open : t.opens) {
      json o = json::array();
      for (const auto& ix : open) o.push_back(ix.str());
      opens.push_back(o);
    }
    j["topologies"].push_back({{"agent", t.agent}, {"at", t.at.str()}, {"opens", opens}});
  }
  j["values"] = d.value_objective;
  if (d.mode == ValueMode::Dual) j["valuesSubjective"] = d.value_subjective;
  j["valuation"] = json::object();
  for (const auto& [prop, ixs] : d.valuation) {
    json list = json::array();
    for (const auto& ix : ixs) list.push_back(ix.str());
    j["valuation"][prop] = list;
  }
  return j;
}

inline json to_json(const KripkeModelDesc& d) {
  json j;
  j["mode"] = d.mode == ValueMode::Dual ? "dual" : "single";
  j["agents"] = d.agents;
  j["worlds"] = d.worlds;
  j["classes"] = d.classes;
  j["choices"] = json::array();
  for (const auto& c : d.choices)
    j["choices"].push_back({{"agent", c.agent}, {"class", c.cls}, {"cells", c.cells}});
  j["epistemic"] = json::array();
  for (const auto& e : d.epistemic) {
    json pairs = json::array();
    for (const auto& pr : e.pairs) pairs.push_back({pr.first, pr.second});
    j["epistemic"].push_back({{"agent", e.agent}, {"pairs", pairs}});
  }
  j["intention"] = json::array();
  for (const auto& e : d.intention) {
    json pairs = json::array();
    for (const auto& pr : e.pairs) pairs.push_back({pr.first, pr.second});
    j["intention"].push_back({{"agent", e.agent}, {"pairs", pairs}});
  }
  j["values"] = d.value_objective;
  if (d.mode == ValueMode::Dual) j["valuesSubjective"] = d.value_subjective;
  j["valuation"] = d.valuation;
  return j;
}

namespace detail {

inline ValueMode mode_from_json(const json& j) {
  std::string mode = j.value("mode", "single");
  if (mode == "single") return ValueMode::Single;
  if (mode == "dual") return ValueMode::Dual;
  throw Error("unknown mode '" + mode + "' (expected \"single\" or \"dual\")");
}

inline std::map<std::string, double> values_from_json(const json& j, const char* key) {
  std::map<std::string, double> out;
  if (!j.contains(key)) return out;
  for (const auto& [k, v] : j.at(key).items()) out[k] = v.get<double>();
  return out;
}

}  // namespace detail

inline StitModelDesc stit_desc_from_json(const json& j) {
  StitModelDesc d;
  d.mode = detail::mode_from_json(j);
  d.agents = j.value("agents", std::vector<std::string>{});
  for (const auto& e : j.value("moments", json::array())) {
    MomentDesc mo;
    mo.id = e.at("id").get<std::string>();
    if (e.contains("parent") && !e.at("parent").is_null())
      mo.parent = e.at("parent").get<std::string>();
    d.moments.push_back(std::move(mo));
  }
  for (const auto& e : j.value("choices", json::array())) {
    ChoiceDesc c;
    c.agent = e.at("agent").get<std::string>();
    c.moment = e.at("moment").get<std::string>();
    c.cells = e.at("cells").get<std::vector<std::vector<std::string>>>();
    d.choices.push_back(std::move(c));
  }
  for (const auto& e : j.value("epistemic", json::array())) {
    EpistemicDesc ep;
    ep.agent = e.at("agent").get<std::string>();
    for (const auto& pr : e.at("pairs"))
      ep.pairs.push_back({parse_index(pr.at(0).get<std::string>()),
                          parse_index(pr.at(1).get<std::string>())});
    d.epistemic.push_back(std::move(ep));
  }
  for (const auto& e : j.value("topologies", json::array())) {
    TopologyDesc t;
    t.agent = e.at("agent").get<std::string>();
    t.at = parse_index(e.at("at").get<std::string>());
    for (const auto& open : e.at("opens")) {
      std::vector<Index> o;
      for (const auto& ix : open) o.push_back(parse_index(ix.get<std::string>()));
      t.opens.push_back(std::move(o));
    }
    d.topologies.push_back(std::move(t));
  }
  d.value_objective = detail::values_from_json(j, "values");
  d.value_subjective = detail::values_from_json(j, "valuesSubjective");
  if (j.contains("valuation")) {
    // j.at returns a reference; chaining .items() off j.value would leave the
    // proxy pointing at a dead temporary.
    for (const auto& [prop, list] : j.at("valuation").items()) {
      std::vector<Index> ixs;
      for (const auto& ix : list) ixs.push_back(parse_index(ix.get<std::string>()));
      d.valuation[prop] = std::move(ixs);
    }
  }
  return d;
}

inline KripkeModelDesc kripke_desc_from_json(const json& j) {
  KripkeModelDesc d;
  d.mode = detail::mode_from_json(j);
  d.agents = j.value("agents", std::vector<std::string>{});
  d.worlds = j.value("worlds", std::vector<std::string>{});
  d.classes = j.value("classes", std::vector<std::vector<std::string>>{});
  for (const auto& e : j.value("choices", json::array())) {
    KripkeChoiceDesc c;
    c.agent = e.at("agent").get<std::string>();
    c.cls = e.at("class").get<std::string>();
    c.cells = e.at("cells").get<std::vector<std::vector<std::string>>>();
    d.choices.push_back(std::move(c));
  }
  for (const auto& e : j.value("epistemic", json::array())) {
    KripkeEpistemicDesc ep;
    ep.agent = e.at("agent").get<std::string>();
    for (const auto& pr : e.at("pairs"))
      ep.pairs.push_back({pr.at(0).get<std::string>(), pr.at(1).get<std::string>()});
    d.epistemic.push_back(std::move(ep));
  }
  for (const auto& e : j.value("intention", json::array())) {
    KripkeIntentionDesc in;
    in.agent = e.at("agent").get<std::string>();
    for (const auto& pr : e.at("pairs"))
      in.pairs.push_back({pr.at(0).get<std::string>(), pr.at(1).get<std::string>()});
    d.intention.push_back(std::move(in));
  }
  d.value_objective = detail::values_from_json(j, "values");
  d.value_subjective = detail::values_from_json(j, "valuesSubjective");
  if (j.contains("valuation"))
    for (const auto& [prop, list] : j.at("valuation").items())
      d.valuation[prop] = list.get<std::vector<std::string>>();
  return d;
}

// ---------------------------------------------------------------------------
// File loading. Errors carry the source (file or tag) plus the underlying
// JSON parse position or field complaint.
// ---------------------------------------------------------------------------

enum class ModelKind { Stit, Kripke };

struct LoadedModel {
  ModelKind kind = ModelKind::Stit;
  std::optional<StitModelDesc> stit;
  std::optional<KripkeModelDesc> kripke;
};

inline LoadedModel load_model_text(const std::string& text, const std::string& origin = "input") {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(origin + ": " + e.what());
  }
  LoadedModel out;
  try {
    if (j.contains("worlds")) {
      out.kind = ModelKind::Kripke;
      out.kripke = kripke_desc_from_json(j);
    } else if (j.contains("moments")) {
      out.kind = ModelKind::Stit;
      out.stit = stit_desc_from_json(j);
    } else {
      throw Error("neither \"moments\" nor \"worlds\" present");
    }
  } catch (const json::exception& e) {
    throw Error(origin + ": " + e.what());
  } catch (const Error& e) {
    throw Error(origin + ": " + e.what());
  }
  return out;
}

inline LoadedModel load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_model_text(buf.str(), path);
}

inline void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// Report serialization.
// ---------------------------------------------------------------------------

inline json to_json(const ValidationReport& rep) {
  json j;
  j["ok"] = rep.ok();
  j["fatal"] = json::array();
  for (const auto& v : rep.fatal) j["fatal"].push_back({{"condition", v.condition}, {"detail", v.detail}});
  j["violations"] = json::array();
  for (const auto& v : rep.violations)
    j["violations"].push_back({{"condition", v.condition}, {"detail", v.detail}});
  return j;
}

inline json to_json(const ResponsibilityVerdict& v) {
  json j;
  j["agent"] = v.agent;
  j["formula"] = v.formula;
  j["at"] = v.at.str();
  const char* cats[] = {"causal", "informational", "motivational"};
  const char* forms[] = {"active", "passive"};
  for (int c = 0; c < 3; ++c)
    for (int f = 0; f < 2; ++f) {
      j["holdsFor"][cats[c]][forms[f]] = v.holds_for[c][f];
      j["holdsAgainst"][cats[c]][forms[f]] = v.holds_against[c][f];
    }
  j["degreeActive"] = v.degree_active ? json(to_string(*v.degree_active)) : json(nullptr);
  j["degreePassive"] = v.degree_passive ? json(to_string(*v.degree_passive)) : json(nullptr);
  j["level"] = v.context.level;
  j["obligatesNegation"] = v.context.obligates_negation;
  j["attitude"] = to_string(v.attitude);
  return j;
}

inline json to_json(const SoundnessReport& rep) {
  json j;
  j["ok"] = rep.ok();
  j["models"] = rep.models;
  j["invalidModels"] = rep.badModels;
  j["totalCounterexamples"] = rep.counterexamples();
  j["schemata"] = json::array();
  for (const auto& s : rep.schemata) {
    json e;
    e["name"] = s.schema;
    e["instances"] = s.instances;
    e["points"] = s.points;
    e["counterexamples"] = s.counterexamples;
    e["firstWitness"] = s.firstWitness;
    j["schemata"].push_back(e);
  }
  return j;
}

inline json to_json(const CorrespondenceReport& rep) {
  json j;
  j["ok"] = rep.ok();
  j["points"] = rep.points;
  j["divergences"] = json::array();
  for (const auto& d : rep.divergences)
    j["divergences"].push_back({{"world", d.world},
                                {"formula", d.formula},
                                {"kripke", d.kripke},
                                {"tree", d.tree}});
  return j;
}

}  // namespace stitresp

#endif  // STITRESP_IO_HPP
