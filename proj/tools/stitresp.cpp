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

// Command-line surface. Text reports end with a single RESULT line machines
// can grep; --json swaps in the machine-readable documents from io.hpp.
// Exit codes: 0 valid/true/clean, 1 violations, counterexamples or a false
// check, 2 usage, file or formula errors.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stitresp/io.hpp"

namespace {

using namespace stitresp;

// Prints the report and claims the invocation when the model is not clean.
bool report_invalid(const ValidationReport& rep, bool as_json) {
  if (rep.ok()) return false;
  if (as_json)
    std::cout << to_json(rep).dump(2) << "\n";
  else
    std::cout << rep.to_text() << "RESULT: invalid model\n";
  return true;
}

int run_validate(const std::string& path, bool as_json) {
  LoadedModel lm = load_model_file(path);
  ValidationReport rep =
      lm.kind == ModelKind::Stit ? validate_stit(*lm.stit) : validate_kripke_desc(*lm.kripke);
  if (as_json) {
    std::cout << to_json(rep).dump(2) << "\n";
  } else if (rep.ok()) {
    std::cout << "RESULT: OK\n";
  } else {
    std::cout << rep.to_text();
    std::cout << "RESULT: invalid (" << rep.fatal.size() + rep.violations.size()
              << " findings)\n";
  }
  return rep.ok() ? 0 : 1;
}

int run_check(const std::string& path, const std::string& index_text,
              const std::string& formula_text, bool as_json) {
  LoadedModel lm = load_model_file(path);
  FormulaPtr f = parse(formula_text);
  bool value = false;
  std::vector<Violation> fatal;
  if (lm.kind == ModelKind::Stit) {
    if (report_invalid(validate_stit(*lm.stit), as_json)) return 1;
    auto m = StitModel::build(*lm.stit, fatal);
    value = eval(*m, parse_index(index_text), f);
  } else {
    if (report_invalid(validate_kripke_desc(*lm.kripke), as_json)) return 1;
    auto km = KripkeModel::build(*lm.kripke, fatal);
    KripkeEvaluator ev(*km);
    value = ev.eval(km->world(index_text), f);
  }
  if (as_json)
    std::cout << json{{"formula", print(f)}, {"at", index_text}, {"result", value}}.dump(2)
              << "\n";
  else
    std::cout << print(f) << " at " << index_text << ": " << (value ? "true" : "false") << "\n"
              << "RESULT: " << (value ? "true" : "false") << "\n";
  return value ? 0 : 1;
}

int run_classify(const std::string& path, const std::string& agent,
                 const std::string& formula_text, const std::string& index_text, bool as_json) {
  LoadedModel lm = load_model_file(path);
  if (lm.kind != ModelKind::Stit)
    throw Error("classify expects a branching-time model; run unravel first");
  FormulaPtr phi = parse(formula_text);
  if (report_invalid(validate_stit(*lm.stit), as_json)) return 1;
  std::vector<Violation> fatal;
  auto m = StitModel::build(*lm.stit, fatal);
  m->agent(agent);
  Evaluator ev(*m);
  std::vector<ResponsibilityVerdict> verdicts;
  if (!index_text.empty()) {
    verdicts.push_back(classify(ev, parse_index(index_text), agent, phi));
  } else {
    for (int ix = 0; ix < m->index_count(); ++ix)
      verdicts.push_back(classify(ev, parse_index(m->index_name(ix)), agent, phi));
  }
  if (as_json) {
    json arr = json::array();
    for (const auto& v : verdicts) arr.push_back(to_json(v));
    std::cout << arr.dump(2) << "\n";
  } else {
    for (const auto& v : verdicts) std::cout << to_text(v);
    if (verdicts.size() == 1)
      std::cout << "RESULT: " << to_string(verdicts.front().attitude) << "\n";
    else
      std::cout << "RESULT: " << verdicts.size() << " verdicts\n";
  }
  return 0;
}

int run_soundness(std::uint64_t seed, int trials, int instances, int depth,
                  const std::string& mode, bool conso, bool as_json) {
  SoundnessParams sp;
  sp.seed = seed;
  sp.trials = trials;
  sp.instances = instances;
  sp.formulaDepth = depth;
  sp.mode = mode == "dual" ? ValueMode::Dual : ValueMode::Single;
  sp.includeConso = conso;
  SoundnessReport rep = soundness_suite(sp);
  bool clean = rep.badModels == 0 && rep.counterexamples() == 0;
  if (as_json)
    std::cout << to_json(rep).dump(2) << "\n";
  else
    std::cout << rep.to_text() << "RESULT: "
              << (clean ? "sound" : std::to_string(rep.counterexamples()) + " counterexamples")
              << "\n";
  return clean ? 0 : 1;
}

int run_unravel(const std::string& path, const std::string& out, bool as_json) {
  LoadedModel lm = load_model_file(path);
  if (lm.kind != ModelKind::Kripke) throw Error("unravel expects a relational model");
  if (report_invalid(validate_kripke_desc(*lm.kripke), as_json)) return 1;
  std::vector<Violation> fatal;
  auto km = KripkeModel::build(*lm.kripke, fatal);
  UnravelResult u = unravel(*km);
  save_json_file(out, to_json(u.desc));
  if (as_json) {
    json emb = json::object();
    for (const auto& [w, ix] : u.embedding) emb[w] = ix.str();
    std::cout << json{{"out", out}, {"embedding", emb}}.dump(2) << "\n";
  } else {
    for (const auto& [w, ix] : u.embedding) std::cout << w << " -> " << ix.str() << "\n";
    std::cout << "RESULT: wrote " << out << "\n";
  }
  return 0;
}

int run_correspond(const std::string& path, const std::vector<std::string>& formula_texts,
                   std::uint64_t seed, int depth, int instances, bool as_json) {
  LoadedModel lm = load_model_file(path);
  if (lm.kind != ModelKind::Kripke) throw Error("correspond expects a relational model");
  if (report_invalid(validate_kripke_desc(*lm.kripke), as_json)) return 1;
  std::vector<Violation> fatal;
  auto km = KripkeModel::build(*lm.kripke, fatal);
  std::vector<FormulaPtr> fs;
  for (const auto& t : formula_texts) fs.push_back(parse(t));
  if (fs.empty()) {
    detail::Rng rng(seed);
    for (int i = 0; i < instances; ++i)
      fs.push_back(gen_random_formula(rng, depth, {"p", "q"}, lm.kripke->agents));
  }
  CorrespondenceReport rep = correspondence_check(*km, fs);
  if (as_json) {
    std::cout << to_json(rep).dump(2) << "\n";
  } else {
    for (const auto& d : rep.divergences)
      std::cout << "world " << d.world << ", " << d.formula << ": relational "
                << (d.kripke ? "true" : "false") << ", tree " << (d.tree ? "true" : "false")
                << "\n";
    std::cout << "RESULT: " << rep.divergences.size() << " divergences\n";
  }
  return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"model checker and responsibility classifier for epistemic act-utilitarian "
               "branching-time and relational models"};
  app.fallthrough();
  app.require_subcommand(1);

  bool as_json = false;
  app.add_flag("--json", as_json, "emit machine-readable reports");

  std::string model_path, index_text, formula_text, agent, out_path;
  std::vector<std::string> formula_list;
  std::uint64_t seed = 20260815;
  int trials = 500, instances = 20, depth = 2;
  std::string mode = "single";
  bool conso = true;

  CLI::App* v = app.add_subcommand("validate", "check a model file against the frame conditions");
  v->add_option("model", model_path, "model file")->required();

  CLI::App* c = app.add_subcommand("check", "evaluate a formula at an evaluation point");
  c->add_option("model", model_path, "model file")->required();
  c->add_option("index", index_text, "moment:history for tree models, world name otherwise")
      ->required();
  c->add_option("formula", formula_text, "formula text")->required();

  CLI::App* cl = app.add_subcommand("classify", "responsibility verdicts for agent and outcome");
  cl->add_option("model", model_path, "tree model file")->required();
  cl->add_option("agent", agent, "agent name")->required();
  cl->add_option("formula", formula_text, "outcome formula")->required();
  cl->add_option("index", index_text, "moment:history; all indices when omitted");

  CLI::App* s = app.add_subcommand("soundness", "randomized schema soundness suite");
  s->add_option("--seed", seed, "generator seed");
  s->add_option("--trials", trials, "random models to draw");
  s->add_option("--instances", instances, "instances per schema per model");
  s->add_option("--depth", depth, "substituted formula depth");
  s->add_option("--mode", mode, "value structure")->check(CLI::IsMember({"single", "dual"}));
  s->add_flag("--conso,!--no-conso", conso, "include the ought-consistency schema");

  CLI::App* u = app.add_subcommand("unravel", "write the tree unravelling of a relational model");
  u->add_option("model", model_path, "relational model file")->required();
  u->add_option("out", out_path, "output tree model file")->required();

  CLI::App* co = app.add_subcommand("correspond", "compare relational and unravelled truth");
  co->add_option("model", model_path, "relational model file")->required();
  co->add_option("formulas", formula_list, "formula texts (random when omitted)");
  co->add_option("--seed", seed, "generator seed");
  co->add_option("--depth", depth, "random formula depth");
  co->add_option("--instances", instances, "random formula count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (v->parsed()) return run_validate(model_path, as_json);
    if (c->parsed()) return run_check(model_path, index_text, formula_text, as_json);
    if (cl->parsed()) return run_classify(model_path, agent, formula_text, index_text, as_json);
    if (s->parsed()) return run_soundness(seed, trials, instances, depth, mode, conso, as_json);
    if (u->parsed()) return run_unravel(model_path, out_path, as_json);
    if (co->parsed())
      return run_correspond(model_path, formula_list, seed, depth, instances, as_json);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
