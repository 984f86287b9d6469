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

#ifndef STITRESP_RESPONSIBILITY_HPP
#define STITRESP_RESPONSIBILITY_HPP

#include <array>
#include <optional>
#include <string>

#include "stitresp/formula.hpp"
#include "stitresp/semantics.hpp"

namespace stitresp {

enum class Category { Causal, Informational, Motivational };
enum class Form { Active, Passive };
enum class Degree { Low, Middle, High };
enum class Attitude { Praiseworthy, Blameworthy, Neutral };

inline const char* to_string(Category c) {
  switch (c) {
    case Category::Causal: return "causal";
    case Category::Informational: return "informational";
    case Category::Motivational: return "motivational";
  }
  return "";
}
inline const char* to_string(Form f) { return f == Form::Active ? "active" : "passive"; }
inline const char* to_string(Degree d) {
  switch (d) {
    case Degree::Low: return "low";
    case Degree::Middle: return "middle";
    case Degree::High: return "high";
  }
  return "";
}
inline const char* to_string(Attitude a) {
  switch (a) {
    case Attitude::Praiseworthy: return "praiseworthy";
    case Attitude::Blameworthy: return "blameworthy";
    case Attitude::Neutral: return "neutral";
  }
  return "";
}

// The defining formula of a responsibility sub-category for `agent` and
// outcome `phi`. Conjunctions associate to the left.
inline FormulaPtr subcategory_formula(Category c, Form fo, const std::string& agent,
                                      const FormulaPtr& phi) {
  FormulaPtr does = stit(agent, phi);
  FormulaPtr avoids = stit(agent, neg(phi));
  switch (c) {
    case Category::Causal:
      return fo == Form::Active ? conj(does, diam(avoids)) : conj(phi, diam(avoids));
    case Category::Informational:
      return fo == Form::Active
                 ? conj(know(agent, does), diam(know(agent, avoids)))
                 : conj(conj(phi, know(agent, neg(avoids))), diam(know(agent, avoids)));
    case Category::Motivational:
      return fo == Form::Active
                 ? conj(conj(know(agent, does), intend(agent, does)),
                        diam(know(agent, avoids)))
                 : conj(conj(conj(phi, know(agent, neg(avoids))), intend(agent, neg(avoids))),
                        diam(know(agent, avoids)));
  }
  return nullptr;
}

inline bool check_subcategory(Evaluator& ev, const Index& at, const std::string& agent,
                              const FormulaPtr& phi, Category c, Form fo) {
  return ev.eval(at, subcategory_formula(c, fo, agent, phi));
}

// Deontic levels:
//   1: obligated both objectively and subjectively,
//   2: subjectively but not objectively,
//   3: objectively but not subjectively,
//   4: neither.
// obligates_negation records whether either ought applies to ~phi instead.
struct DeonticContext {
  int level = 4;
  bool obligates_negation = false;
};

inline DeonticContext deontic_context(Evaluator& ev, const Index& at, const std::string& agent,
                                      const FormulaPtr& phi) {
  bool ob = ev.eval(at, ought_obj(agent, phi));
  bool os = ev.eval(at, ought_subj(agent, phi));
  DeonticContext ctx;
  if (ob && os) ctx.level = 1;
  else if (!ob && os) ctx.level = 2;
  else if (ob && !os) ctx.level = 3;
  else ctx.level = 4;
  ctx.obligates_negation =
      ev.eval(at, ought_obj(agent, neg(phi))) || ev.eval(at, ought_subj(agent, neg(phi)));
  return ctx;
}

struct ResponsibilityVerdict {
  std::string agent;
  std::string formula;  // printed phi
  Index at;
  // holds_for: sub-categories with outcome phi; holds_against: with ~phi.
  // Indexed [category][form] following the enum order.
  std::array<std::array<bool, 2>, 3> holds_for{};
  std::array<std::array<bool, 2>, 3> holds_against{};
  std::optional<Degree> degree_active, degree_passive;
  DeonticContext context;
  Attitude attitude = Attitude::Neutral;

  bool any_for() const {
    for (const auto& row : holds_for)
      for (bool b : row)
        if (b) return true;
    return false;
  }
  bool any_against() const {
    for (const auto& row : holds_against)
      for (bool b : row)
        if (b) return true;
    return false;
  }
};

namespace detail {

// Degrees are exact: high needs all three categories, middle exactly the
// causal+informational pair, low the causal category alone.
inline std::optional<Degree> grade(bool causal, bool informational, bool motivational) {
  if (!causal) return std::nullopt;
  if (informational && motivational) return Degree::High;
  if (informational) return Degree::Middle;
  if (!motivational) return Degree::Low;
  return std::nullopt;  // causal+motivational without informational: no grade
}

}  // namespace detail

// Full classification of `agent` for outcome `phi` at an index: all twelve
// sub-category checks (six for phi, six for ~phi), the degree per form on
// whichever side holds, the deontic level for phi, and the resulting
// praise/blame attitude. At levels 1-3 a phi-side sub-category is praiseworthy
// and a ~phi-side one blameworthy; at level 4 the poles flip when an ought
// applies to ~phi, and otherwise nothing is owed and the attitude is neutral.
inline ResponsibilityVerdict classify(Evaluator& ev, const Index& at, const std::string& agent,
                                      const FormulaPtr& phi) {
  ResponsibilityVerdict v;
  v.agent = agent;
  v.formula = print(phi);
  v.at = at;
  FormulaPtr nphi = neg(phi);
  for (int c = 0; c < 3; ++c)
    for (int fo = 0; fo < 2; ++fo) {
      v.holds_for[c][fo] = check_subcategory(ev, at, agent, phi, static_cast<Category>(c),
                                             static_cast<Form>(fo));
      v.holds_against[c][fo] = check_subcategory(ev, at, agent, nphi, static_cast<Category>(c),
                                                 static_cast<Form>(fo));
    }
  const auto& side = v.any_for() ? v.holds_for : v.holds_against;
  if (v.any_for() || v.any_against()) {
    v.degree_active = detail::grade(side[0][0], side[1][0], side[2][0]);
    v.degree_passive = detail::grade(side[0][1], side[1][1], side[2][1]);
  }
  v.context = deontic_context(ev, at, agent, phi);
  if (v.context.level <= 3) {
    if (v.any_for()) v.attitude = Attitude::Praiseworthy;
    else if (v.any_against()) v.attitude = Attitude::Blameworthy;
  } else if (v.context.obligates_negation) {
    if (v.any_for()) v.attitude = Attitude::Blameworthy;
    else if (v.any_against()) v.attitude = Attitude::Praiseworthy;
  }
  return v;
}

inline ResponsibilityVerdict classify(const StitModel& m, const Index& at,
                                      const std::string& agent, const FormulaPtr& phi) {
  Evaluator ev(m);
  return classify(ev, at, agent, phi);
}

inline std::string to_text(const ResponsibilityVerdict& v) {
  std::string out = "agent " + v.agent + ", outcome " + v.formula + ", at " + v.at.str() + "\n";
  auto row = [&](const char* label, const std::array<std::array<bool, 2>, 3>& side) {
    out += std::string("  ") + label + ":";
    bool none = true;
    for (int c = 0; c < 3; ++c)
      for (int fo = 0; fo < 2; ++fo)
        if (side[c][fo]) {
          out += std::string(" ") + to_string(static_cast<Category>(c)) + "/" +
                 to_string(static_cast<Form>(fo));
          none = false;
        }
    if (none) out += " none";
    out += "\n";
  };
  row("for", v.holds_for);
  row("against", v.holds_against);
  out += "  degree: active=";
  out += v.degree_active ? to_string(*v.degree_active) : "none";
  out += " passive=";
  out += v.degree_passive ? to_string(*v.degree_passive) : "none";
  out += "\n  deontic level: " + std::to_string(v.context.level) +
         (v.context.obligates_negation ? " (negation obligated)" : "") + "\n";
  out += std::string("  attitude: ") + to_string(v.attitude) + "\n";
  return out;
}

}  // namespace stitresp

#endif  // STITRESP_RESPONSIBILITY_HPP
