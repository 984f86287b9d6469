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

#ifndef STITRESP_FORMULA_HPP
#define STITRESP_FORMULA_HPP

#include <cstddef>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stitresp {

// Modal language over atomic propositions with agent-indexed operators:
//   ~ (not), & (and), box (historical necessity), [a] (sees to it),
//   K a. (knows), I a. (intends), Ob a. (objective ought), Os a. (subjective ought).
// "|", "->" and "<>" are surface sugar and are expanded while parsing.
enum class Op {
  Atom,
  Not,
  And,
  Box,
  Stit,
  Know,
  Intend,
  OughtObj,
  OughtSubj,
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  Op op;
  std::string name;  // proposition for Atom, agent for the agent-indexed operators
  FormulaPtr a;      // operand, or left conjunct
  FormulaPtr b;      // right conjunct
};

inline FormulaPtr atom(std::string p) {
  return std::make_shared<Formula>(Formula{Op::Atom, std::move(p), nullptr, nullptr});
}
inline FormulaPtr neg(FormulaPtr f) {
  return std::make_shared<Formula>(Formula{Op::Not, {}, std::move(f), nullptr});
}
inline FormulaPtr conj(FormulaPtr l, FormulaPtr r) {
  return std::make_shared<Formula>(Formula{Op::And, {}, std::move(l), std::move(r)});
}
inline FormulaPtr box(FormulaPtr f) {
  return std::make_shared<Formula>(Formula{Op::Box, {}, std::move(f), nullptr});
}
inline FormulaPtr stit(std::string agent, FormulaPtr f) {
  return std::make_shared<Formula>(Formula{Op::Stit, std::move(agent), std::move(f), nullptr});
}
inline FormulaPtr know(std::string agent, FormulaPtr f) {
  return std::make_shared<Formula>(Formula{Op::Know, std::move(agent), std::move(f), nullptr});
}
inline FormulaPtr intend(std::string agent, FormulaPtr f) {
  return std::make_shared<Formula>(Formula{Op::Intend, std::move(agent), std::move(f), nullptr});
}
inline FormulaPtr ought_obj(std::string agent, FormulaPtr f) {
  return std::make_shared<Formula>(Formula{Op::OughtObj, std::move(agent), std::move(f), nullptr});
}
inline FormulaPtr ought_subj(std::string agent, FormulaPtr f) {
  return std::make_shared<Formula>(Formula{Op::OughtSubj, std::move(agent), std::move(f), nullptr});
}

// Defined connectives, expanded eagerly.
inline FormulaPtr diam(FormulaPtr f) { return neg(box(neg(std::move(f)))); }
inline FormulaPtr disj(FormulaPtr l, FormulaPtr r) {
  return neg(conj(neg(std::move(l)), neg(std::move(r))));
}
inline FormulaPtr impl(FormulaPtr l, FormulaPtr r) {
  return neg(conj(std::move(l), neg(std::move(r))));
}

inline bool equal(const FormulaPtr& f, const FormulaPtr& g) {
  if (f.get() == g.get()) return true;
  if (!f || !g) return false;
  if (f->op != g->op || f->name != g->name) return false;
  return equal(f->a, g->a) && equal(f->b, g->b);
}

// Canonical concrete syntax. parse(print(f)) reconstructs f; the diamond
// abbreviation ~box~ is folded back into "<>".
inline std::string print(const FormulaPtr& f) {
  if (f->op == Op::Not && f->a->op == Op::Box && f->a->a->op == Op::Not)
    return "<>" + print(f->a->a->a);
  switch (f->op) {
    case Op::Atom:
      return f->name;
    case Op::Not:
      if (f->a->op == Op::Atom) return "~" + f->a->name;
      if (f->a->op == Op::And) return "~" + print(f->a);
      return "~(" + print(f->a) + ")";
    case Op::And:
      return "(" + print(f->a) + " & " + print(f->b) + ")";
    case Op::Box:
      return "box " + print(f->a);
    case Op::Stit:
      return "[" + f->name + "]" + print(f->a);
    case Op::Know:
      return "K " + f->name + "." + print(f->a);
    case Op::Intend:
      return "I " + f->name + "." + print(f->a);
    case Op::OughtObj:
      return "Ob " + f->name + "." + print(f->a);
    case Op::OughtSubj:
      return "Os " + f->name + "." + print(f->a);
  }
  return {};
}

// Distinct subformulas, topologically ordered: children before parents.
inline std::vector<FormulaPtr> subformulas(const FormulaPtr& f) {
  std::vector<FormulaPtr> out;
  std::set<std::string> seen;
  auto walk = [&](auto&& self, const FormulaPtr& g) -> void {
    if (g->a) self(self, g->a);
    if (g->b) self(self, g->b);
    if (seen.insert(print(g)).second) out.push_back(g);
  };
  walk(walk, f);
  return out;
}

// Agents mentioned by agent-indexed operators, sorted and deduplicated.
inline std::vector<std::string> agents_of(const FormulaPtr& f) {
  std::set<std::string> s;
  auto walk = [&](auto&& self, const FormulaPtr& g) -> void {
    switch (g->op) {
      case Op::Stit:
      case Op::Know:
      case Op::Intend:
      case Op::OughtObj:
      case Op::OughtSubj:
        s.insert(g->name);
        break;
      default:
        break;
    }
    if (g->a) self(self, g->a);
    if (g->b) self(self, g->b);
  };
  walk(walk, f);
  return {s.begin(), s.end()};
}

struct ParseError : std::runtime_error {
  std::size_t pos;  // byte offset into the input
  ParseError(const std::string& msg, std::size_t at)
      : std::runtime_error(msg + " (at offset " + std::to_string(at) + ")"), pos(at) {}
};

namespace detail {

inline bool is_keyword(std::string_view s) {
  return s == "box" || s == "K" || s == "I" || s == "Ob" || s == "Os";
}

class FormulaParser {
 public:
  explicit FormulaParser(std::string_view text) : s_(text) {}

  FormulaPtr run() {
    FormulaPtr f = parse_implies();
    skip_ws();
    if (i_ != s_.size()) throw ParseError("unexpected trailing input", i_);
    return f;
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;

  void skip_ws() {
    while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t' || s_[i_] == '\n' || s_[i_] == '\r'))
      ++i_;
  }

  bool eat(std::string_view tok) {
    skip_ws();
    if (s_.substr(i_, tok.size()) == tok) {
      i_ += tok.size();
      return true;
    }
    return false;
  }

  static bool ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
  }
  static bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }

  // Returns the identifier starting at the cursor without consuming it.
  std::string peek_ident() {
    skip_ws();
    std::size_t j = i_;
    if (j >= s_.size() || !ident_start(s_[j])) return {};
    std::size_t k = j;
    while (k < s_.size() && ident_char(s_[k])) ++k;
    return std::string(s_.substr(j, k - j));
  }

  std::string take_ident(const char* what) {
    std::string id = peek_ident();
    if (id.empty()) throw ParseError(std::string("expected ") + what, i_);
    i_ += id.size();
    return id;
  }

  std::string take_agent() {
    skip_ws();
    std::size_t at = i_;
    std::string id = take_ident("agent name");
    if (is_keyword(id)) throw ParseError("keyword '" + id + "' cannot name an agent", at);
    return id;
  }

  FormulaPtr parse_implies() {
    FormulaPtr l = parse_or();
    if (eat("->")) return impl(std::move(l), parse_implies());
    return l;
  }

  FormulaPtr parse_or() {
    FormulaPtr l = parse_and();
    while (true) {
      skip_ws();
      // Do not confuse "|" with nothing else; there is no "||" token.
      if (i_ < s_.size() && s_[i_] == '|') {
        ++i_;
        l = disj(std::move(l), parse_and());
      } else {
        return l;
      }
    }
  }

  FormulaPtr parse_and() {
    FormulaPtr l = parse_unary();
    while (eat("&")) l = conj(std::move(l), parse_unary());
    return l;
  }

  FormulaPtr parse_unary() {
    skip_ws();
    if (eat("~")) return neg(parse_unary());
    if (eat("<>")) return diam(parse_unary());
    if (eat("[")) {
      std::string ag = take_agent();
      if (!eat("]")) throw ParseError("expected ']' after agent name", i_);
      return stit(std::move(ag), parse_unary());
    }
    std::string id = peek_ident();
    if (id == "box") {
      i_ += id.size();
      return box(parse_unary());
    }
    if (id == "K" || id == "I" || id == "Ob" || id == "Os") {
      i_ += id.size();
      std::string ag = take_agent();
      if (!eat(".")) throw ParseError("expected '.' after agent name", i_);
      FormulaPtr body = parse_unary();
      if (id == "K") return know(std::move(ag), std::move(body));
      if (id == "I") return intend(std::move(ag), std::move(body));
      if (id == "Ob") return ought_obj(std::move(ag), std::move(body));
      return ought_subj(std::move(ag), std::move(body));
    }
    return parse_primary();
  }

  FormulaPtr parse_primary() {
    skip_ws();
    if (eat("(")) {
      FormulaPtr f = parse_implies();
      if (!eat(")")) throw ParseError("expected ')'", i_);
      return f;
    }
    std::size_t at = i_;
    std::string id = peek_ident();
    if (id.empty()) throw ParseError("expected a formula", i_);
    if (is_keyword(id)) throw ParseError("keyword '" + id + "' cannot name a proposition", at);
    i_ += id.size();
    return atom(std::move(id));
  }
};

}  // namespace detail

inline FormulaPtr parse(std::string_view text) { return detail::FormulaParser(text).run(); }

}  // namespace stitresp

#endif  // STITRESP_FORMULA_HPP
