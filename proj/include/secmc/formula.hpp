/*
 * Copyright (c) 2026, the secmc authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
*/

#ifndef SECMC_FORMULA_HPP_
#define SECMC_FORMULA_HPP_

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "secmc/attack_tree.hpp"
#include "secmc/ctl.hpp"
#include "secmc/model_config.hpp"
#include "secmc/scenario.hpp"

namespace secmc {

class FormulaError : public std::runtime_error {
 public:
  FormulaError(std::size_t pos, const std::string& msg)
      : std::runtime_error("formula error at position " + std::to_string(pos) + ": " + msg) {}
  explicit FormulaError(const std::string& msg) : std::runtime_error("formula error: " + msg) {}
};

/// Parsed formula syntax; names and atom calls are resolved against a model
/// separately, so one parse can be checked against several models.
struct FormulaNode {
  enum class Kind : std::uint8_t { kName, kCall, kNot, kAnd, kOr, kEf, kAg, kEx, kAx };
  Kind kind = Kind::kName;
  std::string name;                 // kName, kCall
  std::vector<std::string> args;    // kCall
  std::vector<FormulaNode> children;
};

namespace detail {

struct FormulaLexer {
  const std::string& src;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  }
  bool at_end() {
    skip_ws();
    return pos >= src.size();
  }
  char peek() {
    skip_ws();
    return pos < src.size() ? src[pos] : '\0';
  }
  bool eat(char c) {
    skip_ws();
    if (pos < src.size() && src[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  static bool word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }
  std::string word() {
    skip_ws();
    std::size_t start = pos;
    while (pos < src.size() && word_char(src[pos])) ++pos;
    if (pos == start) throw FormulaError(pos, "expected a name");
    return src.substr(start, pos - start);
  }
  bool peek_word(const char* w) {
    skip_ws();
    std::size_t n = std::string(w).size();
    if (src.compare(pos, n, w) != 0) return false;
    return pos + n >= src.size() || !word_char(src[pos + n]);
  }
  bool eat_word(const char* w) {
    if (!peek_word(w)) return false;
    pos += std::string(w).size();
    return true;
  }
};

inline FormulaNode parse_or(FormulaLexer& lx);

inline FormulaNode parse_primary(FormulaLexer& lx) {
  if (lx.eat('(')) {
    FormulaNode f = parse_or(lx);
    if (!lx.eat(')')) throw FormulaError(lx.pos, "expected ')'");
    return f;
  }
  FormulaNode f;
  f.name = lx.word();
  if (lx.eat('(')) {
    f.kind = FormulaNode::Kind::kCall;
    if (!lx.eat(')')) {
      for (;;) {
        f.args.push_back(lx.word());
        if (lx.eat(')')) break;
        if (!lx.eat(',')) throw FormulaError(lx.pos, "expected ',' or ')'");
      }
    }
  } else {
    f.kind = FormulaNode::Kind::kName;
  }
  return f;
}

inline FormulaNode parse_unary(FormulaLexer& lx) {
  auto wrap = [&lx](FormulaNode::Kind k) {
    FormulaNode f;
    f.kind = k;
    f.children.push_back(parse_unary(lx));
    return f;
  };
  if (lx.eat_word("not")) return wrap(FormulaNode::Kind::kNot);
  if (lx.eat_word("EF")) return wrap(FormulaNode::Kind::kEf);
  if (lx.eat_word("AG")) return wrap(FormulaNode::Kind::kAg);
  if (lx.eat_word("EX")) return wrap(FormulaNode::Kind::kEx);
  if (lx.eat_word("AX")) return wrap(FormulaNode::Kind::kAx);
  return parse_primary(lx);
}

inline FormulaNode parse_and(FormulaLexer& lx) {
  FormulaNode f = parse_unary(lx);
  while (lx.eat_word("and")) {
    FormulaNode g;
    g.kind = FormulaNode::Kind::kAnd;
    g.children.push_back(std::move(f));
    g.children.push_back(parse_unary(lx));
    f = std::move(g);
  }
  return f;
}

inline FormulaNode parse_or(FormulaLexer& lx) {
  FormulaNode f = parse_and(lx);
  while (lx.eat_word("or")) {
    FormulaNode g;
    g.kind = FormulaNode::Kind::kOr;
    g.children.push_back(std::move(f));
    g.children.push_back(parse_and(lx));
    f = std::move(g);
  }
  return f;
}

}  // namespace detail

/// Parses `EF/AG/EX/AX/not/and/or` over named sets and atom calls; `not`
/// binds tighter than `and`, which binds tighter than `or`.
inline FormulaNode parse_formula(const std::string& src) {
  detail::FormulaLexer lx{src};
  FormulaNode f = detail::parse_or(lx);
  if (!lx.at_end()) throw FormulaError(lx.pos, "unexpected trailing input");
  return f;
}

/// Resolves a parsed formula against a model. Named sets and atoms that
/// reference vocabulary absent from the model raise FormulaError.
inline CtlFormula<InfraState> resolve_formula(const FormulaNode& f, const ScenarioBundle& b) {
  using F = CtlFormula<InfraState>;
  const ModelContext& ctx = *b.ctx;
  try {
    switch (f.kind) {
      case FormulaNode::Kind::kName: {
        if (f.name == "initial") {
          std::vector<InfraState> init;
          for (auto i : b.kripke.init()) init.push_back(b.kripke.state(i));
          return F::atom_of(init);
        }
        if (f.name == "all") return F::atom([](const InfraState&) { return true; });
        if (f.name == "none") return F::atom([](const InfraState&) { return false; });
        if (f.name == "shc") return F::atom(pred_shc(ctx));
        if (f.name == "hc") return F::atom(pred_at(ctx, "Eve", "cloud"));
        if (f.name == "eval_attack")
          return F::atom(pred_enables(ctx, "cloud", "Eve", Action::kEval));
        if (f.name == "put_attack") return F::atom(pred_enables(ctx, "cloud", "Eve", Action::kPut));
        if (f.name == "overwrite_attack") return F::atom(pred_overwrite_attack(ctx));
        if (f.name == "priv") return F::atom(pred_owns(ctx, "Patient", "42"));
        throw FormulaError("unknown named state set '" + f.name + "'");
      }
      case FormulaNode::Kind::kCall: {
        auto arity = [&f](std::size_t n) {
          if (f.args.size() != n)
            throw FormulaError("atom '" + f.name + "' takes " + std::to_string(n) + " arguments");
        };
        if (f.name == "at") {
          arity(2);
          return F::atom(pred_at(ctx, f.args[0], f.args[1]));
        }
        if (f.name == "enables") {
          arity(3);
          auto a = parse_action(f.args[2]);
          if (!a) throw FormulaError("unknown action '" + f.args[2] + "'");
          return F::atom(pred_enables(ctx, f.args[0], f.args[1], *a));
        }
        if (f.name == "owns") {
          arity(2);
          return F::atom(pred_owns(ctx, f.args[0], f.args[1]));
        }
        if (f.name == "datum_at") {
          arity(2);
          return F::atom(pred_datum_at(ctx, f.args[0], f.args[1]));
        }
        throw FormulaError("unknown atom '" + f.name + "'");
      }
      case FormulaNode::Kind::kNot: return F::negation(resolve_formula(f.children[0], b));
      case FormulaNode::Kind::kAnd:
        return F::conj(resolve_formula(f.children[0], b), resolve_formula(f.children[1], b));
      case FormulaNode::Kind::kOr:
        return F::disj(resolve_formula(f.children[0], b), resolve_formula(f.children[1], b));
      case FormulaNode::Kind::kEf: return F::ef(resolve_formula(f.children[0], b));
      case FormulaNode::Kind::kAg: return F::ag(resolve_formula(f.children[0], b));
      case FormulaNode::Kind::kEx: return F::ex(resolve_formula(f.children[0], b));
      case FormulaNode::Kind::kAx: return F::ax(resolve_formula(f.children[0], b));
    }
  } catch (const std::invalid_argument& e) {
    throw FormulaError(e.what());
  }
  throw FormulaError("malformed formula");
}

inline CtlFormula<InfraState> compile_formula(const std::string& src, const ScenarioBundle& b) {
  return resolve_formula(parse_formula(src), b);
}

/// Evaluates a set expression: the states of the bundle satisfying it.
inline std::vector<InfraState> eval_state_set(const std::string& src, const ScenarioBundle& b) {
  auto marks = eval_ctl(b.kripke, compile_formula(src, b));
  std::vector<InfraState> out;
  for (std::uint32_t i = 0; i < b.kripke.size(); ++i)
    if (marks[i]) out.push_back(b.kripke.state(i));
  return out;
}

/// Instantiates a tree document against a model: expression goals are
/// evaluated as state sets, index goals resolve into the canonical state
/// enumeration.
inline AttackTree<InfraState> resolve_tree_doc(const TreeDoc& doc, const ScenarioBundle& b) {
  auto resolve_states = [&b](const std::vector<std::uint32_t>& idx) {
    std::vector<InfraState> out;
    for (std::uint32_t i : idx) {
      if (i >= b.kripke.size())
        throw FormulaError("state index " + std::to_string(i) +
                           " is outside the model's state enumeration");
      out.push_back(b.kripke.state(i));
    }
    return out;
  };
  std::vector<InfraState> from =
      doc.explicit_states ? resolve_states(doc.from_states) : eval_state_set(doc.from_expr, b);
  std::vector<InfraState> to =
      doc.explicit_states ? resolve_states(doc.to_states) : eval_state_set(doc.to_expr, b);
  using Tree = AttackTree<InfraState>;
  if (doc.kind == TreeDoc::Kind::kBase) return Tree::base(std::move(from), std::move(to));
  std::vector<Tree> children;
  for (const auto& c : doc.children) children.push_back(resolve_tree_doc(c, b));
  return doc.kind == TreeDoc::Kind::kAnd
             ? Tree::and_node(std::move(children), std::move(from), std::move(to))
             : Tree::or_node(std::move(children), std::move(from), std::move(to));
}

}  // namespace secmc

#endif  // SECMC_FORMULA_HPP_
