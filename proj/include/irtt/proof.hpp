#pragma once

// Proof scripts: a tree of rule applications read from `(rule arg... sub...)`.
// Atoms are rule arguments (terms, formulas, types, names, levels), lists
// are subproofs, in the order the rule expects them.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "irtt/sexpr.hpp"

namespace irtt {

struct ProofStep {
  std::string rule;
  std::vector<std::string> args;
  std::vector<ProofStep> subproofs;
  std::size_t line = 0;
};

struct RuleShape {
  std::size_t args;       // exact count, or minimum when variadic
  bool variadic;
  std::size_t subproofs;
  const char* arg_hint;   // usage text for diagnostics
};

inline const std::map<std::string, RuleShape, std::less<>>& rule_inventory() {
  static const std::map<std::string, RuleShape, std::less<>> rules{
      {"assume", {0, false, 0, ""}},
      {"and-intro", {0, false, 2, ""}},
      {"and-elim-l", {1, false, 1, "\"B\" (the dropped right conjunct)"}},
      {"and-elim-r", {1, false, 1, "\"A\" (the dropped left conjunct)"}},
      {"or-intro-l", {0, false, 1, ""}},
      {"or-intro-r", {0, false, 1, ""}},
      {"or-elim", {1, false, 3, "\"A \\/ B\""}},
      {"imp-intro", {0, false, 1, ""}},
      {"imp-elim", {1, false, 2, "\"A\" (the antecedent)"}},
      {"false-elim", {0, false, 1, ""}},
      {"forall-intro", {1, false, 1, "eigenvariable"}},
      {"forall-elim", {2, false, 1, "\"forall x:A. phi\" \"t\""}},
      {"exists-intro", {1, false, 1, "\"t\" (the witness)"}},
      {"exists-elim", {2, false, 2, "\"exists x:A. phi\" eigenvariable"}},
      {"refl", {0, false, 0, ""}},
      {"eq-subst", {4, false, 2, "x \"A\" \"motive\" \"a = b\""}},
      {"cut", {1, false, 2, "\"A\" (the lemma)"}},
      {"axiom", {1, true, 0, "scheme params..."}},
  };
  return rules;
}

inline std::optional<RuleShape> rule_shape(std::string_view rule) {
  const auto& inv = rule_inventory();
  if (auto it = inv.find(rule); it != inv.end())
    return it->second;
  return std::nullopt;
}

/// Structural reading only; arity against the inventory is the kernel's job
/// so that the failure can name the offending step.
inline ProofStep parse_proof(const SExpr& e) {
  if (!e.is_list() || e.items.empty() || e.items[0].kind != SExpr::Kind::Symbol)
    throw SyntaxError("line " + std::to_string(e.line) +
                          ": a proof step must be a list starting with a rule name",
                      0);
  ProofStep step{e.items[0].text, {}, {}, e.line};
  for (std::size_t i = 1; i < e.items.size(); ++i) {
    const SExpr& item = e.items[i];
    if (item.is_list())
      step.subproofs.push_back(parse_proof(item));
    else if (!step.subproofs.empty())
      throw SyntaxError("line " + std::to_string(item.line) + ": argument '" +
                            item.text + "' after a subproof in '" + step.rule + "'",
                        0);
    else
      step.args.push_back(item.text);
  }
  return step;
}

inline SExpr to_sexpr(const ProofStep& step) {
  SExpr out = SExpr::list({SExpr::symbol(step.rule)});
  for (const auto& a : step.args) {
    bool plain = !a.empty();
    for (char c : a)
      if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' ||
          c == '"' || c == ';')
        plain = false;
    out.items.push_back(plain ? SExpr::symbol(a) : SExpr::string(a));
  }
  for (const auto& s : step.subproofs)
    out.items.push_back(to_sexpr(s));
  return out;
}

inline std::size_t proof_size(const ProofStep& step) {
  std::size_t n = 1;
  for (const auto& s : step.subproofs)
    n += proof_size(s);
  return n;
}

} // namespace irtt
