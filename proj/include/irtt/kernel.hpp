#pragma once

// Goal-directed checker for natural deduction over IRTT sorts.
//
// Each step is checked against the sequent it must establish. Rule
// arguments are parsed in the context of that sequent; the premises the
// rule needs are then handed to its subproofs in order.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "irtt/axioms.hpp"
#include "irtt/parse.hpp"
#include "irtt/print.hpp"
#include "irtt/proof.hpp"
#include "irtt/syntax.hpp"
#include "irtt/typing.hpp"

namespace irtt {

/// Names a proof argument may use in place of formula text.
using FormulaMacros = std::map<std::string, std::string>;

struct ProofEnvironment {
  const TypeAbbreviations* abbrevs = nullptr;
  const FormulaMacros* formulas = nullptr;
};

struct Verdict {
  bool accepted = false;
  std::string diagnostic;  // empty when accepted
  std::string step;        // dotted path of the failing step, "1" is the root
  std::size_t line = 0;    // script line of the failing step, 0 if unknown
  std::set<std::string> schemes;
  std::size_t steps = 0;

  bool uses_arithmetic() const {
    for (const auto& s : schemes)
      if (is_arithmetic_scheme(s))
        return true;
    return false;
  }
  bool uses_pem() const { return schemes.contains("pem"); }
  explicit operator bool() const { return accepted; }
};

namespace detail {

struct StepFailure {
  std::string path;
  std::string rule;
  std::size_t line;
  std::string message;
};

class Checker {
public:
  Checker(bool classical, ProofEnvironment env) : classical_(classical), env_(env) {}

  void check(const ProofStep& s, const SortContext& ctx, const std::vector<Formula>& hyps,
             const Formula& goal, const std::string& path) {
    ++steps_;
    Step st{*this, s, ctx, path};
    auto shape = rule_shape(s.rule);
    if (!shape)
      st.fail("unknown rule '" + s.rule + "'");
    if (shape->variadic ? s.args.size() < shape->args : s.args.size() != shape->args)
      st.fail("expects " + std::to_string(shape->args) + (shape->variadic ? "+" : "") +
              " argument(s) " + shape->arg_hint + ", got " + std::to_string(s.args.size()));
    if (s.subproofs.size() != shape->subproofs)
      st.fail("expects " + std::to_string(shape->subproofs) + " subproof(s), got " +
              std::to_string(s.subproofs.size()));

    auto sub = [&](std::size_t i, const Formula& g, const std::vector<Formula>& h,
                   const SortContext& c) {
      check(s.subproofs[i], c, h, g, path + "." + std::to_string(i + 1));
    };
    auto with = [&](const Formula& extra) {
      auto h = hyps;
      h.push_back(extra);
      return h;
    };
    auto need = [&](bool ok, Formula::Kind k, const char* what) {
      if (!ok || goal.kind() != k)
        st.fail(std::string("goal must be ") + what + ", got " + print(goal));
    };

    const auto& r = s.rule;
    if (r == "assume") {
      for (const auto& h : hyps)
        if (alpha_equal(h, goal))
          return;
      st.fail("goal " + print(goal) + " is not among the " + std::to_string(hyps.size()) +
              " hypotheses");
    } else if (r == "and-intro") {
      need(true, Formula::Kind::And, "a conjunction");
      sub(0, goal.left(), hyps, ctx);
      sub(1, goal.right(), hyps, ctx);
    } else if (r == "and-elim-l") {
      sub(0, Formula::conj(goal, st.formula(0)), hyps, ctx);
    } else if (r == "and-elim-r") {
      sub(0, Formula::conj(st.formula(0), goal), hyps, ctx);
    } else if (r == "or-intro-l" || r == "or-intro-r") {
      need(true, Formula::Kind::Or, "a disjunction");
      sub(0, r == "or-intro-l" ? goal.left() : goal.right(), hyps, ctx);
    } else if (r == "or-elim") {
      auto d = st.formula(0);
      if (d.kind() != Formula::Kind::Or)
        st.fail("argument must be a disjunction, got " + print(d));
      sub(0, d, hyps, ctx);
      sub(1, goal, with(d.left()), ctx);
      sub(2, goal, with(d.right()), ctx);
    } else if (r == "imp-intro") {
      need(true, Formula::Kind::Imp, "an implication");
      sub(0, goal.right(), with(goal.left()), ctx);
    } else if (r == "imp-elim") {
      auto a = st.formula(0);
      sub(0, Formula::imp(a, goal), hyps, ctx);
      sub(1, a, hyps, ctx);
    } else if (r == "false-elim") {
      sub(0, Formula::falsum(), hyps, ctx);
    } else if (r == "forall-intro") {
      need(true, Formula::Kind::Forall, "a universal");
      auto y = st.eigenvariable(0, goal.variable().sort);
      auto inner = ctx;
      inner.insert_or_assign(y.name, y.sort);
      sub(0, substitute(goal.body(), goal.variable(), Term::var(y)), hyps, inner);
    } else if (r == "forall-elim") {
      auto q = st.formula(0);
      if (q.kind() != Formula::Kind::Forall)
        st.fail("first argument must be a universal, got " + print(q));
      auto t = st.term(1, q.variable().sort);
      auto inst = substitute(q.body(), q.variable(), t);
      if (!alpha_equal(inst, goal))
        st.fail("instance " + print(inst) + " does not match goal " + print(goal));
      sub(0, q, hyps, ctx);
    } else if (r == "exists-intro") {
      need(true, Formula::Kind::Exists, "an existential");
      auto t = st.term(0, goal.variable().sort);
      sub(0, substitute(goal.body(), goal.variable(), t), hyps, ctx);
    } else if (r == "exists-elim") {
      auto q = st.formula(0);
      if (q.kind() != Formula::Kind::Exists)
        st.fail("first argument must be an existential, got " + print(q));
      auto y = st.eigenvariable(1, q.variable().sort);
      auto inner = ctx;
      inner.insert_or_assign(y.name, y.sort);
      sub(0, q, hyps, ctx);
      sub(1, goal, with(substitute(q.body(), q.variable(), Term::var(y))), inner);
    } else if (r == "refl") {
      need(goal.kind() == Formula::Kind::Eq && alpha_equal(goal.lhs(), goal.rhs()),
           Formula::Kind::Eq, "an equation a = a");
    } else if (r == "eq-subst") {
      auto sort = st.type(1);
      auto x = st.eigenvariable(0, sort);
      auto inner = ctx;
      inner.insert_or_assign(x.name, sort);
      auto motive = st.formula(2, &inner);
      auto eq = st.formula(3);
      if (eq.kind() != Formula::Kind::Eq || eq.sort() != sort)
        st.fail("fourth argument must be an equation at " + print(sort) + ", got " + print(eq));
      auto target = substitute(motive, x, eq.rhs());
      if (!alpha_equal(target, goal))
        st.fail("motive at " + print(eq.rhs()) + " is " + print(target) +
                ", which does not match goal " + print(goal));
      sub(0, eq, hyps, ctx);
      sub(1, substitute(motive, x, eq.lhs()), hyps, ctx);
    } else if (r == "cut") {
      auto a = st.formula(0);
      sub(0, a, hyps, ctx);
      sub(1, goal, with(a), ctx);
    } else if (r == "axiom") {
      std::vector<std::string> params(s.args.begin() + 1, s.args.end());
      for (auto& p : params)
        p = st.expand(p);
      AxiomInstance inst;
      try {
        inst = instantiate_axiom(s.args[0], params, ctx, env_.abbrevs);
      } catch (const Error& e) {
        st.fail(std::string("ill-formed instantiation: ") + e.what());
      }
      if (inst.classical && !classical_)
        st.fail("PEM-in-intuitionistic-mode: axiom pem is only admissible with the "
                "classical flag");
      if (!alpha_equal(inst.formula, goal))
        st.fail("instance " + print(inst.formula) + " does not match goal " + print(goal));
      schemes_.insert(inst.scheme);
    }
  }

  std::set<std::string> schemes_;
  std::size_t steps_ = 0;

private:
  // Argument decoding for one step; every failure names the step.
  struct Step {
    Checker& self;
    const ProofStep& s;
    const SortContext& ctx;
    const std::string& path;

    [[noreturn]] void fail(const std::string& msg) const {
      throw StepFailure{path, s.rule, s.line, msg};
    }

    std::string expand(const std::string& arg) const {
      if (self.env_.formulas != nullptr)
        if (auto it = self.env_.formulas->find(arg); it != self.env_.formulas->end())
          return it->second;
      return arg;
    }

    Formula formula(std::size_t i, const SortContext* in = nullptr) const {
      const SortContext& c = in ? *in : ctx;
      try {
        auto f = parse_formula(expand(s.args.at(i)), c, self.env_.abbrevs);
        min_level(f, c);
        return f;
      } catch (const Error& e) {
        fail("ill-formed formula argument '" + s.args.at(i) + "': " + e.what());
      }
    }

    Term term(std::size_t i, const TypeSymbol& expected) const {
      try {
        auto t = parse_term(s.args.at(i), ctx, self.env_.abbrevs);
        auto sort = sort_of(t, ctx);
        if (sort != expected)
          fail("term " + print(t) + " has sort " + print(sort) + ", expected " +
               print(expected));
        return t;
      } catch (const Error& e) {
        fail("ill-formed term argument '" + s.args.at(i) + "': " + e.what());
      }
    }

    TypeSymbol type(std::size_t i) const {
      try {
        return parse_type(s.args.at(i), self.env_.abbrevs);
      } catch (const Error& e) {
        fail("ill-formed type argument '" + s.args.at(i) + "': " + e.what());
      }
    }

    Variable eigenvariable(std::size_t i, const TypeSymbol& sort) const {
      const auto& name = s.args.at(i);
      auto toks = detail::tokenize(name);
      if (toks.size() != 2 || toks[0].kind != Tok::Ident || is_keyword(name))
        fail("'" + name + "' is not a variable name");
      if (ctx.contains(name))
        fail("eigenvariable '" + name + "' is not fresh: already in the context");
      return {name, sort};
    }
  };

  bool classical_;
  ProofEnvironment env_;
};

} // namespace detail

/// Checks that `script` derives `claim`. Pure: the verdict depends only on
/// the arguments.
inline Verdict check_proof(const ProofStep& script, const Sequent& claim, bool classical,
                           ProofEnvironment env = {}) {
  Verdict v;
  try {
    for (const auto& h : claim.hypotheses)
      min_level(h, claim.vars);
    min_level(claim.goal, claim.vars);
  } catch (const SortError& e) {
    v.diagnostic = std::string("ill-formed claim: ") + e.what();
    return v;
  }
  detail::Checker checker(classical, env);
  try {
    checker.check(script, claim.vars, claim.hypotheses, claim.goal, "1");
    v.accepted = true;
  } catch (const detail::StepFailure& f) {
    v.step = f.path;
    v.line = f.line;
    v.diagnostic = "step " + f.path + " (" + f.rule +
                   (f.line ? ", line " + std::to_string(f.line) : std::string()) +
                   "): " + f.message;
  }
  v.schemes = checker.schemes_;
  v.steps = checker.steps_;
  return v;
}

} // namespace irtt
