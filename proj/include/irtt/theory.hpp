#pragma once

// Theory files (.irtt) and proof scripts (.irttp) share one format:
//
//   (type Real "P[0](N * N)")
//   (formula sym (vars (x "N") (y "N")) "x = y => y = x")
//   (localset nat "N" "{x:N | true}@0" 0)
//   (theorem name (vars (X "P[1](N)")) (hyps "...") (goal "..." | sym) (proof STEP))
//   (sequent name (vars ...) (hyps ...) (goal ...))
//
// Declarations are processed in order; a name must be declared before use
// and may be declared only once.

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "irtt/axioms.hpp"
#include "irtt/kernel.hpp"
#include "irtt/parse.hpp"
#include "irtt/proof.hpp"
#include "irtt/sexpr.hpp"
#include "irtt/syntax.hpp"
#include "irtt/typing.hpp"

namespace irtt {

class FileError : public Error {
public:
  using Error::Error;
};

struct FormulaDecl {
  SortContext vars;
  Formula formula = Formula::falsum();
  std::string text;
};

struct TheoremDecl {
  std::string name;
  Sequent claim;
  std::optional<ProofStep> proof;  // absent for plain sequents
  std::size_t line = 0;
};

struct Theory {
  TypeAbbreviations types;
  std::map<std::string, FormulaDecl> formulas;
  FormulaMacros formula_text;
  std::map<std::string, LocalSetDesc> localsets;
  std::vector<TheoremDecl> theorems;

  ProofEnvironment env() const { return {&types, &formula_text}; }

  const TheoremDecl* theorem(const std::string& name) const {
    for (const auto& t : theorems)
      if (t.name == name)
        return &t;
    return nullptr;
  }
};

namespace detail {

class TheoryLoader {
public:
  Theory load(std::string_view text) {
    for (const auto& decl : read_sexprs(text))
      declaration(decl);
    return std::move(th_);
  }

private:
  [[noreturn]] void fail(const SExpr& at, const std::string& msg) const {
    throw Error("line " + std::to_string(at.line) + ": " + msg);
  }

  const std::string& atom(const SExpr& e, const char* what) const {
    if (!e.is_atom())
      fail(e, std::string("expected ") + what);
    return e.text;
  }

  void claim_name(const SExpr& at, const std::string& name) {
    if (!names_.insert(name).second)
      fail(at, "duplicate declaration of '" + name + "'");
  }

  template <class F> auto located(const SExpr& at, F body) const -> decltype(body()) {
    try {
      return body();
    } catch (const SyntaxError& e) {
      fail(at, e.what());
    } catch (const SortError& e) {
      fail(at, e.what());
    }
  }

  SortContext vars_clause(const SExpr& clause) const {
    SortContext ctx;
    for (std::size_t i = 1; i < clause.items.size(); ++i) {
      const auto& v = clause.items[i];
      if (!v.is_list() || v.items.size() != 2)
        fail(v, "a variable declaration is (name \"Type\")");
      const auto& name = atom(v.items[0], "a variable name");
      auto sort = located(v, [&] { return parse_type(atom(v.items[1], "a type"), &th_.types); });
      if (!ctx.emplace(name, sort).second)
        fail(v, "variable '" + name + "' declared twice");
    }
    return ctx;
  }

  Formula formula_arg(const SExpr& e, const SortContext& ctx) const {
    if (e.kind == SExpr::Kind::Symbol) {
      auto it = th_.formulas.find(e.text);
      if (it == th_.formulas.end())
        fail(e, "unknown formula '" + e.text + "' (forward references are not allowed)");
      return located(e, [&] { return checked(parse_formula(it->second.text, ctx, &th_.types), ctx); });
    }
    return located(e, [&] {
      return checked(parse_formula(atom(e, "a formula"), ctx, &th_.types), ctx);
    });
  }

  static Formula checked(Formula f, const SortContext& ctx) {
    min_level(f, ctx);
    return f;
  }

  void declaration(const SExpr& d) {
    if (!d.is_list() || d.items.empty() || d.items[0].kind != SExpr::Kind::Symbol)
      fail(d, "expected a declaration (type|formula|localset|theorem|sequent ...)");
    const auto& kw = d.items[0].text;
    if (d.items.size() < 2)
      fail(d, "declaration needs a name");
    const auto& name = atom(d.items[1], "a name");

    if (kw == "type") {
      if (d.items.size() != 3)
        fail(d, "(type Name \"Type\")");
      auto t = located(d, [&] { return parse_type(atom(d.items[2], "a type"), &th_.types); });
      auto toks = tokenize(name);
      if (toks.size() != 2 || toks[0].kind != Tok::Ident || is_keyword(name))
        fail(d, "'" + name + "' cannot name a type (it is a keyword or not an identifier)");
      claim_name(d, name);
      th_.types.emplace(name, t);
    } else if (kw == "formula") {
      SortContext ctx;
      std::size_t i = 2;
      if (i < d.items.size() && d.items[i].is_list() && !d.items[i].items.empty() &&
          d.items[i].items[0].is_symbol("vars"))
        ctx = vars_clause(d.items[i++]);
      if (i + 1 != d.items.size())
        fail(d, "(formula name [(vars ...)] \"text\")");
      auto f = formula_arg(d.items[i], ctx);
      claim_name(d, name);
      std::string text = d.items[i].kind == SExpr::Kind::Symbol
                             ? th_.formula_text.at(d.items[i].text)
                             : d.items[i].text;
      th_.formulas.emplace(name, FormulaDecl{ctx, f, text});
      th_.formula_text.emplace(name, text);
    } else if (kw == "localset") {
      if (d.items.size() != 5)
        fail(d, "(localset name \"A\" \"X\" n)");
      auto ls = located(d, [&] {
        auto a = parse_type(atom(d.items[2], "a type"), &th_.types);
        auto x = parse_term(atom(d.items[3], "a term"), {}, &th_.types);
        const auto& n = atom(d.items[4], "a level");
        if (n.empty() || n.find_first_not_of("0123456789") != std::string::npos)
          throw SyntaxError("level '" + n + "' is not a natural number", 0);
        unsigned level = static_cast<unsigned>(std::stoul(n));
        if (sort_of(x, {}) != TypeSymbol::pow(level, a))
          throw SortError(SortErrorKind::IllSorted, "predicate " + print(x) + " is not in P[" +
                                                        n + "](" + print(a) + ")");
        return LocalSetDesc{a, x, level};
      });
      claim_name(d, name);
      th_.localsets.emplace(name, ls);
    } else if (kw == "theorem" || kw == "sequent") {
      TheoremDecl t{name, {}, std::nullopt, d.line};
      bool has_goal = false;
      std::vector<const SExpr*> hyps;
      const SExpr* goal = nullptr;
      for (std::size_t i = 2; i < d.items.size(); ++i) {
        const auto& c = d.items[i];
        if (!c.is_list() || c.items.empty() || c.items[0].kind != SExpr::Kind::Symbol)
          fail(c, "expected (vars ...), (hyps ...), (goal ...) or (proof ...)");
        const auto& ck = c.items[0].text;
        if (ck == "vars") {
          t.claim.vars = vars_clause(c);
        } else if (ck == "hyps") {
          for (std::size_t j = 1; j < c.items.size(); ++j)
            hyps.push_back(&c.items[j]);
        } else if (ck == "goal") {
          if (c.items.size() != 2)
            fail(c, "(goal \"formula\")");
          goal = &c.items[1];
          has_goal = true;
        } else if (ck == "proof" && kw == "theorem") {
          if (c.items.size() != 2)
            fail(c, "(proof STEP)");
          t.proof = located(c, [&] { return parse_proof(c.items[1]); });
        } else {
          fail(c, "unexpected clause '" + ck + "' in " + kw);
        }
      }
      if (!has_goal)
        fail(d, kw + " '" + name + "' has no goal");
      if (kw == "theorem" && !t.proof)
        fail(d, "theorem '" + name + "' has no proof");
      for (const auto* h : hyps)
        t.claim.hypotheses.push_back(formula_arg(*h, t.claim.vars));
      t.claim.goal = formula_arg(*goal, t.claim.vars);
      claim_name(d, name);
      th_.theorems.push_back(std::move(t));
    } else {
      fail(d, "unknown declaration '" + kw + "'");
    }
  }

  Theory th_;
  std::set<std::string> names_;
};

} // namespace detail

inline Theory load_theory(std::string_view text) { return detail::TheoryLoader().load(text); }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw FileError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Theory load_theory_file(const std::string& path) {
  auto text = read_file(path);
  try {
    return load_theory(text);
  } catch (const FileError&) {
    throw;
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

struct TheoremResult {
  std::string name;
  Verdict verdict;
};

/// Checks every theorem with a proof, in file order.
inline std::vector<TheoremResult> check_theory(const Theory& th, bool classical) {
  std::vector<TheoremResult> out;
  for (const auto& t : th.theorems)
    if (t.proof)
      out.push_back({t.name, check_proof(*t.proof, t.claim, classical, th.env())});
  return out;
}

} // namespace irtt
