#pragma once

// Finite classical models. N is read as Z_base with modular successor,
// addition and multiplication; every P_k(A) is the full powerset of A,
// whatever k. Elements are numbered: a pair <a, b> is a * |B| + b and a
// subset is the bitmask of its members.

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "irtt/error.hpp"
#include "irtt/print.hpp"
#include "irtt/syntax.hpp"
#include "irtt/typing.hpp"

namespace irtt {

using Value = std::uint64_t;
using Valuation = std::map<std::string, Value>;

class BudgetExceeded : public Error {
public:
  BudgetExceeded(const std::string& msg, std::uint64_t size) : Error(msg), size_(size) {}
  std::uint64_t size() const { return size_; }

private:
  std::uint64_t size_;
};

inline std::uint64_t default_budget() {
  if (const char* env = std::getenv("IRTT_BUDGET")) {
    char* end = nullptr;
    auto v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0)
      return v;
  }
  return std::uint64_t{1} << 16;
}

struct FiniteModel {
  unsigned base = 2;
  unsigned depth = 2;
  std::uint64_t budget = default_budget();
};

inline unsigned pow_depth(const TypeSymbol& t) {
  switch (t.kind()) {
  case TypeSymbol::Kind::Prod:
    return std::max(pow_depth(t.left()), pow_depth(t.right()));
  case TypeSymbol::Kind::Pow:
    return 1 + pow_depth(t.body());
  default:
    return 0;
  }
}

/// Number of elements of the carrier of t; throws when over budget.
inline std::uint64_t carrier_size(const FiniteModel& m, const TypeSymbol& t) {
  auto over = [&](std::uint64_t n) {
    return BudgetExceeded("carrier of " + print(t) + " has " +
                              (n ? std::to_string(n) : std::string("more than 2^64")) +
                              " elements, budget is " + std::to_string(m.budget),
                          n);
  };
  if (pow_depth(t) > m.depth)
    throw BudgetExceeded("type " + print(t) + " nests P deeper than " + std::to_string(m.depth),
                         0);
  std::uint64_t n = 0;
  switch (t.kind()) {
  case TypeSymbol::Kind::Unit:
    n = 1;
    break;
  case TypeSymbol::Kind::Nat:
    n = m.base;
    break;
  case TypeSymbol::Kind::Prod: {
    auto a = carrier_size(m, t.left()), b = carrier_size(m, t.right());
    if (a != 0 && b > UINT64_MAX / a)
      throw over(0);
    n = a * b;
    break;
  }
  case TypeSymbol::Kind::Pow: {
    auto a = carrier_size(m, t.body());
    if (a >= 64)
      throw over(0);
    n = std::uint64_t{1} << a;
    break;
  }
  }
  if (n > m.budget)
    throw over(n);
  return n;
}

inline std::string render_value(const FiniteModel& m, const TypeSymbol& t, Value v) {
  switch (t.kind()) {
  case TypeSymbol::Kind::Unit:
    return "()";
  case TypeSymbol::Kind::Nat:
    return std::to_string(v);
  case TypeSymbol::Kind::Prod: {
    auto b = carrier_size(m, t.right());
    return "<" + render_value(m, t.left(), v / b) + ", " + render_value(m, t.right(), v % b) + ">";
  }
  case TypeSymbol::Kind::Pow: {
    std::string out = "{";
    auto n = carrier_size(m, t.body());
    bool first = true;
    for (Value a = 0; a < n; ++a)
      if ((v >> a) & 1) {
        out += (first ? "" : ", ") + render_value(m, t.body(), a);
        first = false;
      }
    return out + "}";
  }
  }
  return "?";
}

namespace detail {

// Formulas and terms with variables resolved to slots of a flat environment.
struct CNode {
  enum class Op {
    Slot, Const, Succ, Add, Mul, Pair, Fst, Snd, SetAbs,
    Eq, Mem, MemAbs, False, Or, And, Imp, Forall, Exists
  };
  Op op;
  std::size_t slot = 0;  // Slot, SetAbs, quantifiers: the variable
  Value n = 0;           // modulus, |B| for pairs, or domain size
  std::vector<std::unique_ptr<CNode>> kids;
};

class Compiler {
public:
  Compiler(const FiniteModel& m, const SortContext& free) : m_(m) {
    for (const auto& [name, sort] : free) {
      carrier_size(m_, sort);
      scope_[name].push_back(slots_++);
    }
  }

  std::size_t slots() const { return slots_; }
  std::size_t slot_of(const std::string& name) const { return scope_.at(name).back(); }

  std::unique_ptr<CNode> formula(const Formula& f) {
    using K = Formula::Kind;
    using O = CNode::Op;
    auto node = std::make_unique<CNode>();
    switch (f.kind()) {
    case K::Eq:
      carrier_size(m_, f.sort());
      node->op = O::Eq;
      node->kids.push_back(term(f.lhs()));
      node->kids.push_back(term(f.rhs()));
      break;
    case K::Mem:
      node->kids.push_back(term(f.lhs()));
      if (f.rhs().kind() == Term::Kind::SetAbs) {
        // a in {x | phi} is phi[a/x]
        const auto& abs = f.rhs();
        node->op = O::MemAbs;
        node->slot = bind(abs.variable().name);
        node->kids.push_back(formula(abs.body()));
        unbind(abs.variable().name);
      } else {
        carrier_size(m_, sort_of_open(f.rhs()));
        node->op = O::Mem;
        node->kids.push_back(term(f.rhs()));
      }
      break;
    case K::False:
      node->op = O::False;
      break;
    case K::Or:
    case K::And:
    case K::Imp:
      node->op = f.kind() == K::Or ? O::Or : f.kind() == K::And ? O::And : O::Imp;
      node->kids.push_back(formula(f.left()));
      node->kids.push_back(formula(f.right()));
      break;
    case K::Forall:
    case K::Exists:
      node->op = f.kind() == K::Forall ? O::Forall : O::Exists;
      node->n = carrier_size(m_, f.variable().sort);
      node->slot = bind(f.variable().name);
      node->kids.push_back(formula(f.body()));
      unbind(f.variable().name);
      break;
    }
    return node;
  }

  std::unique_ptr<CNode> term(const Term& t) {
    using K = Term::Kind;
    using O = CNode::Op;
    auto node = std::make_unique<CNode>();
    auto kids = [&] {
      for (std::size_t i = 0; i < t.arity(); ++i)
        node->kids.push_back(term(t.arg(i)));
    };
    switch (t.kind()) {
    case K::Var: {
      auto it = scope_.find(t.variable().name);
      if (it == scope_.end() || it->second.empty())
        throw Error("oracle: unbound variable " + t.variable().name);
      node->op = O::Slot;
      node->slot = it->second.back();
      break;
    }
    case K::Star:
    case K::Zero:
      node->op = O::Const;
      break;
    case K::Succ:
    case K::Add:
    case K::Mul:
      node->op = t.kind() == K::Succ ? O::Succ : t.kind() == K::Add ? O::Add : O::Mul;
      node->n = m_.base;
      kids();
      break;
    case K::Pair:
      node->op = O::Pair;
      node->n = carrier_size(m_, sort_of_open(t.arg(1)));
      kids();
      break;
    case K::Fst:
    case K::Snd:
      node->op = t.kind() == K::Fst ? O::Fst : O::Snd;
      node->n = carrier_size(m_, sort_of_open(t.arg(0)).right());
      kids();
      break;
    case K::SetAbs:
      node->op = O::SetAbs;
      carrier_size(m_, TypeSymbol::pow(t.annotation(), t.variable().sort));
      node->n = carrier_size(m_, t.variable().sort);
      node->slot = bind(t.variable().name);
      node->kids.push_back(formula(t.body()));
      unbind(t.variable().name);
      break;
    }
    return node;
  }

private:
  // Sorts are intrinsic to variables, so a term's sort needs no context.
  static TypeSymbol sort_of_open(const Term& t) {
    SortContext ctx;
    for (const auto& v : free_variables(t))
      ctx.insert_or_assign(v.name, v.sort);
    return sort_of(t, ctx);
  }

  std::size_t bind(const std::string& name) {
    scope_[name].push_back(slots_);
    return slots_++;
  }
  void unbind(const std::string& name) { scope_[name].pop_back(); }

  const FiniteModel& m_;
  std::map<std::string, std::vector<std::size_t>> scope_;
  std::size_t slots_ = 0;
};

inline Value eval_term(const CNode& n, std::vector<Value>& env);

inline bool eval(const CNode& n, std::vector<Value>& env) {
  using O = CNode::Op;
  switch (n.op) {
  case O::Eq:
    return eval_term(*n.kids[0], env) == eval_term(*n.kids[1], env);
  case O::Mem:
    return (eval_term(*n.kids[1], env) >> eval_term(*n.kids[0], env)) & 1;
  case O::MemAbs:
    env[n.slot] = eval_term(*n.kids[0], env);
    return eval(*n.kids[1], env);
  case O::False:
    return false;
  case O::Or:
    return eval(*n.kids[0], env) || eval(*n.kids[1], env);
  case O::And:
    return eval(*n.kids[0], env) && eval(*n.kids[1], env);
  case O::Imp:
    return !eval(*n.kids[0], env) || eval(*n.kids[1], env);
  case O::Forall:
    for (Value a = 0; a < n.n; ++a) {
      env[n.slot] = a;
      if (!eval(*n.kids[0], env))
        return false;
    }
    return true;
  case O::Exists:
    for (Value a = 0; a < n.n; ++a) {
      env[n.slot] = a;
      if (eval(*n.kids[0], env))
        return true;
    }
    return false;
  default:
    return false;
  }
}

inline Value eval_term(const CNode& n, std::vector<Value>& env) {
  using O = CNode::Op;
  switch (n.op) {
  case O::Slot:
    return env[n.slot];
  case O::Const:
    return 0;
  case O::Succ:
    return (eval_term(*n.kids[0], env) + 1) % n.n;
  case O::Add:
    return (eval_term(*n.kids[0], env) + eval_term(*n.kids[1], env)) % n.n;
  case O::Mul:
    return (eval_term(*n.kids[0], env) * eval_term(*n.kids[1], env)) % n.n;
  case O::Pair:
    return eval_term(*n.kids[0], env) * n.n + eval_term(*n.kids[1], env);
  case O::Fst:
    return eval_term(*n.kids[0], env) / n.n;
  case O::Snd:
    return eval_term(*n.kids[0], env) % n.n;
  case O::SetAbs: {
    Value mask = 0;
    for (Value a = 0; a < n.n; ++a) {
      env[n.slot] = a;
      if (eval(*n.kids[0], env))
        mask |= Value{1} << a;
    }
    return mask;
  }
  default:
    return 0;
  }
}

inline std::vector<Value> initial_env(const Compiler& c, const SortContext& vars,
                                      const Valuation& v) {
  std::vector<Value> env(c.slots(), 0);
  for (const auto& [name, sort] : vars) {
    auto it = v.find(name);
    if (it == v.end())
      throw Error("oracle: valuation misses free variable " + name);
    env[c.slot_of(name)] = it->second;
  }
  return env;
}

// Odometer over the carriers of `vars`; false once every valuation was seen.
inline bool next_valuation(const FiniteModel& m, const SortContext& vars, Valuation& v) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
    auto& x = v[it->first];
    if (++x < carrier_size(m, it->second))
      return true;
    x = 0;
  }
  return false;
}

} // namespace detail

/// Truth of f in m under v; v must cover the free variables of f.
inline bool eval_formula(const FiniteModel& m, const Formula& f, const Valuation& v = {}) {
  auto vars = context_of(f);
  detail::Compiler c(m, vars);
  auto code = c.formula(f);
  auto env = detail::initial_env(c, vars, v);
  return detail::eval(*code, env);
}

inline Value eval_term(const FiniteModel& m, const Term& t, const Valuation& v = {}) {
  SortContext vars;
  for (const auto& x : free_variables(t))
    vars.insert_or_assign(x.name, x.sort);
  detail::Compiler c(m, vars);
  auto code = c.term(t);
  auto env = detail::initial_env(c, vars, v);
  return detail::eval_term(*code, env);
}

/// A valuation of the sequent's variables satisfying every hypothesis but
/// not the goal, if there is one.
inline std::optional<Valuation> sequent_countermodel(const FiniteModel& m, const Sequent& s) {
  detail::Compiler c(m, s.vars);
  std::vector<std::unique_ptr<detail::CNode>> hyps;
  for (const auto& h : s.hypotheses)
    hyps.push_back(c.formula(h));
  auto goal = c.formula(s.goal);
  Valuation v;
  for (const auto& [name, sort] : s.vars)
    v[name] = 0;
  do {
    auto env = detail::initial_env(c, s.vars, v);
    bool holds = true;
    for (const auto& h : hyps)
      if (!detail::eval(*h, env)) {
        holds = false;
        break;
      }
    if (holds && !detail::eval(*goal, env))
      return v;
  } while (!s.vars.empty() && detail::next_valuation(m, s.vars, v));
  return std::nullopt;
}

inline bool check_sequent(const FiniteModel& m, const Sequent& s) {
  return !sequent_countermodel(m, s);
}

struct Countermodel {
  FiniteModel model;
  Valuation valuation;
};

/// Smallest model (by base, then depth) in which f fails for some valuation
/// of its free variables.
inline std::optional<Countermodel> find_countermodel(const Formula& f, unsigned max_base,
                                                     unsigned max_depth,
                                                     std::uint64_t budget = default_budget()) {
  Sequent s{context_of(f), {}, f};
  unsigned need = 0;
  auto visit = [&](const TypeSymbol& t) { need = std::max(need, pow_depth(t)); };
  for (const auto& [name, sort] : s.vars)
    visit(sort);
  std::function<void(const Formula&)> walk_f;
  std::function<void(const Term&)> walk_t = [&](const Term& t) {
    if (t.kind() == Term::Kind::SetAbs) {
      visit(TypeSymbol::pow(t.annotation(), t.variable().sort));
      walk_f(t.body());
    }
    for (std::size_t i = 0; i < t.arity(); ++i)
      walk_t(t.arg(i));
  };
  walk_f = [&](const Formula& g) {
    switch (g.kind()) {
    case Formula::Kind::Eq:
      visit(g.sort());
      [[fallthrough]];
    case Formula::Kind::Mem:
      walk_t(g.lhs());
      walk_t(g.rhs());
      break;
    case Formula::Kind::False:
      break;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      visit(g.variable().sort);
      walk_f(g.body());
      break;
    default:
      walk_f(g.left());
      walk_f(g.right());
    }
  };
  walk_f(f);
  if (need > max_depth)
    throw BudgetExceeded("formula nests P " + std::to_string(need) + " deep, bound is " +
                             std::to_string(max_depth),
                         0);
  // a deeper bound admits the same carriers, so only the least one is tried
  for (unsigned base = 1; base <= max_base; ++base) {
    FiniteModel m{base, need, budget};
    if (auto v = sequent_countermodel(m, s))
      return Countermodel{m, *v};
  }
  return std::nullopt;
}

} // namespace irtt
