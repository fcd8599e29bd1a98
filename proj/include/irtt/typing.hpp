#pragma once

// Sort inference for terms and level computation for formulas.
//
// A formula belongs to F_k when every equality a =_A b in it has |A| <= k,
// every membership a in b has b : P[n](-) with n <= k, and every quantified
// sort A has |A| <= k. min_level returns the least such k. Set abstractions
// {x:A | phi}@k are terms of P[k](A) only when min_level(phi) <= k.

#include <algorithm>
#include <optional>
#include <string>

#include "irtt/levels.hpp"
#include "irtt/print.hpp"
#include "irtt/syntax.hpp"

namespace irtt {

namespace detail {

class Typer {
public:
  explicit Typer(const SortContext& ctx) : ctx_(ctx) {}

  template <class F> decltype(auto) with_bound(const Variable& v, F body) {
    auto it = ctx_.find(v.name);
    std::optional<TypeSymbol> saved;
    if (it != ctx_.end())
      saved = it->second;
    ctx_.insert_or_assign(v.name, v.sort);
    struct Restore {
      SortContext& ctx;
      const std::string& name;
      std::optional<TypeSymbol>& saved;
      ~Restore() {
        if (saved)
          ctx.insert_or_assign(name, *saved);
        else
          ctx.erase(name);
      }
    } restore{ctx_, v.name, saved};
    return body();
  }


  TypeSymbol sort_of(const Term& t) {
    switch (t.kind()) {
    case Term::Kind::Var:
      return var_sort(t.variable());
    case Term::Kind::Star:
      return TypeSymbol::unit();
    case Term::Kind::Zero:
      return TypeSymbol::nat();
    case Term::Kind::Succ:
    case Term::Kind::Add:
    case Term::Kind::Mul:
      for (std::size_t i = 0; i < t.arity(); ++i)
        if (auto s = sort_of(t.arg(i)); !s.is_nat())
          throw SortError(SortErrorKind::IllSorted,
                          "arithmetic operand " + print(t.arg(i)) +
                              " has sort " + print(s) + ", expected N");
      return TypeSymbol::nat();
    case Term::Kind::Pair:
      return TypeSymbol::prod(sort_of(t.arg(0)), sort_of(t.arg(1)));
    case Term::Kind::Fst:
    case Term::Kind::Snd: {
      auto s = sort_of(t.arg(0));
      if (!s.is_prod())
        throw SortError(SortErrorKind::IllSorted,
                        "projection of " + print(t.arg(0)) + " of sort " +
                            print(s) + ", which is not a product");
      return t.kind() == Term::Kind::Fst ? s.left() : s.right();
    }
    case Term::Kind::SetAbs: {
      unsigned body = with_bound(t.variable(), [&] { return min_level(t.body()); });
      if (body > t.annotation())
        throw SortError(SortErrorKind::LevelViolation,
                        "set abstraction " + print(t) + " has body of level " +
                            std::to_string(body) + " > annotation " +
                            std::to_string(t.annotation()));
      return TypeSymbol::pow(t.annotation(), t.variable().sort);
    }
    }
    return TypeSymbol::unit();
  }

  unsigned min_level(const Formula& f) {
    switch (f.kind()) {
    case Formula::Kind::Eq: {
      for (const Term* side : {&f.lhs(), &f.rhs()})
        if (auto s = sort_of(*side); s != f.sort())
          throw SortError(SortErrorKind::IllSorted,
                          "operand " + print(*side) + " of equality at " +
                              print(f.sort()) + " has sort " + print(s));
      return level(f.sort());
    }
    case Formula::Kind::Mem: {
      auto set = sort_of(f.rhs());
      if (!set.is_pow())
        throw SortError(SortErrorKind::IllSorted,
                        "right operand " + print(f.rhs()) + " of 'in' has sort " +
                            print(set) + ", expected P[n](A)");
      auto elem = sort_of(f.lhs());
      if (elem != set.body())
        throw SortError(SortErrorKind::IllSorted,
                        "element " + print(f.lhs()) + " has sort " + print(elem) +
                            " but the set expects " + print(set.body()));
      return set.pow_level();
    }
    case Formula::Kind::False:
      return 0;
    case Formula::Kind::Or:
    case Formula::Kind::And:
    case Formula::Kind::Imp: {
      unsigned a = min_level(f.left());
      unsigned b = min_level(f.right());
      return std::max(a, b);
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      unsigned body = with_bound(f.variable(), [&] { return min_level(f.body()); });
      return std::max(level(f.variable().sort), body);
    }
    }
    return 0;
  }

private:
  TypeSymbol var_sort(const Variable& v) const {
    auto it = ctx_.find(v.name);
    if (it == ctx_.end())
      throw SortError(SortErrorKind::UnboundVariable,
                      "variable " + v.name + " is not in scope");
    if (it->second != v.sort)
      throw SortError(SortErrorKind::IllSorted,
                      "variable " + v.name + " used at sort " + print(v.sort) +
                          " but declared " + print(it->second));
    return v.sort;
  }

  SortContext ctx_;
};

} // namespace detail

/// Sort of a term; throws SortError (IllSorted, LevelViolation,
/// UnboundVariable).
inline TypeSymbol sort_of(const Term& t, const SortContext& ctx = {}) {
  return detail::Typer(ctx).sort_of(t);
}

/// Least k with f in F_k; throws SortError on ill-sorted input.
inline unsigned min_level(const Formula& f, const SortContext& ctx = {}) {
  return detail::Typer(ctx).min_level(f);
}

struct WfResult {
  bool ok = false;
  std::string diagnostic;
  explicit operator bool() const { return ok; }
};

inline WfResult wf_formula(const Formula& f, unsigned k,
                           const SortContext& ctx = {}) {
  try {
    unsigned m = min_level(f, ctx);
    if (m <= k)
      return {true, {}};
    return {false, "formula has level " + std::to_string(m) + " > " +
                       std::to_string(k)};
  } catch (const SortError& e) {
    return {false, e.what()};
  }
}

/// Free variables of `f` as a context; fails if one name is used at two sorts.
inline SortContext context_of(const Formula& f) {
  SortContext ctx;
  for (const auto& v : free_variables(f)) {
    auto [it, inserted] = ctx.emplace(v.name, v.sort);
    if (!inserted && it->second != v.sort)
      throw SortError(SortErrorKind::IllSorted,
                      "variable " + v.name + " occurs free at two sorts");
  }
  return ctx;
}

} // namespace irtt
