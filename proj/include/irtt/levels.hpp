#pragma once

#include <algorithm>
#include <string>

#include "irtt/syntax.hpp"

namespace irtt {

/// |A|: bounds the quantifiers a formula about A may use.
inline unsigned level(const TypeSymbol& t) {
  switch (t.kind()) {
  case TypeSymbol::Kind::Unit:
  case TypeSymbol::Kind::Nat:
    return 0;
  case TypeSymbol::Kind::Prod:
    return std::max(level(t.left()), level(t.right()));
  case TypeSymbol::Kind::Pow:
    return std::max(t.pow_level() + 1, level(t.body()));
  }
  return 0;
}

/// ||A||: least level at which extensional equality on A is expressible.
/// The power-set case uses the level of the body, not its equality level.
inline unsigned eq_level(const TypeSymbol& t) {
  switch (t.kind()) {
  case TypeSymbol::Kind::Unit:
  case TypeSymbol::Kind::Nat:
    return 0;
  case TypeSymbol::Kind::Prod:
    return std::max(eq_level(t.left()), eq_level(t.right()));
  case TypeSymbol::Kind::Pow:
    return std::max(t.pow_level(), level(t.body()));
  }
  return 0;
}

struct LevelPair {
  unsigned level;
  unsigned eq_level;
  friend bool operator==(const LevelPair&, const LevelPair&) = default;
};

inline LevelPair level_pair(const TypeSymbol& t) { return {level(t), eq_level(t)}; }

/// The canonical formula phi_A(x, y) equivalent to x =_A y whose level is
/// eq_level(A): primitive equality at 1 and N, componentwise at products,
/// and (forall z:A)(z in x <=> z in y) at P[n](A).
inline Formula eq_formula(const TypeSymbol& t, const Term& x, const Term& y) {
  switch (t.kind()) {
  case TypeSymbol::Kind::Unit:
  case TypeSymbol::Kind::Nat:
    return Formula::eq(t, x, y);
  case TypeSymbol::Kind::Prod:
    return Formula::conj(eq_formula(t.left(), Term::fst(x), Term::fst(y)),
                         eq_formula(t.right(), Term::snd(x), Term::snd(y)));
  case TypeSymbol::Kind::Pow: {
    auto avoid = names_of(free_variables(x));
    for (const auto& n : names_of(free_variables(y)))
      avoid.insert(n);
    Variable z{fresh_name("z", avoid), t.body()};
    auto zt = Term::var(z);
    return Formula::forall(
        z, Formula::iff(Formula::mem(zt, x), Formula::mem(zt, y)));
  }
  }
  return Formula::falsum();
}

inline std::string max_trace(std::initializer_list<unsigned> xs) {
  std::string s = "max(";
  bool first = true;
  unsigned m = 0;
  for (unsigned x : xs) {
    s += (first ? "" : ", ") + std::to_string(x);
    first = false;
    m = std::max(m, x);
  }
  return s + ") = " + std::to_string(m);
}

} // namespace irtt
