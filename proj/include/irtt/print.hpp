#pragma once

// Concrete syntax printer. Output is accepted by parse.hpp and parses back to
// a structurally identical tree.

#include <ostream>
#include <sstream>
#include <string>

#include "irtt/syntax.hpp"

namespace irtt {

namespace detail {

inline void print_type(std::ostream& os, const TypeSymbol& t, bool in_prod_rhs) {
  switch (t.kind()) {
  case TypeSymbol::Kind::Unit:
    os << '1';
    return;
  case TypeSymbol::Kind::Nat:
    os << 'N';
    return;
  case TypeSymbol::Kind::Prod:
    if (in_prod_rhs)
      os << '(';
    print_type(os, t.left(), false);
    os << " * ";
    print_type(os, t.right(), true);
    if (in_prod_rhs)
      os << ')';
    return;
  case TypeSymbol::Kind::Pow:
    os << "P[" << t.pow_level() << "](";
    print_type(os, t.body(), false);
    os << ')';
    return;
  }
}

// Term precedences: + (1) < . (2) < prefix S/fst/snd (3) < atoms (4).
inline int term_prec(const Term& t) {
  switch (t.kind()) {
  case Term::Kind::Add:
    return 1;
  case Term::Kind::Mul:
    return 2;
  case Term::Kind::Succ:
  case Term::Kind::Fst:
  case Term::Kind::Snd:
    return 3;
  default:
    return 4;
  }
}

inline void print_formula(std::ostream& os, const Formula& f, int min_prec);

inline void print_term(std::ostream& os, const Term& t, int min_prec) {
  bool parens = term_prec(t) < min_prec;
  if (parens)
    os << '(';
  switch (t.kind()) {
  case Term::Kind::Var:
    os << t.variable().name;
    break;
  case Term::Kind::Star:
    os << "()";
    break;
  case Term::Kind::Zero:
    os << '0';
    break;
  case Term::Kind::Succ:
    os << "S ";
    print_term(os, t.arg(0), 3);
    break;
  case Term::Kind::Fst:
    os << "fst ";
    print_term(os, t.arg(0), 3);
    break;
  case Term::Kind::Snd:
    os << "snd ";
    print_term(os, t.arg(0), 3);
    break;
  case Term::Kind::Add:
    print_term(os, t.arg(0), 1);
    os << " + ";
    print_term(os, t.arg(1), 2);
    break;
  case Term::Kind::Mul:
    print_term(os, t.arg(0), 2);
    os << " . ";
    print_term(os, t.arg(1), 3);
    break;
  case Term::Kind::Pair:
    os << '<';
    print_term(os, t.arg(0), 0);
    os << ", ";
    print_term(os, t.arg(1), 0);
    os << '>';
    break;
  case Term::Kind::SetAbs:
    os << '{' << t.variable().name << ':';
    print_type(os, t.variable().sort, false);
    os << " | ";
    print_formula(os, t.body(), 0);
    os << "}@" << t.annotation();
    break;
  }
  if (parens)
    os << ')';
}

// Formula precedences: quantifiers (0) < => (1) < \/ (2) < /\ (3) < atoms (4).
inline int formula_prec(const Formula& f) {
  switch (f.kind()) {
  case Formula::Kind::Forall:
  case Formula::Kind::Exists:
    return 0;
  case Formula::Kind::Imp:
    return 1;
  case Formula::Kind::Or:
    return 2;
  case Formula::Kind::And:
    return 3;
  default:
    return 4;
  }
}

inline void print_formula(std::ostream& os, const Formula& f, int min_prec) {
  bool parens = formula_prec(f) < min_prec;
  if (parens)
    os << '(';
  switch (f.kind()) {
  case Formula::Kind::Eq:
    print_term(os, f.lhs(), 0);
    os << " = ";
    print_term(os, f.rhs(), 0);
    break;
  case Formula::Kind::Mem:
    print_term(os, f.lhs(), 0);
    os << " in ";
    print_term(os, f.rhs(), 0);
    break;
  case Formula::Kind::False:
    os << "false";
    break;
  case Formula::Kind::Imp:
    print_formula(os, f.left(), 2);
    os << " => ";
    print_formula(os, f.right(), 1);
    break;
  case Formula::Kind::Or:
    print_formula(os, f.left(), 2);
    os << " \\/ ";
    print_formula(os, f.right(), 3);
    break;
  case Formula::Kind::And:
    print_formula(os, f.left(), 3);
    os << " /\\ ";
    print_formula(os, f.right(), 4);
    break;
  case Formula::Kind::Forall:
  case Formula::Kind::Exists:
    os << (f.kind() == Formula::Kind::Forall ? "forall " : "exists ")
       << f.variable().name << ':';
    print_type(os, f.variable().sort, false);
    os << ". ";
    print_formula(os, f.body(), 0);
    break;
  }
  if (parens)
    os << ')';
}

} // namespace detail

inline std::string print(const TypeSymbol& t) {
  std::ostringstream os;
  detail::print_type(os, t, false);
  return os.str();
}

inline std::string print(const Term& t) {
  std::ostringstream os;
  detail::print_term(os, t, 0);
  return os.str();
}

inline std::string print(const Formula& f) {
  std::ostringstream os;
  detail::print_formula(os, f, 0);
  return os.str();
}

inline std::string print(const Sequent& s) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [name, sort] : s.vars) {
    os << (first ? "" : ", ") << name << ':' << print(sort);
    first = false;
  }
  if (!s.vars.empty())
    os << " ; ";
  first = true;
  for (const auto& h : s.hypotheses) {
    os << (first ? "" : ", ") << print(h);
    first = false;
  }
  os << (s.hypotheses.empty() ? "|- " : " |- ") << print(s.goal);
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const TypeSymbol& t) {
  return os << print(t);
}
inline std::ostream& operator<<(std::ostream& os, const Term& t) {
  return os << print(t);
}
inline std::ostream& operator<<(std::ostream& os, const Formula& f) {
  return os << print(f);
}

} // namespace irtt
