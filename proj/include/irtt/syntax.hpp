#pragma once

// Abstract syntax of ramified types, terms and formulas.
//
// All three classes are immutable trees with shared structure; copying is a
// reference-count bump. Variables are intrinsically sorted: a Variable is a
// (name, sort) pair and two variables are the same only if both agree.

#include <cassert>
#include <cctype>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "irtt/error.hpp"

namespace irtt {

// ----------------------------------------------------------------------------
// Ramified type symbols: 1 | N | A * B | P[k](A)

class TypeSymbol {
public:
  enum class Kind { Unit, Nat, Prod, Pow };

  static TypeSymbol unit();
  static TypeSymbol nat();
  static TypeSymbol prod(TypeSymbol left, TypeSymbol right);
  static TypeSymbol pow(unsigned level, TypeSymbol body);

  Kind kind() const { return node_->kind; }
  bool is_unit() const { return kind() == Kind::Unit; }
  bool is_nat() const { return kind() == Kind::Nat; }
  bool is_prod() const { return kind() == Kind::Prod; }
  bool is_pow() const { return kind() == Kind::Pow; }

  // Prod only.
  const TypeSymbol& left() const;
  const TypeSymbol& right() const;
  // Pow only.
  unsigned pow_level() const;
  const TypeSymbol& body() const;

  friend bool operator==(const TypeSymbol& a, const TypeSymbol& b);
  friend std::strong_ordering operator<=>(const TypeSymbol& a,
                                          const TypeSymbol& b);

private:
  struct Node {
    Kind kind;
    unsigned level = 0;
    std::vector<TypeSymbol> children;
  };
  explicit TypeSymbol(std::shared_ptr<const Node> node)
      : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Maximal nesting depth of P[k](-) constructors.
inline unsigned pow_nesting(const TypeSymbol& t) {
  switch (t.kind()) {
  case TypeSymbol::Kind::Unit:
  case TypeSymbol::Kind::Nat:
    return 0;
  case TypeSymbol::Kind::Prod:
    return std::max(pow_nesting(t.left()), pow_nesting(t.right()));
  case TypeSymbol::Kind::Pow:
    return 1 + pow_nesting(t.body());
  }
  return 0;
}

inline TypeSymbol TypeSymbol::unit() {
  static const TypeSymbol t{std::make_shared<const Node>(Node{Kind::Unit, 0, {}})};
  return t;
}

inline TypeSymbol TypeSymbol::nat() {
  static const TypeSymbol t{std::make_shared<const Node>(Node{Kind::Nat, 0, {}})};
  return t;
}

inline TypeSymbol TypeSymbol::prod(TypeSymbol left, TypeSymbol right) {
  return TypeSymbol{std::make_shared<const Node>(
      Node{Kind::Prod, 0, {std::move(left), std::move(right)}})};
}

inline TypeSymbol TypeSymbol::pow(unsigned level, TypeSymbol body) {
  return TypeSymbol{
      std::make_shared<const Node>(Node{Kind::Pow, level, {std::move(body)}})};
}

inline const TypeSymbol& TypeSymbol::left() const {
  assert(is_prod());
  return node_->children[0];
}
inline const TypeSymbol& TypeSymbol::right() const {
  assert(is_prod());
  return node_->children[1];
}
inline unsigned TypeSymbol::pow_level() const {
  assert(is_pow());
  return node_->level;
}
inline const TypeSymbol& TypeSymbol::body() const {
  assert(is_pow());
  return node_->children[0];
}

inline std::strong_ordering operator<=>(const TypeSymbol& a,
                                        const TypeSymbol& b) {
  if (a.node_ == b.node_)
    return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0)
    return c;
  if (auto c = a.node_->level <=> b.node_->level; c != 0)
    return c;
  for (std::size_t i = 0; i < a.node_->children.size(); ++i)
    if (auto c = a.node_->children[i] <=> b.node_->children[i]; c != 0)
      return c;
  return std::strong_ordering::equal;
}

inline bool operator==(const TypeSymbol& a, const TypeSymbol& b) {
  return (a <=> b) == 0;
}

// ----------------------------------------------------------------------------
// Variables and contexts

struct Variable {
  std::string name;
  TypeSymbol sort;

  friend bool operator==(const Variable&, const Variable&) = default;
  friend std::strong_ordering operator<=>(const Variable& a,
                                          const Variable& b) {
    if (auto c = a.name <=> b.name; c != 0)
      return c;
    return a.sort <=> b.sort;
  }
};

/// Sorts of the free variables in scope, keyed by name.
using SortContext = std::map<std::string, TypeSymbol>;

class Formula;

// ----------------------------------------------------------------------------
// Terms

class Term {
public:
  enum class Kind { Var, Star, Zero, Succ, Add, Mul, Pair, Fst, Snd, SetAbs };

  static Term var(Variable v);
  static Term var(std::string name, TypeSymbol sort) {
    return var(Variable{std::move(name), std::move(sort)});
  }
  static Term star();
  static Term zero();
  static Term succ(Term t);
  static Term add(Term a, Term b);
  static Term mul(Term a, Term b);
  static Term pair(Term a, Term b);
  static Term fst(Term t);
  static Term snd(Term t);
  /// {x:A | body}@level
  static Term set_abs(Variable binder, Formula body, unsigned level);
  /// S^n 0
  static Term numeral(unsigned n);

  Kind kind() const;
  /// Var: the variable. SetAbs: the binder.
  const Variable& variable() const;
  std::size_t arity() const;
  const Term& arg(std::size_t i) const;
  /// SetAbs only.
  const Formula& body() const;
  unsigned annotation() const;

  friend bool operator==(const Term& a, const Term& b);

  const void* identity() const { return node_.get(); }

private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// ----------------------------------------------------------------------------
// Formulas

class Formula {
public:
  enum class Kind { Eq, Mem, False, Or, And, Imp, Forall, Exists };

  static Formula eq(TypeSymbol sort, Term lhs, Term rhs);
  static Formula mem(Term elem, Term set);
  static Formula falsum();
  static Formula disj(Formula a, Formula b);
  static Formula conj(Formula a, Formula b);
  static Formula imp(Formula a, Formula b);
  static Formula forall(Variable v, Formula body);
  static Formula exists(Variable v, Formula body);

  // Derived forms; none of these is primitive.
  static Formula truth() { return imp(falsum(), falsum()); }
  static Formula neg(Formula a) { return imp(std::move(a), falsum()); }
  static Formula iff(const Formula& a, const Formula& b) {
    return conj(imp(a, b), imp(b, a));
  }

  Kind kind() const;
  bool is_quantifier() const {
    return kind() == Kind::Forall || kind() == Kind::Exists;
  }
  bool is_binary() const {
    return kind() == Kind::Or || kind() == Kind::And || kind() == Kind::Imp;
  }

  /// Eq only: the annotated sort.
  const TypeSymbol& sort() const;
  /// Eq: operands. Mem: lhs is the element, rhs the set.
  const Term& lhs() const;
  const Term& rhs() const;
  /// Or/And/Imp.
  const Formula& left() const;
  const Formula& right() const;
  /// Forall/Exists.
  const Variable& variable() const;
  const Formula& body() const;

  friend bool operator==(const Formula& a, const Formula& b);

  const void* identity() const { return node_.get(); }

private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Term::Node {
  Kind kind;
  Variable var{"", TypeSymbol::unit()};
  std::vector<Term> args;
  std::vector<Formula> body; // 0 or 1 element
  unsigned level = 0;
};

struct Formula::Node {
  Kind kind;
  TypeSymbol sort = TypeSymbol::unit();
  Variable var{"", TypeSymbol::unit()};
  std::vector<Term> terms;
  std::vector<Formula> subs;
};

inline Term::Kind Term::kind() const { return node_->kind; }
inline std::size_t Term::arity() const { return node_->args.size(); }
inline const Term& Term::arg(std::size_t i) const { return node_->args.at(i); }
inline Formula::Kind Formula::kind() const { return node_->kind; }

inline Term Term::var(Variable v) {
  Node n{Kind::Var};
  n.var = std::move(v);
  return Term{std::make_shared<const Node>(std::move(n))};
}
inline Term Term::star() {
  static const Term t{std::make_shared<const Node>(Node{Kind::Star})};
  return t;
}
inline Term Term::zero() {
  static const Term t{std::make_shared<const Node>(Node{Kind::Zero})};
  return t;
}
inline Term Term::succ(Term t) {
  Node n{Kind::Succ};
  n.args = {std::move(t)};
  return Term{std::make_shared<const Node>(std::move(n))};
}
inline Term Term::add(Term a, Term b) {
  Node n{Kind::Add};
  n.args = {std::move(a), std::move(b)};
  return Term{std::make_shared<const Node>(std::move(n))};
}
inline Term Term::mul(Term a, Term b) {
  Node n{Kind::Mul};
  n.args = {std::move(a), std::move(b)};
  return Term{std::make_shared<const Node>(std::move(n))};
}
inline Term Term::pair(Term a, Term b) {
  Node n{Kind::Pair};
  n.args = {std::move(a), std::move(b)};
  return Term{std::make_shared<const Node>(std::move(n))};
}
inline Term Term::fst(Term t) {
  Node n{Kind::Fst};
  n.args = {std::move(t)};
  return Term{std::make_shared<const Node>(std::move(n))};
}
inline Term Term::snd(Term t) {
  Node n{Kind::Snd};
  n.args = {std::move(t)};
  return Term{std::make_shared<const Node>(std::move(n))};
}
inline Term Term::set_abs(Variable binder, Formula body, unsigned level) {
  Node n{Kind::SetAbs};
  n.var = std::move(binder);
  n.body = {std::move(body)};
  n.level = level;
  return Term{std::make_shared<const Node>(std::move(n))};
}
inline Term Term::numeral(unsigned n) {
  Term t = zero();
  for (unsigned i = 0; i < n; ++i)
    t = succ(std::move(t));
  return t;
}
inline const Variable& Term::variable() const {
  assert(kind() == Kind::Var || kind() == Kind::SetAbs);
  return node_->var;
}
inline const Formula& Term::body() const {
  assert(kind() == Kind::SetAbs);
  return node_->body[0];
}
inline unsigned Term::annotation() const {
  assert(kind() == Kind::SetAbs);
  return node_->level;
}

inline Formula Formula::eq(TypeSymbol sort, Term lhs, Term rhs) {
  Node n{Kind::Eq};
  n.sort = std::move(sort);
  n.terms = {std::move(lhs), std::move(rhs)};
  return Formula{std::make_shared<const Node>(std::move(n))};
}
inline Formula Formula::mem(Term elem, Term set) {
  Node n{Kind::Mem};
  n.terms = {std::move(elem), std::move(set)};
  return Formula{std::make_shared<const Node>(std::move(n))};
}
inline Formula Formula::falsum() {
  static const Formula f{std::make_shared<const Node>(Node{Kind::False})};
  return f;
}
inline Formula Formula::disj(Formula a, Formula b) {
  Node n{Kind::Or};
  n.subs = {std::move(a), std::move(b)};
  return Formula{std::make_shared<const Node>(std::move(n))};
}
inline Formula Formula::conj(Formula a, Formula b) {
  Node n{Kind::And};
  n.subs = {std::move(a), std::move(b)};
  return Formula{std::make_shared<const Node>(std::move(n))};
}
inline Formula Formula::imp(Formula a, Formula b) {
  Node n{Kind::Imp};
  n.subs = {std::move(a), std::move(b)};
  return Formula{std::make_shared<const Node>(std::move(n))};
}
inline Formula Formula::forall(Variable v, Formula body) {
  Node n{Kind::Forall};
  n.var = std::move(v);
  n.subs = {std::move(body)};
  return Formula{std::make_shared<const Node>(std::move(n))};
}
inline Formula Formula::exists(Variable v, Formula body) {
  Node n{Kind::Exists};
  n.var = std::move(v);
  n.subs = {std::move(body)};
  return Formula{std::make_shared<const Node>(std::move(n))};
}
inline const TypeSymbol& Formula::sort() const {
  assert(kind() == Kind::Eq);
  return node_->sort;
}
inline const Term& Formula::lhs() const {
  assert(kind() == Kind::Eq || kind() == Kind::Mem);
  return node_->terms[0];
}
inline const Term& Formula::rhs() const {
  assert(kind() == Kind::Eq || kind() == Kind::Mem);
  return node_->terms[1];
}
inline const Formula& Formula::left() const {
  assert(is_binary());
  return node_->subs[0];
}
inline const Formula& Formula::right() const {
  assert(is_binary());
  return node_->subs[1];
}
inline const Variable& Formula::variable() const {
  assert(is_quantifier());
  return node_->var;
}
inline const Formula& Formula::body() const {
  assert(is_quantifier());
  return node_->subs[0];
}

inline bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_)
    return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.level == y.level && x.var == y.var &&
         x.args == y.args && x.body == y.body;
}

inline bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_)
    return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.sort == y.sort && x.var == y.var &&
         x.terms == y.terms && x.subs == y.subs;
}

// ----------------------------------------------------------------------------
// Free variables

namespace detail {

inline void collect_free(const Formula& f, std::set<Variable>& bound,
                         std::set<Variable>& out);

inline void collect_free(const Term& t, std::set<Variable>& bound,
                         std::set<Variable>& out) {
  switch (t.kind()) {
  case Term::Kind::Var:
    if (!bound.contains(t.variable()))
      out.insert(t.variable());
    return;
  case Term::Kind::SetAbs: {
    bool inserted = bound.insert(t.variable()).second;
    collect_free(t.body(), bound, out);
    if (inserted)
      bound.erase(t.variable());
    return;
  }
  default:
    for (std::size_t i = 0; i < t.arity(); ++i)
      collect_free(t.arg(i), bound, out);
  }
}

inline void collect_free(const Formula& f, std::set<Variable>& bound,
                         std::set<Variable>& out) {
  switch (f.kind()) {
  case Formula::Kind::Eq:
  case Formula::Kind::Mem:
    collect_free(f.lhs(), bound, out);
    collect_free(f.rhs(), bound, out);
    return;
  case Formula::Kind::False:
    return;
  case Formula::Kind::Or:
  case Formula::Kind::And:
  case Formula::Kind::Imp:
    collect_free(f.left(), bound, out);
    collect_free(f.right(), bound, out);
    return;
  case Formula::Kind::Forall:
  case Formula::Kind::Exists: {
    bool inserted = bound.insert(f.variable()).second;
    collect_free(f.body(), bound, out);
    if (inserted)
      bound.erase(f.variable());
    return;
  }
  }
}

} // namespace detail

inline std::set<Variable> free_variables(const Term& t) {
  std::set<Variable> bound, out;
  detail::collect_free(t, bound, out);
  return out;
}

inline std::set<Variable> free_variables(const Formula& f) {
  std::set<Variable> bound, out;
  detail::collect_free(f, bound, out);
  return out;
}

inline bool occurs_free(const Variable& v, const Formula& f) {
  return free_variables(f).contains(v);
}

inline std::set<std::string> names_of(const std::set<Variable>& vars) {
  std::set<std::string> out;
  for (const auto& v : vars)
    out.insert(v.name);
  return out;
}

/// Every name (free or bound) occurring anywhere in `f`.
inline void collect_all_names(const Formula& f, std::set<std::string>& out);

inline void collect_all_names(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
  case Term::Kind::Var:
    out.insert(t.variable().name);
    return;
  case Term::Kind::SetAbs:
    out.insert(t.variable().name);
    collect_all_names(t.body(), out);
    return;
  default:
    for (std::size_t i = 0; i < t.arity(); ++i)
      collect_all_names(t.arg(i), out);
  }
}

inline void collect_all_names(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
  case Formula::Kind::Eq:
  case Formula::Kind::Mem:
    collect_all_names(f.lhs(), out);
    collect_all_names(f.rhs(), out);
    return;
  case Formula::Kind::False:
    return;
  case Formula::Kind::Or:
  case Formula::Kind::And:
  case Formula::Kind::Imp:
    collect_all_names(f.left(), out);
    collect_all_names(f.right(), out);
    return;
  case Formula::Kind::Forall:
  case Formula::Kind::Exists:
    out.insert(f.variable().name);
    collect_all_names(f.body(), out);
    return;
  }
}

/// `base`, or `base` followed by the smallest numeric suffix not in `avoid`.
inline std::string fresh_name(const std::string& base,
                              const std::set<std::string>& avoid) {
  if (!avoid.contains(base))
    return base;
  std::string stem = base;
  while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back())))
    stem.pop_back();
  if (stem.empty())
    stem = "v";
  for (unsigned i = 1;; ++i) {
    std::string candidate = stem + std::to_string(i);
    if (!avoid.contains(candidate))
      return candidate;
  }
}

// ----------------------------------------------------------------------------
// Capture-avoiding substitution  t[r/v]
//
// Binders shadow by identity (name and sort). A binder is renamed when its
// name clashes with a free variable of the replacement, or with the name of
// the substituted variable itself, so that printed output stays unambiguous.

Formula substitute(const Formula& f, const Variable& v, const Term& r);

namespace detail {

template <class Rebuild, class Body>
auto subst_binder(const Variable& binder, const Body& body, const Variable& v,
                  const Term& r, Rebuild rebuild) {
  if (binder == v)
    return rebuild(binder, body);
  auto body_free = free_variables(body);
  if (!body_free.contains(v))
    return rebuild(binder, body);
  auto repl_names = names_of(free_variables(r));
  if (repl_names.contains(binder.name) || binder.name == v.name) {
    std::set<std::string> avoid = repl_names;
    for (const auto& n : names_of(body_free))
      avoid.insert(n);
    collect_all_names(body, avoid);
    avoid.insert(v.name);
    Variable renamed{fresh_name(binder.name, avoid), binder.sort};
    Body moved = substitute(body, binder, Term::var(renamed));
    return rebuild(renamed, substitute(moved, v, r));
  }
  return rebuild(binder, substitute(body, v, r));
}

} // namespace detail

inline Term substitute(const Term& t, const Variable& v, const Term& r) {
  switch (t.kind()) {
  case Term::Kind::Var:
    return t.variable() == v ? r : t;
  case Term::Kind::Star:
  case Term::Kind::Zero:
    return t;
  case Term::Kind::Succ:
    return Term::succ(substitute(t.arg(0), v, r));
  case Term::Kind::Add:
    return Term::add(substitute(t.arg(0), v, r), substitute(t.arg(1), v, r));
  case Term::Kind::Mul:
    return Term::mul(substitute(t.arg(0), v, r), substitute(t.arg(1), v, r));
  case Term::Kind::Pair:
    return Term::pair(substitute(t.arg(0), v, r), substitute(t.arg(1), v, r));
  case Term::Kind::Fst:
    return Term::fst(substitute(t.arg(0), v, r));
  case Term::Kind::Snd:
    return Term::snd(substitute(t.arg(0), v, r));
  case Term::Kind::SetAbs: {
    unsigned level = t.annotation();
    return detail::subst_binder(
        t.variable(), t.body(), v, r,
        [level](const Variable& b, const Formula& body) {
          return Term::set_abs(b, body, level);
        });
  }
  }
  return t;
}

inline Formula substitute(const Formula& f, const Variable& v, const Term& r) {
  switch (f.kind()) {
  case Formula::Kind::Eq:
    return Formula::eq(f.sort(), substitute(f.lhs(), v, r),
                       substitute(f.rhs(), v, r));
  case Formula::Kind::Mem:
    return Formula::mem(substitute(f.lhs(), v, r), substitute(f.rhs(), v, r));
  case Formula::Kind::False:
    return f;
  case Formula::Kind::Or:
    return Formula::disj(substitute(f.left(), v, r),
                         substitute(f.right(), v, r));
  case Formula::Kind::And:
    return Formula::conj(substitute(f.left(), v, r),
                         substitute(f.right(), v, r));
  case Formula::Kind::Imp:
    return Formula::imp(substitute(f.left(), v, r),
                        substitute(f.right(), v, r));
  case Formula::Kind::Forall:
    return detail::subst_binder(f.variable(), f.body(), v, r,
                                [](const Variable& b, const Formula& body) {
                                  return Formula::forall(b, body);
                                });
  case Formula::Kind::Exists:
    return detail::subst_binder(f.variable(), f.body(), v, r,
                                [](const Variable& b, const Formula& body) {
                                  return Formula::exists(b, body);
                                });
  }
  return f;
}

// ----------------------------------------------------------------------------
// Alpha-equivalence: bound variables are compared by binding depth.

namespace detail {

struct AlphaScope {
  std::vector<Variable> left, right;

  // Index of the innermost binding of v, or -1 when v is free.
  static long find(const std::vector<Variable>& stack, const Variable& v) {
    for (std::size_t i = stack.size(); i-- > 0;)
      if (stack[i] == v)
        return static_cast<long>(i);
    return -1;
  }
};

inline bool alpha_eq(const Formula& a, const Formula& b, AlphaScope& s);

inline bool alpha_eq(const Term& a, const Term& b, AlphaScope& s) {
  if (a.kind() != b.kind())
    return false;
  switch (a.kind()) {
  case Term::Kind::Var: {
    long i = AlphaScope::find(s.left, a.variable());
    long j = AlphaScope::find(s.right, b.variable());
    if (i < 0 && j < 0)
      return a.variable() == b.variable();
    return i == j;
  }
  case Term::Kind::SetAbs: {
    if (a.annotation() != b.annotation() ||
        a.variable().sort != b.variable().sort)
      return false;
    s.left.push_back(a.variable());
    s.right.push_back(b.variable());
    bool ok = alpha_eq(a.body(), b.body(), s);
    s.left.pop_back();
    s.right.pop_back();
    return ok;
  }
  default:
    for (std::size_t i = 0; i < a.arity(); ++i)
      if (!alpha_eq(a.arg(i), b.arg(i), s))
        return false;
    return true;
  }
}

inline bool alpha_eq(const Formula& a, const Formula& b, AlphaScope& s) {
  if (a.kind() != b.kind())
    return false;
  switch (a.kind()) {
  case Formula::Kind::Eq:
    return a.sort() == b.sort() && alpha_eq(a.lhs(), b.lhs(), s) &&
           alpha_eq(a.rhs(), b.rhs(), s);
  case Formula::Kind::Mem:
    return alpha_eq(a.lhs(), b.lhs(), s) && alpha_eq(a.rhs(), b.rhs(), s);
  case Formula::Kind::False:
    return true;
  case Formula::Kind::Or:
  case Formula::Kind::And:
  case Formula::Kind::Imp:
    return alpha_eq(a.left(), b.left(), s) && alpha_eq(a.right(), b.right(), s);
  case Formula::Kind::Forall:
  case Formula::Kind::Exists: {
    if (a.variable().sort != b.variable().sort)
      return false;
    s.left.push_back(a.variable());
    s.right.push_back(b.variable());
    bool ok = alpha_eq(a.body(), b.body(), s);
    s.left.pop_back();
    s.right.pop_back();
    return ok;
  }
  }
  return false;
}

} // namespace detail

inline bool alpha_equal(const Term& a, const Term& b) {
  detail::AlphaScope s;
  return detail::alpha_eq(a, b, s);
}

inline bool alpha_equal(const Formula& a, const Formula& b) {
  detail::AlphaScope s;
  return detail::alpha_eq(a, b, s);
}

// ----------------------------------------------------------------------------
// Structural sort of a term. Variables carry their sort, so this needs no
// context; it does not check set-abstraction levels (see typing.hpp).

inline TypeSymbol structural_sort(const Term& t) {
  auto expect_nat = [](const Term& a, const char* op) {
    if (!structural_sort(a).is_nat())
      throw SortError(SortErrorKind::IllSorted,
                      std::string("operand of ") + op + " is not of sort N");
  };
  switch (t.kind()) {
  case Term::Kind::Var:
    return t.variable().sort;
  case Term::Kind::Star:
    return TypeSymbol::unit();
  case Term::Kind::Zero:
    return TypeSymbol::nat();
  case Term::Kind::Succ:
    expect_nat(t.arg(0), "S");
    return TypeSymbol::nat();
  case Term::Kind::Add:
    expect_nat(t.arg(0), "+");
    expect_nat(t.arg(1), "+");
    return TypeSymbol::nat();
  case Term::Kind::Mul:
    expect_nat(t.arg(0), ".");
    expect_nat(t.arg(1), ".");
    return TypeSymbol::nat();
  case Term::Kind::Pair:
    return TypeSymbol::prod(structural_sort(t.arg(0)), structural_sort(t.arg(1)));
  case Term::Kind::Fst:
  case Term::Kind::Snd: {
    auto s = structural_sort(t.arg(0));
    if (!s.is_prod())
      throw SortError(SortErrorKind::IllSorted,
                      std::string(t.kind() == Term::Kind::Fst ? "fst" : "snd") +
                          " applied to a term that is not of product sort");
    return t.kind() == Term::Kind::Fst ? s.left() : s.right();
  }
  case Term::Kind::SetAbs:
    return TypeSymbol::pow(t.annotation(), t.variable().sort);
  }
  return TypeSymbol::unit();
}

// ----------------------------------------------------------------------------
// Sequents

struct Sequent {
  SortContext vars;
  std::vector<Formula> hypotheses;
  Formula goal = Formula::falsum();
};

} // namespace irtt
