#pragma once

// Setoid interpretation of IRTT into Martin-Löf type theory.
//
// Types become setoids (carrier, equivalence relation), formulas become
// types, set abstractions become pairs of a propositional function and a
// hole standing for its extensionality proof. Universe levels of the
// resulting skeletons are inferred structurally.

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "irtt/levels.hpp"
#include "irtt/print.hpp"
#include "irtt/syntax.hpp"
#include "irtt/typing.hpp"

namespace irtt {

struct SetoidIndex {
  unsigned carrier = 0;  // m: carrier lives in U_m
  unsigned eq = 0;       // n: equivalence relation lands in U_n

  bool admissible_as(const SetoidIndex& o) const { return o.carrier >= carrier && o.eq >= eq; }
  friend bool operator==(const SetoidIndex&, const SetoidIndex&) = default;
};

inline SetoidIndex index_product(const SetoidIndex& a, const SetoidIndex& b) {
  return {std::max(a.carrier, b.carrier), std::max(a.eq, b.eq)};
}

/// Index of B^A for A an (m,n)-setoid and B a (k,l)-setoid.
inline SetoidIndex index_exponent(const SetoidIndex& dom, const SetoidIndex& cod) {
  return {std::max({dom.carrier, dom.eq, cod.carrier, cod.eq}), std::max(dom.carrier, cod.eq)};
}

inline SetoidIndex omega_index(unsigned n) { return {n + 1, n}; }

inline std::string to_string(const SetoidIndex& i) {
  return "(" + std::to_string(i.carrier) + "," + std::to_string(i.eq) + ")";
}

// ----------------------------------------------------------------------------
// Target syntax

class MlttExpr {
public:
  enum class Kind {
    Pi, Sigma, Sum, IdType, NatType, UnitType, EmptyType, Universe,
    Lambda, Apply, PairC, Proj1, Proj2, Hole, Var, Const
  };

  static MlttExpr pi(std::string x, MlttExpr dom, MlttExpr cod) {
    return make(Kind::Pi, std::move(x), 0, {std::move(dom), std::move(cod)});
  }
  static MlttExpr sigma(std::string x, MlttExpr dom, MlttExpr cod) {
    return make(Kind::Sigma, std::move(x), 0, {std::move(dom), std::move(cod)});
  }
  static MlttExpr arrow(MlttExpr a, MlttExpr b) { return pi("_", std::move(a), std::move(b)); }
  static MlttExpr times(MlttExpr a, MlttExpr b) { return sigma("_", std::move(a), std::move(b)); }
  static MlttExpr sum(MlttExpr a, MlttExpr b) {
    return make(Kind::Sum, "", 0, {std::move(a), std::move(b)});
  }
  static MlttExpr id(MlttExpr type, MlttExpr a, MlttExpr b) {
    return make(Kind::IdType, "", 0, {std::move(type), std::move(a), std::move(b)});
  }
  static MlttExpr nat() { return make(Kind::NatType, "", 0, {}); }
  static MlttExpr unit() { return make(Kind::UnitType, "", 0, {}); }
  static MlttExpr empty() { return make(Kind::EmptyType, "", 0, {}); }
  static MlttExpr universe(unsigned n) { return make(Kind::Universe, "", n, {}); }
  static MlttExpr lambda(std::string x, MlttExpr dom, MlttExpr body) {
    return make(Kind::Lambda, std::move(x), 0, {std::move(dom), std::move(body)});
  }
  static MlttExpr apply(MlttExpr f, MlttExpr a) {
    return make(Kind::Apply, "", 0, {std::move(f), std::move(a)});
  }
  static MlttExpr pair(MlttExpr a, MlttExpr b) {
    return make(Kind::PairC, "", 0, {std::move(a), std::move(b)});
  }
  /// First projection; a literal pair is projected on the spot.
  static MlttExpr proj1(MlttExpr p) {
    if (p.kind() == Kind::PairC)
      return p.child(0);
    return make(Kind::Proj1, "", 0, {std::move(p)});
  }
  static MlttExpr proj2(MlttExpr p) {
    if (p.kind() == Kind::PairC)
      return p.child(1);
    return make(Kind::Proj2, "", 0, {std::move(p)});
  }
  /// A named gap whose type is the statement still to be proved.
  static MlttExpr hole(std::string id, MlttExpr type, std::string description) {
    auto e = make(Kind::Hole, std::move(id), 0, {std::move(type)});
    std::const_pointer_cast<Node>(e.node_)->note = std::move(description);
    return e;
  }
  static MlttExpr var(std::string x) { return make(Kind::Var, std::move(x), 0, {}); }
  static MlttExpr constant(std::string c) { return make(Kind::Const, std::move(c), 0, {}); }

  Kind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  unsigned universe_level() const { return node_->level; }
  const std::string& note() const { return node_->note; }
  std::size_t arity() const { return node_->children.size(); }
  const MlttExpr& child(std::size_t i) const { return node_->children.at(i); }

  friend bool operator==(const MlttExpr& a, const MlttExpr& b) {
    if (a.node_ == b.node_)
      return true;
    return a.kind() == b.kind() && a.name() == b.name() &&
           a.universe_level() == b.universe_level() &&
           a.node_->children == b.node_->children;
  }

private:
  struct Node {
    Kind kind;
    std::string name;  // binder, variable, constant or hole id
    unsigned level;
    std::vector<MlttExpr> children;
    std::string note;
  };
  explicit MlttExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static MlttExpr make(Kind k, std::string name, unsigned level, std::vector<MlttExpr> cs) {
    return MlttExpr(std::make_shared<Node>(Node{k, std::move(name), level, std::move(cs), {}}));
  }

  std::shared_ptr<const Node> node_;
};

inline bool binds(const MlttExpr& e) {
  using K = MlttExpr::Kind;
  return e.kind() == K::Pi || e.kind() == K::Sigma || e.kind() == K::Lambda;
}

inline void collect_free(const MlttExpr& e, std::set<std::string>& bound,
                         std::set<std::string>& out) {
  if (e.kind() == MlttExpr::Kind::Var) {
    if (!bound.contains(e.name()))
      out.insert(e.name());
    return;
  }
  if (binds(e)) {
    collect_free(e.child(0), bound, out);
    bool fresh = bound.insert(e.name()).second;
    collect_free(e.child(1), bound, out);
    if (fresh)
      bound.erase(e.name());
    return;
  }
  for (std::size_t i = 0; i < e.arity(); ++i)
    collect_free(e.child(i), bound, out);
}

inline std::set<std::string> free_names(const MlttExpr& e) {
  std::set<std::string> bound, out;
  collect_free(e, bound, out);
  return out;
}

inline std::string write_mltt(const MlttExpr& e) {
  using K = MlttExpr::Kind;
  auto c = [&](std::size_t i) { return write_mltt(e.child(i)); };
  switch (e.kind()) {
  case K::Pi:
    return "(Pi (" + e.name() + " " + c(0) + ") " + c(1) + ")";
  case K::Sigma:
    return "(Sigma (" + e.name() + " " + c(0) + ") " + c(1) + ")";
  case K::Lambda:
    return "(lambda (" + e.name() + " " + c(0) + ") " + c(1) + ")";
  case K::Sum:
    return "(Sum " + c(0) + " " + c(1) + ")";
  case K::IdType:
    return "(Id " + c(0) + " " + c(1) + " " + c(2) + ")";
  case K::NatType:
    return "Nat";
  case K::UnitType:
    return "Unit";
  case K::EmptyType:
    return "Empty";
  case K::Universe:
    return "(U " + std::to_string(e.universe_level()) + ")";
  case K::Apply:
    return "(app " + c(0) + " " + c(1) + ")";
  case K::PairC:
    return "(pair " + c(0) + " " + c(1) + ")";
  case K::Proj1:
    return "(p1 " + c(0) + ")";
  case K::Proj2:
    return "(p2 " + c(0) + ")";
  case K::Hole:
    return "?" + e.name();
  case K::Var:
  case K::Const:
    return e.name();
  }
  return "?";
}

/// Holes in left-to-right order.
inline void collect_holes(const MlttExpr& e, std::vector<MlttExpr>& out) {
  if (e.kind() == MlttExpr::Kind::Hole) {
    out.push_back(e);
    return;
  }
  for (std::size_t i = 0; i < e.arity(); ++i)
    collect_holes(e.child(i), out);
}

inline std::vector<MlttExpr> holes(const MlttExpr& e) {
  std::vector<MlttExpr> out;
  collect_holes(e, out);
  return out;
}

// ----------------------------------------------------------------------------
// Setoids

struct SetoidDesc {
  MlttExpr carrier;
  MlttExpr eq_rel;  // lambda a. lambda b. (a ~ b)
  SetoidIndex index;
};

namespace detail {

inline std::string fresh_mltt(const std::string& base, const std::set<std::string>& avoid) {
  if (!avoid.contains(base))
    return base;
  for (unsigned i = 1;; ++i)
    if (auto n = base + std::to_string(i); !avoid.contains(n))
      return n;
}

inline std::set<std::string> names_in(std::initializer_list<MlttExpr> es) {
  std::set<std::string> out;
  for (const auto& e : es)
    out.merge(free_names(e));
  return out;
}

inline MlttExpr iff(MlttExpr p, MlttExpr q) {
  return MlttExpr::times(MlttExpr::arrow(p, q), MlttExpr::arrow(q, p));
}

} // namespace detail

inline MlttExpr carrier_of(const TypeSymbol& t);

/// a =_t b as a type.
inline MlttExpr eq_at(const TypeSymbol& t, const MlttExpr& a, const MlttExpr& b) {
  using M = MlttExpr;
  switch (t.kind()) {
  case TypeSymbol::Kind::Unit:
  case TypeSymbol::Kind::Nat:
    return M::id(carrier_of(t), a, b);
  case TypeSymbol::Kind::Prod:
    return M::times(eq_at(t.left(), M::proj1(a), M::proj1(b)),
                    eq_at(t.right(), M::proj2(a), M::proj2(b)));
  case TypeSymbol::Kind::Pow: {
    auto z = detail::fresh_mltt("z", detail::names_in({a, b}));
    auto zv = M::var(z);
    return M::pi(z, carrier_of(t.body()),
                 detail::iff(M::apply(M::proj1(a), zv), M::apply(M::proj1(b), zv)));
  }
  }
  return M::empty();
}

/// Extensionality of a propositional function f on the setoid of t.
inline MlttExpr extensionality(const TypeSymbol& t, const MlttExpr& f) {
  using M = MlttExpr;
  auto avoid = free_names(f);
  auto x = detail::fresh_mltt("x", avoid);
  avoid.insert(x);
  auto y = detail::fresh_mltt("y", avoid);
  auto xv = M::var(x), yv = M::var(y);
  auto car = carrier_of(t);
  return M::pi(x, car, M::pi(y, car, M::arrow(eq_at(t, xv, yv),
                                              detail::iff(M::apply(f, xv), M::apply(f, yv)))));
}

inline MlttExpr carrier_of(const TypeSymbol& t) {
  using M = MlttExpr;
  switch (t.kind()) {
  case TypeSymbol::Kind::Unit:
    return M::unit();
  case TypeSymbol::Kind::Nat:
    return M::nat();
  case TypeSymbol::Kind::Prod:
    return M::times(carrier_of(t.left()), carrier_of(t.right()));
  case TypeSymbol::Kind::Pow: {
    auto pred = M::pi("z", carrier_of(t.body()), M::universe(t.pow_level()));
    return M::sigma("f", pred, extensionality(t.body(), M::var("f")));
  }
  }
  return M::empty();
}

/// Index by the setoid calculus alone, independent of the level functions.
inline SetoidIndex setoid_index(const TypeSymbol& t) {
  switch (t.kind()) {
  case TypeSymbol::Kind::Unit:
  case TypeSymbol::Kind::Nat:
    return {0, 0};
  case TypeSymbol::Kind::Prod:
    return index_product(setoid_index(t.left()), setoid_index(t.right()));
  case TypeSymbol::Kind::Pow:
    return index_exponent(setoid_index(t.body()), omega_index(t.pow_level()));
  }
  return {};
}

inline SetoidDesc interp_type(const TypeSymbol& t) {
  using M = MlttExpr;
  auto car = carrier_of(t);
  return {car, M::lambda("a", car, M::lambda("b", car, eq_at(t, M::var("a"), M::var("b")))),
          setoid_index(t)};
}

/// Omega_n = (U_n, <->).
inline SetoidDesc omega(unsigned n) {
  using M = MlttExpr;
  auto u = M::universe(n);
  return {u, M::lambda("a", u, M::lambda("b", u, detail::iff(M::var("a"), M::var("b")))),
          omega_index(n)};
}

// ----------------------------------------------------------------------------
// Formulas

namespace detail {

class Translator {
public:
  MlttExpr formula(const Formula& f) {
    using M = MlttExpr;
    using K = Formula::Kind;
    switch (f.kind()) {
    case K::Eq:
      return eq_at(f.sort(), term(f.lhs()), term(f.rhs()));
    case K::Mem:
      return M::apply(M::proj1(term(f.rhs())), term(f.lhs()));
    case K::False:
      return M::empty();
    case K::Or:
      return M::sum(formula(f.left()), formula(f.right()));
    case K::And:
      return M::times(formula(f.left()), formula(f.right()));
    case K::Imp:
      return M::arrow(formula(f.left()), formula(f.right()));
    case K::Forall:
      return M::pi(f.variable().name, carrier_of(f.variable().sort), formula(f.body()));
    case K::Exists:
      return M::sigma(f.variable().name, carrier_of(f.variable().sort), formula(f.body()));
    }
    return M::empty();
  }

  MlttExpr term(const Term& t) {
    using M = MlttExpr;
    using K = Term::Kind;
    switch (t.kind()) {
    case K::Var:
      return M::var(t.variable().name);
    case K::Star:
      return M::constant("tt");
    case K::Zero:
      return M::constant("0");
    case K::Succ:
      return M::apply(M::constant("succ"), term(t.arg(0)));
    case K::Add:
      return M::apply(M::apply(M::constant("add"), term(t.arg(0))), term(t.arg(1)));
    case K::Mul:
      return M::apply(M::apply(M::constant("mul"), term(t.arg(0))), term(t.arg(1)));
    case K::Pair:
      return M::pair(term(t.arg(0)), term(t.arg(1)));
    case K::Fst:
      return M::proj1(term(t.arg(0)));
    case K::Snd:
      return M::proj2(term(t.arg(0)));
    case K::SetAbs: {
      const auto& x = t.variable();
      auto fn = M::lambda(x.name, carrier_of(x.sort), formula(t.body()));
      auto id = "e" + std::to_string(emitted.size() + 1);
      emitted.push_back(M::hole(id, extensionality(x.sort, fn),
                                "extensionality of " + print(t) + " : |" + print(x.sort) +
                                    "| -> U_" + std::to_string(t.annotation())));
      return M::pair(fn, emitted.back());
    }
    }
    return M::empty();
  }

  std::vector<MlttExpr> emitted;
};

} // namespace detail

/// Propositions-as-types skeleton of a well-formed formula.
inline MlttExpr interp_formula(const Formula& f, const SortContext& ctx = {}) {
  min_level(f, ctx);
  return detail::Translator().formula(f);
}

inline MlttExpr interp_term(const Term& t, const SortContext& ctx = {}) {
  sort_of(t, ctx);
  return detail::Translator().term(t);
}

// ----------------------------------------------------------------------------
// Universe inference

using MlttContext = std::vector<std::pair<std::string, MlttExpr>>;

inline MlttContext interp_context(const SortContext& ctx) {
  MlttContext out;
  for (const auto& [name, sort] : ctx)
    out.emplace_back(name, carrier_of(sort));
  return out;
}

namespace detail {

class UniverseInference {
public:
  explicit UniverseInference(MlttContext env) : env_(std::move(env)) {}

  /// Least n with e : U_n, for e a type.
  unsigned level(const MlttExpr& e) {
    using K = MlttExpr::Kind;
    switch (e.kind()) {
    case K::NatType:
    case K::UnitType:
    case K::EmptyType:
      return 0;
    case K::Universe:
      return e.universe_level() + 1;
    case K::IdType:
      return level(e.child(0));
    case K::Sum:
      return std::max(level(e.child(0)), level(e.child(1)));
    case K::Pi:
    case K::Sigma: {
      unsigned d = level(e.child(0));
      env_.emplace_back(e.name(), e.child(0));
      unsigned c = level(e.child(1));
      env_.pop_back();
      return std::max(d, c);
    }
    default: {
      auto t = type(e);
      if (t.kind() != K::Universe)
        throw Error("universe inference: " + write_mltt(e) + " is not a type");
      return t.universe_level();
    }
    }
  }

  /// Type of a term; types are typed by their sharp universe.
  MlttExpr type(const MlttExpr& e) {
    using K = MlttExpr::Kind;
    using M = MlttExpr;
    switch (e.kind()) {
    case K::Var:
      for (auto it = env_.rbegin(); it != env_.rend(); ++it)
        if (it->first == e.name())
          return it->second;
      throw Error("universe inference: unbound variable " + e.name());
    case K::Const:
      if (e.name() == "0")
        return M::nat();
      if (e.name() == "tt")
        return M::unit();
      if (e.name() == "succ")
        return M::arrow(M::nat(), M::nat());
      return M::arrow(M::nat(), M::arrow(M::nat(), M::nat()));
    case K::Lambda: {
      env_.emplace_back(e.name(), e.child(0));
      auto body = type(e.child(1));
      env_.pop_back();
      return M::pi(e.name(), e.child(0), body);
    }
    case K::Apply: {
      auto f = type(e.child(0));
      if (f.kind() != K::Pi)
        throw Error("universe inference: applying a non-function " + write_mltt(e.child(0)));
      return f.child(1);
    }
    case K::PairC:
      return M::times(type(e.child(0)), type(e.child(1)));
    case K::Proj1:
    case K::Proj2: {
      auto p = type(e.child(0));
      if (p.kind() != K::Sigma)
        throw Error("universe inference: projecting a non-pair " + write_mltt(e.child(0)));
      return e.kind() == K::Proj1 ? p.child(0) : p.child(1);
    }
    case K::Hole:
      return e.child(0);
    default:
      return M::universe(level(e));
    }
  }

private:
  MlttContext env_;
};

} // namespace detail

inline unsigned infer_universe(const MlttExpr& e, const MlttContext& env = {}) {
  return detail::UniverseInference(env).level(e);
}

struct Translation {
  MlttExpr expr;
  std::vector<MlttExpr> obligations;  // every hole emitted, even if projected away
  unsigned universe;
};

inline Translation translate(const Formula& f, const SortContext& ctx = {}) {
  min_level(f, ctx);
  detail::Translator tr;
  auto e = tr.formula(f);
  auto u = infer_universe(e, interp_context(ctx));
  return {e, std::move(tr.emitted), u};
}

} // namespace irtt
