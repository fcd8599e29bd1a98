#pragma once

// Local sets and maps between them, built as IRTT terms.
//
// Every construction records how its levels were computed and the sequents
// that must hold for it to be what it claims (its graphs are maps, the
// universal property holds). Nothing is assumed about the inputs beyond
// their sorts: side conditions on them become hypotheses or obligations.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "irtt/axioms.hpp"
#include "irtt/levels.hpp"
#include "irtt/print.hpp"
#include "irtt/syntax.hpp"
#include "irtt/typing.hpp"

namespace irtt {

/// (F, k): a graph F : P[k](A * B) meant as a map dom -> cod.
struct MapDesc {
  LocalSetDesc dom;
  LocalSetDesc cod;
  Term graph;
  unsigned level;
};

struct Obligation {
  std::string name;
  Sequent sequent;
  unsigned level;  // least level at which every formula of the sequent is formed
};

using LevelTrace = std::vector<std::string>;

class ConstructionError : public Error {
public:
  using Error::Error;
};

inline std::string describe(const LocalSetDesc& x) {
  return "(" + print(x.carrier) + ", " + print(x.predicate) + ", " + std::to_string(x.level) + ")";
}

inline std::string describe(const MapDesc& f) {
  return "(" + print(f.graph) + ", " + std::to_string(f.level) + ") : " + describe(f.dom) +
         " -> " + describe(f.cod);
}

inline bool same_local_set(const LocalSetDesc& a, const LocalSetDesc& b) {
  return a.carrier == b.carrier && a.level == b.level && alpha_equal(a.predicate, b.predicate);
}

inline void check_local_set(const LocalSetDesc& x) {
  auto s = sort_of_open(x.predicate);
  if (s != TypeSymbol::pow(x.level, x.carrier))
    throw SortError(SortErrorKind::IllSorted, "local set predicate " + print(x.predicate) +
                                                  " has sort " + print(s) + ", expected " +
                                                  print(TypeSymbol::pow(x.level, x.carrier)));
}

/// A map whose level is read off the sort of its graph.
inline MapDesc make_map(const LocalSetDesc& dom, const LocalSetDesc& cod, const Term& graph) {
  check_local_set(dom);
  check_local_set(cod);
  auto s = sort_of_open(graph);
  auto ab = TypeSymbol::prod(dom.carrier, cod.carrier);
  if (!s.is_pow() || s.body() != ab)
    throw SortError(SortErrorKind::IllSorted, "graph " + print(graph) + " has sort " + print(s) +
                                                  ", expected P[k](" + print(ab) + ")");
  return {dom, cod, graph, s.pow_level()};
}

namespace detail {

class Names {
public:
  template <class... Ts> explicit Names(const Ts&... ts) { (add(ts), ...); }

  void add(const Term& t) {
    for (const auto& v : free_variables(t))
      avoid_.insert(v.name);
  }
  void add(const Formula& f) {
    for (const auto& v : free_variables(f))
      avoid_.insert(v.name);
  }
  void add(const LocalSetDesc& x) { add(x.predicate); }
  void add(const MapDesc& f) {
    add(f.dom);
    add(f.cod);
    add(f.graph);
  }

  Variable fresh(const std::string& base, const TypeSymbol& sort) {
    return fresh_var(base, sort, avoid_);
  }

private:
  std::set<std::string> avoid_;
};

inline Formula conj_all(std::vector<Formula> fs) {
  Formula out = fs.at(0);
  for (std::size_t i = 1; i < fs.size(); ++i)
    out = Formula::conj(out, fs[i]);
  return out;
}

inline Term fst(const Term& t) { return Term::fst(t); }
inline Term snd(const Term& t) { return Term::snd(t); }
inline Formula in(const Term& a, const Term& s) { return Formula::mem(a, s); }

inline std::string trace_line(const std::string& lhs, const std::string& formula,
                              std::initializer_list<unsigned> parts) {
  return lhs + " = " + formula + " = " + max_trace(parts);
}

} // namespace detail

/// Graphs of f and g are extensionally equal.
inline Formula ext_equal(const MapDesc& f, const MapDesc& g) {
  detail::Names names(f, g);
  auto x = names.fresh("x", f.dom.carrier);
  auto y = names.fresh("y", f.cod.carrier);
  auto p = Term::pair(Term::var(x), Term::var(y));
  return Formula::forall(
      x, Formula::forall(y, Formula::iff(Formula::mem(p, f.graph), Formula::mem(p, g.graph))));
}

inline Formula is_map(const MapDesc& f) { return derive_map_predicate(f.dom, f.cod, f.graph); }

/// A sequent over the free variables of its formulas.
inline Obligation obligation(std::string name, std::vector<Formula> hyps, Formula goal) {
  Sequent s;
  unsigned level = 0;
  auto scan = [&](const Formula& f) {
    for (const auto& v : free_variables(f)) {
      auto [it, fresh] = s.vars.emplace(v.name, v.sort);
      if (!fresh && it->second != v.sort)
        throw ConstructionError("obligation '" + name + "': variable " + v.name +
                                " is used at two sorts");
    }
  };
  for (const auto& h : hyps)
    scan(h);
  scan(goal);
  for (const auto& h : hyps)
    level = std::max(level, min_level(h, s.vars));
  level = std::max(level, min_level(goal, s.vars));
  s.hypotheses = std::move(hyps);
  s.goal = std::move(goal);
  return {std::move(name), std::move(s), level};
}

// ----------------------------------------------------------------------------
// The category

/// g o f, at level |B| v k v l.
inline MapDesc compose(const MapDesc& g, const MapDesc& f, LevelTrace* trace = nullptr) {
  if (!same_local_set(f.cod, g.dom))
    throw ConstructionError("cannot compose: codomain " + describe(f.cod) +
                            " differs from domain " + describe(g.dom));
  const auto& a = f.dom.carrier;
  const auto& b = f.cod.carrier;
  const auto& c = g.cod.carrier;
  detail::Names names(f, g);
  auto w = names.fresh("w", TypeSymbol::prod(a, c));
  auto y = names.fresh("y", b);
  auto wt = Term::var(w), yt = Term::var(y);
  unsigned q = std::max({level(b), f.level, g.level});
  auto body = Formula::exists(
      y, Formula::conj(detail::in(Term::pair(detail::fst(wt), yt), f.graph),
                       detail::in(Term::pair(yt, detail::snd(wt)), g.graph)));
  if (trace)
    trace->push_back(detail::trace_line("q", "|B| v k v l", {level(b), f.level, g.level}));
  return {f.dom, g.cod, Term::set_abs(w, body, q), q};
}

/// 1_X at level m v ||A||.
inline MapDesc identity(const LocalSetDesc& x, LevelTrace* trace = nullptr) {
  check_local_set(x);
  const auto& a = x.carrier;
  detail::Names names(x);
  auto w = names.fresh("w", TypeSymbol::prod(a, a));
  auto wt = Term::var(w);
  unsigned lv = std::max(x.level, eq_level(a));
  auto body = detail::conj_all({detail::in(detail::fst(wt), x.predicate),
                                detail::in(detail::snd(wt), x.predicate),
                                eq_formula(a, detail::fst(wt), detail::snd(wt))});
  if (trace)
    trace->push_back(detail::trace_line("identity level", "m v ||A||", {x.level, eq_level(a)}));
  return {x, x, Term::set_abs(w, body, lv), lv};
}

/// The terminal local set (1, {x:1 | true}@0, 0).
inline LocalSetDesc terminal() { return full_local_set(TypeSymbol::unit()); }

// ----------------------------------------------------------------------------
// Products

struct ProductResult {
  LocalSetDesc set;
  MapDesc p1, p2;
  LevelTrace trace;
  std::vector<Obligation> obligations;
};

inline ProductResult product(const LocalSetDesc& x1, const LocalSetDesc& x2) {
  check_local_set(x1);
  check_local_set(x2);
  const auto& a1 = x1.carrier;
  const auto& a2 = x2.carrier;
  auto a = TypeSymbol::prod(a1, a2);
  detail::Names names(x1, x2);
  ProductResult r{x1, {x1, x1, Term::zero(), 0}, {x1, x1, Term::zero(), 0}, {}, {}};

  unsigned m = std::max(x1.level, x2.level);
  auto z = names.fresh("z", a);
  auto zt = Term::var(z);
  r.set = {a,
           Term::set_abs(z, Formula::conj(detail::in(detail::fst(zt), x1.predicate),
                                          detail::in(detail::snd(zt), x2.predicate)),
                         m),
           m};
  r.trace.push_back(detail::trace_line("level", "m1 v m2", {x1.level, x2.level}));

  auto projection = [&](int i) {
    const auto& xi = i == 1 ? x1 : x2;
    const auto& ai = xi.carrier;
    auto v = names.fresh("z", TypeSymbol::prod(a, ai));
    auto vt = Term::var(v);
    auto pick = i == 1 ? detail::fst(detail::fst(vt)) : detail::snd(detail::fst(vt));
    unsigned ri = std::max({x1.level, x2.level, eq_level(ai)});
    auto body = detail::conj_all({detail::in(detail::fst(vt), r.set.predicate),
                                  detail::in(detail::snd(vt), xi.predicate),
                                  eq_formula(ai, pick, detail::snd(vt))});
    r.trace.push_back(detail::trace_line("r" + std::to_string(i), "m1 v m2 v ||A" +
                                                                      std::to_string(i) + "||",
                                         {x1.level, x2.level, eq_level(ai)}));
    return MapDesc{r.set, xi, Term::set_abs(v, body, ri), ri};
  };
  r.p1 = projection(1);
  r.p2 = projection(2);
  r.obligations.push_back(obligation("p1 is a map", {}, is_map(r.p1)));
  r.obligations.push_back(obligation("p2 is a map", {}, is_map(r.p2)));
  return r;
}

struct PairingResult {
  MapDesc map;
  LevelTrace trace;
  std::vector<Obligation> obligations;
};

/// <F, G> : Z -> X1 x X2 at level p v q.
inline PairingResult pairing(const ProductResult& prod, const MapDesc& f, const MapDesc& g) {
  if (!same_local_set(f.dom, g.dom))
    throw ConstructionError("pairing needs a common domain, got " + describe(f.dom) + " and " +
                            describe(g.dom));
  if (!same_local_set(f.cod, prod.p1.cod) || !same_local_set(g.cod, prod.p2.cod))
    throw ConstructionError("pairing: codomains do not match the product factors");
  const auto& c = f.dom.carrier;
  detail::Names names(f, g, prod.set);
  auto w = names.fresh("w", TypeSymbol::prod(c, prod.set.carrier));
  auto wt = Term::var(w);
  unsigned lv = std::max(f.level, g.level);
  auto body = Formula::conj(
      detail::in(Term::pair(detail::fst(wt), detail::fst(detail::snd(wt))), f.graph),
      detail::in(Term::pair(detail::fst(wt), detail::snd(detail::snd(wt))), g.graph));
  PairingResult r{{f.dom, prod.set, Term::set_abs(w, body, lv), lv}, {}, {}};
  r.trace.push_back(detail::trace_line("pairing level", "p v q", {f.level, g.level}));

  std::vector<Formula> maps{is_map(f), is_map(g)};
  r.obligations.push_back(obligation("<F,G> is a map", maps, is_map(r.map)));
  r.obligations.push_back(
      obligation("p1 o <F,G> = F", maps, ext_equal(compose(prod.p1, r.map), f)));
  r.obligations.push_back(
      obligation("p2 o <F,G> = G", maps, ext_equal(compose(prod.p2, r.map), g)));

  auto m = names.fresh("M", TypeSymbol::pow(lv, TypeSymbol::prod(c, prod.set.carrier)));
  MapDesc other{f.dom, prod.set, Term::var(m), lv};
  auto hyps = maps;
  hyps.push_back(is_map(other));
  hyps.push_back(ext_equal(compose(prod.p1, other), f));
  hyps.push_back(ext_equal(compose(prod.p2, other), g));
  r.obligations.push_back(obligation("<F,G> is unique", hyps, ext_equal(other, r.map)));
  return r;
}

/// f x g : Z1 x Z2 -> X1 x X2, as <f o p1, g o p2>.
inline MapDesc product_map(const MapDesc& f, const MapDesc& g) {
  auto dom = product(f.dom, g.dom);
  auto cod = product(f.cod, g.cod);
  return pairing(cod, compose(f, dom.p1), compose(g, dom.p2)).map;
}

// ----------------------------------------------------------------------------
// Quotients

struct QuotientResult {
  LocalSetDesc set;  // (P[l](A), X/E, l)
  MapDesc q;
  LocalSetDesc relation;
  LevelTrace trace;
  std::vector<Obligation> obligations;
  std::vector<Formula> equivalence;  // the three conditions on E
};

inline QuotientResult quotient(const LocalSetDesc& x, const LocalSetDesc& e) {
  check_local_set(x);
  check_local_set(e);
  const auto& a = x.carrier;
  if (e.carrier != TypeSymbol::prod(a, a))
    throw ConstructionError("quotient: relation carrier " + print(e.carrier) + " is not " +
                            print(TypeSymbol::prod(a, a)));
  detail::Names names(x, e);
  unsigned l = std::max({x.level, e.level, level(a)});
  auto b = TypeSymbol::pow(l, a);
  QuotientResult r{x, {x, x, Term::zero(), 0}, e, {}, {}, {}};
  r.trace.push_back(detail::trace_line("l", "m v n v |A|", {x.level, e.level, level(a)}));

  auto u = names.fresh("x", a), v = names.fresh("y", a), w = names.fresh("z", a);
  auto ut = Term::var(u), vt = Term::var(v), wt = Term::var(w);
  auto rel = [&](const Term& s, const Term& t) { return detail::in(Term::pair(s, t), e.predicate); };
  r.equivalence = {
      Formula::forall(u, Formula::iff(detail::in(ut, x.predicate), rel(ut, ut))),
      Formula::forall(u, Formula::forall(v, Formula::imp(rel(ut, vt), rel(vt, ut)))),
      Formula::forall(u, Formula::forall(v, Formula::forall(w, Formula::imp(
                                                Formula::conj(rel(ut, vt), rel(vt, wt)),
                                                rel(ut, wt)))))};
  r.obligations.push_back(obligation("E is reflexive on X", {}, r.equivalence[0]));
  r.obligations.push_back(obligation("E is symmetric", {}, r.equivalence[1]));
  r.obligations.push_back(obligation("E is transitive", {}, r.equivalence[2]));

  auto s = names.fresh("c", b);
  auto st = Term::var(s);
  auto classes = Term::set_abs(
      s,
      Formula::exists(u, Formula::conj(detail::in(ut, x.predicate),
                                       Formula::forall(v, Formula::iff(detail::in(vt, st),
                                                                       rel(ut, vt))))),
      l);
  r.set = {b, classes, l};
  r.trace.push_back("X/E : P[" + std::to_string(l) + "](P[" + std::to_string(l) + "](" +
                    print(a) + "))");

  auto q = names.fresh("w", TypeSymbol::prod(a, b));
  auto qt = Term::var(q);
  auto qbody = detail::conj_all({detail::in(detail::fst(qt), x.predicate),
                                 detail::in(detail::snd(qt), classes),
                                 detail::in(detail::fst(qt), detail::snd(qt))});
  r.q = {x, r.set, Term::set_abs(q, qbody, l), l};
  r.obligations.push_back(obligation("Q is a map", r.equivalence, is_map(r.q)));
  return r;
}

struct LiftResult {
  MapDesc h;
  LevelTrace trace;
  std::vector<Obligation> obligations;
};

/// The unique H : X/E -> Z with H o Q = F, for F : X -> Z respecting E.
inline LiftResult lift(const QuotientResult& qr, const MapDesc& f) {
  const auto& x = qr.q.dom;
  if (!same_local_set(f.dom, x))
    throw ConstructionError("lift: map domain " + describe(f.dom) + " is not " + describe(x));
  const auto& a = x.carrier;
  const auto& b = qr.set.carrier;
  const auto& c = f.cod.carrier;
  detail::Names names(qr.set, qr.relation, f);
  unsigned l = qr.set.level;
  unsigned rl = std::max({l, f.level, f.cod.level});
  LiftResult r{{qr.set, f.cod, Term::zero(), rl}, {}, {}};
  r.trace.push_back(detail::trace_line("r", "l v k v p", {l, f.level, f.cod.level}));

  auto w = names.fresh("w", TypeSymbol::prod(b, c));
  auto u = names.fresh("u", a);
  auto wt = Term::var(w), ut = Term::var(u);
  auto body = Formula::conj(
      detail::in(detail::fst(wt), qr.set.predicate),
      Formula::exists(u, detail::conj_all({detail::in(ut, x.predicate),
                                           detail::in(ut, detail::fst(wt)),
                                           detail::in(Term::pair(ut, detail::snd(wt)),
                                                      f.graph)})));
  r.h.graph = Term::set_abs(w, body, rl);

  auto x1 = names.fresh("x", a), x2 = names.fresh("x", a);
  auto z1 = names.fresh("z", c), z2 = names.fresh("z", c);
  auto t = [](const Variable& v) { return Term::var(v); };
  auto respects = detail::foralls(
      {x1, z1, x2, z2},
      Formula::imp(detail::conj_all({detail::in(Term::pair(t(x1), t(z1)), f.graph),
                                     detail::in(Term::pair(t(x2), t(z2)), f.graph),
                                     detail::in(Term::pair(t(x1), t(x2)), qr.relation.predicate)}),
                   Formula::eq(c, t(z1), t(z2))));

  auto hyps = qr.equivalence;
  hyps.push_back(is_map(f));
  r.obligations.push_back(obligation("F respects E", hyps, respects));
  hyps.push_back(respects);
  r.obligations.push_back(obligation("H is a map", hyps, is_map(r.h)));
  r.obligations.push_back(obligation("H o Q = F", hyps, ext_equal(compose(r.h, qr.q), f)));

  auto other = names.fresh("H", TypeSymbol::pow(rl, TypeSymbol::prod(b, c)));
  MapDesc h2{qr.set, f.cod, Term::var(other), rl};
  auto uhyps = hyps;
  uhyps.push_back(is_map(h2));
  uhyps.push_back(ext_equal(compose(h2, qr.q), f));
  r.obligations.push_back(obligation("H is unique", uhyps, ext_equal(h2, r.h)));
  return r;
}

// ----------------------------------------------------------------------------
// Exponentials

struct ExponentialResult {
  LocalSetDesc set;     // (P[k](A * B), Y^X, s)
  MapDesc ev;           // Y^X x X -> Y at level s
  ProductResult power;  // Y^X x X with its projections
  LocalSetDesc dom, cod;
  unsigned k, s;
  LevelTrace trace;
  std::vector<Obligation> obligations;
};

inline ExponentialResult exponential(const LocalSetDesc& x, const LocalSetDesc& y) {
  check_local_set(x);
  check_local_set(y);
  const auto& a = x.carrier;
  const auto& b = y.carrier;
  unsigned k = std::max({eq_level(b), x.level, y.level});
  unsigned s = std::max({level(a), level(b), x.level, y.level});
  auto graphs = TypeSymbol::pow(k, TypeSymbol::prod(a, b));
  detail::Names names(x, y);

  auto f = names.fresh("F", graphs);
  auto maps = Term::set_abs(f, derive_map_predicate(x, y, Term::var(f)), s);
  LocalSetDesc yx{graphs, maps, s};
  auto power = product(yx, x);

  auto w = names.fresh("w", TypeSymbol::prod(power.set.carrier, b));
  auto wt = Term::var(w);
  auto body = detail::conj_all(
      {detail::in(detail::fst(wt), power.set.predicate), detail::in(detail::snd(wt), y.predicate),
       detail::in(Term::pair(detail::snd(detail::fst(wt)), detail::snd(wt)),
                  detail::fst(detail::fst(wt)))});
  MapDesc ev{power.set, y, Term::set_abs(w, body, s), s};

  ExponentialResult r{yx, ev, power, x, y, k, s, {}, {}};
  r.trace.push_back(detail::trace_line("k", "||B|| v m v n", {eq_level(b), x.level, y.level}));
  r.trace.push_back(
      detail::trace_line("s", "|A| v |B| v m v n", {level(a), level(b), x.level, y.level}));
  r.obligations.push_back(obligation("ev is a map", {}, is_map(ev)));
  return r;
}

struct TransposeResult {
  MapDesc h;  // Z -> Y^X, graph annotated at t
  MapDesc h_times_id;
  unsigned t;
  LevelTrace trace;
  std::vector<Obligation> obligations;
};

/// The transpose H : Z -> Y^X of G : Z x X -> Y, with the beta and
/// uniqueness sequents. Both rely on full reducibility for the graph of
/// G(z, -), which appears as the single FR instance among the hypotheses.
inline TransposeResult transpose(const ExponentialResult& ex, const LocalSetDesc& z,
                                 const MapDesc& g) {
  check_local_set(z);
  auto zx = product(z, ex.dom);
  if (!same_local_set(g.dom, zx.set) || !same_local_set(g.cod, ex.cod))
    throw ConstructionError("transpose: map must go from " + describe(zx.set) + " to " +
                            describe(ex.cod));
  const auto& a = ex.dom.carrier;
  const auto& b = ex.cod.carrier;
  const auto& c = z.carrier;
  unsigned m = ex.dom.level, n = ex.cod.level, p = z.level, q = g.level;
  unsigned t = std::max({level(a), level(b), level(c), m, n, p, q});
  detail::Names names(ex.set, ex.dom, ex.cod, z, g);

  auto w = names.fresh("w", TypeSymbol::prod(c, ex.set.carrier));
  auto xv = names.fresh("x", a);
  auto yv = names.fresh("y", b);
  auto wt = Term::var(w), xt = Term::var(xv), yt = Term::var(yv);
  auto body = detail::conj_all(
      {detail::in(detail::fst(wt), z.predicate), detail::in(detail::snd(wt), ex.set.predicate),
       Formula::forall(xv, Formula::forall(
                               yv, Formula::iff(
                                       detail::in(Term::pair(xt, yt), detail::snd(wt)),
                                       detail::in(Term::pair(Term::pair(detail::fst(wt), xt), yt),
                                                  g.graph))))});
  MapDesc h{z, ex.set, Term::set_abs(w, body, t), t};
  TransposeResult r{h, pairing(ex.power, compose(h, zx.p1), zx.p2).map, t, {}, {}};
  r.trace.push_back(detail::trace_line("t", "|A| v |B| v |C| v m v n v p v q",
                                       {level(a), level(b), level(c), m, n, p, q}));

  auto fr = fr_instance(a, b, m, n, q);
  r.trace.push_back("FR instance: " + fr.level_trace);
  std::vector<Formula> hyps{is_map(g), fr.formula};
  r.obligations.push_back(obligation("H is a map", hyps, is_map(r.h)));
  r.obligations.push_back(
      obligation("ev o (H x id) = G", hyps, ext_equal(compose(ex.ev, r.h_times_id), g)));

  auto other = names.fresh("H", TypeSymbol::pow(t, TypeSymbol::prod(c, ex.set.carrier)));
  MapDesc h2{z, ex.set, Term::var(other), t};
  auto h2_times_id = pairing(ex.power, compose(h2, zx.p1), zx.p2).map;
  std::vector<Formula> uhyps{is_map(g), is_map(h2), ext_equal(compose(ex.ev, h2_times_id), g)};
  r.obligations.push_back(obligation("H is unique", uhyps, ext_equal(h2, r.h)));
  return r;
}

// ----------------------------------------------------------------------------
// Equalizers

struct EqualizerResult {
  LocalSetDesc set;
  MapDesc incl;  // the inclusion I : E -> X
  LevelTrace trace;
  std::vector<Obligation> obligations;
};

inline EqualizerResult equalizer(const MapDesc& f, const MapDesc& g) {
  if (!same_local_set(f.dom, g.dom) || !same_local_set(f.cod, g.cod))
    throw ConstructionError("equalizer needs parallel maps, got " + describe(f) + " and " +
                            describe(g));
  const auto& a = f.dom.carrier;
  const auto& b = f.cod.carrier;
  detail::Names names(f, g);
  unsigned r = std::max({level(b), f.level, g.level});
  unsigned p = std::max(r, eq_level(a));

  auto av = names.fresh("a", a);
  auto yv = names.fresh("y", b);
  auto at = Term::var(av), yt = Term::var(yv);
  auto e = Term::set_abs(
      av,
      Formula::exists(yv, Formula::conj(detail::in(Term::pair(at, yt), f.graph),
                                        detail::in(Term::pair(at, yt), g.graph))),
      r);
  LocalSetDesc es{a, e, r};
  auto zv = names.fresh("z", TypeSymbol::prod(a, a));
  auto zt = Term::var(zv);
  auto ibody = Formula::conj(detail::in(detail::fst(zt), e),
                             eq_formula(a, detail::fst(zt), detail::snd(zt)));
  EqualizerResult res{es, {es, f.dom, Term::set_abs(zv, ibody, p), p}, {}, {}};
  res.trace.push_back(detail::trace_line("r", "|B| v k v l", {level(b), f.level, g.level}));
  res.trace.push_back(detail::trace_line("p", "r v ||A||", {r, eq_level(a)}));

  std::vector<Formula> hyps{is_map(f), is_map(g)};
  res.obligations.push_back(obligation("I is a map", hyps, is_map(res.incl)));
  res.obligations.push_back(
      obligation("F o I = G o I", hyps, ext_equal(compose(f, res.incl), compose(g, res.incl))));
  return res;
}

// ----------------------------------------------------------------------------
// Truth values

/// Omega_k = (P[k](1), {x:P[k](1) | true}@0, 0).
inline LocalSetDesc omega_set(unsigned k) {
  return full_local_set(TypeSymbol::pow(k, TypeSymbol::unit()));
}

/// t_k = {x:1 | true}@k.
inline Term truth_value(unsigned k) { return top_set(TypeSymbol::unit(), k); }

struct CharacteristicResult {
  LocalSetDesc omega;
  Term truth;
  MapDesc chi;
  LevelTrace trace;
  std::vector<Obligation> obligations;
};

/// chi_Y = (K_Y, m v k) : X -> Omega_k for Y : P[m v k](A) inside X, with
/// K_Y = {z | pi1 z in X /\ (pi1 z in Y <=> () in pi2 z)} total on X.
inline CharacteristicResult characteristic(const LocalSetDesc& x, const Term& y, unsigned k) {
  check_local_set(x);
  const auto& a = x.carrier;
  unsigned mk = std::max(x.level, k);
  auto ys = sort_of_open(y);
  if (ys != TypeSymbol::pow(mk, a))
    throw SortError(SortErrorKind::IllSorted, "subset " + print(y) + " has sort " + print(ys) +
                                                  ", expected " +
                                                  print(TypeSymbol::pow(mk, a)));
  auto om = omega_set(k);
  detail::Names names(x, y);
  auto z = names.fresh("z", TypeSymbol::prod(a, om.carrier));
  auto zt = Term::var(z);
  auto body = Formula::conj(detail::in(detail::fst(zt), x.predicate),
                            Formula::iff(detail::in(detail::fst(zt), y),
                                         detail::in(Term::star(), detail::snd(zt))));
  CharacteristicResult r{om, truth_value(k), {x, om, Term::set_abs(z, body, mk), mk}, {}, {}};
  r.trace.push_back(detail::trace_line("chi level", "m v k", {x.level, k}));

  auto u = names.fresh("u", a);
  auto ut = Term::var(u);
  auto subset = Formula::forall(u, Formula::imp(detail::in(ut, y), detail::in(ut, x.predicate)));
  r.obligations.push_back(obligation("Y is a subset of X", {}, subset));
  r.obligations.push_back(obligation("chi_Y is a map", {subset}, is_map(r.chi)));
  r.obligations.push_back(obligation(
      "<u, t_k> in K_Y iff u in Y", {},
      Formula::forall(u, Formula::imp(detail::in(ut, x.predicate),
                                      Formula::iff(detail::in(Term::pair(ut, r.truth), r.chi.graph),
                                                   detail::in(ut, y))))));
  return r;
}

} // namespace irtt
