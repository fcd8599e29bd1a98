#pragma once

// Axiom schemes of IRTT and their instantiation.
//
//   unit-eta                  forall z:1. z = ()
//   fst-beta A B              forall x:A. forall y:B. fst <x, y> = x
//   snd-beta A B              forall x:A. forall y:B. snd <x, y> = y
//   pair-eta A B              forall z:A * B. <fst z, snd z> = z
//   peano-zero-succ           forall x:N. ~ S x = 0
//   peano-succ-inj            forall x:N. forall y:N. S x = S y => x = y
//   add-zero, add-succ        x + 0 = x,  x + S y = S (x + y)
//   mul-zero, mul-succ        x . 0 = 0,  x . S y = x . y + x
//   induction x phi           phi[0/x] => (forall x:N. phi => phi[S x/x]) => forall x:N. phi
//   extensionality k A        forall X,Y:P[k](A). (forall z:A. z in X <=> z in Y) => X = Y
//   comprehension {x:A|phi}@k forall z:A. z in {x:A|phi}@k <=> phi[z/x]
//   fr A B m n r              functional reducibility, k = ||B|| v m v n
//   rdc A m n                 relativized dependent choice, k = |A|
//   pem phi                   phi \/ ~phi (classical mode only)

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "irtt/levels.hpp"
#include "irtt/parse.hpp"
#include "irtt/print.hpp"
#include "irtt/syntax.hpp"
#include "irtt/typing.hpp"

namespace irtt {

/// A local set (A, X, n): carrier A, predicate X : P[n](A).
struct LocalSetDesc {
  TypeSymbol carrier;
  Term predicate;
  unsigned level;
};

inline Term top_set(const TypeSymbol& a, unsigned level = 0) {
  return Term::set_abs({"x", a}, Formula::truth(), level);
}

/// (A, {x:A | true}@0, 0)
inline LocalSetDesc full_local_set(const TypeSymbol& a) { return {a, top_set(a), 0}; }

/// The natural numbers as a local set.
inline LocalSetDesc naturals() { return full_local_set(TypeSymbol::nat()); }

/// Sort of a term whose free variables carry their own sorts.
inline TypeSymbol sort_of_open(const Term& t) {
  SortContext ctx;
  for (const auto& v : free_variables(t))
    ctx.insert_or_assign(v.name, v.sort);
  return sort_of(t, ctx);
}

class AxiomError : public Error {
public:
  using Error::Error;
};

namespace detail {

inline std::set<std::string> names_free_in(std::initializer_list<const Term*> ts) {
  std::set<std::string> out;
  for (const Term* t : ts)
    for (const auto& v : free_variables(*t))
      out.insert(v.name);
  return out;
}

inline Variable fresh_var(const std::string& base, const TypeSymbol& sort,
                          std::set<std::string>& avoid) {
  Variable v{fresh_name(base, avoid), sort};
  avoid.insert(v.name);
  return v;
}

inline Formula foralls(const std::vector<Variable>& vs, Formula body) {
  for (auto it = vs.rbegin(); it != vs.rend(); ++it)
    body = Formula::forall(*it, std::move(body));
  return body;
}

inline Formula ext_iff(const Variable& z, const Term& a, const Term& b) {
  auto zt = Term::var(z);
  return Formula::forall(z, Formula::iff(Formula::mem(zt, a), Formula::mem(zt, b)));
}

} // namespace detail

/// relation /\ functional /\ total, nested as (relation /\ functional) /\ total.
inline Formula derive_map_predicate(const LocalSetDesc& dom, const LocalSetDesc& cod,
                                    const Term& graph) {
  const auto& a = dom.carrier;
  const auto& b = cod.carrier;
  auto fs = sort_of_open(graph);
  if (!fs.is_pow() || fs.body() != TypeSymbol::prod(a, b))
    throw SortError(SortErrorKind::IllSorted,
                    "graph " + print(graph) + " has sort " + print(fs) + ", expected P[r](" +
                        print(TypeSymbol::prod(a, b)) + ")");
  for (const auto* ls : {&dom, &cod})
    if (sort_of_open(ls->predicate) != TypeSymbol::pow(ls->level, ls->carrier))
      throw SortError(SortErrorKind::IllSorted,
                      "local set predicate " + print(ls->predicate) + " is not in P[" +
                          std::to_string(ls->level) + "](" + print(ls->carrier) + ")");

  auto avoid = detail::names_free_in({&dom.predicate, &cod.predicate, &graph});
  auto x = detail::fresh_var("x", a, avoid);
  auto y = detail::fresh_var("y", b, avoid);
  auto z = detail::fresh_var("z", b, avoid);
  auto X = dom.predicate, Y = cod.predicate;
  auto xt = Term::var(x), yt = Term::var(y), zt = Term::var(z);
  auto in_graph = [&](const Term& u, const Term& v) {
    return Formula::mem(Term::pair(u, v), graph);
  };

  auto relation = detail::foralls(
      {x, y}, Formula::imp(in_graph(xt, yt),
                           Formula::conj(Formula::mem(xt, X), Formula::mem(yt, Y))));
  auto functional = detail::foralls(
      {x, y, z}, Formula::imp(Formula::conj(in_graph(xt, yt), in_graph(xt, zt)),
                              Formula::eq(b, yt, zt)));
  auto total = Formula::forall(
      x, Formula::imp(Formula::mem(xt, X),
                      Formula::exists(y, Formula::conj(Formula::mem(yt, Y),
                                                       in_graph(xt, yt)))));
  return Formula::conj(Formula::conj(relation, functional), total);
}

struct AxiomInstance {
  std::string scheme;
  std::vector<std::string> params;
  Formula formula = Formula::falsum();
  std::string level_trace;  // computed levels, empty when the scheme has none
  bool arithmetic = false;
  bool classical = false;
};

inline bool is_arithmetic_scheme(const std::string& s) {
  return s.starts_with("peano-") || s.starts_with("add-") || s.starts_with("mul-") ||
         s == "induction" || s == "rdc";
}

inline AxiomInstance fr_instance(const TypeSymbol& a, const TypeSymbol& b, unsigned m,
                                 unsigned n, unsigned r) {
  unsigned k = std::max({eq_level(b), m, n});
  auto ab = TypeSymbol::prod(a, b);
  Variable X{"X", TypeSymbol::pow(m, a)}, Y{"Y", TypeSymbol::pow(n, b)};
  Variable F{"F", TypeSymbol::pow(r, ab)}, G{"G", TypeSymbol::pow(k, ab)};
  Variable z{"z", ab};
  auto map = derive_map_predicate({a, Term::var(X), m}, {b, Term::var(Y), n}, Term::var(F));
  auto body = Formula::imp(
      map, Formula::exists(G, detail::ext_iff(z, Term::var(F), Term::var(G))));
  AxiomInstance inst;
  inst.scheme = "fr";
  inst.params = {print(a), print(b), std::to_string(m), std::to_string(n), std::to_string(r)};
  inst.formula = detail::foralls({X, Y, F}, body);
  inst.level_trace = "k = ||B|| v m v n = " + max_trace({eq_level(b), m, n});
  return inst;
}

inline AxiomInstance rdc_instance(const TypeSymbol& a, unsigned m, unsigned n) {
  unsigned k = level(a);
  auto N = TypeSymbol::nat();
  Variable D{"D", TypeSymbol::pow(m, a)}, R{"R", TypeSymbol::pow(n, TypeSymbol::prod(a, a))};
  Variable av{"a", a}, x{"x", a}, y{"y", a}, z{"z", a}, i{"i", N};
  Variable F{"F", TypeSymbol::pow(k, TypeSymbol::prod(N, a))};
  auto Dt = Term::var(D), Rt = Term::var(R), Ft = Term::var(F);
  auto xt = Term::var(x), yt = Term::var(y), zt = Term::var(z), it = Term::var(i);

  auto hyp = Formula::conj(
      Formula::mem(Term::var(av), Dt),
      Formula::forall(x, Formula::imp(Formula::mem(xt, Dt),
                                      Formula::exists(y, Formula::conj(
                                                             Formula::mem(yt, Dt),
                                                             Formula::mem(Term::pair(xt, yt), Rt))))));
  auto map = derive_map_predicate(naturals(), {a, Dt, m}, Ft);
  auto start = Formula::mem(Term::pair(Term::zero(), Term::var(av)), Ft);
  auto step = detail::foralls(
      {i, y, z},
      Formula::imp(Formula::conj(Formula::mem(Term::pair(it, yt), Ft),
                                 Formula::mem(Term::pair(Term::add(it, Term::numeral(1)), zt), Ft)),
                   Formula::mem(Term::pair(yt, zt), Rt)));
  auto concl = Formula::exists(F, Formula::conj(Formula::conj(map, start), step));
  AxiomInstance inst;
  inst.scheme = "rdc";
  inst.params = {print(a), std::to_string(m), std::to_string(n)};
  inst.formula = detail::foralls({D, R, av}, Formula::imp(hyp, concl));
  inst.level_trace = "k = |A| = " + std::to_string(k);
  inst.arithmetic = true;
  return inst;
}

/// Instantiates `scheme` with textual parameters, parsed in `ctx`.
inline AxiomInstance instantiate_axiom(const std::string& scheme,
                                       const std::vector<std::string>& params,
                                       const SortContext& ctx = {},
                                       const TypeAbbreviations* abbrevs = nullptr) {
  auto fail = [&](const std::string& msg) -> AxiomError {
    return AxiomError("axiom " + scheme + ": " + msg);
  };
  auto want = [&](std::size_t n, const char* usage) {
    if (params.size() != n)
      throw fail("expects " + std::to_string(n) + " parameter(s): " + usage + ", got " +
                 std::to_string(params.size()));
  };
  auto type_at = [&](std::size_t i) { return parse_type(params.at(i), abbrevs); };
  auto nat_at = [&](std::size_t i) -> unsigned {
    const auto& s = params.at(i);
    if (s.empty() || s.size() > 9 ||
        s.find_first_not_of("0123456789") != std::string::npos)
      throw fail("parameter '" + s + "' is not a level");
    return static_cast<unsigned>(std::stoul(s));
  };

  const auto N = TypeSymbol::nat();
  AxiomInstance inst;
  inst.scheme = scheme;
  inst.params = params;
  inst.arithmetic = is_arithmetic_scheme(scheme);

  if (scheme == "unit-eta") {
    want(0, "");
    Variable z{"z", TypeSymbol::unit()};
    inst.formula =
        Formula::forall(z, Formula::eq(TypeSymbol::unit(), Term::var(z), Term::star()));
  } else if (scheme == "fst-beta" || scheme == "snd-beta") {
    want(2, "A B");
    auto a = type_at(0), b = type_at(1);
    Variable x{"x", a}, y{"y", b};
    auto p = Term::pair(Term::var(x), Term::var(y));
    inst.formula = detail::foralls(
        {x, y}, scheme == "fst-beta" ? Formula::eq(a, Term::fst(p), Term::var(x))
                                     : Formula::eq(b, Term::snd(p), Term::var(y)));
  } else if (scheme == "pair-eta") {
    want(2, "A B");
    auto ab = TypeSymbol::prod(type_at(0), type_at(1));
    Variable z{"z", ab};
    auto zt = Term::var(z);
    inst.formula =
        Formula::forall(z, Formula::eq(ab, Term::pair(Term::fst(zt), Term::snd(zt)), zt));
  } else if (scheme == "peano-zero-succ") {
    want(0, "");
    Variable x{"x", N};
    inst.formula = Formula::forall(
        x, Formula::neg(Formula::eq(N, Term::succ(Term::var(x)), Term::zero())));
  } else if (scheme == "peano-succ-inj") {
    want(0, "");
    Variable x{"x", N}, y{"y", N};
    auto xt = Term::var(x), yt = Term::var(y);
    inst.formula = detail::foralls(
        {x, y}, Formula::imp(Formula::eq(N, Term::succ(xt), Term::succ(yt)),
                             Formula::eq(N, xt, yt)));
  } else if (scheme == "add-zero" || scheme == "mul-zero") {
    want(0, "");
    Variable x{"x", N};
    auto xt = Term::var(x);
    inst.formula = Formula::forall(
        x, scheme == "add-zero" ? Formula::eq(N, Term::add(xt, Term::zero()), xt)
                                : Formula::eq(N, Term::mul(xt, Term::zero()), Term::zero()));
  } else if (scheme == "add-succ" || scheme == "mul-succ") {
    want(0, "");
    Variable x{"x", N}, y{"y", N};
    auto xt = Term::var(x), yt = Term::var(y);
    inst.formula = detail::foralls(
        {x, y},
        scheme == "add-succ"
            ? Formula::eq(N, Term::add(xt, Term::succ(yt)), Term::succ(Term::add(xt, yt)))
            : Formula::eq(N, Term::mul(xt, Term::succ(yt)),
                          Term::add(Term::mul(xt, yt), xt)));
  } else if (scheme == "induction") {
    want(2, "x \"phi\"");
    Variable x{params[0], N};
    auto inner = ctx;
    inner.insert_or_assign(x.name, N);
    auto phi = parse_formula(params[1], inner, abbrevs);
    min_level(phi, inner);
    auto step = Formula::forall(
        x, Formula::imp(phi, substitute(phi, x, Term::succ(Term::var(x)))));
    inst.formula = Formula::imp(substitute(phi, x, Term::zero()),
                                Formula::imp(step, Formula::forall(x, phi)));
  } else if (scheme == "extensionality") {
    want(2, "k A");
    unsigned k = nat_at(0);
    auto a = type_at(1);
    auto pk = TypeSymbol::pow(k, a);
    Variable X{"X", pk}, Y{"Y", pk}, z{"z", a};
    inst.formula = detail::foralls(
        {X, Y}, Formula::imp(detail::ext_iff(z, Term::var(X), Term::var(Y)),
                             Formula::eq(pk, Term::var(X), Term::var(Y))));
  } else if (scheme == "comprehension") {
    want(1, "\"{x:A | phi}@k\"");
    auto set = parse_term(params[0], ctx, abbrevs);
    if (set.kind() != Term::Kind::SetAbs)
      throw fail("parameter must be a set abstraction, got " + print(set));
    sort_of(set, ctx);  // enforces min_level(phi) <= k
    auto avoid = detail::names_free_in({&set});
    for (const auto& [name, _] : ctx)
      avoid.insert(name);
    auto z = detail::fresh_var("z", set.variable().sort, avoid);
    auto zt = Term::var(z);
    inst.formula = Formula::forall(
        z, Formula::iff(Formula::mem(zt, set), substitute(set.body(), set.variable(), zt)));
    SortContext inner = ctx;
    inner.insert_or_assign(set.variable().name, set.variable().sort);
    inst.level_trace = "min_level(phi) = " +
                       std::to_string(min_level(set.body(), inner)) + " <= " +
                       std::to_string(set.annotation());
  } else if (scheme == "fr") {
    want(5, "A B m n r");
    auto fr = fr_instance(type_at(0), type_at(1), nat_at(2), nat_at(3), nat_at(4));
    inst.formula = fr.formula;
    inst.level_trace = fr.level_trace;
  } else if (scheme == "rdc") {
    want(3, "A m n");
    auto rdc = rdc_instance(type_at(0), nat_at(1), nat_at(2));
    inst.formula = rdc.formula;
    inst.level_trace = rdc.level_trace;
  } else if (scheme == "pem") {
    want(1, "\"phi\"");
    auto phi = parse_formula(params[0], ctx, abbrevs);
    min_level(phi, ctx);
    inst.formula = Formula::disj(phi, Formula::neg(phi));
    inst.classical = true;
  } else {
    throw fail("unknown scheme (known: unit-eta fst-beta snd-beta pair-eta peano-zero-succ "
               "peano-succ-inj add-zero add-succ mul-zero mul-succ induction extensionality "
               "comprehension fr rdc pem)");
  }
  return inst;
}

} // namespace irtt
