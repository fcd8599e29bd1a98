// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "irtt/interp.hpp"
#include "irtt/localset.hpp"
#include "irtt/oracle.hpp"
#include "irtt/parse.hpp"
#include "irtt/theory.hpp"

using namespace irtt;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

FiniteModel model(unsigned base) { return {base, 2, default_budget()}; }

std::vector<std::filesystem::path> bundled_scripts() {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(IRTT_SCRIPTS_DIR))
    if (e.path().extension() == ".irttp")
      out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Formula> formula_corpus() {
  testgen::Generator gen(1001);
  std::vector<Formula> out;
  for (int i = 0; i < 1500; ++i)
    out.push_back(gen.formula(4, 3));
  return out;
}

// Every type of depth <= d with power levels in 0..max_pow.
std::vector<TypeSymbol> all_types(unsigned d, unsigned max_pow) {
  std::vector<TypeSymbol> out{TypeSymbol::unit(), TypeSymbol::nat()};
  if (d == 0)
    return out;
  auto smaller = all_types(d - 1, max_pow);
  for (const auto& a : smaller)
    for (const auto& b : smaller)
      out.push_back(TypeSymbol::prod(a, b));
  for (const auto& a : smaller)
    for (unsigned n = 0; n <= max_pow; ++n)
      out.push_back(TypeSymbol::pow(n, a));
  return out;
}

Outcome level_example() {
  auto t = parse_type("P[3](N) * P[1](N * P[1](1))");
  return {level(t) == 4, "level = " + std::to_string(level(t))};
}

Outcome index_agreement() {
  auto start = Clock::now();
  testgen::Generator gen(1002);
  unsigned mismatches = 0, n = 2000;
  for (unsigned i = 0; i < n; ++i) {
    auto t = gen.type(6, 4);
    auto idx = interp_type(t).index;
    mismatches += idx.carrier != level(t) || idx.eq != eq_level(t);
  }
  double s = seconds_since(start);
  std::ostringstream d;
  d << n << " types of depth <= 6, " << mismatches << " mismatches, " << s << " s";
  return {mismatches == 0 && s < 1.0, d.str()};
}

Outcome universe_bound(const std::vector<Formula>& corpus) {
  auto start = Clock::now();
  unsigned violations = 0, strict = 0;
  for (const auto& f : corpus) {
    auto u = infer_universe(interp_formula(f));
    auto k = min_level(f);
    violations += u > k;
    strict += u < k;
  }
  // the documented strict case: equality at P[2](N)
  SortContext ctx{{"a", parse_type("P[2](N)")}, {"b", parse_type("P[2](N)")}};
  auto eq = parse_formula("a = b", ctx);
  bool example = infer_universe(interp_formula(eq, ctx), interp_context(ctx)) < min_level(eq, ctx);
  double s = seconds_since(start);
  std::ostringstream d;
  d << corpus.size() << " formulas, " << violations << " violations, " << strict
    << " strict, equality at P[2](N) strict: " << (example ? "yes" : "no") << ", " << s << " s";
  return {violations == 0 && strict > 0 && example && s < 5.0, d.str()};
}

Outcome cumulativity(const std::vector<Formula>& corpus) {
  unsigned violations = 0, checks = 0;
  for (const auto& f : corpus)
    for (unsigned k = 0; k <= 6; ++k) {
      ++checks;
      if (wf_formula(f, k) && !wf_formula(f, k + 1))
        ++violations;
    }
  return {violations == 0,
          std::to_string(checks) + " (formula, k) pairs, " + std::to_string(violations) + " violations"};
}

Outcome equality_level() {
  auto check = [](const TypeSymbol& t) {
    Variable x{"x", t}, y{"y", t};
    SortContext ctx{{"x", t}, {"y", t}};
    return min_level(eq_formula(t, Term::var(x), Term::var(y)), ctx) == eq_level(t);
  };
  unsigned mismatches = 0, exhaustive = 0, sampled = 0;
  for (const auto& t : all_types(3, 2)) {
    ++exhaustive;
    mismatches += !check(t);
  }
  testgen::Generator gen(1005);
  for (; sampled < 20000; ++sampled) {
    auto t = gen.type(4, 4);
    mismatches += !check(t);
  }
  std::ostringstream d;
  d << exhaustive << " types (all of depth <= 3, levels 0..2) + " << sampled
    << " sampled at depth 4, " << mismatches << " mismatches";
  return {mismatches == 0, d.str()};
}

Outcome kernel_corpus() {
  unsigned accepted = 0, total = 0;
  bool pem_ok = false;
  std::string problems;
  for (const auto& path : bundled_scripts()) {
    auto th = load_theory_file(path.string());
    bool pem = path.stem() == "pem_full_reducibility";
    for (const auto& r : check_theory(th, pem)) {
      ++total;
      accepted += r.verdict.accepted;
      if (!r.verdict.accepted)
        problems += " " + r.name;
    }
    if (pem) {
      auto intuitionistic = check_theory(th, false);
      pem_ok = !intuitionistic.empty() && !intuitionistic[0].verdict.accepted &&
               intuitionistic[0].verdict.diagnostic.find("pem") != std::string::npos &&
               !intuitionistic[0].verdict.step.empty();
    }
  }
  std::ostringstream d;
  d << accepted << "/" << total << " theorems accepted, PEM theorem rejected without --classical"
    << " naming the pem step: " << (pem_ok ? "yes" : "no");
  if (!problems.empty())
    d << ", rejected:" << problems;
  return {accepted == total && total > 0 && pem_ok, d.str()};
}

Outcome oracle_sweep() {
  auto start = Clock::now();
  unsigned swept = 0, failures = 0, skipped = 0;
  for (const auto& path : bundled_scripts()) {
    auto th = load_theory_file(path.string());
    for (const auto& r : check_theory(th, true)) {
      if (!r.verdict.accepted)
        continue;
      if (r.verdict.uses_arithmetic()) {
        ++skipped;
        continue;
      }
      ++swept;
      for (unsigned base = 1; base <= 3; ++base)
        failures += !check_sequent(model(base), th.theorem(r.name)->claim);
    }
  }
  double s = seconds_since(start);
  std::ostringstream d;
  d << swept << " sequents x bases 1..3, " << failures << " failures, " << skipped
    << " arithmetic skipped, " << s << " s";
  return {failures == 0 && swept > 0 && s < 120.0, d.str()};
}

LocalSetDesc named(const std::string& name, const std::string& carrier, unsigned lv) {
  auto a = parse_type(carrier);
  return {a, Term::var(name, TypeSymbol::pow(lv, a)), lv};
}

MapDesc var_map(const std::string& name, const LocalSetDesc& dom, const LocalSetDesc& cod,
                unsigned lv) {
  return {dom, cod,
          Term::var(name, TypeSymbol::pow(lv, TypeSymbol::prod(dom.carrier, cod.carrier))), lv};
}

Outcome level_table() {
  auto nat = naturals();
  auto x0 = named("X", "N", 0);
  auto y1 = named("Y", "P[0](N)", 1);
  auto p3 = named("X", "P[3](N)", 0);
  struct Row {
    const char* formula;
    std::function<unsigned()> actual;
    unsigned expected;
  };
  std::vector<Row> rows = {
      {"q = |B| v k v l, B = P[0](N), k = 2, l = 1",
       [&] { return compose(var_map("G", y1, nat, 1), var_map("F", x0, y1, 2)).level; }, 2},
      {"q through B = N, all levels 0",
       [&] { return compose(identity(nat), identity(nat)).level; }, 0},
      {"q = |B| v k v l, B = P[2](N), k = 0, l = 1",
       [&] {
         auto b = named("W", "P[2](N)", 0);
         return compose(var_map("G", b, x0, 1), var_map("F", x0, b, 0)).level;
       },
       3},
      {"identity m v ||A||, A = N", [&] { return identity(nat).level; }, 0},
      {"identity m v ||A||, A = P[1](N), m = 0", [&] { return identity(named("X", "P[1](N)", 0)).level; }, 1},
      {"identity on the terminal set", [&] { return identity(terminal()).level; }, 0},
      {"identity m v ||A||, A = N * P[2](N), m = 1",
       [&] { return identity(named("X", "N * P[2](N)", 1)).level; }, 2},
      {"product m1 v m2 = 0 v 0", [&] { return product(nat, nat).set.level; }, 0},
      {"product m1 v m2 = 2 v 1", [&] { return product(named("X", "N", 2), y1).set.level; }, 2},
      {"r2 = m1 v m2 v ||A2||, A2 = P[0](N)", [&] { return product(named("X", "N", 2), y1).p2.level; }, 2},
      {"r1 = m1 v m2 v ||A1||, A1 = P[3](N)", [&] { return product(p3, named("Y", "N", 1)).p1.level; }, 3},
      {"pairing p v q = 1 v 3",
       [&] {
         return pairing(product(nat, nat), var_map("F", nat, nat, 1), var_map("G", nat, nat, 3)).map.level;
       },
       3},
      {"l = m v n v |A|, A = N", [&] { return quotient(nat, named("E", "N * N", 0)).set.level; }, 0},
      {"l = m v n v |A|, A = P[1](N), n = 1",
       [&] {
         return quotient(full_local_set(parse_type("P[1](N)")), named("E", "P[1](N) * P[1](N)", 1)).set.level;
       },
       2},
      {"l = m v n v |A|, m = 3", [&] { return quotient(named("X", "N", 3), named("E", "N * N", 1)).q.level; }, 3},
      {"k = ||B|| v m v n, X = Y = N", [&] { return exponential(nat, nat).k; }, 0},
      {"s = |A| v |B| v m v n, X = Y = N", [&] { return exponential(nat, nat).s; }, 0},
      {"k = ||B|| v m v n, B = P[1](N), n = 2", [&] { return exponential(nat, named("Y", "P[1](N)", 2)).k; }, 2},
      {"s = |A| v |B| v m v n, B = P[1](N), n = 2", [&] { return exponential(nat, named("Y", "P[1](N)", 2)).s; }, 2},
      {"s = |A| v |B| v m v n, A = P[2](N), n = 1",
       [&] { return exponential(named("X", "P[2](N)", 0), named("Y", "N", 1)).s; }, 3},
      {"equalizer r = |B| v k v l, identities on N",
       [&] { return equalizer(identity(nat), identity(nat)).set.level; }, 0},
      {"equalizer p = r v ||A||, identities on N",
       [&] { return equalizer(identity(nat), identity(nat)).incl.level; }, 0},
      {"equalizer r = |B| v k v l, B = P[0](N), k = 2, l = 1",
       [&] { return equalizer(var_map("F", x0, y1, 2), var_map("G", x0, y1, 1)).set.level; }, 2},
      {"equalizer p = r v ||A||, A = P[3](N)",
       [&] { return equalizer(var_map("F", p3, y1, 2), var_map("G", p3, y1, 1)).incl.level; }, 3},
      {"characteristic m v k = 0 v 1",
       [&] { return characteristic(nat, Term::var("Y", parse_type("P[1](N)")), 1).chi.level; }, 1},
      {"characteristic m v k = 2 v 0",
       [&] { return characteristic(named("X", "N", 2), Term::var("Y", parse_type("P[2](N)")), 0).chi.level; }, 2},
  };
  unsigned wrong = 0;
  std::string first;
  for (const auto& r : rows) {
    auto got = r.actual();
    if (got != r.expected) {
      ++wrong;
      if (first.empty())
        first = std::string(", first: ") + r.formula + " gave " + std::to_string(got);
    }
  }
  return {wrong == 0 && rows.size() >= 20,
          std::to_string(rows.size()) + " cases, " + std::to_string(wrong) + " wrong" + first};
}

std::vector<Value> maps_of(const FiniteModel& m, const MapDesc& f) {
  std::vector<Value> out;
  auto pred = is_map(f);
  auto size = carrier_size(m, sort_of_open(f.graph));
  for (Value v = 0; v < size; ++v)
    if (eval_formula(m, pred, {{f.graph.variable().name, v}}))
      out.push_back(v);
  return out;
}

const Obligation& named_obligation(const std::vector<Obligation>& obs, const std::string& name) {
  for (const auto& o : obs)
    if (o.name == name)
      return o;
  throw std::logic_error("missing obligation " + name);
}

Outcome universal_properties() {
  auto start = Clock::now();
  auto nat = naturals();
  auto m2 = model(2);
  bool product_ok = true, quotient_ok = true, beta_ok = true;

  // product: exactly one mediator for each pair of maps, and it is <F,G>
  auto pr = product(nat, nat);
  auto f = var_map("F", nat, nat, 0), g = var_map("G", nat, nat, 0);
  auto pg = pairing(pr, f, g);
  MapDesc med{nat, pr.set, Term::var("M", parse_type("P[0](N * (N * N))")), 0};
  auto mediates = Formula::conj(is_map(med), Formula::conj(ext_equal(compose(pr.p1, med), f),
                                                           ext_equal(compose(pr.p2, med), g)));
  auto maps = maps_of(m2, f);
  for (auto a : maps)
    for (auto b : maps) {
      unsigned found = 0;
      Value which = 0;
      Valuation v{{"F", a}, {"G", b}};
      for (Value c = 0; c < carrier_size(m2, med.graph.variable().sort); ++c) {
        v["M"] = c;
        if (eval_formula(m2, mediates, v)) {
          ++found;
          which = c;
        }
      }
      product_ok = product_ok && found == 1 && eval_term(m2, pg.map.graph, v) == which;
    }

  // quotient: factorization and uniqueness for every equivalence E and respecting F
  auto qr = quotient(nat, named("E", "N * N", 0));
  auto lr = lift(qr, f);
  for (unsigned base = 1; base <= 2; ++base)
    for (const auto* name : {"H is a map", "H o Q = F", "H is unique"})
      quotient_ok = quotient_ok && check_sequent(model(base), named_obligation(lr.obligations, name).sequent);

  // exponential: ev o (H x id) = G for every G : N x N -> N
  auto ex = exponential(nat, nat);
  auto tr = transpose(ex, nat, var_map("G", product(nat, nat).set, nat, 0));
  for (unsigned base = 1; base <= 2; ++base)
    beta_ok = beta_ok && check_sequent(model(base), named_obligation(tr.obligations, "ev o (H x id) = G").sequent);

  double s = seconds_since(start);
  std::ostringstream d;
  d << "bases 1..2: product unique mediator (base 2) " << (product_ok ? "ok" : "FAILED") << ", quotient "
    << (quotient_ok ? "ok" : "FAILED") << ", exponential beta " << (beta_ok ? "ok" : "FAILED")
    << ", " << s << " s";
  return {product_ok && quotient_ok && beta_ok && s < 120.0, d.str()};
}

Outcome full_reducibility_collapse() {
  auto instance = [](unsigned r) {
    return parse_formula("forall X:P[" + std::to_string(r) +
                         "](N). exists Y:P[0](N). forall x:N. (x in X => x in Y) /\\ (x in Y => x in X)");
  };
  bool semantic = true;
  for (unsigned r = 0; r <= 2; ++r)
    for (unsigned base = 1; base <= 3; ++base)
      semantic = semantic && eval_formula(model(base), instance(r));

  // no bundled script proves an r >= 1 instance without the excluded middle
  unsigned found = 0, intuitionistic = 0;
  for (const auto& path : bundled_scripts()) {
    auto th = load_theory_file(path.string());
    for (const auto& t : th.theorems) {
      if (!t.proof || !t.claim.hypotheses.empty())
        continue;
      for (unsigned r = 1; r <= 2; ++r)
        if (alpha_equal(t.claim.goal, instance(r))) {
          ++found;
          intuitionistic += check_proof(*t.proof, t.claim, false, th.env()).accepted;
        }
    }
  }
  std::ostringstream d;
  d << "holds in all models r <= 2, base <= 3: " << (semantic ? "yes" : "no") << "; " << found
    << " bundled proof(s) of the collapse, " << intuitionistic
    << " accepted intuitionistically (expected unprovable)";
  return {semantic && intuitionistic == 0, d.str()};
}

} // namespace

int main() {
  auto corpus = formula_corpus();
  std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"level example", level_example},
      {"index recursions agree", index_agreement},
      {"universe bound", [&] { return universe_bound(corpus); }},
      {"cumulativity", [&] { return cumulativity(corpus); }},
      {"equality formula level", equality_level},
      {"kernel corpus", kernel_corpus},
      {"oracle soundness sweep", oracle_sweep},
      {"local set level table", level_table},
      {"universal properties", universal_properties},
      {"full reducibility collapse", full_reducibility_collapse},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("criterion %zu: %s  %s (%s)\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first,
                o.detail.c_str());
  }
  return failed == 0 ? 0 : 1;
}
