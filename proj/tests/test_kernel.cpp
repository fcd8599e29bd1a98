#include <gtest/gtest.h>

#include <filesystem>

#include "irtt/kernel.hpp"
#include "irtt/parse.hpp"
#include "irtt/print.hpp"
#include "irtt/theory.hpp"
#include "irtt/typing.hpp"

using namespace irtt;

namespace {

ProofStep script(const std::string& text) { return parse_proof(read_sexprs(text).at(0)); }

Sequent seq(const std::string& goal, SortContext vars = {},
            const std::vector<std::string>& hyps = {}) {
  Sequent s;
  s.vars = vars;
  for (const auto& h : hyps)
    s.hypotheses.push_back(parse_formula(h, vars));
  s.goal = parse_formula(goal, vars);
  return s;
}

Verdict run(const std::string& proof, const Sequent& s, bool classical = false) {
  return check_proof(script(proof), s, classical);
}

const TypeSymbol N = TypeSymbol::nat();

std::string scripts_dir() { return IRTT_SCRIPTS_DIR; }

} // namespace

TEST(Kernel, ReflexivityAccepts) {
  auto v = run("(refl)", seq("0 = 0"));
  EXPECT_TRUE(v.accepted) << v.diagnostic;
  EXPECT_FALSE(run("(refl)", seq("0 = S 0")).accepted);
}

TEST(Kernel, Assumption) {
  EXPECT_TRUE(run("(assume)", seq("x = 0", {{"x", N}}, {"x = 0"})));
  EXPECT_TRUE(run("(assume)", seq("forall y:N. y = y", {}, {"forall z:N. z = z"})));
  EXPECT_FALSE(run("(assume)", seq("x = 0", {{"x", N}}, {"0 = x"})));
}

TEST(Kernel, PropositionalRules) {
  EXPECT_TRUE(run("(imp-intro (and-intro (and-elim-r \"0 = 0\" (assume)) (and-elim-l \"S 0 = 0\" (assume))))",
                  seq("0 = 0 /\\ S 0 = 0 => S 0 = 0 /\\ 0 = 0")));
  EXPECT_TRUE(run("(imp-intro (or-elim \"0 = 0 \\/ false\" (assume) (or-intro-r (assume)) "
                  "(false-elim (assume))))",
                  seq("0 = 0 \\/ false => false \\/ 0 = 0")));
  EXPECT_TRUE(run("(imp-intro (imp-intro (imp-elim \"0 = 0\" (assume) (assume))))",
                  seq("0 = 0 => (0 = 0 => false) => false")));
  EXPECT_FALSE(run("(or-intro-l (refl))", seq("S 0 = 0 \\/ 0 = 0")));
}

TEST(Kernel, QuantifierRules) {
  EXPECT_TRUE(run("(forall-intro a (refl))", seq("forall x:N. x = x")));
  EXPECT_TRUE(run("(exists-intro \"S 0\" (refl))", seq("exists x:N. x = S 0")));
  EXPECT_TRUE(run("(imp-intro (forall-elim \"forall y:N. y = y\" \"S 0\" (assume)))",
                  seq("(forall y:N. y = y) => S 0 = S 0")));
  EXPECT_TRUE(run("(imp-intro (exists-elim \"exists y:N. y = 0\" w (assume) (exists-intro \"w\" (assume))))",
                  seq("(exists y:N. y = 0) => exists z:N. z = 0")));
  // the witness must have the bound variable's sort
  EXPECT_FALSE(run("(exists-intro \"()\" (refl))", seq("exists x:N. x = x")));
}

TEST(Kernel, EigenvariableMustBeFresh) {
  auto ctx = SortContext{{"x", N}};
  auto v = run("(forall-intro x (refl))", seq("forall y:N. y = y", ctx));
  EXPECT_FALSE(v.accepted);
  EXPECT_NE(v.diagnostic.find("not fresh"), std::string::npos) << v.diagnostic;

  // exists-elim with a variable free in the goal would prove x = 0 from exists y. y = 0
  auto w = run("(exists-elim \"exists y:N. y = 0\" x (assume) (assume))",
               seq("x = 0", ctx, {"exists y:N. y = 0"}));
  EXPECT_FALSE(w.accepted);
}

TEST(Kernel, EqualitySubstitution) {
  SortContext ctx{{"a", N}, {"b", N}};
  EXPECT_TRUE(run("(eq-subst w \"N\" \"S w = S a\" \"a = b\" (assume) (refl))",
                  seq("S b = S a", ctx, {"a = b"})));
  // motive instance must match the goal
  EXPECT_FALSE(run("(eq-subst w \"N\" \"S w = S a\" \"a = b\" (assume) (refl))",
                   seq("S a = S b", ctx, {"a = b"})));
  // equation sort must match the declared sort
  EXPECT_FALSE(run("(eq-subst w \"1\" \"w = w\" \"a = b\" (assume) (refl))",
                   seq("a = a", ctx, {"a = b"})));
}

TEST(Kernel, CutIntroducesLemma) {
  EXPECT_TRUE(run("(cut \"0 = 0\" (refl) (assume))", seq("0 = 0")));
}

TEST(Kernel, DiagnosticsNameTheStep) {
  auto v = run("(and-intro (refl) (assume))", seq("0 = 0 /\\ S 0 = 0"));
  EXPECT_FALSE(v.accepted);
  EXPECT_EQ(v.step, "1.2");
  EXPECT_NE(v.diagnostic.find("assume"), std::string::npos);

  auto u = run("(frobnicate)", seq("0 = 0"));
  EXPECT_NE(u.diagnostic.find("unknown rule"), std::string::npos);
  auto a = run("(refl (refl))", seq("0 = 0"));
  EXPECT_NE(a.diagnostic.find("subproof"), std::string::npos);
  auto f = run("(imp-elim \"x = 0\" (assume) (assume))", seq("0 = 0"));
  EXPECT_NE(f.diagnostic.find("ill-formed"), std::string::npos) << f.diagnostic;
}

TEST(Kernel, LevelDisciplineRejectsImpredicativeComprehension) {
  auto v = run("(axiom comprehension \"{x:N | forall Y:P[0](N). x in Y}@0\")",
               seq("forall z:N. (z in {x:N | forall Y:P[0](N). x in Y}@1 => false) "
                   "\\/ false"));
  EXPECT_FALSE(v.accepted);
  EXPECT_NE(v.diagnostic.find("LevelViolation"), std::string::npos) << v.diagnostic;
}

TEST(Kernel, PemRequiresClassicalMode) {
  auto s = seq("forall X:P[1](N). forall x:N. x in X \\/ ~ x in X");
  auto proof = "(forall-intro X (forall-intro x (axiom pem \"x in X\")))";
  EXPECT_TRUE(run(proof, s, true));
  auto v = run(proof, s, false);
  EXPECT_FALSE(v.accepted);
  EXPECT_NE(v.diagnostic.find("PEM-in-intuitionistic-mode"), std::string::npos);
  EXPECT_EQ(v.step, "1.1.1");
}

TEST(Kernel, RecordsSchemes) {
  auto v = run("(forall-elim \"forall x:N. x + 0 = x\" \"0\" (axiom add-zero))", seq("0 + 0 = 0"));
  ASSERT_TRUE(v.accepted) << v.diagnostic;
  EXPECT_TRUE(v.schemes.contains("add-zero"));
  EXPECT_TRUE(v.uses_arithmetic());
  EXPECT_FALSE(v.uses_pem());
}

TEST(Kernel, Deterministic) {
  auto th = load_theory_file(scripts_dir() + "/lemma1_natnat.irttp");
  const auto& t = th.theorems.at(0);
  auto a = check_proof(*t.proof, t.claim, false, th.env());
  auto b = check_proof(*t.proof, t.claim, false, th.env());
  EXPECT_EQ(a.accepted, b.accepted);
  EXPECT_EQ(a.diagnostic, b.diagnostic);
  EXPECT_EQ(a.steps, b.steps);
  EXPECT_EQ(a.schemes, b.schemes);
}

TEST(Axioms, FrInstanceLevels) {
  auto inst = instantiate_axiom("fr", {"N", "N", "0", "0", "7"});
  // the existential quantifies over P[0](N * N)
  auto f = inst.formula.body().body().body().right();
  ASSERT_EQ(f.kind(), Formula::Kind::Exists);
  EXPECT_EQ(f.variable().sort, parse_type("P[0](N * N)"));
  EXPECT_EQ(inst.level_trace, "k = ||B|| v m v n = max(0, 0, 0) = 0");

  auto g = instantiate_axiom("fr", {"N", "P[1](N)", "0", "2", "1"});
  EXPECT_EQ(g.formula.body().body().body().right().variable().sort,
            parse_type("P[2](N * P[1](N))"));
  EXPECT_EQ(g.level_trace, "k = ||B|| v m v n = max(1, 0, 2) = 2");
}

TEST(Axioms, RdcInstance) {
  auto inst = instantiate_axiom("rdc", {"N", "0", "0"});
  auto concl = inst.formula.body().body().body().right();
  ASSERT_EQ(concl.kind(), Formula::Kind::Exists);
  EXPECT_EQ(concl.variable().sort, parse_type("P[0](N * N)"));
  EXPECT_TRUE(inst.arithmetic);
  EXPECT_EQ(instantiate_axiom("rdc", {"P[1](N)", "0", "0"}).formula.body().body().body().right()
                .variable().sort,
            parse_type("P[2](N * P[1](N))"));
}

TEST(Axioms, InstancesAreWellFormed) {
  std::vector<std::pair<std::string, std::vector<std::string>>> cases{
      {"unit-eta", {}},
      {"fst-beta", {"N", "P[1](N)"}},
      {"snd-beta", {"1", "N"}},
      {"pair-eta", {"N", "N"}},
      {"peano-zero-succ", {}},
      {"peano-succ-inj", {}},
      {"add-zero", {}},
      {"add-succ", {}},
      {"mul-zero", {}},
      {"mul-succ", {}},
      {"induction", {"n", "n + 0 = n"}},
      {"extensionality", {"2", "N * N"}},
      {"comprehension", {"{x:N | exists Y:P[0](N). x in Y}@1"}},
      {"fr", {"N", "N", "1", "0", "3"}},
      {"rdc", {"N * N", "1", "2"}},
      {"pem", {"0 = 0"}},
  };
  for (const auto& [scheme, params] : cases) {
    auto inst = instantiate_axiom(scheme, params);
    EXPECT_TRUE(wf_formula(inst.formula, min_level(inst.formula))) << scheme;
    EXPECT_TRUE(free_variables(inst.formula).empty()) << scheme << ": " << print(inst.formula);
  }
}

TEST(Axioms, Errors) {
  EXPECT_THROW(instantiate_axiom("fr", {"N", "N"}), AxiomError);
  EXPECT_THROW(instantiate_axiom("nonsense", {}), AxiomError);
  EXPECT_THROW(instantiate_axiom("extensionality", {"x", "N"}), AxiomError);
  EXPECT_THROW(instantiate_axiom("comprehension", {"0"}), AxiomError);
  EXPECT_THROW(instantiate_axiom("comprehension", {"{x:N | forall Y:P[0](N). x in Y}@0"}),
               SortError);
}

TEST(MapPredicate, IdentityOnNaturals) {
  auto nat = naturals();
  auto id = parse_term("{w:N * N | fst w in {x:N | true}@0 /\\ snd w in {x:N | true}@0 /\\ "
                       "fst w = snd w}@0");
  auto m = derive_map_predicate(nat, nat, id);
  EXPECT_EQ(min_level(m), 0u);
  ASSERT_EQ(m.kind(), Formula::Kind::And);
  EXPECT_EQ(m.left().kind(), Formula::Kind::And);
}

TEST(MapPredicate, LevelFollowsGraph) {
  auto nat = naturals();
  Variable F{"F", parse_type("P[2](N * N)")};
  auto m = derive_map_predicate(nat, nat, Term::var(F));
  EXPECT_EQ(min_level(m, {{"F", F.sort}}), 2u);
  EXPECT_THROW(derive_map_predicate(nat, nat, Term::var("G", parse_type("P[0](N)"))),
               SortError);
}

TEST(Corpus, AllBundledScriptsAccept) {
  std::size_t count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(scripts_dir())) {
    if (entry.path().extension() != ".irttp")
      continue;
    bool classical = entry.path().stem() == "pem_full_reducibility";
    auto th = load_theory_file(entry.path().string());
    for (const auto& r : check_theory(th, classical)) {
      EXPECT_TRUE(r.verdict.accepted) << entry.path() << " " << r.name << ": "
                                      << r.verdict.diagnostic;
      ++count;
    }
  }
  EXPECT_GE(count, 10u);
}

TEST(Corpus, WeakeningIsAdmissible) {
  for (const auto& entry : std::filesystem::directory_iterator(scripts_dir())) {
    if (entry.path().extension() != ".irttp")
      continue;
    bool classical = entry.path().stem() == "pem_full_reducibility";
    auto th = load_theory_file(entry.path().string());
    for (const auto& t : th.theorems) {
      auto weaker = t.claim;
      weaker.hypotheses.push_back(parse_formula("0 = S 0"));
      weaker.hypotheses.push_back(parse_formula("forall q:N. q = q"));
      auto v = check_proof(*t.proof, weaker, classical, th.env());
      EXPECT_TRUE(v.accepted) << t.name << ": " << v.diagnostic;
    }
  }
}

TEST(Corpus, PemTheoremNeedsClassicalMode) {
  auto th = load_theory_file(scripts_dir() + "/pem_full_reducibility.irttp");
  const auto* t = th.theorem("pem_full_reducibility");
  ASSERT_NE(t, nullptr);
  auto yes = check_proof(*t->proof, t->claim, true, th.env());
  EXPECT_TRUE(yes.accepted) << yes.diagnostic;
  EXPECT_TRUE(yes.schemes.contains("fr"));
  auto no = check_proof(*t->proof, t->claim, false, th.env());
  EXPECT_FALSE(no.accepted);
  EXPECT_NE(no.diagnostic.find("PEM-in-intuitionistic-mode"), std::string::npos);
  EXPECT_NE(no.diagnostic.find("(axiom"), std::string::npos);
}

TEST(Theory, LoaderErrors) {
  EXPECT_THROW(load_theory("(theorem t (goal \"0 = 0\"))"), Error);  // no proof
  EXPECT_THROW(load_theory("(type A \"N\") (type A \"1\")"), Error);
  EXPECT_THROW(load_theory("(sequent s (goal later)) (formula later \"0 = 0\")"), Error);
  EXPECT_THROW(load_theory("(type S \"N\")"), Error);
  EXPECT_THROW(load_theory("(localset l \"N\" \"{x:N | true}@0\" 1)"), Error);
  EXPECT_THROW(load_theory("(sequent s (goal \"x = 0\"))"), Error);
  EXPECT_THROW(load_theory("(theorem t (goal \"0 = 0\") (proof (refl)"), SyntaxError);
}

TEST(Theory, LoaderResolvesNames) {
  auto th = load_theory(R"(
    (type Nat2 "N * N")
    (formula diag (vars (p "Nat2")) "fst p = snd p")
    (localset nat "N" "{x:N | true}@0" 0)
    (sequent s (vars (p "Nat2")) (hyps diag) (goal "snd p = fst p")))");
  EXPECT_EQ(th.types.at("Nat2"), parse_type("N * N"));
  EXPECT_EQ(th.localsets.at("nat").level, 0u);
  ASSERT_EQ(th.theorems.size(), 1u);
  EXPECT_EQ(print(th.theorems[0].claim.hypotheses.at(0)), "fst p = snd p");
  EXPECT_FALSE(th.theorems[0].proof.has_value());
}

TEST(ProofScript, RoundTripsThroughSExpr) {
  auto p = script("(forall-elim \"forall y:N. y = y\" \"S 0\" (assume))");
  auto back = parse_proof(read_sexprs(write_sexpr(to_sexpr(p))).at(0));
  EXPECT_EQ(back.rule, p.rule);
  EXPECT_EQ(back.args, p.args);
  EXPECT_EQ(back.subproofs.size(), 1u);
  EXPECT_THROW(parse_proof(read_sexprs("(assume (refl) x)").at(0)), SyntaxError);
}
