#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using namespace irtt;
using cli::Json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run irtt_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string script(const std::string& name) { return std::string(IRTT_SCRIPTS_DIR) + "/" + name; }

std::filesystem::path temp_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("irtt_cli_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

std::string write_temp(const std::string& name, const std::string& text) {
  auto p = temp_dir(name) / "in.irtt";
  std::ofstream(p) << text;
  return p.string();
}

// A small subset of JSON Schema: type, required, properties, items, enum.
void validate(const Json& value, const Json& schema, const std::string& path = "$") {
  if (schema.contains("type")) {
    const std::string type = schema["type"];
    bool ok = (type == "object" && value.is_object()) || (type == "array" && value.is_array()) ||
              (type == "string" && value.is_string()) ||
              (type == "integer" && value.is_number_integer()) ||
              (type == "boolean" && value.is_boolean());
    ASSERT_TRUE(ok) << path << " is not " << type << ": " << value.dump();
  }
  if (schema.contains("enum")) {
    bool found = false;
    for (const auto& e : schema["enum"])
      found = found || e == value;
    ASSERT_TRUE(found) << path << " = " << value.dump() << " not in " << schema["enum"].dump();
  }
  if (schema.contains("required"))
    for (const auto& key : schema["required"])
      ASSERT_TRUE(value.contains(key.get<std::string>())) << path << " lacks " << key;
  if (schema.contains("properties"))
    for (const auto& [key, sub] : schema["properties"].items())
      if (value.contains(key))
        validate(value[key], sub, path + "." + key);
  if (schema.contains("items"))
    for (std::size_t i = 0; i < value.size(); ++i)
      validate(value[i], schema["items"], path + "[" + std::to_string(i) + "]");
}

Json schema(const std::string& text) { return Json::parse(text); }

const char* kLocalSetSchema = R"({"type": "object", "required": ["carrier", "predicate", "level"],
  "properties": {"carrier": {"type": "string"}, "predicate": {"type": "string"},
                 "level": {"type": "integer"}}})";

} // namespace

TEST(Cli, LevelExample) {
  auto r = irtt_run({"level", "P[3](N) * P[1](N * P[1](1))"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "level=4, eq_level=3\n");
}

TEST(Cli, RussellExample) {
  auto r = irtt_run({"russell", "(0^0,0^0)^1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "P[1](N * N)\n");
}

TEST(Cli, MinLevelAndCheckFormula) {
  EXPECT_EQ(irtt_run({"min-level", "forall X:P[1](N). X = X"}).out, "2\n");
  EXPECT_EQ(irtt_run({"min-level", "0 in X", "--var", "X:P[3](N)"}).out, "3\n");
  EXPECT_EQ(irtt_run({"min-level", "--var", "X:P[3](N)", "--var", "y:N", "y in X"}).out, "3\n");
  auto ok = irtt_run({"check-formula", "forall X:P[1](N). X = X", "--level", "2"});
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(ok.out, "OK\n");
  auto bad = irtt_run({"check-formula", "forall X:P[1](N). X = X", "--level", "1"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("level 2 > 1"), std::string::npos);
  auto unbound = irtt_run({"check-formula", "x = 0", "--level", "0"});
  EXPECT_EQ(unbound.code, 65);
  EXPECT_NE(unbound.err.find("unbound variable 'x'"), std::string::npos);
  auto sorts = irtt_run({"check-formula", "0 in {x:N | forall X:P[1](N). X = X}@0", "--level", "3"});
  EXPECT_EQ(sorts.code, 1);
  EXPECT_NE(sorts.out.find("LevelViolation"), std::string::npos);
}

TEST(Cli, ProveCorpus) {
  for (const auto& entry : std::filesystem::directory_iterator(IRTT_SCRIPTS_DIR)) {
    if (entry.path().extension() != ".irttp")
      continue;
    bool pem = entry.path().stem() == "pem_full_reducibility";
    auto r = irtt_run({"prove", entry.path().string()});
    EXPECT_EQ(r.code, pem ? 1 : 0) << entry.path() << r.out;
  }
  auto intuitionistic = irtt_run({"prove", script("pem_full_reducibility.irttp")});
  EXPECT_NE(intuitionistic.out.find("axiom pem"), std::string::npos);
  EXPECT_EQ(irtt_run({"prove", script("pem_full_reducibility.irttp"), "--classical"}).code, 0);
}

TEST(Cli, Translate) {
  auto r = irtt_run({"translate", "0 = 0 => S 0 = 0 /\\ false"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "(Pi (_ (Id Nat 0 0)) (Sigma (_ (Id Nat (app succ 0) 0)) Empty))\nuniverse=0\n");
  auto h = irtt_run({"translate", "0 in {x:N | true}@0", "--obligations"});
  EXPECT_NE(h.out.find("?e1 : (Pi (x Nat)"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(irtt_run({}).code, 64);
  EXPECT_EQ(irtt_run({"frobnicate"}).code, 64);
  EXPECT_EQ(irtt_run({"level"}).code, 64);
  EXPECT_EQ(irtt_run({"construct", "coproduct", "x"}).code, 64);
  EXPECT_EQ(irtt_run({"construct", "product", "(N, {x:N | true}@0, 0)"}).code, 64);
  EXPECT_EQ(irtt_run({"model-check", script("eq_symmetry.irttp"), "--base", "3..1"}).code, 64);
  EXPECT_EQ(irtt_run({"min-level", "x = x", "--var", "x"}).code, 64);
  EXPECT_EQ(irtt_run({"prove", "/nonexistent/file.irttp"}).code, 66);
  EXPECT_EQ(irtt_run({"model-check", "/nonexistent/file.irtt"}).code, 66);
  EXPECT_EQ(irtt_run({"level", "P[(N)"}).code, 65);
  EXPECT_EQ(irtt_run({"--help"}).code, 0);
}

TEST(Cli, ModelCheckOutcomes) {
  EXPECT_EQ(irtt_run({"model-check", script("eq_symmetry.irttp")}).code, 0);
  EXPECT_EQ(irtt_run({"model-check", script("arith_zero_add.irttp")}).code, 4);

  auto bad = write_temp("bad", "(sequent all_zero (goal \"forall x:N. x = 0\"))\n"
                               "(sequent fine (vars (y \"N\")) (goal \"y = y\"))\n");
  auto r = irtt_run({"model-check", bad, "--base", "1..3", "--depth", "2"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("all_zero: countermodel at base 2"), std::string::npos);
  EXPECT_NE(r.out.find("fine: validated"), std::string::npos);

  auto big = write_temp("big", "(sequent big (goal \"forall X:P[0](P[0](P[0](N))). X = X\"))\n");
  EXPECT_EQ(irtt_run({"model-check", big, "--depth", "2"}).code, 3);

  auto valued = write_temp("valued", "(sequent v (vars (X \"P[0](N)\") (n \"N\")) (goal \"n in X\"))\n");
  auto v = irtt_run({"model-check", valued, "--base", "2"});
  EXPECT_EQ(v.code, 2);
  EXPECT_NE(v.out.find("X = {}, n = 0"), std::string::npos);
}

TEST(Cli, ConstructWritesCheckableObligations) {
  std::string nat = "(N, {x:N | true}@0, 0)";
  auto dir = temp_dir("construct");
  auto r = irtt_run({"construct", "quotient", nat, "(N * N, E, 0)", nat, "F", "--var", "E:P[0](N * N)", "--var",
                     "F:P[0](N * N)", "--out-dir", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("l = m v n v |A| = max(0, 0, 0) = 0"), std::string::npos);
  unsigned files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    ++files;
    auto stem = entry.path().stem().string();
    auto check = irtt_run({"model-check", entry.path().string(), "--base", "1..2"});
    // the equivalence conditions and "F respects E" are obligations on E and F,
    // not consequences of the hypotheses
    bool conditional = stem.find("reflexive") != std::string::npos ||
                       stem.find("symmetric") != std::string::npos ||
                       stem.find("transitive") != std::string::npos ||
                       stem.find("respects") != std::string::npos;
    EXPECT_EQ(check.code, conditional ? 2 : 0) << stem << "\n" << check.out << check.err;
  }
  EXPECT_EQ(files, 8u);
}

TEST(Cli, ConstructFromTheoryNames) {
  auto th = write_temp("theory", "(type Sub \"P[0](N)\")\n"
                                 "(localset nat \"N\" \"{x:N | true}@0\" 0)\n"
                                 "(localset evens \"N\" \"{x:N | x + x = x}@2\" 2)\n");
  auto r = irtt_run({"construct", "exponential", "nat", "evens", "--theory", th});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("k = ||B|| v m v n = max(0, 0, 2) = 2"), std::string::npos);
  EXPECT_NE(r.out.find("exponential: (P[2](N * N), "), std::string::npos);
  auto chi = irtt_run({"construct", "chi", "nat", "Y", "1", "--var", "Y:Sub", "--theory", th});
  EXPECT_EQ(chi.code, 65);
  EXPECT_NE(chi.err.find("P[1](N)"), std::string::npos);
}

TEST(Cli, JsonOutputMatchesSchemas) {
  std::string nat = "(N, {x:N | true}@0, 0)";
  std::vector<std::pair<std::vector<std::string>, std::string>> cases = {
      {{"level", "P[3](N) * P[1](N * P[1](1))", "--json"},
       R"({"type": "object", "required": ["command", "type", "level", "eq_level"],
           "properties": {"command": {"enum": ["level"]}, "type": {"type": "string"},
                          "level": {"enum": [4]}, "eq_level": {"enum": [3]}}})"},
      {{"min-level", "0 = 0", "--json"},
       R"({"type": "object", "required": ["command", "formula", "min_level"],
           "properties": {"min_level": {"type": "integer"}}})"},
      {{"check-formula", "0 = 0", "--level", "0", "--json"},
       R"({"type": "object", "required": ["command", "formula", "level", "ok", "diagnostic"],
           "properties": {"ok": {"enum": [true]}, "diagnostic": {"type": "string"}}})"},
      {{"prove", script("refl_zero.irttp"), "--json"},
       R"({"type": "object", "required": ["command", "classical", "accepted", "files"],
           "properties": {"accepted": {"enum": [true]},
             "files": {"type": "array", "items": {"type": "object", "required": ["file", "theorems"],
               "properties": {"theorems": {"type": "array", "items": {"type": "object",
                 "required": ["name", "accepted", "steps", "schemes", "step", "line", "diagnostic"],
                 "properties": {"schemes": {"type": "array", "items": {"type": "string"}},
                                "steps": {"type": "integer"}}}}}}}}})"},
      {{"translate", "forall X:P[1](N). X = X", "--obligations", "--json"},
       R"({"type": "object", "required": ["command", "formula", "mltt", "universe", "obligations"],
           "properties": {"universe": {"enum": [2]}, "obligations": {"type": "array",
             "items": {"type": "object", "required": ["name", "type", "description"]}}}})"},
      {{"construct", "product", nat, nat, "--json"},
       std::string(R"({"type": "object", "required": ["command", "kind", "sets", "maps", "trace", "obligations", "files"],
           "properties": {"sets": {"type": "object", "required": ["product"],
                                   "properties": {"product": )") +
           kLocalSetSchema + R"(}},
             "maps": {"type": "object", "required": ["p1", "p2"]},
             "trace": {"type": "array", "items": {"type": "string"}},
             "obligations": {"type": "array", "items": {"type": "object",
               "required": ["vars", "hypotheses", "goal", "name", "level"],
               "properties": {"level": {"type": "integer"}, "vars": {"type": "object"}}}}}})"},
      {{"model-check", script("eq_symmetry.irttp"), "--json"},
       R"({"type": "object", "required": ["command", "file", "base", "depth", "budget", "results", "exit"],
           "properties": {"exit": {"enum": [0]}, "results": {"type": "array", "items": {
             "type": "object", "required": ["name", "status"],
             "properties": {"status": {"enum": ["validated", "countermodel", "budget", "arithmetic"]}}}}}})"},
      {{"russell", "(0^0,0^0)^1", "--json"},
       R"j({"type": "object", "required": ["command", "input", "type", "level", "eq_level"],
           "properties": {"type": {"enum": ["P[1](N * N)"]}}})j"},
  };
  for (const auto& [args, sch] : cases) {
    auto r = irtt_run(args);
    ASSERT_EQ(r.code, 0) << args[0] << r.err;
    auto j = Json::parse(r.out);
    validate(j, schema(sch));
    EXPECT_EQ(j["command"], args[0]);
    EXPECT_EQ(irtt_run(args).out, r.out) << "output must be deterministic";
  }
}
