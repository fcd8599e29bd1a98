#pragma once

// The irtt driver. run() is the whole program so tests can call it in process.
//
//   irtt level "<type>"
//   irtt min-level "<formula>"
//   irtt check-formula "<formula>" --level k
//   irtt prove <file>... [--classical]
//   irtt translate "<formula>" [--obligations]
//   irtt construct <product|quotient|exponential|equalizer|chi> <args>... [--out-dir d]
//   irtt model-check <file> [--base 1..3] [--depth 2]
//   irtt russell "<russell type>"
//
// Common options: --var "x:A" (repeatable) declares free variables,
// --theory <file> makes its type abbreviations and local sets available,
// --json switches to machine-readable output.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "irtt/interp.hpp"
#include "irtt/localset.hpp"
#include "irtt/oracle.hpp"
#include "irtt/parse.hpp"
#include "irtt/russell.hpp"
#include "irtt/theory.hpp"

namespace irtt::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failed = 1;
inline constexpr int countermodel = 2;
inline constexpr int budget = 3;
inline constexpr int arithmetic = 4;
inline constexpr int usage = 64;
inline constexpr int data = 65;
inline constexpr int file = 66;
} // namespace exit_code

using Json = nlohmann::ordered_json;

class UsageError : public Error {
public:
  using Error::Error;
};

namespace detail {

struct Common {
  bool json = false;
  std::vector<std::string> vars;
  std::string theory_file;
  std::optional<Theory> theory;

  const TypeAbbreviations* abbrevs() const { return theory ? &theory->types : nullptr; }

  SortContext context() const {
    SortContext ctx;
    for (const auto& decl : vars) {
      auto colon = decl.find(':');
      if (colon == std::string::npos)
        throw UsageError("--var expects name:Type, got '" + decl + "'");
      auto name = decl.substr(0, colon);
      name.erase(0, name.find_first_not_of(' '));
      name.erase(name.find_last_not_of(' ') + 1);
      if (!ctx.emplace(name, parse_type(decl.substr(colon + 1), abbrevs())).second)
        throw UsageError("variable '" + name + "' declared twice");
    }
    return ctx;
  }
};

inline unsigned parse_nat(const std::string& s, const std::string& what) {
  if (s.empty() || s.size() > 9 || s.find_first_not_of("0123456789") != std::string::npos)
    throw UsageError(what + " must be a natural number, got '" + s + "'");
  return static_cast<unsigned>(std::stoul(s));
}

// Splits at commas outside (), {} and [].
inline std::vector<std::string> split_top(const std::string& s) {
  std::vector<std::string> out{""};
  int depth = 0;
  for (char c : s) {
    if (c == '(' || c == '{' || c == '[')
      ++depth;
    if (c == ')' || c == '}' || c == ']')
      --depth;
    if (c == ',' && depth == 0)
      out.emplace_back();
    else
      out.back() += c;
  }
  for (auto& part : out) {
    part.erase(0, part.find_first_not_of(" \t"));
    part.erase(part.find_last_not_of(" \t") + 1);
  }
  return out;
}

/// A theory local set by name, or a literal triple "(A, X, n)".
inline LocalSetDesc local_set(const Common& c, const std::string& text, const SortContext& ctx) {
  if (c.theory) {
    auto it = c.theory->localsets.find(text);
    if (it != c.theory->localsets.end())
      return it->second;
  }
  auto t = text;
  t.erase(0, t.find_first_not_of(" \t"));
  t.erase(t.find_last_not_of(" \t") + 1);
  if (t.size() < 2 || t.front() != '(' || t.back() != ')')
    throw UsageError("local set '" + text + "' is neither a declared name nor a triple (A, X, n)");
  auto parts = split_top(t.substr(1, t.size() - 2));
  if (parts.size() != 3)
    throw UsageError("local set '" + text + "' must have three components (A, X, n)");
  LocalSetDesc x{parse_type(parts[0], c.abbrevs()), parse_term(parts[1], ctx, c.abbrevs()),
                 parse_nat(parts[2], "local set level")};
  check_local_set(x);
  return x;
}

inline MapDesc map_arg(const Common& c, const LocalSetDesc& dom, const LocalSetDesc& cod,
                       const std::string& graph, const SortContext& ctx) {
  return make_map(dom, cod, parse_term(graph, ctx, c.abbrevs()));
}

inline Json json_of(const LocalSetDesc& x) {
  return {{"carrier", print(x.carrier)}, {"predicate", print(x.predicate)}, {"level", x.level}};
}

inline Json json_of(const MapDesc& f) {
  return {{"graph", print(f.graph)}, {"level", f.level}, {"dom", json_of(f.dom)},
          {"cod", json_of(f.cod)}};
}

inline Json json_of(const Sequent& s) {
  Json vars = Json::object();
  for (const auto& [name, sort] : s.vars)
    vars[name] = print(sort);
  Json hyps = Json::array();
  for (const auto& h : s.hypotheses)
    hyps.push_back(print(h));
  return {{"vars", vars}, {"hypotheses", hyps}, {"goal", print(s.goal)}};
}

inline std::string slug(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c)))
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    else if (!out.empty() && out.back() != '_')
      out += '_';
  }
  while (!out.empty() && out.back() == '_')
    out.pop_back();
  return out.empty() ? "obligation" : out;
}

inline std::string quoted(const std::string& s) { return write_sexpr(SExpr::string(s)); }

/// A sequent declaration that load_theory reads back.
inline std::string sequent_decl(const std::string& name, const Sequent& s) {
  std::string out = "(sequent " + name;
  if (!s.vars.empty()) {
    out += "\n  (vars";
    for (const auto& [v, sort] : s.vars)
      out += " (" + v + " " + quoted(print(sort)) + ")";
    out += ")";
  }
  if (!s.hypotheses.empty()) {
    out += "\n  (hyps";
    for (const auto& h : s.hypotheses)
      out += "\n    " + quoted(print(h));
    out += ")";
  }
  return out + "\n  (goal " + quoted(print(s.goal)) + "))\n";
}

inline bool mentions_arithmetic(const Formula& f);

inline bool mentions_arithmetic(const Term& t) {
  switch (t.kind()) {
  case Term::Kind::Succ:
  case Term::Kind::Add:
  case Term::Kind::Mul:
    return true;
  case Term::Kind::SetAbs:
    return mentions_arithmetic(t.body());
  default:
    for (std::size_t i = 0; i < t.arity(); ++i)
      if (mentions_arithmetic(t.arg(i)))
        return true;
    return false;
  }
}

inline bool mentions_arithmetic(const Formula& f) {
  switch (f.kind()) {
  case Formula::Kind::Eq:
  case Formula::Kind::Mem:
    return mentions_arithmetic(f.lhs()) || mentions_arithmetic(f.rhs());
  case Formula::Kind::False:
    return false;
  case Formula::Kind::Forall:
  case Formula::Kind::Exists:
    return mentions_arithmetic(f.body());
  default:
    return mentions_arithmetic(f.left()) || mentions_arithmetic(f.right());
  }
}

inline bool mentions_arithmetic(const Sequent& s) {
  return mentions_arithmetic(s.goal) ||
         std::any_of(s.hypotheses.begin(), s.hypotheses.end(),
                     [](const Formula& h) { return mentions_arithmetic(h); });
}

// ----------------------------------------------------------------------------
// Subcommands

inline int cmd_level(const Common& c, const std::string& text, std::ostream& out) {
  auto t = parse_type(text, c.abbrevs());
  if (c.json)
    out << Json{{"command", "level"}, {"type", print(t)}, {"level", level(t)},
                {"eq_level", eq_level(t)}}
               .dump(2)
        << "\n";
  else
    out << "level=" << level(t) << ", eq_level=" << eq_level(t) << "\n";
  return exit_code::ok;
}

inline int cmd_min_level(const Common& c, const std::string& text, std::ostream& out) {
  auto ctx = c.context();
  auto f = parse_formula(text, ctx, c.abbrevs());
  auto k = min_level(f, ctx);
  if (c.json)
    out << Json{{"command", "min-level"}, {"formula", print(f)}, {"min_level", k}}.dump(2) << "\n";
  else
    out << k << "\n";
  return exit_code::ok;
}

inline int cmd_check_formula(const Common& c, const std::string& text, unsigned k,
                             std::ostream& out) {
  auto ctx = c.context();
  WfResult r;
  std::string printed = text;
  try {
    auto f = parse_formula(text, ctx, c.abbrevs());
    printed = print(f);
    r = wf_formula(f, k, ctx);
  } catch (const SortError& e) {
    r = {false, e.what()};
  }
  if (c.json)
    out << Json{{"command", "check-formula"}, {"formula", printed}, {"level", k}, {"ok", r.ok},
                {"diagnostic", r.diagnostic}}
               .dump(2)
        << "\n";
  else
    out << (r.ok ? "OK" : "rejected: " + r.diagnostic) << "\n";
  return r.ok ? exit_code::ok : exit_code::failed;
}

inline int cmd_prove(const Common& c, const std::vector<std::string>& files, bool classical,
                     std::ostream& out) {
  bool all = true;
  Json reports = Json::array();
  for (const auto& file : files) {
    auto th = load_theory_file(file);
    Json theorems = Json::array();
    if (!c.json)
      out << file << "\n";
    for (const auto& r : check_theory(th, classical)) {
      const auto& v = r.verdict;
      all = all && v.accepted;
      std::vector<std::string> schemes(v.schemes.begin(), v.schemes.end());
      theorems.push_back({{"name", r.name}, {"accepted", v.accepted}, {"steps", v.steps},
                          {"schemes", schemes}, {"step", v.step}, {"line", v.line},
                          {"diagnostic", v.diagnostic}});
      if (c.json)
        continue;
      if (v.accepted) {
        out << "  " << r.name << ": accepted (" << v.steps << " steps";
        if (!schemes.empty()) {
          out << "; axioms:";
          for (const auto& s : schemes)
            out << " " << s;
        }
        out << ")\n";
      } else {
        out << "  " << r.name << ": rejected: " << v.diagnostic << "\n";
      }
    }
    reports.push_back({{"file", file}, {"theorems", theorems}});
  }
  if (c.json)
    out << Json{{"command", "prove"}, {"classical", classical}, {"accepted", all},
                {"files", reports}}
               .dump(2)
        << "\n";
  return all ? exit_code::ok : exit_code::failed;
}

inline int cmd_translate(const Common& c, const std::string& text, bool obligations,
                         std::ostream& out) {
  auto ctx = c.context();
  auto f = parse_formula(text, ctx, c.abbrevs());
  auto tr = translate(f, ctx);
  if (c.json) {
    Json holes = Json::array();
    for (const auto& h : tr.obligations)
      holes.push_back({{"name", h.name()}, {"type", write_mltt(h.child(0))},
                       {"description", h.note()}});
    Json j{{"command", "translate"}, {"formula", print(f)}, {"mltt", write_mltt(tr.expr)},
           {"universe", tr.universe}};
    if (obligations)
      j["obligations"] = holes;
    out << j.dump(2) << "\n";
    return exit_code::ok;
  }
  out << write_mltt(tr.expr) << "\n";
  out << "universe=" << tr.universe << "\n";
  if (obligations)
    for (const auto& h : tr.obligations)
      out << "?" << h.name() << " : " << write_mltt(h.child(0)) << "\n  ; " << h.note() << "\n";
  return exit_code::ok;
}

struct Built {
  std::vector<std::pair<std::string, LocalSetDesc>> sets;
  std::vector<std::pair<std::string, MapDesc>> maps;
  LevelTrace trace;
  std::vector<Obligation> obligations;

  void absorb(const LevelTrace& t, const std::vector<Obligation>& obs) {
    trace.insert(trace.end(), t.begin(), t.end());
    obligations.insert(obligations.end(), obs.begin(), obs.end());
  }
};

inline Built build(const Common& c, const std::string& kind, const std::vector<std::string>& args,
                   const SortContext& ctx) {
  auto want = [&](std::size_t lo, std::size_t hi, const char* shape) {
    if (args.size() < lo || args.size() > hi)
      throw UsageError("usage: irtt construct " + kind + " " + shape);
  };
  auto set = [&](std::size_t i) { return local_set(c, args[i], ctx); };
  Built b;
  if (kind == "product") {
    want(2, 2, "X1 X2");
    auto r = product(set(0), set(1));
    b.sets = {{"product", r.set}};
    b.maps = {{"p1", r.p1}, {"p2", r.p2}};
    b.absorb(r.trace, r.obligations);
  } else if (kind == "quotient") {
    want(2, 4, "X E [COD GRAPH]");
    if (args.size() == 3)
      throw UsageError("usage: irtt construct quotient X E [COD GRAPH]");
    auto x = set(0);
    auto r = quotient(x, set(1));
    b.sets = {{"quotient", r.set}};
    b.maps = {{"Q", r.q}};
    b.absorb(r.trace, r.obligations);
    if (args.size() == 4) {
      auto l = lift(r, map_arg(c, x, set(2), args[3], ctx));
      b.maps.emplace_back("H", l.h);
      b.absorb(l.trace, l.obligations);
    }
  } else if (kind == "exponential") {
    want(2, 4, "X Y [Z GRAPH]");
    if (args.size() == 3)
      throw UsageError("usage: irtt construct exponential X Y [Z GRAPH]");
    auto x = set(0), y = set(1);
    auto r = exponential(x, y);
    b.sets = {{"exponential", r.set}};
    b.maps = {{"ev", r.ev}};
    b.absorb(r.trace, r.obligations);
    if (args.size() == 4) {
      auto z = set(2);
      auto g = map_arg(c, product(z, x).set, y, args[3], ctx);
      auto t = transpose(r, z, g);
      b.maps.emplace_back("H", t.h);
      b.absorb(t.trace, t.obligations);
    }
  } else if (kind == "equalizer") {
    want(4, 4, "X Y F G");
    auto x = set(0), y = set(1);
    auto r = equalizer(map_arg(c, x, y, args[2], ctx), map_arg(c, x, y, args[3], ctx));
    b.sets = {{"equalizer", r.set}};
    b.maps = {{"I", r.incl}};
    b.absorb(r.trace, r.obligations);
  } else if (kind == "chi") {
    want(3, 3, "X Y k");
    auto r = characteristic(set(0), parse_term(args[1], ctx, c.abbrevs()),
                            parse_nat(args[2], "k"));
    b.sets = {{"omega", r.omega}};
    b.maps = {{"chi", r.chi}};
    b.absorb(r.trace, r.obligations);
  } else {
    throw UsageError("unknown construction '" + kind + "'");
  }
  return b;
}

inline int cmd_construct(const Common& c, const std::string& kind,
                         const std::vector<std::string>& args, const std::string& out_dir,
                         std::ostream& out) {
  auto ctx = c.context();
  auto b = build(c, kind, args, ctx);

  std::vector<std::string> files;
  if (!out_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    for (std::size_t i = 0; i < b.obligations.size(); ++i) {
      const auto& o = b.obligations[i];
      auto name = kind + "_" + std::to_string(i + 1) + "_" + slug(o.name);
      auto path = (std::filesystem::path(out_dir) / (name + ".irtt")).string();
      std::ofstream f(path);
      if (!f || !(f << "; " << o.name << ", level " << o.level << "\n"
                    << sequent_decl(name, o.sequent)))
        throw FileError("cannot write '" + path + "'");
      files.push_back(path);
    }
  }

  if (c.json) {
    Json sets = Json::object(), maps = Json::object(), obs = Json::array();
    for (const auto& [name, s] : b.sets)
      sets[name] = json_of(s);
    for (const auto& [name, m] : b.maps)
      maps[name] = json_of(m);
    for (const auto& o : b.obligations) {
      auto j = json_of(o.sequent);
      j["name"] = o.name;
      j["level"] = o.level;
      obs.push_back(j);
    }
    out << Json{{"command", "construct"}, {"kind", kind}, {"sets", sets}, {"maps", maps},
                {"trace", b.trace}, {"obligations", obs}, {"files", files}}
               .dump(2)
        << "\n";
    return exit_code::ok;
  }
  for (const auto& [name, s] : b.sets)
    out << name << ": " << describe(s) << "\n";
  for (const auto& [name, m] : b.maps)
    out << name << ": (" << print(m.graph) << ", " << m.level << ")\n";
  out << "levels:\n";
  for (const auto& t : b.trace)
    out << "  " << t << "\n";
  out << "obligations:\n";
  for (const auto& o : b.obligations)
    out << "  " << o.name << " [level " << o.level << "]\n    " << print(o.sequent) << "\n";
  if (!out_dir.empty())
    out << "wrote " << files.size() << " obligation files to " << out_dir << "\n";
  return exit_code::ok;
}

inline std::pair<unsigned, unsigned> base_range(const std::string& s) {
  auto dots = s.find("..");
  if (dots == std::string::npos) {
    auto b = parse_nat(s, "--base");
    return {b, b};
  }
  auto lo = parse_nat(s.substr(0, dots), "--base"), hi = parse_nat(s.substr(dots + 2), "--base");
  if (lo == 0 || lo > hi)
    throw UsageError("--base range '" + s + "' must be lo..hi with 1 <= lo <= hi");
  return {lo, hi};
}

inline int cmd_model_check(const Common& c, const std::string& file, const std::string& bases,
                           unsigned depth, std::ostream& out) {
  auto [lo, hi] = base_range(bases);
  if (lo == 0)
    throw UsageError("--base must be at least 1");
  auto th = load_theory_file(file);
  auto budget = default_budget();
  bool refuted = false, exhausted = false, arithmetic = false;
  Json results = Json::array();

  for (const auto& t : th.theorems) {
    Json r{{"name", t.name}};
    bool arith = t.proof ? check_proof(*t.proof, t.claim, true, th.env()).uses_arithmetic()
                         : mentions_arithmetic(t.claim);
    if (arith) {
      arithmetic = true;
      r["status"] = "arithmetic";
      r["message"] = "arithmetic not validated";
      if (!c.json)
        out << t.name << ": arithmetic not validated (N is read modulo the base size)\n";
      results.push_back(r);
      continue;
    }
    r["status"] = "validated";
    for (unsigned base = lo; base <= hi; ++base) {
      FiniteModel m{base, depth, budget};
      try {
        auto cm = sequent_countermodel(m, t.claim);
        if (!cm)
          continue;
        refuted = true;
        Json val = Json::object();
        std::string shown;
        for (const auto& [name, sort] : t.claim.vars) {
          auto v = render_value(m, sort, cm->at(name));
          val[name] = v;
          shown += (shown.empty() ? "" : ", ") + name + " = " + v;
        }
        r["status"] = "countermodel";
        r["base"] = base;
        r["valuation"] = val;
        if (!c.json)
          out << t.name << ": countermodel at base " << base
              << (shown.empty() ? "" : ": " + shown) << "\n";
      } catch (const BudgetExceeded& e) {
        exhausted = true;
        r["status"] = "budget";
        r["base"] = base;
        r["message"] = e.what();
        if (!c.json)
          out << t.name << ": budget exceeded at base " << base << ": " << e.what() << "\n";
      }
      break;
    }
    if (r["status"] == "validated" && !c.json)
      out << t.name << ": validated for base " << lo << ".." << hi << ", depth " << depth << "\n";
    results.push_back(r);
  }
  int code = refuted      ? exit_code::countermodel
             : exhausted  ? exit_code::budget
             : arithmetic ? exit_code::arithmetic
                          : exit_code::ok;
  if (c.json)
    out << Json{{"command", "model-check"}, {"file", file}, {"base", {lo, hi}},
                {"depth", depth}, {"budget", budget}, {"results", results}, {"exit", code}}
               .dump(2)
        << "\n";
  return code;
}

inline int cmd_russell(const Common& c, const std::string& text, std::ostream& out) {
  auto r = parse_russell(text);
  auto t = russell_embed(r);
  if (c.json)
    out << Json{{"command", "russell"}, {"input", print(r)}, {"type", print(t)},
                {"level", level(t)}, {"eq_level", eq_level(t)}}
               .dump(2)
        << "\n";
  else
    out << print(t) << "\n";
  return exit_code::ok;
}

} // namespace detail

/// Runs one command line (argv[0] excluded) and returns the exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"irtt: intuitionistic ramified type theory toolkit", "irtt"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  detail::Common common;
  app.add_flag("--json", common.json, "Machine-readable JSON output");
  app.add_option("--var", common.vars, "Free variable declaration name:Type (repeatable)")
      ->allow_extra_args(false);
  app.add_option("--theory", common.theory_file, "Theory file with type abbreviations and local sets");

  std::string text, kind, out_dir, file, bases = "1..3";
  std::vector<std::string> files, cargs;
  unsigned k = 0, depth = 2;
  bool classical = false, obligations = false;

  auto* level = app.add_subcommand("level", "Print |A| and ||A|| of a type");
  level->add_option("type", text, "Type symbol")->required();
  auto* min = app.add_subcommand("min-level", "Least k with the formula in F_k");
  min->add_option("formula", text, "Formula")->required();
  auto* check = app.add_subcommand("check-formula", "Check that a formula is in F_k");
  check->add_option("formula", text, "Formula")->required();
  check->add_option("--level", k, "The level k")->required();
  auto* prove = app.add_subcommand("prove", "Check the proofs in script files");
  prove->add_option("files", files, "Proof scripts (.irttp)")->required();
  prove->add_flag("--classical", classical, "Admit the excluded middle");
  auto* tr = app.add_subcommand("translate", "Interpret a formula in the setoid model");
  tr->add_option("formula", text, "Formula")->required();
  tr->add_flag("--obligations", obligations, "List the extensionality holes");
  auto* cons = app.add_subcommand("construct", "Build a local set construction");
  cons->add_option("kind", kind, "product | quotient | exponential | equalizer | chi")
      ->required()
      ->check(CLI::IsMember({"product", "quotient", "exponential", "equalizer", "chi"}));
  cons->add_option("args", cargs, "Local sets (names or (A, X, n) triples), graphs, levels")
      ->required();
  cons->add_option("--out-dir", out_dir, "Write obligation sequents to this directory");
  auto* mc = app.add_subcommand("model-check", "Check sequents in finite models");
  mc->add_option("file", file, "Theory or proof script file")->required();
  mc->add_option("--base", bases, "Base sizes, n or lo..hi")->capture_default_str();
  mc->add_option("--depth", depth, "Bound on power-type nesting")->capture_default_str();
  auto* rus = app.add_subcommand("russell", "Embed a Russell type");
  rus->add_option("type", text, "Russell type such as (0^0,0^0)^1")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? exit_code::ok : exit_code::usage;
  }

  try {
    if (!common.theory_file.empty())
      common.theory = load_theory_file(common.theory_file);
    if (level->parsed())
      return detail::cmd_level(common, text, out);
    if (min->parsed())
      return detail::cmd_min_level(common, text, out);
    if (check->parsed())
      return detail::cmd_check_formula(common, text, k, out);
    if (prove->parsed())
      return detail::cmd_prove(common, files, classical, out);
    if (tr->parsed())
      return detail::cmd_translate(common, text, obligations, out);
    if (cons->parsed())
      return detail::cmd_construct(common, kind, cargs, out_dir, out);
    if (mc->parsed())
      return detail::cmd_model_check(common, file, bases, depth, out);
    return detail::cmd_russell(common, text, out);
  } catch (const UsageError& e) {
    err << "irtt: " << e.what() << "\n";
    return exit_code::usage;
  } catch (const FileError& e) {
    err << "irtt: " << e.what() << "\n";
    return exit_code::file;
  } catch (const Error& e) {
    err << "irtt: " << e.what() << "\n";
    return exit_code::data;
  }
}

} // namespace irtt::cli
