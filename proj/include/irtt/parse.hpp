#pragma once

// Recursive-descent parser for the concrete syntax:
//
//   Type    ::= "1" | "N" | Type "*" Type | "P" "[" nat "]" "(" Type ")"
//   Term    ::= ident | "()" | "0" | decimal | "S" Term | Term "+" Term
//             | Term "." Term | "<" Term "," Term ">" | "fst" Term
//             | "snd" Term | "{" ident ":" Type "|" Formula "}" "@" nat
//   Formula ::= Term "=" Term | Term "in" Term | "false" | Formula "\/" Formula
//             | Formula "/\" Formula | Formula "=>" Formula
//             | "forall" ident ":" Type "." Formula
//             | "exists" ident ":" Type "." Formula
//
// Sugar expanded at parse time: decimal numerals (S^n 0), "true"
// (false => false), "~A" (A => false), "A <=> B" ((A => B) /\ (B => A)).
// Parentheses group types, terms and formulas.

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "irtt/print.hpp"
#include "irtt/syntax.hpp"

namespace irtt {

/// Named type abbreviations usable wherever a type is expected.
using TypeAbbreviations = std::map<std::string, TypeSymbol>;

namespace detail {

enum class Tok {
  Ident,
  Nat,
  LParen,
  RParen,
  LBracket,
  RBracket,
  LBrace,
  RBrace,
  LAngle,
  RAngle,
  Comma,
  Colon,
  Bar,
  At,
  Dot,
  Star,
  Plus,
  Eq,
  Or,
  And,
  Imp,
  Iff,
  Tilde,
  Caret,
  End
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto push = [&](Tok k, std::size_t len) {
    out.push_back({k, std::string(src.substr(i, len)), i});
    i += len;
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' ||
              src[j] == '\''))
        ++j;
      push(Tok::Ident, j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])))
        ++j;
      push(Tok::Nat, j - i);
      continue;
    }
    auto starts = [&](std::string_view s) { return src.substr(i, s.size()) == s; };
    if (starts("<=>")) {
      push(Tok::Iff, 3);
    } else if (starts("=>")) {
      push(Tok::Imp, 2);
    } else if (starts("\\/")) {
      push(Tok::Or, 2);
    } else if (starts("/\\")) {
      push(Tok::And, 2);
    } else {
      switch (c) {
      case '(': push(Tok::LParen, 1); break;
      case ')': push(Tok::RParen, 1); break;
      case '[': push(Tok::LBracket, 1); break;
      case ']': push(Tok::RBracket, 1); break;
      case '{': push(Tok::LBrace, 1); break;
      case '}': push(Tok::RBrace, 1); break;
      case '<': push(Tok::LAngle, 1); break;
      case '>': push(Tok::RAngle, 1); break;
      case ',': push(Tok::Comma, 1); break;
      case ':': push(Tok::Colon, 1); break;
      case '|': push(Tok::Bar, 1); break;
      case '@': push(Tok::At, 1); break;
      case '.': push(Tok::Dot, 1); break;
      case '*': push(Tok::Star, 1); break;
      case '+': push(Tok::Plus, 1); break;
      case '=': push(Tok::Eq, 1); break;
      case '~': push(Tok::Tilde, 1); break;
      case '^': push(Tok::Caret, 1); break;
      default:
        throw SyntaxError(std::string("unexpected character '") + c + "'", i);
      }
    }
  }
  out.push_back({Tok::End, "", src.size()});
  return out;
}

inline bool is_keyword(std::string_view s) {
  static constexpr std::string_view kws[] = {"S",     "N",    "P",      "fst",
                                             "snd",   "in",   "false",  "true",
                                             "forall", "exists"};
  for (auto k : kws)
    if (s == k)
      return true;
  return false;
}

class Parser {
public:
  Parser(std::string_view src, const SortContext* ctx,
         const TypeAbbreviations* abbrevs)
      : toks_(tokenize(src)), ctx_(ctx), abbrevs_(abbrevs) {}

  TypeSymbol whole_type() {
    auto t = type();
    expect_end();
    return t;
  }
  Term whole_term() {
    auto t = term();
    expect_end();
    return t;
  }
  Formula whole_formula() {
    auto f = formula();
    expect_end();
    return f;
  }

  // Building blocks reused by other readers (local-set literals etc).
  TypeSymbol type() {
    auto t = type_atom();
    while (accept(Tok::Star))
      t = TypeSymbol::prod(std::move(t), type_atom());
    return t;
  }

  Term term() {
    auto t = mul_term();
    while (accept(Tok::Plus))
      t = Term::add(std::move(t), mul_term());
    return t;
  }

  Formula formula() {
    auto f = imp_formula();
    if (accept(Tok::Iff)) {
      auto g = imp_formula();
      f = Formula::iff(f, g);
    }
    return f;
  }

  unsigned nat() {
    const Token& t = peek();
    if (t.kind != Tok::Nat)
      fail("expected a natural number");
    ++pos_;
    try {
      unsigned long v = std::stoul(t.text);
      if (v > 0xFFFFFFFFul)
        throw std::out_of_range("nat");
      return static_cast<unsigned>(v);
    } catch (const std::exception&) {
      throw SyntaxError("natural number out of range", t.offset);
    }
  }

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool accept(Tok k) {
    if (peek().kind != k)
      return false;
    ++pos_;
    return true;
  }
  bool accept_word(std::string_view w) {
    if (peek().kind != Tok::Ident || peek().text != w)
      return false;
    ++pos_;
    return true;
  }
  void expect(Tok k, const char* what) {
    if (!accept(k))
      fail(std::string("expected ") + what);
  }
  void expect_end() {
    if (peek().kind != Tok::End)
      fail("unexpected trailing input '" + peek().text + "'");
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(msg, peek().offset);
  }

  void bind(Variable v) { scope_.push_back(std::move(v)); }
  void unbind() { scope_.pop_back(); }

private:
  TypeSymbol type_atom() {
    const Token& t = peek();
    if (t.kind == Tok::Nat && t.text == "1") {
      ++pos_;
      return TypeSymbol::unit();
    }
    if (accept_word("N"))
      return TypeSymbol::nat();
    if (accept_word("P")) {
      expect(Tok::LBracket, "'[' after P");
      unsigned k = nat();
      expect(Tok::RBracket, "']'");
      expect(Tok::LParen, "'(' after P[k]");
      auto body = type();
      expect(Tok::RParen, "')'");
      return TypeSymbol::pow(k, std::move(body));
    }
    if (accept(Tok::LParen)) {
      auto inner = type();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (t.kind == Tok::Ident && abbrevs_ != nullptr) {
      if (auto it = abbrevs_->find(t.text); it != abbrevs_->end()) {
        ++pos_;
        return it->second;
      }
    }
    fail("expected a type");
  }

  Term mul_term() {
    auto t = prefix_term();
    while (accept(Tok::Dot))
      t = Term::mul(std::move(t), prefix_term());
    return t;
  }

  Term prefix_term() {
    if (accept_word("S"))
      return Term::succ(prefix_term());
    if (accept_word("fst"))
      return checked(Term::fst(prefix_term()));
    if (accept_word("snd"))
      return checked(Term::snd(prefix_term()));
    return atom_term();
  }

  Term checked(Term t) {
    std::size_t at = peek().offset;
    try {
      structural_sort(t);
    } catch (const SortError& e) {
      throw SyntaxError(e.what(), at);
    }
    return t;
  }

  Term atom_term() {
    const Token& t = peek();
    switch (t.kind) {
    case Tok::Nat: {
      unsigned n = nat();
      return Term::numeral(n);
    }
    case Tok::LParen: {
      ++pos_;
      if (accept(Tok::RParen))
        return Term::star();
      auto inner = term();
      expect(Tok::RParen, "')'");
      return inner;
    }
    case Tok::LAngle: {
      ++pos_;
      auto a = term();
      expect(Tok::Comma, "',' in pair");
      auto b = term();
      expect(Tok::RAngle, "'>' closing pair");
      return Term::pair(std::move(a), std::move(b));
    }
    case Tok::LBrace: {
      ++pos_;
      auto name = ident();
      expect(Tok::Colon, "':' after set-abstraction variable");
      auto sort = type();
      expect(Tok::Bar, "'|'");
      Variable v{name, sort};
      bind(v);
      auto body = formula();
      unbind();
      expect(Tok::RBrace, "'}'");
      expect(Tok::At, "'@level' after set abstraction");
      unsigned k = nat();
      return Term::set_abs(std::move(v), std::move(body), k);
    }
    case Tok::Ident: {
      if (is_keyword(t.text))
        fail("unexpected keyword '" + t.text + "'");
      ++pos_;
      return Term::var(lookup(t));
    }
    default:
      fail("expected a term");
    }
  }

  std::string ident() {
    const Token& t = peek();
    if (t.kind != Tok::Ident || is_keyword(t.text))
      fail("expected an identifier");
    ++pos_;
    return t.text;
  }

  Variable lookup(const Token& t) const {
    for (std::size_t i = scope_.size(); i-- > 0;)
      if (scope_[i].name == t.text)
        return scope_[i];
    if (ctx_ != nullptr)
      if (auto it = ctx_->find(t.text); it != ctx_->end())
        return Variable{t.text, it->second};
    throw SyntaxError("unbound variable '" + t.text +
                          "' (declare its sort at a binder or in the context)",
                      t.offset);
  }

  Formula imp_formula() {
    auto f = or_formula();
    if (accept(Tok::Imp))
      return Formula::imp(std::move(f), imp_formula());
    return f;
  }

  Formula or_formula() {
    auto f = and_formula();
    while (accept(Tok::Or))
      f = Formula::disj(std::move(f), and_formula());
    return f;
  }

  Formula and_formula() {
    auto f = unary_formula();
    while (accept(Tok::And))
      f = Formula::conj(std::move(f), unary_formula());
    return f;
  }

  Formula unary_formula() {
    const Token& t = peek();
    if (t.kind == Tok::Ident && (t.text == "forall" || t.text == "exists")) {
      bool universal = t.text == "forall";
      ++pos_;
      auto name = ident();
      expect(Tok::Colon, "':' after bound variable");
      auto sort = type();
      expect(Tok::Dot, "'.' after quantifier prefix");
      Variable v{name, sort};
      bind(v);
      auto body = formula_extending_right();
      unbind();
      return universal ? Formula::forall(std::move(v), std::move(body))
                       : Formula::exists(std::move(v), std::move(body));
    }
    if (accept(Tok::Tilde))
      return Formula::neg(unary_formula());
    if (accept_word("false"))
      return Formula::falsum();
    if (accept_word("true"))
      return Formula::truth();
    if (t.kind == Tok::LParen && peek(1).kind != Tok::RParen) {
      // Either a parenthesised formula or an atom whose left term starts
      // with a parenthesis. Try the former, fall back to the latter.
      std::size_t save = pos_;
      std::optional<SyntaxError> first;
      try {
        ++pos_;
        auto inner = formula();
        expect(Tok::RParen, "')'");
        return inner;
      } catch (const SyntaxError& e) {
        first = e;
        pos_ = save;
      }
      try {
        return atomic_formula();
      } catch (const SyntaxError& e) {
        throw e.offset() >= first->offset() ? e : *first;
      }
    }
    return atomic_formula();
  }

  // A quantifier body extends as far right as possible.
  Formula formula_extending_right() { return formula(); }

  Formula atomic_formula() {
    std::size_t lhs_at = peek().offset;
    auto lhs = term();
    if (accept(Tok::Eq)) {
      std::size_t rhs_at = peek().offset;
      auto rhs = term();
      TypeSymbol ls = sort_at(lhs, lhs_at);
      TypeSymbol rs = sort_at(rhs, rhs_at);
      if (ls != rs)
        throw SyntaxError("equality between different sorts " + print(ls) +
                              " and " + print(rs),
                          lhs_at);
      return Formula::eq(ls, std::move(lhs), std::move(rhs));
    }
    if (accept_word("in"))
      return Formula::mem(std::move(lhs), term());
    fail("expected '=' or 'in'");
  }

  static TypeSymbol sort_at(const Term& t, std::size_t at) {
    try {
      return structural_sort(t);
    } catch (const SortError& e) {
      throw SyntaxError(e.what(), at);
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const SortContext* ctx_;
  const TypeAbbreviations* abbrevs_;
  std::vector<Variable> scope_;
};

} // namespace detail

inline TypeSymbol parse_type(std::string_view text,
                             const TypeAbbreviations* abbrevs = nullptr) {
  return detail::Parser(text, nullptr, abbrevs).whole_type();
}

inline Term parse_term(std::string_view text, const SortContext& ctx = {},
                       const TypeAbbreviations* abbrevs = nullptr) {
  return detail::Parser(text, &ctx, abbrevs).whole_term();
}

inline Formula parse_formula(std::string_view text, const SortContext& ctx = {},
                             const TypeAbbreviations* abbrevs = nullptr) {
  return detail::Parser(text, &ctx, abbrevs).whole_formula();
}

/// "name : Type" — a variable declaration as used by CLI flags.
inline Variable parse_declaration(std::string_view text,
                                  const TypeAbbreviations* abbrevs = nullptr) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw SyntaxError("expected 'name:Type'", 0);
  std::string name(text.substr(0, colon));
  while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back())))
    name.pop_back();
  while (!name.empty() && std::isspace(static_cast<unsigned char>(name.front())))
    name.erase(name.begin());
  auto toks = detail::tokenize(name);
  if (toks.size() != 2 || toks[0].kind != detail::Tok::Ident ||
      detail::is_keyword(name))
    throw SyntaxError("bad variable name '" + name + "'", 0);
  return Variable{name, parse_type(text.substr(colon + 1), abbrevs)};
}

} // namespace irtt
