#pragma once

// Minimal s-expression reader/writer for proof scripts and theory files.
// Atoms are symbols, numbers or double-quoted strings; ';' starts a comment.

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "irtt/error.hpp"

namespace irtt {

struct SExpr {
  enum class Kind { Symbol, String, List };

  Kind kind = Kind::List;
  std::string text;
  std::vector<SExpr> items;
  std::size_t line = 1;

  bool is_list() const { return kind == Kind::List; }
  bool is_atom() const { return kind != Kind::List; }
  bool is_symbol(std::string_view s) const { return kind == Kind::Symbol && text == s; }

  static SExpr symbol(std::string s) { return {Kind::Symbol, std::move(s), {}, 0}; }
  static SExpr string(std::string s) { return {Kind::String, std::move(s), {}, 0}; }
  static SExpr list(std::vector<SExpr> xs) { return {Kind::List, {}, std::move(xs), 0}; }
};

namespace detail {

class SExprReader {
public:
  explicit SExprReader(std::string_view src) : src_(src) {}

  std::vector<SExpr> all() {
    std::vector<SExpr> out;
    for (skip(); pos_ < src_.size(); skip())
      out.push_back(read());
    return out;
  }

private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError("line " + std::to_string(line_) + ": " + msg, pos_);
  }

  void skip() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == ';') {
        while (pos_ < src_.size() && src_[pos_] != '\n')
          ++pos_;
      } else if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\r') {
        ++pos_;
      } else {
        return;
      }
    }
  }

  SExpr read() {
    skip();
    if (pos_ >= src_.size())
      fail("unexpected end of input");
    std::size_t line = line_;
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      SExpr list = SExpr::list({});
      list.line = line;
      for (skip(); pos_ < src_.size() && src_[pos_] != ')'; skip())
        list.items.push_back(read());
      if (pos_ >= src_.size())
        fail("unclosed '(' opened on line " + std::to_string(line));
      ++pos_;
      return list;
    }
    if (c == ')')
      fail("unbalanced ')'");
    if (c == '"') {
      ++pos_;
      std::string s;
      while (pos_ < src_.size() && src_[pos_] != '"') {
        char d = src_[pos_++];
        if (d == '\n')
          ++line_;
        if (d == '\\' && pos_ < src_.size()) {
          char e = src_[pos_++];
          // Only \" and \\ are escapes; formulas keep /\ and \/ verbatim.
          if (e == '"' || e == '\\')
            d = e;
          else
            s.push_back(d), d = e;
        }
        s.push_back(d);
      }
      if (pos_ >= src_.size())
        fail("unterminated string");
      ++pos_;
      SExpr atom = SExpr::string(std::move(s));
      atom.line = line;
      return atom;
    }
    std::size_t start = pos_;
    while (pos_ < src_.size() && !std::isspace(static_cast<unsigned char>(src_[pos_])) &&
           src_[pos_] != '(' && src_[pos_] != ')' && src_[pos_] != '"' && src_[pos_] != ';')
      ++pos_;
    SExpr atom = SExpr::symbol(std::string(src_.substr(start, pos_ - start)));
    atom.line = line;
    return atom;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

} // namespace detail

inline std::vector<SExpr> read_sexprs(std::string_view text) {
  return detail::SExprReader(text).all();
}

inline std::string write_sexpr(const SExpr& e) {
  switch (e.kind) {
  case SExpr::Kind::Symbol:
    return e.text;
  case SExpr::Kind::String: {
    std::string out = "\"";
    for (char c : e.text) {
      if (c == '"')
        out += "\\\"";
      else
        out.push_back(c);
    }
    return out + "\"";
  }
  case SExpr::Kind::List: {
    std::string out = "(";
    for (std::size_t i = 0; i < e.items.size(); ++i)
      out += (i ? " " : "") + write_sexpr(e.items[i]);
    return out + ")";
  }
  }
  return {};
}

} // namespace irtt
