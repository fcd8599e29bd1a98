#pragma once

// Russell's ramified types t^n and their embedding into type symbols.
//
//   0^0                      individuals, interpreted as N
//   (t1^n1, ..., tk^nk)^m    requires m > every ni; interpreted as
//                            P[m](T1 * ... * Tk), left-nested, 1 when k = 0

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "irtt/parse.hpp"
#include "irtt/syntax.hpp"

namespace irtt {

struct RussellType {
  // Empty `components` with order 0 and `individual` set is 0^0.
  bool individual = true;
  std::vector<RussellType> components;
  unsigned order = 0;

  static RussellType individuals() { return {}; }
  static RussellType tuple(std::vector<RussellType> parts, unsigned order) {
    return RussellType{false, std::move(parts), order};
  }

  /// Every application of the tuple rule uses m = 1 + max(ni).
  bool is_minimal() const {
    if (individual)
      return true;
    unsigned expected = 1;
    for (const auto& c : components) {
      if (!c.is_minimal())
        return false;
      expected = std::max(expected, c.order + 1);
    }
    return order == expected;
  }
};

inline std::string print(const RussellType& r) {
  if (r.individual)
    return "0^0";
  std::string out = "(";
  for (std::size_t i = 0; i < r.components.size(); ++i)
    out += (i ? "," : "") + print(r.components[i]);
  return out + ")^" + std::to_string(r.order);
}

inline TypeSymbol russell_embed(const RussellType& r) {
  if (r.individual) {
    if (r.order != 0)
      throw Error("individual type must have order 0");
    return TypeSymbol::nat();
  }
  std::optional<TypeSymbol> product;
  for (const auto& c : r.components) {
    if (r.order <= c.order)
      throw Error("Russell type " + print(r) + " violates m > n_i: order " +
                  std::to_string(r.order) + " is not above component order " +
                  std::to_string(c.order));
    auto embedded = russell_embed(c);
    product = product ? TypeSymbol::prod(*product, embedded) : embedded;
  }
  return TypeSymbol::pow(r.order, product.value_or(TypeSymbol::unit()));
}

/// Reads "0^0", "()^1", "(0^0,0^0)^1", ... Order constraints are checked by
/// russell_embed, not here.
inline RussellType parse_russell(std::string_view text) {
  detail::Parser p(text, nullptr, nullptr);
  std::function<RussellType()> item = [&]() -> RussellType {
    using detail::Tok;
    if (p.peek().kind == Tok::Nat) {
      if (p.nat() != 0)
        p.fail("only 0^0 is an atomic Russell type");
      p.expect(Tok::Caret, "'^'");
      if (p.nat() != 0)
        p.fail("individuals have order 0");
      return RussellType::individuals();
    }
    p.expect(Tok::LParen, "'(' or 0^0");
    std::vector<RussellType> parts;
    if (!p.accept(Tok::RParen)) {
      parts.push_back(item());
      while (p.accept(Tok::Comma))
        parts.push_back(item());
      p.expect(Tok::RParen, "')'");
    }
    p.expect(Tok::Caret, "'^' after tuple");
    unsigned m = p.nat();
    return RussellType::tuple(std::move(parts), m);
  };
  auto r = item();
  p.expect_end();
  return r;
}

} // namespace irtt
