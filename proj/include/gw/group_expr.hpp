#pragma once

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gw/config.hpp"
#include "gw/constructions.hpp"
#include "gw/error.hpp"
#include "gw/perm_group.hpp"

namespace gw {

/// Abstract syntax of the group-construction language:
///
///   expr := "C(" INT ")" | "E(" INT "," INT ")" | "A(" INT ")" | "S(" INT ")"
///         | "pow(" expr "," INT ")" | "prod(" expr ("," expr)+ ")"
///         | "wr(" expr "," expr ")" | "derived(" expr ")"
///         | "base(" expr ")" | "b0(" expr ")"
///         | "gens(" INT ";" CYCLES ("," CYCLES)* ")"
struct GroupExpr
{
  enum class Kind
  {
    Cyclic,
    ElemAbelian,
    Alternating,
    Symmetric,
    Power,
    Product,
    Wreath,
    Derived,
    Base,
    BZero,
    Literal,
  };

  Kind kind = Kind::Cyclic;
  /// C/A/S: {n}; E: {p, k}; pow: {k}; gens: {degree}.
  std::vector<std::uint64_t> ints;
  std::vector<GroupExpr> children;
  /// gens(...) only: canonical cycle strings, one per generator.
  std::vector<std::string> cycles;

  friend bool operator==(GroupExpr const &, GroupExpr const &) = default;

  static GroupExpr leaf(Kind k, std::vector<std::uint64_t> ints)
  {
    GroupExpr e;
    e.kind = k;
    e.ints = std::move(ints);
    return e;
  }

  static GroupExpr node(Kind k, std::vector<GroupExpr> children,
                        std::vector<std::uint64_t> ints = {})
  {
    GroupExpr e;
    e.kind = k;
    e.children = std::move(children);
    e.ints = std::move(ints);
    return e;
  }
};

/// Canonical text; parse_group_expr(to_string(e)) == e.
inline std::string to_string(GroupExpr const &e)
{
  using K = GroupExpr::Kind;
  auto i = [&](std::size_t k) { return std::to_string(e.ints.at(k)); };
  switch (e.kind) {
  case K::Cyclic: return "C(" + i(0) + ")";
  case K::ElemAbelian: return "E(" + i(0) + "," + i(1) + ")";
  case K::Alternating: return "A(" + i(0) + ")";
  case K::Symmetric: return "S(" + i(0) + ")";
  case K::Power: return "pow(" + to_string(e.children.at(0)) + "," + i(0) + ")";
  case K::Product: {
    std::string out = "prod(";
    for (std::size_t c = 0; c < e.children.size(); ++c)
      out += (c ? "," : "") + to_string(e.children[c]);
    return out + ")";
  }
  case K::Wreath:
    return "wr(" + to_string(e.children.at(0)) + "," + to_string(e.children.at(1)) + ")";
  case K::Derived: return "derived(" + to_string(e.children.at(0)) + ")";
  case K::Base: return "base(" + to_string(e.children.at(0)) + ")";
  case K::BZero: return "b0(" + to_string(e.children.at(0)) + ")";
  case K::Literal: {
    std::string out = "gens(" + i(0) + ";";
    for (std::size_t c = 0; c < e.cycles.size(); ++c)
      out += (c ? "," : "") + e.cycles[c];
    return out + ")";
  }
  }
  return {};
}

namespace detail {

class ExprParser
{
public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  GroupExpr parse()
  {
    GroupExpr e = expr();
    skip_ws();
    if (pos_ != text_.size())
      fail("unexpected trailing input", {"end of input"});
    return e;
  }

private:
  using K = GroupExpr::Kind;

  [[noreturn]] void fail(std::string const &msg, std::vector<std::string> expected = {})
  {
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k < pos_ && k < text_.size(); ++k) {
      if (text_[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(msg, line, col, std::move(expected));
  }

  void skip_ws()
  {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool peek(char c)
  {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c)
  {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c)
      fail(pos_ >= text_.size() ? "unexpected end of input" : "unexpected character",
           {std::string("'") + c + "'"});
    ++pos_;
  }

  std::uint64_t integer()
  {
    skip_ws();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("expected an integer", {"INT"});
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      std::uint64_t d = static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > (UINT64_MAX - d) / 10)
        fail("integer too large");
      v = v * 10 + d;
      ++pos_;
    }
    return v;
  }

  std::uint64_t positive()
  {
    std::size_t at = pos_;
    std::uint64_t v = integer();
    if (v == 0) {
      pos_ = at;
      skip_ws();
      fail("expected a positive integer", {"INT >= 1"});
    }
    return v;
  }

  std::string identifier()
  {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  GroupExpr expr()
  {
    static std::vector<std::string> const heads = {
        "C(", "E(", "A(", "S(", "pow(", "prod(", "wr(", "derived(", "base(", "b0(", "gens("};
    skip_ws();
    std::size_t const start = pos_;
    std::string name = identifier();
    if (name.empty() || !peek('(')) {
      pos_ = start;
      fail(name.empty() ? "expected a group expression" : "unknown constructor '" + name + "'",
           heads);
    }
    if (name == "C" || name == "A" || name == "S") {
      expect('(');
      auto n = positive();
      expect(')');
      return GroupExpr::leaf(name == "C" ? K::Cyclic : name == "A" ? K::Alternating : K::Symmetric,
                             {n});
    }
    if (name == "E") {
      expect('(');
      skip_ws();
      std::size_t at = pos_;
      auto p = integer();
      if (!is_prime(p)) {
        pos_ = at;
        fail("E(p,k) requires a prime p, got " + std::to_string(p), {"prime"});
      }
      expect(',');
      auto k = positive();
      expect(')');
      return GroupExpr::leaf(K::ElemAbelian, {p, k});
    }
    if (name == "pow") {
      expect('(');
      auto child = expr();
      expect(',');
      auto k = positive();
      expect(')');
      return GroupExpr::node(K::Power, {std::move(child)}, {k});
    }
    if (name == "prod") {
      expect('(');
      std::vector<GroupExpr> kids{expr()};
      while (peek(',')) {
        ++pos_;
        kids.push_back(expr());
      }
      if (kids.size() < 2)
        fail("prod needs at least two factors", {"','"});
      expect(')');
      return GroupExpr::node(K::Product, std::move(kids));
    }
    if (name == "wr") {
      expect('(');
      auto a = expr();
      expect(',');
      auto s = expr();
      expect(')');
      return GroupExpr::node(K::Wreath, {std::move(a), std::move(s)});
    }
    if (name == "derived" || name == "base" || name == "b0") {
      expect('(');
      skip_ws();
      std::size_t const arg_at = pos_;
      auto child = expr();
      if (name != "derived" && child.kind != K::Wreath) {
        pos_ = arg_at;
        fail(name + " requires a wreath argument", {"wr("});
      }
      expect(')');
      return GroupExpr::node(name == "derived" ? K::Derived : name == "base" ? K::Base : K::BZero,
                             {std::move(child)});
    }
    if (name == "gens") {
      expect('(');
      auto degree = positive();
      expect(';');
      GroupExpr e = GroupExpr::leaf(K::Literal, {degree});
      e.cycles.push_back(cycles(degree));
      while (peek(',')) {
        ++pos_;
        e.cycles.push_back(cycles(degree));
      }
      expect(')');
      return e;
    }
    pos_ = start;
    fail("unknown constructor '" + name + "'", heads);
  }

  std::string cycles(std::uint64_t degree)
  {
    skip_ws();
    std::size_t const start = pos_;
    if (!peek('('))
      fail("expected a permutation in cycle notation", {"'('"});
    while (peek('(')) {
      ++pos_;
      while (!peek(')')) {
        integer();
        skip_ws();
      }
      ++pos_;
    }
    std::string_view text = text_.substr(start, pos_ - start);
    try {
      return Permutation::from_cycles(degree, text).to_cycle_string();
    } catch (DomainError const &err) {
      pos_ = start;
      fail(err.what());
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

} // namespace detail

/// Parses the expression language; errors carry line, column and the set of
/// tokens that would have been accepted.
inline GroupExpr parse_group_expr(std::string_view text)
{
  return detail::ExprParser(text).parse();
}

/// Evaluates an expression bottom-up. Wreath factors are replaced by their
/// regular representation unless they already act regularly.
inline PermGroup eval_expr(GroupExpr const &e, Guards const &guards = {})
{
  using K = GroupExpr::Kind;
  std::string const label = to_string(e);
  auto checked = [&](PermGroup G) {
    guards.check_degree(G.degree(), label);
    guards.check_order(G.order(), label);
    return G;
  };
  switch (e.kind) {
  case K::Cyclic:
    guards.check_degree(e.ints[0], label);
    return checked(cyclic_group(e.ints[0]));
  case K::ElemAbelian:
    return checked(elementary_abelian_group(e.ints[0], e.ints[1], guards));
  case K::Alternating:
    guards.check_degree(e.ints[0], label);
    return checked(alternating_group(e.ints[0]));
  case K::Symmetric:
    guards.check_degree(e.ints[0], label);
    return checked(symmetric_group(e.ints[0]));
  case K::Power: {
    auto G = eval_expr(e.children[0], guards);
    guards.check_degree(G.degree() * e.ints[0], label);
    guards.check_order(ipow(G.order(), e.ints[0]), label);
    return checked(direct_power(G, e.ints[0], guards));
  }
  case K::Product: {
    std::vector<PermGroup> factors;
    BigInt order = 1;
    for (auto const &c : e.children) {
      factors.push_back(eval_expr(c, guards));
      order *= factors.back().order();
    }
    guards.check_order(order, label);
    return checked(direct_product(factors, guards));
  }
  case K::Wreath: {
    auto A = eval_expr(e.children[0], guards);
    auto S = eval_expr(e.children[1], guards);
    if (!is_regular(A))
      A = regular_representation(A, guards);
    if (!is_regular(S))
      S = regular_representation(S, guards);
    return checked(wreath(A, S, guards));
  }
  case K::Derived:
    return derived_subgroup(eval_expr(e.children[0], guards));
  case K::Base:
  case K::BZero: {
    auto W = eval_expr(e.children[0], guards);
    auto parts = wreath_base_parts(W);
    return e.kind == K::Base ? parts.full : parts.zero;
  }
  case K::Literal: {
    std::size_t const degree = e.ints[0];
    guards.check_degree(degree, label);
    std::vector<Permutation> gens;
    for (auto const &c : e.cycles)
      gens.push_back(Permutation::from_cycles(degree, c));
    return checked(PermGroup::build(degree, std::move(gens)));
  }
  }
  throw Error("internal error: unknown expression kind");
}

inline PermGroup eval_expr(std::string_view text, Guards const &guards = {})
{
  return eval_expr(parse_group_expr(text), guards);
}

} // namespace gw
