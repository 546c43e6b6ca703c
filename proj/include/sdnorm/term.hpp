#pragma once

#include <cctype>
#include <cstddef>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sdnorm/diagram.hpp"
#include "sdnorm/serialize.hpp"

namespace sdnorm {

struct Arity {
  int in = 0;
  int out = 0;
  friend bool operator==(const Arity&, const Arity&) = default;
};

struct Signature {
  std::map<std::string, Arity> generators;

  void add(const std::string& name, int in, int out) {
    if (!is_identifier(name) || is_reserved_label(name) || name == "id")
      throw Error("invalid generator name '" + name + "'");
    if (in < 0 || out < 0) throw Error("negative arity for '" + name + "'");
    if (!generators.emplace(name, Arity{in, out}).second)
      throw Error("duplicate generator '" + name + "'");
  }
};

/// Reads `G <name> <in> <out>` lines; blank lines and `#` comments are skipped.
inline Signature parse_signature(std::string_view text) {
  Signature sig;
  std::istringstream in{std::string(text)};
  std::size_t lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto tok = detail::split_ws(line);
    if (tok.empty()) continue;
    if (tok.size() != 4 || tok[0] != "G")
      throw ParseError("expected 'G <name> <in> <out>'", lineno);
    try {
      sig.add(tok[1], detail::parse_count(tok[2], lineno),
              detail::parse_count(tok[3], lineno));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), lineno);
    }
  }
  return sig;
}

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { generator, identity, compose, tensor };

  Kind kind = Kind::identity;
  std::string name;  // generator
  int width = 0;     // identity
  /// compose: `first` is the upper (outer) morphism g in `g . f`, `second`
  /// the lower one. tensor: left and right.
  ExprPtr first;
  ExprPtr second;
  std::size_t position = 0;

  static ExprPtr generator(std::string name, std::size_t pos = 0) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::generator;
    e->name = std::move(name);
    e->position = pos;
    return e;
  }
  static ExprPtr identity(int width, std::size_t pos = 0) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::identity;
    e->width = width;
    e->position = pos;
    return e;
  }
  static ExprPtr compose(ExprPtr g, ExprPtr f, std::size_t pos = 0) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::compose;
    e->first = std::move(g);
    e->second = std::move(f);
    e->position = pos;
    return e;
  }
  static ExprPtr tensor(ExprPtr l, ExprPtr r, std::size_t pos = 0) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::tensor;
    e->first = std::move(l);
    e->second = std::move(r);
    e->position = pos;
    return e;
  }
};

/// Structural equality, ignoring source positions.
inline bool same_expr(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::generator:
      return a.name == b.name;
    case Expr::Kind::identity:
      return a.width == b.width;
    default:
      return same_expr(*a.first, *b.first) && same_expr(*a.second, *b.second);
  }
}

/// Fully parenthesized printer; its output parses back to the same tree.
inline std::string to_string(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::generator:
      return e.name;
    case Expr::Kind::identity:
      return "id(" + std::to_string(e.width) + ")";
    case Expr::Kind::compose:
      return "(" + to_string(*e.first) + " . " + to_string(*e.second) + ")";
    default:
      return "(" + to_string(*e.first) + " * " + to_string(*e.second) + ")";
  }
}

namespace detail {

class ExprParser {
 public:
  ExprParser(std::string_view text, const Signature& sig) : s_(text), sig_(sig) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return e;
  }

 private:
  // expr := expr "." term | term
  ExprPtr expr() {
    ExprPtr lhs = term();
    while (peek('.')) {
      std::size_t at = i_++;
      lhs = Expr::compose(lhs, term(), at);
    }
    return lhs;
  }

  // term := term "*" atom | atom
  ExprPtr term() {
    ExprPtr lhs = atom();
    while (peek('*')) {
      std::size_t at = i_++;
      lhs = Expr::tensor(lhs, atom(), at);
    }
    return lhs;
  }

  // atom := ident | "id" "(" nat ")" | "(" expr ")"
  ExprPtr atom() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end of input");
    std::size_t at = i_;
    if (s_[i_] == '(') {
      ++i_;
      ExprPtr e = expr();
      expect(')');
      return e;
    }
    std::string name = ident();
    if (name.empty()) fail("expected an expression");
    if (name == "id") {
      expect('(');
      skip();
      std::size_t start = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (start == i_ || i_ - start > 9) fail("expected a width");
      int w = std::stoi(std::string(s_.substr(start, i_ - start)));
      expect(')');
      return Expr::identity(w, at);
    }
    if (!sig_.generators.count(name)) throw UnknownGenerator(name, at + 1);
    return Expr::generator(name, at);
  }

  std::string ident() {
    std::size_t start = i_;
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) ||
                              s_[i_] == '_')) {
      if (i_ == start && std::isdigit(static_cast<unsigned char>(s_[i_]))) break;
      ++i_;
    }
    return std::string(s_.substr(start, i_ - start));
  }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  bool peek(char c) {
    skip();
    return i_ < s_.size() && s_[i_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++i_;
  }

  [[noreturn]] void fail(const std::string& what) {
    throw ParseError("syntax error: " + what, 1, i_ + 1);
  }

  std::string_view s_;
  const Signature& sig_;
  std::size_t i_ = 0;
};

}  // namespace detail

/// Grammar: `expr := expr "." term | term`, `term := term "*" atom | atom`,
/// `atom := ident | "id" "(" nat ")" | "(" expr ")"`. `g . f` is g after f;
/// both operators associate to the left and `*` binds tighter.
inline ExprPtr parse_expr(std::string_view text, const Signature& sig) {
  return detail::ExprParser(text, sig).parse();
}

/// (domain width, codomain width).
inline Arity typecheck(const Expr& e, const Signature& sig) {
  switch (e.kind) {
    case Expr::Kind::generator: {
      auto it = sig.generators.find(e.name);
      if (it == sig.generators.end()) throw UnknownGenerator(e.name, e.position + 1);
      return it->second;
    }
    case Expr::Kind::identity:
      return {e.width, e.width};
    case Expr::Kind::compose: {
      Arity g = typecheck(*e.first, sig);
      Arity f = typecheck(*e.second, sig);
      if (f.out != g.in) throw CompositionMismatch(g.in, f.out, e.position + 1);
      return {f.in, g.out};
    }
    default: {
      Arity l = typecheck(*e.first, sig);
      Arity r = typecheck(*e.second, sig);
      return {l.in + r.in, l.out + r.out};
    }
  }
}

namespace detail {

// Returns the (domain, codomain) widths of `e` while appending its slices.
inline Arity convert(const Expr& e, const Signature& sig, int offset, Diagram& d) {
  switch (e.kind) {
    case Expr::Kind::generator: {
      Arity a = sig.generators.at(e.name);
      d.vertices.push_back({offset, a.in, a.out, e.name});
      return a;
    }
    case Expr::Kind::identity:
      return {e.width, e.width};
    case Expr::Kind::compose: {
      // The lower morphism is drawn first, at the same offset.
      Arity f = convert(*e.second, sig, offset, d);
      Arity g = convert(*e.first, sig, offset, d);
      return {f.in, g.out};
    }
    default: {
      Arity l = convert(*e.first, sig, offset, d);
      Arity r = convert(*e.second, sig, offset + l.out, d);
      return {l.in + r.in, l.out + r.out};
    }
  }
}

}  // namespace detail

/// Builds the encoding of an expression, in time linear in its size.
inline Diagram expression_to_diagram(const Expr& e, const Signature& sig) {
  Arity a = typecheck(e, sig);
  Diagram d;
  d.sources = a.in;
  detail::convert(e, sig, 0, d);
  return d;
}

}  // namespace sdnorm
