#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <memory>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nbhd/error.hpp"

namespace nbhd {

enum class FormulaKind {
  top,
  bot,
  prop_var,
  pred_atom,
  neg,
  conj,     // non-empty list; two children when written infix
  disj,     // non-empty list; two children when written infix
  implies,
  iff,
  box,
  diamond,
  forall,
  exists,
  omega_conj  // schematic countable conjunction over an index variable
};

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

namespace detail {
inline bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '\'') return false;
  return s != "T" && s != "F" && s != "A" && s != "E";
}

inline void require_identifier(const std::string& s, const char* role) {
  if (!valid_identifier(s))
    throw Error::construction(std::string(role) + " '" + s + "' is not a valid identifier");
}
}  // namespace detail

/// Immutable formula node. One AST serves the propositional, predicate, and
/// schematic-infinitary languages; evaluators reject the kinds outside their
/// language.
class Formula {
public:
  static FormulaPtr top() { return node(FormulaKind::top, "", {}, {}); }
  static FormulaPtr bot() { return node(FormulaKind::bot, "", {}, {}); }

  static FormulaPtr prop(std::string name) {
    detail::require_identifier(name, "proposition name");
    return node(FormulaKind::prop_var, std::move(name), {}, {});
  }

  static FormulaPtr pred(std::string name, std::vector<std::string> variables) {
    detail::require_identifier(name, "predicate name");
    if (variables.empty())
      throw Error::construction("predicate atom '" + name + "' needs at least one variable");
    for (const std::string& v : variables) detail::require_identifier(v, "variable");
    return node(FormulaKind::pred_atom, std::move(name), std::move(variables), {});
  }

  static FormulaPtr neg(FormulaPtr f) { return unary(FormulaKind::neg, std::move(f)); }
  static FormulaPtr box(FormulaPtr f) { return unary(FormulaKind::box, std::move(f)); }
  static FormulaPtr diamond(FormulaPtr f) { return unary(FormulaKind::diamond, std::move(f)); }

  static FormulaPtr conj(std::vector<FormulaPtr> fs) {
    return list(FormulaKind::conj, std::move(fs));
  }
  static FormulaPtr disj(std::vector<FormulaPtr> fs) {
    return list(FormulaKind::disj, std::move(fs));
  }

  static FormulaPtr implies(FormulaPtr a, FormulaPtr b) {
    check(a, "implication premise");
    check(b, "implication conclusion");
    return node(FormulaKind::implies, "", {}, {std::move(a), std::move(b)});
  }
  static FormulaPtr iff(FormulaPtr a, FormulaPtr b) {
    check(a, "equivalence side");
    check(b, "equivalence side");
    return node(FormulaKind::iff, "", {}, {std::move(a), std::move(b)});
  }

  static FormulaPtr forall(std::string variable, FormulaPtr f) {
    detail::require_identifier(variable, "variable");
    check(f, "quantifier body");
    return node(FormulaKind::forall, std::move(variable), {}, {std::move(f)});
  }
  static FormulaPtr exists(std::string variable, FormulaPtr f) {
    detail::require_identifier(variable, "variable");
    check(f, "quantifier body");
    return node(FormulaKind::exists, std::move(variable), {}, {std::move(f)});
  }

  /// ⋀ over a countable family indexed by `index`; proposition names ending in
  /// "_" + index inside the body are the indexed slots.
  static FormulaPtr omega_conj(std::string index, FormulaPtr body) {
    detail::require_identifier(index, "index variable");
    check(body, "schematic body");
    return node(FormulaKind::omega_conj, std::move(index), {}, {std::move(body)});
  }

  FormulaKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const std::vector<std::string>& variables() const { return variables_; }
  const std::vector<FormulaPtr>& children() const { return children_; }
  const FormulaPtr& child(std::size_t i = 0) const { return children_[i]; }

private:
  static FormulaPtr node(FormulaKind kind, std::string name, std::vector<std::string> vars,
                         std::vector<FormulaPtr> children) {
    auto f = std::make_shared<Formula>();
    f->kind_ = kind;
    f->name_ = std::move(name);
    f->variables_ = std::move(vars);
    f->children_ = std::move(children);
    return f;
  }
  static FormulaPtr unary(FormulaKind kind, FormulaPtr f) {
    check(f, "operand");
    return node(kind, "", {}, {std::move(f)});
  }
  static FormulaPtr list(FormulaKind kind, std::vector<FormulaPtr> fs) {
    if (fs.empty()) throw Error::construction("connective list must be non-empty");
    for (const FormulaPtr& f : fs) check(f, "list member");
    return node(kind, "", {}, std::move(fs));
  }
  static void check(const FormulaPtr& f, const char* role) {
    if (!f) throw Error::construction(std::string("missing ") + role);
  }

  FormulaKind kind_{};
  std::string name_;
  std::vector<std::string> variables_;
  std::vector<FormulaPtr> children_;

public:
  Formula() = default;  // use the factories; public only for make_shared
};

/// Total structural order; 0 iff structurally equal.
inline int compare(const FormulaPtr& a, const FormulaPtr& b) {
  if (a->kind() != b->kind()) return a->kind() < b->kind() ? -1 : 1;
  if (int c = a->name().compare(b->name()); c != 0) return c < 0 ? -1 : 1;
  if (a->variables() != b->variables()) return a->variables() < b->variables() ? -1 : 1;
  const auto& xs = a->children();
  const auto& ys = b->children();
  if (xs.size() != ys.size()) return xs.size() < ys.size() ? -1 : 1;
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (int c = compare(xs[i], ys[i]); c != 0) return c;
  return 0;
}

inline bool equal(const FormulaPtr& a, const FormulaPtr& b) { return compare(a, b) == 0; }

struct FormulaLess {
  bool operator()(const FormulaPtr& a, const FormulaPtr& b) const { return compare(a, b) < 0; }
};

// ---------------------------------------------------------------------------
// Printing. The printer emits one canonical spelling per AST: infix binaries
// are parenthesized everywhere except at top level, two-element conjunction/
// disjunction lists print infix, other arities print braced.

namespace detail {

inline bool parenthesize_as_operand(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::implies:
    case FormulaKind::iff:
    case FormulaKind::forall:
    case FormulaKind::exists:
    case FormulaKind::omega_conj:
      return true;
    case FormulaKind::conj:
    case FormulaKind::disj:
      return f.children().size() == 2;  // braced spellings delimit themselves
    default:
      return false;
  }
}

inline void print_node(std::string& out, const Formula& f, bool toplevel);

inline void print_operand(std::string& out, const Formula& f) {
  if (parenthesize_as_operand(f)) {
    out += '(';
    print_node(out, f, true);
    out += ')';
  } else {
    print_node(out, f, false);
  }
}

inline void print_list(std::string& out, const char* open, const Formula& f) {
  out += open;
  for (std::size_t i = 0; i < f.children().size(); ++i) {
    if (i > 0) out += ", ";
    print_node(out, *f.child(i), true);
  }
  out += '}';
}

inline void print_node(std::string& out, const Formula& f, bool toplevel) {
  switch (f.kind()) {
    case FormulaKind::top: out += 'T'; return;
    case FormulaKind::bot: out += 'F'; return;
    case FormulaKind::prop_var: out += f.name(); return;
    case FormulaKind::pred_atom: {
      out += f.name();
      out += '(';
      for (std::size_t i = 0; i < f.variables().size(); ++i) {
        if (i > 0) out += ',';
        out += f.variables()[i];
      }
      out += ')';
      return;
    }
    case FormulaKind::neg: out += '~'; print_operand(out, *f.child()); return;
    case FormulaKind::box: out += "[]"; print_operand(out, *f.child()); return;
    case FormulaKind::diamond: out += "<>"; print_operand(out, *f.child()); return;
    case FormulaKind::conj:
    case FormulaKind::disj: {
      const bool is_conj = f.kind() == FormulaKind::conj;
      if (f.children().size() == 2) {
        std::string body;
        print_operand(body, *f.child(0));
        body += is_conj ? " & " : " | ";
        print_operand(body, *f.child(1));
        if (toplevel) out += body;
        else { out += '('; out += body; out += ')'; }
      } else {
        print_list(out, is_conj ? "/\\{" : "\\/{", f);
      }
      return;
    }
    case FormulaKind::implies:
    case FormulaKind::iff: {
      std::string body;
      print_operand(body, *f.child(0));
      body += f.kind() == FormulaKind::implies ? " -> " : " <-> ";
      print_operand(body, *f.child(1));
      if (toplevel) out += body;
      else { out += '('; out += body; out += ')'; }
      return;
    }
    case FormulaKind::forall:
    case FormulaKind::exists: {
      out += f.kind() == FormulaKind::forall ? 'A' : 'E';
      out += ' ';
      out += f.name();
      out += ". ";
      print_node(out, *f.child(), true);
      return;
    }
    case FormulaKind::omega_conj: {
      out += "/\\_";
      out += f.name();
      out += ". ";
      print_node(out, *f.child(), true);
      return;
    }
  }
  throw Error::construction("print: unknown node kind");
}

}  // namespace detail

inline std::string print(const FormulaPtr& f) {
  if (!f) throw Error::construction("print: missing formula");
  std::string out;
  detail::print_node(out, *f, true);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing. Recursive descent over the ASCII grammar; `->` chains associate to
// the right, `&`, `|` and `<->` do not chain (parenthesize, or use the braced
// n-ary spellings). Errors carry the position and the expected-token set.

namespace detail {

enum class TokenKind {
  kw_true, kw_false, kw_forall, kw_exists,
  ident, tilde, box, diamond,
  amp, pipe, arrow, darrow,
  big_and, big_or, underscore,
  lparen, rparen, lbrace, rbrace, comma, dot,
  end
};

inline std::string token_label(TokenKind k) {
  switch (k) {
    case TokenKind::kw_true: return "'T'";
    case TokenKind::kw_false: return "'F'";
    case TokenKind::kw_forall: return "'A'";
    case TokenKind::kw_exists: return "'E'";
    case TokenKind::ident: return "identifier";
    case TokenKind::tilde: return "'~'";
    case TokenKind::box: return "'[]'";
    case TokenKind::diamond: return "'<>'";
    case TokenKind::amp: return "'&'";
    case TokenKind::pipe: return "'|'";
    case TokenKind::arrow: return "'->'";
    case TokenKind::darrow: return "'<->'";
    case TokenKind::big_and: return "'/\\'";
    case TokenKind::big_or: return "'\\/'";
    case TokenKind::underscore: return "'_'";
    case TokenKind::lparen: return "'('";
    case TokenKind::rparen: return "')'";
    case TokenKind::lbrace: return "'{'";
    case TokenKind::rbrace: return "'}'";
    case TokenKind::comma: return "','";
    case TokenKind::dot: return "'.'";
    case TokenKind::end: return "end of input";
  }
  return "?";
}

struct Token {
  TokenKind kind;
  std::string text;
  std::size_t pos;
};

inline std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto fail = [&](const std::string& what) {
    throw Error::parse("position " + std::to_string(i) + ": " + what);
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
    std::size_t start = i;
    auto push = [&](TokenKind k, std::size_t len) {
      out.push_back({k, text.substr(start, len), start});
      i += len;
    };
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i + 1;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_' ||
              text[j] == '\''))
        ++j;
      std::string word = text.substr(i, j - i);
      TokenKind k = word == "T"   ? TokenKind::kw_true
                    : word == "F" ? TokenKind::kw_false
                    : word == "A" ? TokenKind::kw_forall
                    : word == "E" ? TokenKind::kw_exists
                                  : TokenKind::ident;
      push(k, word.size());
      continue;
    }
    switch (c) {
      case '~': push(TokenKind::tilde, 1); break;
      case '&': push(TokenKind::amp, 1); break;
      case '|': push(TokenKind::pipe, 1); break;
      case '(': push(TokenKind::lparen, 1); break;
      case ')': push(TokenKind::rparen, 1); break;
      case '{': push(TokenKind::lbrace, 1); break;
      case '}': push(TokenKind::rbrace, 1); break;
      case ',': push(TokenKind::comma, 1); break;
      case '.': push(TokenKind::dot, 1); break;
      case '_': push(TokenKind::underscore, 1); break;
      case '[':
        if (i + 1 < text.size() && text[i + 1] == ']') push(TokenKind::box, 2);
        else fail("expected '[]'");
        break;
      case '<':
        if (i + 2 < text.size() && text[i + 1] == '-' && text[i + 2] == '>')
          push(TokenKind::darrow, 3);
        else if (i + 1 < text.size() && text[i + 1] == '>')
          push(TokenKind::diamond, 2);
        else
          fail("expected '<>' or '<->'");
        break;
      case '-':
        if (i + 1 < text.size() && text[i + 1] == '>') push(TokenKind::arrow, 2);
        else fail("expected '->'");
        break;
      case '/':
        if (i + 1 < text.size() && text[i + 1] == '\\') push(TokenKind::big_and, 2);
        else fail("expected '/\\'");
        break;
      case '\\':
        if (i + 1 < text.size() && text[i + 1] == '/') push(TokenKind::big_or, 2);
        else fail("expected '\\/'");
        break;
      default:
        fail(std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({TokenKind::end, "", text.size()});
  return out;
}

class Parser {
public:
  explicit Parser(const std::string& text) : tokens_(lex(text)) {}

  FormulaPtr run() {
    FormulaPtr f = formula();
    if (peek().kind != TokenKind::end) {
      if (peek().kind == TokenKind::amp || peek().kind == TokenKind::pipe ||
          peek().kind == TokenKind::darrow)
        throw Error::parse("position " + std::to_string(peek().pos) + ": " +
                           token_label(peek().kind) +
                           " does not chain; parenthesize or use the braced n-ary form");
      fail({TokenKind::end});
    }
    return f;
  }

private:
  const Token& peek() const { return tokens_[at_]; }
  Token take() { return tokens_[at_++]; }
  bool accept(TokenKind k) {
    if (peek().kind != k) return false;
    ++at_;
    return true;
  }
  Token expect(TokenKind k) {
    if (peek().kind != k) fail({k});
    return take();
  }

  [[noreturn]] void fail(std::vector<TokenKind> expected) const {
    std::string msg = "position " + std::to_string(peek().pos) + ": expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i > 0) msg += i + 1 == expected.size() ? " or " : ", ";
      msg += token_label(expected[i]);
    }
    msg += ", got ";
    msg += peek().kind == TokenKind::end ? "end of input" : "'" + peek().text + "'";
    throw Error::parse(msg);
  }

  FormulaPtr formula() {  // <-> level, non-chaining
    FormulaPtr lhs = implication();
    if (accept(TokenKind::darrow)) return Formula::iff(std::move(lhs), implication());
    return lhs;
  }

  FormulaPtr implication() {  // right-associative
    FormulaPtr lhs = disjunction();
    if (accept(TokenKind::arrow)) return Formula::implies(std::move(lhs), implication());
    return lhs;
  }

  FormulaPtr disjunction() {  // non-chaining
    FormulaPtr lhs = conjunction();
    if (accept(TokenKind::pipe))
      return Formula::disj({std::move(lhs), conjunction()});
    return lhs;
  }

  FormulaPtr conjunction() {  // non-chaining
    FormulaPtr lhs = unary();
    if (accept(TokenKind::amp)) return Formula::conj({std::move(lhs), unary()});
    return lhs;
  }

  FormulaPtr unary() {
    if (accept(TokenKind::tilde)) return Formula::neg(unary());
    if (accept(TokenKind::box)) return Formula::box(unary());
    if (accept(TokenKind::diamond)) return Formula::diamond(unary());
    return primary();
  }

  FormulaPtr primary() {
    switch (peek().kind) {
      case TokenKind::kw_true: take(); return Formula::top();
      case TokenKind::kw_false: take(); return Formula::bot();
      case TokenKind::lparen: {
        take();
        FormulaPtr f = formula();
        expect(TokenKind::rparen);
        return f;
      }
      case TokenKind::kw_forall:
      case TokenKind::kw_exists: {
        const bool universal = take().kind == TokenKind::kw_forall;
        std::string var = expect(TokenKind::ident).text;
        expect(TokenKind::dot);
        FormulaPtr body = formula();
        return universal ? Formula::forall(std::move(var), std::move(body))
                         : Formula::exists(std::move(var), std::move(body));
      }
      case TokenKind::big_and: {
        take();
        if (accept(TokenKind::underscore)) {
          std::string index = expect(TokenKind::ident).text;
          expect(TokenKind::dot);
          return Formula::omega_conj(std::move(index), formula());
        }
        return Formula::conj(braced_list());
      }
      case TokenKind::big_or: {
        take();
        return Formula::disj(braced_list());
      }
      case TokenKind::ident: {
        std::string name = take().text;
        if (!accept(TokenKind::lparen)) return Formula::prop(std::move(name));
        std::vector<std::string> vars{expect(TokenKind::ident).text};
        while (accept(TokenKind::comma)) vars.push_back(expect(TokenKind::ident).text);
        expect(TokenKind::rparen);
        return Formula::pred(std::move(name), std::move(vars));
      }
      default:
        fail({TokenKind::kw_true, TokenKind::kw_false, TokenKind::kw_forall,
              TokenKind::kw_exists, TokenKind::ident, TokenKind::tilde, TokenKind::box,
              TokenKind::diamond, TokenKind::big_and, TokenKind::big_or,
              TokenKind::lparen});
    }
  }

  std::vector<FormulaPtr> braced_list() {
    expect(TokenKind::lbrace);
    std::vector<FormulaPtr> fs{formula()};
    while (accept(TokenKind::comma)) fs.push_back(formula());
    expect(TokenKind::rbrace);
    return fs;
  }

  std::vector<Token> tokens_;
  std::size_t at_ = 0;
};

}  // namespace detail

/// Predicate-name → arity map; throws on inconsistent use inside φ.
inline void collect_predicate_arities(const FormulaPtr& f,
                                      std::map<std::string, std::size_t>& arities) {
  if (f->kind() == FormulaKind::pred_atom) {
    auto [it, fresh] = arities.emplace(f->name(), f->variables().size());
    if (!fresh && it->second != f->variables().size())
      throw Error::language("predicate '" + f->name() + "' used with arities " +
                            std::to_string(it->second) + " and " +
                            std::to_string(f->variables().size()));
  }
  for (const FormulaPtr& c : f->children()) collect_predicate_arities(c, arities);
}

inline FormulaPtr parse(const std::string& text) {
  FormulaPtr f = detail::Parser(text).run();
  std::map<std::string, std::size_t> arities;
  collect_predicate_arities(f, arities);
  return f;
}

// ---------------------------------------------------------------------------
// Subformulas, free variables, substitution.

namespace detail {
inline void subformulas_into(const FormulaPtr& f,
                             std::set<FormulaPtr, FormulaLess>& out) {
  if (!out.insert(f).second) return;
  for (const FormulaPtr& c : f->children()) subformulas_into(c, out);
}
}  // namespace detail

/// The subformula set, sorted structurally: each node together with the
/// subformulas of its immediate parts.
inline std::vector<FormulaPtr> subformulas(const FormulaPtr& f) {
  std::set<FormulaPtr, FormulaLess> set;
  detail::subformulas_into(f, set);
  return {set.begin(), set.end()};
}

inline void free_variables_into(const FormulaPtr& f, std::set<std::string>& out) {
  switch (f->kind()) {
    case FormulaKind::pred_atom:
      out.insert(f->variables().begin(), f->variables().end());
      return;
    case FormulaKind::forall:
    case FormulaKind::exists: {
      std::set<std::string> inner;
      free_variables_into(f->child(), inner);
      inner.erase(f->name());
      out.insert(inner.begin(), inner.end());
      return;
    }
    default:
      for (const FormulaPtr& c : f->children()) free_variables_into(c, out);
  }
}

inline std::set<std::string> free_variables(const FormulaPtr& f) {
  std::set<std::string> out;
  free_variables_into(f, out);
  return out;
}

namespace detail {
inline void occurring_variables_into(const FormulaPtr& f, std::set<std::string>& out) {
  if (f->kind() == FormulaKind::pred_atom)
    out.insert(f->variables().begin(), f->variables().end());
  if (f->kind() == FormulaKind::forall || f->kind() == FormulaKind::exists)
    out.insert(f->name());
  for (const FormulaPtr& c : f->children()) occurring_variables_into(c, out);
}

inline std::string fresh_variable(const std::string& base,
                                  const std::set<std::string>& avoid) {
  std::string candidate = base;
  do candidate += '\'';
  while (avoid.count(candidate));
  return candidate;
}
}  // namespace detail

/// Capture-avoiding rename of free occurrences of variable x to y; binders
/// that would capture y are renamed to a fresh primed variable first.
inline FormulaPtr substitute(const FormulaPtr& f, const std::string& x,
                             const std::string& y) {
  switch (f->kind()) {
    case FormulaKind::top:
    case FormulaKind::bot:
    case FormulaKind::prop_var:
      return f;
    case FormulaKind::pred_atom: {
      std::vector<std::string> vars = f->variables();
      bool changed = false;
      for (std::string& v : vars)
        if (v == x) {
          v = y;
          changed = true;
        }
      return changed ? Formula::pred(f->name(), std::move(vars)) : f;
    }
    case FormulaKind::forall:
    case FormulaKind::exists: {
      if (f->name() == x) return f;  // no free occurrence below
      std::set<std::string> free = free_variables(f->child());
      if (!free.count(x)) return f;
      const bool universal = f->kind() == FormulaKind::forall;
      if (f->name() == y) {
        std::set<std::string> avoid;
        detail::occurring_variables_into(f->child(), avoid);
        avoid.insert(x);
        avoid.insert(y);
        std::string z = detail::fresh_variable(f->name(), avoid);
        FormulaPtr renamed = substitute(f->child(), f->name(), z);
        FormulaPtr body = substitute(renamed, x, y);
        return universal ? Formula::forall(z, std::move(body))
                         : Formula::exists(z, std::move(body));
      }
      FormulaPtr body = substitute(f->child(), x, y);
      return universal ? Formula::forall(f->name(), std::move(body))
                       : Formula::exists(f->name(), std::move(body));
    }
    default: {
      std::vector<FormulaPtr> children;
      children.reserve(f->children().size());
      bool changed = false;
      for (const FormulaPtr& c : f->children()) {
        children.push_back(substitute(c, x, y));
        if (children.back() != c) changed = true;
      }
      if (!changed) return f;
      switch (f->kind()) {
        case FormulaKind::neg: return Formula::neg(children[0]);
        case FormulaKind::box: return Formula::box(children[0]);
        case FormulaKind::diamond: return Formula::diamond(children[0]);
        case FormulaKind::conj: return Formula::conj(std::move(children));
        case FormulaKind::disj: return Formula::disj(std::move(children));
        case FormulaKind::implies: return Formula::implies(children[0], children[1]);
        case FormulaKind::iff: return Formula::iff(children[0], children[1]);
        case FormulaKind::omega_conj: return Formula::omega_conj(f->name(), children[0]);
        default: throw Error::construction("substitute: unknown node kind");
      }
    }
  }
}

/// Expansion of the derived connectives into ⊤, ⊥, ¬, ∧, Box, ∀.
inline FormulaPtr desugar(const FormulaPtr& f) {
  std::vector<FormulaPtr> children;
  children.reserve(f->children().size());
  for (const FormulaPtr& c : f->children()) children.push_back(desugar(c));
  switch (f->kind()) {
    case FormulaKind::top:
    case FormulaKind::bot:
    case FormulaKind::prop_var:
    case FormulaKind::pred_atom:
      return f;
    case FormulaKind::neg: return Formula::neg(children[0]);
    case FormulaKind::box: return Formula::box(children[0]);
    case FormulaKind::conj: return Formula::conj(std::move(children));
    case FormulaKind::forall: return Formula::forall(f->name(), children[0]);
    case FormulaKind::omega_conj: return Formula::omega_conj(f->name(), children[0]);
    case FormulaKind::diamond:
      return Formula::neg(Formula::box(Formula::neg(children[0])));
    case FormulaKind::disj: {
      for (FormulaPtr& c : children) c = Formula::neg(std::move(c));
      return Formula::neg(Formula::conj(std::move(children)));
    }
    case FormulaKind::implies:
      return Formula::neg(Formula::conj({children[0], Formula::neg(children[1])}));
    case FormulaKind::iff:
      return Formula::conj(
          {Formula::neg(Formula::conj({children[0], Formula::neg(children[1])})),
           Formula::neg(Formula::conj({children[1], Formula::neg(children[0])}))});
    case FormulaKind::exists:
      return Formula::neg(Formula::forall(f->name(), Formula::neg(children[0])));
  }
  throw Error::construction("desugar: unknown node kind");
}

}  // namespace nbhd
