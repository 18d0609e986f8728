#ifndef GAT_SEXPR_HPP
#define GAT_SEXPR_HPP

#include <string>
#include <vector>

#include "gat/ast.hpp"

namespace gat {

struct ParseError : Error {
  ParseError(const std::string& msg, int line, int col)
      : Error(msg + " at " + std::to_string(line) + ":" + std::to_string(col)),
        line(line),
        col(col) {}
  int line, col;
};

// Atoms are symbols or quoted strings; comments run from ';' to end of line.
struct Sexpr {
  enum class Kind : uint8_t { Symbol, String, List };
  Kind kind = Kind::Symbol;
  std::string text;
  std::vector<Sexpr> items;
  int line = 0, col = 0;

  static Sexpr symbol(std::string s) {
    Sexpr e;
    e.kind = Kind::Symbol;
    e.text = std::move(s);
    return e;
  }
  static Sexpr list(std::vector<Sexpr> items) {
    Sexpr e;
    e.kind = Kind::List;
    e.items = std::move(items);
    return e;
  }
  bool is_symbol() const { return kind == Kind::Symbol; }
  bool is_symbol(const std::string& s) const { return kind == Kind::Symbol && text == s; }
  bool is_list() const { return kind == Kind::List; }
  size_t size() const { return items.size(); }
  const Sexpr& at(size_t i) const;
  // First item is the symbol `tag`.
  bool tagged(const std::string& tag) const {
    return is_list() && !items.empty() && items[0].is_symbol(tag);
  }
  std::string where() const { return std::to_string(line) + ":" + std::to_string(col); }
};

std::vector<Sexpr> parse_sexprs(const std::string& text);
Sexpr parse_sexpr(const std::string& text);
std::string print_sexpr(const Sexpr& e);
// Pretty-printer: top-level list spread over lines, nested lists inline.
std::string print_sexpr_pretty(const Sexpr& e, int indent = 0);

}  // namespace gat

#endif
