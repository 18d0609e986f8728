#include "gat/sexpr.hpp"

#include <sstream>

namespace gat {

const Sexpr& Sexpr::at(size_t i) const {
  if (!is_list() || i >= items.size())
    throw ParseError("malformed form (missing item " + std::to_string(i) + ")", line, col);
  return items[i];
}

namespace {

struct Reader {
  const std::string& src;
  size_t pos = 0;
  int line = 1, col = 1;

  explicit Reader(const std::string& s) : src(s) {}

  bool eof() const { return pos >= src.size(); }
  char peek() const { return src[pos]; }
  char get() {
    char c = src[pos++];
    if (c == '\n') {
      line++;
      col = 1;
    } else {
      col++;
    }
    return c;
  }
  void skip_ws() {
    while (!eof()) {
      char c = peek();
      if (c == ';') {
        while (!eof() && peek() != '\n') get();
      } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        get();
      } else {
        break;
      }
    }
  }
  static bool symbol_char(char c) {
    if (c == '(' || c == ')' || c == ';' || c == '"') return false;
    return c > ' ';
  }

  Sexpr read() {
    skip_ws();
    if (eof()) throw ParseError("unexpected end of input", line, col);
    int l = line, c = col;
    char ch = peek();
    if (ch == '(') {
      get();
      Sexpr e;
      e.kind = Sexpr::Kind::List;
      e.line = l;
      e.col = c;
      for (;;) {
        skip_ws();
        if (eof()) throw ParseError("unclosed '('", l, c);
        if (peek() == ')') {
          get();
          return e;
        }
        e.items.push_back(read());
      }
    }
    if (ch == ')') throw ParseError("unexpected ')'", l, c);
    if (ch == '"') {
      get();
      std::string s;
      while (!eof() && peek() != '"') {
        char d = get();
        if (d == '\\' && !eof()) d = get();
        s += d;
      }
      if (eof()) throw ParseError("unclosed string", l, c);
      get();
      Sexpr e;
      e.kind = Sexpr::Kind::String;
      e.text = std::move(s);
      e.line = l;
      e.col = c;
      return e;
    }
    std::string s;
    while (!eof() && symbol_char(peek())) s += get();
    if (s.empty()) throw ParseError("bad character", l, c);
    Sexpr e;
    e.kind = Sexpr::Kind::Symbol;
    e.text = std::move(s);
    e.line = l;
    e.col = c;
    return e;
  }
};

void print_rec(const Sexpr& e, std::ostream& os) {
  switch (e.kind) {
    case Sexpr::Kind::Symbol:
      os << e.text;
      break;
    case Sexpr::Kind::String:
      os << '"';
      for (char c : e.text) {
        if (c == '"' || c == '\\') os << '\\';
        os << c;
      }
      os << '"';
      break;
    case Sexpr::Kind::List:
      os << '(';
      for (size_t i = 0; i < e.items.size(); ++i) {
        if (i) os << ' ';
        print_rec(e.items[i], os);
      }
      os << ')';
      break;
  }
}

}  // namespace

std::vector<Sexpr> parse_sexprs(const std::string& text) {
  Reader r(text);
  std::vector<Sexpr> out;
  for (;;) {
    r.skip_ws();
    if (r.eof()) break;
    out.push_back(r.read());
  }
  return out;
}

Sexpr parse_sexpr(const std::string& text) {
  auto v = parse_sexprs(text);
  if (v.size() != 1) throw ParseError("expected exactly one form", 1, 1);
  return v[0];
}

std::string print_sexpr(const Sexpr& e) {
  std::ostringstream os;
  print_rec(e, os);
  return os.str();
}

std::string print_sexpr_pretty(const Sexpr& e, int indent) {
  if (!e.is_list() || print_sexpr(e).size() + indent <= 100) {
    return std::string(indent, ' ') + print_sexpr(e);
  }
  std::string out = std::string(indent, ' ') + "(";
  bool first = true;
  for (const Sexpr& it : e.items) {
    if (first && it.is_symbol()) {
      out += it.text;
      first = false;
      continue;
    }
    out += "\n" + print_sexpr_pretty(it, indent + 2);
    first = false;
  }
  out += ")";
  return out;
}

}  // namespace gat
