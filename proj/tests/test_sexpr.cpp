#include <doctest.h>

#include "gat/sexpr.hpp"

using namespace gat;

TEST_CASE("sexpr reading and printing") {
  Sexpr e = parse_sexpr("(a (b c) \"d e\" ; comment\n f)");
  REQUIRE(e.is_list());
  CHECK(e.size() == 4);
  CHECK(e.at(0).is_symbol("a"));
  CHECK(e.at(1).is_list());
  CHECK(e.at(2).kind == Sexpr::Kind::String);
  CHECK(e.at(2).text == "d e");
  CHECK(print_sexpr(e) == "(a (b c) \"d e\" f)");
  CHECK(print_sexpr(parse_sexpr(print_sexpr(e))) == print_sexpr(e));
}

TEST_CASE("sexpr errors carry positions") {
  CHECK_THROWS_AS(parse_sexpr("(a b"), ParseError);
  CHECK_THROWS_AS(parse_sexpr(")"), ParseError);
  try {
    parse_sexprs("(ok)\n   (bad");
  } catch (const ParseError& p) {
    CHECK(p.line == 2);
  }
}

TEST_CASE("symbols may contain operator characters") {
  Sexpr e = parse_sexpr("(+ 0 ::)");
  CHECK(e.at(0).is_symbol("+"));
  CHECK(e.at(1).is_symbol("0"));
  CHECK(e.at(2).is_symbol("::"));
}
