#include <doctest.h>

#include "gat/dsl.hpp"

using namespace gat;

namespace {

const char* kNat = R"((lang nat
  (sort nat (ctx) (args))
  (term 0 (ctx) (args) nat)
  (term S (ctx (n nat)) (args n) nat)
  (term + (ctx (m nat) (n nat)) (args m n) nat)
  (eq +-0 (ctx (n nat)) (+ (0) n) = n : nat)
  (eq +-S (ctx (m nat) (n nat)) (+ (S m) n) = (S (+ m n)) : nat)))";

const char* kVec = R"((lang nat_vec (over nat)
  (sort vec (ctx (n nat)) (args n))
  (term nil (ctx) (args) (vec (0)))
  (term cons (ctx (m nat) (n nat) (v (vec n))) (args m v) (vec (S n)))
  (term vapp (ctx (m nat) (v (vec m)) (n nat) (v2 (vec n))) (args v v2) (vec (+ m n)))
  (eq vapp-nil (ctx (n nat) (v (vec n))) (vapp (nil) v) = v : (vec n))
  (eq vapp-cons (ctx (i nat) (m nat) (v (vec m)) (n nat) (v2 (vec n)))
      (vapp (cons i v) v2) = (cons i (vapp v v2)) : (vec (+ (S m) n)))))";

Registry load_nat_vec() {
  Loader l;
  l.load_text(kNat, "nat.inline");
  l.load_text(kVec, "vec.inline");
  return std::move(l.reg);
}

Term snum(int n) {
  Term t = Term::con("0");
  for (int i = 0; i < n; ++i) t = Term::con("S", {t});
  return t;
}

}  // namespace

TEST_CASE("nat GAT is well-formed") {
  Registry reg = load_nat_vec();
  WfReport rep = wf_lang(reg.lang("nat").full);
  CHECK(rep.ok);
  CHECK(rep.conversions.empty());
}

TEST_CASE("nat with rules reversed is rejected") {
  Loader l;
  CHECK_THROWS(l.load_text(R"((lang bad
    (term S (ctx (n nat)) (args n) nat)
    (sort nat (ctx) (args))))",
                           "bad.inline"));
}

TEST_CASE("nat_vec needs conversion for the append equations") {
  Registry reg = load_nat_vec();
  WfReport rep = wf_lang(reg.lang("nat_vec").full);
  CHECK(rep.ok);
  // the cons case of append checks only via the defining equation of addition
  bool non_refl = false;
  for (const SortEqProof& p : rep.conversions)
    if (!is_pure_refl(p)) non_refl = true;
  CHECK(non_refl);
}

TEST_CASE("check_term and infer_sort on the nat GAT") {
  Registry reg = load_nat_vec();
  const Lang& nat = reg.lang("nat").full;
  Ctx closed;
  CHECK(check_term(LangView(nat), closed, snum(1), Sort("nat")).ok);
  CHECK(infer_sort(LangView(nat), closed, snum(1)) == Sort("nat"));
  CHECK(infer_sort(LangView(nat), closed, Term::con("+", {snum(0), snum(1)})) == Sort("nat"));

  const Lang& vec = reg.lang("nat_vec").full;
  WfReport bad = check_term(LangView(vec), closed, snum(1), Sort("vec", {snum(0)}));
  CHECK_FALSE(bad.ok);
  CHECK(bad.diagnostics.front().message.find("SortMismatch") != std::string::npos);
}

TEST_CASE("infer_sort gives the pre-conversion sort of the cons-append lhs") {
  Registry reg = load_nat_vec();
  const Lang& vec = reg.lang("nat_vec").full;
  const Rule* r = vec.find("vapp-cons");
  REQUIRE(r);
  Sort got = infer_sort(LangView(vec), r->ctx, r->lhs);
  // vec (S m + n), before invoking the defining equation of addition
  Sort want("vec", {Term::con("+", {Term::con("S", {Term::var("m")}), Term::var("n")})});
  CHECK(got == want);
}

TEST_CASE("elaboration fills implicit arguments") {
  Registry reg = load_nat_vec();
  const Lang& vec = reg.lang("nat_vec").full;
  Ctx c;
  c.push("n", Sort("nat"));
  c.push("v", Sort("vec", {Term::var("n")}));
  // (vapp nil v): the length implicits m and n are inferred
  Term t = elaborate(LangView(vec), c, parse_surface(parse_sexpr("(vapp (nil) v)")), std::nullopt);
  CHECK(t == Term::con("vapp", {snum(0), Term::con("nil"), Term::var("n"), Term::var("v")}));
  // surface 0 has no implicits at all
  Term zero = elaborate(LangView(vec), c, parse_surface(parse_sexpr("0")), std::nullopt);
  CHECK(zero == Term::con("0"));
}

TEST_CASE("erase is a left inverse of elaborate on surface terms") {
  Registry reg = load_nat_vec();
  const Lang& vec = reg.lang("nat_vec").full;
  Ctx c;
  c.push("n", Sort("nat"));
  c.push("v", Sort("vec", {Term::var("n")}));
  for (const char* s :
       {"(vapp (nil) v)", "(cons (0) v)", "(vapp (cons (0) (nil)) (vapp (nil) v))", "v"}) {
    SurfaceTerm st = parse_surface(parse_sexpr(s));
    Term t = elaborate(LangView(vec), c, st, std::nullopt);
    CHECK(erase(LangView(vec), t) == (st.applied || c.contains(st.head)
                                          ? st
                                          : SurfaceTerm::apply(st.head, {})));
  }
}

TEST_CASE("unsolved implicits are reported") {
  Registry reg = load_nat_vec();
  const Lang& vec = reg.lang("nat_vec").full;
  Ctx closed;
  // nil alone leaves nothing unsolved; a bare vapp of two nils is fine too,
  // but an expected sort that underdetermines nothing must not crash
  CHECK_NOTHROW(
      elaborate(LangView(vec), closed, parse_surface(parse_sexpr("(vapp (nil) (nil))")),
                std::nullopt));
}

TEST_CASE("shadowing in a context is rejected") {
  Loader l;
  l.load_text(kNat, "nat.inline");
  CHECK_THROWS(l.load_text(R"((lang shadow (over nat)
    (term dup (ctx (n nat) (n nat)) (args n) nat)))",
                           "shadow.inline"));
}
