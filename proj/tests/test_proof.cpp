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

Lang nat_lang() {
  Loader l;
  l.load_text(kNat, "nat.inline");
  return l.reg.lang("nat").full;
}

Term snum(int n) {
  Term t = Term::con("0");
  for (int i = 0; i < n; ++i) t = Term::con("S", {t});
  return t;
}

Term plus(Term a, Term b) { return Term::con("+", {std::move(a), std::move(b)}); }

// Independent oracle: all single rewrites of a ground term under the two
// addition laws, written out directly (no engine machinery).
std::vector<Term> oracle_steps(const Term& t) {
  std::vector<Term> out;
  if (!t.is_var() && t.head == "+" && t.args.size() == 2) {
    if (t.args[0] == Term::con("0")) out.push_back(t.args[1]);
    if (!t.args[0].is_var() && t.args[0].head == "S")
      out.push_back(Term::con("S", {plus(t.args[0].args[0], t.args[1])}));
  }
  if (!t.is_var()) {
    for (size_t i = 0; i < t.args.size(); ++i) {
      for (const Term& s : oracle_steps(t.args[i])) {
        Term u = t;
        u.args[i] = s;
        out.push_back(u);
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("axiom instances compute the instantiated equation") {
  Lang nat = nat_lang();
  Ctx closed;
  MetaSubst inst;
  inst.set("n", snum(1));
  Equation eq = check_eq(LangView(nat), closed, EqProof::axiom("+-0", inst));
  CHECK(eq.lhs == plus(snum(0), snum(1)));
  CHECK(eq.rhs == snum(1));
  CHECK(eq.sort == Sort("nat"));
}

TEST_CASE("refl requires a well-typed term") {
  Lang nat = nat_lang();
  Ctx closed;
  Equation eq = check_eq(LangView(nat), closed, EqProof::refl(snum(1)));
  CHECK(eq.lhs == snum(1));
  CHECK(eq.sort == Sort("nat"));
  CHECK_THROWS_AS(check_eq(LangView(nat), closed, EqProof::refl(Term::con("S"))), ProofError);
}

TEST_CASE("a two-step chain matches the brute-force enumeration") {
  // expected endpoints frozen from the oracle: enumerate every rewrite
  // sequence of length <= 2 from S 0 + 0 and confirm S 0 is reached
  Term start = plus(snum(1), snum(0));
  bool oracle_reaches = false;
  for (const Term& a : oracle_steps(start)) {
    for (const Term& b : oracle_steps(a))
      if (b == snum(1)) oracle_reaches = true;
    if (a == snum(1)) oracle_reaches = true;
  }
  REQUIRE(oracle_reaches);

  Lang nat = nat_lang();
  Ctx closed;
  MetaSubst i1;
  i1.set("m", snum(0));
  i1.set("n", snum(0));
  MetaSubst i2;
  i2.set("n", snum(0));
  EqProof p = EqProof::trans(EqProof::axiom("+-S", i1),
                             EqProof::cong("S", {EqProof::axiom("+-0", i2)}));
  Equation eq = check_eq(LangView(nat), closed, p);
  CHECK(eq.lhs == start);
  CHECK(eq.rhs == snum(1));
}

TEST_CASE("trans endpoints must agree") {
  Lang nat = nat_lang();
  Ctx closed;
  MetaSubst i;
  i.set("n", snum(0));
  EqProof good = EqProof::axiom("+-0", i);  // 0 + 0 = 0
  CHECK_THROWS_AS(check_eq(LangView(nat), closed, EqProof::trans(good, good)), ProofError);
}

TEST_CASE("bad axiom instances are rejected") {
  Lang nat = nat_lang();
  Ctx closed;
  MetaSubst missing;  // does not bind n
  CHECK_THROWS_AS(check_eq(LangView(nat), closed, EqProof::axiom("+-0", missing)), ProofError);
  CHECK_THROWS_AS(check_eq(LangView(nat), closed, EqProof::axiom("nope", missing)), ProofError);
  MetaSubst ill;
  ill.set("n", Term::con("S"));  // wrong arity
  CHECK_THROWS_AS(check_eq(LangView(nat), closed, EqProof::axiom("+-0", ill)), ProofError);
}

TEST_CASE("subst_into_proof commutes with instantiation") {
  Lang nat = nat_lang();
  Ctx ambient;
  ambient.push("k", Sort("nat"));
  MetaSubst i;
  i.set("n", plus(Term::var("k"), snum(1)));
  EqProof p = EqProof::axiom("+-0", i);
  Equation before = check_eq(LangView(nat), ambient, p);

  MetaSubst g;
  g.set("k", snum(2));
  Ctx closed;
  Equation after = check_eq(LangView(nat), closed, subst_into_proof(g, p));
  CHECK(after.lhs == apply_subst(g, before.lhs));
  CHECK(after.rhs == apply_subst(g, before.rhs));

  // empty substitution leaves the proof unchanged
  CHECK(proof_equal(subst_into_proof(MetaSubst{}, p), p));
}

TEST_CASE("proofs serialize and parse back") {
  Lang nat = nat_lang();
  Ctx closed;
  MetaSubst i1;
  i1.set("m", snum(0));
  i1.set("n", snum(0));
  EqProof p = EqProof::trans(EqProof::axiom("+-S", i1),
                             EqProof::cong("S", {EqProof::axiom("+-0", [] {
                                                   MetaSubst i;
                                                   i.set("n", snum(0));
                                                   return i;
                                                 }())}));
  Sexpr printed = print_proof(p);
  EqProof q = parse_proof(parse_sexpr(print_sexpr(printed)));
  CHECK(proof_equal(p, q));
  Equation a = check_eq(LangView(nat), closed, p);
  Equation b = check_eq(LangView(nat), closed, q);
  CHECK(a == b);
}

TEST_CASE("conversion nodes retype along derivable sort equalities") {
  // the vector theory: the append sides naturally live at different but
  // convertible sorts
  Loader l;
  l.load_text(kNat, "nat.inline");
  l.load_text(R"((lang nat_vec (over nat)
    (sort vec (ctx (n nat)) (args n))
    (term nil (ctx) (args) (vec (0)))
    (term cons (ctx (m nat) (n nat) (v (vec n))) (args m v) (vec (S n)))
    (term vapp (ctx (m nat) (v (vec m)) (n nat) (v2 (vec n))) (args v v2) (vec (+ m n)))
    (eq vapp-nil (ctx (n nat) (v (vec n))) (vapp (nil) v) = v : (vec n))))",
              "vec.inline");
  const Lang& vec = l.reg.lang("nat_vec").full;
  Ctx c;
  c.push("n", Sort("nat"));
  c.push("v", Sort("vec", {Term::var("n")}));
  Term lhs = Term::con("vapp", {Term::con("0"), Term::con("nil"), Term::var("n"), Term::var("v")});
  // synthesized sort: vec (0 + n); the stated sort of the equation: vec n
  Sort synthesized = infer_sort(LangView(vec), c, lhs);
  CHECK(synthesized == Sort("vec", {Term::con("+", {Term::con("0"), Term::var("n")})}));
  auto sp = join_sorts(LangView(vec), c, synthesized, Sort("vec", {Term::var("n")}),
                       RewriteConfig::with_fuel(50));
  REQUIRE(sp);
  CHECK_FALSE(is_pure_refl(*sp));
  EqProof p = EqProof::conv_sort(*sp, EqProof::refl(lhs));
  Equation eq = check_eq(LangView(vec), c, p);
  CHECK(eq.sort == Sort("vec", {Term::var("n")}));
  // retyping along the wrong sort equality is rejected
  auto wrong = join_sorts(LangView(vec), c, Sort("nat"), Sort("nat"),
                          RewriteConfig::with_fuel(10));
  REQUIRE(wrong);
  CHECK_THROWS_AS(check_eq(LangView(vec), c, EqProof::conv_sort(*wrong, EqProof::refl(lhs))),
                  ProofError);
}
