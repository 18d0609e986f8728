#include <doctest.h>

#include <sstream>

#include "gat/corpus.hpp"

using namespace gat;

namespace {

Corpus& corpus() {
  static Corpus c = load_corpus(GATFORGE_CORPUS_DIR);
  return c;
}

}  // namespace

TEST_CASE("every corpus entry reproduces its declared status") {
  Corpus& c = corpus();
  for (const CorpusEntry& e : c.entries) {
    CAPTURE(e.name);
    if (e.kind == CorpusEntry::Kind::Language) {
      WfReport rep = wf_lang(c.lang(e.name));
      if (!rep.ok) MESSAGE(e.name, ": ", rep.diagnostics.front().message);
      CHECK(rep.ok);
      continue;
    }
    DischargeReport rep = c.discharge_pass(e.name);
    if (e.expect == "discharge-clean" || e.expect == "discharge-manual") {
      for (const auto& [n, r] : rep.entries)
        if (r.status == ObStatus::Open) MESSAGE(e.name, "/", n, ": ", r.reason);
      CHECK(rep.clean());
      CHECK(rep.manual_names() == e.manual);
    }
  }
}

TEST_CASE("the one deliberately broken pass fails exactly where expected") {
  Corpus& c = corpus();
  DischargeReport rep = c.discharge_pass("broken_swap");
  CHECK_FALSE(rep.clean());
  CHECK(rep.open_names() == std::vector<Name>{"ite-true"});
}

TEST_CASE("the nat GAT file parses to exactly six rules") {
  Corpus& c = corpus();
  CHECK(c.ext("nat").size() == 6);
}

TEST_CASE("corpus files round-trip through the printer") {
  Corpus& c = corpus();
  for (const char* name : {"nat", "nat_vec", "value_subst", "subst", "stlc", "subst_bool",
                           "num", "natv", "unitv", "natarith", "rec", "evalctx", "heap",
                           "heap_src", "cont", "if0x", "arithv", "cont_rec", "heap_blk",
                           "closure", "imp", "tenv_gat", "bool_asym", "unit_eta"}) {
    CAPTURE(name);
    const LangDef& def = c.reg.lang(name);
    std::string printed = print_sexpr_pretty(print_lang(def, LangView(def.full)));
    Loader fresh;
    for (const Name& p : def.over) {
      const LangDef& dep = c.reg.lang(p);
      LangDef copy = dep;
      copy.over.clear();
      copy.full = copy.ext = dep.ext;  // provide prefixes as opaque blocks
      fresh.reg.langs.emplace(p, std::move(copy));
    }
    // reparse under the same prefixes and compare rule lists
    fresh.load_text(printed, "roundtrip");
    CHECK(fresh.reg.lang(name).ext == def.ext);
  }
}

TEST_CASE("compiler passes round-trip through the printer") {
  Corpus& c = corpus();
  for (const char* name : {"cps_subst", "cps_stlc", "cc_base", "imp_cmp"}) {
    CAPTURE(name);
    const CompilerDef& def = c.reg.compiler(name);
    std::string printed =
        print_sexpr_pretty(print_compiler(def, LangView(c.lang(def.target))));
    Loader fresh;
    fresh.reg = c.reg;
    fresh.reg.compilers.erase(name);
    fresh.load_text(printed, "roundtrip");
    CHECK(fresh.reg.compiler(name).ext == def.ext);
  }
}

TEST_CASE("manual proofs parse, check, and stay manual") {
  Corpus& c = corpus();
  const auto& proofs = c.reg.proofs_for("cc_rec");
  REQUIRE(proofs.count("fixc-subst"));
  // the recursion extension has exactly one manual entry, the eta step
  DischargeReport rep = c.discharge_pass("cc_rec");
  CHECK(rep.manual_names() == std::vector<Name>{"fixc-subst"});
}

TEST_CASE("cps demos") {
  Corpus& c = corpus();
  Ctx closed;
  const Lang& sb = c.lang("stlc_bool");
  Sort want = elaborate_sort(LangView(sb), closed,
                             parse_surface_sort(parse_sexpr("(exp (emp) bool)")));
  Term rt = elaborate(LangView(sb), closed, parse_surface(parse_sexpr("(ret (true))")), want);
  Term rf = elaborate(LangView(sb), closed, parse_surface(parse_sexpr("(ret (false))")), want);

  auto [nt, bt] = demo_cps_cross(c, rt);
  auto [nf, bf] = demo_cps_cross(c, rf);
  CHECK(bt.head == "true");
  CHECK(bf.head == "false");
  // k (nv 1) and k (nv 0)
  CHECK(nt.args.at(3).args.at(1) == Term::con("s", {Term::con("z")}));
  CHECK(nf.args.at(3).args.at(1) == Term::con("z"));

  // a beta redex normalizes in the source first and the compiled value matches
  Term prog = elaborate(LangView(sb), closed,
                        parse_surface(parse_sexpr("(app (ret (lam bool (ret vz))) (ret (true)))")),
                        want);
  auto [np, bp] = demo_cps_cross(c, prog);
  CHECK(bp.head == "true");
  CHECK(np.args.at(3).args.at(1) == Term::con("s", {Term::con("z")}));
}

TEST_CASE("operational bridge demo") {
  Corpus& c = corpus();
  Ctx closed;
  const Lang& src = c.lang("source_full");
  Sort bools = elaborate_sort(LangView(src), closed,
                              parse_surface_sort(parse_sexpr("(exp (emp) bool)")));
  Term rt = elaborate(LangView(src), closed, parse_surface(parse_sexpr("(ret (true))")), bools);
  CHECK(demo_op_bridge(c, rt));

  Sort nats = elaborate_sort(LangView(src), closed,
                             parse_surface_sort(parse_sexpr("(exp (emp) natty)")));
  Term arith = elaborate(
      LangView(src), closed,
      parse_surface(parse_sexpr("(eadd (ret (nv (s (s (z))))) (eadd (ret (nv (s (z)))) (ret (nv (z)))))")),
      nats);
  CHECK(demo_op_bridge(c, arith));

  // a diverging program exhausts fuel; the bridge makes no claim
  Term diverge = elaborate(
      LangView(src), closed,
      parse_surface(parse_sexpr(
          "(app (ret (efix bool (app (ret (vsub vz (wk))) (ret vz)))) (ret (false)))")),
      bools);
  CHECK_THROWS_WITH_AS(demo_op_bridge(c, diverge), "FuelExhausted", Error);
}

TEST_CASE("pipeline demo and IMP linking") {
  Corpus& c = corpus();
  Ctx closed;
  const Lang& src = c.lang("source_full");
  Sort want = elaborate_sort(LangView(src), closed,
                             parse_surface_sort(parse_sexpr("(exp (emp) bool)")));
  Term rt = elaborate(LangView(src), closed, parse_surface(parse_sexpr("(ret (true))")), want);
  Term out = demo_pipeline(c, rt);
  CHECK_FALSE(out.is_var());

  // IMP skip compiles to the continuation applied to the unit value
  const Lang& imp = c.lang("imp");
  Term skipt = elaborate(LangView(imp), closed, parse_surface(parse_sexpr("(skip)")),
                         Sort("stmt"));
  Term nf = demo_imp(c, skipt);
  REQUIRE(nf.head == "jmp");
  CHECK(nf.args.at(2).head == "vz");
  CHECK(nf.args.at(3).head == "one");

  // linking smoke test: run a compiled IMP statement, then hand control to a
  // compiled functional program, all inside the shared target
  Term imp_stmt = elaborate(LangView(imp), closed,
                            parse_surface(parse_sexpr("(assign (z) (lit (s (z))))")),
                            Sort("stmt"));
  Term compiled_stmt = compile(c.pass("imp_cmp").full, imp_stmt);
  Term fun_prog = demo_pipeline(c, rt);
  const Lang& tgt = c.lang("closure_full");
  Ctx link_ctx;
  link_ctx.push("st", infer_sort(LangView(tgt), closed, compiled_stmt));
  link_ctx.push("fp", infer_sort(LangView(tgt), closed, fun_prog));
  Sort linked_sort = elaborate_sort(LangView(tgt), closed,
                                    parse_surface_sort(parse_sexpr("(blk (ext (emp) (neg natty)))")));
  Term glue = elaborate(
      LangView(tgt), link_ctx,
      parse_surface(parse_sexpr("(bsub st (snoc (wk) (clo (neg natty) unit "
                                "(bsub fp (snoc (wk) (pair (one) (fst (vz))))) (vz))))")),
      linked_sort);
  MetaSubst fill;
  fill.set("st", compiled_stmt);
  fill.set("fp", fun_prog);
  Term linked = apply_subst(fill, glue);
  WfReport rep = check_term(LangView(tgt), closed, linked, linked_sort);
  CHECK(rep.ok);
  // and it runs: the statement stores 1 at location 0, then the functional
  // program delivers its boolean-as-natural to the final continuation
  Term conf = Term::con("tcfg", {linked_sort.args.at(0), Term::con("hempty"), linked});
  RewriteResult run = normalize(LangView(tgt), closed, conf, RewriteConfig::defaults());
  CHECK_FALSE(run.fuel_exhausted);
}

TEST_CASE("infer_sort agrees with check_term on every corpus equation side") {
  Corpus& c = corpus();
  for (const char* name : {"source_full", "cont_full", "closure_full", "imp", "nat_vec"}) {
    const Lang& L = c.lang(name);
    for (const auto& [rn, r] : L.rules) {
      if (r.kind != Rule::Kind::TermEq) continue;
      CAPTURE(name);
      CAPTURE(rn);
      for (const Term* side : {&r.lhs, &r.rhs}) {
        Sort s = infer_sort(LangView(L), r.ctx, *side);
        CHECK(check_term(LangView(L), r.ctx, *side, s).ok);
      }
    }
  }
}

TEST_CASE("no pass collapses its distinguished programs") {
  Corpus& c = corpus();
  RewriteConfig cfg = RewriteConfig::defaults();
  const Lang& src = c.lang("source_full");
  Ctx closed;
  Sort bools = elaborate_sort(LangView(src), closed,
                              parse_surface_sort(parse_sexpr("(exp (emp) bool)")));
  Term rt = elaborate(LangView(src), closed, parse_surface(parse_sexpr("(ret (true))")), bools);
  Term rf = elaborate(LangView(src), closed, parse_surface(parse_sexpr("(ret (false))")), bools);
  CHECK(nontriviality_check(c.pass("cps_heap").full, c.lang("cont_full"), rt, rf, cfg));
  Compiler pipeline = vcompose(c.pass("cc_heapblk").full, c.pass("cps_heap").full);
  CHECK(nontriviality_check(pipeline, c.lang("closure_full"), rt, rf, cfg));
  const Lang& imp = c.lang("imp");
  Term l0 = elaborate(LangView(imp), closed, parse_surface(parse_sexpr("(lit (z))")),
                      Sort("aexp"));
  Term l1 = elaborate(LangView(imp), closed, parse_surface(parse_sexpr("(lit (s (z)))")),
                      Sort("aexp"));
  CHECK(nontriviality_check(c.pass("imp_cmp").full, c.lang("closure_full"), l0, l1, cfg));
}

TEST_CASE("independent extensions reorder freely under subset") {
  Corpus& c = corpus();
  // booleans and functions both extend substitution; neither depends on the
  // other, so the bool-only stack embeds in the combined one
  CHECK(lang_subset(c.lang("subst_bool"), c.lang("stlc_bool")));
  CHECK(lang_subset(c.lang("stlc"), c.lang("stlc_bool")));
  CHECK_FALSE(lang_subset(c.lang("stlc_bool"), c.lang("stlc")));
}

TEST_CASE("application infers its context and types from the arguments") {
  Corpus& c = corpus();
  const Lang& L = c.lang("stlc");
  Ctx ctx;
  ctx.push("G", Sort("ctx"));
  ctx.push("A", Sort("ty"));
  ctx.push("B", Sort("ty"));
  ctx.push("e", Sort("exp", {Term::var("G"), Term::con("arr", {Term::var("A"), Term::var("B")})}));
  ctx.push("e2", Sort("exp", {Term::var("G"), Term::var("A")}));
  // only e and e2 are written; G, A and B are implicit
  Term t = elaborate(LangView(L), ctx, parse_surface(parse_sexpr("(app e e2)")), std::nullopt);
  CHECK(t == Term::con("app", {Term::var("G"), Term::var("A"), Term::var("B"), Term::var("e"),
                               Term::var("e2")}));
}
