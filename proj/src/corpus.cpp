#include "gat/corpus.hpp"

#include <filesystem>

#include "gat/kernel.hpp"

namespace gat {

namespace {

// Dependency order; later files refer to earlier blocks.
const char* kCorpusFiles[] = {
    "nat.gat",        "nat_vec.gat",  "value_subst.gat", "subst.gat",
    "stlc.gat",       "bool.gat",     "num.gat",         "natv.gat",
    "unitv.gat",      "natarith.gat", "rec.gat",         "evalctx.gat",
    "heap.gat",       "heap_src.gat", "stacks_source.gat",
    "cont.gat",       "if0.gat",      "arithv.gat",      "cont_rec.gat",
    "heap_blk.gat",   "stacks_cont.gat",
    "closure.gat",    "stacks_closure.gat",
    "imp.gat",        "tenv.gat",
    "cps.gat",        "cc.gat",
    "proofs/cc.gatpf",
    "imp_cmp.gat",    "fixtures.gat",
};

CorpusEntry L(const char* name, const char* file) {
  CorpusEntry e;
  e.kind = CorpusEntry::Kind::Language;
  e.name = name;
  e.file = file;
  e.expect = "wf-ok";
  return e;
}

CorpusEntry P(const char* name, const char* file, std::vector<Name> manual = {}) {
  CorpusEntry e;
  e.kind = CorpusEntry::Kind::CompilerPass;
  e.name = name;
  e.file = file;
  e.expect = manual.empty() ? "discharge-clean" : "discharge-manual";
  e.manual = std::move(manual);
  return e;
}

}  // namespace

std::vector<Obligation> Corpus::pass_obligations(const Name& cmp) const {
  const CompilerDef& d = reg.compiler(cmp);
  const Lang& src = d.domain_full ? reg.lang(d.source).full : reg.lang(d.source).ext;
  Compiler pre;
  if (!d.pre.empty()) pre = reg.compiler(d.pre).full;
  return obligations(pre, d.ext, lang(d.target), src);
}

DischargeReport Corpus::discharge_pass(const Name& cmp, int jobs) const {
  const CompilerDef& d = reg.compiler(cmp);
  return discharge(pass_obligations(cmp), lang(d.target), reg.proofs_for(cmp),
                   RewriteConfig::defaults(), jobs);
}

Corpus load_corpus(const std::string& dir) {
  Corpus c;
  c.dir = dir;
  Loader loader;
  for (const char* f : kCorpusFiles) {
    std::string path = dir + "/" + f;
    if (!std::filesystem::exists(path)) throw Error("corpus file missing: " + path);
    loader.load_file(path);
  }
  c.reg = std::move(loader.reg);
  c.entries = {
      L("nat", "nat.gat"),
      L("nat_vec", "nat_vec.gat"),
      L("value_subst", "value_subst.gat"),
      L("subst", "subst.gat"),
      L("stlc", "stlc.gat"),
      L("subst_bool", "bool.gat"),
      L("num", "num.gat"),
      L("natv", "natv.gat"),
      L("unitv", "unitv.gat"),
      L("natarith", "natarith.gat"),
      L("rec", "rec.gat"),
      L("evalctx", "evalctx.gat"),
      L("heap", "heap.gat"),
      L("heap_src", "heap_src.gat"),
      L("stlc_bool", "stacks_source.gat"),
      L("source_full", "stacks_source.gat"),
      L("cont", "cont.gat"),
      L("if0x", "if0.gat"),
      L("arithv", "arithv.gat"),
      L("cont_rec", "cont_rec.gat"),
      L("heap_blk", "heap_blk.gat"),
      L("cont_nat", "stacks_cont.gat"),
      L("cont_arith", "stacks_cont.gat"),
      L("cont_heap", "stacks_cont.gat"),
      L("cont_full", "stacks_cont.gat"),
      L("closure", "closure.gat"),
      L("closure_full", "stacks_closure.gat"),
      L("imp", "imp.gat"),
      L("tenv_gat", "tenv.gat"),
      L("bool_asym", "fixtures.gat"),
      L("unit_eta", "fixtures.gat"),
      P("cps_subst", "cps.gat"),
      P("cps_stlc", "cps.gat"),
      P("cps_bool", "cps.gat"),
      P("cps_num", "cps.gat"),
      P("cps_natv", "cps.gat"),
      P("cps_unit", "cps.gat"),
      P("cps_arith", "cps.gat"),
      P("cps_rec", "cps.gat"),
      P("cps_evalctx", "cps.gat"),
      P("cps_heapcore", "cps.gat"),
      P("cps_heap", "cps.gat"),
      P("cc_base", "cc.gat", {"cont-subst"}),
      P("cc_num", "cc.gat"),
      P("cc_natv", "cc.gat"),
      P("cc_unitv", "cc.gat"),
      P("cc_if0", "cc.gat"),
      P("cc_arith", "cc.gat"),
      P("cc_rec", "cc.gat", {"fixc-subst"}),
      P("cc_heapcore", "cc.gat"),
      P("cc_heapblk", "cc.gat", {"bget-subst"}),
      P("imp_num", "imp_cmp.gat"),
      P("imp_cmp", "imp_cmp.gat"),
      P("uc_subst", "fixtures.gat"),
      P("uc_bool", "fixtures.gat"),
  };
  return c;
}

// ---------------------------------------------------------------------------
// Demos

namespace {

// Extracts the source boolean/natural value out of a normal form ret(G, A, v).
const Term* observable_source_value(const Term& nf) {
  if (nf.is_var() || nf.head != "ret" || nf.args.size() != 3) return nullptr;
  const Term& v = nf.args[2];
  if (v.is_var()) return nullptr;
  if (v.head == "true" || v.head == "false" || v.head == "nv") return &v;
  return nullptr;
}

// Extracts the value passed to the continuation variable in jmp(G, A, k, v).
const Term* observable_target_value(const Term& nf) {
  if (nf.is_var() || nf.head != "jmp" || nf.args.size() != 4) return nullptr;
  if (nf.args[2].is_var() || nf.args[2].head != "vz") return nullptr;
  const Term& v = nf.args[3];
  if (v.is_var() || v.head != "nv") return nullptr;
  return &v;
}

Term num_literal(int n) {
  Term t = Term::con("z");
  for (int i = 0; i < n; ++i) t = Term::con("s", {t});
  return t;
}

}  // namespace

bool corpus_value_related(const Term& source_value, const Term& target_value) {
  if (target_value.is_var() || target_value.head != "nv" || target_value.args.size() != 2)
    return false;
  const Term& payload = target_value.args[1];
  if (source_value.head == "true") return payload == num_literal(1);
  if (source_value.head == "false") return payload == num_literal(0);
  if (source_value.head == "nv" && source_value.args.size() == 2)
    return payload == source_value.args[1];
  return false;
}

std::pair<Term, Term> demo_cps_cross(const Corpus& c, const Term& program) {
  RewriteConfig cfg = RewriteConfig::defaults();
  const Lang& src = c.lang("stlc_bool");
  Ctx closed;
  RewriteResult rs = normalize(LangView(src), closed, program, cfg);
  if (rs.fuel_exhausted) throw Error("Stuck: source program ran out of fuel");
  const Term* b = observable_source_value(rs.normal_form);
  if (!b || (b->head != "true" && b->head != "false"))
    throw Error("Stuck: source does not normalize to a boolean return");
  const Compiler& cps = c.pass("cps_bool").full;
  Term compiled = compile(cps, program);
  RewriteResult rt = normalize(LangView(c.lang("cont_nat")), closed, compiled, cfg);
  const Term* n = observable_target_value(rt.normal_form);
  if (!n) throw Error("Stuck: target does not normalize to a continuation call");
  if (!corpus_value_related(*b, *n)) throw Error("value relation violated");
  return {rt.normal_form, *b};
}

bool demo_op_bridge(const Corpus& c, const Term& e) {
  RewriteConfig cfg = RewriteConfig::defaults();
  const Lang& src = c.lang("source_full");
  Ctx closed;
  RewriteResult rs = normalize(LangView(src), closed, e, cfg);
  if (rs.fuel_exhausted) throw Error("FuelExhausted");
  // every operational step is an axiom instance of the source theory
  std::vector<Name> used;
  axiom_names(rs.certificate, used);
  for (const Name& n : used) {
    const Rule* r = src.find(n);
    if (!r || r->kind != Rule::Kind::TermEq) return false;
  }
  const Term* vs = observable_source_value(rs.normal_form);
  if (!vs) throw Error("Stuck: no observable source value");
  const Compiler& cps = c.pass("cps_heap").full;
  Term compiled = compile(cps, e);
  RewriteResult rt = normalize(LangView(c.lang("cont_full")), closed, compiled, cfg);
  if (rt.fuel_exhausted) throw Error("FuelExhausted");
  std::vector<Name> tused;
  axiom_names(rt.certificate, tused);
  const Lang& tgt = c.lang("cont_full");
  for (const Name& n : tused) {
    const Rule* r = tgt.find(n);
    if (!r || r->kind != Rule::Kind::TermEq) return false;
  }
  const Term* vt = observable_target_value(rt.normal_form);
  if (!vt) throw Error("Stuck: no observable target value");
  return corpus_value_related(*vs, *vt);
}

Term demo_pipeline(const Corpus& c, const Term& e) {
  const Compiler& cps = c.pass("cps_heap").full;
  const Compiler& cc = c.pass("cc_heapblk").full;
  Term sequential = compile(cc, compile(cps, e));
  Term composed = compile(vcompose(cc, cps), e);
  if (!(sequential == composed))
    throw Error("composed pipeline disagrees with sequential compilation");
  Ctx closed;
  Sort s = infer_sort(LangView(c.lang("source_full")), closed, e);
  Sort st = compile(cc, compile(cps, s));
  WfReport rep = check_term(LangView(c.lang("closure_full")), closed, composed, st);
  if (!rep.ok) throw Error("pipeline output ill-formed: " + rep.diagnostics.front().message);
  return composed;
}

Term demo_imp(const Corpus& c, const Term& stmt) {
  const Compiler& imp = c.pass("imp_cmp").full;
  Term compiled = compile(imp, stmt);
  Ctx closed;
  RewriteResult r =
      normalize(LangView(c.lang("closure_full")), closed, compiled, RewriteConfig::defaults());
  return r.normal_form;
}

}  // namespace gat
