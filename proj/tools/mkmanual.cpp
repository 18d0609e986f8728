// Builds the manual proof files for the obligations the rewriting engine
// cannot join on its own. Each is an eta-style bridge: normalize both sides,
// expand the stuck node backwards through a designated eta axiom, and let
// normalization close the gap. The resulting trees are checked before they
// are written.

#include <fstream>
#include <iostream>

#include "gat/dsl.hpp"
#include "gat/kernel.hpp"

using namespace gat;

namespace {

// Solves an instance of an eta axiom (an equation whose right side is a bare
// metavariable) mapping that metavariable to `subject`.
std::optional<MetaSubst> eta_instance(LangView L, const Ctx& C, const Rule& rule,
                                      const Term& subject) {
  if (!rule.rhs.is_var()) return std::nullopt;
  const Name& v = rule.rhs.head;
  Sort got;
  try {
    got = infer_sort(L, C, subject, CheckOpts::strict());
  } catch (const Error&) {
    return std::nullopt;
  }
  MetaSubst ren;
  for (const auto& [x, s] : rule.ctx.entries)
    if (x != v) ren.set(x, Term::var("?" + x));
  MetaSubst sol;
  if (!unify_sorts(apply_subst(ren, *rule.ctx.find(v)), got, sol)) return std::nullopt;
  MetaSubst inst;
  inst.set(v, subject);
  for (const auto& [x, s] : rule.ctx.entries) {
    if (x == v) continue;
    const Term* b = sol.find("?" + x);
    if (!b) return std::nullopt;
    inst.set(x, resolve_meta(sol, *b));
  }
  return inst;
}

struct Bridger {
  LangView L;
  const Ctx& C;
  std::vector<Name> etas;
  RewriteConfig cfg = RewriteConfig::defaults();

  EqProof bridge(const Term& l, const Term& r) {
    if (l == r) return EqProof::refl(l);
    for (const Name& name : etas) {
      const Rule* rule = L.find(name);
      if (!rule || rule->kind != Rule::Kind::TermEq) continue;
      auto inst = eta_instance(L, C, *rule, l);
      if (!inst) continue;
      Term expanded = apply_subst(*inst, rule->lhs);
      if (auto p = join(L, C, expanded, r)) {
        EqProof ax = EqProof::axiom(name, *inst);  // expanded = l
        return EqProof::trans(EqProof::sym(std::move(ax)), std::move(*p));
      }
    }
    if (!l.is_var() && !r.is_var() && l.head == r.head && l.args.size() == r.args.size()) {
      std::vector<EqProof> kids;
      for (size_t i = 0; i < l.args.size(); ++i) kids.push_back(bridge(l.args[i], r.args[i]));
      return EqProof::cong(l.head, std::move(kids));
    }
    throw Error("no bridge between " + show(l) + " and " + show(r));
  }

  std::optional<EqProof> join(LangView L2, const Ctx& C2, const Term& a, const Term& b) {
    return gat::join(L2, C2, a, b, cfg);
  }

  EqProof prove(const Term& lhs, const Term& rhs) {
    RewriteResult ra = normalize(L, C, lhs, cfg);
    RewriteResult rb = normalize(L, C, rhs, cfg);
    EqProof mid = bridge(ra.normal_form, rb.normal_form);
    return EqProof::trans(ra.certificate,
                          EqProof::trans(std::move(mid), EqProof::sym(rb.certificate)));
  }
};

}  // namespace

int main(int argc, char** argv) {
  std::string dir = argc > 1 ? argv[1] : "corpus";
  Loader l;
  for (const char* f :
       {"value_subst.gat", "subst.gat", "stlc.gat", "bool.gat", "num.gat", "natv.gat",
        "unitv.gat", "natarith.gat", "rec.gat", "evalctx.gat", "heap.gat", "heap_src.gat",
        "stacks_source.gat", "cont.gat", "if0.gat", "arithv.gat", "cont_rec.gat",
        "heap_blk.gat", "stacks_cont.gat", "closure.gat", "stacks_closure.gat", "cps.gat",
        "cc.gat"})
    l.load_file(dir + "/" + f);
  Registry& reg = l.reg;

  struct Job {
    const char* pass;
    const char* rule;
  };
  const Job jobs[] = {
      {"cc_base", "cont-subst"},
      {"cc_rec", "fixc-subst"},
      {"cc_heapblk", "bget-subst"},
  };

  std::map<std::string, std::vector<Sexpr>> files;
  for (const Job& job : jobs) {
    const CompilerDef& d = reg.compiler(job.pass);
    const Lang& src = d.domain_full ? reg.lang(d.source).full : reg.lang(d.source).ext;
    Compiler pre;
    if (!d.pre.empty()) pre = reg.compiler(d.pre).full;
    auto obls = obligations(pre, d.ext, reg.lang(d.target).full, src);
    const Obligation* ob = nullptr;
    for (const Obligation& o : obls)
      if (o.source_rule == job.rule) ob = &o;
    if (!ob || ob->kind != Obligation::Kind::TermEq) {
      std::cerr << job.pass << "/" << job.rule << ": no such equation obligation\n";
      return 1;
    }
    const Lang& tgt = reg.lang(d.target).full;
    Bridger br{LangView(tgt), ob->target_ctx, {"clo-eta", "snoc-eta", "pair-eta"}};
    try {
      EqProof p = br.prove(ob->lhs, ob->rhs);
      Equation eq = check_eq(LangView(tgt), ob->target_ctx, p);
      if (!(eq.lhs == ob->lhs && eq.rhs == ob->rhs && eq.sort == ob->sort))
        throw Error("endpoints drifted");
      files[job.pass].push_back(
          Sexpr::list({Sexpr::symbol("proof"), Sexpr::symbol(job.rule), print_proof(p)}));
      std::cout << job.pass << "/" << job.rule << ": proof built ("
                << print_sexpr(print_proof(p)).size() << " bytes)\n";
    } catch (const Error& e) {
      std::cerr << job.pass << "/" << job.rule << ": FAILED: " << e.what() << "\n";
      return 1;
    }
  }

  std::ofstream out(dir + "/proofs/cc.gatpf");
  out << "; Manual proofs for the closure-conversion obligations that need an\n"
         "; eta step; built by gatforge-mkmanual and checked on load.\n";
  for (const auto& [pass, proofs] : files) {
    std::vector<Sexpr> items{Sexpr::symbol("proofs"), Sexpr::symbol(pass)};
    for (const Sexpr& p : proofs) items.push_back(p);
    out << print_sexpr_pretty(Sexpr::list(std::move(items))) << "\n";
  }
  std::cout << "wrote " << dir << "/proofs/cc.gatpf\n";
  return 0;
}
