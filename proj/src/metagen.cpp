#include "gat/metagen.hpp"

#include <algorithm>
#include <functional>

#include "gat/kernel.hpp"

namespace gat {

namespace {

[[noreturn]] void merr(MetagenError::Code c, const std::string& msg) {
  throw MetagenError(c, msg);
}

// A substitution action for sort S: a term rule of shape
//   (G ctx) (D ctx) [indices...] (t : S G idx...) (g : sub D G) -> S D idx...
// with explicit args (t, g).
struct SubstForm {
  Name former;       // e.g. vsub, esub, bsub
  const Rule* rule;
  Name t_entry, g_entry;
  Name sub_sort;     // e.g. sub
  Name ctx_sort;     // e.g. ctx
};

std::map<Name, SubstForm> find_subst_forms(const Lang& L) {
  std::map<Name, SubstForm> out;
  for (const auto& [name, r] : L.rules) {
    if (r.kind != Rule::Kind::Term || r.explicit_args.size() != 2) continue;
    const Sort* ts = r.ctx.find(r.explicit_args[0]);
    const Sort* gs = r.ctx.find(r.explicit_args[1]);
    if (!ts || !gs) continue;
    if (gs->args.size() != 2 || !gs->args[0].is_var() || !gs->args[1].is_var()) continue;
    Name D = gs->args[0].head, G = gs->args[1].head;
    if (ts->args.empty() || !ts->args[0].is_var() || ts->args[0].head != G) continue;
    if (r.sort.head != ts->head || r.sort.args.size() != ts->args.size()) continue;
    if (!r.sort.args[0].is_var() || r.sort.args[0].head != D) continue;
    bool indices_match = true;
    for (size_t i = 1; i < ts->args.size(); ++i)
      if (!(r.sort.args[i] == ts->args[i])) indices_match = false;
    if (!indices_match) continue;
    const Sort* gdecl = r.ctx.find(G);
    if (!gdecl) continue;
    out.emplace(ts->head, SubstForm{name, &r, r.explicit_args[0], r.explicit_args[1], gs->head,
                                    gdecl->head});
  }
  return out;
}

Name fresh_name(const Ctx& c, std::string base) {
  while (c.contains(base)) base += "'";
  return base;
}

// Unifies the pattern sort (with the given variables solvable) against the
// concrete sort, collecting bindings for the variables it determines.
bool solve_sort(const Sort& pattern, const std::vector<Name>& solvable, const Sort& concrete,
                std::map<Name, Term>& out) {
  MetaSubst ren;
  for (const Name& x : solvable) ren.set(x, Term::var("?" + x));
  MetaSubst sol;
  if (!unify_sorts(apply_subst(ren, pattern), concrete, sol)) return false;
  for (const Name& x : solvable)
    if (const Term* v = sol.find("?" + x)) out[x] = resolve_meta(sol, *v);
  return true;
}

// Full application of a subst action: former(t, g) with all implicit
// arguments computed from t's sort.
Term apply_form(const SubstForm& f, const Sort& t_sort, const Term& t, const Term& g,
                const Term& target_ctx) {
  std::vector<Name> solvable;
  for (const auto& [x, s] : f.rule->ctx.entries)
    if (x != f.t_entry && x != f.g_entry) solvable.push_back(x);
  const Sort* decl = f.rule->ctx.find(f.t_entry);
  std::map<Name, Term> bind;
  if (!solve_sort(*decl, solvable, t_sort, bind))
    merr(MetagenError::Code::NotASubstLanguage,
         "cannot instantiate " + f.former + " at " + show(t_sort));
  // the D side comes from the target context
  const Sort* gdecl = f.rule->ctx.find(f.g_entry);
  bind[gdecl->args[0].head] = target_ctx;
  bind[f.t_entry] = t;
  bind[f.g_entry] = g;
  std::vector<Term> args;
  for (const auto& [x, s] : f.rule->ctx.entries) {
    auto it = bind.find(x);
    if (it == bind.end())
      merr(MetagenError::Code::NotASubstLanguage, f.former + ": unsolved argument " + x);
    args.push_back(it->second);
  }
  return Term::con(f.former, std::move(args));
}

}  // namespace

std::vector<std::pair<Name, Rule>> gen_subst_eqs(const Lang& L, const Name& rule_name,
                                                 const SubstCalculusNames& names) {
  const Rule* c = L.find(rule_name);
  if (!c || c->kind != Rule::Kind::Term)
    merr(MetagenError::Code::BadSpec, "gen_subst_eqs: " + rule_name + " is not a term rule");
  for (const Name& n : {names.ext, names.snoc, names.cmp, names.wk, names.vz})
    if (!L.find(n))
      merr(MetagenError::Code::NotASubstLanguage, "missing calculus constructor " + n);
  auto forms = find_subst_forms(L);
  auto fit = forms.find(c->sort.head);
  if (fit == forms.end())
    merr(MetagenError::Code::NotASubstLanguage,
         "no substitution action for sort " + c->sort.head);
  const SubstForm& form = fit->second;
  if (c->sort.args.empty() || !c->sort.args[0].is_var())
    merr(MetagenError::Code::BadSpec, rule_name + " has no distinguished context metavariable");
  Name G = c->sort.args[0].head;
  for (size_t i = 1; i < c->sort.args.size(); ++i)
    if (mentions_var(c->sort.args[i], G))
      merr(MetagenError::Code::NotASubstLanguage, rule_name + ": dependent result index");

  Ctx nctx = c->ctx;
  Name D = fresh_name(nctx, "D");
  nctx.push(D, Sort(form.ctx_sort));
  Name g = fresh_name(nctx, "g");
  nctx.push(g, Sort(form.sub_sort, {Term::var(D), Term::var(G)}));

  // LHS: former(c(x1..xn), g) at the constructor's own sort
  std::vector<Term> cargs;
  for (const auto& [x, s] : c->ctx.entries) cargs.push_back(Term::var(x));
  Term lhs = apply_form(form, c->sort, Term::con(rule_name, cargs), Term::var(g), Term::var(D));

  // RHS: c with every substitutable argument receiving the (lifted) action
  std::vector<Term> rargs;
  for (const auto& [x, s] : c->ctx.entries) {
    if (x == G) {
      rargs.push_back(Term::var(D));
      continue;
    }
    auto sit = forms.find(s.head);
    if (sit == forms.end()) {
      if (mentions_var(s, G))
        merr(MetagenError::Code::NotASubstLanguage,
             rule_name + ": argument " + x + " mentions the context but is not substitutable");
      rargs.push_back(Term::var(x));
      continue;
    }
    // peel the extension chain rooted at G
    std::vector<Term> binder_tys;
    Term ctx_term = s.args.at(0);
    while (!ctx_term.is_var() && ctx_term.head == names.ext && ctx_term.args.size() == 2) {
      binder_tys.push_back(ctx_term.args[1]);
      Term inner = ctx_term.args[0];
      ctx_term = std::move(inner);
    }
    if (!(ctx_term == Term::var(G))) {
      if (mentions_var(s, G))
        merr(MetagenError::Code::NotASubstLanguage,
             rule_name + ": argument " + x + " lives in an irregular context");
      rargs.push_back(Term::var(x));  // closed elsewhere; substitution passes it through
      continue;
    }
    std::reverse(binder_tys.begin(), binder_tys.end());  // outermost extension first
    for (const Term& ty : binder_tys)
      if (mentions_var(ty, G))
        merr(MetagenError::Code::NotASubstLanguage,
             rule_name + ": dependent binder type in argument " + x);
    // build the k-fold lift of g
    Term sigma = Term::var(g);
    Term src = Term::var(G);   // context the argument expects
    Term dst = Term::var(D);   // context it will live in
    for (const Term& ty : binder_tys) {
      Term wk = Term::con(names.wk, {dst, ty});
      Term lifted = Term::con(names.cmp, {src, dst, Term::con(names.ext, {dst, ty}), sigma, wk});
      Term vz = Term::con(names.vz, {dst, ty});
      sigma = Term::con(names.snoc,
                        {src, Term::con(names.ext, {dst, ty}), ty, lifted, vz});
      src = Term::con(names.ext, {src, ty});
      dst = Term::con(names.ext, {dst, ty});
    }
    const SubstForm& af = sit->second;
    rargs.push_back(apply_form(af, s, Term::var(x), sigma, dst));
  }
  std::vector<Term> res_args = c->sort.args;
  res_args[0] = Term::var(D);
  Rule eq = Rule::term_eq_rule(std::move(nctx), std::move(lhs),
                               Term::con(rule_name, std::move(rargs)),
                               Sort(c->sort.head, std::move(res_args)));
  Name eq_name = rule_name + "-subst";
  if (L.find(eq_name))
    merr(MetagenError::Code::NameCollision, "generated name exists: " + eq_name);
  std::vector<std::pair<Name, Rule>> out;
  out.emplace_back(eq_name, std::move(eq));
  return out;
}

Lang gen_eval_ctx(const Lang& L, const EvalCtxSpec& spec) {
  Lang out;
  const Rule* plug = L.find(spec.plug);
  const Rule* ret = L.find(spec.ret);
  if (!L.find(spec.ectx_sort) || !plug || !L.find(spec.hole) || !ret)
    merr(MetagenError::Code::BadSpec, "evaluation-context core extension is absent");
  if (plug->ctx.size() != 5)
    merr(MetagenError::Code::BadSpec, "unexpected plug rule shape");
  // plug : (G ctx) (A ty) (B ty) (E ectx G A B) (e exp G A) -> exp G B
  Name exp_sort = plug->sort.head;
  Name val_sort = ret->ctx.entries.back().second.head;
  Sort ty_sort = plug->ctx.entries[1].second;
  for (const EvalCtxEntry& ent : spec.entries) {
    const Rule* base = L.find(ent.base);
    if (!base || base->kind != Rule::Kind::Term)
      merr(MetagenError::Code::BadSpec, "bad base constructor " + ent.base);
    if (ent.slots.size() != base->explicit_args.size())
      merr(MetagenError::Code::BadSpec,
           ent.name + ": one slot kind per explicit argument of " + ent.base);
    size_t holes = std::count(ent.slots.begin(), ent.slots.end(), SlotKind::Hole);
    if (holes != 1)
      merr(MetagenError::Code::BadSpec, ent.name + ": exactly one hole slot required");
    if (base->sort.head != exp_sort || base->sort.args.size() != 2 ||
        !base->sort.args[0].is_var())
      merr(MetagenError::Code::BadSpec, ent.base + " is not an expression constructor");
    Name G = base->sort.args[0].head;
    Term res_ty = base->sort.args[1];

    Ctx fctx;
    Name Ah;
    {
      // insert the hole type right after the distinguished context entry
      Ah = fresh_name(base->ctx, "Ah");
      for (const auto& [x, s] : base->ctx.entries) {
        fctx.push(x, s);
        if (x == G) fctx.push(Ah, ty_sort);
      }
    }
    Name hole_entry;
    for (size_t i = 0; i < ent.slots.size(); ++i) {
      const Name& arg = base->explicit_args[i];
      Sort* slot_sort = nullptr;
      for (auto& [x, s] : fctx.entries)
        if (x == arg) slot_sort = &s;
      if (!slot_sort || slot_sort->head != exp_sort || slot_sort->args.size() != 2)
        merr(MetagenError::Code::BadSpec,
             ent.name + ": slot " + arg + " is not expression-sorted");
      switch (ent.slots[i]) {
        case SlotKind::Hole:
          hole_entry = arg;
          *slot_sort = Sort(spec.ectx_sort,
                            {slot_sort->args[0], Term::var(Ah), slot_sort->args[1]});
          break;
        case SlotKind::Value:
          *slot_sort = Sort(val_sort, slot_sort->args);
          break;
        case SlotKind::Expr:
          break;
      }
    }
    Rule former = Rule::term_rule(
        fctx, base->explicit_args,
        Sort(spec.ectx_sort, {Term::var(G), Term::var(Ah), res_ty}));
    out.push(ent.name, former);

    // plug equation: plug(former(...), eh) = base(... plug(E, eh) ... (ret v) ...)
    Ctx ectx = fctx;
    Name eh = fresh_name(ectx, "eh");
    ectx.push(eh, Sort(exp_sort, {Term::var(G), Term::var(Ah)}));
    std::vector<Term> fargs;
    for (const auto& [x, s] : fctx.entries) fargs.push_back(Term::var(x));
    Term lhs = Term::con(spec.plug, {Term::var(G), Term::var(Ah), res_ty,
                                     Term::con(ent.name, fargs), Term::var(eh)});
    std::vector<Term> bargs;
    for (const auto& [x, s] : base->ctx.entries) {
      if (x == hole_entry) {
        const Sort* es = fctx.find(x);
        bargs.push_back(Term::con(spec.plug, {Term::var(G), Term::var(Ah), es->args[2],
                                              Term::var(x), Term::var(eh)}));
      } else {
        bool is_value = false;
        for (size_t i = 0; i < ent.slots.size(); ++i)
          if (base->explicit_args[i] == x && ent.slots[i] == SlotKind::Value) is_value = true;
        if (is_value) {
          const Sort* vs = fctx.find(x);
          bargs.push_back(Term::con(spec.ret, {Term::var(G), vs->args[1], Term::var(x)}));
        } else {
          bargs.push_back(Term::var(x));
        }
      }
    }
    Rule eq = Rule::term_eq_rule(ectx, lhs, Term::con(ent.base, bargs),
                                 Sort(exp_sort, {Term::var(G), res_ty}));
    out.push("plug-" + ent.name, eq);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parameterization

static bool rule_mentions_marked(const Rule& r, const std::set<Name>& marked, Name* which) {
  auto hit = [&](const Name& h) {
    if (marked.count(h)) {
      if (which) *which = h;
      return true;
    }
    return false;
  };
  std::vector<const Term*> terms;
  std::vector<const Sort*> sorts;
  for (const auto& [x, s] : r.ctx.entries) sorts.push_back(&s);
  sorts.push_back(&r.sort);
  sorts.push_back(&r.lhs_sort);
  sorts.push_back(&r.rhs_sort);
  terms.push_back(&r.lhs);
  terms.push_back(&r.rhs);
  std::function<bool(const Term&)> tgo = [&](const Term& t) -> bool {
    if (!t.is_var() && hit(t.head)) return true;
    for (const Term& a : t.args)
      if (tgo(a)) return true;
    return false;
  };
  for (const Sort* s : sorts) {
    if (hit(s->head)) return true;
    for (const Term& a : s->args)
      if (tgo(a)) return true;
  }
  for (const Term* t : terms)
    if (tgo(*t)) return true;
  return false;
}

WfReport param_checks(const ParamSpec& spec, const Lang& L) {
  WfReport rep;
  for (const Name& m : spec.marked)
    if (!L.find(m)) rep.fail(m, "marked rule is not in the language");
  for (const auto& [rule, pos] : spec.insert_at) {
    const Rule* r = L.find(rule);
    if (r && pos > r->ctx.size())
      rep.fail(rule, "insertion position " + std::to_string(pos) + " out of range");
  }
  for (const auto& [name, r] : L.rules) {
    if (spec.marked.count(name)) continue;
    Name which;
    if (rule_mentions_marked(r, spec.marked, &which))
      rep.fail(name, "unmarked rule depends on marked head " + which);
  }
  return rep;
}

Term param_term(const ParamSpec& spec, const Term& t, const Name& ambient) {
  if (t.is_var()) return t;
  std::vector<Term> args;
  args.reserve(t.args.size() + 1);
  for (const Term& a : t.args) args.push_back(param_term(spec, a, ambient));
  if (spec.marked.count(t.head)) {
    size_t pos = spec.position_of(t.head);
    args.insert(args.begin() + std::min(pos, args.size()), Term::var(ambient));
  }
  return Term::con(t.head, std::move(args));
}

Sort param_sort_tf(const ParamSpec& spec, const Sort& s, const Name& ambient) {
  std::vector<Term> args;
  args.reserve(s.args.size() + 1);
  for (const Term& a : s.args) args.push_back(param_term(spec, a, ambient));
  if (spec.marked.count(s.head)) {
    size_t pos = spec.position_of(s.head);
    args.insert(args.begin() + std::min(pos, args.size()), Term::var(ambient));
  }
  return Sort(s.head, std::move(args));
}

Lang parameterize_lang(const ParamSpec& spec, const Lang& L) {
  WfReport checks = param_checks(spec, L);
  if (!checks.ok)
    merr(MetagenError::Code::ChecksFailed,
         "ChecksFailed: " + checks.diagnostics.front().where + ": " +
             checks.diagnostics.front().message);
  Lang out;
  for (const auto& [name, r] : L.rules) {
    if (!spec.marked.count(name)) {
      out.push(name, r);
      continue;
    }
    if (r.ctx.contains(spec.param_name))
      merr(MetagenError::Code::NameCollision,
           name + " already declares " + spec.param_name);
    Rule nr = r;
    Ctx nctx;
    size_t pos = std::min(spec.position_of(name), r.ctx.size());
    for (size_t i = 0; i <= r.ctx.size(); ++i) {
      if (i == pos) nctx.push(spec.param_name, spec.param_sort);
      if (i < r.ctx.size())
        nctx.push(r.ctx.entries[i].first,
                  param_sort_tf(spec, r.ctx.entries[i].second, spec.param_name));
    }
    nr.ctx = std::move(nctx);
    nr.sort = param_sort_tf(spec, r.sort, spec.param_name);
    nr.lhs = param_term(spec, r.lhs, spec.param_name);
    nr.rhs = param_term(spec, r.rhs, spec.param_name);
    nr.lhs_sort = param_sort_tf(spec, r.lhs_sort, spec.param_name);
    nr.rhs_sort = param_sort_tf(spec, r.rhs_sort, spec.param_name);
    out.push(name, std::move(nr));
  }
  return out;
}

Compiler parameterize_compiler(const ParamSpec& spec_s, const ParamSpec& spec_t,
                               const Compiler& cmp) {
  Compiler out;
  for (const auto& [name, c] : cmp.cases) {
    CompilerCase nc = c;
    if (spec_s.marked.count(name)) {
      size_t pos = std::min(spec_s.position_of(name), c.params.size());
      nc.params.insert(nc.params.begin() + pos, spec_s.param_name);
      if (c.is_sort_case)
        nc.out_sort = param_sort_tf(spec_t, c.out_sort, spec_s.param_name);
      else
        nc.out_term = param_term(spec_t, c.out_term, spec_s.param_name);
    }
    out.push(name, std::move(nc));
  }
  return out;
}

}  // namespace gat
