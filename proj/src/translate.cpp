#include "gat/translate.hpp"

#include <future>

#include "gat/elab.hpp"
#include "gat/kernel.hpp"

namespace gat {

namespace {

[[noreturn]] void terr(TranslateError::Code c, const std::string& msg) {
  throw TranslateError(c, msg);
}

MetaSubst bind_params(const std::vector<Name>& params, const std::vector<Term>& args,
                      const Name& where) {
  if (params.size() != args.size())
    terr(TranslateError::Code::BadCase,
         "case " + where + ": " + std::to_string(params.size()) + " params vs " +
             std::to_string(args.size()) + " args");
  MetaSubst gamma;
  for (size_t i = 0; i < params.size(); ++i) gamma.set(params[i], args[i]);
  return gamma;
}

}  // namespace

Term compile(const Compiler& cmp, const Term& t) {
  if (t.is_var()) return t;
  const CompilerCase* c = cmp.find(t.head);
  if (!c) terr(TranslateError::Code::MissingCase, "MissingCase: " + t.head);
  if (c->is_sort_case) terr(TranslateError::Code::BadCase, t.head + " maps to a sort");
  std::vector<Term> args;
  args.reserve(t.args.size());
  for (const Term& a : t.args) args.push_back(compile(cmp, a));
  return apply_subst(bind_params(c->params, args, t.head), c->out_term);
}

Sort compile(const Compiler& cmp, const Sort& s) {
  const CompilerCase* c = cmp.find(s.head);
  if (!c) terr(TranslateError::Code::MissingCase, "MissingCase: sort " + s.head);
  if (!c->is_sort_case) terr(TranslateError::Code::BadCase, s.head + " maps to a term");
  std::vector<Term> args;
  args.reserve(s.args.size());
  for (const Term& a : s.args) args.push_back(compile(cmp, a));
  return apply_subst(bind_params(c->params, args, s.head), c->out_sort);
}

Ctx compile(const Compiler& cmp, const Ctx& c) {
  Ctx out;
  for (const auto& [n, s] : c.entries) out.push(n, compile(cmp, s));
  return out;
}

MetaSubst compile(const Compiler& cmp, const MetaSubst& gamma) {
  MetaSubst out;
  for (const auto& [n, t] : gamma.map) out.set(n, compile(cmp, t));
  return out;
}

Compiler id_compiler(const Lang& L) {
  Compiler cmp;
  for (const auto& [n, r] : L.rules) {
    if (r.kind == Rule::Kind::TermEq || r.kind == Rule::Kind::SortEq) continue;
    std::vector<Name> params;
    std::vector<Term> vars;
    for (const auto& [x, s] : r.ctx.entries) {
      params.push_back(x);
      vars.push_back(Term::var(x));
    }
    if (r.kind == Rule::Kind::Sort)
      cmp.push(n, CompilerCase::sort_case(std::move(params), Sort(n, std::move(vars))));
    else
      cmp.push(n, CompilerCase::term_case(std::move(params), Term::con(n, std::move(vars))));
  }
  return cmp;
}

Compiler concat_compilers(const Compiler& a, const Compiler& b) {
  Compiler out = a;
  for (const auto& [n, c] : b.cases) out.push(n, c);
  return out;
}

Compiler vcompose(const Compiler& g, const Compiler& f) {
  Compiler out;
  for (const auto& [n, c] : f.cases) {
    CompilerCase nc = c;
    if (c.is_sort_case)
      nc.out_sort = compile(g, c.out_sort);
    else
      nc.out_term = compile(g, c.out_term);
    out.push(n, std::move(nc));
  }
  return out;
}

std::vector<Obligation> obligations(const Compiler& cmp_pre, const Compiler& cmp,
                                    const Lang& l_t, const Lang& l_s) {
  (void)l_t;
  std::vector<Obligation> out;
  Compiler visible = cmp_pre;
  for (const auto& [name, r] : l_s.rules) {
    Obligation ob;
    ob.source_rule = name;
    ob.target_ctx = compile(visible, r.ctx);
    switch (r.kind) {
      case Rule::Kind::Sort: {
        const CompilerCase* c = cmp.find(name);
        if (!c || !c->is_sort_case)
          terr(TranslateError::Code::MissingCase, "MissingCase: sort " + name);
        ob.kind = Obligation::Kind::WfSort;
        ob.sort = c->out_sort;
        visible.push(name, *c);
        break;
      }
      case Rule::Kind::Term: {
        const CompilerCase* c = cmp.find(name);
        if (!c || c->is_sort_case) terr(TranslateError::Code::MissingCase, "MissingCase: " + name);
        ob.kind = Obligation::Kind::WfTerm;
        ob.term = c->out_term;
        ob.sort = compile(visible, r.sort);
        visible.push(name, *c);
        break;
      }
      case Rule::Kind::TermEq: {
        ob.kind = Obligation::Kind::TermEq;
        ob.lhs = compile(visible, r.lhs);
        ob.rhs = compile(visible, r.rhs);
        ob.sort = compile(visible, r.sort);
        break;
      }
      case Rule::Kind::SortEq: {
        ob.kind = Obligation::Kind::SortEq;
        ob.lhs_sort = compile(visible, r.lhs_sort);
        ob.rhs_sort = compile(visible, r.rhs_sort);
        break;
      }
    }
    out.push_back(std::move(ob));
  }
  return out;
}

namespace {

ObResult discharge_one(const Obligation& ob, const Lang& l_t,
                       const std::map<Name, EqProof>& manual_proofs, const RewriteConfig& cfg) {
  ObResult res;
  LangView L(l_t);
  try {
    switch (ob.kind) {
      case Obligation::Kind::WfSort: {
        check_ctx_wf(L, ob.target_ctx, CheckOpts{});
        check_sort_wf(L, ob.target_ctx, ob.sort, CheckOpts{});
        res.status = ObStatus::Auto;
        return res;
      }
      case Obligation::Kind::WfTerm: {
        check_ctx_wf(L, ob.target_ctx, CheckOpts{});
        check_sort_wf(L, ob.target_ctx, ob.sort, CheckOpts{});
        check_term_at(L, ob.target_ctx, ob.term, ob.sort, CheckOpts{});
        res.status = ObStatus::Auto;
        return res;
      }
      case Obligation::Kind::TermEq: {
        RewriteResult ra = normalize(L, ob.target_ctx, ob.lhs, cfg);
        RewriteResult rb = normalize(L, ob.target_ctx, ob.rhs, cfg);
        res.steps = ra.steps_used + rb.steps_used;
        if (ra.normal_form == rb.normal_form) {
          res.status = ObStatus::Auto;
          res.proof = ob.lhs == ob.rhs
                          ? EqProof::refl(ob.lhs)
                          : EqProof::trans(ra.certificate, EqProof::sym(rb.certificate));
          check_eq(L, ob.target_ctx, *res.proof);
          return res;
        }
        auto it = manual_proofs.find(ob.source_rule);
        if (it != manual_proofs.end()) {
          Equation eq = check_eq(L, ob.target_ctx, it->second);
          if (eq.lhs == ob.lhs && eq.rhs == ob.rhs && eq.sort == ob.sort) {
            res.status = ObStatus::Manual;
            res.proof = it->second;
            return res;
          }
          res.reason = "manual proof endpoints do not match the obligation";
          return res;
        }
        res.reason = "normal forms differ: " + show(ra.normal_form) + " vs " +
                     show(rb.normal_form);
        return res;
      }
      case Obligation::Kind::SortEq: {
        auto p = join_sorts(L, ob.target_ctx, ob.lhs_sort, ob.rhs_sort, cfg);
        if (p) {
          res.status = ObStatus::Auto;
          res.sort_proof = *p;
          return res;
        }
        res.reason = "sort normal forms differ";
        return res;
      }
    }
  } catch (const Error& e) {
    res.status = ObStatus::Open;
    res.reason = e.what();
    return res;
  }
  res.reason = "corrupt obligation";
  return res;
}

}  // namespace

DischargeReport discharge(const std::vector<Obligation>& obls, const Lang& l_t,
                          const std::map<Name, EqProof>& manual_proofs, const RewriteConfig& cfg,
                          int jobs) {
  DischargeReport rep;
  rep.entries.resize(obls.size());
  if (jobs <= 1 || obls.size() < 2) {
    for (size_t i = 0; i < obls.size(); ++i)
      rep.entries[i] = {obls[i].source_rule, discharge_one(obls[i], l_t, manual_proofs, cfg)};
    return rep;
  }
  // Independent obligations; report order stays the source order.
  std::vector<std::future<void>> work;
  size_t n = obls.size();
  size_t chunks = std::min<size_t>(jobs, n);
  for (size_t c = 0; c < chunks; ++c) {
    work.push_back(std::async(std::launch::async, [&, c]() {
      for (size_t i = c; i < n; i += chunks)
        rep.entries[i] = {obls[i].source_rule, discharge_one(obls[i], l_t, manual_proofs, cfg)};
    }));
  }
  for (auto& f : work) f.get();
  return rep;
}

DischargeReport embed_target(const std::vector<Obligation>& obls, const DischargeReport& report,
                             const Lang& l_t, const Lang& l_t2) {
  if (!lang_subset(l_t, l_t2))
    terr(TranslateError::Code::NotASubset, "NotASubset: target is not included in the extension");
  WfReport wf = wf_lang(l_t2);
  if (!wf.ok)
    terr(TranslateError::Code::NotASubset,
         "extended target is not well-formed: " + wf.diagnostics.front().message);
  DischargeReport out;
  LangView L(l_t2);
  for (size_t i = 0; i < obls.size(); ++i) {
    const Obligation& ob = obls[i];
    const auto& [name, old] = report.entries.at(i);
    ObResult res = old;
    res.replayed = true;
    try {
      switch (ob.kind) {
        case Obligation::Kind::WfSort:
          check_ctx_wf(L, ob.target_ctx, CheckOpts{});
          check_sort_wf(L, ob.target_ctx, ob.sort, CheckOpts{});
          break;
        case Obligation::Kind::WfTerm:
          check_ctx_wf(L, ob.target_ctx, CheckOpts{});
          check_term_at(L, ob.target_ctx, ob.term, ob.sort, CheckOpts{});
          break;
        case Obligation::Kind::TermEq: {
          if (!old.proof) break;  // stays Open
          Equation eq = check_eq(L, ob.target_ctx, *old.proof);
          if (!(eq.lhs == ob.lhs && eq.rhs == ob.rhs))
            throw Error("replayed proof endpoints changed");
          break;
        }
        case Obligation::Kind::SortEq: {
          if (!old.sort_proof) break;
          check_sort_eq(L, ob.target_ctx, *old.sort_proof);
          break;
        }
      }
    } catch (const Error& e) {
      res.status = ObStatus::Open;
      res.reason = e.what();
    }
    out.entries.emplace_back(name, std::move(res));
  }
  return out;
}

namespace {

// Congruence lifting: given per-parameter proofs, derive out[a*] = out[b*]
// by structural recursion over the case output.
EqProof lift_cong(const Term& out, const std::map<Name, EqProof>& arg_proofs) {
  if (out.is_var()) {
    auto it = arg_proofs.find(out.head);
    if (it == arg_proofs.end())
      throw Error("internal: lift_cong hit unbound parameter " + out.head);
    return it->second;
  }
  std::vector<EqProof> kids;
  kids.reserve(out.args.size());
  for (const Term& a : out.args) kids.push_back(lift_cong(a, arg_proofs));
  return EqProof::cong(out.head, std::move(kids));
}

}  // namespace

EqProof transport_proof(const Compiler& cmp, const DischargeReport& report, const EqProof& p) {
  switch (p.kind) {
    case EqProof::Kind::Refl:
      return EqProof::refl(compile(cmp, p.base));
    case EqProof::Kind::Sym:
      return EqProof::sym(transport_proof(cmp, report, p.kids.at(0)));
    case EqProof::Kind::Trans:
      return EqProof::trans(transport_proof(cmp, report, p.kids.at(0)),
                            transport_proof(cmp, report, p.kids.at(1)));
    case EqProof::Kind::Cong: {
      const CompilerCase* c = cmp.find(p.head);
      if (!c || c->is_sort_case)
        terr(TranslateError::Code::MissingCase, "MissingCase: " + p.head);
      if (c->params.size() != p.kids.size())
        terr(TranslateError::Code::BadCase, "Cong arity vs case params for " + p.head);
      std::map<Name, EqProof> arg_proofs;
      for (size_t i = 0; i < c->params.size(); ++i)
        arg_proofs.emplace(c->params[i], transport_proof(cmp, report, p.kids[i]));
      return lift_cong(c->out_term, arg_proofs);
    }
    case EqProof::Kind::Axiom: {
      const ObResult* r = report.find(p.head);
      if (!r || !r->proof)
        throw Error("transport: no discharged proof for axiom " + p.head);
      return subst_into_proof(compile(cmp, p.inst), *r->proof);
    }
    case EqProof::Kind::ConvSort:
      throw Error("transport: ConvSort transport is not supported");
  }
  throw Error("corrupt proof node");
}

bool nontriviality_check(const Compiler& cmp, const Lang& l_t, const Term& a, const Term& b,
                         const RewriteConfig& cfg) {
  Ctx empty;
  RewriteResult ra = normalize(LangView(l_t), empty, compile(cmp, a), cfg);
  RewriteResult rb = normalize(LangView(l_t), empty, compile(cmp, b), cfg);
  return !(ra.normal_form == rb.normal_form);
}

}  // namespace gat
