#include "gat/elab.hpp"

#include <sstream>

#include "gat/kernel.hpp"
#include "gat/rewrite.hpp"

namespace gat {

namespace {

bool is_uvar(const Term& t) { return t.is_var() && !t.head.empty() && t.head[0] == '?'; }

[[noreturn]] void err(CheckError::Code c, const std::string& msg) { throw CheckError(c, msg); }

}  // namespace

std::string show(const Term& t) {
  if (t.is_var()) return t.head;
  if (t.args.empty()) return "(" + t.head + ")";
  std::string s = "(" + t.head;
  for (const Term& a : t.args) s += " " + show(a);
  return s + ")";
}

std::string show(const Sort& s) {
  if (s.args.empty()) return "(" + s.head + ")";
  std::string out = "(" + s.head;
  for (const Term& a : s.args) out += " " + show(a);
  return out + ")";
}

std::string show(const Ctx& c) {
  std::string out = "(";
  for (size_t i = 0; i < c.entries.size(); ++i) {
    if (i) out += " ";
    out += "(" + c.entries[i].first + " " + show(c.entries[i].second) + ")";
  }
  return out + ")";
}

Term resolve_meta(const MetaSubst& gamma, const Term& t) {
  if (t.is_var()) {
    if (const Term* m = gamma.find(t.head)) {
      if (*m == t) return t;
      return resolve_meta(gamma, *m);
    }
    return t;
  }
  std::vector<Term> args;
  args.reserve(t.args.size());
  for (const Term& a : t.args) args.push_back(resolve_meta(gamma, a));
  return Term::con(t.head, std::move(args));
}

static Sort resolve_meta(const MetaSubst& gamma, const Sort& s) {
  std::vector<Term> args;
  args.reserve(s.args.size());
  for (const Term& a : s.args) args.push_back(resolve_meta(gamma, a));
  return Sort(s.head, std::move(args));
}

static bool occurs(const MetaSubst& gamma, const Name& v, const Term& t) {
  Term r = resolve_meta(gamma, t);
  return mentions_var(r, v);
}

bool unify_terms(const Term& a0, const Term& b0, MetaSubst& gamma) {
  Term a = a0.is_var() ? resolve_meta(gamma, a0) : a0;
  Term b = b0.is_var() ? resolve_meta(gamma, b0) : b0;
  if (is_uvar(a)) {
    if (b.is_var() && b.head == a.head) return true;
    if (occurs(gamma, a.head, b)) return false;
    gamma.set(a.head, b);
    return true;
  }
  if (is_uvar(b)) return unify_terms(b, a, gamma);
  if (a.is_var() || b.is_var()) return a == b;
  if (a.head != b.head || a.args.size() != b.args.size()) return false;
  for (size_t i = 0; i < a.args.size(); ++i)
    if (!unify_terms(a.args[i], b.args[i], gamma)) return false;
  return true;
}

bool unify_sorts(const Sort& a, const Sort& b, MetaSubst& gamma) {
  if (a.head != b.head || a.args.size() != b.args.size()) return false;
  for (size_t i = 0; i < a.args.size(); ++i)
    if (!unify_terms(a.args[i], b.args[i], gamma)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Checking

static void convert_or_fail(LangView L, const Ctx& C, const Sort& got, const Sort& want,
                            const CheckOpts& opts, const Term& subject) {
  if (got == want) return;
  if (opts.allow_conversion) {
    RewriteConfig cfg = RewriteConfig::with_fuel(opts.conversion_fuel);
    if (auto p = join_sorts(L, C, got, want, cfg)) {
      if (opts.conversions) opts.conversions->push_back(*p);
      return;
    }
  }
  err(CheckError::Code::SortMismatch, "SortMismatch in term " + show(subject) + ": expected " +
                                          show(want) + ", got " + show(got));
}

Sort infer_sort(LangView L, const Ctx& C, const Term& t, const CheckOpts& opts) {
  if (t.is_var()) {
    const Sort* s = C.find(t.head);
    if (!s) err(CheckError::Code::UnknownVar, "UnknownVar: " + t.head);
    return *s;
  }
  const Rule* r = L.find(t.head);
  if (!r) err(CheckError::Code::UnknownHead, "UnknownHead: " + t.head);
  if (r->kind != Rule::Kind::Term)
    err(CheckError::Code::BadRule, "not a term constructor: " + t.head);
  if (t.args.size() != r->ctx.size())
    err(CheckError::Code::ArityMismatch,
        "ArityMismatch: " + t.head + " expects " + std::to_string(r->ctx.size()) + " args, got " +
            std::to_string(t.args.size()));
  MetaSubst sigma;
  for (size_t i = 0; i < t.args.size(); ++i) {
    Sort want = apply_subst(sigma, r->ctx.entries[i].second);
    check_term_at(L, C, t.args[i], want, opts);
    sigma.set(r->ctx.entries[i].first, t.args[i]);
  }
  return apply_subst(sigma, r->sort);
}

void check_term_at(LangView L, const Ctx& C, const Term& t, const Sort& s, const CheckOpts& opts) {
  Sort got = infer_sort(L, C, t, opts);
  convert_or_fail(L, C, got, s, opts, t);
}

void check_sort_wf(LangView L, const Ctx& C, const Sort& s, const CheckOpts& opts) {
  const Rule* r = L.find(s.head);
  if (!r) err(CheckError::Code::UnknownHead, "UnknownHead: sort " + s.head);
  if (r->kind != Rule::Kind::Sort) err(CheckError::Code::BadRule, "not a sort: " + s.head);
  if (s.args.size() != r->ctx.size())
    err(CheckError::Code::ArityMismatch,
        "ArityMismatch: sort " + s.head + " expects " + std::to_string(r->ctx.size()) +
            " args, got " + std::to_string(s.args.size()));
  MetaSubst sigma;
  for (size_t i = 0; i < s.args.size(); ++i) {
    Sort want = apply_subst(sigma, r->ctx.entries[i].second);
    check_term_at(L, C, s.args[i], want, opts);
    sigma.set(r->ctx.entries[i].first, s.args[i]);
  }
}

void check_ctx_wf(LangView L, const Ctx& C, const CheckOpts& opts) {
  Ctx prefix;
  for (const auto& [n, s] : C.entries) {
    if (prefix.contains(n)) err(CheckError::Code::Shadowing, "Shadowing: " + n);
    check_sort_wf(L, prefix, s, opts);
    prefix.push(n, s);
  }
}

WfReport check_term(LangView L, const Ctx& C, const Term& t, const Sort& s) {
  WfReport rep;
  CheckOpts opts;
  opts.conversions = &rep.conversions;
  try {
    check_term_at(L, C, t, s, opts);
  } catch (const Error& e) {
    rep.fail(show(t), e.what());
  }
  return rep;
}

static void check_rule(LangView prefix, const Name& name, const Rule& r, WfReport& rep) {
  CheckOpts opts;
  opts.conversions = rep.ok ? &rep.conversions : nullptr;
  try {
    check_ctx_wf(prefix, r.ctx, opts);
    // explicit args: subset of ctx names, order preserved
    size_t at = 0;
    for (const Name& a : r.explicit_args) {
      bool found = false;
      for (size_t i = at; i < r.ctx.size(); ++i) {
        if (r.ctx.entries[i].first == a) {
          at = i + 1;
          found = true;
          break;
        }
      }
      if (!found)
        err(CheckError::Code::BadRule, "explicit arg " + a + " not in ctx (or out of order)");
    }
    switch (r.kind) {
      case Rule::Kind::Sort:
        break;
      case Rule::Kind::Term:
        check_sort_wf(prefix, r.ctx, r.sort, opts);
        break;
      case Rule::Kind::TermEq:
        if (!r.explicit_args.empty())
          err(CheckError::Code::BadRule, "equations carry no explicit args");
        check_sort_wf(prefix, r.ctx, r.sort, opts);
        check_term_at(prefix, r.ctx, r.lhs, r.sort, opts);
        check_term_at(prefix, r.ctx, r.rhs, r.sort, opts);
        break;
      case Rule::Kind::SortEq:
        if (!r.explicit_args.empty())
          err(CheckError::Code::BadRule, "equations carry no explicit args");
        check_sort_wf(prefix, r.ctx, r.lhs_sort, opts);
        check_sort_wf(prefix, r.ctx, r.rhs_sort, opts);
        break;
    }
  } catch (const Error& e) {
    rep.fail("rule " + name, e.what());
  }
}

WfReport wf_lang(const Lang& L) {
  WfReport rep;
  for (size_t k = 0; k < L.size(); ++k) {
    LangView prefix(L, k);
    check_rule(prefix, L.rules[k].first, L.rules[k].second, rep);
    if (!rep.ok) break;  // later rules depend on this prefix
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Elaboration

namespace {

struct Elab {
  LangView L;
  const Ctx& C;
  MetaSubst sol;
  int counter = 0;
  // uvar -> (rule head, ctx entry name), for error reporting
  std::map<Name, std::pair<Name, Name>> origin;

  Elab(LangView l, const Ctx& c) : L(l), C(c) {}

  Term fresh(const Name& rule, const Name& entry) {
    Name u = "?" + std::to_string(counter++);
    origin[u] = {rule, entry};
    return Term::var(u);
  }

  void require(bool ok, const Term& a, const Term& b) {
    if (!ok)
      err(CheckError::Code::SortMismatch,
          "cannot unify " + show(resolve_meta(sol, a)) + " with " + show(resolve_meta(sol, b)));
  }

  Term go(const SurfaceTerm& st, const std::optional<Sort>& expected) {
    if (!st.applied && C.contains(st.head)) {
      if (expected) {
        MetaSubst g = sol;
        if (!unify_sorts(*C.find(st.head), *expected, g))
          err(CheckError::Code::SortMismatch,
              "metavariable " + st.head + " : " + show(*C.find(st.head)) + " where " +
                  show(resolve_meta(sol, *expected)) + " wanted");
        sol = g;
      }
      return Term::var(st.head);
    }
    const Rule* r = L.find(st.head);
    if (!r) err(CheckError::Code::UnknownHead, "UnknownHead: " + st.head);
    if (r->kind != Rule::Kind::Term)
      err(CheckError::Code::BadRule, "not a term constructor: " + st.head);
    if (st.args.size() != r->explicit_args.size())
      err(CheckError::Code::ArityMismatch,
          "ArityMismatch: " + st.head + " takes " + std::to_string(r->explicit_args.size()) +
              " explicit args, got " + std::to_string(st.args.size()));
    MetaSubst inst;
    for (const auto& [x, s] : r->ctx.entries) inst.set(x, fresh(st.head, x));
    if (expected) {
      MetaSubst g = sol;
      if (!unify_sorts(apply_subst(inst, r->sort), *expected, g))
        err(CheckError::Code::SortMismatch, "result sort of " + st.head + " (" +
                                                show(resolve_meta(sol, apply_subst(inst, r->sort))) +
                                                ") does not match " +
                                                show(resolve_meta(sol, *expected)));
      sol = g;
    }
    for (size_t i = 0; i < st.args.size(); ++i) {
      const Name& entry = r->explicit_args[i];
      Sort want = resolve_meta(sol, apply_subst(inst, *r->ctx.find(entry)));
      Term sub = go(st.args[i], want);
      MetaSubst g = sol;
      require(unify_terms(*inst.find(entry), sub, g), *inst.find(entry), sub);
      sol = g;
    }
    std::vector<Term> args;
    for (const auto& [x, s] : r->ctx.entries) args.push_back(resolve_meta(sol, *inst.find(x)));
    return Term::con(st.head, std::move(args));
  }
};

void collect_unsolved(const Elab& e, const Term& t, std::vector<Name>& out) {
  if (t.is_var()) {
    if (is_uvar(t)) {
      auto it = e.origin.find(t.head);
      Name pretty = it == e.origin.end() ? t.head : it->second.first + "." + it->second.second;
      if (std::find(out.begin(), out.end(), pretty) == out.end()) out.push_back(pretty);
    }
    return;
  }
  for (const Term& a : t.args) collect_unsolved(e, a, out);
}

// Bottom-up elaboration: every subterm must determine its own implicits.
Term elaborate_synth(LangView L, const Ctx& C, const SurfaceTerm& st) {
  if (!st.applied && C.contains(st.head)) return Term::var(st.head);
  Elab e(L, C);
  Term t = e.go(st, std::nullopt);
  Term r = resolve_meta(e.sol, t);
  std::vector<Name> unsolved;
  collect_unsolved(e, r, unsolved);
  if (!unsolved.empty()) {
    std::string msg = "UnsolvedImplicit:";
    for (const Name& n : unsolved) msg += " " + n;
    err(CheckError::Code::UnsolvedImplicit, msg);
  }
  return r;
}

}  // namespace

Term elaborate(LangView L, const Ctx& C, const SurfaceTerm& st, const std::optional<Sort>& expected) {
  Term result;
  bool done = false;
  if (expected) {
    try {
      Elab e(L, C);
      Term t = e.go(st, expected);
      Term r = resolve_meta(e.sol, t);
      std::vector<Name> unsolved;
      collect_unsolved(e, r, unsolved);
      if (unsolved.empty()) {
        result = r;
        done = true;
      }
    } catch (const CheckError&) {
      // fall through to synthesis + conversion
    }
  }
  if (!done) result = elaborate_synth(L, C, st);
  CheckOpts opts;  // conversion allowed
  if (expected)
    check_term_at(L, C, result, *expected, opts);
  else
    infer_sort(L, C, result, opts);
  return result;
}

Sort elaborate_sort(LangView L, const Ctx& C, const SurfaceTerm& st) {
  const Rule* r = L.find(st.head);
  if (!r) err(CheckError::Code::UnknownHead, "UnknownHead: sort " + st.head);
  if (r->kind != Rule::Kind::Sort) err(CheckError::Code::BadRule, "not a sort: " + st.head);
  if (st.args.size() != r->explicit_args.size())
    err(CheckError::Code::ArityMismatch,
        "ArityMismatch: sort " + st.head + " takes " + std::to_string(r->explicit_args.size()) +
            " explicit args, got " + std::to_string(st.args.size()));
  Elab e(L, C);
  MetaSubst inst;
  for (const auto& [x, s] : r->ctx.entries) inst.set(x, e.fresh(st.head, x));
  for (size_t i = 0; i < st.args.size(); ++i) {
    const Name& entry = r->explicit_args[i];
    Sort want = resolve_meta(e.sol, apply_subst(inst, *r->ctx.find(entry)));
    Term sub = e.go(st.args[i], want);
    MetaSubst g = e.sol;
    e.require(unify_terms(*inst.find(entry), sub, g), *inst.find(entry), sub);
    e.sol = g;
  }
  std::vector<Term> args;
  std::vector<Name> unsolved;
  for (const auto& [x, s] : r->ctx.entries) {
    Term a = resolve_meta(e.sol, *inst.find(x));
    collect_unsolved(e, a, unsolved);
    args.push_back(a);
  }
  if (!unsolved.empty()) {
    std::string msg = "UnsolvedImplicit in sort " + st.head + ":";
    for (const Name& n : unsolved) msg += " " + n;
    err(CheckError::Code::UnsolvedImplicit, msg);
  }
  Sort out(st.head, std::move(args));
  check_sort_wf(L, C, out, CheckOpts{});
  return out;
}

SurfaceTerm erase(LangView L, const Term& t) {
  if (t.is_var()) return SurfaceTerm::symbol(t.head);
  const Rule* r = L.find(t.head);
  if (!r || r->kind != Rule::Kind::Term)
    err(CheckError::Code::UnknownHead, "UnknownHead: " + t.head);
  std::vector<SurfaceTerm> args;
  for (const Name& e : r->explicit_args) {
    size_t i = 0;
    for (; i < r->ctx.size(); ++i)
      if (r->ctx.entries[i].first == e) break;
    args.push_back(erase(L, t.args.at(i)));
  }
  if (args.empty()) return SurfaceTerm::apply(t.head, {});
  return SurfaceTerm::apply(t.head, std::move(args));
}

SurfaceTerm erase_sort(LangView L, const Sort& s) {
  const Rule* r = L.find(s.head);
  if (!r || r->kind != Rule::Kind::Sort)
    err(CheckError::Code::UnknownHead, "UnknownHead: sort " + s.head);
  std::vector<SurfaceTerm> args;
  for (const Name& e : r->explicit_args) {
    size_t i = 0;
    for (; i < r->ctx.size(); ++i)
      if (r->ctx.entries[i].first == e) break;
    args.push_back(erase(L, s.args.at(i)));
  }
  return SurfaceTerm::apply(s.head, std::move(args));
}

}  // namespace gat
