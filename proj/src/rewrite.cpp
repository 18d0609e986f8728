#include "gat/rewrite.hpp"

#include <cstdlib>
#include <map>

#include "gat/kernel.hpp"

namespace gat {

int default_fuel() {
  if (const char* env = std::getenv("GATFORGE_FUEL")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return 10000;
}

RewriteConfig RewriteConfig::defaults() {
  RewriteConfig cfg;
  cfg.fuel = default_fuel();
  return cfg;
}

RewriteConfig RewriteConfig::with_fuel(int fuel) {
  RewriteConfig cfg;
  cfg.fuel = fuel;
  return cfg;
}

RewriteConfig RewriteConfig::non_duplicating() {
  RewriteConfig cfg = defaults();
  cfg.filter = [](const Name&, const Rule& r) { return !rule_is_duplicating(r); };
  return cfg;
}

static void count_vars(const Term& t, std::map<Name, int>& out) {
  if (t.is_var()) {
    out[t.head]++;
    return;
  }
  for (const Term& a : t.args) count_vars(a, out);
}

// A rule duplicates when some metavariable occurs more often in the RHS than
// in the LHS (counted over fully elaborated terms).
bool rule_is_duplicating(const Rule& r) {
  if (r.kind != Rule::Kind::TermEq) return false;
  std::map<Name, int> l, rr;
  count_vars(r.lhs, l);
  count_vars(r.rhs, rr);
  for (const auto& [n, c] : rr)
    if (c > l[n]) return true;
  return false;
}

static bool match_rec(const Term& pattern, const Term& subject, MetaSubst& gamma) {
  if (pattern.is_var()) {
    if (const Term* bound = gamma.find(pattern.head)) return *bound == subject;
    gamma.set(pattern.head, subject);
    return true;
  }
  if (subject.is_var()) return false;
  if (pattern.head != subject.head || pattern.args.size() != subject.args.size()) return false;
  for (size_t i = 0; i < pattern.args.size(); ++i)
    if (!match_rec(pattern.args[i], subject.args[i], gamma)) return false;
  return true;
}

std::optional<MetaSubst> match_pattern(const Term& pattern, const Term& subject) {
  MetaSubst gamma;
  if (!match_rec(pattern, subject, gamma)) return std::nullopt;
  return gamma;
}

namespace {

bool has_uvar(const Term& t) {
  if (t.is_var()) return !t.head.empty() && t.head[0] == '?';
  for (const Term& a : t.args)
    if (has_uvar(a)) return true;
  return false;
}

struct Rewriter {
  LangView L;
  const Ctx& C;
  const RewriteConfig& cfg;
  int steps = 0;
  bool exhausted = false;

  Rewriter(LangView l, const Ctx& c, const RewriteConfig& cf) : L(l), C(c), cfg(cf) {}

  bool rule_enabled(const Name& n, const Rule& r) const {
    if (r.kind != Rule::Kind::TermEq) return false;
    return !cfg.filter || cfg.filter(n, r);
  }

  // Binds ctx names missing from the match by unifying the rule's equation
  // sort with the subject's synthesized sort.
  bool complete_by_sort(const Rule& r, const Term& subject, MetaSubst& gamma) {
    std::vector<Name> unbound;
    for (const auto& [x, s] : r.ctx.entries)
      if (!gamma.find(x)) unbound.push_back(x);
    if (unbound.empty()) return true;
    MetaSubst ren;
    for (const Name& x : unbound) ren.set(x, Term::var("?" + x));
    Sort want = apply_subst(ren, apply_subst(gamma, r.sort));
    Sort got;
    try {
      got = infer_sort(L, C, subject, CheckOpts::strict());
    } catch (const Error&) {
      return false;
    }
    MetaSubst sol;
    if (!unify_sorts(want, got, sol)) return false;
    for (const Name& x : unbound) {
      const Term* v = sol.find("?" + x);
      if (!v) return false;
      Term rv = resolve_meta(sol, *v);
      if (has_uvar(rv)) return false;
      gamma.set(x, rv);
    }
    return true;
  }

  bool instance_ok(const Rule& r, const MetaSubst& gamma) {
    MetaSubst sigma;
    for (const auto& [x, s] : r.ctx.entries) {
      const Term* v = gamma.find(x);
      if (!v) return false;
      try {
        check_term_at(L, C, *v, apply_subst(sigma, s), CheckOpts::strict());
      } catch (const Error&) {
        return false;
      }
      sigma.set(x, *v);
    }
    return true;
  }

  struct Step {
    Term term;
    EqProof ax;
  };

  std::optional<Step> step_at_root(const Term& t) {
    for (size_t i = 0; i < L.size(); ++i) {
      const auto& [name, rule] = L.at(i);
      if (!rule_enabled(name, rule)) continue;
      auto m = match_pattern(rule.lhs, t);
      if (!m) continue;
      MetaSubst gamma = *m;
      if (!complete_by_sort(rule, t, gamma)) continue;
      Term next = apply_subst(gamma, rule.rhs);
      if (next == t) continue;  // no-progress guard
      if (!instance_ok(rule, gamma)) continue;
      return Step{std::move(next), EqProof::axiom(name, gamma)};
    }
    return std::nullopt;
  }

  // Innermost, leftmost, repeated to fixpoint.
  std::pair<Term, EqProof> norm(const Term& t) {
    Term cur = t;
    EqProof cert = EqProof::refl(t);
    bool any = false;
    auto push = [&](EqProof p) {
      cert = any ? EqProof::trans(std::move(cert), std::move(p)) : std::move(p);
      any = true;
    };
    for (;;) {
      if (!cur.is_var()) {
        std::vector<EqProof> kids;
        std::vector<Term> args;
        bool changed = false;
        kids.reserve(cur.args.size());
        args.reserve(cur.args.size());
        for (const Term& a : cur.args) {
          auto [na, ca] = norm(a);
          changed = changed || !(na == a);
          kids.push_back(std::move(ca));
          args.push_back(std::move(na));
        }
        if (changed) {
          Term next = Term::con(cur.head, std::move(args));
          push(EqProof::cong(cur.head, std::move(kids)));
          cur = std::move(next);
        }
      }
      if (steps >= cfg.fuel) {
        exhausted = true;
        break;
      }
      auto st = step_at_root(cur);
      if (!st) break;
      ++steps;
      push(std::move(st->ax));
      cur = std::move(st->term);
    }
    return {cur, any ? std::move(cert) : EqProof::refl(t)};
  }
};

}  // namespace

RewriteResult normalize(LangView L, const Ctx& C, const Term& t, const RewriteConfig& cfg) {
  Rewriter rw(L, C, cfg);
  auto [nf, cert] = rw.norm(t);
  Equation eq = check_eq(L, C, cert);  // the certificate is validated before returning
  if (!(eq.lhs == t) || !(eq.rhs == nf))
    throw Error("internal: normalize certificate endpoints disagree");
  RewriteResult res;
  res.normal_form = std::move(nf);
  res.certificate = std::move(cert);
  res.steps_used = rw.steps;
  res.fuel_exhausted = rw.exhausted;
  return res;
}

std::optional<EqProof> join(LangView L, const Ctx& C, const Term& a, const Term& b,
                            const RewriteConfig& cfg) {
  if (a == b) return EqProof::refl(a);
  RewriteResult ra = normalize(L, C, a, cfg);
  RewriteResult rb = normalize(L, C, b, cfg);
  if (!(ra.normal_form == rb.normal_form)) return std::nullopt;
  return EqProof::trans(ra.certificate, EqProof::sym(rb.certificate));
}

namespace {

// Sort-level normalization: normalize term arguments, then apply SortEqRule
// axioms at the root.
std::pair<Sort, SortEqProof> norm_sort(LangView L, const Ctx& C, const Sort& s,
                                       const RewriteConfig& cfg) {
  Sort cur = s;
  SortEqProof cert = SortEqProof::refl(s);
  bool any = false;
  auto push = [&](SortEqProof p) {
    cert = any ? SortEqProof::trans(std::move(cert), std::move(p)) : std::move(p);
    any = true;
  };
  Rewriter rw(L, C, cfg);
  for (;;) {
    std::vector<EqProof> kids;
    std::vector<Term> args;
    bool changed = false;
    for (const Term& a : cur.args) {
      auto [na, ca] = rw.norm(a);
      changed = changed || !(na == a);
      kids.push_back(std::move(ca));
      args.push_back(std::move(na));
    }
    if (changed) {
      Sort next(cur.head, std::move(args));
      push(SortEqProof::cong(cur.head, std::move(kids)));
      cur = std::move(next);
    }
    bool stepped = false;
    for (size_t i = 0; i < L.size() && !stepped; ++i) {
      const auto& [name, rule] = L.at(i);
      if (rule.kind != Rule::Kind::SortEq) continue;
      if (cfg.filter && !cfg.filter(name, rule)) continue;
      if (rule.lhs_sort.head != cur.head || rule.lhs_sort.args.size() != cur.args.size()) continue;
      MetaSubst gamma;
      bool okm = true;
      for (size_t j = 0; j < cur.args.size() && okm; ++j)
        okm = match_rec(rule.lhs_sort.args[j], cur.args[j], gamma);
      if (!okm) continue;
      bool complete = true;
      for (const auto& [x, srt] : rule.ctx.entries)
        if (!gamma.find(x)) complete = false;
      if (!complete) continue;
      Sort next = apply_subst(gamma, rule.rhs_sort);
      if (next == cur) continue;
      push(SortEqProof::axiom(name, gamma));
      cur = std::move(next);
      stepped = true;
    }
    if (!stepped) break;
  }
  return {cur, any ? std::move(cert) : SortEqProof::refl(s)};
}

}  // namespace

std::optional<SortEqProof> join_sorts(LangView L, const Ctx& C, const Sort& a, const Sort& b,
                                      const RewriteConfig& cfg) {
  if (a == b) return SortEqProof::refl(a);
  auto [na, ca] = norm_sort(L, C, a, cfg);
  auto [nb, cb] = norm_sort(L, C, b, cfg);
  if (!(na == nb)) return std::nullopt;
  return SortEqProof::trans(ca, SortEqProof::sym(cb));
}

RewriteResult partial_eval(LangView L, const Ctx& C, const Term& t, RewriteConfig cfg) {
  if (!cfg.filter) cfg.filter = [](const Name&, const Rule& r) { return !rule_is_duplicating(r); };
  return normalize(L, C, t, cfg);
}

}  // namespace gat
