// Random well-typed terms, substitutions, proofs and language extensions for
// the property suites. Deterministically seeded.
#ifndef GATFORGE_TESTS_GEN_SUPPORT_HPP
#define GATFORGE_TESTS_GEN_SUPPORT_HPP

#include <optional>
#include <random>

#include "gat/elab.hpp"
#include "gat/kernel.hpp"
#include "gat/rewrite.hpp"

namespace gat::testgen {

struct TermGen {
  LangView L;
  std::mt19937_64 rng;

  explicit TermGen(LangView l, uint64_t seed) : L(l), rng(seed) {}

  size_t pick(size_t n) { return std::uniform_int_distribution<size_t>(0, n - 1)(rng); }
  bool coin() { return rng() & 1; }

  static bool has_uvar(const Term& t) {
    if (t.is_var()) return !t.head.empty() && t.head[0] == '?';
    for (const Term& a : t.args)
      if (has_uvar(a)) return true;
    return false;
  }

  // A term of sort `want` under C, or nothing when the budget runs out.
  std::optional<Term> gen(const Ctx& C, const Sort& want, int depth) {
    std::vector<Term> var_hits;
    for (const auto& [x, s] : C.entries)
      if (s == want) var_hits.push_back(Term::var(x));
    struct Cand {
      Name name;
      const Rule* rule;
    };
    std::vector<Cand> cons;
    for (size_t i = 0; i < L.size(); ++i) {
      const auto& [n, r] = L.at(i);
      if (r.kind != Rule::Kind::Term) continue;
      MetaSubst probe;
      MetaSubst ren;
      for (const auto& [x, s] : r.ctx.entries) ren.set(x, Term::var("?" + x));
      if (unify_sorts(apply_subst(ren, r.sort), want, probe)) cons.push_back({n, &r});
    }
    // prefer a metavariable or a shallow constructor when the budget is low
    for (int attempt = 0; attempt < 6; ++attempt) {
      bool use_var = !var_hits.empty() && (depth <= 0 || coin());
      if (use_var) return var_hits[pick(var_hits.size())];
      if (cons.empty()) break;
      const Cand& c = cons[pick(cons.size())];
      if (auto t = instantiate(C, *c.rule, c.name, want, depth)) return t;
    }
    if (!var_hits.empty()) return var_hits[pick(var_hits.size())];
    return std::nullopt;
  }

  std::optional<Term> instantiate(const Ctx& C, const Rule& r, const Name& name,
                                  const Sort& want, int depth) {
    MetaSubst ren;
    for (const auto& [x, s] : r.ctx.entries) ren.set(x, Term::var("?" + x));
    MetaSubst sol;
    if (!unify_sorts(apply_subst(ren, r.sort), want, sol)) return std::nullopt;
    MetaSubst bound;
    for (const auto& [x, s] : r.ctx.entries) {
      Term cur = resolve_meta(sol, Term::var("?" + x));
      if (!(cur == Term::var("?" + x)) && !has_uvar(cur)) {
        bound.set(x, cur);
        continue;
      }
      if (has_uvar(cur) && !(cur == Term::var("?" + x))) return std::nullopt;
      if (depth <= 0) return std::nullopt;  // only unification-saturated rules at the leaves
      Sort needed = apply_subst(bound, s);
      std::vector<Name> fv;
      free_vars(needed, fv);
      for (const Name& v : fv)
        if (!v.empty() && v[0] == '?') return std::nullopt;
      auto sub = gen(C, needed, depth - 1);
      if (!sub) return std::nullopt;
      bound.set(x, *sub);
      MetaSubst g = sol;
      if (!unify_terms(Term::var("?" + x), *sub, g)) return std::nullopt;
      sol = g;
    }
    std::vector<Term> args;
    for (const auto& [x, s] : r.ctx.entries) args.push_back(*bound.find(x));
    Term out = Term::con(name, std::move(args));
    try {
      check_term_at(L, C, out, want, CheckOpts::strict());
    } catch (const Error&) {
      return std::nullopt;
    }
    return out;
  }

  // A well-typed substitution for a random subset of C's entries, mapping
  // each to a fresh term of the instantiated declared sort.
  MetaSubst gen_subst(const Ctx& C, int depth) {
    MetaSubst out;
    MetaSubst sigma;  // rolling instantiation of the context
    for (const auto& [x, s] : C.entries) {
      Sort inst = apply_subst(sigma, s);
      if (coin()) {
        if (auto t = gen(C, inst, depth)) {
          out.set(x, *t);
          sigma.set(x, *t);
          continue;
        }
      }
      sigma.set(x, Term::var(x));
    }
    return out;
  }

  // A random equation rule instance under C.
  std::optional<EqProof> gen_axiom(const Ctx& C, int depth) {
    std::vector<std::pair<Name, const Rule*>> eqs;
    for (size_t i = 0; i < L.size(); ++i) {
      const auto& [n, r] = L.at(i);
      if (r.kind == Rule::Kind::TermEq) eqs.push_back({n, &r});
    }
    if (eqs.empty()) return std::nullopt;
    for (int attempt = 0; attempt < 8; ++attempt) {
      auto& [n, r] = eqs[pick(eqs.size())];
      MetaSubst inst;
      bool ok = true;
      for (const auto& [x, s] : r->ctx.entries) {
        auto t = gen(C, apply_subst(inst, s), depth);
        if (!t) {
          ok = false;
          break;
        }
        inst.set(x, *t);
      }
      if (ok) return EqProof::axiom(n, inst);
    }
    return std::nullopt;
  }

  // A random derivation of bounded depth; always checkable.
  std::optional<EqProof> gen_proof(const Ctx& C, int depth) {
    auto base = gen_axiom(C, 2);
    if (!base) return std::nullopt;
    EqProof p = *base;
    for (int d = 0; d < depth; ++d) {
      switch (pick(4)) {
        case 0:
          p = EqProof::sym(std::move(p));
          break;
        case 1: {
          Equation eq = check_eq(L, C, p);
          RewriteResult r = normalize(L, C, eq.rhs, RewriteConfig::with_fuel(3));
          p = EqProof::trans(std::move(p), r.certificate);
          break;
        }
        case 2: {
          // decorate with a round trip on the left endpoint; endpoints of the
          // whole proof are unchanged
          Equation eq = check_eq(L, C, p);
          RewriteResult r = normalize(L, C, eq.lhs, RewriteConfig::with_fuel(2));
          p = EqProof::trans(EqProof::trans(r.certificate, EqProof::sym(r.certificate)),
                             std::move(p));
          break;
        }
        default:
          break;
      }
    }
    return p;
  }
};

// Appends fresh, trivially well-formed rules to a language.
inline Lang random_extension(const Lang& base, std::mt19937_64& rng, int tag) {
  Lang ext;
  std::string suffix = std::to_string(tag) + "x" + std::to_string(rng() % 1000);
  Name sort_name = "Zs" + suffix;
  Name con_name = "Zc" + suffix;
  Name fun_name = "Zf" + suffix;
  Name eq_name = "Ze" + suffix;
  ext.push(sort_name, Rule::sort_rule({}, {}));
  ext.push(con_name, Rule::term_rule({}, {}, Sort(sort_name)));
  Ctx c;
  c.push("x", Sort(sort_name));
  ext.push(fun_name, Rule::term_rule(std::move(c), {"x"}, Sort(sort_name)));
  Ctx ec;
  ec.push("x", Sort(sort_name));
  ext.push(eq_name,
           Rule::term_eq_rule(std::move(ec), Term::con(fun_name, {Term::var("x")}),
                              Term::var("x"), Sort(sort_name)));
  return ext;
}

}  // namespace gat::testgen

#endif
