#include "gat/kernel.hpp"

#include <algorithm>

namespace gat {

Term apply_subst(const MetaSubst& gamma, const Term& t) {
  if (t.is_var()) {
    if (const Term* m = gamma.find(t.head)) return *m;
    return t;
  }
  std::vector<Term> args;
  args.reserve(t.args.size());
  for (const Term& a : t.args) args.push_back(apply_subst(gamma, a));
  return Term::con(t.head, std::move(args));
}

Sort apply_subst(const MetaSubst& gamma, const Sort& s) {
  std::vector<Term> args;
  args.reserve(s.args.size());
  for (const Term& a : s.args) args.push_back(apply_subst(gamma, a));
  return Sort(s.head, std::move(args));
}

Ctx apply_subst(const MetaSubst& gamma, const Ctx& c) {
  Ctx out;
  for (const auto& [n, s] : c.entries) out.push(n, apply_subst(gamma, s));
  return out;
}

MetaSubst compose(const MetaSubst& gamma1, const MetaSubst& gamma2) {
  MetaSubst out;
  for (const auto& [n, t] : gamma2.map) out.set(n, apply_subst(gamma1, t));
  for (const auto& [n, t] : gamma1.map)
    if (!out.find(n)) out.set(n, t);
  return out;
}

bool structural_eq(const Term& a, const Term& b) { return a == b; }
bool structural_eq(const Sort& a, const Sort& b) { return a == b; }

Lang lang_append(const Lang& base, const Lang& ext) {
  Lang out = base;
  for (const auto& [n, r] : ext.rules) out.push(n, r);
  return out;
}

bool lang_subset(const Lang& a, const Lang& b) {
  for (const auto& [n, r] : a.rules) {
    const Rule* rb = b.find(n);
    if (!rb || !(*rb == r)) return false;
  }
  return true;
}

static void free_vars_rec(const Term& t, std::vector<Name>& out) {
  if (t.is_var()) {
    if (std::find(out.begin(), out.end(), t.head) == out.end()) out.push_back(t.head);
    return;
  }
  for (const Term& a : t.args) free_vars_rec(a, out);
}

void free_vars(const Term& t, std::vector<Name>& out) { free_vars_rec(t, out); }

void free_vars(const Sort& s, std::vector<Name>& out) {
  for (const Term& a : s.args) free_vars_rec(a, out);
}

bool mentions_var(const Term& t, const Name& n) {
  if (t.is_var()) return t.head == n;
  for (const Term& a : t.args)
    if (mentions_var(a, n)) return true;
  return false;
}

bool mentions_var(const Sort& s, const Name& n) {
  for (const Term& a : s.args)
    if (mentions_var(a, n)) return true;
  return false;
}

bool mentions_head(const Term& t, const Name& n) {
  if (!t.is_var() && t.head == n) return true;
  for (const Term& a : t.args)
    if (mentions_head(a, n)) return true;
  return false;
}

bool mentions_head(const Sort& s, const Name& n) {
  if (s.head == n) return true;
  for (const Term& a : s.args)
    if (mentions_head(a, n)) return true;
  return false;
}

}  // namespace gat
