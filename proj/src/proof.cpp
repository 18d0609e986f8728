#include "gat/proof.hpp"

#include "gat/elab.hpp"

namespace gat {

EqProof EqProof::refl(Term t) {
  EqProof p;
  p.kind = Kind::Refl;
  p.base = std::move(t);
  return p;
}
EqProof EqProof::sym(EqProof q) {
  EqProof p;
  p.kind = Kind::Sym;
  p.kids.push_back(std::move(q));
  return p;
}
EqProof EqProof::trans(EqProof a, EqProof b) {
  EqProof p;
  p.kind = Kind::Trans;
  p.kids.push_back(std::move(a));
  p.kids.push_back(std::move(b));
  return p;
}
EqProof EqProof::cong(Name head, std::vector<EqProof> kids) {
  EqProof p;
  p.kind = Kind::Cong;
  p.head = std::move(head);
  p.kids = std::move(kids);
  return p;
}
EqProof EqProof::axiom(Name rule, MetaSubst inst) {
  EqProof p;
  p.kind = Kind::Axiom;
  p.head = std::move(rule);
  p.inst = std::move(inst);
  return p;
}
EqProof EqProof::conv_sort(SortEqProof sp, EqProof q) {
  EqProof p;
  p.kind = Kind::ConvSort;
  p.conv = std::make_shared<SortEqProof>(std::move(sp));
  p.kids.push_back(std::move(q));
  return p;
}

SortEqProof SortEqProof::refl(Sort s) {
  SortEqProof p;
  p.kind = Kind::Refl;
  p.base = std::move(s);
  return p;
}
SortEqProof SortEqProof::sym(SortEqProof q) {
  SortEqProof p;
  p.kind = Kind::Sym;
  p.kids.push_back(std::move(q));
  return p;
}
SortEqProof SortEqProof::trans(SortEqProof a, SortEqProof b) {
  SortEqProof p;
  p.kind = Kind::Trans;
  p.kids.push_back(std::move(a));
  p.kids.push_back(std::move(b));
  return p;
}
SortEqProof SortEqProof::cong(Name head, std::vector<EqProof> term_kids) {
  SortEqProof p;
  p.kind = Kind::Cong;
  p.head = std::move(head);
  p.term_kids = std::move(term_kids);
  return p;
}
SortEqProof SortEqProof::axiom(Name rule, MetaSubst inst) {
  SortEqProof p;
  p.kind = Kind::Axiom;
  p.head = std::move(rule);
  p.inst = std::move(inst);
  return p;
}

namespace {

[[noreturn]] void fail(ProofError::Code c, const std::string& msg) { throw ProofError(c, msg); }

// Validates an axiom instance left-to-right: each instantiating term checks
// at its instantiated declared sort. Conversion never happens implicitly.
MetaSubst checked_instance(LangView L, const Ctx& C, const Name& rule_name, const Rule& r,
                           const MetaSubst& inst) {
  if (inst.map.size() != r.ctx.size())
    fail(ProofError::Code::BadAxiomInstance,
         "instance of " + rule_name + " must bind exactly the rule context");
  MetaSubst sigma;
  for (const auto& [x, s] : r.ctx.entries) {
    const Term* v = inst.find(x);
    if (!v)
      fail(ProofError::Code::BadAxiomInstance, "instance of " + rule_name + " misses " + x);
    try {
      check_term_at(L, C, *v, apply_subst(sigma, s), CheckOpts::strict());
    } catch (const Error& e) {
      fail(ProofError::Code::BadAxiomInstance,
           "instance of " + rule_name + " at " + x + ": " + e.what());
    }
    sigma.set(x, *v);
  }
  return sigma;
}

}  // namespace

Equation check_eq(LangView L, const Ctx& C, const EqProof& p) {
  switch (p.kind) {
    case EqProof::Kind::Refl: {
      Sort s;
      try {
        s = infer_sort(L, C, p.base, CheckOpts::strict());
      } catch (const Error& e) {
        fail(ProofError::Code::IllTypedRefl, std::string("IllTypedRefl: ") + e.what());
      }
      return {p.base, p.base, s};
    }
    case EqProof::Kind::Sym: {
      Equation q = check_eq(L, C, p.kids.at(0));
      return {q.rhs, q.lhs, q.sort};
    }
    case EqProof::Kind::Trans: {
      Equation a = check_eq(L, C, p.kids.at(0));
      Equation b = check_eq(L, C, p.kids.at(1));
      if (!(a.rhs == b.lhs))
        fail(ProofError::Code::EndpointMismatch,
             "Trans: " + show(a.rhs) + " vs " + show(b.lhs));
      if (!(a.sort == b.sort))
        fail(ProofError::Code::EndpointMismatch,
             "Trans sorts: " + show(a.sort) + " vs " + show(b.sort));
      return {a.lhs, b.rhs, a.sort};
    }
    case EqProof::Kind::Cong: {
      const Rule* r = L.find(p.head);
      if (!r || r->kind != Rule::Kind::Term)
        fail(ProofError::Code::UnknownRule, "Cong: unknown constructor " + p.head);
      if (p.kids.size() != r->ctx.size())
        fail(ProofError::Code::BadCong, "Cong: " + p.head + " wants " +
                                            std::to_string(r->ctx.size()) + " argument proofs");
      MetaSubst sigma;
      std::vector<Term> ls, rs;
      for (size_t i = 0; i < p.kids.size(); ++i) {
        Equation q = check_eq(L, C, p.kids[i]);
        Sort want = apply_subst(sigma, r->ctx.entries[i].second);
        if (!(q.sort == want))
          fail(ProofError::Code::BadCong, "Cong " + p.head + " arg " +
                                              r->ctx.entries[i].first + ": sort " + show(q.sort) +
                                              " where " + show(want) + " wanted");
        sigma.set(r->ctx.entries[i].first, q.lhs);
        ls.push_back(q.lhs);
        rs.push_back(q.rhs);
      }
      return {Term::con(p.head, std::move(ls)), Term::con(p.head, std::move(rs)),
              apply_subst(sigma, r->sort)};
    }
    case EqProof::Kind::Axiom: {
      const Rule* r = L.find(p.head);
      if (!r) fail(ProofError::Code::UnknownRule, "UnknownRule: " + p.head);
      if (r->kind != Rule::Kind::TermEq)
        fail(ProofError::Code::UnknownRule, p.head + " is not a term equation");
      MetaSubst sigma = checked_instance(L, C, p.head, *r, p.inst);
      return {apply_subst(sigma, r->lhs), apply_subst(sigma, r->rhs),
              apply_subst(sigma, r->sort)};
    }
    case EqProof::Kind::ConvSort: {
      if (!p.conv) fail(ProofError::Code::Malformed, "ConvSort without sort proof");
      SortEquation se = check_sort_eq(L, C, *p.conv);
      Equation q = check_eq(L, C, p.kids.at(0));
      if (!(q.sort == se.lhs))
        fail(ProofError::Code::BadConv,
             "ConvSort: equation at " + show(q.sort) + ", conversion from " + show(se.lhs));
      return {q.lhs, q.rhs, se.rhs};
    }
  }
  fail(ProofError::Code::Malformed, "corrupt proof node");
}

SortEquation check_sort_eq(LangView L, const Ctx& C, const SortEqProof& p) {
  switch (p.kind) {
    case SortEqProof::Kind::Refl: {
      try {
        check_sort_wf(L, C, p.base, CheckOpts::strict());
      } catch (const Error& e) {
        fail(ProofError::Code::IllTypedRefl, std::string("IllTypedRefl sort: ") + e.what());
      }
      return {p.base, p.base};
    }
    case SortEqProof::Kind::Sym: {
      SortEquation q = check_sort_eq(L, C, p.kids.at(0));
      return {q.rhs, q.lhs};
    }
    case SortEqProof::Kind::Trans: {
      SortEquation a = check_sort_eq(L, C, p.kids.at(0));
      SortEquation b = check_sort_eq(L, C, p.kids.at(1));
      if (!(a.rhs == b.lhs))
        fail(ProofError::Code::EndpointMismatch,
             "Trans sorts: " + show(a.rhs) + " vs " + show(b.lhs));
      return {a.lhs, b.rhs};
    }
    case SortEqProof::Kind::Cong: {
      const Rule* r = L.find(p.head);
      if (!r || r->kind != Rule::Kind::Sort)
        fail(ProofError::Code::UnknownRule, "Cong: unknown sort " + p.head);
      if (p.term_kids.size() != r->ctx.size())
        fail(ProofError::Code::BadCong, "Cong sort " + p.head + " wants " +
                                            std::to_string(r->ctx.size()) + " argument proofs");
      MetaSubst sigma;
      std::vector<Term> ls, rs;
      for (size_t i = 0; i < p.term_kids.size(); ++i) {
        Equation q = check_eq(L, C, p.term_kids[i]);
        Sort want = apply_subst(sigma, r->ctx.entries[i].second);
        if (!(q.sort == want))
          fail(ProofError::Code::BadCong,
               "Cong sort " + p.head + " arg " + r->ctx.entries[i].first + ": sort mismatch");
        sigma.set(r->ctx.entries[i].first, q.lhs);
        ls.push_back(q.lhs);
        rs.push_back(q.rhs);
      }
      return {Sort(p.head, std::move(ls)), Sort(p.head, std::move(rs))};
    }
    case SortEqProof::Kind::Axiom: {
      const Rule* r = L.find(p.head);
      if (!r) fail(ProofError::Code::UnknownRule, "UnknownRule: " + p.head);
      if (r->kind != Rule::Kind::SortEq)
        fail(ProofError::Code::UnknownRule, p.head + " is not a sort equation");
      MetaSubst sigma = checked_instance(L, C, p.head, *r, p.inst);
      return {apply_subst(sigma, r->lhs_sort), apply_subst(sigma, r->rhs_sort)};
    }
  }
  fail(ProofError::Code::Malformed, "corrupt sort proof node");
}

EqProof subst_into_proof(const MetaSubst& gamma, const EqProof& p) {
  EqProof out = p;
  switch (p.kind) {
    case EqProof::Kind::Refl:
      out.base = apply_subst(gamma, p.base);
      return out;
    case EqProof::Kind::Axiom: {
      MetaSubst inst;
      for (const auto& [x, t] : p.inst.map) inst.set(x, apply_subst(gamma, t));
      out.inst = std::move(inst);
      return out;
    }
    case EqProof::Kind::ConvSort:
      out.conv = std::make_shared<SortEqProof>(subst_into_proof(gamma, *p.conv));
      [[fallthrough]];
    default: {
      out.kids.clear();
      for (const EqProof& k : p.kids) out.kids.push_back(subst_into_proof(gamma, k));
      return out;
    }
  }
}

SortEqProof subst_into_proof(const MetaSubst& gamma, const SortEqProof& p) {
  SortEqProof out = p;
  switch (p.kind) {
    case SortEqProof::Kind::Refl:
      out.base = apply_subst(gamma, p.base);
      return out;
    case SortEqProof::Kind::Axiom: {
      MetaSubst inst;
      for (const auto& [x, t] : p.inst.map) inst.set(x, apply_subst(gamma, t));
      out.inst = std::move(inst);
      return out;
    }
    default: {
      out.kids.clear();
      out.term_kids.clear();
      for (const SortEqProof& k : p.kids) out.kids.push_back(subst_into_proof(gamma, k));
      for (const EqProof& k : p.term_kids) out.term_kids.push_back(subst_into_proof(gamma, k));
      return out;
    }
  }
}

bool is_pure_refl(const EqProof& p) {
  if (p.kind == EqProof::Kind::Axiom) return false;
  if (p.kind == EqProof::Kind::ConvSort && p.conv && !is_pure_refl(*p.conv)) return false;
  for (const EqProof& k : p.kids)
    if (!is_pure_refl(k)) return false;
  return true;
}

bool is_pure_refl(const SortEqProof& p) {
  if (p.kind == SortEqProof::Kind::Axiom) return false;
  for (const SortEqProof& k : p.kids)
    if (!is_pure_refl(k)) return false;
  for (const EqProof& k : p.term_kids)
    if (!is_pure_refl(k)) return false;
  return true;
}

void axiom_names(const EqProof& p, std::vector<Name>& out) {
  if (p.kind == EqProof::Kind::Axiom) out.push_back(p.head);
  if (p.conv) axiom_names(*p.conv, out);
  for (const EqProof& k : p.kids) axiom_names(k, out);
}

void axiom_names(const SortEqProof& p, std::vector<Name>& out) {
  if (p.kind == SortEqProof::Kind::Axiom) out.push_back(p.head);
  for (const SortEqProof& k : p.kids) axiom_names(k, out);
  for (const EqProof& k : p.term_kids) axiom_names(k, out);
}

bool proof_equal(const EqProof& a, const EqProof& b) {
  if (a.kind != b.kind || a.head != b.head || !(a.base == b.base) || !(a.inst == b.inst))
    return false;
  if ((a.conv == nullptr) != (b.conv == nullptr)) return false;
  if (a.conv && !proof_equal(*a.conv, *b.conv)) return false;
  if (a.kids.size() != b.kids.size()) return false;
  for (size_t i = 0; i < a.kids.size(); ++i)
    if (!proof_equal(a.kids[i], b.kids[i])) return false;
  return true;
}

bool proof_equal(const SortEqProof& a, const SortEqProof& b) {
  if (a.kind != b.kind || a.head != b.head || !(a.base == b.base) || !(a.inst == b.inst))
    return false;
  if (a.kids.size() != b.kids.size() || a.term_kids.size() != b.term_kids.size()) return false;
  for (size_t i = 0; i < a.kids.size(); ++i)
    if (!proof_equal(a.kids[i], b.kids[i])) return false;
  for (size_t i = 0; i < a.term_kids.size(); ++i)
    if (!proof_equal(a.term_kids[i], b.term_kids[i])) return false;
  return true;
}

}  // namespace gat
