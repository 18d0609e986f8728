#ifndef GAT_TRANSLATE_HPP
#define GAT_TRANSLATE_HPP

#include <map>

#include "gat/ast.hpp"
#include "gat/rewrite.hpp"

namespace gat {

struct TranslateError : Error {
  enum class Code { MissingCase, DuplicateCase, NotASubset, BadCase };
  Code code;
  TranslateError(Code c, const std::string& msg) : Error(msg), code(c) {}
};

// One case of a compiler: the target sort/term the source constructor maps
// to, over the constructor's own metavariables (params = the full ctx names
// of the source rule, in order).
struct CompilerCase {
  bool is_sort_case = false;
  std::vector<Name> params;
  Term out_term;
  Sort out_sort;

  static CompilerCase sort_case(std::vector<Name> params, Sort out) {
    CompilerCase c;
    c.is_sort_case = true;
    c.params = std::move(params);
    c.out_sort = std::move(out);
    return c;
  }
  static CompilerCase term_case(std::vector<Name> params, Term out) {
    CompilerCase c;
    c.params = std::move(params);
    c.out_term = std::move(out);
    return c;
  }
  bool operator==(const CompilerCase&) const = default;
};

// Ordered, name-keyed case list; no cases for equation rules.
struct Compiler {
  std::vector<std::pair<Name, CompilerCase>> cases;

  const CompilerCase* find(const Name& n) const {
    auto it = index_.find(n);
    return it == index_.end() ? nullptr : &cases[it->second].second;
  }
  void push(Name n, CompilerCase c) {
    if (index_.count(n))
      throw TranslateError(TranslateError::Code::DuplicateCase, "DuplicateCase: " + n);
    index_[n] = cases.size();
    cases.emplace_back(std::move(n), std::move(c));
  }
  size_t size() const { return cases.size(); }
  bool operator==(const Compiler& o) const { return cases == o.cases; }

 private:
  std::map<Name, size_t> index_;
};

// Structural fold: Var(x) maps to Var(x), Con(n, args) to the case output
// with params bound to the compiled args.
Term compile(const Compiler& cmp, const Term& t);
Sort compile(const Compiler& cmp, const Sort& s);
Ctx compile(const Compiler& cmp, const Ctx& c);
MetaSubst compile(const Compiler& cmp, const MetaSubst& gamma);

Compiler id_compiler(const Lang& L);

// cases of a, then b; names must be disjoint.
Compiler concat_compilers(const Compiler& a, const Compiler& b);

// Case-wise composition: compile(vcompose(g, f), t) == compile(g, compile(f, t)).
Compiler vcompose(const Compiler& g, const Compiler& f);

struct Obligation {
  enum class Kind : uint8_t { WfSort, WfTerm, TermEq, SortEq };
  Kind kind = Kind::WfTerm;
  Name source_rule;
  Ctx target_ctx;   // compiled source rule ctx
  Sort sort;        // WfSort: the case output; WfTerm: required sort of `term`
  Term term;        // WfTerm: the case output
  Term lhs, rhs;    // TermEq (compiled sides, at `sort`)
  Sort lhs_sort, rhs_sort;  // SortEq
};

// One obligation per rule of l_s, in order; the compiler visible to
// obligation k is cmp_pre plus the cases for rules before k.
std::vector<Obligation> obligations(const Compiler& cmp_pre, const Compiler& cmp,
                                    const Lang& l_t, const Lang& l_s);

enum class ObStatus : uint8_t { Auto, Manual, Open };

struct ObResult {
  ObStatus status = ObStatus::Open;
  std::optional<EqProof> proof;           // TermEq entries
  std::optional<SortEqProof> sort_proof;  // SortEq entries
  std::string reason;                     // Open entries
  int steps = 0;
  bool replayed = false;  // true when the proof object was reused, not re-proved
};

struct DischargeReport {
  std::vector<std::pair<Name, ObResult>> entries;

  bool clean() const {
    for (const auto& [n, r] : entries)
      if (r.status == ObStatus::Open) return false;
    return true;
  }
  const ObResult* find(const Name& n) const {
    for (const auto& [name, r] : entries)
      if (name == n) return &r;
    return nullptr;
  }
  std::vector<Name> open_names() const {
    std::vector<Name> out;
    for (const auto& [n, r] : entries)
      if (r.status == ObStatus::Open) out.push_back(n);
    return out;
  }
  std::vector<Name> manual_names() const {
    std::vector<Name> out;
    for (const auto& [n, r] : entries)
      if (r.status == ObStatus::Manual) out.push_back(n);
    return out;
  }
};

// Wf obligations go through the elaborator; TermEq through join; on join
// failure a manual proof is consulted and re-checked against the obligation.
DischargeReport discharge(const std::vector<Obligation>& obls, const Lang& l_t,
                          const std::map<Name, EqProof>& manual_proofs, const RewriteConfig& cfg,
                          int jobs = 1);

// Codomain embedding: validates l_t is a subset of l_t2 and re-checks the
// report's proof objects verbatim under l_t2 (nothing is re-proved).
DischargeReport embed_target(const std::vector<Obligation>& obls, const DischargeReport& report,
                             const Lang& l_t, const Lang& l_t2);

// Maps a source derivation to a target derivation using a clean report's
// per-equation proofs.
EqProof transport_proof(const Compiler& cmp, const DischargeReport& report, const EqProof& p);

// True when the two closed terms compile to structurally distinct normal forms.
bool nontriviality_check(const Compiler& cmp, const Lang& l_t, const Term& a, const Term& b,
                         const RewriteConfig& cfg);

}  // namespace gat

#endif
