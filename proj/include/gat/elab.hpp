#ifndef GAT_ELAB_HPP
#define GAT_ELAB_HPP

#include <optional>

#include "gat/ast.hpp"
#include "gat/proof.hpp"

namespace gat {

struct CheckError : Error {
  enum class Code {
    UnknownHead,
    UnknownVar,
    ArityMismatch,
    SortMismatch,
    UnsolvedImplicit,
    Shadowing,
    BadRule
  };
  Code code;
  CheckError(Code c, const std::string& msg) : Error(msg), code(c) {}
};

struct Diagnostic {
  std::string where;
  std::string message;
};

struct WfReport {
  bool ok = true;
  std::vector<Diagnostic> diagnostics;
  // Sort-conversion certificates produced while checking (empty when pure
  // syntactic checking sufficed).
  std::vector<SortEqProof> conversions;

  void fail(std::string where, std::string message) {
    ok = false;
    diagnostics.push_back({std::move(where), std::move(message)});
  }
};

// A term as written: implicit arguments omitted. A bare symbol resolves to a
// metavariable of the ambient context when one is in scope, otherwise to a
// 0-explicit-argument constructor.
struct SurfaceTerm {
  Name head;
  bool applied = false;  // written in parentheses (always a constructor)
  std::vector<SurfaceTerm> args;

  static SurfaceTerm symbol(Name n) {
    SurfaceTerm s;
    s.head = std::move(n);
    return s;
  }
  static SurfaceTerm apply(Name head, std::vector<SurfaceTerm> args) {
    SurfaceTerm s;
    s.head = std::move(head);
    s.applied = true;
    s.args = std::move(args);
    return s;
  }
  bool operator==(const SurfaceTerm&) const = default;
};

struct CheckOpts {
  bool allow_conversion = true;
  int conversion_fuel = 1000;
  std::vector<SortEqProof>* conversions = nullptr;  // record certificates here

  static CheckOpts strict() { return {false, 0, nullptr}; }
};

// Synthesizes the sort of a fully elaborated term.
Sort infer_sort(LangView L, const Ctx& C, const Term& t, const CheckOpts& opts = {});

// Throwing forms used module-internally.
void check_term_at(LangView L, const Ctx& C, const Term& t, const Sort& s, const CheckOpts& opts);
void check_sort_wf(LangView L, const Ctx& C, const Sort& s, const CheckOpts& opts);
void check_ctx_wf(LangView L, const Ctx& C, const CheckOpts& opts);

// Report-producing forms.
WfReport check_term(LangView L, const Ctx& C, const Term& t, const Sort& s);
WfReport wf_lang(const Lang& L);

// Inserts a rule's implicit arguments into a surface term by first-order
// unification against the expected sort and the declared argument sorts;
// falls back to bottom-up synthesis plus sort conversion when syntactic
// unification fails at the root.
Term elaborate(LangView L, const Ctx& C, const SurfaceTerm& st, const std::optional<Sort>& expected);
Sort elaborate_sort(LangView L, const Ctx& C, const SurfaceTerm& st);

// Drops implicit argument positions, producing the surface form.
SurfaceTerm erase(LangView L, const Term& t);
SurfaceTerm erase_sort(LangView L, const Sort& s);

// First-order syntactic unification of a against b, extending gamma.
// Variables named with a '?' prefix are solvable; all others are rigid.
bool unify_terms(const Term& a, const Term& b, MetaSubst& gamma);
bool unify_sorts(const Sort& a, const Sort& b, MetaSubst& gamma);
Term resolve_meta(const MetaSubst& gamma, const Term& t);

std::string show(const Term& t);
std::string show(const Sort& s);
std::string show(const Ctx& c);

}  // namespace gat

#endif
