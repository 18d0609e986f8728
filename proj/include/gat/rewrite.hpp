#ifndef GAT_REWRITE_HPP
#define GAT_REWRITE_HPP

#include <functional>
#include <optional>

#include "gat/ast.hpp"
#include "gat/elab.hpp"
#include "gat/proof.hpp"

namespace gat {

// Left-to-right, fuel-bounded normalization with proof certificates.
struct RewriteConfig {
  int fuel = 10000;
  // A rule participates when the filter accepts it; null accepts all.
  std::function<bool(const Name&, const Rule&)> filter;
  bool forward_only = true;  // equations are only ever applied left-to-right

  static RewriteConfig defaults();
  // Restricts to rules where each metavariable occurs in the RHS at most as
  // often as in the LHS.
  static RewriteConfig non_duplicating();
  static RewriteConfig with_fuel(int fuel);
};

// Reads GATFORGE_FUEL, falling back to the built-in default of 10000.
int default_fuel();

struct RewriteResult {
  Term normal_form;
  EqProof certificate;  // proves input = normal_form
  int steps_used = 0;
  bool fuel_exhausted = false;
};

// First-order matching; repeated metavariables must match equal subterms.
std::optional<MetaSubst> match_pattern(const Term& pattern, const Term& subject);

bool rule_is_duplicating(const Rule& r);

// Innermost, leftmost, repeated to fixpoint; rules tried in language order.
// The certificate is checked internally before returning.
RewriteResult normalize(LangView L, const Ctx& C, const Term& t, const RewriteConfig& cfg);

// Normalizes both sides; on equal normal forms returns trans(ca, sym(cb)).
std::optional<EqProof> join(LangView L, const Ctx& C, const Term& a, const Term& b,
                            const RewriteConfig& cfg);
std::optional<SortEqProof> join_sorts(LangView L, const Ctx& C, const Sort& a, const Sort& b,
                                      const RewriteConfig& cfg);

// normalize with the filter defaulting to the non-duplicating rule subset.
RewriteResult partial_eval(LangView L, const Ctx& C, const Term& t, RewriteConfig cfg);

}  // namespace gat

#endif
