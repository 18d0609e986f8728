#ifndef GAT_KERNEL_HPP
#define GAT_KERNEL_HPP

#include "gat/ast.hpp"

namespace gat {

// Metavariable substitution: homomorphic on Con nodes, unmapped Vars stay.
Term apply_subst(const MetaSubst& gamma, const Term& t);
Sort apply_subst(const MetaSubst& gamma, const Sort& s);
Ctx apply_subst(const MetaSubst& gamma, const Ctx& c);

// gamma1 after gamma2: x maps to gamma1(gamma2(x)); names only mapped by
// gamma1 pass through as well.
MetaSubst compose(const MetaSubst& gamma1, const MetaSubst& gamma2);

bool structural_eq(const Term& a, const Term& b);
bool structural_eq(const Sort& a, const Sort& b);

// Concatenation of rule lists; throws Error("DuplicateName: ...") on a name
// collision between base and ext.
Lang lang_append(const Lang& base, const Lang& ext);

// Unordered inclusion of all (name, rule) pairs of a in b.
bool lang_subset(const Lang& a, const Lang& b);

// Free metavariables of a term/sort, in first-occurrence order.
void free_vars(const Term& t, std::vector<Name>& out);
void free_vars(const Sort& s, std::vector<Name>& out);
bool mentions_var(const Term& t, const Name& n);
bool mentions_var(const Sort& s, const Name& n);
bool mentions_head(const Term& t, const Name& n);
bool mentions_head(const Sort& s, const Name& n);

}  // namespace gat

#endif
