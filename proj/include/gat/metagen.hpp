#ifndef GAT_METAGEN_HPP
#define GAT_METAGEN_HPP

#include <set>

#include "gat/ast.hpp"
#include "gat/elab.hpp"

namespace gat {

struct MetagenError : Error {
  enum class Code { NotASubstLanguage, BadSpec, ChecksFailed, NameCollision };
  Code code;
  MetagenError(Code c, const std::string& msg) : Error(msg), code(c) {}
};

// Names of the explicit-substitution core the generator builds lifts from.
// Substitution actions themselves (value/expression/block substitution) are
// recognized by shape.
struct SubstCalculusNames {
  Name ext = "ext";
  Name snoc = "snoc";
  Name cmp = "cmp";
  Name wk = "wk";
  Name vz = "vz";
};

// Generates the defining substitution equation for a constructor: an
// argument typed in an extended context receives the k-fold lifted
// substitution. The equation is named "<constructor>-subst".
std::vector<std::pair<Name, Rule>> gen_subst_eqs(const Lang& L, const Name& rule_name,
                                                 const SubstCalculusNames& names = {});

enum class SlotKind : uint8_t { Hole, Expr, Value };

struct EvalCtxEntry {
  Name name;              // the new context former
  Name base;              // the expression constructor it wraps
  std::vector<SlotKind> slots;  // one per explicit argument of base
};

struct EvalCtxSpec {
  Name ectx_sort = "ectx";
  Name hole = "hole";
  Name plug = "plug";
  Name ret = "ret";
  std::vector<EvalCtxEntry> entries;
};

// Generates, per entry, a well-formedness rule for the context former and
// the defining equation for plug on it.
Lang gen_eval_ctx(const Lang& L, const EvalCtxSpec& spec);

struct ParamSpec {
  Name param_name;          // metavariable name for the new parameter
  Sort param_sort;          // its sort (declared in the parameter language)
  Name param_lang;          // the block declaring that sort
  std::set<Name> marked;    // rules to parameterize
  std::map<Name, size_t> insert_at;  // per-rule ctx position; default front
  size_t position_of(const Name& rule) const {
    auto it = insert_at.find(rule);
    return it == insert_at.end() ? 0 : it->second;
  }
};

// ok iff no unmarked rule depends on a marked head and every insertion
// position is valid; diagnostics carry the violating edges.
WfReport param_checks(const ParamSpec& spec, const Lang& L);

// Marked rules gain one ctx entry (param_name : param_sort) at their
// insertion position; every occurrence of a marked head gains the ambient
// parameter as an argument at that head's insertion position.
Lang parameterize_lang(const ParamSpec& spec, const Lang& L);

struct Compiler;  // translate.hpp
Term param_term(const ParamSpec& spec, const Term& t, const Name& ambient);
Sort param_sort_tf(const ParamSpec& spec, const Sort& s, const Name& ambient);

}  // namespace gat

#include "gat/translate.hpp"

namespace gat {
Compiler parameterize_compiler(const ParamSpec& spec_s, const ParamSpec& spec_t,
                               const Compiler& cmp);
}

#endif
