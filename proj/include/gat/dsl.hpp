#ifndef GAT_DSL_HPP
#define GAT_DSL_HPP

#include "gat/ast.hpp"
#include "gat/elab.hpp"
#include "gat/metagen.hpp"
#include "gat/proof.hpp"
#include "gat/sexpr.hpp"
#include "gat/translate.hpp"

namespace gat {

// A language block: `over` names other blocks whose rule lists (recursively
// spliced, deduplicated by block name) form the prefix this block's own
// rules extend. A block with no rules of its own assembles a stack.
struct LangDef {
  Name name;
  std::vector<Name> over;
  Lang ext;   // rules declared or generated in this block
  Lang full;  // spliced prefix ++ ext
  std::string file;
};

struct CompilerDef {
  Name name;
  Name source;  // lang block whose ext is the obligation domain
  Name target;  // lang block (full)
  Name pre;     // compiler this one extends, or empty
  bool domain_full = false;  // obligations cover the source's full rule list
  Compiler ext;
  Compiler full;  // pre chain ++ ext
  std::string file;
};

struct Registry {
  std::map<Name, LangDef> langs;
  std::map<Name, CompilerDef> compilers;
  std::map<Name, std::map<Name, EqProof>> manual_proofs;  // keyed by compiler
  std::map<Name, ParamSpec> paramspecs;

  const LangDef& lang(const Name& n) const;
  const CompilerDef& compiler(const Name& n) const;
  const std::map<Name, EqProof>& proofs_for(const Name& compiler) const;
};

struct Loader {
  Registry reg;

  void load_file(const std::string& path);
  void load_text(const std::string& text, const std::string& filename);

 private:
  void do_lang(const Sexpr& form, const std::string& filename);
  void do_compiler(const Sexpr& form, const std::string& filename);
  void do_proofs(const Sexpr& form);
  void do_paramspec(const Sexpr& form);
};

// Surface syntax helpers.
SurfaceTerm parse_surface(const Sexpr& e);
SurfaceTerm parse_surface_sort(const Sexpr& e);
Sexpr print_surface(const SurfaceTerm& t);

// Full (elaborated) terms: a bare symbol is a metavariable, a list is a
// constructor with every argument present.
Term parse_term_full(const Sexpr& e);
Sort parse_sort_full(const Sexpr& e);
Sexpr print_term_full(const Term& t);
Sexpr print_sort_full(const Sort& s);

EqProof parse_proof(const Sexpr& e);
SortEqProof parse_sort_proof(const Sexpr& e);
Sexpr print_proof(const EqProof& p);
Sexpr print_sort_proof(const SortEqProof& p);

// Canonical block printers; parse(print(x)) == x.
Sexpr print_lang(const LangDef& def, LangView L);
Sexpr print_compiler(const CompilerDef& def, LangView target);

std::string proof_digest(const EqProof& p);
std::string report_json(const Name& pass, const DischargeReport& rep);

}  // namespace gat

#endif
