#ifndef GAT_CORPUS_HPP
#define GAT_CORPUS_HPP

#include "gat/dsl.hpp"

namespace gat {

struct CorpusEntry {
  enum class Kind : uint8_t { Language, CompilerPass };
  Kind kind = Kind::Language;
  Name name;
  std::string file;
  // "wf-ok" for languages; "discharge-clean" or "discharge-manual" for passes
  std::string expect;
  std::vector<Name> manual;  // expected Manual entries, in source order
};

struct Corpus {
  Registry reg;
  std::string dir;
  std::vector<CorpusEntry> entries;

  const Lang& lang(const Name& n) const { return reg.lang(n).full; }
  const Lang& ext(const Name& n) const { return reg.lang(n).ext; }
  const CompilerDef& pass(const Name& n) const { return reg.compiler(n); }

  std::vector<Obligation> pass_obligations(const Name& cmp) const;
  DischargeReport discharge_pass(const Name& cmp, int jobs = 1) const;
};

// Parses every corpus file, in dependency order. Any parse or elaboration
// failure throws.
Corpus load_corpus(const std::string& dir);

// Compiles a closed boolean program through the CPS pass and normalizes the
// result against the continuation variable; returns (target normal form,
// the source boolean value it came from).
std::pair<Term, Term> demo_cps_cross(const Corpus& c, const Term& program);

// Runs the oriented source axioms and the compiled program's target axioms
// as small-step interpreters and checks the observable values are related.
bool demo_op_bridge(const Corpus& c, const Term& e);

// Compiles through vcompose(cc, cps), asserting it agrees with sequential
// compilation and that the output is well-formed in the closure calculus.
Term demo_pipeline(const Corpus& c, const Term& e);

// Compiles an IMP statement; for `skip` the normal form is the continuation
// applied to the unit value.
Term demo_imp(const Corpus& c, const Term& stmt);

// Cross-language value relation of the boolean pass: true ~ nv 1, false ~ nv 0,
// and nv n ~ nv n for source naturals.
bool corpus_value_related(const Term& source_value, const Term& target_value);

}  // namespace gat

#endif
