#ifndef GAT_PROOF_HPP
#define GAT_PROOF_HPP

#include <memory>

#include "gat/ast.hpp"
#include "gat/kernel.hpp"

namespace gat {

struct ProofError : Error {
  enum class Code {
    UnknownRule,
    BadAxiomInstance,
    EndpointMismatch,
    IllTypedRefl,
    BadCong,
    BadConv,
    Malformed
  };
  Code code;
  ProofError(Code c, const std::string& msg) : Error(msg), code(c) {}
};

struct SortEqProof;

// Reified equality derivations: the reflexive, symmetric, transitive,
// congruence closure of a language's equations, as a checkable tree.
struct EqProof {
  enum class Kind : uint8_t { Refl, Sym, Trans, Cong, Axiom, ConvSort };
  Kind kind = Kind::Refl;
  Term base;                           // Refl
  Name head;                           // Cong: constructor; Axiom: rule name
  MetaSubst inst;                      // Axiom
  std::vector<EqProof> kids;           // Sym:1 Trans:2 Cong:n ConvSort:1
  std::shared_ptr<SortEqProof> conv;   // ConvSort

  static EqProof refl(Term t);
  static EqProof sym(EqProof p);
  static EqProof trans(EqProof p, EqProof q);
  static EqProof cong(Name head, std::vector<EqProof> kids);
  static EqProof axiom(Name rule, MetaSubst inst);
  static EqProof conv_sort(SortEqProof sp, EqProof p);
};

// Same shape over sorts. Cong carries term proofs for the sort's arguments.
struct SortEqProof {
  enum class Kind : uint8_t { Refl, Sym, Trans, Cong, Axiom };
  Kind kind = Kind::Refl;
  Sort base;                        // Refl
  Name head;                        // Cong: sort constructor; Axiom: rule name
  MetaSubst inst;                   // Axiom
  std::vector<SortEqProof> kids;    // Sym:1 Trans:2
  std::vector<EqProof> term_kids;   // Cong

  static SortEqProof refl(Sort s);
  static SortEqProof sym(SortEqProof p);
  static SortEqProof trans(SortEqProof p, SortEqProof q);
  static SortEqProof cong(Name head, std::vector<EqProof> term_kids);
  static SortEqProof axiom(Name rule, MetaSubst inst);
};

struct Equation {
  Term lhs, rhs;
  Sort sort;
  bool operator==(const Equation&) const = default;
};

struct SortEquation {
  Sort lhs, rhs;
  bool operator==(const SortEquation&) const = default;
};

// The trusted checker. Validates the derivation under (L, C) and returns the
// proved equation; throws ProofError otherwise. Uses strict (conversion-free)
// typing internally; conversion must appear explicitly as ConvSort nodes.
Equation check_eq(LangView L, const Ctx& C, const EqProof& p);
SortEquation check_sort_eq(LangView L, const Ctx& C, const SortEqProof& p);

// Instantiates a proof's ambient metavariables; checking the result yields
// the gamma-instantiated equation.
EqProof subst_into_proof(const MetaSubst& gamma, const EqProof& p);
SortEqProof subst_into_proof(const MetaSubst& gamma, const SortEqProof& p);

// True when the proof uses no Axiom leaves (it proves t = t trivially).
bool is_pure_refl(const EqProof& p);
bool is_pure_refl(const SortEqProof& p);

// Axiom rule names used anywhere in the proof, in traversal order.
void axiom_names(const EqProof& p, std::vector<Name>& out);
void axiom_names(const SortEqProof& p, std::vector<Name>& out);

bool proof_equal(const EqProof& a, const EqProof& b);
bool proof_equal(const SortEqProof& a, const SortEqProof& b);

}  // namespace gat

#endif
