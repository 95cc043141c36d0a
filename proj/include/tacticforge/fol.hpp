#pragma once

// Bounded first-order automation behind MESON_TAC/ASM_MESON_TAC: typed
// first-order terms, unification with occurs check, clausification of
// prefix-normal formulas, and an iterative-deepening connection tableau.
// Closed tableaux carry enough instantiation data to replay through the
// kernel (meson.cpp).

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tacticforge/tactics.hpp"

namespace tforge::fol {

struct FTerm;
using FTermPtr = std::shared_ptr<const FTerm>;

// Variables carry the HOL type of the quantifier they came from; function
// symbols carry their HOL head term (constant, free variable, or frozen
// lambda) or a Skolem id.
struct FTerm {
  bool is_var = false;
  std::string name;  // variable name, symbol key, or _sk<N>
  std::vector<FTermPtr> args;
  TypePtr ty;         // variable type / result type of the symbol
  TermPtr origin;     // HOL head for non-Skolem symbols; null for Skolem/vars
  int skolem_id = -1;

  static FTermPtr var(std::string name, TypePtr ty);
  static FTermPtr fn(std::string key, std::vector<FTermPtr> args, TypePtr result,
                     TermPtr origin);
  static FTermPtr skolem(int id, std::vector<FTermPtr> args, TypePtr result);
};

std::string fterm_print(const FTermPtr& t);

struct Atom {
  std::string pred;  // predicate key
  std::vector<FTermPtr> args;
  TermPtr origin;    // HOL head of the predicate (null for equality key reuse)
};

std::string atom_print(const Atom& a);

struct Literal {
  bool positive = true;
  Atom atom;
};

struct Clause {
  std::vector<Literal> literals;  // duplicate literals removed
  int source = -1;                // index into the clausification sources
};

// Idempotent binding store with an undo trail.
class Subst {
 public:
  const FTermPtr* lookup(const std::string& var) const;
  FTermPtr walk(const FTermPtr& t) const;        // resolve top-level variable chains
  FTermPtr deep_apply(const FTermPtr& t) const;  // resolve everywhere
  void bind(const std::string& var, const FTermPtr& t);
  size_t mark() const { return trail_.size(); }
  void undo(size_t mark);

 private:
  std::map<std::string, FTermPtr> bindings_;
  std::vector<std::string> trail_;
};

enum class UnifyStatus { Ok, Clash, OccursCheck };

UnifyStatus unify_terms(const FTermPtr& a, const FTermPtr& b, Subst& subst);
// Most general unifier extending subst; on failure subst is restored.
UnifyStatus unify(const Atom& a, const Atom& b, Subst& subst);

// --- clausification ---------------------------------------------------------

// One reconstruction step of a source formula's quantifier prefix.
struct PrefixStep {
  bool universal = true;   // universal from the refutation's point of view
  std::string var_name;    // FOL variable name (universal steps)
  TermPtr hol_var;         // original bound variable (name/type)
  int skolem_id = -1;      // existential steps
};

struct SourceFormula {
  // Theorem for axioms/hypothesis sources; the negated conclusion is an
  // assumption marker instead.
  std::optional<Theorem> thm;
  TermPtr formula;  // the HOL formula whose prefix is walked (goal: its concl)
  bool negated = false;  // true for the goal conclusion (refuted side)
  std::vector<PrefixStep> prefix;
};

struct Clausified {
  std::vector<SourceFormula> sources;
  std::vector<Clause> clauses;
  std::vector<std::pair<int, size_t>> skolem_owner;  // skolem id -> (source, prefix pos)
};

// Negated conclusion + hypotheses + axioms in CNF. Inputs must be
// prefix-normal: a quantifier prefix over a propositional matrix (boolean
// equations expand as iff). Throws NotFirstOrderizable otherwise.
Clausified clausify(const Theory& thy, const Goal& goal, const std::vector<Theorem>& axioms);

// --- connection tableau -------------------------------------------------------

struct ProofInstance {
  int clause_index = -1;
  std::map<std::string, FTermPtr> bindings;  // source clause variable -> term
};

struct TableauProof {
  std::vector<ProofInstance> instances;
  int depth = 0;
  size_t inferences = 0;
};
struct Exhausted {
  size_t inferences = 0;
};
struct SearchTimeout {};

using TableauResult = std::variant<TableauProof, Exhausted, SearchTimeout>;

inline bool proved(const TableauResult& r) { return std::holds_alternative<TableauProof>(r); }

// Iterative deepening on tableau path depth 1..max_depth, extension and
// reduction steps. Deterministic for fixed inputs and inference cap.
TableauResult tableau_prove(const std::vector<Clause>& clauses, int max_depth,
                            const Deadline& deadline, size_t max_inferences = 2000000);

}  // namespace tforge::fol

namespace tforge {

// Full MESON pipeline: clausify, search, reconstruct through the kernel.
// include_hyps distinguishes ASM_MESON_TAC from MESON_TAC.
std::optional<Theorem> meson_prove(const Theory& thy, const Goal& goal,
                                   const std::vector<Theorem>& args, bool include_hyps,
                                   const Deadline& deadline);

}  // namespace tforge
