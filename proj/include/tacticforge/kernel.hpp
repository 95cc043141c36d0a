#pragma once

// LCF-style trusted core. Theorem values can only be produced by the rule
// set in class Kernel; everything above this layer is convenience.

#include <atomic>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "tacticforge/util.hpp"

namespace tforge {

class Type;
using TypePtr = std::shared_ptr<const Type>;

class Type {
 public:
  enum class Kind { Var, App };

  static TypePtr var(std::string name);
  static TypePtr app(std::string op, std::vector<TypePtr> args);

  Kind kind() const { return kind_; }
  bool is_var() const { return kind_ == Kind::Var; }
  bool is_app() const { return kind_ == Kind::App; }
  // Variable name, or operator token for applications.
  const std::string& name() const { return name_; }
  const std::vector<TypePtr>& args() const { return args_; }

  bool is_fun() const { return kind_ == Kind::App && name_ == "fun"; }
  const TypePtr& dom() const;
  const TypePtr& cod() const;

  uint64_t hash() const { return hash_; }

 private:
  Type(Kind k, std::string name, std::vector<TypePtr> args);
  Kind kind_;
  std::string name_;
  std::vector<TypePtr> args_;
  uint64_t hash_;
};

bool type_equal(const TypePtr& a, const TypePtr& b);

TypePtr ty_bool();
TypePtr ty_fun(TypePtr dom, TypePtr cod);

// Type substitution (type variable -> type).
using TypeSubst = std::vector<std::pair<std::string, TypePtr>>;
TypePtr type_subst(const TypeSubst& theta, const TypePtr& ty);

// First-order matching of a (possibly polymorphic) pattern type against a
// concrete type; extends `theta`, returns false on mismatch.
bool type_match(const TypePtr& pattern, const TypePtr& concrete, TypeSubst& theta);

bool type_contains_var(const TypePtr& ty);

class Term;
using TermPtr = std::shared_ptr<const Term>;

class Term {
 public:
  enum class Kind { Var, Const, Comb, Abs };

  static TermPtr var(std::string name, TypePtr ty);
  // Raw constant node; environment-checked construction lives in mk_const.
  static TermPtr constant(std::string name, TypePtr ty);
  static TermPtr comb(TermPtr fn, TermPtr arg);  // throws TypeMismatch
  static TermPtr abs(TermPtr bound_var, TermPtr body);

  Kind kind() const { return kind_; }
  bool is_var() const { return kind_ == Kind::Var; }
  bool is_const() const { return kind_ == Kind::Const; }
  bool is_comb() const { return kind_ == Kind::Comb; }
  bool is_abs() const { return kind_ == Kind::Abs; }

  const std::string& name() const { return name_; }  // Var/Const only
  const TermPtr& fn() const { return a_; }           // Comb
  const TermPtr& arg() const { return b_; }          // Comb
  const TermPtr& bound() const { return a_; }        // Abs (a Var)
  const TermPtr& body() const { return b_; }         // Abs

  const TypePtr& type() const { return ty_; }
  uint64_t hash() const { return hash_; }

 private:
  Term(Kind k, std::string name, TypePtr ty, TermPtr a, TermPtr b);
  friend uint64_t fingerprint_term(const TermPtr& t);
  Kind kind_;
  std::string name_;
  TypePtr ty_;   // full type of the term (computed for Comb/Abs)
  TermPtr a_, b_;
  uint64_t hash_;
  mutable std::atomic<uint64_t> fp_cache_{0};
};

// Structural (name-sensitive) equality.
bool term_equal(const TermPtr& a, const TermPtr& b);
// Equality up to consistent bound-variable renaming.
bool alpha_equal(const TermPtr& a, const TermPtr& b);

std::vector<TermPtr> free_vars(const TermPtr& t);
bool is_free_in(const TermPtr& var, const TermPtr& t);
bool is_closed(const TermPtr& t);

// Capture-avoiding substitution of free variables. Pairs are (var, replacement)
// with matching types.
using TermSubst = std::vector<std::pair<TermPtr, TermPtr>>;
TermPtr term_subst(const TermSubst& theta, const TermPtr& t);

// Capture-avoiding type instantiation inside a term.
TermPtr term_inst_type(const TypeSubst& theta, const TermPtr& t);

// A variable named like `name` (priming with ') that is not free in any of `avoid`.
TermPtr variant_var(const TermPtr& var, const std::vector<TermPtr>& avoid);

// --- equality syntax (primitive constant "=") ----------------------------

bool is_eq(const TermPtr& t);
std::pair<TermPtr, TermPtr> dest_eq(const TermPtr& t);  // throws NotAnEquation
TermPtr mk_eq(const TermPtr& lhs, const TermPtr& rhs);  // throws TypeMismatch

enum class Provenance { Rule, Axiom, Definition, TrustedImport };

class Theorem;

class Environment {
 public:
  // bool/0, fun/2 and polymorphic "=" are pre-registered.
  Environment();

  void declare_type_operator(const std::string& name, size_t arity);
  void declare_constant(const std::string& name, TypePtr generic_ty);
  bool has_type_operator(const std::string& name) const;
  size_t type_arity(const std::string& name) const;  // throws UnknownConstant
  bool has_constant(const std::string& name) const;
  const TypePtr& constant_type(const std::string& name) const;

  const std::vector<Theorem>& axioms() const { return axioms_; }
  const std::vector<std::pair<std::string, TermPtr>>& definitions() const {
    return definitions_;
  }
  const std::map<std::string, size_t>& type_operators() const { return type_operators_; }
  const std::map<std::string, TypePtr>& constants() const { return constants_; }

  // Checks every type operator in `ty` is registered with matching arity.
  void check_type(const TypePtr& ty) const;

 private:
  friend class Kernel;
  std::map<std::string, size_t> type_operators_;
  std::map<std::string, TypePtr> constants_;
  std::vector<Theorem> axioms_;
  std::vector<std::pair<std::string, TermPtr>> definitions_;
};

// Environment-checked term constructors (the mk_term surface).
TermPtr mk_var(const std::string& name, const TypePtr& ty);
// `ty` must be an instance of the registered generic type.
TermPtr mk_const(const Environment& env, const std::string& name, const TypePtr& ty);
TermPtr mk_comb(const TermPtr& fn, const TermPtr& arg);
TermPtr mk_abs(const TermPtr& var, const TermPtr& body);

class Theorem {
 public:
  // hyps are deduplicated up to alpha-equivalence and sorted by fingerprint.
  const std::vector<TermPtr>& hyps() const { return hyps_; }
  const TermPtr& concl() const { return concl_; }
  Provenance provenance() const { return prov_; }
  uint64_t fingerprint() const { return fingerprint_; }

  Theorem(const Theorem&) = default;
  Theorem& operator=(const Theorem&) = default;

 private:
  Theorem(std::vector<TermPtr> hyps, TermPtr concl, Provenance prov);
  friend class Kernel;
  std::vector<TermPtr> hyps_;
  TermPtr concl_;
  Provenance prov_;
  uint64_t fingerprint_;
};

enum class RuleId {
  REFL,
  TRANS,
  MK_COMB,
  ABS,
  BETA,
  ASSUME,
  EQ_MP,
  DEDUCT_ANTISYM,
  INST,
  INST_TYPE,
};

const char* rule_name(RuleId id);

// The ten primitive rules plus the axiom/definition/trusted entry points.
// Everything else in the system derives theorems through these.
class Kernel {
 public:
  // |- t = t
  static Theorem refl(const TermPtr& t);
  // A |- s = t,  B |- t' = u,  t alpha t'   ==>   A u B |- s = u
  static Theorem trans(const Theorem& st, const Theorem& tu);
  // A |- f = g,  B |- x = y   ==>   A u B |- f x = g y
  static Theorem mk_comb_rule(const Theorem& fg, const Theorem& xy);
  // A |- s = t,  x not free in A   ==>   A |- (\x. s) = (\x. t)
  static Theorem abs_rule(const TermPtr& var, const Theorem& st);
  // |- (\x. t) x = t   (argument must be the bound variable itself)
  static Theorem beta(const TermPtr& redex);
  // {p} |- p
  static Theorem assume(const TermPtr& p);
  // A |- p = q,  B |- p'   ==>   A u B |- q
  static Theorem eq_mp(const Theorem& pq, const Theorem& p);
  // A |- p,  B |- q   ==>   (A - {q}) u (B - {p}) |- p = q
  static Theorem deduct_antisym(const Theorem& a, const Theorem& b);
  // Capture-avoiding instantiation of free term variables.
  static Theorem inst(const TermSubst& theta, const Theorem& th);
  // Capture-avoiding instantiation of type variables.
  static Theorem inst_type(const TypeSubst& theta, const Theorem& th);

  // Registers `p` (closed, bool) as an axiom of `env` and returns |- p.
  static Theorem new_axiom(Environment& env, const TermPtr& p);
  // Adds constant `name` and returns |- name = body (body closed).
  static Theorem define(Environment& env, const std::string& name, const TermPtr& body);
  // Soundness escape hatch used by snapshot load and wire registration in
  // trusted-import mode; provenance records the trust decision.
  static Theorem trusted_import(std::vector<TermPtr> hyps, TermPtr concl);

  // Generic dispatcher over RuleId; used by fuzzing and the spec surface.
  struct RuleInputs {
    std::vector<Theorem> thms;
    std::vector<TermPtr> terms;
    TermSubst term_subst;
    TypeSubst type_subst;
  };
  static Theorem rule(RuleId id, const RuleInputs& in);
};

}  // namespace tforge
