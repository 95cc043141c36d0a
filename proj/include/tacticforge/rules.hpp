#pragma once

// Boolean connectives defined on top of the kernel, plus the standard
// derived inference rules. Nothing here extends the trusted core: every
// theorem is produced through Kernel rule applications on the connective
// definitions and the classical axiom.

#include <map>
#include <utility>
#include <vector>

#include "tacticforge/kernel.hpp"

namespace tforge {

// --- connective syntax -----------------------------------------------------

TermPtr mk_true();
TermPtr mk_false();
TermPtr mk_neg(const TermPtr& p);
TermPtr mk_conj(const TermPtr& a, const TermPtr& b);
TermPtr mk_disj(const TermPtr& a, const TermPtr& b);
TermPtr mk_imp(const TermPtr& a, const TermPtr& b);
TermPtr mk_forall(const TermPtr& var, const TermPtr& body);
TermPtr mk_exists(const TermPtr& var, const TermPtr& body);

bool is_true(const TermPtr& t);
bool is_false(const TermPtr& t);
bool is_neg(const TermPtr& t);
bool is_conj(const TermPtr& t);
bool is_disj(const TermPtr& t);
bool is_imp(const TermPtr& t);
bool is_forall(const TermPtr& t);
bool is_exists(const TermPtr& t);
bool is_bool_eq(const TermPtr& t);  // equation between booleans

TermPtr dest_neg(const TermPtr& t);
std::pair<TermPtr, TermPtr> dest_conj(const TermPtr& t);
std::pair<TermPtr, TermPtr> dest_disj(const TermPtr& t);
std::pair<TermPtr, TermPtr> dest_imp(const TermPtr& t);
// Returns (bound var, body); requires the quantifier body to be an abstraction.
std::pair<TermPtr, TermPtr> dest_forall(const TermPtr& t);
std::pair<TermPtr, TermPtr> dest_exists(const TermPtr& t);

std::pair<std::vector<TermPtr>, TermPtr> strip_forall(const TermPtr& t);
TermPtr list_mk_forall(const std::vector<TermPtr>& vars, const TermPtr& body);
TermPtr list_mk_conj(const std::vector<TermPtr>& ts);  // ts nonempty
TermPtr list_mk_disj(const std::vector<TermPtr>& ts);

// --- boot theory -------------------------------------------------------------

// Environment with T, /\, ==>, !, ?, \/, F, ~ defined and the classical
// EXCLUDED_MIDDLE axiom registered. Built deterministically.
class Theory {
 public:
  static Theory boot();

  Environment env;

  const Theorem& thm(const std::string& name) const;
  bool has_thm(const std::string& name) const { return thms_.count(name) != 0; }
  const std::map<std::string, Theorem>& theorems() const { return thms_; }

 private:
  Theory() = default;
  std::map<std::string, Theorem> thms_;
};

// --- derived rules -----------------------------------------------------------

namespace rules {

Theorem sym(const Theorem& th);
Theorem alpha_link(const TermPtr& a, const TermPtr& b);  // |- a = b for alpha-equal terms
Theorem ap_term(const TermPtr& f, const Theorem& th);
Theorem ap_thm(const Theorem& th, const TermPtr& x);
Theorem beta_conv(const TermPtr& redex);  // (\x. t) s, any s
// Expands a definitional equation applied to arguments:
// |- c a1 .. an = body[a1..an] (outer redexes reduced).
Theorem apply_def(const Theorem& def, const std::vector<TermPtr>& args);
// Reduces spine (head) beta redexes only: |- t = t'.
Theorem head_beta_norm(const TermPtr& t);

Theorem truth(const Theory& thy);
Theorem eqt_intro(const Theory& thy, const Theorem& th);
Theorem eqt_elim(const Theory& thy, const Theorem& th);
Theorem eqf_intro(const Theory& thy, const Theorem& th);  // A |- ~p  ==>  A |- p = F
Theorem eqf_elim(const Theory& thy, const Theorem& th);   // A |- p = F  ==>  A |- ~p

Theorem conj(const Theory& thy, const Theorem& a, const Theorem& b);
Theorem conjunct1(const Theory& thy, const Theorem& th);
Theorem conjunct2(const Theory& thy, const Theorem& th);

Theorem mp(const Theory& thy, const Theorem& impl, const Theorem& ant);
Theorem disch(const Theory& thy, const TermPtr& p, const Theorem& th);
Theorem undisch(const Theory& thy, const Theorem& th);
Theorem add_assum(const Theory& thy, const TermPtr& p, const Theorem& th);

Theorem gen(const Theory& thy, const TermPtr& var, const Theorem& th);
Theorem spec(const Theory& thy, const TermPtr& t, const Theorem& th);
// Strips the universal prefix with variables renamed away from `avoid`.
Theorem spec_all(const Theory& thy, const Theorem& th,
                 std::vector<TermPtr>* vars_out = nullptr,
                 const std::vector<TermPtr>& avoid = {});

// A |- p[w/x]  ==>  A |- ?x. p   (ex_term is the target existential)
Theorem exists_intro(const Theory& thy, const TermPtr& ex_term, const TermPtr& witness,
                     const Theorem& th);
// v fresh; from A |- ?x. p and B u {p[v/x]} |- q derive A u B |- q.
Theorem choose(const Theory& thy, const TermPtr& v, const Theorem& exth,
               const Theorem& bodyth);

Theorem disj1(const Theory& thy, const Theorem& th, const TermPtr& q);
Theorem disj2(const Theory& thy, const TermPtr& p, const Theorem& th);
Theorem disj_cases(const Theory& thy, const Theorem& orth, const Theorem& tha,
                   const Theorem& thb);

Theorem not_intro(const Theory& thy, const Theorem& th);  // A |- p ==> F  ->  A |- ~p
Theorem not_elim(const Theory& thy, const Theorem& th);   // A |- ~p  ->  A |- p ==> F
Theorem contr(const Theory& thy, const TermPtr& p, const Theorem& falseth);
Theorem ccontr(const Theory& thy, const TermPtr& p, const Theorem& th);

Theorem imp_antisym(const Theory& thy, const Theorem& ab, const Theorem& ba);
std::pair<Theorem, Theorem> eq_imp_rule(const Theory& thy, const Theorem& th);

}  // namespace rules

}  // namespace tforge
