#pragma once

// Proof-producing rewriting: oriented equations applied leftmost-outermost,
// with congruence through the kernel. Realizes the REWRITE_TAC family.

#include <optional>
#include <vector>

#include "tacticforge/itaut.hpp"
#include "tacticforge/rules.hpp"

namespace tforge {

struct RewriteRule {
  Theorem thm;   // A |- lhs = rhs, pattern variables free
  TermPtr lhs;
  TermPtr rhs;
  std::vector<TermPtr> pattern_vars;
};

enum class RewriteMode { Exhaustive, Once };

// Turns a theorem into oriented rules: universal prefixes become pattern
// variables, conjunctions split, ~p orients to p = F, other non-equations
// orient to concl = T.
std::vector<RewriteRule> rules_of_theorem(const Theory& thy, const Theorem& th);

struct MatchState {
  TypeSubst types;
  std::vector<std::pair<TermPtr, TermPtr>> terms;  // pattern var -> matched subterm
};

// First-order matching; pattern variables may be polymorphic (type variables
// in their types match concrete types). Locally bound variables of the
// subject never leak into bindings.
bool term_match(const TermPtr& pattern, const TermPtr& subject,
                const std::vector<TermPtr>& pattern_vars, MatchState& st);

// The instantiated rule theorem for a successful match at `subject`:
// A |- subject = sigma(rhs).
Theorem instantiate_rule(const RewriteRule& rule, const TermPtr& subject, const MatchState& st);

// True when the rule can rewrite forever: its left side matches its right
// side or a subterm of it.
bool rule_loops(const RewriteRule& rule);

struct Rewritten {
  Theorem conv;  // A |- t = result
  TermPtr result;
  size_t steps = 0;
};

// Leftmost-outermost rewriting. Exhaustive mode iterates to a fixpoint with
// a step cap (RewriteLimitExceeded beyond it) and drops looping rules; Once
// mode rewrites each position at most once in a single sweep.
Rewritten rewrite_engine(const Theory& thy, const TermPtr& t,
                         const std::vector<RewriteRule>& rules, RewriteMode mode,
                         size_t step_cap = 10000);

// The implicit simplification set of REWRITE_TAC/ASM_REWRITE_TAC: T/F clauses
// for the connectives plus the reflexivity clause, proved on first use.
std::vector<RewriteRule> make_basic_rewrites(const Theory& thy);

}  // namespace tforge
