#pragma once

// Bounded sequent prover over the propositional connectives, producing
// kernel theorems directly. Quantified subformulas are treated as opaque
// atoms. The intuitionistic mode backs ITAUT_TAC; the classical mode adds
// excluded-middle splits and decides classical propositional validity.

#include <optional>
#include <vector>

#include "tacticforge/rules.hpp"

namespace tforge {

// Proves assumptions |- goal. On success the theorem's hypotheses are a
// subset of `assumptions` (up to alpha). Depth bounds the non-invertible
// search (implication-left and case splits).
std::optional<Theorem> prove_sequent(const Theory& thy, const std::vector<TermPtr>& assumptions,
                                     const TermPtr& goal, int depth, bool classical,
                                     const Deadline& deadline = Deadline::unlimited());

// Classical propositional tautology prover; iterative deepening up to
// `max_depth` nested splits.
std::optional<Theorem> taut(const Theory& thy, const TermPtr& goal, int max_depth = 16,
                            const Deadline& deadline = Deadline::unlimited());

// Replaces hypothesis proof_of_a.concl() in th by proof_of_a's hypotheses.
Theorem prove_hyp(const Theory& thy, const Theorem& proof_of_a, const Theorem& th);

}  // namespace tforge
