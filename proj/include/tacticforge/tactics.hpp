#pragma once

// The fixed tactic set. Tactic application is stateless: a pure function of
// (goal, tactic, arguments, budget). Every Success carries a justification
// that rebuilds the goal's theorem from subgoal theorems through the kernel.

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tacticforge/conv.hpp"
#include "tacticforge/rules.hpp"

namespace tforge {

struct Goal {
  std::vector<TermPtr> hyps;
  TermPtr concl;

  // Checks boolean typing and deduplicates hypotheses up to alpha.
  static Goal make(std::vector<TermPtr> hyps, TermPtr concl);
  uint64_t fingerprint() const;
};

bool goal_alpha_equal(const Goal& a, const Goal& b);

enum class TacticId {
  ACCEPT_TAC,
  REFL_TAC,
  CONJ_TAC,
  DISJ1_TAC,
  DISJ2_TAC,
  DISCH_TAC,
  UNDISCH_TAC0,
  GEN_TAC,
  EQ_TAC,
  MATCH_MP_TAC,
  MP_TAC,
  REWRITE_TAC,
  ASM_REWRITE_TAC,
  PURE_ONCE_REWRITE_TAC,
  MESON_TAC,
  ASM_MESON_TAC,
  CONTR_TAC,
  ITAUT_TAC,
};

enum class ArityClass { NoArgs, ThmList };

const std::vector<TacticId>& all_tactics();
const char* tactic_name(TacticId id);
std::optional<TacticId> tactic_from_name(const std::string& name);
ArityClass tactic_arity(TacticId id);

using Justification = std::function<Theorem(const std::vector<Theorem>&)>;

struct TacticSuccess {
  std::vector<Goal> subgoals;
  Justification justification;
};
struct TacticFailure {
  std::string reason;
};
struct TacticTimeout {};

using TacticResult = std::variant<TacticSuccess, TacticFailure, TacticTimeout>;

inline bool is_success(const TacticResult& r) {
  return std::holds_alternative<TacticSuccess>(r);
}
inline bool is_timeout(const TacticResult& r) {
  return std::holds_alternative<TacticTimeout>(r);
}
inline const TacticSuccess& as_success(const TacticResult& r) {
  return std::get<TacticSuccess>(r);
}
inline std::string failure_reason(const TacticResult& r) {
  if (auto* f = std::get_if<TacticFailure>(&r)) return f->reason;
  if (std::holds_alternative<TacticTimeout>(r)) return "timeout";
  return "";
}

class TacticEngine {
 public:
  explicit TacticEngine(const Theory& thy);

  const Theory& theory() const { return thy_; }
  const std::vector<RewriteRule>& basic_rewrites() const { return basic_rewrites_; }

  TacticResult apply(const Goal& goal, TacticId tactic, const std::vector<Theorem>& args,
                     double budget_seconds = 5.0) const;

 private:
  const Theory& thy_;
  std::vector<RewriteRule> basic_rewrites_;
};

// First-order matching of an implication's conclusion against the goal,
// exposed for direct testing.
TacticResult match_mp(const TacticEngine& engine, const Goal& goal, const Theorem& impl);

// Test-mode soundness check: feeds assumption-based stand-ins for the
// subgoals through the justification and validates the resulting theorem
// against the goal.
bool justification_valid(const Theory& thy, const Goal& goal, const TacticSuccess& s);

}  // namespace tforge
