#include "tacticforge/tactics.hpp"

#include <algorithm>

#include "tacticforge/itaut.hpp"
#include "tacticforge/sexpr.hpp"

namespace tforge {

// In meson.cpp.
std::optional<Theorem> meson_prove(const Theory& thy, const Goal& goal,
                                   const std::vector<Theorem>& args, bool include_hyps,
                                   const Deadline& deadline);

Goal Goal::make(std::vector<TermPtr> hyps, TermPtr concl) {
  if (!type_equal(concl->type(), ty_bool()))
    fail(Err::TypeMismatch, "goal conclusion must be bool");
  Goal g;
  g.concl = std::move(concl);
  for (auto& h : hyps) {
    if (!type_equal(h->type(), ty_bool()))
      fail(Err::TypeMismatch, "goal hypothesis must be bool");
    bool dup = false;
    for (const auto& prev : g.hyps)
      if (alpha_equal(prev, h)) {
        dup = true;
        break;
      }
    if (!dup) g.hyps.push_back(std::move(h));
  }
  return g;
}

uint64_t Goal::fingerprint() const { return fingerprint_sequent(hyps, concl); }

bool goal_alpha_equal(const Goal& a, const Goal& b) {
  if (!alpha_equal(a.concl, b.concl)) return false;
  if (a.hyps.size() != b.hyps.size()) return false;
  // Hypotheses are sets; compare via fingerprints of the sequent.
  return a.fingerprint() == b.fingerprint();
}

const std::vector<TacticId>& all_tactics() {
  static const std::vector<TacticId> kAll = {
      TacticId::ACCEPT_TAC,    TacticId::REFL_TAC,        TacticId::CONJ_TAC,
      TacticId::DISJ1_TAC,     TacticId::DISJ2_TAC,       TacticId::DISCH_TAC,
      TacticId::UNDISCH_TAC0,  TacticId::GEN_TAC,         TacticId::EQ_TAC,
      TacticId::MATCH_MP_TAC,  TacticId::MP_TAC,          TacticId::REWRITE_TAC,
      TacticId::ASM_REWRITE_TAC, TacticId::PURE_ONCE_REWRITE_TAC,
      TacticId::MESON_TAC,     TacticId::ASM_MESON_TAC,   TacticId::CONTR_TAC,
      TacticId::ITAUT_TAC,
  };
  return kAll;
}

const char* tactic_name(TacticId id) {
  switch (id) {
    case TacticId::ACCEPT_TAC: return "ACCEPT_TAC";
    case TacticId::REFL_TAC: return "REFL_TAC";
    case TacticId::CONJ_TAC: return "CONJ_TAC";
    case TacticId::DISJ1_TAC: return "DISJ1_TAC";
    case TacticId::DISJ2_TAC: return "DISJ2_TAC";
    case TacticId::DISCH_TAC: return "DISCH_TAC";
    case TacticId::UNDISCH_TAC0: return "UNDISCH_TAC0";
    case TacticId::GEN_TAC: return "GEN_TAC";
    case TacticId::EQ_TAC: return "EQ_TAC";
    case TacticId::MATCH_MP_TAC: return "MATCH_MP_TAC";
    case TacticId::MP_TAC: return "MP_TAC";
    case TacticId::REWRITE_TAC: return "REWRITE_TAC";
    case TacticId::ASM_REWRITE_TAC: return "ASM_REWRITE_TAC";
    case TacticId::PURE_ONCE_REWRITE_TAC: return "PURE_ONCE_REWRITE_TAC";
    case TacticId::MESON_TAC: return "MESON_TAC";
    case TacticId::ASM_MESON_TAC: return "ASM_MESON_TAC";
    case TacticId::CONTR_TAC: return "CONTR_TAC";
    case TacticId::ITAUT_TAC: return "ITAUT_TAC";
  }
  return "?";
}

std::optional<TacticId> tactic_from_name(const std::string& name) {
  for (TacticId id : all_tactics())
    if (name == tactic_name(id)) return id;
  return std::nullopt;
}

ArityClass tactic_arity(TacticId id) {
  switch (id) {
    case TacticId::ACCEPT_TAC:
    case TacticId::MATCH_MP_TAC:
    case TacticId::MP_TAC:
    case TacticId::REWRITE_TAC:
    case TacticId::ASM_REWRITE_TAC:
    case TacticId::PURE_ONCE_REWRITE_TAC:
    case TacticId::MESON_TAC:
    case TacticId::ASM_MESON_TAC:
    case TacticId::CONTR_TAC:
      return ArityClass::ThmList;
    default:
      return ArityClass::NoArgs;
  }
}

namespace {

bool hyp_in(const TermPtr& h, const std::vector<TermPtr>& hyps) {
  for (const auto& g : hyps)
    if (alpha_equal(g, h)) return true;
  return false;
}

bool hyps_subset(const std::vector<TermPtr>& sub, const std::vector<TermPtr>& super) {
  for (const auto& h : sub)
    if (!hyp_in(h, super)) return false;
  return true;
}

TacticResult fail_tac(const std::string& reason) { return TacticFailure{reason}; }

std::vector<TermPtr> goal_frees(const Goal& g) {
  std::vector<TermPtr> out = free_vars(g.concl);
  for (const auto& h : g.hyps)
    for (const auto& v : free_vars(h)) out.push_back(v);
  return out;
}

}  // namespace

TacticEngine::TacticEngine(const Theory& thy)
    : thy_(thy), basic_rewrites_(make_basic_rewrites(thy)) {}

TacticResult match_mp(const TacticEngine& engine, const Goal& goal, const Theorem& impl) {
  const Theory& thy = engine.theory();
  if (!hyps_subset(impl.hyps(), goal.hyps))
    return fail_tac("no match: argument hypotheses exceed the goal's");
  std::vector<TermPtr> pvars;
  Theorem stripped = rules::spec_all(thy, impl, &pvars, goal_frees(goal));
  if (!is_imp(stripped.concl())) return fail_tac("no match: not an implication");
  auto [ante, cons] = dest_imp(stripped.concl());

  MatchState st;
  if (!term_match(cons, goal.concl, pvars, st)) return fail_tac("no match");

  // Leftover pattern variables (occurring only in the antecedent) stay as
  // themselves, renamed away from the goal's free variables.
  TermSubst subst;
  std::vector<TermPtr> avoid = goal_frees(goal);
  for (const auto& v : pvars) {
    bool bound = false;
    for (const auto& [pv, t] : st.terms)
      if (pv->name() == v->name() && type_equal(pv->type(), v->type())) {
        bound = true;
        break;
      }
    if (!bound) {
      TermPtr v2 = term_inst_type(st.types, v);
      TermPtr fresh = variant_var(v2, avoid);
      avoid.push_back(fresh);
      if (!term_equal(v2, fresh)) subst.emplace_back(v2, fresh);
    }
  }
  Theorem inst = stripped;
  if (!st.types.empty()) inst = Kernel::inst_type(st.types, inst);
  TermSubst bindings = subst;
  for (const auto& [pv, t] : st.terms) bindings.emplace_back(term_inst_type(st.types, pv), t);
  if (!bindings.empty()) inst = Kernel::inst(bindings, inst);

  TermPtr sub_concl = dest_imp(inst.concl()).first;
  Goal sub = Goal::make(goal.hyps, sub_concl);
  Theorem captured = inst;
  const Theory* tp = &thy;
  Justification j = [tp, captured](const std::vector<Theorem>& thms) {
    return rules::mp(*tp, captured, thms.at(0));
  };
  return TacticSuccess{{sub}, std::move(j)};
}

namespace {

struct Applier {
  const TacticEngine& engine;
  const Theory& thy;
  const Goal& goal;
  const std::vector<Theorem>& args;
  const Deadline& deadline;

  TacticResult accept() const {
    for (const auto& arg : args) {
      if (!alpha_equal(arg.concl(), goal.concl)) continue;
      if (!hyps_subset(arg.hyps(), goal.hyps)) continue;
      Theorem captured = arg;
      return TacticSuccess{{}, [captured](const std::vector<Theorem>&) { return captured; }};
    }
    return fail_tac("inapplicable: no argument matches the conclusion");
  }

  TacticResult refl() const {
    if (!is_eq(goal.concl)) return fail_tac("inapplicable: not an equation");
    auto [l, r] = dest_eq(goal.concl);
    if (!alpha_equal(l, r)) return fail_tac("inapplicable: sides differ");
    TermPtr lhs = l, rhs = r;
    return TacticSuccess{
        {}, [lhs, rhs](const std::vector<Theorem>&) { return rules::alpha_link(lhs, rhs); }};
  }

  TacticResult conj_tac() const {
    if (!is_conj(goal.concl)) return fail_tac("inapplicable: not a conjunction");
    auto [p, q] = dest_conj(goal.concl);
    Goal g1 = Goal::make(goal.hyps, p);
    Goal g2 = Goal::make(goal.hyps, q);
    const Theory* tp = &thy;
    return TacticSuccess{{g1, g2}, [tp](const std::vector<Theorem>& thms) {
                           return rules::conj(*tp, thms.at(0), thms.at(1));
                         }};
  }

  TacticResult disj(bool left) const {
    if (!is_disj(goal.concl)) return fail_tac("inapplicable: not a disjunction");
    auto [p, q] = dest_disj(goal.concl);
    Goal sub = Goal::make(goal.hyps, left ? p : q);
    const Theory* tp = &thy;
    TermPtr other = left ? q : p;
    if (left)
      return TacticSuccess{{sub}, [tp, other](const std::vector<Theorem>& thms) {
                             return rules::disj1(*tp, thms.at(0), other);
                           }};
    return TacticSuccess{{sub}, [tp, other](const std::vector<Theorem>& thms) {
                           return rules::disj2(*tp, other, thms.at(0));
                         }};
  }

  TacticResult disch() const {
    if (!is_imp(goal.concl)) return fail_tac("inapplicable: not an implication");
    auto [p, q] = dest_imp(goal.concl);
    std::vector<TermPtr> hyps = goal.hyps;
    hyps.push_back(p);
    Goal sub = Goal::make(std::move(hyps), q);
    const Theory* tp = &thy;
    TermPtr ante = p;
    return TacticSuccess{{sub}, [tp, ante](const std::vector<Theorem>& thms) {
                           return rules::disch(*tp, ante, thms.at(0));
                         }};
  }

  TacticResult undisch0() const {
    if (goal.hyps.empty()) return fail_tac("inapplicable: no hypotheses");
    TermPtr h = goal.hyps.front();
    std::vector<TermPtr> rest(goal.hyps.begin() + 1, goal.hyps.end());
    Goal sub = Goal::make(std::move(rest), mk_imp(h, goal.concl));
    const Theory* tp = &thy;
    return TacticSuccess{{sub}, [tp, h](const std::vector<Theorem>& thms) {
                           return rules::mp(*tp, thms.at(0), Kernel::assume(h));
                         }};
  }

  TacticResult gen_tac() const {
    if (!is_forall(goal.concl)) return fail_tac("inapplicable: not a universal");
    auto [x, body] = dest_forall(goal.concl);
    TermPtr fresh = variant_var(x, goal_frees(goal));
    TermPtr instantiated =
        dest_eq(rules::beta_conv(Term::comb(goal.concl->arg(), fresh)).concl()).second;
    Goal sub = Goal::make(goal.hyps, instantiated);
    const Theory* tp = &thy;
    return TacticSuccess{{sub}, [tp, fresh](const std::vector<Theorem>& thms) {
                           return rules::gen(*tp, fresh, thms.at(0));
                         }};
  }

  TacticResult eq_tac() const {
    if (!is_bool_eq(goal.concl)) return fail_tac("inapplicable: not a boolean equation");
    auto [p, q] = dest_eq(goal.concl);
    Goal g1 = Goal::make(goal.hyps, mk_imp(p, q));
    Goal g2 = Goal::make(goal.hyps, mk_imp(q, p));
    const Theory* tp = &thy;
    return TacticSuccess{{g1, g2}, [tp](const std::vector<Theorem>& thms) {
                           return rules::imp_antisym(*tp, thms.at(0), thms.at(1));
                         }};
  }

  TacticResult match_mp_tac() const {
    if (args.empty()) return fail_tac("no match: no arguments");
    for (const auto& arg : args) {
      TacticResult r = match_mp(engine, goal, arg);
      if (is_success(r)) return r;
    }
    return fail_tac("no match");
  }

  TacticResult mp_tac() const {
    if (args.empty()) return fail_tac("inapplicable: no arguments");
    for (const auto& arg : args)
      if (!hyps_subset(arg.hyps(), goal.hyps))
        return fail_tac("inapplicable: argument hypotheses exceed the goal's");
    TermPtr c = goal.concl;
    for (auto it = args.rbegin(); it != args.rend(); ++it) c = mk_imp(it->concl(), c);
    Goal sub = Goal::make(goal.hyps, c);
    const Theory* tp = &thy;
    std::vector<Theorem> captured = args;
    return TacticSuccess{{sub}, [tp, captured](const std::vector<Theorem>& thms) {
                           Theorem th = thms.at(0);
                           for (const auto& a : captured) th = rules::mp(*tp, th, a);
                           return th;
                         }};
  }

  TacticResult rewrite(bool use_asms, bool pure_once) const {
    for (const auto& arg : args)
      if (!hyps_subset(arg.hyps(), goal.hyps))
        return fail_tac("inapplicable: argument hypotheses exceed the goal's");
    std::vector<RewriteRule> rules;
    for (const auto& arg : args)
      for (auto& r : rules_of_theorem(thy, arg)) rules.push_back(std::move(r));
    if (use_asms)
      for (const auto& h : goal.hyps)
        for (auto& r : rules_of_theorem(thy, Kernel::assume(h))) rules.push_back(std::move(r));
    if (!pure_once)
      for (const auto& r : engine.basic_rewrites()) rules.push_back(r);

    std::optional<Rewritten> rewritten;
    try {
      rewritten = rewrite_engine(thy, goal.concl, rules,
                                 pure_once ? RewriteMode::Once : RewriteMode::Exhaustive);
    } catch (const ProverError& e) {
      return fail_tac(e.what());
    }
    const Rewritten& rw = *rewritten;
    if (deadline.expired()) return TacticTimeout{};

    const Theory* tp = &thy;
    Theorem conv = rw.conv;
    if (is_true(rw.result)) {
      return TacticSuccess{{}, [tp, conv](const std::vector<Theorem>&) {
                             return Kernel::eq_mp(rules::sym(conv), rules::truth(*tp));
                           }};
    }
    if (is_eq(rw.result)) {
      auto [l, r] = dest_eq(rw.result);
      if (alpha_equal(l, r)) {
        TermPtr lhs = l, rhs = r;
        return TacticSuccess{{}, [conv, lhs, rhs](const std::vector<Theorem>&) {
                               return Kernel::eq_mp(rules::sym(conv),
                                                    rules::alpha_link(lhs, rhs));
                             }};
      }
    }
    if (alpha_equal(rw.result, goal.concl)) return fail_tac("inapplicable: no change");
    Goal sub = Goal::make(goal.hyps, rw.result);
    return TacticSuccess{{sub}, [conv](const std::vector<Theorem>& thms) {
                           return Kernel::eq_mp(rules::sym(conv), thms.at(0));
                         }};
  }

  TacticResult meson(bool include_hyps) const {
    for (const auto& arg : args)
      if (!hyps_subset(arg.hyps(), goal.hyps))
        return fail_tac("inapplicable: argument hypotheses exceed the goal's");
    std::optional<Theorem> th;
    try {
      th = meson_prove(thy, goal, args, include_hyps, deadline);
    } catch (const ProverError& e) {
      return fail_tac(e.what());
    }
    if (!th) {
      if (deadline.expired()) return TacticTimeout{};
      return fail_tac("inapplicable: no first-order proof found");
    }
    Theorem captured = *th;
    return TacticSuccess{{}, [captured](const std::vector<Theorem>&) { return captured; }};
  }

  TacticResult contr() const {
    for (const auto& arg : args) {
      if (!is_false(arg.concl())) continue;
      if (!hyps_subset(arg.hyps(), goal.hyps)) continue;
      const Theory* tp = &thy;
      Theorem captured = arg;
      TermPtr c = goal.concl;
      return TacticSuccess{{}, [tp, captured, c](const std::vector<Theorem>&) {
                             return rules::contr(*tp, c, captured);
                           }};
    }
    return fail_tac("inapplicable: no falsity argument");
  }

  TacticResult itaut() const {
    for (int depth = 1; depth <= 6; ++depth) {
      if (deadline.expired()) return TacticTimeout{};
      auto th = prove_sequent(thy, goal.hyps, goal.concl, depth, false, deadline);
      if (th) {
        Theorem captured = *th;
        return TacticSuccess{{}, [captured](const std::vector<Theorem>&) { return captured; }};
      }
    }
    if (deadline.expired()) return TacticTimeout{};
    return fail_tac("inapplicable: no intuitionistic proof found");
  }
};

}  // namespace

TacticResult TacticEngine::apply(const Goal& goal, TacticId tactic,
                                 const std::vector<Theorem>& args,
                                 double budget_seconds) const {
  if (budget_seconds <= 0) return TacticFailure{"inapplicable: empty budget"};
  if (tactic_arity(tactic) == ArityClass::NoArgs && !args.empty())
    return TacticFailure{"inapplicable: tactic takes no arguments"};
  Deadline deadline(budget_seconds);
  Applier a{*this, thy_, goal, args, deadline};
  try {
    switch (tactic) {
      case TacticId::ACCEPT_TAC: return a.accept();
      case TacticId::REFL_TAC: return a.refl();
      case TacticId::CONJ_TAC: return a.conj_tac();
      case TacticId::DISJ1_TAC: return a.disj(true);
      case TacticId::DISJ2_TAC: return a.disj(false);
      case TacticId::DISCH_TAC: return a.disch();
      case TacticId::UNDISCH_TAC0: return a.undisch0();
      case TacticId::GEN_TAC: return a.gen_tac();
      case TacticId::EQ_TAC: return a.eq_tac();
      case TacticId::MATCH_MP_TAC: return a.match_mp_tac();
      case TacticId::MP_TAC: return a.mp_tac();
      case TacticId::REWRITE_TAC: return a.rewrite(false, false);
      case TacticId::ASM_REWRITE_TAC: return a.rewrite(true, false);
      case TacticId::PURE_ONCE_REWRITE_TAC: return a.rewrite(false, true);
      case TacticId::MESON_TAC: return a.meson(false);
      case TacticId::ASM_MESON_TAC: return a.meson(true);
      case TacticId::CONTR_TAC: return a.contr();
      case TacticId::ITAUT_TAC: return a.itaut();
    }
  } catch (const ProverError& e) {
    if (deadline.expired()) return TacticTimeout{};
    return TacticFailure{e.what()};
  }
  return TacticFailure{"unknown tactic"};
}

bool justification_valid(const Theory& thy, const Goal& goal, const TacticSuccess& s) {
  // Falsity-marked stand-ins: {F} u hyps |- concl, so the justification can
  // run without a real proof of the subgoal.
  std::vector<Theorem> fakes;
  fakes.reserve(s.subgoals.size());
  for (const auto& sub : s.subgoals) {
    Theorem th = rules::contr(thy, sub.concl, Kernel::assume(mk_false()));
    for (const auto& h : sub.hyps) th = rules::add_assum(thy, h, th);
    fakes.push_back(th);
  }
  Theorem out = s.justification(fakes);
  if (!alpha_equal(out.concl(), goal.concl)) return false;
  std::vector<TermPtr> allowed = goal.hyps;
  allowed.push_back(mk_false());
  for (const auto& h : out.hyps()) {
    bool ok = false;
    for (const auto& a : allowed)
      if (alpha_equal(h, a)) {
        ok = true;
        break;
      }
    if (!ok) return false;
  }
  return true;
}

}  // namespace tforge
