#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tacticforge/fol.hpp"
#include "tacticforge/sexpr.hpp"
#include "tacticforge/tactics.hpp"

using namespace tforge;

namespace {

struct Fixture {
  Theory thy = Theory::boot();
  TacticEngine engine{thy};
  TermPtr p = Term::var("p", ty_bool());
  TermPtr q = Term::var("q", ty_bool());
  TermPtr r = Term::var("r", ty_bool());
};

// Brute-force oracle for ground-rule rewriting: replace the leftmost
// outermost occurrence, iterate to fixpoint.
TermPtr oracle_step(const TermPtr& t, const TermPtr& from, const TermPtr& to, bool& hit) {
  if (term_equal(t, from)) {
    hit = true;
    return to;
  }
  if (t->is_comb()) {
    bool h = false;
    TermPtr f = oracle_step(t->fn(), from, to, h);
    if (h) {
      hit = true;
      return Term::comb(f, t->arg());
    }
    TermPtr a = oracle_step(t->arg(), from, to, h);
    if (h) {
      hit = true;
      return Term::comb(t->fn(), a);
    }
  }
  if (t->is_abs()) {
    bool h = false;
    TermPtr b = oracle_step(t->body(), from, to, h);
    if (h) {
      hit = true;
      return Term::abs(t->bound(), b);
    }
  }
  return t;
}

TermPtr oracle_rewrite(TermPtr t, const TermPtr& from, const TermPtr& to) {
  for (int i = 0; i < 1000; ++i) {
    bool hit = false;
    TermPtr t2 = oracle_step(t, from, to, hit);
    if (!hit) return t;
    t = t2;
  }
  return t;
}

std::string result_print(const TacticResult& r) {
  if (is_timeout(r)) return "TIMEOUT";
  if (!is_success(r)) return "FAIL:" + failure_reason(r);
  std::string out = "OK";
  for (const auto& g : as_success(r).subgoals) {
    out += "|";
    out += u64_to_dec(g.fingerprint());
  }
  return out;
}

}  // namespace

TEST_CASE("CONJ_TAC splits and justifies") {
  Fixture fx;
  Goal g = Goal::make({}, mk_conj(fx.p, fx.q));
  TacticResult r = fx.engine.apply(g, TacticId::CONJ_TAC, {});
  REQUIRE(is_success(r));
  const auto& s = as_success(r);
  REQUIRE(s.subgoals.size() == 2);
  CHECK(alpha_equal(s.subgoals[0].concl, fx.p));
  CHECK(alpha_equal(s.subgoals[1].concl, fx.q));
  CHECK(justification_valid(fx.thy, g, s));

  // Inapplicable on a disjunction.
  Goal g2 = Goal::make({}, mk_disj(fx.p, fx.q));
  CHECK_FALSE(is_success(fx.engine.apply(g2, TacticId::CONJ_TAC, {})));
}

TEST_CASE("REFL_TAC closes reflexive equations") {
  Fixture fx;
  TermPtr x = Term::var("x", ty_bool());
  TermPtr y = Term::var("y", ty_bool());
  Goal g = Goal::make({}, mk_eq(x, x));
  TacticResult r = fx.engine.apply(g, TacticId::REFL_TAC, {});
  REQUIRE(is_success(r));
  CHECK(as_success(r).subgoals.empty());
  CHECK(justification_valid(fx.thy, g, as_success(r)));

  Goal g2 = Goal::make({}, mk_eq(x, y));
  CHECK_FALSE(is_success(fx.engine.apply(g2, TacticId::REFL_TAC, {})));

  // Alpha-equal sides count as reflexive.
  TermPtr lx = mk_abs(x, x);
  TermPtr ly = mk_abs(y, y);
  Goal g3 = Goal::make({}, mk_eq(lx, ly));
  CHECK(is_success(fx.engine.apply(g3, TacticId::REFL_TAC, {})));
}

TEST_CASE("structural tactics justify") {
  Fixture fx;
  const Theory& thy = fx.thy;

  for (TacticId id : {TacticId::DISJ1_TAC, TacticId::DISJ2_TAC}) {
    Goal g = Goal::make({}, mk_disj(fx.p, fx.q));
    TacticResult r = fx.engine.apply(g, id, {});
    REQUIRE(is_success(r));
    CHECK(justification_valid(thy, g, as_success(r)));
  }

  Goal gi = Goal::make({}, mk_imp(fx.p, fx.q));
  TacticResult ri = fx.engine.apply(gi, TacticId::DISCH_TAC, {});
  REQUIRE(is_success(ri));
  REQUIRE(as_success(ri).subgoals.size() == 1);
  CHECK(as_success(ri).subgoals[0].hyps.size() == 1);
  CHECK(justification_valid(thy, gi, as_success(ri)));

  Goal gu = Goal::make({fx.p}, fx.q);
  TacticResult ru = fx.engine.apply(gu, TacticId::UNDISCH_TAC0, {});
  REQUIRE(is_success(ru));
  CHECK(as_success(ru).subgoals[0].hyps.empty());
  CHECK(alpha_equal(as_success(ru).subgoals[0].concl, mk_imp(fx.p, fx.q)));
  CHECK(justification_valid(thy, gu, as_success(ru)));

  TermPtr x = Term::var("x", ty_bool());
  Goal gg = Goal::make({}, mk_forall(x, mk_eq(x, x)));
  TacticResult rg = fx.engine.apply(gg, TacticId::GEN_TAC, {});
  REQUIRE(is_success(rg));
  CHECK(justification_valid(thy, gg, as_success(rg)));

  Goal ge = Goal::make({}, mk_eq(fx.p, fx.p));
  TacticResult re = fx.engine.apply(ge, TacticId::EQ_TAC, {});
  REQUIRE(is_success(re));
  REQUIRE(as_success(re).subgoals.size() == 2);
  CHECK(justification_valid(thy, ge, as_success(re)));
}

TEST_CASE("ACCEPT_TAC and CONTR_TAC") {
  Fixture fx;
  Theorem truth_thm = fx.thy.thm("TRUTH");
  Goal g = Goal::make({}, mk_true());
  TacticResult r = fx.engine.apply(g, TacticId::ACCEPT_TAC, {truth_thm});
  REQUIRE(is_success(r));
  CHECK(justification_valid(fx.thy, g, as_success(r)));

  // Hypotheses of the argument must be covered by the goal.
  Theorem hyp_thm = Kernel::assume(fx.p);
  Goal g2 = Goal::make({}, fx.p);
  CHECK_FALSE(is_success(fx.engine.apply(g2, TacticId::ACCEPT_TAC, {hyp_thm})));
  Goal g3 = Goal::make({fx.p}, fx.p);
  CHECK(is_success(fx.engine.apply(g3, TacticId::ACCEPT_TAC, {hyp_thm})));

  Theorem false_thm = Kernel::assume(mk_false());
  Goal g4 = Goal::make({mk_false()}, fx.q);
  TacticResult r4 = fx.engine.apply(g4, TacticId::CONTR_TAC, {false_thm});
  REQUIRE(is_success(r4));
  CHECK(justification_valid(fx.thy, g4, as_success(r4)));
}

TEST_CASE("MATCH_MP_TAC examples") {
  Fixture fx;
  const Theory& thy = fx.thy;
  // impl: !x. (x = T) ==> (T = x); goal: T = q becomes subgoal q = T.
  TermPtr x = Term::var("x", ty_bool());
  Theorem impl = rules::gen(
      thy, x,
      rules::disch(thy, mk_eq(x, mk_true()),
                   rules::sym(Kernel::assume(mk_eq(x, mk_true())))));
  Goal g = Goal::make({}, mk_eq(mk_true(), fx.q));
  TacticResult r = fx.engine.apply(g, TacticId::MATCH_MP_TAC, {impl});
  REQUIRE(is_success(r));
  REQUIRE(as_success(r).subgoals.size() == 1);
  CHECK(alpha_equal(as_success(r).subgoals[0].concl, mk_eq(fx.q, mk_true())));
  CHECK(justification_valid(thy, g, as_success(r)));

  // Not an implication -> failure.
  CHECK_FALSE(is_success(fx.engine.apply(g, TacticId::MATCH_MP_TAC, {thy.thm("TRUTH")})));

  // Higher-order pattern: !P. P T ==> P F has a variable head; matching the
  // conclusion requires binding P to a term with the bound variable escaped.
  TermPtr P = Term::var("P", ty_fun(ty_bool(), ty_bool()));
  Theorem ho = rules::gen(
      thy, P,
      rules::disch(thy, Term::comb(P, mk_true()), Kernel::assume(Term::comb(P, mk_true()))));
  // Adjust: conclusion is P T again, so matching goal `q` needs P := \_. q.
  Goal hog = Goal::make({}, fx.q);
  CHECK_FALSE(is_success(fx.engine.apply(hog, TacticId::MATCH_MP_TAC, {ho})));
}

TEST_CASE("MP_TAC chains arguments") {
  Fixture fx;
  Theorem t1 = fx.thy.thm("TRUTH");
  Goal g = Goal::make({}, fx.p);
  TacticResult r = fx.engine.apply(g, TacticId::MP_TAC, {t1});
  REQUIRE(is_success(r));
  CHECK(alpha_equal(as_success(r).subgoals[0].concl, mk_imp(mk_true(), fx.p)));
  CHECK(justification_valid(fx.thy, g, as_success(r)));
}

TEST_CASE("rewrite_engine examples and oracle") {
  Fixture fx;
  TermPtr a = Term::var("a", ty_bool());
  TermPtr b = Term::var("b", ty_bool());

  // No rules: unchanged.
  auto rw0 = rewrite_engine(fx.thy, a, {}, RewriteMode::Exhaustive);
  CHECK(term_equal(rw0.result, a));
  CHECK(rw0.steps == 0);

  // Ground rule a = b on a /\ a.
  Theorem rule_thm = Kernel::assume(mk_eq(a, b));
  auto rules = rules_of_theorem(fx.thy, rule_thm);
  REQUIRE(rules.size() == 1);
  auto rw1 = rewrite_engine(fx.thy, mk_conj(a, a), rules, RewriteMode::Exhaustive);
  CHECK(term_equal(rw1.result, mk_conj(b, b)));

  // Looping rule x = x /\ T is dropped by the guard (lhs matches a subterm
  // of rhs).
  TermPtr x = Term::var("x", ty_bool());
  Theorem loop_thm = Kernel::assume(mk_eq(x, mk_conj(x, mk_true())));
  RewriteRule loop_rule{loop_thm, x, mk_conj(x, mk_true()), {x}};
  CHECK(rule_loops(loop_rule));
  auto rw2 = rewrite_engine(fx.thy, a, {loop_rule}, RewriteMode::Exhaustive);
  CHECK(term_equal(rw2.result, a));
  // Once mode applies it a single time.
  auto rw3 = rewrite_engine(fx.thy, a, {loop_rule}, RewriteMode::Once);
  CHECK(term_equal(rw3.result, mk_conj(a, mk_true())));

  // Step cap.
  CHECK_THROWS_AS(
      rewrite_engine(fx.thy, mk_conj(mk_conj(a, a), mk_conj(a, a)), rules,
                     RewriteMode::Exhaustive, 2),
      ProverError);

  // Oracle comparison on random ground terms.
  Rng rng(11);
  auto gen = [&](auto&& self, int depth) -> TermPtr {
    if (depth <= 0) return rng.uniform(0, 1) ? a : mk_true();
    switch (rng.uniform(0, 2)) {
      case 0: return mk_conj(self(self, depth - 1), self(self, depth - 1));
      case 1: return mk_disj(self(self, depth - 1), self(self, depth - 1));
      default: return mk_neg(self(self, depth - 1));
    }
  };
  for (int i = 0; i < 300; ++i) {
    TermPtr t = gen(gen, 3);
    auto rw = rewrite_engine(fx.thy, t, rules, RewriteMode::Exhaustive);
    TermPtr expect = oracle_rewrite(t, a, b);
    CHECK(term_equal(rw.result, expect));
    // The conversion theorem really proves t = result.
    auto [l, r2] = dest_eq(rw.conv.concl());
    CHECK(term_equal(l, t));
    CHECK(term_equal(r2, rw.result));
  }
}

TEST_CASE("REWRITE_TAC on goals") {
  Fixture fx;
  // Rewriting with a hypothesis-backed equation.
  TermPtr a = Term::var("a", ty_bool());
  TermPtr b = Term::var("b", ty_bool());
  TermPtr eq = mk_eq(a, b);
  Theorem rule_thm = Kernel::assume(eq);
  Goal g = Goal::make({eq}, mk_conj(a, a));
  TacticResult r = fx.engine.apply(g, TacticId::REWRITE_TAC, {rule_thm});
  REQUIRE(is_success(r));
  REQUIRE(as_success(r).subgoals.size() == 1);
  // a /\ a rewrites to b /\ b, which the implicit idempotence clause
  // collapses to b.
  CHECK(alpha_equal(as_success(r).subgoals[0].concl, b));
  CHECK(justification_valid(fx.thy, g, as_success(r)));

  // ASM_REWRITE_TAC closes p from hypothesis p (p rewrites to T).
  Goal g2 = Goal::make({fx.p}, fx.p);
  TacticResult r2 = fx.engine.apply(g2, TacticId::ASM_REWRITE_TAC, {});
  REQUIRE(is_success(r2));
  CHECK(as_success(r2).subgoals.empty());
  CHECK(justification_valid(fx.thy, g2, as_success(r2)));

  // No change -> failure.
  Goal g3 = Goal::make({}, fx.p);
  CHECK_FALSE(is_success(fx.engine.apply(g3, TacticId::REWRITE_TAC, {})));
}

TEST_CASE("ITAUT_TAC on intuitionistic tautologies") {
  Fixture fx;
  Goal g = Goal::make({}, mk_imp(mk_conj(fx.p, fx.q), mk_conj(fx.q, fx.p)));
  TacticResult r = fx.engine.apply(g, TacticId::ITAUT_TAC, {});
  REQUIRE(is_success(r));
  CHECK(justification_valid(fx.thy, g, as_success(r)));

  Goal g2 = Goal::make({fx.p, mk_imp(fx.p, fx.q)}, fx.q);
  CHECK(is_success(fx.engine.apply(g2, TacticId::ITAUT_TAC, {})));

  // Excluded middle is not intuitionistic.
  Goal g3 = Goal::make({}, mk_disj(fx.p, mk_neg(fx.p)));
  CHECK_FALSE(is_success(fx.engine.apply(g3, TacticId::ITAUT_TAC, {})));
}

TEST_CASE("MESON_TAC proves classical tautologies") {
  Fixture fx;
  Goal g = Goal::make({}, mk_disj(fx.p, mk_neg(fx.p)));
  TacticResult r = fx.engine.apply(g, TacticId::MESON_TAC, {});
  REQUIRE(is_success(r));
  CHECK(as_success(r).subgoals.empty());
  CHECK(justification_valid(fx.thy, g, as_success(r)));

  // ASM_MESON_TAC uses hypotheses, MESON_TAC does not.
  Goal g2 = Goal::make({fx.p}, fx.p);
  CHECK(is_success(fx.engine.apply(g2, TacticId::ASM_MESON_TAC, {})));
  CHECK_FALSE(is_success(fx.engine.apply(g2, TacticId::MESON_TAC, {})));
}

TEST_CASE("MESON_TAC with quantified arguments") {
  Fixture fx;
  const Theory& thy = fx.thy;
  TypePtr b = ty_bool();
  TermPtr x = Term::var("x", b);
  TermPtr y = Term::var("y", b);
  // Symmetry lemma as an argument: !x y. x = y ==> y = x
  Theorem symm = rules::gen(
      thy, x,
      rules::gen(thy, y,
                 rules::disch(thy, mk_eq(x, y), rules::sym(Kernel::assume(mk_eq(x, y))))));
  // Goal: p = T ==> T = p
  Goal g = Goal::make({}, mk_imp(mk_eq(fx.p, mk_true()), mk_eq(mk_true(), fx.p)));
  TacticResult r = fx.engine.apply(g, TacticId::MESON_TAC, {symm});
  REQUIRE(is_success(r));
  CHECK(justification_valid(thy, g, as_success(r)));
}

TEST_CASE("tactics are stateless and deterministic") {
  Fixture fx;
  std::vector<Goal> goals = {
      Goal::make({}, mk_conj(fx.p, fx.q)),
      Goal::make({}, mk_disj(fx.p, mk_neg(fx.p))),
      Goal::make({fx.p}, fx.p),
      Goal::make({}, mk_imp(fx.p, fx.p)),
  };
  std::vector<TacticId> tactics = {TacticId::CONJ_TAC, TacticId::MESON_TAC,
                                   TacticId::ASM_REWRITE_TAC, TacticId::DISCH_TAC};
  // Isolated results.
  std::vector<std::string> isolated;
  for (size_t i = 0; i < goals.size(); ++i)
    isolated.push_back(result_print(fx.engine.apply(goals[i], tactics[i], {})));
  // Interleaved, repeated, shuffled order.
  Rng rng(3);
  for (int round = 0; round < 5; ++round) {
    std::vector<size_t> order = {0, 1, 2, 3};
    for (size_t i = order.size(); i > 1; --i)
      std::swap(order[i - 1], order[rng.uniform(0, i - 1)]);
    for (size_t i : order) {
      std::string got = result_print(fx.engine.apply(goals[i], tactics[i], {}));
      CHECK(got == isolated[i]);
    }
  }
}

TEST_CASE("arity misuse fails cleanly") {
  Fixture fx;
  Goal g = Goal::make({}, mk_conj(fx.p, fx.q));
  TacticResult r = fx.engine.apply(g, TacticId::CONJ_TAC, {fx.thy.thm("TRUTH")});
  CHECK_FALSE(is_success(r));
}
