#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tacticforge/rules.hpp"
#include "tacticforge/sexpr.hpp"

using namespace tforge;
using namespace tforge::rules;

namespace {
TermPtr bvar(const char* n) { return Term::var(n, ty_bool()); }
}

TEST_CASE("boot theory is deterministic") {
  Theory a = Theory::boot();
  Theory b = Theory::boot();
  CHECK(a.theorems().size() == b.theorems().size());
  for (const auto& [name, th] : a.theorems())
    CHECK(th.fingerprint() == b.thm(name).fingerprint());
}

TEST_CASE("spec instantiates under the binder") {
  Theory thy = Theory::boot();
  TermPtr x = bvar("x");
  Theorem all_refl = gen(thy, x, Kernel::refl(x));  // |- !x. x = x
  Theorem at_t = spec(thy, mk_true(), all_refl);
  CHECK(alpha_equal(at_t.concl(), mk_eq(mk_true(), mk_true())));

  // SPEC at a term mentioning the bound name.
  TermPtr nx = mk_neg(x);
  Theorem at_nx = spec(thy, nx, all_refl);
  CHECK(alpha_equal(at_nx.concl(), mk_eq(nx, nx)));
}

TEST_CASE("disch then undisch round trips") {
  Theory thy = Theory::boot();
  TermPtr p = bvar("p");
  TermPtr q = bvar("q");
  Theorem th = conj(thy, Kernel::assume(p), Kernel::assume(q));  // {p,q} |- p/\q
  Theorem d = disch(thy, p, th);
  CHECK(d.hyps().size() == 1);
  CHECK(is_imp(d.concl()));
  Theorem u = undisch(thy, d);
  CHECK(u.hyps().size() == 2);
  CHECK(alpha_equal(u.concl(), th.concl()));
}

TEST_CASE("beta_conv on general redex") {
  TermPtr x = bvar("x");
  TermPtr y = bvar("y");
  TermPtr lam = mk_abs(x, mk_conj(x, x));
  Theorem b = beta_conv(mk_comb(lam, mk_neg(y)));
  auto [lhs, rhs] = dest_eq(b.concl());
  CHECK(alpha_equal(rhs, mk_conj(mk_neg(y), mk_neg(y))));
}

TEST_CASE("choose discharges the witness hypothesis") {
  Theory thy = Theory::boot();
  TermPtr p = bvar("p");
  TermPtr y = bvar("y");
  // |- ?y. y = y  with witness T
  TermPtr ex = mk_exists(y, mk_eq(y, y));
  Theorem exth = exists_intro(thy, ex, mk_true(), Kernel::refl(mk_true()));
  CHECK(alpha_equal(exth.concl(), ex));

  // From {v = v} |- T conclude |- T by choosing v.
  TermPtr v = bvar("v");
  Theorem body = add_assum(thy, mk_eq(v, v), truth(thy));
  Theorem out = choose(thy, v, exth, body);
  CHECK(out.hyps().empty());
  CHECK(is_true(out.concl()));

  // The witness variable may not escape into the conclusion.
  Theorem leaky = Kernel::assume(mk_eq(v, v));
  CHECK_THROWS_AS(choose(thy, v, exth, leaky), ProverError);
}

TEST_CASE("classical rules") {
  Theory thy = Theory::boot();
  TermPtr p = bvar("p");
  // CCONTR: {~p} |- F  gives  |- p with ~p discharged.
  Theorem ff = mp(thy, not_elim(thy, Kernel::assume(mk_neg(p))), Kernel::assume(p));
  Theorem out = ccontr(thy, p, ff);
  REQUIRE(out.hyps().size() == 1);  // the p assumption survives
  CHECK(alpha_equal(out.hyps()[0], p));
  CHECK(alpha_equal(out.concl(), p));

  // EQF_INTRO/ELIM round trip.
  Theorem nf = Kernel::assume(mk_neg(p));
  Theorem ef = eqf_intro(thy, nf);
  CHECK(is_eq(ef.concl()));
  Theorem back = eqf_elim(thy, ef);
  CHECK(alpha_equal(back.concl(), mk_neg(p)));
}

TEST_CASE("imp_antisym and eq_imp_rule") {
  Theory thy = Theory::boot();
  TermPtr p = bvar("p");
  Theorem pp = disch(thy, p, Kernel::assume(p));  // |- p ==> p
  Theorem eq = imp_antisym(thy, pp, pp);
  CHECK(alpha_equal(eq.concl(), mk_eq(p, p)));
  auto [fwd, bwd] = eq_imp_rule(thy, eq);
  CHECK(alpha_equal(fwd.concl(), mk_imp(p, p)));
  CHECK(alpha_equal(bwd.concl(), mk_imp(p, p)));
}

TEST_CASE("spec_all strips the prefix with fresh names") {
  Theory thy = Theory::boot();
  TermPtr x = bvar("x");
  TermPtr y = bvar("y");
  Theorem th = gen(thy, x, gen(thy, y, Kernel::refl(mk_conj(x, y))));
  std::vector<TermPtr> vars;
  Theorem stripped = spec_all(thy, th, &vars, {bvar("x")});
  REQUIRE(vars.size() == 2);
  CHECK(vars[0]->name() != "x");  // renamed away from the avoid list
  CHECK(is_eq(stripped.concl()));
}
