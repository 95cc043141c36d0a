#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tacticforge/rules.hpp"
#include "tacticforge/sexpr.hpp"

using namespace tforge;

namespace {

TermPtr bvar(const char* n) { return Term::var(n, ty_bool()); }

// Truth-table oracle for closed propositional terms over T/F and the
// connectives. Used to cross-check kernel-derived equalities.
bool eval_prop(const TermPtr& t) {
  if (is_true(t)) return true;
  if (is_false(t)) return false;
  if (is_neg(t)) return !eval_prop(dest_neg(t));
  if (is_conj(t)) {
    auto [a, b] = dest_conj(t);
    return eval_prop(a) && eval_prop(b);
  }
  if (is_disj(t)) {
    auto [a, b] = dest_disj(t);
    return eval_prop(a) || eval_prop(b);
  }
  if (is_imp(t)) {
    auto [a, b] = dest_imp(t);
    return !eval_prop(a) || eval_prop(b);
  }
  if (is_eq(t)) {
    auto [a, b] = dest_eq(t);
    return eval_prop(a) == eval_prop(b);
  }
  FAIL("not a closed propositional term");
  return false;
}

}  // namespace

TEST_CASE("mk_term examples") {
  Theory thy = Theory::boot();
  TermPtr f = Term::var("f", ty_fun(ty_bool(), ty_bool()));
  TermPtr x = bvar("x");

  TermPtr app = mk_comb(f, x);
  CHECK(type_equal(app->type(), ty_bool()));

  TermPtr g = Term::var("g", ty_fun(ty_bool(), ty_bool()));
  CHECK_THROWS_AS(mk_comb(f, g), ProverError);
  try {
    mk_comb(f, g);
  } catch (const ProverError& e) {
    CHECK(e.code() == Err::TypeMismatch);
  }

  TermPtr id = mk_abs(x, x);
  CHECK(type_equal(id->type(), ty_fun(ty_bool(), ty_bool())));

  CHECK_THROWS_AS(mk_const(thy.env, "no_such_constant", ty_bool()), ProverError);
}

TEST_CASE("primitive rule examples") {
  Theory thy = Theory::boot();
  TermPtr x = bvar("x");
  TermPtr p = bvar("p");

  Theorem r = Kernel::refl(x);
  CHECK(alpha_equal(r.concl(), mk_eq(x, x)));
  CHECK(r.hyps().empty());

  Theorem a = Kernel::assume(p);
  REQUIRE(a.hyps().size() == 1);
  CHECK(alpha_equal(a.hyps()[0], p));
  CHECK(alpha_equal(a.concl(), p));

  TermPtr id = mk_abs(x, x);
  Theorem b = Kernel::beta(mk_comb(id, x));
  CHECK(alpha_equal(b.concl(), mk_eq(mk_comb(id, x), x)));

  // TRANS must reject non-chaining equations.
  Theorem exx = Kernel::refl(x);
  Theorem eyy = Kernel::refl(bvar("y"));
  CHECK_THROWS_AS(Kernel::trans(exx, eyy), ProverError);
}

TEST_CASE("EQ_MP against the truth-table oracle") {
  Theory thy = Theory::boot();
  TermPtr tt = mk_true();
  // |- T = (T /\ T) via DEDUCT_ANTISYM, then EQ_MP.
  Theorem tconj = rules::conj(thy, rules::truth(thy), rules::truth(thy));
  Theorem eq = Kernel::deduct_antisym(rules::truth(thy), tconj);
  CHECK(is_eq(eq.concl()));
  auto [lhs, rhs] = dest_eq(eq.concl());
  CHECK(eval_prop(lhs) == eval_prop(rhs));
  Theorem out = Kernel::eq_mp(eq, rules::truth(thy));
  CHECK(eval_prop(out.concl()));
  CHECK(alpha_equal(out.concl(), mk_conj(tt, tt)));

  // A longer chain: |- (T /\ T) = T and back.
  Theorem eq2 = Kernel::deduct_antisym(tconj, rules::truth(thy));
  Theorem back = Kernel::eq_mp(eq2, tconj);
  CHECK(eval_prop(back.concl()));
}

TEST_CASE("define examples") {
  Theory thy = Theory::boot();
  TermPtr x = bvar("x");
  Theorem d = Kernel::define(thy.env, "id_bool", mk_abs(x, x));
  auto [c, body] = dest_eq(d.concl());
  CHECK(c->is_const());
  CHECK(c->name() == "id_bool");
  CHECK(alpha_equal(body, mk_abs(x, x)));

  CHECK_THROWS_AS(Kernel::define(thy.env, "id_bool", mk_abs(x, x)), ProverError);

  try {
    Kernel::define(thy.env, "k", x);
    FAIL("free variable definition accepted");
  } catch (const ProverError& e) {
    CHECK(e.code() == Err::FreeVariablesInDefinition);
  }
}

TEST_CASE("alpha_equal examples") {
  TermPtr x = bvar("x");
  TermPtr y = bvar("y");
  TermPtr f = Term::var("f", ty_fun(ty_bool(), ty_bool()));

  CHECK(alpha_equal(mk_abs(x, x), mk_abs(y, y)));
  CHECK_FALSE(alpha_equal(mk_abs(x, mk_comb(f, x)), mk_abs(x, mk_comb(f, y))));
  TermPtr t = mk_abs(x, mk_comb(f, x));
  CHECK(alpha_equal(t, t));
}

TEST_CASE("INST capture avoidance") {
  Theory thy = Theory::boot();
  TermPtr x = bvar("x");
  TermPtr t = mk_true();
  // Instantiating x -> t in |- (\x. x) = (\x. x) must leave binders alone.
  Theorem th = Kernel::refl(mk_abs(x, x));
  Theorem inst = Kernel::inst({{x, t}}, th);
  CHECK(alpha_equal(inst.concl(), th.concl()));

  // Substitution into a body with a colliding binder renames the binder.
  TermPtr y = bvar("y");
  TermPtr body = mk_abs(y, mk_conj(x, y));
  TermPtr replaced = term_subst({{x, y}}, body);
  REQUIRE(replaced->is_abs());
  CHECK_FALSE(replaced->bound()->name() == "y");
  CHECK(alpha_equal(replaced, mk_abs(bvar("z"), mk_conj(y, bvar("z")))));
}

TEST_CASE("INST_TYPE renames on variable collision") {
  TypePtr A = Type::var("A");
  TermPtr xa = Term::var("x", A);
  TermPtr xb = bvar("x");
  // \x:A. x:bool — distinct variables sharing a name.
  TermPtr t = Term::abs(xa, xb);
  TermPtr out = term_inst_type({{"A", ty_bool()}}, t);
  REQUIRE(out->is_abs());
  // After instantiation the binder must not capture the free x:bool.
  CHECK(out->body()->is_var());
  CHECK(out->body()->name() == "x");
  CHECK_FALSE(out->bound()->name() == out->body()->name());
}

TEST_CASE("theorem hypotheses are canonical") {
  TermPtr p = bvar("p");
  TermPtr q = bvar("q");
  Theorem a = Kernel::assume(p);
  Theorem b = Kernel::assume(q);
  Theorem c1 = Kernel::deduct_antisym(a, b);
  Theorem c2 = Kernel::deduct_antisym(b, a);
  // Same hypothesis set in both orders.
  REQUIRE(c1.hyps().size() == c2.hyps().size());
  for (size_t i = 0; i < c1.hyps().size(); ++i)
    CHECK(alpha_equal(c1.hyps()[i], c2.hyps()[i]));
  // Alpha-variant hypotheses deduplicate.
  TermPtr lx = mk_abs(bvar("x"), bvar("x"));
  TermPtr ly = mk_abs(bvar("y"), bvar("y"));
  Theorem d = Kernel::trans(Kernel::assume(mk_eq(lx, lx)), Kernel::assume(mk_eq(ly, ly)));
  CHECK(d.hyps().size() == 1);
}

TEST_CASE("fuzz: no |- F from random rule applications") {
  Theory thy = Theory::boot();
  Rng rng(20260810);
  TermPtr f_const = mk_false();

  // Pool of well-typed boolean terms.
  std::vector<TermPtr> atoms{bvar("p"), bvar("q"), bvar("r"), mk_true(), mk_false()};
  auto gen_term = [&](auto&& self, int depth) -> TermPtr {
    if (depth <= 0) return atoms[rng.uniform(0, atoms.size() - 1)];
    switch (rng.uniform(0, 5)) {
      case 0: return mk_conj(self(self, depth - 1), self(self, depth - 1));
      case 1: return mk_disj(self(self, depth - 1), self(self, depth - 1));
      case 2: return mk_imp(self(self, depth - 1), self(self, depth - 1));
      case 3: return mk_neg(self(self, depth - 1));
      case 4: return mk_eq(self(self, depth - 1), self(self, depth - 1));
      default: return atoms[rng.uniform(0, atoms.size() - 1)];
    }
  };

  std::vector<Theorem> pool;
  pool.push_back(thy.thm("TRUTH"));
  pool.push_back(thy.thm("EXCLUDED_MIDDLE"));
  for (const auto& [name, th] : thy.theorems()) pool.push_back(th);

  size_t falsities = 0;
  const size_t kApplications = 100000;
  for (size_t i = 0; i < kApplications; ++i) {
    Kernel::RuleInputs in;
    RuleId id = static_cast<RuleId>(rng.uniform(0, 9));
    in.thms = {pool[rng.uniform(0, pool.size() - 1)], pool[rng.uniform(0, pool.size() - 1)]};
    in.terms = {gen_term(gen_term, int(rng.uniform(0, 2))),
                gen_term(gen_term, int(rng.uniform(0, 2)))};
    if (id == RuleId::INST)
      in.term_subst = {{bvar("p"), gen_term(gen_term, 1)}};
    if (id == RuleId::INST_TYPE) in.type_subst = {{"A", ty_bool()}};
    try {
      Theorem out = Kernel::rule(id, in);
      if (out.hyps().empty() && term_equal(out.concl(), f_const)) ++falsities;
      if (pool.size() < 4096) pool.push_back(out);
    } catch (const ProverError&) {
      // Ill-formed applications are expected; the invariant is about what
      // succeeds.
    }
  }
  CHECK(falsities == 0);
}
