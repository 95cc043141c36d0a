#include "tacticforge/rules.hpp"

#include <algorithm>
#include <optional>

namespace tforge {

// --- connective syntax -------------------------------------------------------

namespace {

TypePtr bool2() { return ty_fun(ty_bool(), ty_bool()); }
TypePtr bool3() { return ty_fun(ty_bool(), bool2()); }

TermPtr binop_const(const char* name) { return Term::constant(name, bool3()); }

TermPtr quant_const(const char* name, const TypePtr& elt) {
  return Term::constant(name, ty_fun(ty_fun(elt, ty_bool()), ty_bool()));
}

bool is_binop(const TermPtr& t, const char* name) {
  return t->is_comb() && t->fn()->is_comb() && t->fn()->fn()->is_const() &&
         t->fn()->fn()->name() == name;
}

bool is_quant(const TermPtr& t, const char* name) {
  return t->is_comb() && t->fn()->is_const() && t->fn()->name() == name &&
         t->arg()->is_abs();
}

std::pair<TermPtr, TermPtr> dest_binop(const TermPtr& t, const char* name) {
  if (!is_binop(t, name)) fail(Err::RuleMismatch, std::string("expected ") + name);
  return {t->fn()->arg(), t->arg()};
}

}  // namespace

TermPtr mk_true() { return Term::constant("T", ty_bool()); }
TermPtr mk_false() { return Term::constant("F", ty_bool()); }

TermPtr mk_neg(const TermPtr& p) {
  return Term::comb(Term::constant("~", bool2()), p);
}
TermPtr mk_conj(const TermPtr& a, const TermPtr& b) {
  return Term::comb(Term::comb(binop_const("/\\"), a), b);
}
TermPtr mk_disj(const TermPtr& a, const TermPtr& b) {
  return Term::comb(Term::comb(binop_const("\\/"), a), b);
}
TermPtr mk_imp(const TermPtr& a, const TermPtr& b) {
  return Term::comb(Term::comb(binop_const("==>"), a), b);
}
TermPtr mk_forall(const TermPtr& var, const TermPtr& body) {
  return Term::comb(quant_const("!", var->type()), Term::abs(var, body));
}
TermPtr mk_exists(const TermPtr& var, const TermPtr& body) {
  return Term::comb(quant_const("?", var->type()), Term::abs(var, body));
}

bool is_true(const TermPtr& t) { return t->is_const() && t->name() == "T"; }
bool is_false(const TermPtr& t) { return t->is_const() && t->name() == "F"; }
bool is_neg(const TermPtr& t) {
  return t->is_comb() && t->fn()->is_const() && t->fn()->name() == "~";
}
bool is_conj(const TermPtr& t) { return is_binop(t, "/\\"); }
bool is_disj(const TermPtr& t) { return is_binop(t, "\\/"); }
bool is_imp(const TermPtr& t) { return is_binop(t, "==>"); }
bool is_forall(const TermPtr& t) { return is_quant(t, "!"); }
bool is_exists(const TermPtr& t) { return is_quant(t, "?"); }
bool is_bool_eq(const TermPtr& t) {
  return is_eq(t) && type_equal(dest_eq(t).first->type(), ty_bool());
}

TermPtr dest_neg(const TermPtr& t) {
  if (!is_neg(t)) fail(Err::RuleMismatch, "expected a negation");
  return t->arg();
}
std::pair<TermPtr, TermPtr> dest_conj(const TermPtr& t) { return dest_binop(t, "/\\"); }
std::pair<TermPtr, TermPtr> dest_disj(const TermPtr& t) { return dest_binop(t, "\\/"); }
std::pair<TermPtr, TermPtr> dest_imp(const TermPtr& t) { return dest_binop(t, "==>"); }

std::pair<TermPtr, TermPtr> dest_forall(const TermPtr& t) {
  if (!is_forall(t)) fail(Err::RuleMismatch, "expected a universal");
  return {t->arg()->bound(), t->arg()->body()};
}
std::pair<TermPtr, TermPtr> dest_exists(const TermPtr& t) {
  if (!is_exists(t)) fail(Err::RuleMismatch, "expected an existential");
  return {t->arg()->bound(), t->arg()->body()};
}

std::pair<std::vector<TermPtr>, TermPtr> strip_forall(const TermPtr& t) {
  std::vector<TermPtr> vars;
  TermPtr body = t;
  while (is_forall(body)) {
    auto [v, b] = dest_forall(body);
    vars.push_back(v);
    body = b;
  }
  return {vars, body};
}

TermPtr list_mk_forall(const std::vector<TermPtr>& vars, const TermPtr& body) {
  TermPtr t = body;
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) t = mk_forall(*it, t);
  return t;
}

TermPtr list_mk_conj(const std::vector<TermPtr>& ts) {
  if (ts.empty()) fail(Err::Internal, "list_mk_conj of nothing");
  TermPtr t = ts.back();
  for (auto it = ts.rbegin() + 1; it != ts.rend(); ++it) t = mk_conj(*it, t);
  return t;
}

TermPtr list_mk_disj(const std::vector<TermPtr>& ts) {
  if (ts.empty()) fail(Err::Internal, "list_mk_disj of nothing");
  TermPtr t = ts.back();
  for (auto it = ts.rbegin() + 1; it != ts.rend(); ++it) t = mk_disj(*it, t);
  return t;
}

// --- boot theory ----------------------------------------------------------------

const Theorem& Theory::thm(const std::string& name) const {
  auto it = thms_.find(name);
  if (it == thms_.end()) fail(Err::NotFound, "theory theorem " + name);
  return it->second;
}

Theory Theory::boot() {
  Theory thy;
  Environment& env = thy.env;
  TypePtr b = ty_bool();
  TypePtr A = Type::var("A");
  TermPtr p = Term::var("p", b);
  TermPtr q = Term::var("q", b);
  TermPtr r = Term::var("r", b);

  // T = (\p. p) = (\p. p)
  TermPtr idb = Term::abs(p, p);
  thy.thms_.emplace("T_DEF", Kernel::define(env, "T", mk_eq(idb, idb)));

  // /\ = \p q. (\f. f p q) = (\f. f T T)
  TermPtr f = Term::var("f", bool3());
  TermPtr and_body = Term::abs(
      p, Term::abs(q, mk_eq(Term::abs(f, Term::comb(Term::comb(f, p), q)),
                            Term::abs(f, Term::comb(Term::comb(f, mk_true()), mk_true())))));
  thy.thms_.emplace("AND_DEF", Kernel::define(env, "/\\", and_body));

  // ==> = \p q. p /\ q = p
  TermPtr imp_body = Term::abs(p, Term::abs(q, mk_eq(mk_conj(p, q), p)));
  thy.thms_.emplace("IMP_DEF", Kernel::define(env, "==>", imp_body));

  // ! = \P. P = (\x. T)
  TermPtr P = Term::var("P", ty_fun(A, b));
  TermPtr xA = Term::var("x", A);
  TermPtr forall_body = Term::abs(P, mk_eq(P, Term::abs(xA, mk_true())));
  thy.thms_.emplace("FORALL_DEF", Kernel::define(env, "!", forall_body));

  // ? = \P. !q. (!x. P x ==> q) ==> q
  TermPtr exists_body = Term::abs(
      P, mk_forall(q, mk_imp(mk_forall(xA, mk_imp(Term::comb(P, xA), q)), q)));
  thy.thms_.emplace("EXISTS_DEF", Kernel::define(env, "?", exists_body));

  // \/ = \p q. !r. (p ==> r) ==> (q ==> r) ==> r
  TermPtr or_body = Term::abs(
      p, Term::abs(q, mk_forall(r, mk_imp(mk_imp(p, r), mk_imp(mk_imp(q, r), r)))));
  thy.thms_.emplace("OR_DEF", Kernel::define(env, "\\/", or_body));

  // F = !p. p
  thy.thms_.emplace("F_DEF", Kernel::define(env, "F", mk_forall(p, p)));

  // ~ = \p. p ==> F
  thy.thms_.emplace("NOT_DEF", Kernel::define(env, "~", Term::abs(p, mk_imp(p, mk_false()))));

  // Classical axiom (stands in for derivation from choice).
  thy.thms_.emplace("EXCLUDED_MIDDLE",
                    Kernel::new_axiom(env, mk_forall(p, mk_disj(p, mk_neg(p)))));

  // |- T
  const Theorem& t_def = thy.thms_.at("T_DEF");
  thy.thms_.emplace("TRUTH", Kernel::eq_mp(rules::sym(t_def), Kernel::refl(idb)));

  return thy;
}

// --- derived rules -----------------------------------------------------------------

namespace rules {

Theorem sym(const Theorem& th) {
  auto [l, r] = dest_eq(th.concl());
  const TermPtr& eq_fn = th.concl()->fn()->fn();
  Theorem lth = Kernel::refl(l);
  Theorem eq_eq = Kernel::mk_comb_rule(Kernel::refl(eq_fn), th);  // (= l) = (= r)
  Theorem full = Kernel::mk_comb_rule(eq_eq, lth);                // (l = l) = (r = l)
  return Kernel::eq_mp(full, lth);
}

Theorem alpha_link(const TermPtr& a, const TermPtr& b) {
  if (!alpha_equal(a, b)) fail(Err::RuleMismatch, "terms are not alpha-equal");
  return Kernel::trans(Kernel::refl(a), Kernel::refl(b));
}

Theorem ap_term(const TermPtr& f, const Theorem& th) {
  return Kernel::mk_comb_rule(Kernel::refl(f), th);
}

Theorem ap_thm(const Theorem& th, const TermPtr& x) {
  return Kernel::mk_comb_rule(th, Kernel::refl(x));
}

Theorem beta_conv(const TermPtr& redex) {
  if (!redex->is_comb() || !redex->fn()->is_abs())
    fail(Err::RuleMismatch, "not a beta redex");
  const TermPtr& x = redex->fn()->bound();
  const TermPtr& arg = redex->arg();
  if (arg->is_var() && arg->name() == x->name() && type_equal(arg->type(), x->type()))
    return Kernel::beta(redex);
  Theorem base = Kernel::beta(Term::comb(redex->fn(), x));
  return Kernel::inst({{x, arg}}, base);
}

Theorem head_beta_norm(const TermPtr& t) {
  // One spine step, or no theorem if the head is not reducible.
  struct Step {
    static std::optional<Theorem> reduce(const TermPtr& u) {
      if (!u->is_comb()) return std::nullopt;
      if (u->fn()->is_abs()) return beta_conv(u);
      auto sub = reduce(u->fn());
      if (!sub) return std::nullopt;
      return Kernel::mk_comb_rule(*sub, Kernel::refl(u->arg()));
    }
  };
  Theorem acc = Kernel::refl(t);
  for (;;) {
    TermPtr cur = dest_eq(acc.concl()).second;
    auto step = Step::reduce(cur);
    if (!step) return acc;
    acc = Kernel::trans(acc, *step);
  }
}

Theorem apply_def(const Theorem& def, const std::vector<TermPtr>& args) {
  Theorem acc = def;
  for (const auto& a : args) {
    Theorem applied = ap_thm(acc, a);
    TermPtr rhs_app = dest_eq(applied.concl()).second;
    acc = Kernel::trans(applied, beta_conv(rhs_app));
  }
  return acc;
}

Theorem truth(const Theory& thy) { return thy.thm("TRUTH"); }

Theorem eqt_intro(const Theory& thy, const Theorem& th) {
  return Kernel::deduct_antisym(th, truth(thy));
}

Theorem eqt_elim(const Theory& thy, const Theorem& th) {
  return Kernel::eq_mp(sym(th), truth(thy));
}

namespace {

// |- !x1..xn-specialized FORALL_DEF at the element type of `var`.
Theorem forall_def_at(const Theory& thy, const TypePtr& elt) {
  return Kernel::inst_type({{"A", elt}}, thy.thm("FORALL_DEF"));
}

Theorem exists_def_at(const Theory& thy, const TypePtr& elt) {
  return Kernel::inst_type({{"A", elt}}, thy.thm("EXISTS_DEF"));
}

// |- (op a b) = body for the binary connective definitions.
Theorem expand_binop(const Theory& thy, const char* def_name, const TermPtr& a,
                     const TermPtr& b) {
  return apply_def(thy.thm(def_name), {a, b});
}

}  // namespace

Theorem conj(const Theory& thy, const Theorem& a, const Theorem& b) {
  const TermPtr& p = a.concl();
  const TermPtr& q = b.concl();
  std::vector<TermPtr> avoid = free_vars(p);
  for (const auto& v : free_vars(q)) avoid.push_back(v);
  for (const auto& h : a.hyps())
    for (const auto& v : free_vars(h)) avoid.push_back(v);
  for (const auto& h : b.hyps())
    for (const auto& v : free_vars(h)) avoid.push_back(v);
  TermPtr f = variant_var(Term::var("f", ty_fun(ty_bool(), ty_fun(ty_bool(), ty_bool()))), avoid);
  Theorem inner = Kernel::mk_comb_rule(
      Kernel::mk_comb_rule(Kernel::refl(f), eqt_intro(thy, a)), eqt_intro(thy, b));
  Theorem lam = Kernel::abs_rule(f, inner);  // (\f. f p q) = (\f. f T T)
  Theorem expansion = expand_binop(thy, "AND_DEF", p, q);
  return Kernel::eq_mp(sym(expansion), lam);
}

namespace {

Theorem conjunct_sel(const Theory& thy, const Theorem& th, bool first) {
  auto [p, q] = dest_conj(th.concl());
  Theorem expansion = expand_binop(thy, "AND_DEF", p, q);
  Theorem eqth = Kernel::eq_mp(expansion, th);  // (\f. f p q) = (\f. f T T)
  TermPtr a = Term::var("a", ty_bool());
  TermPtr b = Term::var("b", ty_bool());
  TermPtr sel = Term::abs(a, Term::abs(b, first ? a : b));
  Theorem applied = ap_thm(eqth, sel);
  Theorem lhs_chain = head_beta_norm(Term::comb(dest_eq(eqth.concl()).first, sel));
  Theorem rhs_chain = head_beta_norm(Term::comb(dest_eq(eqth.concl()).second, sel));
  // p = T (or q = T)
  Theorem eq_t = Kernel::trans(Kernel::trans(sym(lhs_chain), applied), rhs_chain);
  return eqt_elim(thy, eq_t);
}

}  // namespace

Theorem conjunct1(const Theory& thy, const Theorem& th) { return conjunct_sel(thy, th, true); }
Theorem conjunct2(const Theory& thy, const Theorem& th) { return conjunct_sel(thy, th, false); }

Theorem mp(const Theory& thy, const Theorem& impl, const Theorem& ant) {
  auto [p, q] = dest_imp(impl.concl());
  Theorem expansion = expand_binop(thy, "IMP_DEF", p, q);  // (p ==> q) = ((p /\ q) = p)
  Theorem eqth = Kernel::eq_mp(expansion, impl);           // (p /\ q) = p
  Theorem pq = Kernel::eq_mp(sym(eqth), ant);              // p /\ q
  return conjunct2(thy, pq);
}

Theorem disch(const Theory& thy, const TermPtr& p, const Theorem& th) {
  Theorem th1 = conj(thy, Kernel::assume(p), th);              // A u {p} |- p /\ q
  Theorem th2 = conjunct1(thy, Kernel::assume(mk_conj(p, th.concl())));
  Theorem dd = Kernel::deduct_antisym(th1, th2);               // A - {p} |- (p /\ q) = p
  Theorem expansion = expand_binop(thy, "IMP_DEF", p, th.concl());
  return Kernel::eq_mp(sym(expansion), dd);
}

Theorem undisch(const Theory& thy, const Theorem& th) {
  auto [p, q] = dest_imp(th.concl());
  return mp(thy, th, Kernel::assume(p));
}

Theorem add_assum(const Theory& thy, const TermPtr& p, const Theorem& th) {
  return mp(thy, disch(thy, p, th), Kernel::assume(p));
}

Theorem gen(const Theory& thy, const TermPtr& var, const Theorem& th) {
  Theorem lam = Kernel::abs_rule(var, eqt_intro(thy, th));  // (\x. p) = (\x. T)
  TermPtr abs_p = Term::abs(var, th.concl());
  Theorem expansion = apply_def(forall_def_at(thy, var->type()), {abs_p});
  return Kernel::eq_mp(sym(expansion), lam);
}

Theorem spec(const Theory& thy, const TermPtr& t, const Theorem& th) {
  auto [x, p] = dest_forall(th.concl());
  TermPtr abs_p = th.concl()->arg();
  Theorem expansion = apply_def(forall_def_at(thy, x->type()), {abs_p});
  Theorem eqth = Kernel::eq_mp(expansion, th);  // (\x. p) = (\x. T)
  Theorem applied = ap_thm(eqth, t);
  Theorem lhs = beta_conv(Term::comb(abs_p, t));
  Theorem rhs = beta_conv(Term::comb(dest_eq(eqth.concl()).second, t));
  Theorem eq_t = Kernel::trans(Kernel::trans(sym(lhs), applied), rhs);
  return eqt_elim(thy, eq_t);
}

Theorem spec_all(const Theory& thy, const Theorem& th, std::vector<TermPtr>* vars_out,
                 const std::vector<TermPtr>& avoid) {
  Theorem cur = th;
  std::vector<TermPtr> used = avoid;
  for (const auto& h : th.hyps())
    for (const auto& v : free_vars(h)) used.push_back(v);
  while (is_forall(cur.concl())) {
    auto [x, body] = dest_forall(cur.concl());
    TermPtr fresh = variant_var(x, used);
    cur = spec(thy, fresh, cur);
    used.push_back(fresh);
    if (vars_out) vars_out->push_back(fresh);
  }
  return cur;
}

Theorem exists_intro(const Theory& thy, const TermPtr& ex_term, const TermPtr& witness,
                     const Theorem& th) {
  auto [x, p] = dest_exists(ex_term);
  TermPtr abs_p = ex_term->arg();
  TermPtr instantiated = dest_eq(beta_conv(Term::comb(abs_p, witness)).concl()).second;
  if (!alpha_equal(instantiated, th.concl()))
    fail(Err::RuleMismatch, "EXISTS: theorem does not match instantiated body");
  std::vector<TermPtr> avoid = free_vars(ex_term);
  for (const auto& h : th.hyps())
    for (const auto& v : free_vars(h)) avoid.push_back(v);
  for (const auto& v : free_vars(witness)) avoid.push_back(v);
  TermPtr q = variant_var(Term::var("q", ty_bool()), avoid);

  Theorem expansion = apply_def(exists_def_at(thy, x->type()), {abs_p});
  // Body shape: !q. (!x. (\x.p) x ==> q) ==> q
  TermPtr body = dest_eq(expansion.concl()).second;
  auto [qv, inner_imp] = dest_forall(body);
  TermPtr ante = dest_imp(inner_imp).first;  // !x. (\x.p) x ==> q'  (q' = bound q)
  // Rebuild with our fresh q.
  TermPtr ante_q = term_subst({{qv, q}}, ante);
  Theorem asm_th = Kernel::assume(ante_q);
  Theorem imp_inst = spec(thy, witness, asm_th);  // (\x.p) w ==> q
  Theorem redex = beta_conv(Term::comb(abs_p, witness));
  Theorem arg = Kernel::eq_mp(sym(redex), th);  // A |- (\x.p) w
  Theorem qth = mp(thy, imp_inst, arg);
  Theorem dth = disch(thy, ante_q, qth);
  Theorem genq = gen(thy, q, dth);
  return Kernel::eq_mp(sym(expansion), genq);
}

Theorem choose(const Theory& thy, const TermPtr& v, const Theorem& exth,
               const Theorem& bodyth) {
  auto [x, p] = dest_exists(exth.concl());
  TermPtr abs_p = exth.concl()->arg();
  TermPtr pv = dest_eq(beta_conv(Term::comb(abs_p, v)).concl()).second;
  const TermPtr& q = bodyth.concl();
  if (is_free_in(v, q))
    fail(Err::FreeVarCapture, "CHOOSE: witness variable free in the conclusion");
  if (is_free_in(v, exth.concl()))
    fail(Err::FreeVarCapture, "CHOOSE: witness variable free in the existential");

  Theorem expansion = apply_def(exists_def_at(thy, x->type()), {abs_p});
  Theorem e = Kernel::eq_mp(expansion, exth);  // !q'. (!x. (\x.p) x ==> q') ==> q'
  Theorem sp = spec(thy, q, e);                // (!x. (\x.p) x ==> q) ==> q

  Theorem dth = disch(thy, pv, bodyth);  // B - {pv} |- pv ==> q
  // ((\x.p) v ==> q) = (pv ==> q)
  TermPtr imp_c = Term::constant("==>", ty_fun(ty_bool(), ty_fun(ty_bool(), ty_bool())));
  Theorem ante_conv = Kernel::mk_comb_rule(
      ap_term(imp_c, beta_conv(Term::comb(abs_p, v))), Kernel::refl(q));
  Theorem lifted = Kernel::eq_mp(sym(ante_conv), dth);  // (\x.p) v ==> q
  Theorem genv = gen(thy, v, lifted);                   // !v. (\x.p) v ==> q
  return mp(thy, sp, genv);
}

namespace {

// Builds A |- !r. (p ==> r) ==> (q ==> r) ==> r from a proof of one disjunct.
Theorem or_intro(const Theory& thy, const TermPtr& p, const TermPtr& q, const Theorem& th,
                 bool left) {
  std::vector<TermPtr> avoid = free_vars(p);
  for (const auto& v : free_vars(q)) avoid.push_back(v);
  for (const auto& h : th.hyps())
    for (const auto& v : free_vars(h)) avoid.push_back(v);
  TermPtr r = variant_var(Term::var("r", ty_bool()), avoid);
  TermPtr pr = mk_imp(p, r);
  TermPtr qr = mk_imp(q, r);
  Theorem sel = Kernel::assume(left ? pr : qr);
  Theorem rth = mp(thy, sel, th);
  Theorem inner = disch(thy, qr, rth);
  Theorem outer = disch(thy, pr, inner);
  Theorem built = gen(thy, r, outer);
  Theorem expansion = expand_binop(thy, "OR_DEF", p, q);
  return Kernel::eq_mp(sym(expansion), built);
}

}  // namespace

Theorem disj1(const Theory& thy, const Theorem& th, const TermPtr& q) {
  return or_intro(thy, th.concl(), q, th, true);
}

Theorem disj2(const Theory& thy, const TermPtr& p, const Theorem& th) {
  return or_intro(thy, p, th.concl(), th, false);
}

Theorem disj_cases(const Theory& thy, const Theorem& orth, const Theorem& tha,
                   const Theorem& thb) {
  auto [p, q] = dest_disj(orth.concl());
  if (!alpha_equal(tha.concl(), thb.concl()))
    fail(Err::RuleMismatch, "DISJ_CASES: branch conclusions differ");
  Theorem expansion = expand_binop(thy, "OR_DEF", p, q);
  Theorem e = Kernel::eq_mp(expansion, orth);
  Theorem sp = spec(thy, tha.concl(), e);
  return mp(thy, mp(thy, sp, disch(thy, p, tha)), disch(thy, q, thb));
}

Theorem not_elim(const Theory& thy, const Theorem& th) {
  TermPtr p = dest_neg(th.concl());
  Theorem expansion = apply_def(thy.thm("NOT_DEF"), {p});  // ~p = (p ==> F)
  return Kernel::eq_mp(expansion, th);
}

Theorem not_intro(const Theory& thy, const Theorem& th) {
  auto [p, f] = dest_imp(th.concl());
  if (!is_false(f)) fail(Err::RuleMismatch, "NOT_INTRO: expected p ==> F");
  Theorem expansion = apply_def(thy.thm("NOT_DEF"), {p});
  return Kernel::eq_mp(sym(expansion), th);
}

Theorem contr(const Theory& thy, const TermPtr& p, const Theorem& falseth) {
  if (!is_false(falseth.concl())) fail(Err::RuleMismatch, "CONTR: expected |- F");
  Theorem allp = Kernel::eq_mp(thy.thm("F_DEF"), falseth);  // !p. p
  return spec(thy, p, allp);
}

Theorem ccontr(const Theory& thy, const TermPtr& p, const Theorem& th) {
  if (!is_false(th.concl())) fail(Err::RuleMismatch, "CCONTR: expected |- F");
  Theorem em = spec(thy, p, thy.thm("EXCLUDED_MIDDLE"));  // p \/ ~p
  Theorem pos = Kernel::assume(p);
  Theorem negcase = contr(thy, p, th);
  return disj_cases(thy, em, pos, negcase);
}

Theorem imp_antisym(const Theory& thy, const Theorem& ab, const Theorem& ba) {
  return Kernel::deduct_antisym(undisch(thy, ba), undisch(thy, ab));
}

std::pair<Theorem, Theorem> eq_imp_rule(const Theory& thy, const Theorem& th) {
  auto [p, q] = dest_eq(th.concl());
  Theorem fwd = disch(thy, p, Kernel::eq_mp(th, Kernel::assume(p)));
  Theorem bwd = disch(thy, q, Kernel::eq_mp(sym(th), Kernel::assume(q)));
  return {fwd, bwd};
}

Theorem eqf_intro(const Theory& thy, const Theorem& th) {
  TermPtr p = dest_neg(th.concl());
  Theorem to_f = mp(thy, not_elim(thy, th), Kernel::assume(p));  // A u {p} |- F
  Theorem from_f = contr(thy, p, Kernel::assume(mk_false()));    // {F} |- p
  return Kernel::deduct_antisym(from_f, to_f);
}

Theorem eqf_elim(const Theory& thy, const Theorem& th) {
  auto [p, f] = dest_eq(th.concl());
  if (!is_false(f)) fail(Err::RuleMismatch, "EQF_ELIM: expected p = F");
  return not_intro(thy, disch(thy, p, Kernel::eq_mp(th, Kernel::assume(p))));
}

}  // namespace rules

}  // namespace tforge
