#include "tacticforge/conv.hpp"

#include <algorithm>

namespace tforge {

namespace {

bool same_var(const TermPtr& a, const TermPtr& b) {
  return a->name() == b->name() && type_equal(a->type(), b->type());
}

bool contains_any(const TermPtr& t, const std::vector<TermPtr>& vars) {
  for (const auto& v : vars)
    if (is_free_in(v, t)) return true;
  return false;
}

struct Bound {
  const Term* pat;
  TermPtr subj;
};

bool match_rec(const TermPtr& p, const TermPtr& t, const std::vector<TermPtr>& pvars,
               std::vector<Bound>& bctx, MatchState& st) {
  switch (p->kind()) {
    case Term::Kind::Var: {
      for (auto it = bctx.rbegin(); it != bctx.rend(); ++it) {
        if (it->pat->name() == p->name() && type_equal(it->pat->type(), p->type()))
          return t->is_var() && same_var(t, it->subj);
      }
      bool is_pattern = false;
      for (const auto& v : pvars)
        if (same_var(v, p)) {
          is_pattern = true;
          break;
        }
      if (is_pattern) {
        // A binding may not capture subject-side bound variables.
        std::vector<TermPtr> locals;
        for (const auto& b : bctx) locals.push_back(b.subj);
        if (contains_any(t, locals)) return false;
        for (const auto& [v, bound] : st.terms)
          if (same_var(v, p)) return alpha_equal(bound, t);
        if (!type_match(p->type(), t->type(), st.types)) return false;
        st.terms.emplace_back(p, t);
        return true;
      }
      if (!t->is_var() || t->name() != p->name()) return false;
      return type_match(p->type(), t->type(), st.types);
    }
    case Term::Kind::Const:
      return t->is_const() && t->name() == p->name() &&
             type_match(p->type(), t->type(), st.types);
    case Term::Kind::Comb:
      return t->is_comb() && match_rec(p->fn(), t->fn(), pvars, bctx, st) &&
             match_rec(p->arg(), t->arg(), pvars, bctx, st);
    case Term::Kind::Abs: {
      if (!t->is_abs()) return false;
      if (!type_match(p->bound()->type(), t->bound()->type(), st.types)) return false;
      bctx.push_back({p->bound().get(), t->bound()});
      bool ok = match_rec(p->body(), t->body(), pvars, bctx, st);
      bctx.pop_back();
      return ok;
    }
  }
  return false;
}

}  // namespace

bool term_match(const TermPtr& pattern, const TermPtr& subject,
                const std::vector<TermPtr>& pattern_vars, MatchState& st) {
  std::vector<Bound> bctx;
  return match_rec(pattern, subject, pattern_vars, bctx, st);
}

Theorem instantiate_rule(const RewriteRule& rule, const TermPtr& subject,
                         const MatchState& st) {
  Theorem th = rule.thm;
  if (!st.types.empty()) th = Kernel::inst_type(st.types, th);
  if (!st.terms.empty()) {
    TermSubst subst;
    for (const auto& [v, t] : st.terms)
      subst.emplace_back(term_inst_type(st.types, v), t);
    th = Kernel::inst(subst, th);
  }
  TermPtr got = dest_eq(th.concl()).first;
  if (!alpha_equal(got, subject)) fail(Err::Internal, "rule instantiation mismatch");
  if (!term_equal(got, subject))
    th = Kernel::trans(rules::alpha_link(subject, got), th);
  return th;
}

std::vector<RewriteRule> rules_of_theorem(const Theory& thy, const Theorem& th) {
  std::vector<RewriteRule> out;
  std::vector<TermPtr> vars;
  Theorem stripped = rules::spec_all(thy, th, &vars);

  // Split conjunctions into individual rules.
  std::vector<Theorem> pieces{stripped};
  for (size_t i = 0; i < pieces.size();) {
    if (is_conj(pieces[i].concl())) {
      Theorem c = pieces[i];
      pieces.erase(pieces.begin() + i);
      pieces.insert(pieces.begin() + i, rules::conjunct1(thy, c));
      pieces.insert(pieces.begin() + i + 1, rules::conjunct2(thy, c));
    } else {
      ++i;
    }
  }

  for (const auto& piece : pieces) {
    Theorem eq = piece;
    if (!is_eq(piece.concl())) {
      if (is_neg(piece.concl()))
        eq = rules::eqf_intro(thy, piece);
      else
        eq = rules::eqt_intro(thy, piece);
    }
    auto [lhs, rhs] = dest_eq(eq.concl());
    std::vector<TermPtr> pvars;
    for (const auto& v : vars)
      if (is_free_in(v, lhs)) pvars.push_back(v);
    out.push_back(RewriteRule{eq, lhs, rhs, std::move(pvars)});
  }
  return out;
}

bool rule_loops(const RewriteRule& rule) {
  // lhs matching rhs (or a subterm of it) rewrites forever in exhaustive mode.
  std::vector<TermPtr> stack{rule.rhs};
  while (!stack.empty()) {
    TermPtr t = stack.back();
    stack.pop_back();
    MatchState st;
    if (term_match(rule.lhs, t, rule.pattern_vars, st)) return true;
    if (t->is_comb()) {
      stack.push_back(t->fn());
      stack.push_back(t->arg());
    } else if (t->is_abs()) {
      stack.push_back(t->body());
    }
  }
  return false;
}

namespace {

// One leftmost-outermost rewrite anywhere in t, or nothing.
std::optional<Theorem> step_conv(const TermPtr& t, const std::vector<RewriteRule>& rules) {
  for (const auto& rule : rules) {
    MatchState st;
    if (term_match(rule.lhs, t, rule.pattern_vars, st))
      return instantiate_rule(rule, t, st);
  }
  if (t->is_comb()) {
    if (auto sub = step_conv(t->fn(), rules))
      return Kernel::mk_comb_rule(*sub, Kernel::refl(t->arg()));
    if (auto sub = step_conv(t->arg(), rules))
      return Kernel::mk_comb_rule(Kernel::refl(t->fn()), *sub);
    return std::nullopt;
  }
  if (t->is_abs()) {
    if (auto sub = step_conv(t->body(), rules)) {
      try {
        return Kernel::abs_rule(t->bound(), *sub);
      } catch (const ProverError&) {
        return std::nullopt;  // rule hypotheses mention the bound variable
      }
    }
  }
  return std::nullopt;
}

// Single sweep: every position rewritten at most once, outermost first.
std::optional<Theorem> once_conv(const TermPtr& t, const std::vector<RewriteRule>& rules,
                                 size_t& steps) {
  for (const auto& rule : rules) {
    MatchState st;
    if (term_match(rule.lhs, t, rule.pattern_vars, st)) {
      ++steps;
      return instantiate_rule(rule, t, st);
    }
  }
  if (t->is_comb()) {
    auto cf = once_conv(t->fn(), rules, steps);
    auto ca = once_conv(t->arg(), rules, steps);
    if (!cf && !ca) return std::nullopt;
    Theorem fc = cf ? *cf : Kernel::refl(t->fn());
    Theorem ac = ca ? *ca : Kernel::refl(t->arg());
    return Kernel::mk_comb_rule(fc, ac);
  }
  if (t->is_abs()) {
    auto cb = once_conv(t->body(), rules, steps);
    if (!cb) return std::nullopt;
    try {
      return Kernel::abs_rule(t->bound(), *cb);
    } catch (const ProverError&) {
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace

Rewritten rewrite_engine(const Theory& thy, const TermPtr& t,
                         const std::vector<RewriteRule>& rules, RewriteMode mode,
                         size_t step_cap) {
  (void)thy;
  if (mode == RewriteMode::Once) {
    size_t steps = 0;
    auto conv = once_conv(t, rules, steps);
    if (!conv) return Rewritten{Kernel::refl(t), t, 0};
    return Rewritten{*conv, dest_eq(conv->concl()).second, steps};
  }

  std::vector<RewriteRule> live;
  for (const auto& r : rules)
    if (!rule_loops(r)) live.push_back(r);

  Theorem acc = Kernel::refl(t);
  TermPtr cur = t;
  size_t steps = 0;
  for (;;) {
    auto conv = step_conv(cur, live);
    if (!conv) break;
    if (++steps > step_cap)
      fail(Err::RewriteLimitExceeded, "rewrite fixpoint exceeded " +
                                          std::to_string(step_cap) + " steps");
    acc = Kernel::trans(acc, *conv);
    cur = dest_eq(acc.concl()).second;
  }
  return Rewritten{acc, cur, steps};
}

std::vector<RewriteRule> make_basic_rewrites(const Theory& thy) {
  TermPtr p = Term::var("p", ty_bool());
  TermPtr t = mk_true();
  TermPtr f = mk_false();
  TermPtr xa = Term::var("x", Type::var("A"));

  std::vector<TermPtr> stmts = {
      mk_eq(mk_conj(t, p), p),  mk_eq(mk_conj(p, t), p),  mk_eq(mk_conj(f, p), f),
      mk_eq(mk_conj(p, f), f),  mk_eq(mk_conj(p, p), p),  mk_eq(mk_disj(t, p), t),
      mk_eq(mk_disj(p, t), t),  mk_eq(mk_disj(f, p), p),  mk_eq(mk_disj(p, f), p),
      mk_eq(mk_disj(p, p), p),  mk_eq(mk_imp(t, p), p),   mk_eq(mk_imp(p, t), t),
      mk_eq(mk_imp(f, p), t),   mk_eq(mk_imp(p, p), t),   mk_eq(mk_imp(p, f), mk_neg(p)),
      mk_eq(mk_neg(t), f),      mk_eq(mk_neg(f), t),      mk_eq(mk_neg(mk_neg(p)), p),
      mk_eq(mk_eq(t, p), p),    mk_eq(mk_eq(p, t), p),    mk_eq(mk_eq(f, p), mk_neg(p)),
      mk_eq(mk_eq(p, f), mk_neg(p)),
      mk_eq(mk_eq(xa, xa), t),
  };

  std::vector<RewriteRule> out;
  for (const auto& s : stmts) {
    auto th = taut(thy, s);
    if (!th) fail(Err::Internal, "basic rewrite not provable: " + std::to_string(out.size()));
    // Generalize the free variables into pattern variables.
    std::vector<TermPtr> pvars = free_vars(s);
    auto [lhs, rhs] = dest_eq(th->concl());
    out.push_back(RewriteRule{*th, lhs, rhs, std::move(pvars)});
  }
  return out;
}

}  // namespace tforge
