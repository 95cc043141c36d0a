#include "tacticforge/itaut.hpp"

#include <algorithm>

namespace tforge {

Theorem prove_hyp(const Theory& thy, const Theorem& proof_of_a, const Theorem& th) {
  const TermPtr& a = proof_of_a.concl();
  for (const auto& h : th.hyps())
    if (alpha_equal(h, a))
      return rules::mp(thy, rules::disch(thy, h, th), proof_of_a);
  return th;
}

namespace {

using rules::disch;
using rules::mp;

bool is_atom(const TermPtr& t) {
  return !(is_true(t) || is_false(t) || is_neg(t) || is_conj(t) || is_disj(t) ||
           is_imp(t) || is_bool_eq(t));
}

void collect_atoms(const TermPtr& t, std::vector<TermPtr>& out) {
  if (is_neg(t)) return collect_atoms(dest_neg(t), out);
  if (is_conj(t) || is_disj(t) || is_imp(t) || is_bool_eq(t)) {
    collect_atoms(t->fn()->arg(), out);
    collect_atoms(t->arg(), out);
    return;
  }
  if (is_true(t) || is_false(t)) return;
  for (const auto& a : out)
    if (alpha_equal(a, t)) return;
  out.push_back(t);
}

struct Prover {
  const Theory& thy;
  bool classical;
  const Deadline& deadline;
  // Counts non-invertible choices along the current branch.
  std::optional<Theorem> prove(std::vector<TermPtr> hyps, const TermPtr& goal, int depth) {
    if (deadline.expired()) return std::nullopt;

    // Immediate closure.
    for (const auto& h : hyps) {
      if (alpha_equal(h, goal)) {
        Theorem th = Kernel::assume(h);
        if (!term_equal(h, goal)) th = Kernel::eq_mp(rules::alpha_link(h, goal), th);
        return th;
      }
      if (is_false(h)) return rules::contr(thy, goal, Kernel::assume(h));
    }

    // Invertible left decompositions.
    for (size_t i = 0; i < hyps.size(); ++i) {
      const TermPtr h = hyps[i];
      if (is_conj(h)) {
        auto [a, b] = dest_conj(h);
        std::vector<TermPtr> rest = hyps;
        rest.erase(rest.begin() + i);
        rest.push_back(a);
        rest.push_back(b);
        auto sub = prove(std::move(rest), goal, depth);
        if (!sub) return std::nullopt;
        Theorem ha = rules::conjunct1(thy, Kernel::assume(h));
        Theorem hb = rules::conjunct2(thy, Kernel::assume(h));
        return prove_hyp(thy, ha, prove_hyp(thy, hb, *sub));
      }
      if (is_disj(h)) {
        auto [a, b] = dest_disj(h);
        std::vector<TermPtr> la = hyps, lb = hyps;
        la.erase(la.begin() + i);
        la.push_back(a);
        lb.erase(lb.begin() + i);
        lb.push_back(b);
        auto pa = prove(std::move(la), goal, depth);
        if (!pa) return std::nullopt;
        auto pb = prove(std::move(lb), goal, depth);
        if (!pb) return std::nullopt;
        return rules::disj_cases(thy, Kernel::assume(h), *pa, *pb);
      }
      if (is_neg(h)) {
        // Uniformly treat ~a as a ==> F.
        TermPtr a = dest_neg(h);
        std::vector<TermPtr> rest = hyps;
        rest.erase(rest.begin() + i);
        rest.push_back(mk_imp(a, mk_false()));
        auto sub = prove(std::move(rest), goal, depth);
        if (!sub) return std::nullopt;
        return prove_hyp(thy, rules::not_elim(thy, Kernel::assume(h)), *sub);
      }
      if (is_bool_eq(h)) {
        auto [a, b] = dest_eq(h);
        std::vector<TermPtr> rest = hyps;
        rest.erase(rest.begin() + i);
        rest.push_back(mk_imp(a, b));
        rest.push_back(mk_imp(b, a));
        auto sub = prove(std::move(rest), goal, depth);
        if (!sub) return std::nullopt;
        auto [fwd, bwd] = rules::eq_imp_rule(thy, Kernel::assume(h));
        return prove_hyp(thy, fwd, prove_hyp(thy, bwd, *sub));
      }
      if (is_true(h)) {
        std::vector<TermPtr> rest = hyps;
        rest.erase(rest.begin() + i);
        auto sub = prove(std::move(rest), goal, depth);
        if (!sub) return std::nullopt;
        return *sub;
      }
    }

    // Invertible right rules.
    if (is_true(goal)) return rules::truth(thy);
    if (is_conj(goal)) {
      auto [a, b] = dest_conj(goal);
      auto pa = prove(hyps, a, depth);
      if (!pa) return std::nullopt;
      auto pb = prove(hyps, b, depth);
      if (!pb) return std::nullopt;
      return rules::conj(thy, *pa, *pb);
    }
    if (is_imp(goal)) {
      auto [a, b] = dest_imp(goal);
      std::vector<TermPtr> ext = hyps;
      ext.push_back(a);
      auto sub = prove(std::move(ext), b, depth);
      if (!sub) return std::nullopt;
      return disch(thy, a, *sub);
    }
    if (is_neg(goal)) {
      TermPtr a = dest_neg(goal);
      std::vector<TermPtr> ext = hyps;
      ext.push_back(a);
      auto sub = prove(std::move(ext), mk_false(), depth);
      if (!sub) return std::nullopt;
      return rules::not_intro(thy, disch(thy, a, *sub));
    }
    if (is_eq(goal)) {
      auto [a, b] = dest_eq(goal);
      if (alpha_equal(a, b)) return rules::alpha_link(a, b);
      if (is_bool_eq(goal)) {
        auto pf = prove(hyps, mk_imp(a, b), depth);
        if (pf) {
          auto pb = prove(hyps, mk_imp(b, a), depth);
          if (pb) return rules::imp_antisym(thy, *pf, *pb);
        }
        // fall through to the search rules on failure
      }
    }

    if (depth <= 0) return std::nullopt;

    // Non-invertible: disjunction-right.
    if (is_disj(goal)) {
      auto [a, b] = dest_disj(goal);
      if (auto pa = prove(hyps, a, depth - 1)) return rules::disj1(thy, *pa, b);
      if (auto pb = prove(hyps, b, depth - 1)) return rules::disj2(thy, a, *pb);
    }

    // Non-invertible: implication-left.
    for (size_t i = 0; i < hyps.size(); ++i) {
      const TermPtr h = hyps[i];
      if (!is_imp(h)) continue;
      auto [a, b] = dest_imp(h);
      std::vector<TermPtr> rest = hyps;
      rest.erase(rest.begin() + i);
      std::vector<TermPtr> with_b = rest;
      with_b.push_back(b);
      // Keep the implication available while proving its antecedent only
      // through the depth bound.
      auto pa = prove(rest, a, depth - 1);
      if (!pa) continue;
      auto sub = prove(std::move(with_b), goal, depth - 1);
      if (!sub) continue;
      Theorem bth = mp(thy, Kernel::assume(h), *pa);
      return prove_hyp(thy, bth, *sub);
    }

    // Classical: split on an undecided atom.
    if (classical) {
      std::vector<TermPtr> atoms;
      collect_atoms(goal, atoms);
      for (const auto& h : hyps) collect_atoms(h, atoms);
      for (const auto& atom : atoms) {
        bool decided = false;
        for (const auto& h : hyps)
          if (alpha_equal(h, atom) || (is_neg(h) && alpha_equal(dest_neg(h), atom)) ||
              (is_imp(h) && alpha_equal(dest_imp(h).first, atom) &&
               is_false(dest_imp(h).second))) {
            decided = true;
            break;
          }
        if (decided) continue;
        std::vector<TermPtr> pos = hyps, neg = hyps;
        pos.push_back(atom);
        neg.push_back(mk_neg(atom));
        auto pp = prove(std::move(pos), goal, depth - 1);
        if (!pp) return std::nullopt;  // split is complete; no point trying others
        auto pn = prove(std::move(neg), goal, depth - 1);
        if (!pn) return std::nullopt;
        Theorem em = rules::spec(thy, atom, thy.thm("EXCLUDED_MIDDLE"));
        return rules::disj_cases(thy, em, *pp, *pn);
      }
    }

    return std::nullopt;
  }
};

}  // namespace

std::optional<Theorem> prove_sequent(const Theory& thy, const std::vector<TermPtr>& assumptions,
                                     const TermPtr& goal, int depth, bool classical,
                                     const Deadline& deadline) {
  Prover p{thy, classical, deadline};
  return p.prove(assumptions, goal, depth);
}

std::optional<Theorem> taut(const Theory& thy, const TermPtr& goal, int max_depth,
                            const Deadline& deadline) {
  for (int d = 2; d <= max_depth; d += 2) {
    if (deadline.expired()) return std::nullopt;
    if (auto th = prove_sequent(thy, {}, goal, d, true, deadline)) return th;
  }
  return std::nullopt;
}

}  // namespace tforge
