#include <algorithm>

#include "tacticforge/fol.hpp"
#include "tacticforge/itaut.hpp"
#include "tacticforge/sexpr.hpp"

// Clausification of HOL formulas and reconstruction of closed tableaux as
// kernel theorems. Inputs are prefix-normal: a (possibly empty) quantifier
// prefix over a propositional matrix. The tableau's clause instances pin
// down the ground instantiations; reconstruction SPECs/CHOOSEs the prefix
// accordingly and closes the ground problem with the classical sequent
// prover.

namespace tforge {

namespace {

using fol::Atom;
using fol::Clause;
using fol::atom_print;
using fol::Clausified;
using fol::FTerm;
using fol::fterm_print;
using fol::FTermPtr;
using fol::Literal;
using fol::PrefixStep;
using fol::SourceFormula;

// A |- ~~p  ->  A |- p
Theorem dneg_elim(const Theory& thy, const Theorem& th) {
  TermPtr p = dest_neg(dest_neg(th.concl()));
  Theorem ff = rules::mp(thy, rules::not_elim(thy, th), Kernel::assume(mk_neg(p)));
  return rules::ccontr(thy, p, ff);
}

// A |- ~(!x. r)  ->  A |- ?x. ~r
Theorem not_forall_elim(const Theory& thy, const Theorem& th) {
  TermPtr all = dest_neg(th.concl());
  auto [x, r] = dest_forall(all);
  TermPtr abs_r = all->arg();
  std::vector<TermPtr> avoid = free_vars(all);
  for (const auto& h : th.hyps())
    for (const auto& v : free_vars(h)) avoid.push_back(v);
  TermPtr x2 = variant_var(x, avoid);
  TermPtr rx = dest_eq(rules::beta_conv(Term::comb(abs_r, x2)).concl()).second;
  TermPtr ex = mk_exists(x2, mk_neg(rx));

  Theorem nf = Kernel::assume(mk_neg(ex));
  Theorem wit = rules::exists_intro(thy, ex, x2, Kernel::assume(mk_neg(rx)));
  Theorem contradiction = rules::mp(thy, rules::not_elim(thy, nf), wit);
  Theorem rx_proved = rules::ccontr(thy, rx, contradiction);  // {~ex} |- rx
  Theorem all_proved = rules::gen(thy, x2, rx_proved);        // {~ex} |- !x2. rx
  Theorem all_as_input = Kernel::eq_mp(rules::alpha_link(all_proved.concl(), all), all_proved);
  Theorem ff = rules::mp(thy, rules::not_elim(thy, th), all_as_input);
  return rules::ccontr(thy, ex, ff);  // A |- ?x. ~r
}

// A |- ~(?x. r)  ->  A |- !x. ~r
Theorem not_exists_elim(const Theory& thy, const Theorem& th) {
  TermPtr ex = dest_neg(th.concl());
  auto [x, r] = dest_exists(ex);
  TermPtr abs_r = ex->arg();
  std::vector<TermPtr> avoid = free_vars(ex);
  for (const auto& h : th.hyps())
    for (const auto& v : free_vars(h)) avoid.push_back(v);
  TermPtr x2 = variant_var(x, avoid);
  TermPtr rx = dest_eq(rules::beta_conv(Term::comb(abs_r, x2)).concl()).second;
  Theorem wit = rules::exists_intro(thy, ex, x2, Kernel::assume(rx));
  Theorem ff = rules::mp(thy, rules::not_elim(thy, th), wit);
  Theorem neg = rules::not_intro(thy, rules::disch(thy, rx, ff));  // A |- ~rx
  return rules::gen(thy, x2, neg);
}

// --- clausification --------------------------------------------------------

struct ScopeEntry {
  TermPtr hol_var;
  FTermPtr fol;  // variable or skolem application
};

struct ClausifyCtx {
  const Theory& thy;
  int var_counter = 0;
  int skolem_counter = 0;
  std::vector<std::pair<int, size_t>> skolem_owner;  // skolem id -> (source, prefix pos)
};

std::string type_key(const TypePtr& ty) { return print_type(ty); }

bool scope_var_free_in(const std::vector<ScopeEntry>& scope, const TermPtr& t) {
  for (const auto& e : scope)
    if (is_free_in(e.hol_var, t)) return true;
  return false;
}

FTermPtr fol_of_term(const TermPtr& t, const std::vector<ScopeEntry>& scope) {
  // Scope lookup with shadowing.
  if (t->is_var()) {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (it->hol_var->name() == t->name() && type_equal(it->hol_var->type(), t->type()))
        return it->fol;
    return FTerm::fn("v:" + t->name() + "#" + type_key(t->type()), {}, t->type(), t);
  }
  if (t->is_const())
    return FTerm::fn("c:" + t->name() + "#" + type_key(t->type()), {}, t->type(), t);
  if (t->is_abs()) {
    if (scope_var_free_in(scope, t))
      fail(Err::NotFirstOrderizable, "quantified variable inside a frozen lambda");
    return FTerm::fn("lam:" + u64_to_dec(fingerprint_term(t)), {}, t->type(), t);
  }
  // Application spine.
  std::vector<TermPtr> args;
  TermPtr head = t;
  while (head->is_comb()) {
    args.push_back(head->arg());
    head = head->fn();
  }
  std::reverse(args.begin(), args.end());
  std::vector<FTermPtr> fargs;
  fargs.reserve(args.size());
  for (const auto& a : args) fargs.push_back(fol_of_term(a, scope));
  if (head->is_var()) {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (it->hol_var->name() == head->name() && type_equal(it->hol_var->type(), head->type()))
        fail(Err::NotFirstOrderizable, "quantified variable in applied position");
    return FTerm::fn("v:" + head->name() + "#" + type_key(head->type()), std::move(fargs),
                     t->type(), head);
  }
  if (head->is_const())
    return FTerm::fn("c:" + head->name() + "#" + type_key(head->type()), std::move(fargs),
                     t->type(), head);
  // Lambda head: freeze the whole application.
  if (scope_var_free_in(scope, t))
    fail(Err::NotFirstOrderizable, "quantified variable inside a frozen lambda");
  return FTerm::fn("lam:" + u64_to_dec(fingerprint_term(t)), {}, t->type(), t);
}

Atom fol_atom(const TermPtr& t, const std::vector<ScopeEntry>& scope) {
  if (is_eq(t)) {
    auto [l, r] = dest_eq(t);
    Atom a;
    a.pred = "=#" + type_key(l->type());
    a.args = {fol_of_term(l, scope), fol_of_term(r, scope)};
    a.origin = t->fn()->fn();
    return a;
  }
  std::vector<TermPtr> args;
  TermPtr head = t;
  while (head->is_comb()) {
    args.push_back(head->arg());
    head = head->fn();
  }
  std::reverse(args.begin(), args.end());
  Atom a;
  a.origin = head;
  if (head->is_var()) {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (it->hol_var->name() == head->name() && type_equal(it->hol_var->type(), head->type()))
        fail(Err::NotFirstOrderizable, "quantified variable in predicate position");
    a.pred = "v:" + head->name() + "#" + type_key(head->type());
  } else if (head->is_const()) {
    a.pred = "c:" + head->name() + "#" + type_key(head->type());
  } else {
    if (scope_var_free_in(scope, t))
      fail(Err::NotFirstOrderizable, "quantified variable inside a frozen atom");
    a.pred = "lam:" + u64_to_dec(fingerprint_term(t));
    return a;
  }
  a.args.reserve(args.size());
  for (const auto& arg : args) a.args.push_back(fol_of_term(arg, scope));
  return a;
}

using LitSet = std::vector<Literal>;

bool lit_equal(const Literal& a, const Literal& b) {
  return a.positive == b.positive && atom_print(a.atom) == atom_print(b.atom);
}

std::vector<LitSet> distribute(const std::vector<LitSet>& a, const std::vector<LitSet>& b) {
  std::vector<LitSet> out;
  if (a.size() * b.size() > 4096)
    fail(Err::NotFirstOrderizable, "clausal form too large");
  for (const auto& x : a)
    for (const auto& y : b) {
      LitSet merged = x;
      bool taut = false;
      for (const auto& lit : y) {
        bool dup = false;
        for (const auto& have : merged) {
          if (lit_equal(have, lit)) dup = true;
          if (have.positive != lit.positive && atom_print(have.atom) == atom_print(lit.atom))
            taut = true;
        }
        if (!dup) merged.push_back(lit);
      }
      if (!taut) out.push_back(std::move(merged));
    }
  return out;
}

std::vector<LitSet> matrix_cnf(const TermPtr& t, bool positive,
                               const std::vector<ScopeEntry>& scope) {
  if (is_forall(t) || is_exists(t))
    fail(Err::NotFirstOrderizable, "quantifier below a propositional connective");
  if (is_neg(t)) return matrix_cnf(dest_neg(t), !positive, scope);
  if (is_true(t)) {
    if (positive) return {};
    return {LitSet{}};
  }
  if (is_false(t)) {
    if (positive) return {LitSet{}};
    return {};
  }
  if (is_conj(t)) {
    auto [a, b] = dest_conj(t);
    auto ca = matrix_cnf(a, positive, scope);
    auto cb = matrix_cnf(b, positive, scope);
    if (positive) {
      ca.insert(ca.end(), cb.begin(), cb.end());
      return ca;
    }
    return distribute(ca, cb);
  }
  if (is_disj(t)) {
    auto [a, b] = dest_disj(t);
    auto ca = matrix_cnf(a, positive, scope);
    auto cb = matrix_cnf(b, positive, scope);
    if (positive) return distribute(ca, cb);
    ca.insert(ca.end(), cb.begin(), cb.end());
    return ca;
  }
  if (is_imp(t)) {
    auto [a, b] = dest_imp(t);
    auto ca = matrix_cnf(a, !positive, scope);
    auto cb = matrix_cnf(b, positive, scope);
    if (positive) return distribute(ca, cb);
    ca.insert(ca.end(), cb.begin(), cb.end());
    return ca;
  }
  // Boolean equations translate as equality atoms; expanding them as iffs
  // breaks down when a side is itself a quantified boolean variable, and
  // mixed treatment would split atom identities between sources.
  Literal lit{positive, fol_atom(t, scope)};
  return {LitSet{lit}};
}

void process_source(ClausifyCtx& ctx, Clausified& out, std::optional<Theorem> thm,
                    const TermPtr& formula, bool negated) {
  int src_index = int(out.sources.size());
  SourceFormula src;
  src.thm = std::move(thm);
  src.formula = formula;
  src.negated = negated;

  std::vector<ScopeEntry> scope;
  std::vector<FTermPtr> universal_scope;
  TermPtr cur = formula;
  bool positive = !negated;
  for (;;) {
    if (is_neg(cur)) {
      positive = !positive;
      cur = dest_neg(cur);
      continue;
    }
    bool is_univ = (positive && is_forall(cur)) || (!positive && is_exists(cur));
    bool is_exis = (positive && is_exists(cur)) || (!positive && is_forall(cur));
    if (!is_univ && !is_exis) break;
    auto [x, body] = is_forall(cur) ? dest_forall(cur) : dest_exists(cur);
    PrefixStep step;
    step.hol_var = x;
    if (is_univ) {
      step.universal = true;
      step.var_name = "V" + std::to_string(ctx.var_counter++);
      FTermPtr fv = FTerm::var(step.var_name, x->type());
      scope.push_back({x, fv});
      universal_scope.push_back(fv);
    } else {
      step.universal = false;
      step.skolem_id = ctx.skolem_counter++;
      ctx.skolem_owner.emplace_back(src_index, src.prefix.size());
      scope.push_back({x, FTerm::skolem(step.skolem_id, universal_scope, x->type())});
    }
    src.prefix.push_back(step);
    cur = body;
  }

  auto clause_sets = matrix_cnf(cur, positive, scope);
  out.sources.push_back(std::move(src));
  for (auto& lits : clause_sets) {
    Clause c;
    c.literals = std::move(lits);
    c.source = src_index;
    out.clauses.push_back(std::move(c));
  }
}

}  // namespace

namespace fol {

Clausified clausify(const Theory& thy, const Goal& goal, const std::vector<Theorem>& axioms) {
  ClausifyCtx ctx{thy};
  Clausified out;
  process_source(ctx, out, std::nullopt, goal.concl, true);
  for (const auto& h : goal.hyps) process_source(ctx, out, Kernel::assume(h), h, false);
  for (const auto& ax : axioms) process_source(ctx, out, ax, ax.concl(), false);
  // Stash the skolem ownership map in the sources for reconstruction.
  out.skolem_owner = std::move(ctx.skolem_owner);
  return out;
}

}  // namespace fol

// --- reconstruction -------------------------------------------------------------

namespace {

struct Recon {
  const Theory& thy;
  const Clausified& cl;
  const Deadline& deadline;

  std::map<std::string, TermPtr> leftover_vars;  // unbound FOL var -> fresh HOL var
  std::map<std::string, TermPtr> skolem_vars;    // ground skolem print -> witness var
  std::vector<std::pair<TermPtr, Theorem>> chooses;  // intro order
  std::map<std::string, Theorem> core_cache;
  std::vector<Theorem> cores;
  int fresh = 0;

  TermPtr hol_of(const FTermPtr& t) {
    if (t->is_var) {
      auto it = leftover_vars.find(t->name);
      if (it != leftover_vars.end()) return it->second;
      TermPtr v = Term::var("_u" + std::to_string(fresh++), t->ty);
      leftover_vars.emplace(t->name, v);
      return v;
    }
    if (t->skolem_id >= 0) {
      std::string key = fterm_print(t);
      auto it = skolem_vars.find(key);
      if (it != skolem_vars.end()) return it->second;
      // Derive the owning source's core at this instantiation; that
      // introduces the witness.
      auto [src, pos] = cl.skolem_owner.at(t->skolem_id);
      const SourceFormula& source = cl.sources.at(src);
      std::map<std::string, FTermPtr> bindings;
      size_t argi = 0;
      for (size_t i = 0; i < pos && argi < t->args.size(); ++i)
        if (source.prefix[i].universal) bindings[source.prefix[i].var_name] = t->args[argi++];
      derive_core(src, bindings);
      auto it2 = skolem_vars.find(key);
      if (it2 == skolem_vars.end())
        fail(Err::Internal, "skolem witness not introduced: " + key);
      return it2->second;
    }
    TermPtr head = t->origin;
    TermPtr out = head;
    for (const auto& a : t->args) out = Term::comb(out, hol_of(a));
    return out;
  }

  static std::string bindings_key(int src, const std::map<std::string, FTermPtr>& b) {
    std::string key = std::to_string(src);
    for (const auto& [name, t] : b) {
      key += "|";
      key += name;
      key += "=";
      key += fterm_print(t);
    }
    return key;
  }

  void derive_core(int src_index, const std::map<std::string, FTermPtr>& bindings) {
    std::string key = bindings_key(src_index, bindings);
    if (core_cache.count(key)) return;
    if (deadline.expired()) fail(Err::Internal, "reconstruction deadline exceeded");
    const SourceFormula& src = cl.sources.at(src_index);
    Theorem th = src.thm ? *src.thm : Kernel::assume(mk_neg(src.formula));
    for (size_t i = 0; i < src.prefix.size(); ++i) {
      const PrefixStep& step = src.prefix[i];
      // Normalize the conclusion so the next quantifier is outermost.
      for (;;) {
        const TermPtr& c = th.concl();
        if (is_neg(c) && is_neg(dest_neg(c))) {
          th = dneg_elim(thy, th);
          continue;
        }
        if (is_neg(c) && is_forall(dest_neg(c))) {
          th = not_forall_elim(thy, th);
          continue;
        }
        if (is_neg(c) && is_exists(dest_neg(c))) {
          th = not_exists_elim(thy, th);
          continue;
        }
        break;
      }
      if (step.universal) {
        auto it = bindings.find(step.var_name);
        TermPtr inst;
        if (it != bindings.end()) {
          inst = hol_of(it->second);
        } else {
          // Unconstrained position: any term of the right type.
          FTermPtr dflt = FTerm::var(step.var_name + "#dflt", step.hol_var->type());
          inst = hol_of(dflt);
        }
        th = rules::spec(thy, inst, th);
      } else {
        // Existential: introduce (or reuse) the witness for the ground
        // skolem term at this position.
        std::vector<FTermPtr> args;
        for (size_t j = 0; j < i; ++j) {
          if (!src.prefix[j].universal) continue;
          auto it = bindings.find(src.prefix[j].var_name);
          args.push_back(it != bindings.end()
                             ? it->second
                             : FTerm::var(src.prefix[j].var_name + "#dflt",
                                          src.prefix[j].hol_var->type()));
        }
        FTermPtr sk = FTerm::skolem(step.skolem_id, std::move(args), step.hol_var->type());
        std::string sk_key = fterm_print(sk);
        auto [x, body] = dest_exists(th.concl());
        TermPtr abs_body = th.concl()->arg();
        auto wit_it = skolem_vars.find(sk_key);
        TermPtr w;
        if (wit_it == skolem_vars.end()) {
          w = Term::var("_w" + std::to_string(fresh++), x->type());
          skolem_vars.emplace(sk_key, w);
          chooses.emplace_back(w, th);
        } else {
          w = wit_it->second;
        }
        th = Kernel::assume(
            dest_eq(rules::beta_conv(Term::comb(abs_body, w)).concl()).second);
      }
    }
    core_cache.emplace(key, th);
    cores.push_back(th);
  }
};

}  // namespace

std::optional<Theorem> meson_prove(const Theory& thy, const Goal& goal,
                                   const std::vector<Theorem>& args, bool include_hyps,
                                   const Deadline& deadline) {
  Goal input = include_hyps ? goal : Goal::make({}, goal.concl);
  Clausified cl = fol::clausify(thy, input, args);
  if (cl.clauses.empty()) return std::nullopt;

  fol::TableauResult res = fol::tableau_prove(cl.clauses, 12, deadline);
  if (!fol::proved(res)) return std::nullopt;
  const fol::TableauProof& proof = std::get<fol::TableauProof>(res);

  Recon recon{thy, cl, deadline};
  for (const auto& inst : proof.instances)
    recon.derive_core(cl.clauses.at(inst.clause_index).source, inst.bindings);

  std::vector<TermPtr> core_terms;
  core_terms.reserve(recon.cores.size());
  for (const auto& c : recon.cores) core_terms.push_back(c.concl());

  std::optional<Theorem> refut;
  for (int depth = 2; depth <= 24 && !refut; depth += 2) {
    if (deadline.expired()) return std::nullopt;
    refut = prove_sequent(thy, core_terms, mk_false(), depth, true, deadline);
  }
  if (!refut) return std::nullopt;

  Theorem th = *refut;
  for (const auto& core : recon.cores) th = prove_hyp(thy, core, th);
  for (auto it = recon.chooses.rbegin(); it != recon.chooses.rend(); ++it)
    th = rules::choose(thy, it->first, it->second, th);
  th = rules::ccontr(thy, goal.concl, th);

  if (!alpha_equal(th.concl(), goal.concl)) fail(Err::Internal, "meson conclusion mismatch");
  return th;
}

}  // namespace tforge
