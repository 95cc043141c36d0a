#include "tacticforge/kernel.hpp"

#include <algorithm>

namespace tforge {

// Defined in sexpr.cpp; the kernel only needs the values, not the codec.
uint64_t fingerprint_term(const TermPtr& t);
uint64_t fingerprint_sequent(const std::vector<TermPtr>& hyps, const TermPtr& concl);

// --- types ----------------------------------------------------------------

Type::Type(Kind k, std::string name, std::vector<TypePtr> args)
    : kind_(k), name_(std::move(name)), args_(std::move(args)) {
  uint64_t h = fnv1a64(name_) ^ (k == Kind::Var ? 0x56415254ull : 0x41505054ull);
  for (const auto& a : args_) h = h * 1099511628211ull ^ a->hash();
  hash_ = h;
}

TypePtr Type::var(std::string name) {
  return TypePtr(new Type(Kind::Var, std::move(name), {}));
}

TypePtr Type::app(std::string op, std::vector<TypePtr> args) {
  return TypePtr(new Type(Kind::App, std::move(op), std::move(args)));
}

const TypePtr& Type::dom() const {
  if (!is_fun()) fail(Err::TypeMismatch, "dom of non-function type");
  return args_[0];
}

const TypePtr& Type::cod() const {
  if (!is_fun()) fail(Err::TypeMismatch, "cod of non-function type");
  return args_[1];
}

bool type_equal(const TypePtr& a, const TypePtr& b) {
  if (a.get() == b.get()) return true;
  if (a->hash() != b->hash()) return false;
  if (a->kind() != b->kind() || a->name() != b->name()) return false;
  if (a->args().size() != b->args().size()) return false;
  for (size_t i = 0; i < a->args().size(); ++i)
    if (!type_equal(a->args()[i], b->args()[i])) return false;
  return true;
}

TypePtr ty_bool() {
  static const TypePtr b = Type::app("bool", {});
  return b;
}

TypePtr ty_fun(TypePtr dom, TypePtr cod) {
  std::vector<TypePtr> args{std::move(dom), std::move(cod)};
  return Type::app("fun", std::move(args));
}

TypePtr type_subst(const TypeSubst& theta, const TypePtr& ty) {
  if (theta.empty()) return ty;
  if (ty->is_var()) {
    for (const auto& [name, repl] : theta)
      if (name == ty->name()) return repl;
    return ty;
  }
  bool changed = false;
  std::vector<TypePtr> args;
  args.reserve(ty->args().size());
  for (const auto& a : ty->args()) {
    TypePtr a2 = type_subst(theta, a);
    changed = changed || a2.get() != a.get();
    args.push_back(std::move(a2));
  }
  return changed ? Type::app(ty->name(), std::move(args)) : ty;
}

bool type_match(const TypePtr& pattern, const TypePtr& concrete, TypeSubst& theta) {
  if (pattern->is_var()) {
    for (const auto& [name, bound] : theta)
      if (name == pattern->name()) return type_equal(bound, concrete);
    theta.emplace_back(pattern->name(), concrete);
    return true;
  }
  if (!concrete->is_app() || pattern->name() != concrete->name() ||
      pattern->args().size() != concrete->args().size())
    return false;
  for (size_t i = 0; i < pattern->args().size(); ++i)
    if (!type_match(pattern->args()[i], concrete->args()[i], theta)) return false;
  return true;
}

bool type_contains_var(const TypePtr& ty) {
  if (ty->is_var()) return true;
  for (const auto& a : ty->args())
    if (type_contains_var(a)) return true;
  return false;
}

// --- terms ------------------------------------------------------------------

Term::Term(Kind k, std::string name, TypePtr ty, TermPtr a, TermPtr b)
    : kind_(k), name_(std::move(name)), ty_(std::move(ty)), a_(std::move(a)), b_(std::move(b)) {
  uint64_t h = fnv1a64(name_) ^ (uint64_t(k) + 1) * 0x9e3779b97f4a7c15ull;
  h ^= ty_->hash();
  if (a_) h = h * 1099511628211ull ^ a_->hash();
  if (b_) h = h * 1099511628211ull ^ b_->hash();
  hash_ = h;
}

TermPtr Term::var(std::string name, TypePtr ty) {
  return TermPtr(new Term(Kind::Var, std::move(name), std::move(ty), nullptr, nullptr));
}

TermPtr Term::constant(std::string name, TypePtr ty) {
  return TermPtr(new Term(Kind::Const, std::move(name), std::move(ty), nullptr, nullptr));
}

TermPtr Term::comb(TermPtr fn, TermPtr arg) {
  const TypePtr& fty = fn->type();
  if (!fty->is_fun())
    fail(Err::TypeMismatch, "application of a non-function");
  if (!type_equal(fty->dom(), arg->type()))
    fail(Err::TypeMismatch, "argument type does not match function domain");
  TypePtr cod = fty->cod();
  return TermPtr(new Term(Kind::Comb, "", std::move(cod), std::move(fn), std::move(arg)));
}

TermPtr Term::abs(TermPtr bound_var, TermPtr body) {
  if (!bound_var->is_var()) fail(Err::TypeMismatch, "abstraction binder must be a variable");
  TypePtr ty = ty_fun(bound_var->type(), body->type());
  return TermPtr(new Term(Kind::Abs, "", std::move(ty), std::move(bound_var), std::move(body)));
}

bool term_equal(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->hash() != b->hash()) return false;
  if (a->kind() != b->kind()) return false;
  switch (a->kind()) {
    case Term::Kind::Var:
    case Term::Kind::Const:
      return a->name() == b->name() && type_equal(a->type(), b->type());
    case Term::Kind::Comb:
      return term_equal(a->fn(), b->fn()) && term_equal(a->arg(), b->arg());
    case Term::Kind::Abs:
      return term_equal(a->bound(), b->bound()) && term_equal(a->body(), b->body());
  }
  return false;
}

namespace {

bool alpha_rec(const TermPtr& a, const TermPtr& b,
               std::vector<std::pair<const Term*, const Term*>>& env) {
  if (a->kind() != b->kind()) return false;
  switch (a->kind()) {
    case Term::Kind::Var: {
      for (auto it = env.rbegin(); it != env.rend(); ++it) {
        bool la = it->first->name() == a->name() && type_equal(it->first->type(), a->type());
        bool lb = it->second->name() == b->name() && type_equal(it->second->type(), b->type());
        if (la || lb) return la && lb;
      }
      return a->name() == b->name() && type_equal(a->type(), b->type());
    }
    case Term::Kind::Const:
      return a->name() == b->name() && type_equal(a->type(), b->type());
    case Term::Kind::Comb:
      return alpha_rec(a->fn(), b->fn(), env) && alpha_rec(a->arg(), b->arg(), env);
    case Term::Kind::Abs: {
      if (!type_equal(a->bound()->type(), b->bound()->type())) return false;
      env.emplace_back(a->bound().get(), b->bound().get());
      bool ok = alpha_rec(a->body(), b->body(), env);
      env.pop_back();
      return ok;
    }
  }
  return false;
}

void free_vars_rec(const TermPtr& t, std::vector<const Term*>& bound,
                   std::vector<TermPtr>& out) {
  switch (t->kind()) {
    case Term::Kind::Var: {
      for (const Term* b : bound)
        if (b->name() == t->name() && type_equal(b->type(), t->type())) return;
      for (const auto& v : out)
        if (v->name() == t->name() && type_equal(v->type(), t->type())) return;
      out.push_back(t);
      return;
    }
    case Term::Kind::Const:
      return;
    case Term::Kind::Comb:
      free_vars_rec(t->fn(), bound, out);
      free_vars_rec(t->arg(), bound, out);
      return;
    case Term::Kind::Abs:
      bound.push_back(t->bound().get());
      free_vars_rec(t->body(), bound, out);
      bound.pop_back();
      return;
  }
}

bool same_var(const TermPtr& a, const TermPtr& b) {
  return a->name() == b->name() && type_equal(a->type(), b->type());
}

}  // namespace

bool alpha_equal(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  std::vector<std::pair<const Term*, const Term*>> env;
  return alpha_rec(a, b, env);
}

std::vector<TermPtr> free_vars(const TermPtr& t) {
  std::vector<TermPtr> out;
  std::vector<const Term*> bound;
  free_vars_rec(t, bound, out);
  return out;
}

bool is_free_in(const TermPtr& var, const TermPtr& t) {
  switch (t->kind()) {
    case Term::Kind::Var:
      return same_var(var, t);
    case Term::Kind::Const:
      return false;
    case Term::Kind::Comb:
      return is_free_in(var, t->fn()) || is_free_in(var, t->arg());
    case Term::Kind::Abs:
      if (same_var(var, t->bound())) return false;
      return is_free_in(var, t->body());
  }
  return false;
}

bool is_closed(const TermPtr& t) { return free_vars(t).empty(); }

TermPtr variant_var(const TermPtr& var, const std::vector<TermPtr>& avoid) {
  std::string name = var->name();
  auto clashes = [&](const std::string& n) {
    for (const auto& v : avoid)
      if (v->name() == n) return true;
    return false;
  };
  while (clashes(name)) name += "'";
  if (name == var->name()) return var;
  return Term::var(name, var->type());
}

TermPtr term_subst(const TermSubst& theta, const TermPtr& t) {
  if (theta.empty()) return t;
  switch (t->kind()) {
    case Term::Kind::Var:
      for (const auto& [v, repl] : theta)
        if (same_var(v, t)) return repl;
      return t;
    case Term::Kind::Const:
      return t;
    case Term::Kind::Comb: {
      TermPtr f = term_subst(theta, t->fn());
      TermPtr a = term_subst(theta, t->arg());
      if (f.get() == t->fn().get() && a.get() == t->arg().get()) return t;
      return Term::comb(f, a);
    }
    case Term::Kind::Abs: {
      const TermPtr& x = t->bound();
      TermSubst inner;
      for (const auto& p : theta)
        if (!same_var(p.first, x)) inner.push_back(p);
      if (inner.empty()) return t;
      // Capture check: a replacement with x free would be captured.
      bool capture = false;
      for (const auto& [v, repl] : inner)
        if (is_free_in(v, t->body()) && is_free_in(x, repl)) {
          capture = true;
          break;
        }
      if (!capture) {
        TermPtr body = term_subst(inner, t->body());
        if (body.get() == t->body().get()) return t;
        return Term::abs(x, body);
      }
      std::vector<TermPtr> avoid = free_vars(t->body());
      for (const auto& [v, repl] : inner) {
        auto fv = free_vars(repl);
        avoid.insert(avoid.end(), fv.begin(), fv.end());
      }
      TermPtr x2 = variant_var(x, avoid);
      TermSubst rename{{x, x2}};
      TermPtr body = term_subst(inner, term_subst(rename, t->body()));
      return Term::abs(x2, body);
    }
  }
  return t;
}

TermPtr term_inst_type(const TypeSubst& theta, const TermPtr& t) {
  if (theta.empty()) return t;
  switch (t->kind()) {
    case Term::Kind::Var:
      return Term::var(t->name(), type_subst(theta, t->type()));
    case Term::Kind::Const:
      return Term::constant(t->name(), type_subst(theta, t->type()));
    case Term::Kind::Comb:
      return Term::comb(term_inst_type(theta, t->fn()), term_inst_type(theta, t->arg()));
    case Term::Kind::Abs: {
      TermPtr x2 = Term::var(t->bound()->name(), type_subst(theta, t->bound()->type()));
      // A distinct free variable may collide with the instantiated binder.
      std::vector<TermPtr> images;
      for (const auto& v : free_vars(t->body())) {
        if (same_var(v, t->bound())) continue;
        images.push_back(Term::var(v->name(), type_subst(theta, v->type())));
      }
      bool clash = false;
      for (const auto& img : images)
        if (same_var(img, x2)) {
          clash = true;
          break;
        }
      TermPtr body = t->body();
      if (clash) {
        TermPtr fresh = variant_var(t->bound(), images);
        body = term_subst({{t->bound(), fresh}}, body);
        x2 = Term::var(fresh->name(), type_subst(theta, fresh->type()));
      }
      return Term::abs(x2, term_inst_type(theta, body));
    }
  }
  return t;
}

// --- equality syntax ---------------------------------------------------------

static TypePtr eq_generic_type() {
  static const TypePtr ty = ty_fun(Type::var("A"), ty_fun(Type::var("A"), ty_bool()));
  return ty;
}

bool is_eq(const TermPtr& t) {
  return t->is_comb() && t->fn()->is_comb() && t->fn()->fn()->is_const() &&
         t->fn()->fn()->name() == "=";
}

std::pair<TermPtr, TermPtr> dest_eq(const TermPtr& t) {
  if (!is_eq(t)) fail(Err::NotAnEquation, "expected an equation");
  return {t->fn()->arg(), t->arg()};
}

TermPtr mk_eq(const TermPtr& lhs, const TermPtr& rhs) {
  if (!type_equal(lhs->type(), rhs->type()))
    fail(Err::TypeMismatch, "equation sides have different types");
  TypePtr ety = ty_fun(lhs->type(), ty_fun(lhs->type(), ty_bool()));
  TermPtr eq = Term::constant("=", ety);
  return Term::comb(Term::comb(eq, lhs), rhs);
}

// --- environment --------------------------------------------------------------

Environment::Environment() {
  type_operators_["bool"] = 0;
  type_operators_["fun"] = 2;
  constants_["="] = eq_generic_type();
}

void Environment::declare_type_operator(const std::string& name, size_t arity) {
  if (type_operators_.count(name)) fail(Err::Redefinition, "type operator " + name);
  type_operators_[name] = arity;
}

void Environment::declare_constant(const std::string& name, TypePtr generic_ty) {
  if (constants_.count(name)) fail(Err::Redefinition, "constant " + name);
  check_type(generic_ty);
  constants_[name] = std::move(generic_ty);
}

bool Environment::has_type_operator(const std::string& name) const {
  return type_operators_.count(name) != 0;
}

size_t Environment::type_arity(const std::string& name) const {
  auto it = type_operators_.find(name);
  if (it == type_operators_.end()) fail(Err::UnknownConstant, "type operator " + name);
  return it->second;
}

bool Environment::has_constant(const std::string& name) const {
  return constants_.count(name) != 0;
}

const TypePtr& Environment::constant_type(const std::string& name) const {
  auto it = constants_.find(name);
  if (it == constants_.end()) fail(Err::UnknownConstant, "constant " + name);
  return it->second;
}

void Environment::check_type(const TypePtr& ty) const {
  if (ty->is_var()) return;
  auto it = type_operators_.find(ty->name());
  if (it == type_operators_.end())
    fail(Err::UnknownConstant, "type operator " + ty->name());
  if (it->second != ty->args().size())
    fail(Err::ArityError, "type operator " + ty->name() + " expects " +
                              std::to_string(it->second) + " arguments");
  for (const auto& a : ty->args()) check_type(a);
}

TermPtr mk_var(const std::string& name, const TypePtr& ty) { return Term::var(name, ty); }

TermPtr mk_const(const Environment& env, const std::string& name, const TypePtr& ty) {
  const TypePtr& generic = env.constant_type(name);
  TypeSubst theta;
  if (!type_match(generic, ty, theta))
    fail(Err::TypeMismatch, "type is not an instance of the generic type of " + name);
  return Term::constant(name, ty);
}

TermPtr mk_comb(const TermPtr& fn, const TermPtr& arg) { return Term::comb(fn, arg); }

TermPtr mk_abs(const TermPtr& var, const TermPtr& body) { return Term::abs(var, body); }

// --- theorems -----------------------------------------------------------------

namespace {

void require_bool(const TermPtr& t, const char* what) {
  if (!type_equal(t->type(), ty_bool()))
    fail(Err::TypeMismatch, std::string(what) + " must have type bool");
}

// Union of hypothesis lists; canonicalization happens in the constructor.
std::vector<TermPtr> hyp_union(const std::vector<TermPtr>& a, const std::vector<TermPtr>& b) {
  std::vector<TermPtr> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::vector<TermPtr> hyp_remove(const std::vector<TermPtr>& hyps, const TermPtr& t) {
  std::vector<TermPtr> out;
  for (const auto& h : hyps)
    if (!alpha_equal(h, t)) out.push_back(h);
  return out;
}

}  // namespace

Theorem::Theorem(std::vector<TermPtr> hyps, TermPtr concl, Provenance prov)
    : concl_(std::move(concl)), prov_(prov) {
  require_bool(concl_, "conclusion");
  for (const auto& h : hyps) require_bool(h, "hypothesis");
  std::vector<std::pair<uint64_t, TermPtr>> keyed;
  keyed.reserve(hyps.size());
  for (auto& h : hyps) keyed.emplace_back(fingerprint_term(h), std::move(h));
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [fp, h] : keyed) {
    if (!hyps_.empty() && alpha_equal(hyps_.back(), h)) continue;
    hyps_.push_back(std::move(h));
  }
  fingerprint_ = fingerprint_sequent(hyps_, concl_);
}

const char* rule_name(RuleId id) {
  switch (id) {
    case RuleId::REFL: return "REFL";
    case RuleId::TRANS: return "TRANS";
    case RuleId::MK_COMB: return "MK_COMB";
    case RuleId::ABS: return "ABS";
    case RuleId::BETA: return "BETA";
    case RuleId::ASSUME: return "ASSUME";
    case RuleId::EQ_MP: return "EQ_MP";
    case RuleId::DEDUCT_ANTISYM: return "DEDUCT_ANTISYM";
    case RuleId::INST: return "INST";
    case RuleId::INST_TYPE: return "INST_TYPE";
  }
  return "?";
}

Theorem Kernel::refl(const TermPtr& t) {
  return Theorem({}, mk_eq(t, t), Provenance::Rule);
}

Theorem Kernel::trans(const Theorem& st, const Theorem& tu) {
  auto [s, t1] = dest_eq(st.concl());
  auto [t2, u] = dest_eq(tu.concl());
  if (!alpha_equal(t1, t2)) fail(Err::RuleMismatch, "TRANS: equations do not chain");
  return Theorem(hyp_union(st.hyps(), tu.hyps()), mk_eq(s, u), Provenance::Rule);
}

Theorem Kernel::mk_comb_rule(const Theorem& fg, const Theorem& xy) {
  auto [f, g] = dest_eq(fg.concl());
  auto [x, y] = dest_eq(xy.concl());
  if (!f->type()->is_fun() || !type_equal(f->type()->dom(), x->type()))
    fail(Err::RuleMismatch, "MK_COMB: types do not compose");
  return Theorem(hyp_union(fg.hyps(), xy.hyps()),
                 mk_eq(Term::comb(f, x), Term::comb(g, y)), Provenance::Rule);
}

Theorem Kernel::abs_rule(const TermPtr& var, const Theorem& st) {
  if (!var->is_var()) fail(Err::RuleMismatch, "ABS: binder must be a variable");
  auto [s, t] = dest_eq(st.concl());
  for (const auto& h : st.hyps())
    if (is_free_in(var, h))
      fail(Err::FreeVarCapture, "ABS: variable free in a hypothesis");
  return Theorem(st.hyps(), mk_eq(Term::abs(var, s), Term::abs(var, t)), Provenance::Rule);
}

Theorem Kernel::beta(const TermPtr& redex) {
  if (!redex->is_comb() || !redex->fn()->is_abs())
    fail(Err::RuleMismatch, "BETA: expected (\\x. t) x");
  const TermPtr& x = redex->fn()->bound();
  if (!redex->arg()->is_var() || !same_var(redex->arg(), x))
    fail(Err::RuleMismatch, "BETA: argument must be the bound variable");
  return Theorem({}, mk_eq(redex, redex->fn()->body()), Provenance::Rule);
}

Theorem Kernel::assume(const TermPtr& p) {
  require_bool(p, "assumption");
  return Theorem({p}, p, Provenance::Rule);
}

Theorem Kernel::eq_mp(const Theorem& pq, const Theorem& p) {
  auto [lhs, rhs] = dest_eq(pq.concl());
  if (!alpha_equal(lhs, p.concl()))
    fail(Err::RuleMismatch, "EQ_MP: conclusion does not match equation lhs");
  return Theorem(hyp_union(pq.hyps(), p.hyps()), rhs, Provenance::Rule);
}

Theorem Kernel::deduct_antisym(const Theorem& a, const Theorem& b) {
  auto hyps = hyp_union(hyp_remove(a.hyps(), b.concl()), hyp_remove(b.hyps(), a.concl()));
  return Theorem(std::move(hyps), mk_eq(a.concl(), b.concl()), Provenance::Rule);
}

Theorem Kernel::inst(const TermSubst& theta, const Theorem& th) {
  for (const auto& [v, repl] : theta) {
    if (!v->is_var()) fail(Err::RuleMismatch, "INST: left side must be a variable");
    if (!type_equal(v->type(), repl->type()))
      fail(Err::TypeMismatch, "INST: replacement type differs");
  }
  std::vector<TermPtr> hyps;
  hyps.reserve(th.hyps().size());
  for (const auto& h : th.hyps()) hyps.push_back(term_subst(theta, h));
  return Theorem(std::move(hyps), term_subst(theta, th.concl()), Provenance::Rule);
}

Theorem Kernel::inst_type(const TypeSubst& theta, const Theorem& th) {
  std::vector<TermPtr> hyps;
  hyps.reserve(th.hyps().size());
  for (const auto& h : th.hyps()) hyps.push_back(term_inst_type(theta, h));
  return Theorem(std::move(hyps), term_inst_type(theta, th.concl()), Provenance::Rule);
}

Theorem Kernel::new_axiom(Environment& env, const TermPtr& p) {
  require_bool(p, "axiom");
  if (!is_closed(p)) fail(Err::FreeVariablesInDefinition, "axiom must be closed");
  Theorem th({}, p, Provenance::Axiom);
  env.axioms_.push_back(th);
  return th;
}

namespace {
void collect_term_tyvars(const TermPtr& t, std::vector<std::string>& out) {
  if (t->is_comb()) {
    collect_term_tyvars(t->fn(), out);
    collect_term_tyvars(t->arg(), out);
    return;
  }
  if (t->is_abs()) {
    collect_term_tyvars(t->bound(), out);
    collect_term_tyvars(t->body(), out);
    return;
  }
  std::vector<const Type*> stack{t->type().get()};
  while (!stack.empty()) {
    const Type* ty = stack.back();
    stack.pop_back();
    if (ty->is_var()) {
      if (std::find(out.begin(), out.end(), ty->name()) == out.end())
        out.push_back(ty->name());
    } else {
      for (const auto& a : ty->args()) stack.push_back(a.get());
    }
  }
}

void collect_type_tyvars(const TypePtr& ty, std::vector<std::string>& out) {
  if (ty->is_var()) {
    if (std::find(out.begin(), out.end(), ty->name()) == out.end())
      out.push_back(ty->name());
    return;
  }
  for (const auto& a : ty->args()) collect_type_tyvars(a, out);
}
}  // namespace

Theorem Kernel::define(Environment& env, const std::string& name, const TermPtr& body) {
  if (env.has_constant(name)) fail(Err::Redefinition, "constant " + name);
  if (!is_closed(body))
    fail(Err::FreeVariablesInDefinition, "definition body has free variables");
  // Soundness: every type variable of the body must appear in its type.
  std::vector<std::string> body_tyvars, type_tyvars;
  collect_term_tyvars(body, body_tyvars);
  collect_type_tyvars(body->type(), type_tyvars);
  for (const auto& v : body_tyvars)
    if (std::find(type_tyvars.begin(), type_tyvars.end(), v) == type_tyvars.end())
      fail(Err::FreeVariablesInDefinition,
           "type variable " + v + " of the body does not occur in its type");
  env.constants_[name] = body->type();
  env.definitions_.emplace_back(name, body);
  TermPtr c = Term::constant(name, body->type());
  return Theorem({}, mk_eq(c, body), Provenance::Definition);
}

Theorem Kernel::trusted_import(std::vector<TermPtr> hyps, TermPtr concl) {
  return Theorem(std::move(hyps), std::move(concl), Provenance::TrustedImport);
}

Theorem Kernel::rule(RuleId id, const RuleInputs& in) {
  auto thm = [&](size_t i) -> const Theorem& {
    if (i >= in.thms.size()) fail(Err::RuleMismatch, "missing theorem input");
    return in.thms[i];
  };
  auto term = [&](size_t i) -> const TermPtr& {
    if (i >= in.terms.size()) fail(Err::RuleMismatch, "missing term input");
    return in.terms[i];
  };
  switch (id) {
    case RuleId::REFL: return refl(term(0));
    case RuleId::TRANS: return trans(thm(0), thm(1));
    case RuleId::MK_COMB: return mk_comb_rule(thm(0), thm(1));
    case RuleId::ABS: return abs_rule(term(0), thm(0));
    case RuleId::BETA: return beta(term(0));
    case RuleId::ASSUME: return assume(term(0));
    case RuleId::EQ_MP: return eq_mp(thm(0), thm(1));
    case RuleId::DEDUCT_ANTISYM: return deduct_antisym(thm(0), thm(1));
    case RuleId::INST: return inst(in.term_subst, thm(0));
    case RuleId::INST_TYPE: return inst_type(in.type_subst, thm(0));
  }
  fail(Err::RuleMismatch, "unknown rule");
}

}  // namespace tforge
