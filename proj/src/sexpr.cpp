#include "tacticforge/sexpr.hpp"

#include <algorithm>
#include <map>

namespace tforge {

SExprPtr SExpr::atom(std::string token) {
  if (token.empty()) fail(Err::EmptyInput, "empty atom");
  return SExprPtr(new SExpr(true, std::move(token), {}));
}

SExprPtr SExpr::list(std::vector<SExprPtr> children) {
  return SExprPtr(new SExpr(false, "", std::move(children)));
}

// --- parser -------------------------------------------------------------

namespace {

bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

struct Parser {
  std::string_view text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && is_ws(text[pos])) ++pos;
  }

  SExprPtr parse_one() {
    skip_ws();
    if (pos >= text.size())
      throw ParseError(Err::UnbalancedParens, "unexpected end of input", pos);
    if (text[pos] == ')')
      throw ParseError(Err::UnbalancedParens, "unexpected ')'", pos);
    if (text[pos] == '(') {
      size_t open = pos;
      ++pos;
      std::vector<SExprPtr> children;
      for (;;) {
        skip_ws();
        if (pos >= text.size())
          throw ParseError(Err::UnbalancedParens, "unclosed '('", open);
        if (text[pos] == ')') {
          ++pos;
          return SExpr::list(std::move(children));
        }
        children.push_back(parse_one());
      }
    }
    size_t start = pos;
    while (pos < text.size() && !is_ws(text[pos]) && text[pos] != '(' && text[pos] != ')')
      ++pos;
    return SExpr::atom(std::string(text.substr(start, pos - start)));
  }
};

}  // namespace

SExprPtr parse_sexpr(std::string_view text) {
  Parser p{text};
  p.skip_ws();
  if (p.pos >= text.size()) throw ParseError(Err::EmptyInput, "empty input", 0);
  SExprPtr s = p.parse_one();
  p.skip_ws();
  if (p.pos < text.size())
    throw ParseError(Err::TrailingGarbage, "trailing input", p.pos);
  return s;
}

static void print_rec(const SExprPtr& s, std::string& out) {
  if (s->is_atom()) {
    out += s->token();
    return;
  }
  out += '(';
  bool first = true;
  for (const auto& c : s->children()) {
    if (!first) out += ' ';
    first = false;
    print_rec(c, out);
  }
  out += ')';
}

std::string print_sexpr(const SExprPtr& s) {
  std::string out;
  print_rec(s, out);
  return out;
}

static void tokenize_rec(const SExprPtr& s, std::vector<std::string>& out) {
  if (s->is_atom()) {
    out.push_back(s->token());
    return;
  }
  out.push_back("(");
  for (const auto& c : s->children()) tokenize_rec(c, out);
  out.push_back(")");
}

std::vector<std::string> tokenize(const SExprPtr& s) {
  std::vector<std::string> out;
  tokenize_rec(s, out);
  return out;
}

std::vector<std::string> tokenize_text(std::string_view text) {
  return tokenize(parse_sexpr(text));
}

// --- term codec -----------------------------------------------------------
//
// Types print as (op arg... last) with every argument except the last in
// wrapped form; a nullary operator prints bare unless wrapped. This yields
// (fun (real) real) for real->real.

namespace {

SExprPtr encode_type_rec(const TypePtr& ty, bool wrapped) {
  if (ty->is_var()) return SExpr::atom(ty->name());
  if (ty->args().empty()) {
    if (wrapped) return SExpr::list({SExpr::atom(ty->name())});
    return SExpr::atom(ty->name());
  }
  std::vector<SExprPtr> kids;
  kids.reserve(ty->args().size() + 1);
  kids.push_back(SExpr::atom(ty->name()));
  for (size_t i = 0; i < ty->args().size(); ++i)
    kids.push_back(encode_type_rec(ty->args()[i], i + 1 < ty->args().size()));
  return SExpr::list(std::move(kids));
}

}  // namespace

SExprPtr encode_type(const TypePtr& ty) { return encode_type_rec(ty, false); }

SExprPtr encode_term(const TermPtr& t) {
  switch (t->kind()) {
    case Term::Kind::Var:
      return SExpr::list({SExpr::atom("v"), encode_type(t->type()), SExpr::atom(t->name())});
    case Term::Kind::Const:
      return SExpr::list({SExpr::atom("c"), encode_type(t->type()), SExpr::atom(t->name())});
    case Term::Kind::Comb:
      return SExpr::list({SExpr::atom("a"), encode_term(t->fn()), encode_term(t->arg())});
    case Term::Kind::Abs:
      return SExpr::list({SExpr::atom("l"), encode_term(t->bound()), encode_term(t->body())});
  }
  fail(Err::Internal, "bad term kind");
}

TypePtr decode_type(const SExprPtr& s, const Environment& env) {
  if (s->is_atom()) {
    const std::string& tok = s->token();
    if (env.has_type_operator(tok)) {
      if (env.type_arity(tok) != 0)
        fail(Err::ArityError, "type operator " + tok + " used without arguments");
      return Type::app(tok, {});
    }
    return Type::var(tok);
  }
  const auto& kids = s->children();
  if (kids.empty() || !kids[0]->is_atom())
    fail(Err::UnknownTag, "malformed type expression");
  const std::string& op = kids[0]->token();
  size_t arity = env.type_arity(op);
  if (kids.size() - 1 != arity)
    fail(Err::ArityError, "type operator " + op + " expects " + std::to_string(arity) +
                              " arguments, got " + std::to_string(kids.size() - 1));
  std::vector<TypePtr> args;
  args.reserve(arity);
  for (size_t i = 1; i < kids.size(); ++i) args.push_back(decode_type(kids[i], env));
  return Type::app(op, std::move(args));
}

TermPtr decode_term(const SExprPtr& s, const Environment& env) {
  if (s->is_atom()) fail(Err::UnknownTag, "bare atom is not a term: " + s->token());
  const auto& kids = s->children();
  if (kids.empty() || !kids[0]->is_atom()) fail(Err::UnknownTag, "malformed term expression");
  const std::string& tag = kids[0]->token();
  if (tag == "v" || tag == "c") {
    if (kids.size() != 3 || !kids[2]->is_atom())
      fail(Err::UnknownTag, "malformed " + tag + " node");
    TypePtr ty = decode_type(kids[1], env);
    env.check_type(ty);
    if (tag == "v") return mk_var(kids[2]->token(), ty);
    return mk_const(env, kids[2]->token(), ty);
  }
  if (tag == "a") {
    if (kids.size() != 3) fail(Err::UnknownTag, "malformed application node");
    TermPtr fn = decode_term(kids[1], env);
    TermPtr arg = decode_term(kids[2], env);
    try {
      return mk_comb(fn, arg);
    } catch (const ProverError& e) {
      fail(Err::IllTypedTerm, e.what());
    }
  }
  if (tag == "l") {
    if (kids.size() != 3) fail(Err::UnknownTag, "malformed abstraction node");
    TermPtr var = decode_term(kids[1], env);
    if (!var->is_var()) fail(Err::IllTypedTerm, "abstraction binder must be a variable");
    return mk_abs(var, decode_term(kids[2], env));
  }
  fail(Err::UnknownTag, "unknown tag: " + tag);
}

std::string print_term(const TermPtr& t) { return print_sexpr(encode_term(t)); }
std::string print_type(const TypePtr& ty) { return print_sexpr(encode_type(ty)); }

TermPtr parse_term(std::string_view text, const Environment& env) {
  return decode_term(parse_sexpr(text), env);
}

// --- generic-name normalization -----------------------------------------

namespace {

bool is_generic_type_name(const std::string& name) {
  if (name.size() < 2 || name[0] != '?') return false;
  return std::all_of(name.begin() + 1, name.end(), [](char c) { return c >= '0' && c <= '9'; });
}

bool is_generic_var_name(const std::string& name) {
  static const std::string prefix = "GEN%PVAR%";
  if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix) != 0) return false;
  return std::all_of(name.begin() + prefix.size(), name.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

struct NormState {
  std::map<std::string, std::string> type_map;
  std::map<std::string, std::string> var_map;

  std::string type_name(const std::string& name) {
    auto it = type_map.find(name);
    if (it != type_map.end()) return it->second;
    std::string fresh = "t" + std::to_string(type_map.size());
    type_map[name] = fresh;
    return fresh;
  }
  std::string var_name(const std::string& name) {
    auto it = var_map.find(name);
    if (it != var_map.end()) return it->second;
    std::string fresh = "g" + std::to_string(var_map.size());
    var_map[name] = fresh;
    return fresh;
  }
};

TypePtr normalize_type(const TypePtr& ty, NormState& st) {
  if (ty->is_var()) {
    if (is_generic_type_name(ty->name())) return Type::var(st.type_name(ty->name()));
    return ty;
  }
  // Machine-generated names can also appear as nullary operators when a
  // corpus treats invented types as opaque; rename those the same way.
  if (ty->args().empty() && is_generic_type_name(ty->name()))
    return Type::app(st.type_name(ty->name()), {});
  bool changed = false;
  std::vector<TypePtr> args;
  args.reserve(ty->args().size());
  for (const auto& a : ty->args()) {
    TypePtr a2 = normalize_type(a, st);
    changed = changed || a2.get() != a.get();
    args.push_back(std::move(a2));
  }
  return changed ? Type::app(ty->name(), std::move(args)) : ty;
}

TermPtr normalize_rec(const TermPtr& t, NormState& st) {
  switch (t->kind()) {
    case Term::Kind::Var: {
      TypePtr ty = normalize_type(t->type(), st);
      std::string name = is_generic_var_name(t->name()) ? st.var_name(t->name()) : t->name();
      if (name == t->name() && ty.get() == t->type().get()) return t;
      return Term::var(std::move(name), std::move(ty));
    }
    case Term::Kind::Const: {
      TypePtr ty = normalize_type(t->type(), st);
      if (ty.get() == t->type().get()) return t;
      return Term::constant(t->name(), std::move(ty));
    }
    case Term::Kind::Comb: {
      TermPtr f = normalize_rec(t->fn(), st);
      TermPtr a = normalize_rec(t->arg(), st);
      if (f.get() == t->fn().get() && a.get() == t->arg().get()) return t;
      return Term::comb(f, a);
    }
    case Term::Kind::Abs: {
      TermPtr v = normalize_rec(t->bound(), st);
      TermPtr b = normalize_rec(t->body(), st);
      if (v.get() == t->bound().get() && b.get() == t->body().get()) return t;
      return Term::abs(v, b);
    }
  }
  return t;
}

}  // namespace

TermPtr normalize(const TermPtr& t) {
  NormState st;
  return normalize_rec(t, st);
}

// --- alpha canonicalization ------------------------------------------------

namespace {

// Bound variables rename to %0, %1, ... by binder order; the prefix grows
// when a free variable already uses it.
std::string bound_prefix(const TermPtr& t) {
  std::string prefix = "%";
  auto taken = [&](const std::string& p) {
    for (const auto& v : free_vars(t)) {
      const std::string& n = v->name();
      if (n.size() > p.size() && n.compare(0, p.size(), p) == 0 &&
          std::all_of(n.begin() + p.size(), n.end(),
                      [](char c) { return c >= '0' && c <= '9'; }))
        return true;
    }
    return false;
  };
  while (taken(prefix)) prefix += "%";
  return prefix;
}

TermPtr alpha_rec_canon(const TermPtr& t, const std::string& prefix, size_t& counter,
                        std::vector<std::pair<const Term*, TermPtr>>& env) {
  switch (t->kind()) {
    case Term::Kind::Var: {
      for (auto it = env.rbegin(); it != env.rend(); ++it)
        if (it->first->name() == t->name() && type_equal(it->first->type(), t->type()))
          return it->second;
      return t;
    }
    case Term::Kind::Const:
      return t;
    case Term::Kind::Comb: {
      TermPtr f = alpha_rec_canon(t->fn(), prefix, counter, env);
      TermPtr a = alpha_rec_canon(t->arg(), prefix, counter, env);
      if (f.get() == t->fn().get() && a.get() == t->arg().get()) return t;
      return Term::comb(f, a);
    }
    case Term::Kind::Abs: {
      TermPtr fresh = Term::var(prefix + std::to_string(counter++), t->bound()->type());
      env.emplace_back(t->bound().get(), fresh);
      TermPtr body = alpha_rec_canon(t->body(), prefix, counter, env);
      env.pop_back();
      return Term::abs(fresh, body);
    }
  }
  return t;
}

}  // namespace

TermPtr alpha_canonical(const TermPtr& t) {
  std::string prefix = bound_prefix(t);
  size_t counter = 0;
  std::vector<std::pair<const Term*, TermPtr>> env;
  return alpha_rec_canon(t, prefix, counter, env);
}

std::string normalized_print(const TermPtr& t) {
  return print_term(alpha_canonical(normalize(t)));
}

// --- fingerprints ------------------------------------------------------------

uint64_t fingerprint_term(const TermPtr& t) {
  uint64_t cached = t->fp_cache_.load(std::memory_order_relaxed);
  if (cached != 0) return cached;
  uint64_t fp = sha256_low64(normalized_print(t));
  t->fp_cache_.store(fp, std::memory_order_relaxed);
  return fp;
}

uint64_t fingerprint_sequent(const std::vector<TermPtr>& hyps, const TermPtr& concl) {
  std::vector<std::string> prints;
  prints.reserve(hyps.size());
  for (const auto& h : hyps) prints.push_back(normalized_print(h));
  std::sort(prints.begin(), prints.end());
  std::string data;
  for (size_t i = 0; i < prints.size(); ++i) {
    if (i) data += '\x1f';
    data += prints[i];
  }
  data += '\x1e';
  data += normalized_print(concl);
  return sha256_low64(data);
}

uint64_t fingerprint_theorem(const Theorem& th) {
  return fingerprint_sequent(th.hyps(), th.concl());
}

}  // namespace tforge
