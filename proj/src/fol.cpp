#include "tacticforge/fol.hpp"

#include <algorithm>

namespace tforge::fol {

FTermPtr FTerm::var(std::string name, TypePtr ty) {
  auto t = std::make_shared<FTerm>();
  t->is_var = true;
  t->name = std::move(name);
  t->ty = std::move(ty);
  return t;
}

FTermPtr FTerm::fn(std::string key, std::vector<FTermPtr> args, TypePtr result,
                   TermPtr origin) {
  auto t = std::make_shared<FTerm>();
  t->name = std::move(key);
  t->args = std::move(args);
  t->ty = std::move(result);
  t->origin = std::move(origin);
  return t;
}

FTermPtr FTerm::skolem(int id, std::vector<FTermPtr> args, TypePtr result) {
  auto t = std::make_shared<FTerm>();
  t->name = "_sk" + std::to_string(id);
  t->args = std::move(args);
  t->ty = std::move(result);
  t->skolem_id = id;
  return t;
}

std::string fterm_print(const FTermPtr& t) {
  std::string out = t->name;
  if (!t->args.empty()) {
    out += "(";
    for (size_t i = 0; i < t->args.size(); ++i) {
      if (i) out += ",";
      out += fterm_print(t->args[i]);
    }
    out += ")";
  }
  return out;
}

std::string atom_print(const Atom& a) {
  std::string out = a.pred;
  if (!a.args.empty()) {
    out += "(";
    for (size_t i = 0; i < a.args.size(); ++i) {
      if (i) out += ",";
      out += fterm_print(a.args[i]);
    }
    out += ")";
  }
  return out;
}

const FTermPtr* Subst::lookup(const std::string& var) const {
  auto it = bindings_.find(var);
  return it == bindings_.end() ? nullptr : &it->second;
}

FTermPtr Subst::walk(const FTermPtr& t) const {
  FTermPtr cur = t;
  while (cur->is_var) {
    const FTermPtr* next = lookup(cur->name);
    if (!next) return cur;
    cur = *next;
  }
  return cur;
}

FTermPtr Subst::deep_apply(const FTermPtr& t) const {
  FTermPtr w = walk(t);
  if (w->is_var) return w;
  bool changed = false;
  std::vector<FTermPtr> args;
  args.reserve(w->args.size());
  for (const auto& a : w->args) {
    FTermPtr a2 = deep_apply(a);
    changed = changed || a2.get() != a.get();
    args.push_back(std::move(a2));
  }
  if (!changed) return w;
  auto copy = std::make_shared<FTerm>(*w);
  copy->args = std::move(args);
  return copy;
}

void Subst::bind(const std::string& var, const FTermPtr& t) {
  bindings_[var] = t;
  trail_.push_back(var);
}

void Subst::undo(size_t mark) {
  while (trail_.size() > mark) {
    bindings_.erase(trail_.back());
    trail_.pop_back();
  }
}

namespace {

bool occurs(const std::string& var, const FTermPtr& t, const Subst& subst) {
  FTermPtr w = subst.walk(t);
  if (w->is_var) return w->name == var;
  for (const auto& a : w->args)
    if (occurs(var, a, subst)) return true;
  return false;
}

}  // namespace

UnifyStatus unify_terms(const FTermPtr& a, const FTermPtr& b, Subst& subst) {
  FTermPtr x = subst.walk(a);
  FTermPtr y = subst.walk(b);
  if (x->is_var && y->is_var && x->name == y->name) return UnifyStatus::Ok;
  if (x->is_var || y->is_var) {
    const FTermPtr& v = x->is_var ? x : y;
    const FTermPtr& t = x->is_var ? y : x;
    if (!type_equal(v->ty, t->ty)) return UnifyStatus::Clash;
    if (occurs(v->name, t, subst)) return UnifyStatus::OccursCheck;
    subst.bind(v->name, t);
    return UnifyStatus::Ok;
  }
  if (x->name != y->name || x->args.size() != y->args.size()) return UnifyStatus::Clash;
  for (size_t i = 0; i < x->args.size(); ++i) {
    UnifyStatus s = unify_terms(x->args[i], y->args[i], subst);
    if (s != UnifyStatus::Ok) return s;
  }
  return UnifyStatus::Ok;
}

UnifyStatus unify(const Atom& a, const Atom& b, Subst& subst) {
  size_t mark = subst.mark();
  if (a.pred != b.pred || a.args.size() != b.args.size()) return UnifyStatus::Clash;
  for (size_t i = 0; i < a.args.size(); ++i) {
    UnifyStatus s = unify_terms(a.args[i], b.args[i], subst);
    if (s != UnifyStatus::Ok) {
      subst.undo(mark);
      return s;
    }
  }
  return UnifyStatus::Ok;
}

// --- tableau ---------------------------------------------------------------------

namespace {

FTermPtr rename_term(const FTermPtr& t, int instance) {
  if (t->is_var) return FTerm::var(t->name + "@" + std::to_string(instance), t->ty);
  if (t->args.empty()) return t;
  std::vector<FTermPtr> args;
  args.reserve(t->args.size());
  for (const auto& a : t->args) args.push_back(rename_term(a, instance));
  auto copy = std::make_shared<FTerm>(*t);
  copy->args = std::move(args);
  return copy;
}

Atom rename_atom(const Atom& a, int instance) {
  Atom out = a;
  for (auto& arg : out.args) arg = rename_term(arg, instance);
  return out;
}

void collect_vars(const FTermPtr& t, std::vector<std::pair<std::string, TypePtr>>& out) {
  if (t->is_var) {
    for (const auto& [n, ty] : out)
      if (n == t->name) return;
    out.emplace_back(t->name, t->ty);
    return;
  }
  for (const auto& a : t->args) collect_vars(a, out);
}

struct Searcher {
  const std::vector<Clause>& clauses;
  const Deadline& deadline;
  size_t max_inferences;
  size_t inferences = 0;
  bool timed_out = false;
  Subst subst;
  // (clause index, instance id) in creation order along the current branch.
  std::vector<std::pair<int, int>> used;
  int next_instance = 0;

  bool tick() {
    if (++inferences % 512 == 0 && deadline.expired()) timed_out = true;
    if (inferences > max_inferences) timed_out = true;
    return !timed_out;
  }

  // Closes `lits` (remaining literals of the current clause instance) with
  // `path` as ancestors; depth bounds path growth.
  bool close_all(const std::vector<Literal>& lits, size_t from,
                 const std::vector<Literal>& path, int depth) {
    if (from >= lits.size()) return true;
    if (!tick()) return false;
    const Literal& lit = lits[from];

    // Reduction: complementary unification with a path literal.
    for (const auto& anc : path) {
      if (anc.positive == lit.positive) continue;
      size_t mark = subst.mark();
      if (unify(anc.atom, lit.atom, subst) == UnifyStatus::Ok) {
        if (close_all(lits, from + 1, path, depth)) return true;
        subst.undo(mark);
        if (timed_out) return false;
      }
    }

    // Extension: connect to a fresh instance of some clause.
    if (depth > 0) {
      for (size_t ci = 0; ci < clauses.size(); ++ci) {
        const Clause& c = clauses[ci];
        for (size_t mi = 0; mi < c.literals.size(); ++mi) {
          if (c.literals[mi].positive == lit.positive) continue;
          if (c.literals[mi].atom.pred != lit.atom.pred) continue;
          if (!tick()) return false;
          int inst = next_instance;
          Atom renamed = rename_atom(c.literals[mi].atom, inst);
          size_t mark = subst.mark();
          if (unify(renamed, lit.atom, subst) != UnifyStatus::Ok) continue;
          ++next_instance;
          used.emplace_back(int(ci), inst);
          std::vector<Literal> rest;
          for (size_t k = 0; k < c.literals.size(); ++k)
            if (k != mi)
              rest.push_back(Literal{c.literals[k].positive, rename_atom(c.literals[k].atom, inst)});
          std::vector<Literal> path2 = path;
          path2.push_back(lit);
          if (close_all(rest, 0, path2, depth - 1) &&
              close_all(lits, from + 1, path, depth))
            return true;
          used.pop_back();
          --next_instance;
          subst.undo(mark);
          if (timed_out) return false;
        }
      }
    }
    return false;
  }
};

}  // namespace

TableauResult tableau_prove(const std::vector<Clause>& clauses, int max_depth,
                            const Deadline& deadline, size_t max_inferences) {
  if (max_depth < 1) fail(Err::RuleMismatch, "tableau max_depth must be >= 1");
  size_t total_inferences = 0;
  for (int depth = 1; depth <= max_depth; ++depth) {
    for (size_t start = 0; start < clauses.size(); ++start) {
      Searcher s{clauses, deadline, max_inferences};
      int inst = s.next_instance++;
      s.used.emplace_back(int(start), inst);
      std::vector<Literal> lits;
      for (const auto& l : clauses[start].literals)
        lits.push_back(Literal{l.positive, rename_atom(l.atom, inst)});
      bool ok = s.close_all(lits, 0, {}, depth);
      total_inferences += s.inferences;
      if (s.timed_out) return SearchTimeout{};
      if (!ok) continue;

      TableauProof proof;
      proof.depth = depth;
      proof.inferences = total_inferences;
      for (const auto& [ci, instance] : s.used) {
        ProofInstance pi;
        pi.clause_index = ci;
        std::vector<std::pair<std::string, TypePtr>> vars;
        for (const auto& lit : clauses[ci].literals)
          for (const auto& arg : lit.atom.args) collect_vars(arg, vars);
        for (const auto& [name, ty] : vars) {
          FTermPtr v = FTerm::var(name + "@" + std::to_string(instance), ty);
          pi.bindings[name] = s.subst.deep_apply(v);
        }
        proof.instances.push_back(std::move(pi));
      }
      return proof;
    }
  }
  return Exhausted{total_inferences};
}

}  // namespace tforge::fol
