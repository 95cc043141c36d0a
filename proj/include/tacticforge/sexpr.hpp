#pragma once

// S-expression codec for terms and goals. The canonical print (single spaces,
// no surrounding whitespace) is the byte form used by fingerprints and the
// wire protocol.

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "tacticforge/kernel.hpp"

namespace tforge {

class SExpr;
using SExprPtr = std::shared_ptr<const SExpr>;

class SExpr {
 public:
  static SExprPtr atom(std::string token);
  static SExprPtr list(std::vector<SExprPtr> children);

  bool is_atom() const { return is_atom_; }
  const std::string& token() const { return token_; }
  const std::vector<SExprPtr>& children() const { return children_; }

 private:
  SExpr(bool is_atom, std::string token, std::vector<SExprPtr> children)
      : is_atom_(is_atom), token_(std::move(token)), children_(std::move(children)) {}
  bool is_atom_;
  std::string token_;
  std::vector<SExprPtr> children_;
};

class ParseError : public ProverError {
 public:
  ParseError(Err code, std::string msg, size_t position)
      : ProverError(code, msg + " at position " + std::to_string(position)),
        position_(position) {}
  size_t position() const { return position_; }

 private:
  size_t position_;
};

// Errors: UnbalancedParens(position), EmptyInput, TrailingGarbage(position).
SExprPtr parse_sexpr(std::string_view text);
std::string print_sexpr(const SExprPtr& s);

// Parentheses and atoms each emit one token.
std::vector<std::string> tokenize(const SExprPtr& s);
std::vector<std::string> tokenize_text(std::string_view text);  // parse + tokenize

// Term <-> SExpr. Tags: a (application), l (abstraction), v (variable),
// c (constant); types are (op args...) lists with nullary operators printed
// bare in tail position.
SExprPtr encode_type(const TypePtr& ty);
SExprPtr encode_term(const TermPtr& t);
TypePtr decode_type(const SExprPtr& s, const Environment& env);
TermPtr decode_term(const SExprPtr& s, const Environment& env);

std::string print_term(const TermPtr& t);  // print_sexpr(encode_term(t))
std::string print_type(const TypePtr& ty);
TermPtr parse_term(std::string_view text, const Environment& env);

// Maps machine-generated type names ?<digits> to t0,t1,... and machine
// generated variables GEN%PVAR%<digits> to g0,g1,... in order of first
// occurrence in a left-to-right preorder walk.
TermPtr normalize(const TermPtr& t);

// Positional renaming of bound variables; the result of
// print_term(alpha_canonical(normalize(t))) is the "normalized print" that
// feeds fingerprints, so alpha-equal terms print identically.
TermPtr alpha_canonical(const TermPtr& t);

std::string normalized_print(const TermPtr& t);

struct Fingerprint {
  uint64_t value = 0;
  bool operator==(const Fingerprint&) const = default;
  auto operator<=>(const Fingerprint&) const = default;
};

// SHA-256 of the normalized print, truncated to the low 64 bits, 0 -> 1.
uint64_t fingerprint_term(const TermPtr& t);
// Hypothesis prints sorted lexicographically, joined by 0x1F, then 0x1E,
// then the conclusion print.
uint64_t fingerprint_sequent(const std::vector<TermPtr>& hyps, const TermPtr& concl);
uint64_t fingerprint_theorem(const Theorem& th);

}  // namespace tforge
