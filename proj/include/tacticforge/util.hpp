#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tforge {

// Error codes shared across modules. Each operation documents which subset
// it can raise.
enum class Err {
  TypeMismatch,
  UnknownConstant,
  ArityError,
  RuleMismatch,
  NotAnEquation,
  FreeVarCapture,
  Redefinition,
  FreeVariablesInDefinition,
  UnbalancedParens,
  EmptyInput,
  TrailingGarbage,
  UnknownTag,
  IllTypedTerm,
  RewriteLimitExceeded,
  Clash,
  OccursCheck,
  NotFirstOrderizable,
  FingerprintMismatch,
  CorruptSnapshot,
  UnknownFingerprint,
  ScriptFailure,
  ForwardReference,
  NonFiniteLoss,
  AllPoolsEmpty,
  CheckFailure,
  UnresolvableArgument,
  NotFound,
  Internal,
};

const char* err_name(Err e);

class ProverError : public std::runtime_error {
 public:
  ProverError(Err code, std::string msg)
      : std::runtime_error(std::string(err_name(code)) + ": " + msg), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) {
  throw ProverError(code, msg);
}

// --- deterministic hashing ---------------------------------------------

inline uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// SHA-256 digest (32 bytes) of a byte string.
std::vector<uint8_t> sha256(std::string_view data);

// Low 64 bits of SHA-256, interpreted little-endian from the first 8 digest
// bytes, with 0 remapped to 1. This is the fingerprint primitive.
uint64_t sha256_low64(std::string_view data);

// --- deterministic RNG --------------------------------------------------
//
// splitmix64-based generator. std::uniform_int_distribution is not
// reproducible across standard libraries, so bounded sampling is done by
// hand here.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [lo, hi] inclusive.
  uint64_t uniform(uint64_t lo, uint64_t hi) {
    uint64_t span = hi - lo + 1;
    if (span == 0) return next();  // full range
    uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return lo + v % span;
  }

  // Uniform double in [0, 1).
  double real() { return (next() >> 11) * (1.0 / 9007199254740992.0); }

  // Fork a decorrelated child stream.
  Rng fork(uint64_t salt) { return Rng(next() ^ (salt * 0x9e3779b97f4a7c15ull)); }

 private:
  uint64_t state_;
};

// --- deadlines -----------------------------------------------------------

class Deadline {
 public:
  Deadline() : unlimited_(true) {}
  explicit Deadline(double seconds)
      : unlimited_(false),
        end_(std::chrono::steady_clock::now() +
             std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                 std::chrono::duration<double>(seconds))) {}

  bool expired() const {
    return !unlimited_ && std::chrono::steady_clock::now() >= end_;
  }
  static Deadline unlimited() { return Deadline(); }

 private:
  bool unlimited_;
  std::chrono::steady_clock::time_point end_;
};

double seconds_since(std::chrono::steady_clock::time_point start);

// Run f(i) for i in [0, n) on up to `threads` workers. Exceptions propagate.
void parallel_for(size_t n, unsigned threads, const std::function<void(size_t)>& f);

// Decimal string <-> u64 (fingerprints travel as decimal strings on the wire).
std::string u64_to_dec(uint64_t v);
std::optional<uint64_t> dec_to_u64(std::string_view s);

}  // namespace tforge
