#include "tacticforge/util.hpp"

#include <openssl/sha.h>

#include <atomic>
#include <charconv>
#include <mutex>
#include <thread>

namespace tforge {

const char* err_name(Err e) {
  switch (e) {
    case Err::TypeMismatch: return "TypeMismatch";
    case Err::UnknownConstant: return "UnknownConstant";
    case Err::ArityError: return "ArityError";
    case Err::RuleMismatch: return "RuleMismatch";
    case Err::NotAnEquation: return "NotAnEquation";
    case Err::FreeVarCapture: return "FreeVarCapture";
    case Err::Redefinition: return "Redefinition";
    case Err::FreeVariablesInDefinition: return "FreeVariablesInDefinition";
    case Err::UnbalancedParens: return "UnbalancedParens";
    case Err::EmptyInput: return "EmptyInput";
    case Err::TrailingGarbage: return "TrailingGarbage";
    case Err::UnknownTag: return "UnknownTag";
    case Err::IllTypedTerm: return "IllTypedTerm";
    case Err::RewriteLimitExceeded: return "RewriteLimitExceeded";
    case Err::Clash: return "Clash";
    case Err::OccursCheck: return "OccursCheck";
    case Err::NotFirstOrderizable: return "NotFirstOrderizable";
    case Err::FingerprintMismatch: return "FingerprintMismatch";
    case Err::CorruptSnapshot: return "CorruptSnapshot";
    case Err::UnknownFingerprint: return "UnknownFingerprint";
    case Err::ScriptFailure: return "ScriptFailure";
    case Err::ForwardReference: return "ForwardReference";
    case Err::NonFiniteLoss: return "NonFiniteLoss";
    case Err::AllPoolsEmpty: return "AllPoolsEmpty";
    case Err::CheckFailure: return "CheckFailure";
    case Err::UnresolvableArgument: return "UnresolvableArgument";
    case Err::NotFound: return "NotFound";
    case Err::Internal: return "Internal";
  }
  return "Unknown";
}

std::vector<uint8_t> sha256(std::string_view data) {
  std::vector<uint8_t> out(SHA256_DIGEST_LENGTH);
  SHA256(reinterpret_cast<const unsigned char*>(data.data()), data.size(), out.data());
  return out;
}

uint64_t sha256_low64(std::string_view data) {
  auto d = sha256(data);
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= uint64_t(d[i]) << (8 * i);
  return v == 0 ? 1 : v;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void parallel_for(size_t n, unsigned threads, const std::function<void(size_t)>& f) {
  if (n == 0) return;
  unsigned workers = std::min<size_t>(threads == 0 ? 1 : threads, n);
  if (workers <= 1) {
    for (size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(err_mu);
          if (!err) err = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

std::string u64_to_dec(uint64_t v) {
  char buf[24];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

std::optional<uint64_t> dec_to_u64(std::string_view s) {
  if (s.empty()) return std::nullopt;
  uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace tforge
