#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ansx {

using u8  = std::uint8_t;
using u16 = std::uint16_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i32 = std::int32_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

enum class Err {
  // input validation
  BadParameter,
  BadDistribution,
  AlphabetTooLarge,
  PdTooLarge,
  OddCounts,
  NoConvergence,
  NoNegativeRoot,
  // corrupted or inconsistent data
  BadMagic,
  ModelMismatch,
  TerminalStateMismatch,
  OutOfDigits,
  HeaderCorrupt,
};

class Error : public std::runtime_error {
public:
  Error(Err code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  Err code() const { return code_; }

private:
  Err code_;
};

// CLI exit-code category: 2 validation, 3 corruption detected.
inline int exit_category(Err e) {
  switch (e) {
    case Err::BadMagic:
    case Err::ModelMismatch:
    case Err::TerminalStateMismatch:
    case Err::OutOfDigits:
    case Err::HeaderCorrupt:
      return 3;
    default:
      return 2;
  }
}

[[noreturn]] inline void fail(Err code, const std::string& msg) { throw Error(code, msg); }

inline void require(bool ok, Err code, const std::string& msg) {
  if (!ok) fail(code, msg);
}

}  // namespace ansx
