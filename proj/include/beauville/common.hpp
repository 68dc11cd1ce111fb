// Shared basics for the beauville library: error taxonomy, tri-state
// verdicts with reason strings, and a few small numeric helpers.
#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace beauville {

// ---------------------------------------------------------------------------
// Error taxonomy.  Verification *verdicts* are values (see TriState below);
// exceptions are reserved for malformed input, violated preconditions and
// exhausted resource budgets.
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed textual input (cycle notation, hex masks, word syntax, ...).
class ParseError : public Error {
public:
  explicit ParseError(const std::string& msg) : Error("parse error: " + msg) {}
};

/// A documented mathematical precondition does not hold for the arguments.
class DomainError : public Error {
public:
  explicit DomainError(const std::string& msg) : Error("domain error: " + msg) {}
};

/// An enumeration or closure walk exceeded its configured element budget.
class BudgetExceeded : public Error {
public:
  explicit BudgetExceeded(const std::string& msg)
      : Error("budget exceeded: " + msg) {}
};

/// Filesystem / stream failures.
class IOError : public Error {
public:
  explicit IOError(const std::string& msg) : Error("i/o error: " + msg) {}
};

// ---------------------------------------------------------------------------
// TriState verdicts.
//
// Every check that may be undecidable at the available oracle strength
// returns PASS, FAIL or UNDETERMINED.  UNDETERMINED always carries a reason
// naming the oracle tier that gave up; it propagates through combinators and
// never silently upgrades to PASS.
// ---------------------------------------------------------------------------

enum class Verdict { Pass, Fail, Undetermined };

struct TriState {
  Verdict verdict = Verdict::Undetermined;
  std::string reason;  // mandatory for Undetermined, informative otherwise

  static TriState pass(std::string why = "") {
    return TriState{Verdict::Pass, std::move(why)};
  }
  static TriState fail(std::string why = "") {
    return TriState{Verdict::Fail, std::move(why)};
  }
  static TriState undetermined(std::string why) {
    return TriState{Verdict::Undetermined, std::move(why)};
  }

  bool is_pass() const { return verdict == Verdict::Pass; }
  bool is_fail() const { return verdict == Verdict::Fail; }
  bool is_undetermined() const { return verdict == Verdict::Undetermined; }
};

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Undetermined: return "UNDETERMINED";
  }
  return "UNDETERMINED";
}

/// Conjunction: FAIL dominates, then UNDETERMINED, then PASS.
inline TriState all_of(const std::vector<TriState>& parts) {
  const TriState* undet = nullptr;
  for (const auto& p : parts) {
    if (p.is_fail()) return p;
    if (p.is_undetermined() && undet == nullptr) undet = &p;
  }
  if (undet != nullptr) return *undet;
  return TriState::pass();
}

/// Disjunction: PASS dominates, then UNDETERMINED, then FAIL.
inline TriState any_of(const std::vector<TriState>& parts) {
  const TriState* undet = nullptr;
  const TriState* fail = nullptr;
  for (const auto& p : parts) {
    if (p.is_pass()) return p;
    if (p.is_undetermined() && undet == nullptr) undet = &p;
    if (p.is_fail() && fail == nullptr) fail = &p;
  }
  if (undet != nullptr) return *undet;
  if (fail != nullptr) return *fail;
  return TriState::fail("empty disjunction");
}

// ---------------------------------------------------------------------------
// Small numeric helpers on unsigned 64-bit integers.
// ---------------------------------------------------------------------------

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  return std::gcd(a, b);
}

inline std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a / std::gcd(a, b) * b;
}

}  // namespace beauville
