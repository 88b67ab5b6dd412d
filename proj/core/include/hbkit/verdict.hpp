#ifndef HBKIT_VERDICT_HPP
#define HBKIT_VERDICT_HPP

#include <optional>
#include <string>
#include <utility>

#include "hbkit/symcalc/scalar.hpp"

namespace hbkit {

/// The first coefficient that failed to vanish, and where it lives.
struct Witness {
  std::string where;
  symcalc::Scalar expr;
};

struct Verdict {
  bool passed = true;
  std::optional<Witness> witness;

  static Verdict pass() { return {}; }
  static Verdict fail(std::string where, symcalc::Scalar expr) {
    return {false, Witness{std::move(where), std::move(expr)}};
  }
  /// A failure that is not an expression that should vanish.
  static Verdict fail(std::string where) { return {false, Witness{std::move(where), {}}}; }

  explicit operator bool() const { return passed; }

  /// Keeps the first failure.
  Verdict& operator&=(const Verdict& other) {
    if (passed && !other.passed) *this = other;
    return *this;
  }
};

inline Verdict check_zero(const symcalc::Scalar& s, std::string where) {
  return s.is_zero() ? Verdict::pass() : Verdict::fail(std::move(where), s);
}

/// Prefixes the witness location with a context label.
inline Verdict within(std::string context, Verdict v) {
  if (v.witness) v.witness->where = context + (v.witness->where.empty() ? "" : ": " + v.witness->where);
  return v;
}

}  // namespace hbkit

#endif  // HBKIT_VERDICT_HPP
