#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "artin/error.hpp"

namespace artin {

/// Exact rational coefficient. mpq_class keeps values canonical (lowest
/// terms, positive denominator) after every arithmetic operation.
using Coeff = mpq_class;
using BigInt = mpz_class;

/// Parses "n" or "n/d". Rejects zero denominators and junk.
inline Coeff parse_coeff(const std::string& text) {
  if (text.empty()) throw Error(Errc::InvalidInput, "empty coefficient string");
  Coeff value;
  if (value.set_str(text, 10) != 0) {
    throw Error(Errc::InvalidInput, "malformed coefficient '" + text + "'");
  }
  if (value.get_den() == 0) {
    throw Error(Errc::InvalidInput, "zero denominator in '" + text + "'");
  }
  value.canonicalize();
  return value;
}

/// "n" when the denominator is 1, "n/d" otherwise.
inline std::string format_coeff(const Coeff& c) { return c.get_str(10); }

/// Exact integer q-th root, or nullopt when `value` is not a perfect q-th power.
inline std::optional<BigInt> exact_int_root(const BigInt& value, unsigned long q) {
  if (q == 0) return std::nullopt;
  if (value < 0) {
    if (q % 2 == 0) return std::nullopt;
    auto r = exact_int_root(BigInt(-value), q);
    if (!r) return std::nullopt;
    return BigInt(-*r);
  }
  BigInt root;
  if (mpz_root(root.get_mpz_t(), value.get_mpz_t(), q) == 0) return std::nullopt;
  return root;
}

/// Rational q-th root when one exists in Q. For even q the positive root is returned.
inline std::optional<Coeff> rational_root(const Coeff& value, unsigned long q) {
  auto num = exact_int_root(value.get_num(), q);
  if (!num) return std::nullopt;
  auto den = exact_int_root(value.get_den(), q);
  if (!den) return std::nullopt;
  Coeff r(*num, *den);
  r.canonicalize();
  return r;
}

inline Coeff coeff_pow(const Coeff& base, unsigned long e) {
  Coeff result;
  mpz_pow_ui(result.get_num_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(result.get_den_mpz_t(), base.get_den_mpz_t(), e);
  result.canonicalize();
  return result;
}

inline BigInt binomial_coefficient(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace artin
