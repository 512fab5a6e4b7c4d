#pragma once

#include <vector>

#include "artin/coeff.hpp"
#include "artin/error.hpp"
#include "artin/series.hpp"

namespace artin {

struct Regularization {
  Coeff shear;                       ///< c in t -> t + c z
  std::vector<Series2> transformed;  ///< members after the substitution
};

/// s(t + c z, z). Each monomial maps to a homogeneous form of the same
/// degree, so the truncation is preserved exactly.
inline Series2 shear_t(const Series2& s, const Coeff& c) {
  if (sgn(c) == 0) return s;
  Series2 out(s.precision());
  for (const auto& [e, coeff] : s.terms()) {
    const int a = e[0];
    const int b = e[1];
    for (int r = 0; r <= a; ++r) {
      Coeff term = coeff * Coeff(binomial_coefficient(a, r)) * coeff_pow(c, a - r);
      out.add_term({r, b + a - r}, term);
    }
  }
  return out;
}

/// Value of the leading form of s at (t, z) = (c, 1); nonzero exactly when
/// the shear by c makes s z-regular of order ord(s).
inline Coeff leading_form_at(const Series2& s, const Coeff& c) {
  const Order o = s.order();
  Coeff value = 0;
  for (const auto& [e, coeff] : s.terms()) {
    if (e[0] + e[1] == o.value()) value += coeff * coeff_pow(c, e[0]);
  }
  return value;
}

/**
 * Finds the smallest c = 0, 1, 2, ... such that every member becomes
 * z-regular of order equal to its total order after t -> t + c z. A nonzero
 * binary form of degree m vanishes at (c, 1) for at most m values of c, so
 * the scan stops after sum(ord) + 1 candidates.
 */
inline Regularization z_regularize(const std::vector<Series2>& family) {
  long limit = 0;
  for (const auto& s : family) {
    if (s.is_zero()) {
      throw Error(Errc::PrecisionExhausted,
                  "series vanishes below precision " + std::to_string(s.precision()));
    }
    limit += s.order().value();
  }
  for (long candidate = 0; candidate <= limit; ++candidate) {
    const Coeff c(candidate);
    bool ok = true;
    for (const auto& s : family) {
      if (sgn(leading_form_at(s, c)) == 0) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    Regularization result{c, {}};
    result.transformed.reserve(family.size());
    for (const auto& s : family) result.transformed.push_back(shear_t(s, c));
    return result;
  }
  throw Error(Errc::PrecisionExhausted, "no regularizing shear found");  // unreachable over Q
}

}  // namespace artin
