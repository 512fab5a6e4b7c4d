#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "artin/coeff.hpp"
#include "artin/error.hpp"
#include "artin/order.hpp"
#include "artin/series.hpp"

namespace artin {

/// s = unit * (z^degree + coeffs[degree-1] z^(degree-1) + ... + coeffs[0]).
struct WeierstrassForm {
  Series2 unit;
  int degree = 0;
  std::vector<Series1> coeffs;  ///< a_0 .. a_{d-1}, each in (t)
  int certified_prec = 0;       ///< reassembly holds below this total degree
};

struct DivisionResult {
  Series2 quotient;
  Series2 remainder;  ///< z-degree < d in every term
  int quotient_precision = 0;
  int remainder_precision = 0;
  long iterations = 0;
};

/// Least e with z^e present in s(0, z), or AtLeast(precision).
inline Order z_order(const Series2& s) {
  // Terms are keyed (e_t, e_z) in lexicographic order, so t-free terms come first.
  const auto& terms = s.terms();
  if (!terms.empty() && terms.begin()->first[0] == 0) {
    return Order::exactly(terms.begin()->first[1]);
  }
  return Order::at_least(s.precision());
}

/**
 * Weierstrass division F = quotient * Q + remainder by the explicit
 * reduction: repeatedly take the smallest monomial M of the running
 * remainder divisible by z^d (total degree first, larger z-exponent on
 * ties) and subtract (M / (q_d z^d)) * Q, where q_d is the z^d coefficient
 * of Q(0, z). Stops when no such monomial of total degree < N remains.
 *
 * When z_order(Q) == ord(Q) the selected monomials strictly increase in
 * that order and the outputs equal the true division truncated to
 * (N - d, N). Otherwise the identity F = CQ + R still holds modulo degree N.
 */
inline DivisionResult divide(const Series2& f, const Series2& q) {
  const int prec = std::min(f.precision(), q.precision());
  const Order zo = z_order(q.truncated(prec));
  if (!zo.is_exact()) {
    throw Error(Errc::NotZRegular, "divisor vanishes on the z-axis below precision " +
                                       std::to_string(prec));
  }
  const int d = zo.value();
  const Coeff lead = q.coefficient({0, d});

  DivisionResult result{Series2(prec - d), f.truncated(prec), prec - d, prec, 0};
  const Series2 divisor = q.truncated(prec);

  auto before = [](const Series2::Exponent& a, const Series2::Exponent& b) {
    const int da = a[0] + a[1];
    const int db = b[0] + b[1];
    if (da != db) return da < db;
    return a[1] > b[1];
  };

  for (;;) {
    std::optional<Series2::Exponent> pick;
    for (const auto& [e, c] : result.remainder.terms()) {
      if (e[1] >= d && (!pick || before(e, *pick))) pick = e;
    }
    if (!pick) break;
    const Coeff factor = result.remainder.coefficient(*pick) / lead;
    const Series2::Exponent shift{(*pick)[0], (*pick)[1] - d};
    result.quotient.add_term(shift, factor);
    result.remainder -= Series2::monomial(prec, shift, factor) * divisor;
    ++result.iterations;
  }
  return result;
}

namespace detail {

inline WeierstrassForm prepare_impl(const Series2& s, bool sharp_coeffs) {
  const Order zo = z_order(s);
  if (!zo.is_exact()) {
    throw Error(Errc::NotZRegular,
                "series vanishes on the z-axis below precision " + std::to_string(s.precision()));
  }
  const int d = zo.value();
  const int prec = s.precision();
  if (d == 0) return WeierstrassForm{s, 0, {}, prec};

  const DivisionResult div = divide(Series2::monomial(prec, {0, d}), s);
  WeierstrassForm form{invert_unit(div.quotient), d, {}, prec - d};
  for (int j = 0; j < d; ++j) {
    Series1 a = -z_coefficient(div.remainder, j);
    form.coeffs.push_back(sharp_coeffs ? a.truncated(prec - j) : a.truncated(prec - d));
  }
  return form;
}

}  // namespace detail

/// Weierstrass preparation via divide(z^d, s) = (C, R'): unit = C^-1 and
/// a_j = -[z^j] R'. Everything is certified below total degree N - d.
inline WeierstrassForm prepare(const Series2& s) { return detail::prepare_impl(s, false); }

/// z^d + a_{d-1} z^{d-1} + ... + a_0 as a series at the given precision.
inline Series2 polynomial_part(const WeierstrassForm& form, int precision) {
  Series2 p = Series2::monomial(precision, {0, form.degree});
  for (int j = 0; j < form.degree; ++j) {
    for (const auto& [e, c] : form.coeffs[j].terms()) p.add_term({e[0], j}, c);
  }
  return p;
}

inline Series2 reassemble(const WeierstrassForm& form) {
  return form.unit.truncated(form.certified_prec) *
         polynomial_part(form, form.certified_prec);
}

struct CoefficientCheck {
  int index = 0;
  Order difference = Order::at_least(0);
  int required = 0;
  bool vacuous = false;
  bool ok = false;
};

struct StabilityReport {
  int degree_p = 0;
  int degree_q = 0;
  int order_p = 0;
  bool degrees_equal = false;
  Order unit_difference = Order::at_least(0);
  int unit_required = 0;
  bool unit_ok = false;
  std::vector<CoefficientCheck> coefficients;

  bool all_ok() const {
    return degrees_equal && unit_ok &&
           std::all_of(coefficients.begin(), coefficients.end(),
                       [](const CoefficientCheck& c) { return c.ok; });
  }
};

/**
 * Prepares P and Q and checks the stability conclusions for P - Q in
 * (t,z)^i: equal degrees, ord(u - v) >= i - d and
 * ord(a_j - b_j) >= i - d + ord(P) - j (nonpositive bounds are vacuous).
 * Coefficients are compared at their sharp precision N - j.
 */
inline StabilityReport stability_check(const Series2& p, const Series2& q, int i) {
  const int prec = std::min(p.precision(), q.precision());
  const Series2 pt = p.truncated(prec);
  const Series2 qt = q.truncated(prec);
  const Order dp = z_order(pt);
  const Order dq = z_order(qt);
  if (!dp.is_exact() || !dq.is_exact()) throw Error(Errc::NotZRegular, "inputs must be z-regular");
  if (i <= dp.value()) {
    throw Error(Errc::PreconditionViolated,
                "i = " + std::to_string(i) + " must exceed d = " + std::to_string(dp.value()));
  }
  if (!(pt - qt).order().reaches(i)) {
    throw Error(Errc::PreconditionViolated, "P - Q is not certified in (t,z)^" + std::to_string(i));
  }

  const WeierstrassForm fp = detail::prepare_impl(pt, true);
  const WeierstrassForm fq = detail::prepare_impl(qt, true);
  StabilityReport report;
  report.degree_p = fp.degree;
  report.degree_q = fq.degree;
  report.order_p = pt.order().value();
  report.degrees_equal = fp.degree == fq.degree;
  report.unit_required = i - fp.degree;
  report.unit_difference = (fp.unit - fq.unit).order();
  report.unit_ok = report.unit_required <= 0 || report.unit_difference.reaches(report.unit_required);

  const int common = std::min(fp.degree, fq.degree);
  for (int j = 0; j < fp.degree; ++j) {
    CoefficientCheck check;
    check.index = j;
    check.required = i - fp.degree + report.order_p - j;
    check.vacuous = check.required <= 0;
    if (j < common) {
      check.difference = (fp.coeffs[j] - fq.coeffs[j]).order();
      check.ok = check.vacuous || check.difference.reaches(check.required);
    }
    report.coefficients.push_back(check);
  }
  return report;
}

}  // namespace artin
