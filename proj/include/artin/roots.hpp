#pragma once

#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "artin/coeff.hpp"
#include "artin/error.hpp"
#include "artin/series.hpp"

namespace artin {

/// Homogeneous form of degree m in (t, z): coeffs[a] multiplies t^a z^(m-a).
struct BinaryForm {
  int degree = 0;
  std::vector<Coeff> coeffs;

  static BinaryForm of(const Series2& s, int degree) {
    BinaryForm f{degree, std::vector<Coeff>(degree + 1)};
    for (const auto& [e, c] : s.terms()) {
      if (e[0] + e[1] == degree) f.coeffs[e[0]] = c;
    }
    return f;
  }

  bool is_zero() const {
    for (const auto& c : coeffs) {
      if (sgn(c) != 0) return false;
    }
    return true;
  }

  Series2 to_series(int precision) const {
    Series2 s(precision);
    for (int a = 0; a <= degree; ++a) s.add_term({a, degree - a}, coeffs[a]);
    return s;
  }

  friend BinaryForm operator*(const BinaryForm& x, const BinaryForm& y) {
    BinaryForm out{x.degree + y.degree, std::vector<Coeff>(x.degree + y.degree + 1)};
    for (int a = 0; a <= x.degree; ++a) {
      if (sgn(x.coeffs[a]) == 0) continue;
      for (int b = 0; b <= y.degree; ++b) out.coeffs[a + b] += x.coeffs[a] * y.coeffs[b];
    }
    return out;
  }

  bool operator==(const BinaryForm&) const = default;
};

inline BinaryForm pow(const BinaryForm& f, int e) {
  BinaryForm r{0, {Coeff(1)}};
  for (int k = 0; k < e; ++k) r = r * f;
  return r;
}

/// A / B when B divides A in k[t, z]; works on the dehomogenizations at z = 1.
inline std::optional<BinaryForm> exact_divide(const BinaryForm& num, const BinaryForm& den) {
  const int qdeg = num.degree - den.degree;
  if (qdeg < 0) return std::nullopt;
  int top = den.degree;
  while (top >= 0 && sgn(den.coeffs[top]) == 0) --top;
  if (top < 0) return std::nullopt;

  std::vector<Coeff> rem = num.coeffs;
  BinaryForm quot{qdeg, std::vector<Coeff>(qdeg + 1)};
  for (int a = num.degree; a >= top; --a) {
    if (sgn(rem[a]) == 0) continue;
    const int shift = a - top;
    if (shift > qdeg) return std::nullopt;
    const Coeff factor = rem[a] / den.coeffs[top];
    quot.coeffs[shift] = factor;
    for (int b = 0; b <= top; ++b) rem[shift + b] -= factor * den.coeffs[b];
  }
  for (const auto& c : rem) {
    if (sgn(c) != 0) return std::nullopt;
  }
  return quot;
}

enum class RootObstruction {
  OrderNotDivisible,             ///< no root over any extension
  LeadingFormNotPower,           ///< no root over any extension
  LeadingCoefficientNotRational, ///< a root exists over an extension of Q, not over Q
  LiftingObstructed,             ///< no root over any extension
};

inline std::string obstruction_name(RootObstruction r) {
  switch (r) {
    case RootObstruction::OrderNotDivisible: return "OrderNotDivisible";
    case RootObstruction::LeadingFormNotPower: return "LeadingFormNotPower";
    case RootObstruction::LeadingCoefficientNotRational: return "LeadingCoefficientNotRational";
    case RootObstruction::LiftingObstructed: return "LiftingObstructed";
  }
  return "Unknown";
}

struct NoRoot {
  RootObstruction reason;
  int degree = 0;  ///< total degree where the obstruction appeared
  bool obstructed_over_q_only() const { return reason == RootObstruction::LeadingCoefficientNotRational; }
};

using RootResult = std::variant<Series2, NoRoot>;

namespace detail {

/// q-th root of a binary form over Q, normalized so that the coefficient of
/// its term with the largest z-exponent is positive.
inline std::variant<BinaryForm, NoRoot> form_root(const BinaryForm& form, int q) {
  int lo = 0;
  while (sgn(form.coeffs[lo]) == 0) ++lo;
  int hi = form.degree;
  while (sgn(form.coeffs[hi]) == 0) --hi;
  if (lo % q != 0 || (form.degree - hi) % q != 0 || (hi - lo) % q != 0) {
    return NoRoot{RootObstruction::LeadingFormNotPower, form.degree};
  }
  // f(t) = P(t) / c0 with f(0) = 1; g = f^(1/q) by the power recurrence
  // g_k = (1/k) sum_{j=1..k} ((1/q + 1) j - k) f_j g_{k-j}.
  const Coeff c0 = form.coeffs[lo];
  const int span = hi - lo;
  std::vector<Coeff> f(span + 1);
  for (int a = 0; a <= span; ++a) f[a] = form.coeffs[lo + a] / c0;
  const int gdeg = span / q;
  const Coeff alpha_plus_one = Coeff(1, q) + 1;
  std::vector<Coeff> g(gdeg + 1);
  g[0] = 1;
  for (int k = 1; k <= gdeg; ++k) {
    Coeff acc = 0;
    for (int j = 1; j <= k; ++j) acc += (alpha_plus_one * j - k) * f[j] * g[k - j];
    g[k] = acc / k;
  }
  const BinaryForm gf{gdeg, g};
  if (!(pow(gf, q) == BinaryForm{span, f})) return NoRoot{RootObstruction::LeadingFormNotPower, form.degree};

  const auto r = rational_root(c0, static_cast<unsigned long>(q));
  if (!r) return NoRoot{RootObstruction::LeadingCoefficientNotRational, form.degree};

  const int m = form.degree / q;
  BinaryForm root{m, std::vector<Coeff>(m + 1)};
  for (int k = 0; k <= gdeg; ++k) root.coeffs[lo / q + k] = *r * g[k];
  return root;
}

}  // namespace detail

/**
 * v with v^q = s, lifted one homogeneous degree at a time:
 *   v_{m+r} = [s - (v_m + ... + v_{m+r-1})^q]_{o+r} / (q v_m^(q-1)),
 * each division exact in k[t, z]. The root is known below total degree
 * N - ord(s) (q-1)/q.
 */
inline RootResult qth_root(const Series2& s, int q) {
  if (q < 2) throw Error(Errc::PreconditionViolated, "q must be >= 2");
  if (s.is_zero()) throw Error(Errc::PreconditionViolated, "cannot take a root of zero");
  const int prec = s.precision();
  const int o = s.order().value();
  if (o % q != 0) return NoRoot{RootObstruction::OrderNotDivisible, o};
  const int m = o / q;
  const int root_prec = prec - o + m;

  auto lead = detail::form_root(BinaryForm::of(s, o), q);
  if (auto* fail = std::get_if<NoRoot>(&lead)) return *fail;
  const BinaryForm& vm = std::get<BinaryForm>(lead);
  BinaryForm denom = pow(vm, q - 1);
  for (auto& c : denom.coeffs) c *= q;

  Series2 v = vm.to_series(root_prec);
  for (int r = 1; m + r < root_prec; ++r) {
    Series2 vq(prec);
    for (const auto& [e, c] : v.terms()) vq.add_term(e, c);
    const Series2 err = s - pow(vq, q);
    const BinaryForm target = BinaryForm::of(err, o + r);
    if (target.is_zero()) continue;
    auto next = exact_divide(target, denom);
    if (!next) return NoRoot{RootObstruction::LiftingObstructed, o + r};
    v += next->to_series(root_prec);
  }
  return v;
}

inline std::pair<Series2, Series2> coprime_pair(const Series2& v, int p, int q) {
  if (p < 1 || q < 1) throw Error(Errc::PreconditionViolated, "p and q must be positive");
  if (std::gcd(p, q) != 1) {
    throw Error(Errc::NotCoprime, std::to_string(p) + " and " + std::to_string(q) + " share a factor");
  }
  return {pow(v, static_cast<unsigned long>(q)), pow(v, static_cast<unsigned long>(p))};
}

/// ord(x^p - u^q)
inline Order power_distance(const Series2& x, const Series2& u, int p, int q) {
  if (p < 1 || q < 1) throw Error(Errc::PreconditionViolated, "p and q must be positive");
  return (pow(x, static_cast<unsigned long>(p)) - pow(u, static_cast<unsigned long>(q))).order();
}

}  // namespace artin
