#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "artin/coeff.hpp"
#include "artin/error.hpp"
#include "artin/order.hpp"

namespace artin {

/**
 * Truncated formal power series in `NumVars` variables over Q.
 *
 * A value stores the class of a series modulo the ideal generated by all
 * monomials of total degree >= precision. Index 0 is t, index 1 is z.
 * Terms with zero coefficient are never stored, and every stored exponent
 * has total degree < precision.
 */
template <std::size_t NumVars>
class Series {
  static_assert(NumVars >= 1 && NumVars <= 2, "one or two base variables");

 public:
  using Exponent = std::array<int, NumVars>;
  using TermMap = std::map<Exponent, Coeff>;

  explicit Series(int precision) : precision_(precision) {
    if (precision <= 0) throw Error(Errc::InvalidInput, "series precision must be positive");
  }

  Series(int precision, std::initializer_list<std::pair<Exponent, Coeff>> terms)
      : Series(precision) {
    for (const auto& [e, c] : terms) add_term(e, c);
  }

  static Series constant(int precision, const Coeff& c) {
    Series s(precision);
    s.add_term(Exponent{}, c);
    return s;
  }

  static Series monomial(int precision, const Exponent& e, const Coeff& c = 1) {
    Series s(precision);
    s.add_term(e, c);
    return s;
  }

  /// The base variable with the given index (0 = t, 1 = z).
  static Series variable(int precision, std::size_t index) {
    Exponent e{};
    e.at(index) = 1;
    return monomial(precision, e);
  }

  static int degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

  int precision() const { return precision_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Coeff coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Coeff(0) : it->second;
  }

  Coeff constant_term() const { return coefficient(Exponent{}); }

  /// Adds c * x^e, dropping it when it falls outside the truncation.
  void add_term(const Exponent& e, const Coeff& c) {
    for (int v : e) {
      if (v < 0) throw Error(Errc::InvalidInput, "negative exponent");
    }
    if (sgn(c) == 0 || degree(e) >= precision_) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  /// Minimal total degree of a stored term, or AtLeast(precision).
  Order order() const {
    if (terms_.empty()) return Order::at_least(precision_);
    int best = precision_;
    for (const auto& [e, c] : terms_) best = std::min(best, degree(e));
    return Order::exactly(best);
  }

  /// Homogeneous component of the given total degree.
  Series homogeneous_part(int deg) const {
    Series out(precision_);
    for (const auto& [e, c] : terms_) {
      if (degree(e) == deg) out.terms_.emplace(e, c);
    }
    return out;
  }

  /// Reduction to a (not larger) precision.
  Series truncated(int precision) const {
    Series out(std::min(precision, precision_));
    for (const auto& [e, c] : terms_) {
      if (degree(e) < out.precision_) out.terms_.emplace(e, c);
    }
    return out;
  }

  /// True when both agree on every monomial of total degree < bound.
  friend bool agree_below(const Series& a, const Series& b, int bound) {
    return a.truncated(bound).terms_ == b.truncated(bound).terms_;
  }

  bool operator==(const Series& other) const {
    return precision_ == other.precision_ && terms_ == other.terms_;
  }

  Series operator-() const {
    Series out(*this);
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
  }

  friend Series operator+(const Series& a, const Series& b) {
    Series out = a.truncated(std::min(a.precision_, b.precision_));
    for (const auto& [e, c] : b.terms_) out.add_term(e, c);
    return out;
  }

  friend Series operator-(const Series& a, const Series& b) { return a + (-b); }

  friend Series operator*(const Series& a, const Series& b) {
    Series out(std::min(a.precision_, b.precision_));
    for (const auto& [ea, ca] : a.terms_) {
      const int da = degree(ea);
      if (da >= out.precision_) continue;
      for (const auto& [eb, cb] : b.terms_) {
        if (da + degree(eb) >= out.precision_) continue;
        Exponent e;
        for (std::size_t k = 0; k < NumVars; ++k) e[k] = ea[k] + eb[k];
        out.add_term(e, ca * cb);
      }
    }
    return out;
  }

  friend Series operator*(const Coeff& k, const Series& s) {
    if (sgn(k) == 0) return Series(s.precision_);
    Series out(s);
    for (auto& [e, c] : out.terms_) c *= k;
    return out;
  }

  Series& operator+=(const Series& b) { return *this = *this + b; }
  Series& operator-=(const Series& b) { return *this = *this - b; }
  Series& operator*=(const Series& b) { return *this = *this * b; }

 private:
  int precision_;
  TermMap terms_;
};

using Series1 = Series<1>;
using Series2 = Series<2>;

template <std::size_t N>
Series<N> add(const Series<N>& a, const Series<N>& b) {
  return a + b;
}

template <std::size_t N>
Series<N> mul(const Series<N>& a, const Series<N>& b) {
  return a * b;
}

template <std::size_t N>
Order ord(const Series<N>& s) {
  return s.order();
}

template <std::size_t N>
Series<N> pow(const Series<N>& base, unsigned long exponent) {
  Series<N> result = Series<N>::constant(base.precision(), 1);
  Series<N> square = base;
  while (exponent > 0) {
    if (exponent & 1UL) result *= square;
    exponent >>= 1;
    if (exponent > 0) square *= square;
  }
  return result;
}

/**
 * Inverse of a unit. Coefficients are solved monomial by monomial in graded
 * order: r[m] = -(1/c0) * sum over nonconstant terms s[e] with e | m of
 * s[e] * r[m - e].
 */
template <std::size_t N>
Series<N> invert_unit(const Series<N>& s) {
  using Exponent = typename Series<N>::Exponent;
  const Coeff c0 = s.constant_term();
  if (sgn(c0) == 0) throw Error(Errc::NotAUnit, "constant term is zero");
  const int prec = s.precision();

  std::vector<std::vector<Exponent>> by_degree(prec);
  if constexpr (N == 1) {
    for (int a = 0; a < prec; ++a) by_degree[a].push_back({a});
  } else {
    for (int deg = 0; deg < prec; ++deg) {
      for (int a = deg; a >= 0; --a) by_degree[deg].push_back({a, deg - a});
    }
  }

  const Coeff inv0 = 1 / c0;
  std::map<Exponent, Coeff> r;
  r[Exponent{}] = inv0;
  for (int deg = 1; deg < prec; ++deg) {
    for (const Exponent& m : by_degree[deg]) {
      Coeff acc = 0;
      for (const auto& [e, c] : s.terms()) {
        if (Series<N>::degree(e) == 0) continue;
        Exponent rest;
        bool divides = true;
        for (std::size_t k = 0; k < N; ++k) {
          rest[k] = m[k] - e[k];
          if (rest[k] < 0) divides = false;
        }
        if (!divides) continue;
        auto it = r.find(rest);
        if (it != r.end()) acc += c * it->second;
      }
      if (sgn(acc) != 0) r[m] = -inv0 * acc;
    }
  }
  Series<N> out(prec);
  for (const auto& [e, c] : r) out.add_term(e, c);
  return out;
}

/// Embeds a series in t into k[[t,z]] at the given precision.
inline Series2 lift_to_tz(const Series1& s, int precision) {
  Series2 out(std::min(precision, s.precision()));
  for (const auto& [e, c] : s.terms()) out.add_term({e[0], 0}, c);
  return out;
}

/// Coefficient of z^j as a series in t; valid for t-degrees < precision - j.
inline Series1 z_coefficient(const Series2& s, int j) {
  Series1 out(std::max(1, s.precision() - j));
  for (const auto& [e, c] : s.terms()) {
    if (e[1] == j) out.add_term({e[0]}, c);
  }
  return out;
}

/// The univariate series s(0, z), indexed by the z-exponent.
inline Series1 restrict_to_z_axis(const Series2& s) {
  Series1 out(s.precision());
  for (const auto& [e, c] : s.terms()) {
    if (e[0] == 0) out.add_term({e[1]}, c);
  }
  return out;
}

}  // namespace artin
