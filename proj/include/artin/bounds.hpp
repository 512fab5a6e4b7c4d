#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "artin/binomial.hpp"
#include "artin/coeff.hpp"
#include "artin/error.hpp"

namespace artin {

enum BoundFlag : unsigned {
  kBoundExact = 0,
  kBoundInexact = 1U << 0,              ///< only log10 is available
  kBoundClamped = 1U << 1,              ///< a negative intermediate was clamped at 0
  kBoundDegenerateDegree = 1U << 2,     ///< degree 0 input
  kBoundDegenerateThreshold = 1U << 3,  ///< i <= D: no positive residual threshold
  kBoundOverflow = 1U << 4,             ///< log10 left the double range
};

/**
 * Nonnegative bound. Holds the exact integer whenever it fits the bit
 * budget of the arithmetic that produced it; log10 is always present
 * (-inf for zero).
 */
class BoundValue {
 public:
  BoundValue() : BoundValue(BigInt(0)) {}
  BoundValue(long v) : BoundValue(BigInt(v)) {}  // NOLINT(google-explicit-constructor)
  explicit BoundValue(BigInt v) : exact_(std::move(v)) {
    if (*exact_ < 0) throw Error(Errc::InvalidInput, "bound values are nonnegative");
    log10_ = log10_of(*exact_);
  }

  static BoundValue magnitude(double log10, unsigned flags = 0) {
    BoundValue v;
    v.exact_.reset();
    v.log10_ = log10;
    v.flags_ = flags | kBoundInexact;
    if (!std::isfinite(log10)) v.flags_ |= kBoundOverflow;
    return v;
  }

  bool is_exact() const { return exact_.has_value(); }
  const BigInt& exact() const {
    if (!exact_) throw Error(Errc::PrecisionTooLow, "bound exceeded the exact bit budget");
    return *exact_;
  }
  double log10() const { return log10_; }
  unsigned flags() const { return flags_; }
  bool has_flag(BoundFlag f) const { return (flags_ & f) != 0; }
  BoundValue& add_flags(unsigned f) {
    flags_ |= f;
    return *this;
  }

  bool is_zero() const { return exact_ && *exact_ == 0; }

  /// Bits needed for the exact value (estimated for magnitude-only values).
  double bits() const {
    if (exact_) return static_cast<double>(mpz_sizeinbase(exact_->get_mpz_t(), 2));
    return log10_ * 3.321928094887362;
  }

  std::string decimal() const { return exact().get_str(10); }

  std::string magnitude_string() const {
    if (is_zero()) return "0";
    char buf[64];
    std::snprintf(buf, sizeof buf, "10^{%.3f}", log10_);
    return buf;
  }

  /// Decimal when exact and requested, magnitude otherwise.
  std::string to_string(bool prefer_exact = true) const {
    return prefer_exact && exact_ ? decimal() : magnitude_string();
  }

  /// Memo key: hex digits for exact values, hex float for magnitudes.
  std::string key() const {
    if (exact_) return exact_->get_str(16);
    char buf[64];
    std::snprintf(buf, sizeof buf, "~%a", log10_);
    return buf;
  }

  static double log10_of(const BigInt& v) {
    if (v == 0) return -std::numeric_limits<double>::infinity();
    long exp2 = 0;
    const double mant = mpz_get_d_2exp(&exp2, v.get_mpz_t());
    return std::log10(mant) + static_cast<double>(exp2) * 0.30102999566398120;
  }

 private:
  std::optional<BigInt> exact_;
  double log10_ = 0;
  unsigned flags_ = 0;
};

/// -1, 0, 1. Exact when both are exact, by log10 otherwise.
inline int compare(const BoundValue& a, const BoundValue& b) {
  if (a.is_exact() && b.is_exact()) {
    const int c = cmp(a.exact(), b.exact());
    return (c > 0) - (c < 0);
  }
  if (a.log10() < b.log10()) return -1;
  if (a.log10() > b.log10()) return 1;
  return 0;
}

/// Arithmetic that keeps exact integers up to `max_bits` and falls back to
/// log10 magnitudes beyond.
class BoundArithmetic {
 public:
  explicit BoundArithmetic(double max_bits = 1 << 20) : max_bits_(max_bits) {}

  double max_bits() const { return max_bits_; }

  BoundValue add(const BoundValue& a, const BoundValue& b) const {
    const unsigned flags = a.flags() | b.flags();
    if (a.is_exact() && b.is_exact()) return BoundValue(BigInt(a.exact() + b.exact())).add_flags(flags);
    if (a.is_zero()) return BoundValue(b).add_flags(flags);
    if (b.is_zero()) return BoundValue(a).add_flags(flags);
    const double hi = std::max(a.log10(), b.log10());
    const double lo = std::min(a.log10(), b.log10());
    return BoundValue::magnitude(hi + std::log10(1.0 + std::pow(10.0, lo - hi)), flags);
  }

  BoundValue mul(const BoundValue& a, const BoundValue& b) const {
    const unsigned flags = a.flags() | b.flags();
    if (a.is_zero() || b.is_zero()) return BoundValue(0).add_flags(flags & ~kBoundInexact);
    if (a.is_exact() && b.is_exact() && a.bits() + b.bits() <= max_bits_) {
      return BoundValue(BigInt(a.exact() * b.exact())).add_flags(flags);
    }
    return BoundValue::magnitude(a.log10() + b.log10(), flags);
  }

  BoundValue pow(const BoundValue& base, std::uint64_t e) const {
    if (e == 0) return BoundValue(1).add_flags(base.flags() & ~kBoundInexact);
    if (base.is_exact() && (base.exact() <= 1 || base.bits() * static_cast<double>(e) <= max_bits_)) {
      if (base.exact() <= 1) return base;
      BigInt r;
      mpz_pow_ui(r.get_mpz_t(), base.exact().get_mpz_t(), static_cast<unsigned long>(e));
      return BoundValue(r).add_flags(base.flags());
    }
    return BoundValue::magnitude(base.log10() * static_cast<double>(e), base.flags());
  }

  /// max(a - c, 0); flags kBoundClamped when the clamp fires.
  BoundValue sub_clamped(const BoundValue& a, long c) const {
    if (!a.is_exact()) return a;  // a is beyond the budget, c is negligible
    BigInt r = a.exact() - c;
    if (r < 0) return BoundValue(0).add_flags(a.flags() | kBoundClamped);
    return BoundValue(r).add_flags(a.flags());
  }

  BoundValue max(const BoundValue& a, const BoundValue& b) const {
    return compare(a, b) >= 0 ? a : b;
  }

 private:
  double max_bits_;
};

/// Degree bounds lambda_1 (generators of associated primes) and lambda_2
/// (primary components). Only their existence is known, so they are plugged in.
struct DegreeBoundFns {
  using Fn = std::function<BoundValue(int n, const BoundValue& d, const BoundArithmetic&)>;
  std::string name;
  Fn lambda1;
  Fn lambda2;
};

/// lambda(n, d) = (a d + b)^(c * k^n)
inline DegreeBoundFns::Fn power_family(long a, long b, std::uint64_t c, std::uint64_t k) {
  return [=](int n, const BoundValue& d, const BoundArithmetic& ar) {
    std::uint64_t e = c;
    for (int r = 0; r < n; ++r) {
      if (e > (std::numeric_limits<std::uint64_t>::max() / std::max<std::uint64_t>(k, 1))) {
        throw Error(Errc::InvalidInput, "lambda exponent overflows 64 bits");
      }
      e *= k;
    }
    return ar.pow(ar.add(ar.mul(BoundValue(a), d), BoundValue(b)), e);
  };
}

/// Conventional doubly exponential stand-in lambda(n, d) = (2d)^(2^n).
/// Not a proven value; replace it when sharper degree bounds are available.
inline DegreeBoundFns default_degree_bounds() {
  return {"default (2d)^(2^n)", power_family(2, 0, 1, 2), power_family(2, 0, 1, 2)};
}

/// lambda_1(n, d) = d and lambda_2 == 1.
inline DegreeBoundFns stub_degree_bounds() {
  return {"stub1 (lambda1 = d, lambda2 = 1)",
          [](int, const BoundValue& d, const BoundArithmetic&) { return d; },
          [](int, const BoundValue&, const BoundArithmetic&) { return BoundValue(1); }};
}

inline DegreeBoundFns constant_degree_bounds(long l1, long l2) {
  return {"constant (" + std::to_string(l1) + ", " + std::to_string(l2) + ")",
          [l1](int, const BoundValue&, const BoundArithmetic&) { return BoundValue(l1); },
          [l2](int, const BoundValue&, const BoundArithmetic&) { return BoundValue(l2); }};
}

struct HermannResult {
  BoundValue value;  ///< min(n,p) (n+2) (d+1)^(min(n,p)+1)
  BoundValue crude;  ///< (n+2)^2 (d+1)^(n+1)
  bool within = false;
};

/// Exponent e with rad(I)^e contained in I.
inline HermannResult hermann_exponent(int n, int p, int d, const BoundArithmetic& ar = BoundArithmetic()) {
  if (n < 1 || p < 1 || d < 0) throw Error(Errc::PreconditionViolated, "need n, p >= 1 and d >= 0");
  const int m = std::min(n, p);
  HermannResult r;
  r.value = ar.mul(BoundValue(long(m) * (n + 2)), ar.pow(BoundValue(d + 1), m + 1));
  r.crude = ar.mul(BoundValue(long(n + 2) * (n + 2)), ar.pow(BoundValue(d + 1), n + 1));
  r.within = compare(r.value, r.crude) <= 0;
  return r;
}

/// d^min(n,p) components; d = 0 is flagged and yields 1.
inline BoundValue component_count_bound(int n, int p, int d, const BoundArithmetic& ar = BoundArithmetic()) {
  if (n < 1 || p < 1 || d < 0) throw Error(Errc::PreconditionViolated, "need n, p >= 1 and d >= 0");
  if (d == 0) return BoundValue(1).add_flags(kBoundDegenerateDegree);
  return ar.pow(BoundValue(d), std::min(n, p));
}

/// n ((q-1) d)^(2^(n-1)) + d
inline BoundValue intersection_degree_bound(int n, int q, int d, const BoundArithmetic& ar = BoundArithmetic()) {
  if (n < 1 || q < 1 || d < 0) throw Error(Errc::PreconditionViolated, "need n, q >= 1 and d >= 0");
  if (n > 62) throw Error(Errc::InvalidInput, "n too large for the exponent 2^(n-1)");
  const BoundValue inner = ar.pow(BoundValue(long(q - 1) * d), std::uint64_t{1} << (n - 1));
  return ar.add(ar.mul(BoundValue(n), inner), BoundValue(d));
}

enum class BetaVariant {
  StatedMax,  ///< (n+3)^2 (d+1)^(2n+3) max_h beta'_h
  ProofSum,   ///< (n+1)(n+3)(d+1)^(n+2) * d^(n+1) components * max_h beta'_h
};

struct BoundOptions {
  double max_bits = 1 << 20;
  BetaVariant variant = BetaVariant::StatedMax;
};

/**
 * Evaluation context for the height recursion. Owns its memo table and is
 * not meant to be shared between threads; use one evaluator per thread.
 */
class BoundEvaluator {
 public:
  explicit BoundEvaluator(DegreeBoundFns fns = default_degree_bounds(), BoundOptions opts = {})
      : fns_(std::move(fns)), opts_(opts), ar_(opts.max_bits) {}

  const BoundArithmetic& arithmetic() const { return ar_; }
  const DegreeBoundFns& fns() const { return fns_; }
  const BoundOptions& options() const { return opts_; }
  std::size_t memo_size() const { return memo_.size(); }

  BoundValue lambda1(int n, const BoundValue& d) const { return fns_.lambda1(n, d, ar_); }
  BoundValue lambda2(int n, const BoundValue& d) const { return fns_.lambda2(n, d, ar_); }

  /// e' = (n+3)^2 (1 + l2 + (n+1) ((d^(n+1) - 2) l2)^(2^n))^(n+2), l2 = lambda2(n+1, d).
  /// For d^(n+1) < 2 the inner difference is clamped at 0 and flagged.
  BoundValue e_prime(int n, const BoundValue& d) const {
    check_n(n, 1);
    const BoundValue l2 = lambda2(n + 1, d);
    const BoundValue diff = ar_.sub_clamped(ar_.pow(d, n + 1), 2);
    const BoundValue tower = ar_.pow(ar_.mul(diff, l2), std::uint64_t{1} << n);
    const BoundValue inner = ar_.add(ar_.add(BoundValue(1), l2), ar_.mul(BoundValue(n + 1), tower));
    return ar_.mul(BoundValue(long(n + 3) * (n + 3)), ar_.pow(inner, n + 2));
  }

  BoundValue e_prime(int n, long d) const { return e_prime(n, BoundValue(d)); }

  /// beta^p_k(n, d, i): 2 at k = n+1, else (e'+1) beta_{k+1}(n, max(k(d-1), 1), i) + 1.
  BoundValue beta_prime(int k, int n, const BoundValue& d, int i) {
    check_n(n, 0);
    if (k < 1 || k > n + 1) throw Error(Errc::PreconditionViolated, "beta' needs 1 <= k <= n+1");
    if (k == n + 1) return BoundValue(2);
    const Key key{'p', k, n, d.key(), i};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    const BoundValue reduced = ar_.max(ar_.mul(BoundValue(k), ar_.sub_clamped(d, 1)), BoundValue(1));
    const BoundValue inner = beta(k + 1, n, reduced, i);
    const BoundValue ep = e_prime(n, d);
    const BoundValue r = ar_.add(ar_.mul(ar_.add(ep, BoundValue(1)), inner), BoundValue(1));
    memo_.emplace(key, r);
    return r;
  }

  /// beta_k(n, d, i): 2 at k = n+1, else
  /// (n+3)^2 (d+1)^(2n+3) max_{k < h <= n+1} beta^p_h(n, lambda1(n+1, d), i).
  BoundValue beta(int k, int n, const BoundValue& d, int i) {
    check_n(n, 0);
    if (k < 0 || k > n + 1) throw Error(Errc::PreconditionViolated, "beta needs 0 <= k <= n+1");
    if (k == n + 1) return BoundValue(2);
    const Key key{'b', k, n, d.key(), i};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    const BoundValue l1 = lambda1(n + 1, d);
    BoundValue best(0);
    for (int h = k + 1; h <= n + 1; ++h) best = ar_.max(best, beta_prime(h, n, l1, i));

    const BoundValue d1 = ar_.add(d, BoundValue(1));
    BoundValue factor;
    if (opts_.variant == BetaVariant::StatedMax) {
      factor = ar_.mul(BoundValue(long(n + 3) * (n + 3)), ar_.pow(d1, 2 * n + 3));
    } else {
      const BoundValue e = ar_.mul(BoundValue(long(n + 1) * (n + 3)), ar_.pow(d1, n + 2));
      const BoundValue components = ar_.pow(ar_.max(d, BoundValue(1)), n + 1);
      factor = ar_.mul(e, components);
    }
    const BoundValue r = ar_.mul(factor, best);
    memo_.emplace(key, r);
    return r;
  }

  BoundValue beta(int k, int n, long d, int i) { return beta(k, n, BoundValue(d), i); }
  BoundValue beta_prime(int k, int n, long d, int i) { return beta_prime(k, n, BoundValue(d), i); }

  /// Greenberg bound: the height recursion started at k = 0.
  BoundValue greenberg(int n, const BoundValue& d, int i) { return beta(0, n, d, i); }
  BoundValue greenberg(int n, long d, int i) { return greenberg(n, BoundValue(d), i); }

 private:
  using Key = std::tuple<char, int, int, std::string, int>;

  static void check_n(int n, int min) {
    if (n < min || n > 60) throw Error(Errc::PreconditionViolated, "n out of range");
  }

  DegreeBoundFns fns_;
  BoundOptions opts_;
  BoundArithmetic ar_;
  std::map<Key, BoundValue> memo_;
};

struct RestrictedBound {
  int max_weight = 0;     ///< D
  int jet_variables = 0;  ///< sum_j d_j
  int degree = 0;         ///< max_k max(|alpha_k|, |beta_k|)
  BoundValue q;           ///< component count bound
  BoundValue e;           ///< Hermann exponent
  BoundValue unit_term;   ///< q e i
  BoundValue jet_term;    ///< Greenberg bound of the jet system
  BoundValue a_part;      ///< max(q e i, jet_term)
  BoundValue b_part;      ///< D
  BoundValue value;       ///< a_part + b_part
  bool degenerate_threshold = false;  ///< i <= D, so the residual threshold i - D is not positive
};

/// Pointwise bound for approximate solutions with the given orders:
/// max(q e i, greenberg(sum d_j, deg, i)) + D.
inline RestrictedBound binomial_restricted_bound(const BinomialSystem& sys, const OrderVector& d, int i,
                                                 BoundEvaluator& ev) {
  if (i < 1) throw Error(Errc::PreconditionViolated, "i must be >= 1");
  const WeightsResult w = homogeneity_weights(sys, d);
  if (const auto* bad = std::get_if<Incompatible>(&w)) {
    throw Error(Errc::IncompatibleOrders, "binomial " + std::to_string(bad->binomial) +
                                              " is not homogeneous for these orders");
  }
  const auto& weights = std::get<std::vector<int>>(w);
  const auto& ar = ev.arithmetic();
  const int n = sys.n();
  const int p = static_cast<int>(sys.size());

  RestrictedBound r;
  r.max_weight = weights.empty() ? 0 : *std::max_element(weights.begin(), weights.end());
  r.jet_variables = d.sum();
  r.degree = sys.degree();
  r.q = component_count_bound(n, p, r.degree, ar);
  r.e = hermann_exponent(n, p, r.degree, ar).value;
  r.unit_term = ar.mul(ar.mul(r.q, r.e), BoundValue(i));
  r.jet_term = ev.greenberg(r.jet_variables, r.degree, i);
  r.a_part = ar.max(r.unit_term, r.jet_term);
  r.b_part = BoundValue(r.max_weight);
  r.value = ar.add(r.a_part, r.b_part);
  r.degenerate_threshold = i <= r.max_weight;
  if (r.degenerate_threshold) r.value.add_flags(kBoundDegenerateThreshold);
  return r;
}

struct GlobalBound {
  int cap = 0;  ///< orders capped at i - 1
  std::size_t vectors_examined = 0;
  std::size_t compatible_vectors = 0;
  std::optional<OrderVector> worst;  ///< order vector attaining the maximum
  std::optional<RestrictedBound> worst_bound;
  BoundValue unit_only;  ///< q e i, used when no compatible vector exists
  BoundValue value;
  double log10_log10_value = 0;  ///< growth certificate, compare with n i
  int n_times_i = 0;
};

/**
 * Components of order >= i are replaced by 0, so only orders d_j <= i - 1
 * matter. Takes the maximum restricted bound over all compatible order
 * vectors below the cap, or q e i when none exists.
 */
inline GlobalBound binomial_global_bound(const BinomialSystem& sys, int i, BoundEvaluator& ev,
                                         std::size_t max_vectors = 100000) {
  if (i < 1) throw Error(Errc::PreconditionViolated, "i must be >= 1");
  const auto& ar = ev.arithmetic();
  const int n = sys.n();
  const int p = static_cast<int>(sys.size());
  GlobalBound g;
  g.cap = i - 1;
  g.n_times_i = n * i;
  g.unit_only = ar.mul(ar.mul(component_count_bound(n, p, sys.degree(), ar),
                              hermann_exponent(n, p, sys.degree(), ar).value),
                       BoundValue(i));
  g.value = g.unit_only;

  if (g.cap >= 1) {
    double total = std::pow(static_cast<double>(g.cap), n);
    if (total > static_cast<double>(max_vectors)) {
      throw Error(Errc::BudgetExceeded, "order-vector enumeration of size " + std::to_string(total));
    }
    std::vector<int> d(n, 1);
    for (;;) {
      ++g.vectors_examined;
      const OrderVector ov(d);
      if (std::holds_alternative<std::vector<int>>(homogeneity_weights(sys, ov))) {
        ++g.compatible_vectors;
        RestrictedBound rb = binomial_restricted_bound(sys, ov, i, ev);
        if (!g.worst || compare(rb.value, g.worst_bound->value) > 0) {
          g.worst = ov;
          g.worst_bound = rb;
        }
      }
      int pos = n - 1;
      while (pos >= 0 && d[pos] == g.cap) d[pos--] = 1;
      if (pos < 0) break;
      ++d[pos];
    }
    if (g.worst_bound) g.value = ar.max(g.unit_only, g.worst_bound->value);
  }
  g.log10_log10_value = std::log10(std::max(g.value.log10(), 1e-300));
  return g;
}

}  // namespace artin
