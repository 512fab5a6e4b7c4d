#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <variant>
#include <vector>

#include "artin/coeff.hpp"
#include "artin/error.hpp"
#include "artin/multipoly.hpp"
#include "artin/series.hpp"

namespace artin {

/// a * X^alpha + b * X^beta with scalar a, b.
class Binomial {
 public:
  Binomial(Coeff a, std::vector<int> alpha, Coeff b, std::vector<int> beta)
      : a_(std::move(a)), alpha_(std::move(alpha)), b_(std::move(b)), beta_(std::move(beta)) {
    if (sgn(a_) == 0 || sgn(b_) == 0) throw Error(Errc::InvalidInput, "binomial coefficients must be nonzero");
    if (alpha_.size() != beta_.size()) throw Error(Errc::InvalidInput, "exponent vectors differ in length");
    if (alpha_ == beta_) throw Error(Errc::InvalidInput, "alpha and beta must differ");
    auto negative = [](int v) { return v < 0; };
    if (std::any_of(alpha_.begin(), alpha_.end(), negative) ||
        std::any_of(beta_.begin(), beta_.end(), negative)) {
      throw Error(Errc::InvalidInput, "negative exponent in binomial");
    }
  }

  const Coeff& a() const { return a_; }
  const Coeff& b() const { return b_; }
  const std::vector<int>& alpha() const { return alpha_; }
  const std::vector<int>& beta() const { return beta_; }

  int alpha_degree() const { return std::accumulate(alpha_.begin(), alpha_.end(), 0); }
  int beta_degree() const { return std::accumulate(beta_.begin(), beta_.end(), 0); }
  int degree() const { return std::max(alpha_degree(), beta_degree()); }

 private:
  Coeff a_;
  std::vector<int> alpha_;
  Coeff b_;
  std::vector<int> beta_;
};

class BinomialSystem {
 public:
  BinomialSystem(int n, std::vector<Binomial> binomials) : n_(n), binomials_(std::move(binomials)) {
    if (n_ <= 0) throw Error(Errc::InvalidInput, "need at least one variable");
    for (const auto& f : binomials_) {
      if (static_cast<int>(f.alpha().size()) != n_) {
        throw Error(Errc::InvalidInput, "exponent vector length differs from n");
      }
    }
  }

  int n() const { return n_; }
  std::size_t size() const { return binomials_.size(); }
  const std::vector<Binomial>& binomials() const { return binomials_; }
  const Binomial& operator[](std::size_t k) const { return binomials_.at(k); }

  /// max_k max(|alpha_k|, |beta_k|)
  int degree() const {
    int d = 0;
    for (const auto& f : binomials_) d = std::max(d, f.degree());
    return d;
  }

  std::vector<std::string> variable_names() const {
    std::vector<std::string> names;
    for (int j = 1; j <= n_; ++j) names.push_back("X_" + std::to_string(j));
    return names;
  }

  MultiPoly polynomial(std::size_t k) const {
    const Binomial& f = binomials_.at(k);
    MultiPoly p(variable_names());
    p.add_term(f.alpha(), f.a());
    p.add_term(f.beta(), f.b());
    return p;
  }

 private:
  int n_;
  std::vector<Binomial> binomials_;
};

/// Orders d_1..d_n of the approximate solution components, all >= 1.
class OrderVector {
 public:
  explicit OrderVector(std::vector<int> d) : d_(std::move(d)) {
    if (d_.empty()) throw Error(Errc::InvalidInput, "empty order vector");
    for (int v : d_) {
      if (v < 1) throw Error(Errc::InvalidInput, "orders must be >= 1");
    }
  }

  const std::vector<int>& values() const { return d_; }
  std::size_t size() const { return d_.size(); }
  int operator[](std::size_t j) const { return d_.at(j); }
  int sum() const { return std::accumulate(d_.begin(), d_.end(), 0); }
  bool operator==(const OrderVector&) const = default;

 private:
  std::vector<int> d_;
};

struct Incompatible {
  std::size_t binomial = 0;  ///< 1-based index of the first offending binomial
  int alpha_weight = 0;
  int beta_weight = 0;
};

using WeightsResult = std::variant<std::vector<int>, Incompatible>;

inline int weighted_degree(const std::vector<int>& exponents, const OrderVector& d) {
  int sum = 0;
  for (std::size_t j = 0; j < exponents.size(); ++j) sum += exponents[j] * d[j];
  return sum;
}

/// D_k = sum_j alpha_kj d_j when it equals sum_j beta_kj d_j for every k.
inline WeightsResult homogeneity_weights(const BinomialSystem& sys, const OrderVector& d) {
  if (static_cast<int>(d.size()) != sys.n()) {
    throw Error(Errc::ArityMismatch, "order vector length differs from n");
  }
  std::vector<int> weights;
  for (std::size_t k = 0; k < sys.size(); ++k) {
    const int wa = weighted_degree(sys[k].alpha(), d);
    const int wb = weighted_degree(sys[k].beta(), d);
    if (wa != wb) return Incompatible{k + 1, wa, wb};
    weights.push_back(wa);
  }
  return weights;
}

/// Jet polynomials P^(k)_0 .. P^(k)_{D_k - 1} of one binomial.
struct JetFamily {
  std::size_t binomial = 0;  ///< 1-based
  int weight = 0;            ///< D_k
  std::vector<MultiPoly> polys;
};

struct JetSystem {
  std::vector<std::string> variables;  ///< x_j_l, ordered by (j, l)
  std::vector<int> orders;
  std::vector<int> weights;
  std::vector<JetFamily> families;

  int max_weight() const {
    return weights.empty() ? 0 : *std::max_element(weights.begin(), weights.end());
  }

  /// Union of all families, in family order.
  std::vector<MultiPoly> combined() const {
    std::vector<MultiPoly> all;
    for (const auto& fam : families) all.insert(all.end(), fam.polys.begin(), fam.polys.end());
    return all;
  }
};

inline std::string jet_variable_name(int j, int l) {
  return "x_" + std::to_string(j) + "_" + std::to_string(l);
}

inline std::vector<std::string> jet_variable_names(const OrderVector& d) {
  std::vector<std::string> names;
  for (std::size_t j = 0; j < d.size(); ++j) {
    for (int l = 0; l < d[j]; ++l) names.push_back(jet_variable_name(static_cast<int>(j) + 1, l));
  }
  return names;
}

namespace detail {

/// Polynomial in z with MultiPoly coefficients, index = power of z.
using ZPoly = std::vector<MultiPoly>;

inline ZPoly zpoly_mul(const ZPoly& a, const ZPoly& b, const std::vector<std::string>& vars) {
  ZPoly out(a.size() + b.size() - 1, MultiPoly(vars));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (!b[j].is_zero()) out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

inline ZPoly zpoly_pow(const ZPoly& base, int e, const std::vector<std::string>& vars) {
  ZPoly result{MultiPoly::constant(vars, 1)};
  for (int r = 0; r < e; ++r) result = zpoly_mul(result, base, vars);
  return result;
}

/// prod_j (X_{j,0} + X_{j,1} z + ... + z^{d_j})^{exponents_j}
inline ZPoly generic_product(const std::vector<int>& exponents, const OrderVector& d,
                             const std::vector<std::string>& vars) {
  ZPoly result{MultiPoly::constant(vars, 1)};
  std::size_t offset = 0;
  for (std::size_t j = 0; j < d.size(); ++j) {
    ZPoly pj;
    for (int l = 0; l < d[j]; ++l) pj.push_back(MultiPoly::variable(vars, offset + l));
    pj.push_back(MultiPoly::constant(vars, 1));
    offset += d[j];
    if (exponents[j] > 0) result = zpoly_mul(result, zpoly_pow(pj, exponents[j], vars), vars);
  }
  return result;
}

}  // namespace detail

/**
 * Jet polynomials of each binomial for the orders d: P^(k)_m is the
 * coefficient of z^m in
 *   prod_j p_j^{alpha_kj} - prod_j p_j^{beta_kj},
 *   p_j = X_{j,0} + X_{j,1} z + ... + X_{j,d_j-1} z^{d_j-1} + z^{d_j},
 * for 0 <= m < D_k. Both products are monic of z-degree D_k, so the top
 * coefficient cancels. The scalars a_k, b_k live in the unit system only.
 */
inline JetSystem generate_jet_system(const BinomialSystem& sys, const OrderVector& d) {
  const WeightsResult w = homogeneity_weights(sys, d);
  if (const auto* bad = std::get_if<Incompatible>(&w)) {
    throw Error(Errc::IncompatibleOrders,
                "binomial " + std::to_string(bad->binomial) + " has weights " +
                    std::to_string(bad->alpha_weight) + " != " + std::to_string(bad->beta_weight));
  }
  JetSystem jets;
  jets.variables = jet_variable_names(d);
  jets.orders = d.values();
  jets.weights = std::get<std::vector<int>>(w);
  for (std::size_t k = 0; k < sys.size(); ++k) {
    const auto pa = detail::generic_product(sys[k].alpha(), d, jets.variables);
    const auto pb = detail::generic_product(sys[k].beta(), d, jets.variables);
    JetFamily fam{k + 1, jets.weights[k], {}};
    for (int m = 0; m < fam.weight; ++m) fam.polys.push_back(pa.at(m) - pb.at(m));
    jets.families.push_back(std::move(fam));
  }
  return jets;
}

/**
 * Checks prod_j p_j^alpha - prod_j p_j^beta == sum_m P_m(x(t)) z^m in
 * k[[t,z]] truncated, with p_j = x_{j,0}(t) + ... + z^{d_j}. The left side
 * is expanded directly in the series kernel; the right side goes through
 * the given jet polynomials.
 */
inline bool jet_identity_check(const BinomialSystem& sys, const JetSystem& jets,
                               const std::vector<Series1>& assignment) {
  if (assignment.size() != jets.variables.size()) {
    throw Error(Errc::ArityMismatch, "assignment must give one series per jet variable");
  }
  int prec = assignment.front().precision();
  for (const auto& x : assignment) {
    if (sgn(x.constant_term()) != 0) {
      throw Error(Errc::PreconditionViolated, "jet coefficients must lie in (t)");
    }
    prec = std::min(prec, x.precision());
  }

  std::vector<Series2> parts;
  std::size_t offset = 0;
  for (int dj : jets.orders) {
    Series2 p = Series2::monomial(prec, {0, dj});
    for (int l = 0; l < dj; ++l) {
      for (const auto& [e, c] : assignment[offset + l].terms()) p.add_term({e[0], l}, c);
    }
    parts.push_back(std::move(p));
    offset += dj;
  }

  for (std::size_t k = 0; k < sys.size(); ++k) {
    Series2 lhs_a = Series2::constant(prec, 1);
    Series2 lhs_b = Series2::constant(prec, 1);
    for (std::size_t j = 0; j < parts.size(); ++j) {
      lhs_a *= pow(parts[j], sys[k].alpha()[j]);
      lhs_b *= pow(parts[j], sys[k].beta()[j]);
    }
    const Series2 lhs = lhs_a - lhs_b;

    Series2 rhs(prec);
    const JetFamily& fam = jets.families.at(k);
    for (int m = 0; m < static_cast<int>(fam.polys.size()); ++m) {
      const Series1 value = substitute(fam.polys[m], assignment);
      for (const auto& [e, c] : value.terms()) rhs.add_term({e[0], m}, c);
    }
    if (!(lhs == rhs)) return false;
  }
  return true;
}

inline bool jet_identity_check(const BinomialSystem& sys, const OrderVector& d,
                               const std::vector<Series1>& assignment) {
  return jet_identity_check(sys, generate_jet_system(sys, d), assignment);
}

}  // namespace artin
