#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "artin/coeff.hpp"
#include "artin/error.hpp"
#include "artin/series.hpp"

namespace artin {

/// Sparse polynomial over Q in a fixed ordered list of named variables.
class MultiPoly {
 public:
  using Exponents = std::vector<int>;
  using TermMap = std::map<Exponents, Coeff>;

  MultiPoly() = default;
  explicit MultiPoly(std::vector<std::string> variables) : variables_(std::move(variables)) {}

  static MultiPoly constant(std::vector<std::string> variables, const Coeff& c) {
    MultiPoly p(std::move(variables));
    p.add_term(Exponents(p.variables_.size(), 0), c);
    return p;
  }

  static MultiPoly variable(std::vector<std::string> variables, std::size_t index) {
    MultiPoly p(std::move(variables));
    Exponents e(p.variables_.size(), 0);
    e.at(index) = 1;
    p.add_term(e, 1);
    return p;
  }

  const std::vector<std::string>& variables() const { return variables_; }
  std::size_t arity() const { return variables_.size(); }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Exponents& e, const Coeff& c) {
    if (e.size() != variables_.size()) {
      throw Error(Errc::ArityMismatch, "exponent vector length " + std::to_string(e.size()) +
                                           " but " + std::to_string(variables_.size()) +
                                           " variables");
    }
    if (std::any_of(e.begin(), e.end(), [](int v) { return v < 0; })) {
      throw Error(Errc::InvalidInput, "negative exponent");
    }
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  Coeff coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Coeff(0) : it->second;
  }

  int total_degree() const {
    int best = 0;
    for (const auto& [e, c] : terms_) best = std::max(best, std::accumulate(e.begin(), e.end(), 0));
    return best;
  }

  bool operator==(const MultiPoly& other) const = default;

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
    require_same_ring(a, b);
    MultiPoly out(a);
    for (const auto& [e, c] : b.terms_) out.add_term(e, c);
    return out;
  }

  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
    require_same_ring(a, b);
    MultiPoly out(a);
    for (const auto& [e, c] : b.terms_) out.add_term(e, -c);
    return out;
  }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    require_same_ring(a, b);
    MultiPoly out(a.variables_);
    Exponents e(a.variables_.size());
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
        out.add_term(e, ca * cb);
      }
    }
    return out;
  }

  friend MultiPoly operator*(const Coeff& k, const MultiPoly& p) {
    MultiPoly out(p.variables_);
    for (const auto& [e, c] : p.terms_) out.add_term(e, k * c);
    return out;
  }

  MultiPoly& operator+=(const MultiPoly& b) { return *this = *this + b; }
  MultiPoly& operator*=(const MultiPoly& b) { return *this = *this * b; }

 private:
  static void require_same_ring(const MultiPoly& a, const MultiPoly& b) {
    if (a.variables_ != b.variables_) {
      throw Error(Errc::ArityMismatch, "polynomials live in different variable lists");
    }
  }

  std::vector<std::string> variables_;
  TermMap terms_;
};

inline MultiPoly pow(const MultiPoly& base, unsigned long exponent) {
  MultiPoly result = MultiPoly::constant(base.variables(), 1);
  MultiPoly square = base;
  while (exponent > 0) {
    if (exponent & 1UL) result *= square;
    exponent >>= 1;
    if (exponent > 0) square *= square;
  }
  return result;
}

/**
 * Evaluates p at series arguments. The result precision is the minimum of
 * the argument precisions; powers of each argument are cached.
 */
template <std::size_t N>
Series<N> substitute(const MultiPoly& p, const std::vector<Series<N>>& args) {
  if (args.size() != p.arity()) {
    throw Error(Errc::ArityMismatch, "polynomial has " + std::to_string(p.arity()) +
                                         " variables but " + std::to_string(args.size()) +
                                         " arguments were given");
  }
  if (args.empty()) throw Error(Errc::ArityMismatch, "substitution needs at least one argument");
  int prec = args.front().precision();
  for (const auto& a : args) prec = std::min(prec, a.precision());

  std::vector<std::vector<Series<N>>> powers(args.size());
  for (std::size_t v = 0; v < args.size(); ++v) {
    powers[v].push_back(Series<N>::constant(prec, 1));
  }
  auto power_of = [&](std::size_t v, int e) -> const Series<N>& {
    while (static_cast<int>(powers[v].size()) <= e) {
      powers[v].push_back(powers[v].back() * args[v].truncated(prec));
    }
    return powers[v][e];
  };

  Series<N> result(prec);
  for (const auto& [e, c] : p.terms()) {
    Series<N> term = Series<N>::constant(prec, c);
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v] > 0) term *= power_of(v, e[v]);
    }
    result += term;
  }
  return result;
}

}  // namespace artin
