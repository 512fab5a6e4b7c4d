#pragma once

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "artin/coeff.hpp"
#include "artin/error.hpp"
#include "artin/multipoly.hpp"
#include "artin/series.hpp"

namespace artin {

using NameMap = std::function<std::string(const std::string&)>;

/// x_j_l -> x_(j,l), the indexed-variable spelling Macaulay2 accepts.
inline std::string m2_variable(const std::string& name) {
  const auto first = name.find('_');
  const auto second = first == std::string::npos ? std::string::npos : name.find('_', first + 1);
  if (second == std::string::npos) return name;
  return name.substr(0, first) + "_(" + name.substr(first + 1, second - first - 1) + "," +
         name.substr(second + 1) + ")";
}

namespace detail {

inline void append_term(std::ostringstream& out, bool first, const Coeff& c,
                        const std::vector<std::pair<std::string, int>>& factors) {
  const bool negative = sgn(c) < 0;
  const Coeff mag = negative ? Coeff(-c) : c;
  if (first) {
    if (negative) out << "-";
  } else {
    out << (negative ? " - " : " + ");
  }
  const bool unit = mag == 1;
  if (!unit || factors.empty()) {
    out << format_coeff(mag);
    if (!factors.empty()) out << "*";
  }
  for (std::size_t r = 0; r < factors.size(); ++r) {
    if (r > 0) out << "*";
    out << factors[r].first;
    if (factors[r].second > 1) out << "^" << factors[r].second;
  }
}

}  // namespace detail

/// Terms by descending total degree, then descending exponent vector.
inline std::string to_string(const MultiPoly& p, const NameMap& rename = {}) {
  if (p.is_zero()) return "0";
  std::vector<std::pair<std::vector<int>, Coeff>> terms(p.terms().begin(), p.terms().end());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    const int da = std::accumulate(a.first.begin(), a.first.end(), 0);
    const int db = std::accumulate(b.first.begin(), b.first.end(), 0);
    if (da != db) return da > db;
    return a.first > b.first;
  });
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : terms) {
    std::vector<std::pair<std::string, int>> factors;
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[j] > 0) factors.emplace_back(rename ? rename(p.variables()[j]) : p.variables()[j], e[j]);
    }
    detail::append_term(out, first, c, factors);
    first = false;
  }
  return out.str();
}

/// Ascending total degree, then descending z-exponent, followed by O(N).
template <std::size_t N>
std::string to_string(const Series<N>& s) {
  static const char* names[] = {"t", "z"};
  std::vector<std::pair<typename Series<N>::Exponent, Coeff>> terms(s.terms().begin(), s.terms().end());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    const int da = Series<N>::degree(a.first);
    const int db = Series<N>::degree(b.first);
    if (da != db) return da < db;
    return a.first[N - 1] > b.first[N - 1];
  });
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : terms) {
    std::vector<std::pair<std::string, int>> factors;
    for (std::size_t j = 0; j < N; ++j) {
      if (e[j] > 0) factors.emplace_back(names[j], e[j]);
    }
    detail::append_term(out, first, c, factors);
    first = false;
  }
  if (first) out << "0";
  out << " + O(" << s.precision() << ")";
  return out.str();
}

/// Macaulay2 input declaring the ring over QQ and the ideal of the given polynomials.
inline std::string to_m2(const std::vector<std::string>& variables, const std::vector<MultiPoly>& polys) {
  std::ostringstream out;
  out << "R = QQ[";
  for (std::size_t j = 0; j < variables.size(); ++j) out << (j ? ", " : "") << m2_variable(variables[j]);
  out << "];\n";
  out << "I = ideal(\n";
  for (std::size_t k = 0; k < polys.size(); ++k) {
    out << "  " << to_string(polys[k], m2_variable) << (k + 1 < polys.size() ? ",\n" : "\n");
  }
  out << ");\n";
  return out.str();
}

namespace detail {

class PolyParser {
 public:
  PolyParser(std::string text, std::vector<std::string> vars, bool fixed)
      : text_(std::move(text)), vars_(std::move(vars)), fixed_(fixed) {}

  struct RawTerm {
    Coeff c;
    std::vector<std::pair<std::size_t, int>> factors;
  };

  std::vector<RawTerm> parse() {
    std::vector<RawTerm> terms;
    skip();
    bool negative = false;
    if (peek() == '+' || peek() == '-') negative = get() == '-';
    for (;;) {
      RawTerm t = term();
      if (negative) t.c = -t.c;
      terms.push_back(std::move(t));
      skip();
      if (pos_ >= text_.size()) break;
      const char op = get();
      if (op != '+' && op != '-') fail("expected + or -");
      negative = op == '-';
    }
    return terms;
  }

  const std::vector<std::string>& variables() const { return vars_; }

 private:
  RawTerm term() {
    RawTerm t{Coeff(1), {}};
    for (bool first = true;; first = false) {
      skip();
      if (!first) {
        if (peek() != '*') break;
        get();
        skip();
      }
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        t.c *= number();
      } else if (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_') {
        const std::size_t v = variable();
        int e = 1;
        skip();
        if (peek() == '^') {
          get();
          skip();
          e = static_cast<int>(integer());
        }
        t.factors.emplace_back(v, e);
      } else if (peek() == '(') {
        fail("parentheses are not supported");
      } else {
        fail("expected a coefficient or variable");
      }
    }
    return t;
  }

  Coeff number() {
    Coeff c(integer());
    skip();
    if (peek() == '/') {
      get();
      skip();
      const long den = integer();
      if (den == 0) fail("zero denominator");
      c /= Coeff(den);
    }
    return c;
  }

  long integer() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return std::stol(text_.substr(start, pos_ - start));
  }

  std::size_t variable() {
    const std::size_t start = pos_;
    while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
    const std::string name = text_.substr(start, pos_ - start);
    const auto it = std::find(vars_.begin(), vars_.end(), name);
    if (it != vars_.end()) return static_cast<std::size_t>(it - vars_.begin());
    if (fixed_) fail("unknown variable " + name);
    vars_.push_back(name);
    return vars_.size() - 1;
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char get() { return text_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(Errc::InvalidInput, "polynomial parse error at offset " + std::to_string(pos_) + ": " + msg);
  }

  std::string text_;
  std::vector<std::string> vars_;
  bool fixed_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/**
 * Parses sums of terms like "X^2 - Z*Y^2" or "3/2*x*y^2". With an empty
 * variable list the ring is the variables in order of first appearance.
 */
inline MultiPoly parse_polynomial(const std::string& text, std::vector<std::string> variables = {}) {
  const bool fixed = !variables.empty();
  detail::PolyParser parser(text, std::move(variables), fixed);
  const auto raw = parser.parse();
  const auto& vars = parser.variables();
  MultiPoly p(vars);
  for (const auto& t : raw) {
    std::vector<int> e(vars.size(), 0);
    for (const auto& [v, k] : t.factors) e[v] += k;
    p.add_term(e, t.c);
  }
  return p;
}

/// Series from polynomial text in t (and z), e.g. "1 - t + 2*t*z^2".
template <std::size_t N>
Series<N> parse_series(const std::string& text, int precision) {
  const std::vector<std::string> vars = N == 2 ? std::vector<std::string>{"t", "z"} : std::vector<std::string>{"t"};
  const MultiPoly p = parse_polynomial(text, vars);
  Series<N> s(precision);
  for (const auto& [e, c] : p.terms()) {
    typename Series<N>::Exponent x{};
    for (std::size_t j = 0; j < N; ++j) x[j] = e[j];
    s.add_term(x, c);
  }
  return s;
}

}  // namespace artin
