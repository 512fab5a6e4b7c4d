#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "artin/binomial.hpp"
#include "artin/bounds.hpp"
#include "artin/coeff.hpp"
#include "artin/error.hpp"
#include "artin/experiments.hpp"
#include "artin/format.hpp"
#include "artin/multipoly.hpp"
#include "artin/series.hpp"
#include "artin/weierstrass.hpp"

namespace artin {

using Json = nlohmann::ordered_json;

namespace detail {

[[noreturn]] inline void bad_json(const std::string& what) { throw Error(Errc::InvalidInput, what); }

inline const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) bad_json(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

inline int int_field(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_number_integer()) bad_json(std::string("field \"") + name + "\" must be an integer");
  return v.get<int>();
}

inline Coeff coeff_from_json(const Json& j) {
  if (j.is_string()) return parse_coeff(j.get<std::string>());
  if (j.is_number_integer()) return Coeff(j.get<long>());
  bad_json("coefficients must be strings like \"-3/4\" or integers");
}

inline std::vector<int> int_vector(const Json& j) {
  if (!j.is_array()) bad_json("expected an array of integers");
  std::vector<int> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) bad_json("expected an array of integers");
    out.push_back(v.get<int>());
  }
  return out;
}

}  // namespace detail

template <std::size_t N>
Json to_json(const Series<N>& s) {
  Json j;
  j["vars"] = N == 2 ? Json::array({"t", "z"}) : Json::array({"t"});
  j["prec"] = s.precision();
  Json terms = Json::array();
  for (const auto& [e, c] : s.terms()) {
    Json row = Json::array();
    for (int v : e) row.push_back(v);
    row.push_back(format_coeff(c));
    terms.push_back(std::move(row));
  }
  j["terms"] = std::move(terms);
  return j;
}

/// Reads a series; a one-variable file may be read as a series in (t, z).
template <std::size_t N>
Series<N> series_from_json(const Json& j) {
  const int prec = detail::int_field(j, "prec");
  if (prec <= 0) detail::bad_json("\"prec\" must be positive");
  std::size_t arity = N;
  if (j.contains("vars")) {
    const Json& vars = j.at("vars");
    if (!vars.is_array() || vars.empty() || vars.size() > N) detail::bad_json("\"vars\" must list t or t, z");
    arity = vars.size();
  }
  Series<N> s(prec);
  const Json& terms = detail::field(j, "terms");
  if (!terms.is_array()) detail::bad_json("\"terms\" must be an array");
  for (const auto& row : terms) {
    if (!row.is_array() || row.size() != arity + 1) detail::bad_json("series term has the wrong length");
    typename Series<N>::Exponent e{};
    for (std::size_t v = 0; v < arity; ++v) {
      if (!row[v].is_number_integer()) detail::bad_json("exponents must be integers");
      e[v] = row[v].get<int>();
    }
    s.add_term(e, detail::coeff_from_json(row[arity]));
  }
  return s;
}

inline Json to_json(const WeierstrassForm& f) {
  Json j;
  j["unit"] = to_json(f.unit);
  j["degree"] = f.degree;
  Json coeffs = Json::array();
  for (const auto& a : f.coeffs) coeffs.push_back(to_json(a));
  j["coeffs"] = std::move(coeffs);
  j["certified_prec"] = f.certified_prec;
  return j;
}

inline Json to_json(const Order& o) {
  Json j;
  j["value"] = o.value();
  j["exact"] = o.is_exact();
  return j;
}

inline Json to_json(const BinomialSystem& sys) {
  Json j;
  j["n"] = sys.n();
  Json list = Json::array();
  for (const auto& f : sys.binomials()) {
    Json b;
    b["a"] = format_coeff(f.a());
    b["alpha"] = f.alpha();
    b["b"] = format_coeff(f.b());
    b["beta"] = f.beta();
    list.push_back(std::move(b));
  }
  j["binomials"] = std::move(list);
  return j;
}

inline BinomialSystem binomial_system_from_json(const Json& j) {
  const int n = detail::int_field(j, "n");
  const Json& list = detail::field(j, "binomials");
  if (!list.is_array()) detail::bad_json("\"binomials\" must be an array");
  std::vector<Binomial> out;
  for (const auto& b : list) {
    out.emplace_back(detail::coeff_from_json(detail::field(b, "a")), detail::int_vector(detail::field(b, "alpha")),
                     detail::coeff_from_json(detail::field(b, "b")), detail::int_vector(detail::field(b, "beta")));
  }
  return BinomialSystem(n, std::move(out));
}

/// {"vars": [...], "terms": [[[e...], "c"], ...]} or {"vars": [...], "poly": "X^2 - Z*Y^2"}.
inline MultiPoly polynomial_from_json(const Json& j) {
  std::vector<std::string> vars;
  if (j.contains("vars")) {
    for (const auto& v : j.at("vars")) {
      if (!v.is_string()) detail::bad_json("\"vars\" must be strings");
      vars.push_back(v.get<std::string>());
    }
  }
  if (j.contains("poly")) {
    if (!j.at("poly").is_string()) detail::bad_json("\"poly\" must be a string");
    return parse_polynomial(j.at("poly").get<std::string>(), vars);
  }
  MultiPoly p(vars);
  const Json& terms = detail::field(j, "terms");
  if (!terms.is_array()) detail::bad_json("\"terms\" must be an array");
  for (const auto& row : terms) {
    if (!row.is_array() || row.size() != 2) detail::bad_json("polynomial term must be [[exponents], coeff]");
    p.add_term(detail::int_vector(row[0]), detail::coeff_from_json(row[1]));
  }
  return p;
}

inline Json to_json(const MultiPoly& p) {
  Json j;
  j["vars"] = p.variables();
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back(Json::array({e, format_coeff(c)}));
  j["terms"] = std::move(terms);
  j["text"] = to_string(p);
  return j;
}

inline Json to_json(const JetSystem& jets) {
  Json j;
  j["variables"] = jets.variables;
  j["orders"] = jets.orders;
  j["weights"] = jets.weights;
  Json fams = Json::array();
  for (const auto& fam : jets.families) {
    Json f;
    f["binomial"] = fam.binomial;
    f["weight"] = fam.weight;
    Json polys = Json::array();
    for (std::size_t m = 0; m < fam.polys.size(); ++m) {
      Json p = to_json(fam.polys[m]);
      p["power"] = m;
      polys.push_back(std::move(p));
    }
    f["polys"] = std::move(polys);
    fams.push_back(std::move(f));
  }
  j["families"] = std::move(fams);
  return j;
}

inline Json bound_flags_json(unsigned flags) {
  Json out = Json::array();
  if (flags & kBoundInexact) out.push_back("Inexact");
  if (flags & kBoundClamped) out.push_back("Clamped");
  if (flags & kBoundDegenerateDegree) out.push_back("DegenerateDegree");
  if (flags & kBoundDegenerateThreshold) out.push_back("DegenerateThreshold");
  if (flags & kBoundOverflow) out.push_back("Overflow");
  return out;
}

inline Json to_json(const BoundValue& v) {
  Json j;
  j["exact"] = v.is_exact() ? Json(v.decimal()) : Json(nullptr);
  j["log10"] = std::isfinite(v.log10()) ? Json(v.log10()) : Json(nullptr);
  j["magnitude"] = v.magnitude_string();
  j["flags"] = bound_flags_json(v.flags());
  return j;
}

inline Json to_json(const RestrictedBound& r) {
  Json j;
  j["D"] = r.max_weight;
  j["jet_variables"] = r.jet_variables;
  j["degree"] = r.degree;
  j["q"] = to_json(r.q);
  j["e"] = to_json(r.e);
  j["unit_term"] = to_json(r.unit_term);
  j["jet_term"] = to_json(r.jet_term);
  j["a_part"] = to_json(r.a_part);
  j["b_part"] = to_json(r.b_part);
  j["value"] = to_json(r.value);
  j["degenerate_threshold"] = r.degenerate_threshold;
  return j;
}

inline Json to_json(const ExperimentReport& r, bool with_timings = true) {
  Json j;
  j["schema_version"] = ExperimentReport::kSchemaVersion;
  j["experiment"] = r.experiment;
  j["instance"] = r.instance;
  Json th;
  th["i"] = r.i;
  th["D"] = r.max_weight ? Json(*r.max_weight) : Json(nullptr);
  j["thresholds"] = std::move(th);
  Json ms = Json::array();
  for (const auto& m : r.measurements) {
    ms.push_back(Json{{"name", m.name}, {"value", m.order.value()}, {"exact", m.order.is_exact()}});
  }
  j["measured_orders"] = std::move(ms);
  j["verdicts"] = r.verdicts;
  if (r.experiment == "search") {
    j["enumeration_size"] = r.enumeration_size;
    j["candidates_examined"] = r.candidates_examined;
    j["best"] = r.best ? to_json(*r.best) : Json(nullptr);
    j["certified_distance"] = r.certified_distance ? to_json(*r.certified_distance) : Json(nullptr);
    j["certificate"] = r.certificate;
  }
  Json w = Json::object();
  for (std::size_t k = 0; k < r.witness.size() && k < r.variables.size(); ++k) {
    w[r.variables[k]] = to_json(r.witness[k]);
  }
  j["witness"] = std::move(w);
  if (with_timings) {
    Json t = Json::object();
    for (const auto& tm : r.timings_ms) t[tm.stage] = tm.ms;
    j["timings_ms"] = std::move(t);
  }
  return j;
}

/// A list of series, given either as an array or as {"solution": [...]}.
inline std::vector<Series2> series_list_from_json(const Json& j) {
  const Json& list = j.is_object() ? detail::field(j, "solution") : j;
  if (!list.is_array()) detail::bad_json("expected an array of series");
  std::vector<Series2> out;
  for (const auto& s : list) out.push_back(series_from_json<2>(s));
  return out;
}

inline SearchSpace search_space_from_json(const Json& j) {
  SearchSpace space;
  if (j.contains("kind")) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "monomial-family") {
      space.kind = SearchSpace::Kind::MonomialFamily;
    } else if (kind == "coefficient-lattice") {
      space.kind = SearchSpace::Kind::CoefficientLattice;
    } else {
      detail::bad_json("unknown search space kind " + kind);
    }
  }
  if (j.contains("support")) space.support = detail::int_field(j, "support");
  if (j.contains("prec")) space.precision = detail::int_field(j, "prec");
  if (j.contains("max_terms")) space.max_terms = detail::int_field(j, "max_terms");
  if (j.contains("budget")) space.budget = j.at("budget").get<std::size_t>();
  if (j.contains("workers")) space.workers = j.at("workers").get<unsigned>();
  if (j.contains("coefficients")) {
    space.coefficients.clear();
    for (const auto& c : j.at("coefficients")) space.coefficients.push_back(detail::coeff_from_json(c));
  }
  if (j.contains("exact_solutions")) {
    for (const auto& s : j.at("exact_solutions")) space.exact_solutions.push_back(series_list_from_json(s));
  }
  if (j.contains("families")) {
    for (const auto& s : j.at("families")) space.families.push_back(series_list_from_json(s));
  }
  if (space.support < 1 || space.precision < 1 || space.max_terms < 0) {
    detail::bad_json("support and prec must be positive");
  }
  return space;
}

}  // namespace artin
