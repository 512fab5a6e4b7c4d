#pragma once

#include <algorithm>
#include <chrono>
#include <cctype>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "artin/binomial.hpp"
#include "artin/decouple.hpp"
#include "artin/multipoly.hpp"
#include "artin/regularize.hpp"
#include "artin/roots.hpp"
#include "artin/series.hpp"

namespace artin {

struct Measurement {
  std::string name;
  Order order;
};

struct Timing {
  std::string stage;
  double ms = 0.0;
};

/// Outcome of one experiment. Orders are recorded by name so callers can
/// recompute each one independently.
struct ExperimentReport {
  static constexpr int kSchemaVersion = 1;

  std::string experiment;
  std::string instance;
  int i = 0;
  std::optional<int> max_weight;  ///< D
  std::vector<Measurement> measurements;
  std::vector<std::string> verdicts;
  std::vector<std::string> variables;
  std::vector<Series2> witness;
  std::optional<Order> best;
  std::optional<Order> certified_distance;
  std::string certificate = "none";
  std::size_t enumeration_size = 0;
  std::size_t candidates_examined = 0;
  std::vector<Timing> timings_ms;

  bool has_verdict(const std::string& v) const {
    return std::find(verdicts.begin(), verdicts.end(), v) != verdicts.end();
  }

  const Order* find(const std::string& name) const {
    for (const auto& m : measurements) {
      if (m.name == name) return &m.order;
    }
    return nullptr;
  }
};

namespace detail {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(now - start_).count();
    start_ = now;
    return ms;
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline std::string lowered(const std::string& s) {
  std::string out = s;
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace detail

/// Index of the base series a variable name is pinned to: 0 for t, 1 for z.
inline std::optional<int> pinned_base(const std::string& name) {
  const std::string n = detail::lowered(name);
  if (n == "t") return 0;
  if (n == "z") return 1;
  return std::nullopt;
}

struct SearchSpace {
  enum class Kind { MonomialFamily, CoefficientLattice };

  Kind kind = Kind::CoefficientLattice;
  int support = 2;                ///< monomials t^a z^b with 1 <= a + b <= support
  std::vector<Coeff> coefficients{Coeff(-1), Coeff(0), Coeff(1)};
  int precision = 8;
  int max_terms = 2;              ///< terms per candidate series (lattice only)
  std::size_t budget = 1000000;   ///< maximum number of tuples
  unsigned workers = 1;
  std::vector<std::vector<Series2>> exact_solutions;  ///< user-supplied, one series per free variable
  std::vector<std::vector<Series2>> families;         ///< extra user-supplied candidate tuples
};

inline std::string space_kind_name(SearchSpace::Kind k) {
  return k == SearchSpace::Kind::MonomialFamily ? "monomial-family" : "coefficient-lattice";
}

namespace detail {

/// Monomials of degree 1..support, by degree then larger z-exponent first.
inline std::vector<Series2::Exponent> search_monomials(int support) {
  std::vector<Series2::Exponent> out;
  for (int deg = 1; deg <= support; ++deg) {
    for (int b = deg; b >= 0; --b) out.push_back({deg - b, b});
  }
  return out;
}

/// Candidate series for one variable: every choice of at most max_terms
/// monomials with nonzero coefficients, subsets in lexicographic order and
/// coefficient choices in mixed radix.
inline std::vector<Series2> variable_candidates(const SearchSpace& space) {
  std::vector<Coeff> nonzero;
  for (const auto& c : space.coefficients) {
    if (sgn(c) != 0 && std::find(nonzero.begin(), nonzero.end(), c) == nonzero.end()) nonzero.push_back(c);
  }
  const auto monos = search_monomials(space.support);
  const int terms = space.kind == SearchSpace::Kind::MonomialFamily ? 1 : space.max_terms;

  std::vector<Series2> out{Series2(space.precision)};
  for (int size = 1; size <= terms && size <= static_cast<int>(monos.size()); ++size) {
    std::vector<int> pick(size);
    std::iota(pick.begin(), pick.end(), 0);
    for (;;) {
      std::vector<std::size_t> digit(size, 0);
      for (;;) {
        Series2 s(space.precision);
        for (int r = 0; r < size; ++r) s.add_term(monos[pick[r]], nonzero[digit[r]]);
        out.push_back(std::move(s));
        int r = size - 1;
        while (r >= 0 && ++digit[r] == nonzero.size()) digit[r--] = 0;
        if (r < 0) break;
      }
      int r = size - 1;
      while (r >= 0 && pick[r] == static_cast<int>(monos.size()) - size + r) --r;
      if (r < 0) break;
      ++pick[r];
      for (int s = r + 1; s < size; ++s) pick[s] = pick[s - 1] + 1;
    }
    if (nonzero.empty()) break;
  }
  return out;
}

/// For f = c (V^2 - Z W^2) with Z pinned to z: indices of V and W.
inline std::optional<std::pair<std::size_t, std::size_t>> quadric_cone_roles(const MultiPoly& f) {
  if (f.terms().size() != 2) return std::nullopt;
  const auto& vars = f.variables();
  auto it = f.terms().begin();
  const auto e1 = it->first;
  const Coeff c1 = it->second;
  ++it;
  const auto e2 = it->first;
  const Coeff c2 = it->second;
  if (c1 != -c2) return std::nullopt;

  auto square_of = [&](const std::vector<int>& e) -> std::optional<std::size_t> {
    std::optional<std::size_t> v;
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[j] == 0) continue;
      if (e[j] != 2 || v || pinned_base(vars[j])) return std::nullopt;
      v = j;
    }
    return v;
  };
  auto z_times_square = [&](const std::vector<int>& e) -> std::optional<std::size_t> {
    std::optional<std::size_t> v;
    bool has_z = false;
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[j] == 0) continue;
      if (pinned_base(vars[j]) == 1 && e[j] == 1) {
        has_z = true;
      } else if (e[j] == 2 && !v && !pinned_base(vars[j])) {
        v = j;
      } else {
        return std::nullopt;
      }
    }
    return has_z ? v : std::nullopt;
  };
  if (auto v = square_of(e1)) {
    if (auto w = z_times_square(e2)) return std::make_pair(*v, *w);
  }
  if (auto v = square_of(e2)) {
    if (auto w = z_times_square(e1)) return std::make_pair(*v, *w);
  }
  return std::nullopt;
}

/// For f = c (V^p - W^q), gcd(p, q) = 1, with no pinned variables: (V, W, p, q).
struct PowerCurveRoles {
  std::size_t v = 0, w = 0;
  int p = 0, q = 0;
};

inline std::optional<PowerCurveRoles> power_curve_roles(const MultiPoly& f) {
  if (f.terms().size() != 2) return std::nullopt;
  const auto& vars = f.variables();
  auto it = f.terms().begin();
  const auto e1 = it->first;
  const Coeff c1 = it->second;
  ++it;
  const auto e2 = it->first;
  const Coeff c2 = it->second;
  if (c1 != -c2) return std::nullopt;
  auto pure_power = [&](const std::vector<int>& e) -> std::optional<std::pair<std::size_t, int>> {
    std::optional<std::pair<std::size_t, int>> out;
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[j] == 0) continue;
      if (out || pinned_base(vars[j])) return std::nullopt;
      out = std::make_pair(j, e[j]);
    }
    return out;
  };
  const auto a = pure_power(e1);
  const auto b = pure_power(e2);
  if (!a || !b || a->first == b->first || std::gcd(a->second, b->second) != 1) return std::nullopt;
  return PowerCurveRoles{a->first, b->first, a->second, b->second};
}

}  // namespace detail

/// Free variable index occurring only in one term of the form c * V with c scalar.
inline std::optional<std::size_t> linear_variable(const MultiPoly& f, const std::vector<std::size_t>& free) {
  for (std::size_t j : free) {
    int occurrences = 0;
    bool linear_alone = false;
    for (const auto& [e, c] : f.terms()) {
      if (e[j] == 0) continue;
      ++occurrences;
      const int total = std::accumulate(e.begin(), e.end(), 0);
      linear_alone = e[j] == 1 && total == 1;
    }
    if (occurrences == 1 && linear_alone) return j;
  }
  return std::nullopt;
}

/// The X^2 - Z Y^2 family x = t (t^2 - z)^m, y = (t^2 - z)^m.
inline std::pair<Series2, Series2> quadric_cone_family(int m, int precision) {
  const Series2 base = Series2::monomial(precision, {2, 0}) - Series2::variable(precision, 1);
  const Series2 y = pow(base, static_cast<unsigned long>(m));
  return {Series2::variable(precision, 0) * y, y};
}

/// Evaluates f with pinned variables replaced by t or z and free ones by the tuple.
inline Series2 evaluate_with_pins(const MultiPoly& f, const std::vector<Series2>& tuple, int precision) {
  std::vector<Series2> args;
  std::size_t next = 0;
  for (std::size_t j = 0; j < f.variables().size(); ++j) {
    if (auto base = pinned_base(f.variables()[j])) {
      args.push_back(Series2::variable(precision, static_cast<std::size_t>(*base)));
    } else {
      args.push_back(tuple.at(next++));
    }
  }
  return substitute(f, args);
}

inline std::vector<std::size_t> free_variables(const MultiPoly& f) {
  std::vector<std::size_t> free;
  for (std::size_t j = 0; j < f.variables().size(); ++j) {
    if (!pinned_base(f.variables()[j])) free.push_back(j);
  }
  return free;
}

/**
 * Searches the space for tuples x with every ord(x_j) < i maximizing
 * ord f(x), and reports the best exact-solution distance it can certify:
 * the zero solution, a monomial curve from a q-th root, or user-supplied
 * solutions. Enumeration is lattice tuples in mixed-radix order, then the
 * built-in family, then user families; ties keep the earliest candidate.
 */
inline ExperimentReport empirical_lower_bound(const MultiPoly& f, int i, const SearchSpace& space) {
  if (i < 1) throw Error(Errc::PreconditionViolated, "i must be >= 1");
  if (space.precision < 1) throw Error(Errc::InvalidInput, "search precision must be positive");
  detail::Stopwatch clock;
  ExperimentReport report;
  report.experiment = "search";
  report.i = i;

  const std::vector<std::size_t> free = free_variables(f);
  for (std::size_t j : free) report.variables.push_back(f.variables()[j]);
  report.instance = "f over " + std::to_string(free.size()) + " free variables, " +
                    space_kind_name(space.kind) + " support " + std::to_string(space.support) +
                    ", prec " + std::to_string(space.precision);

  const std::vector<Series2> per_var = detail::variable_candidates(space);
  std::vector<std::vector<Series2>> extra;
  const auto cone = detail::quadric_cone_roles(f);
  if (cone) {
    for (int m = 1; 2 * m + 1 < space.precision; ++m) {
      auto [x, y] = quadric_cone_family(m, space.precision);
      std::vector<Series2> tuple(free.size(), Series2(space.precision));
      for (std::size_t r = 0; r < free.size(); ++r) {
        if (free[r] == cone->first) tuple[r] = x;
        if (free[r] == cone->second) tuple[r] = y;
      }
      extra.push_back(std::move(tuple));
    }
  }
  for (const auto& fam : space.families) {
    if (fam.size() != free.size()) throw Error(Errc::ArityMismatch, "family tuple length differs from free variables");
    extra.push_back(fam);
  }

  long double lattice = 1;
  for (std::size_t r = 0; r < free.size(); ++r) lattice *= static_cast<long double>(per_var.size());
  if (lattice + extra.size() > static_cast<long double>(space.budget)) {
    throw Error(Errc::BudgetExceeded, "search space has " + std::to_string(static_cast<double>(lattice + extra.size())) +
                                          " tuples, budget " + std::to_string(space.budget));
  }
  const std::size_t lattice_size = static_cast<std::size_t>(lattice);
  report.enumeration_size = lattice_size + extra.size();
  report.timings_ms.push_back({"setup", clock.lap()});

  auto tuple_at = [&](std::size_t index) {
    if (index >= lattice_size) return extra[index - lattice_size];
    std::vector<Series2> tuple(free.size(), Series2(space.precision));
    for (std::size_t r = free.size(); r-- > 0;) {
      tuple[r] = per_var[index % per_var.size()];
      index /= per_var.size();
    }
    return tuple;
  };

  struct Best {
    std::optional<Order> order;
    std::size_t index = 0;
    std::size_t examined = 0;
  };
  auto better = [](const Best& a, const Best& b) {
    if (!b.order) return true;
    if (!a.order) return false;
    if (*a.order != *b.order) return *a.order > *b.order;
    return a.index < b.index;
  };

  auto scan = [&](std::size_t lo, std::size_t hi) {
    Best best;
    for (std::size_t idx = lo; idx < hi; ++idx) {
      const auto tuple = tuple_at(idx);
      const bool admissible = std::all_of(tuple.begin(), tuple.end(), [i](const Series2& s) {
        const Order o = s.order();
        return o.is_exact() && o.value() < i;
      });
      if (!admissible) continue;
      ++best.examined;
      Best here{evaluate_with_pins(f, tuple, space.precision).order(), idx, 0};
      if (better(here, best)) {
        here.examined = best.examined;
        best = here;
      }
    }
    return best;
  };

  const std::size_t total = report.enumeration_size;
  const unsigned workers = std::max(1u, std::min<unsigned>(space.workers, static_cast<unsigned>(std::max<std::size_t>(total, 1))));
  std::vector<Best> partial(workers);
  if (workers == 1) {
    partial[0] = scan(0, total);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (total + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t lo = std::min(total, w * chunk);
      const std::size_t hi = std::min(total, lo + chunk);
      pool.emplace_back([&, w, lo, hi] { partial[w] = scan(lo, hi); });
    }
    for (auto& th : pool) th.join();
  }
  Best best;
  for (const auto& p : partial) {
    report.candidates_examined += p.examined;
    if (p.order && better(p, best)) best = Best{p.order, p.index, 0};
  }
  report.timings_ms.push_back({"search", clock.lap()});

  if (!best.order) {
    report.verdicts.push_back("NoAdmissibleCandidate");
    return report;
  }
  report.best = *best.order;
  report.witness = tuple_at(best.index);
  for (std::size_t r = 0; r < free.size(); ++r) {
    report.measurements.push_back({"ord " + report.variables[r], report.witness[r].order()});
  }
  report.measurements.push_back({"ord f(x)", *best.order});
  report.verdicts.push_back(best.index < lattice_size ? "BestFromLattice" : "BestFromFamily");

  // Exact-solution distance certificates.
  auto consider = [&](Order distance, const std::string& kind) {
    if (!report.certified_distance || distance > *report.certified_distance) {
      report.certified_distance = distance;
      report.certificate = kind;
    }
  };
  auto distance_to = [&](const std::vector<Series2>& solution) {
    Order d = Order::at_least(space.precision);
    for (std::size_t r = 0; r < free.size(); ++r) d = std::min(d, (report.witness[r] - solution.at(r)).order());
    return d;
  };
  {
    std::vector<Series2> zero(free.size(), Series2(space.precision));
    if (evaluate_with_pins(f, zero, space.precision).is_zero()) consider(distance_to(zero), "zero-solution");
  }
  if (linear_variable(f, free)) {
    report.verdicts.push_back("TrivialInstance");
    consider(*best.order, "linear-solve");
  }
  if (const auto curve = detail::power_curve_roles(f); curve && free.size() == 2) {
    // x_V^p = x_W^q is solved by (v^q, v^p); try v from either component.
    std::size_t rv = 0, rw = 0;
    for (std::size_t r = 0; r < free.size(); ++r) {
      if (free[r] == curve->v) rv = r;
      if (free[r] == curve->w) rw = r;
    }
    auto try_root = [&](std::size_t r, int power) {
      if (report.witness[r].is_zero()) return;
      const RootResult root = qth_root(report.witness[r], power);
      if (const auto* v = std::get_if<Series2>(&root)) {
        const auto [xv, xw] = coprime_pair(*v, curve->p, curve->q);
        std::vector<Series2> sol(free.size(), Series2(space.precision));
        sol[rv] = xv;
        sol[rw] = xw;
        consider(std::min(distance_to(sol), Order::at_least(v->precision())), "monomial-curve");
      }
    };
    if (curve->q >= 2) try_root(rv, curve->q);
    if (curve->p >= 2) try_root(rw, curve->p);
  }
  for (const auto& sol : space.exact_solutions) {
    if (sol.size() != free.size()) throw Error(Errc::ArityMismatch, "exact solution length differs from free variables");
    consider(distance_to(sol), "user-supplied");
  }
  if (report.certified_distance) {
    report.measurements.push_back({"certified distance", *report.certified_distance});
  }
  report.timings_ms.push_back({"certify", clock.lap()});
  return report;
}

/**
 * z_regularize, prepare, decouple and the jet identity on one approximate
 * solution. Incompatible orders become a verdict instead of an error.
 */
inline ExperimentReport verify_decoupling_pipeline(const BinomialSystem& sys, const std::vector<Series2>& x, int i) {
  if (static_cast<int>(x.size()) != sys.n()) {
    throw Error(Errc::ArityMismatch, "solution must have one series per variable");
  }
  detail::Stopwatch clock;
  ExperimentReport report;
  report.experiment = "decouple";
  report.i = i;
  report.variables = sys.variable_names();
  report.instance = std::to_string(sys.size()) + " binomial(s) in " + std::to_string(sys.n()) + " variables";
  report.witness = x;

  for (std::size_t j = 0; j < x.size(); ++j) {
    report.measurements.push_back({"ord " + report.variables[j], x[j].order()});
  }
  for (std::size_t k = 0; k < sys.size(); ++k) {
    report.measurements.push_back({"ord f_" + std::to_string(k + 1) + "(x)", substitute(sys.polynomial(k), x).order()});
  }

  const Regularization reg = z_regularize(x);
  std::vector<int> d;
  for (const auto& s : reg.transformed) d.push_back(s.order().value());
  report.timings_ms.push_back({"z_regularize", clock.lap()});
  if (std::holds_alternative<Incompatible>(homogeneity_weights(sys, OrderVector(d)))) {
    const auto bad = std::get<Incompatible>(homogeneity_weights(sys, OrderVector(d)));
    report.verdicts.push_back("Incompatible");
    report.instance += ", binomial " + std::to_string(bad.binomial) + " weights " +
                       std::to_string(bad.alpha_weight) + " != " + std::to_string(bad.beta_weight);
    return report;
  }

  const DecoupledInstance inst = decouple(sys, x, i);
  report.timings_ms.push_back({"decouple", clock.lap()});
  report.max_weight = inst.max_weight;

  for (const auto& r : inst.unit_residuals) {
    report.measurements.push_back({"ord unit residual " + std::to_string(r.binomial), r.order});
  }
  for (const auto& r : inst.jet_residuals) {
    report.measurements.push_back(
        {"ord jet residual " + std::to_string(r.binomial) + "," + std::to_string(r.power), r.order});
  }

  const bool identity = jet_identity_check(sys, inst.jets, jet_assignment(inst.forms));
  report.timings_ms.push_back({"jet_identity", clock.lap()});

  report.verdicts.push_back(inst.hypothesis_holds ? "HypothesisHolds" : "HypothesisFails");
  report.verdicts.push_back(identity ? "JetIdentityHolds" : "JetIdentityFails");
  report.verdicts.push_back(inst.certificates_hold() ? "CertificatesHold" : "CertificatesFail");
  report.verdicts.push_back(identity && inst.sound() ? "Pass" : "Fail");
  return report;
}

/// v -> (x, y) = (v^q, v^p), the distance ord(x^p - y^q) and the root of x.
inline ExperimentReport coprime_experiment(const Series2& v, int p, int q) {
  detail::Stopwatch clock;
  ExperimentReport report;
  report.experiment = "coprime";
  report.instance = "p = " + std::to_string(p) + ", q = " + std::to_string(q);
  report.variables = {"x", "y"};
  const auto [x, y] = coprime_pair(v, p, q);
  report.witness = {x, y};
  report.measurements.push_back({"ord v", v.order()});
  report.measurements.push_back({"ord x", x.order()});
  report.measurements.push_back({"ord y", y.order()});
  report.measurements.push_back({"ord x^p - y^q", power_distance(x, y, p, q)});
  report.timings_ms.push_back({"powers", clock.lap()});

  if (q >= 2 && !x.is_zero()) {
    const RootResult root = qth_root(x, q);
    if (const auto* r = std::get_if<Series2>(&root)) {
      const Series2 vt = v.truncated(r->precision());
      const bool same = (*r == vt) || (*r == -vt);
      report.measurements.push_back({"ord root - v", std::max((*r - vt).order(), (*r + vt).order())});
      report.verdicts.push_back(same ? "RootRecovered" : "RootDiffers");
    } else {
      const NoRoot& nr = std::get<NoRoot>(root);
      report.verdicts.push_back("NoRoot:" + obstruction_name(nr.reason));
    }
  }
  report.timings_ms.push_back({"root", clock.lap()});
  return report;
}

}  // namespace artin
