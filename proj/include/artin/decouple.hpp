#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "artin/binomial.hpp"
#include "artin/regularize.hpp"
#include "artin/weierstrass.hpp"

namespace artin {

struct UnitResidual {
  std::size_t binomial = 0;  ///< 1-based
  Series2 value;             ///< f_k(u_1, ..., u_n)
  Order order;
  bool certified = false;    ///< order >= i - D
};

struct JetResidual {
  std::size_t binomial = 0;  ///< 1-based
  int power = 0;             ///< m in P^(k)_m
  Series1 value;             ///< P^(k)_m(x_{j,l}(t))
  Order order;
  bool certified = false;
};

/// An approximate solution split into its unit part and its jet part.
struct DecoupledInstance {
  int i = 0;
  Coeff shear;
  std::vector<Series2> regularized;
  OrderVector orders{std::vector<int>{1}};
  std::vector<WeierstrassForm> forms;
  JetSystem jets;
  int max_weight = 0;  ///< D
  int threshold = 0;   ///< i - D
  int certified_precision = 0;

  std::vector<Order> input_orders;  ///< ord f_k(x) before decoupling
  bool hypothesis_holds = false;    ///< every ord f_k(x) >= i

  std::vector<UnitResidual> unit_residuals;
  std::vector<JetResidual> jet_residuals;

  bool certificates_hold() const {
    return std::all_of(unit_residuals.begin(), unit_residuals.end(),
                       [](const UnitResidual& r) { return r.certified; }) &&
           std::all_of(jet_residuals.begin(), jet_residuals.end(),
                       [](const JetResidual& r) { return r.certified; });
  }

  /// Certificates are only promised when the hypothesis holds.
  bool sound() const { return !hypothesis_holds || certificates_hold(); }
};

/// Jet coefficients x_{j,l}(t) of all forms, ordered like the jet variables.
inline std::vector<Series1> jet_assignment(const std::vector<WeierstrassForm>& forms) {
  std::vector<Series1> values;
  for (const auto& form : forms) values.insert(values.end(), form.coeffs.begin(), form.coeffs.end());
  return values;
}

/**
 * Shears x into z-regular position, prepares every component as
 * u_j * (z^{d_j} + ... + x_{j,0}(t)) and evaluates the unit system
 * f_k(u) and the jet system P^(k)_m(x_{j,l}(t)). When ord f_k(x) >= i for
 * all k, every residual has order >= i - D with D = max_k D_k.
 */
inline DecoupledInstance decouple(const BinomialSystem& sys, const std::vector<Series2>& x, int i) {
  if (static_cast<int>(x.size()) != sys.n()) {
    throw Error(Errc::ArityMismatch, "solution must have one series per variable");
  }
  DecoupledInstance out;
  out.i = i;

  for (std::size_t k = 0; k < sys.size(); ++k) {
    out.input_orders.push_back(substitute(sys.polynomial(k), x).order());
  }
  out.hypothesis_holds = std::all_of(out.input_orders.begin(), out.input_orders.end(),
                                     [i](const Order& o) { return o.reaches(i); });

  Regularization reg = z_regularize(x);
  out.shear = reg.shear;
  out.regularized = std::move(reg.transformed);

  std::vector<int> d;
  for (const auto& s : out.regularized) d.push_back(s.order().value());
  out.orders = OrderVector(d);
  out.jets = generate_jet_system(sys, out.orders);
  out.max_weight = out.jets.max_weight();
  if (i <= out.max_weight) {
    throw Error(Errc::PreconditionViolated, "i = " + std::to_string(i) +
                                                " must exceed D = " + std::to_string(out.max_weight));
  }
  out.threshold = i - out.max_weight;

  std::vector<Series2> units;
  for (const auto& s : out.regularized) {
    out.forms.push_back(prepare(s));
    units.push_back(out.forms.back().unit);
  }
  out.certified_precision = out.forms.front().certified_prec;
  for (const auto& f : out.forms) out.certified_precision = std::min(out.certified_precision, f.certified_prec);
  if (out.threshold > out.certified_precision) {
    throw Error(Errc::PrecisionTooLow,
                "threshold " + std::to_string(out.threshold) + " exceeds certified precision " +
                    std::to_string(out.certified_precision));
  }

  const std::vector<Series1> assignment = jet_assignment(out.forms);
  for (std::size_t k = 0; k < sys.size(); ++k) {
    UnitResidual ur{k + 1, substitute(sys.polynomial(k), units), Order::at_least(0), false};
    ur.order = ur.value.order();
    ur.certified = ur.order.reaches(out.threshold);
    out.unit_residuals.push_back(std::move(ur));

    const JetFamily& fam = out.jets.families[k];
    for (int m = 0; m < static_cast<int>(fam.polys.size()); ++m) {
      JetResidual jr{k + 1, m, substitute(fam.polys[m], assignment), Order::at_least(0), false};
      jr.order = jr.value.order();
      jr.certified = jr.order.reaches(out.threshold);
      out.jet_residuals.push_back(std::move(jr));
    }
  }
  return out;
}

}  // namespace artin
