#include <gtest/gtest.h>

#include "artin/artin.hpp"
#include "oracle.hpp"

using namespace artin;
using oracle::cpp_int;

namespace {

std::string exact(const BoundValue& v) { return v.decimal(); }

std::string eval(const std::string& f, std::map<std::string, cpp_int> env) { return oracle::formula(f, std::move(env)).str(); }

BinomialSystem cusp() { return BinomialSystem(2, {Binomial(1, {2, 0}, -1, {0, 3})}); }
BinomialSystem diagonal() { return BinomialSystem(2, {Binomial(1, {1, 0}, -1, {0, 1})}); }

}  // namespace

TEST(Hermann, Examples) {
  HermannResult h = hermann_exponent(2, 1, 2);
  EXPECT_EQ(exact(h.value), "36");
  EXPECT_EQ(exact(h.crude), "432");
  EXPECT_TRUE(h.within);
  EXPECT_EQ(exact(hermann_exponent(1, 1, 0).value), "3");
  EXPECT_EQ(exact(hermann_exponent(5, 9, 1).value), "2240");
}

TEST(ComponentCount, Examples) {
  EXPECT_EQ(exact(component_count_bound(3, 2, 4)), "16");
  EXPECT_EQ(exact(component_count_bound(4, 3, 1)), "1");
  EXPECT_EQ(exact(component_count_bound(1, 5, 7)), "7");
  const BoundValue degenerate = component_count_bound(2, 2, 0);
  EXPECT_EQ(exact(degenerate), "1");
  EXPECT_TRUE(degenerate.has_flag(kBoundDegenerateDegree));
}

TEST(IntersectionDegree, Examples) {
  EXPECT_EQ(exact(intersection_degree_bound(2, 3, 2)), "34");
  EXPECT_EQ(exact(intersection_degree_bound(1, 2, 3)), "6");
  for (int n = 1; n <= 4; ++n) EXPECT_EQ(exact(intersection_degree_bound(n, 1, 5)), "5");
}

TEST(EPrime, Examples) {
  // 16 (1 + 1 + 2 ((2^2 - 2) 1)^2)^3 = 16 * 10^3.
  EXPECT_EQ(exact(BoundEvaluator(stub_degree_bounds()).e_prime(1, 2)), "16000");
  EXPECT_EQ(exact(BoundEvaluator(constant_degree_bounds(1, 0)).e_prime(1, 2)), "16");
}

TEST(EPrime, ClampsBelowTwo) {
  const BoundValue v = BoundEvaluator(stub_degree_bounds()).e_prime(2, 1);
  EXPECT_TRUE(v.has_flag(kBoundClamped));
  EXPECT_EQ(exact(v), "400");  // 25 (1 + 1 + 0)^4
}

// Each closed form against a second evaluation of the formula text.
TEST(DualImplementation, ClosedFormsOnGrid) {
  BoundEvaluator stub(stub_degree_bounds());
  BoundEvaluator dflt(default_degree_bounds());
  for (int n = 1; n <= 4; ++n) {
    for (int p = 1; p <= 6; ++p) {
      for (int d = 0; d <= 5; ++d) {
        std::map<std::string, cpp_int> env{{"n", n}, {"p", p}, {"d", d}, {"q", p}};
        const HermannResult h = hermann_exponent(n, p, d);
        EXPECT_EQ(exact(h.value), eval("min(n,p)*(n+2)*(d+1)^(min(n,p)+1)", env));
        EXPECT_EQ(exact(h.crude), eval("(n+2)^2*(d+1)^(n+1)", env));
        EXPECT_TRUE(h.within) << n << " " << p << " " << d;
        if (d >= 1) {
          EXPECT_EQ(exact(component_count_bound(n, p, d)), eval("d^min(n,p)", env));
        }
        EXPECT_EQ(exact(intersection_degree_bound(n, p, d)), eval("n*((q-1)*d)^(2^(n-1))+d", env));
      }
    }
    for (int d = 2; d <= 5; ++d) {
      std::map<std::string, cpp_int> env{{"n", n}, {"d", d}, {"l", 1}};
      const std::string eprime = "(n+3)^2*(1+l+(n+1)*((d^(n+1)-2)*l)^(2^n))^(n+2)";
      EXPECT_EQ(exact(stub.e_prime(n, d)), eval(eprime, env));
      env["l"] = oracle::formula("(2*d)^(2^(n+1))", env);
      EXPECT_EQ(exact(dflt.e_prime(n, d)), eval(eprime, env));
    }
  }
}

TEST(Beta, Floor) {
  BoundEvaluator ev(stub_degree_bounds());
  for (int n = 0; n <= 3; ++n) {
    EXPECT_EQ(exact(ev.beta(n + 1, n, 3, 7)), "2");
    if (n >= 0) {
      EXPECT_EQ(exact(ev.beta_prime(n + 1, n, 3, 7)), "2");
    }
  }
}

// k = n = 1, d = 1, i = 1, lambda1(n, d) = d:
//   beta_1(1,1,1) = (n+3)^2 (d+1)^(2n+3) max_{h=2} beta'_2(1, lambda1(2,1) = 1, 1)
//                 = 16 * 2^5 * 2 = 1024.
TEST(Beta, OneLevelUnfold) {
  BoundEvaluator ev(stub_degree_bounds());
  EXPECT_EQ(exact(ev.beta(1, 1, 1, 1)), "1024");
}

// beta'_n = (e'(n,d) + 1) beta_{n+1} + 1 with beta_{n+1} = 2.
TEST(BetaPrime, OneLevelUnfold) {
  BoundEvaluator ev(stub_degree_bounds());
  for (int n = 1; n <= 3; ++n) {
    for (int d = 2; d <= 4; ++d) {
      const BoundValue ep = ev.e_prime(n, d);
      EXPECT_EQ(exact(ev.beta_prime(n, n, d, 5)), BigInt(ep.exact() * 2 + 3).get_str());
    }
  }
}

TEST(Beta, DualImplementationStub) {
  // beta_0(1, d, i) = 16 (d+1)^5 max(beta'_1(1, d, i), 2),
  // beta'_1(1, d, i) = (e'(1, d) + 1) beta_2 + 1 = 2 e' + 3.
  BoundEvaluator ev(stub_degree_bounds());
  for (int d = 2; d <= 5; ++d) {
    std::map<std::string, cpp_int> env{{"d", d}, {"n", 1}, {"l", 1}};
    env["e"] = oracle::formula("(n+3)^2*(1+l+(n+1)*((d^(n+1)-2)*l)^(2^n))^(n+2)", env);
    EXPECT_EQ(exact(ev.greenberg(1, d, 4)), eval("16*(d+1)^5*(2*e+3)", env));
  }
}

TEST(Beta, MonotoneWithStubs) {
  BoundEvaluator ev(stub_degree_bounds());
  for (int n = 0; n <= 3; ++n) {
    for (int k = 0; k <= n + 1; ++k) {
      for (int d = 1; d <= 4; ++d) {
        for (int i = 1; i <= 10; ++i) {
          const BoundValue v = ev.beta(k, n, d, i);
          EXPECT_GE(compare(v, BoundValue(1)), 0);
          if (i > 1) {
            EXPECT_GE(compare(v, ev.beta(k, n, d, i - 1)), 0);
          }
          if (d > 1) {
            EXPECT_GE(compare(v, ev.beta(k, n, d - 1, i)), 0);
          }
        }
      }
    }
  }
  EXPECT_GT(ev.memo_size(), 0u);
}

TEST(Beta, GreenbergMonotoneDefault) {
  BoundEvaluator ev(default_degree_bounds());
  for (int n = 0; n <= 2; ++n) {
    for (int d = 1; d <= 3; ++d) {
      for (int i = 1; i <= 3; ++i) {
        const BoundValue v = ev.greenberg(n, d, i);
        if (n > 0) {
          EXPECT_GE(compare(v, ev.greenberg(n - 1, d, i)), 0);
        }
        if (d > 1) {
          EXPECT_GE(compare(v, ev.greenberg(n, d - 1, i)), 0);
        }
        if (i > 1) {
          EXPECT_GE(compare(v, ev.greenberg(n, d, i - 1)), 0);
        }
      }
    }
  }
}

TEST(Beta, ProofSumVariant) {
  BoundOptions opts;
  opts.variant = BetaVariant::ProofSum;
  BoundEvaluator ev(stub_degree_bounds(), opts);
  // (n+1)(n+3)(d+1)^(n+2) max(d,1)^(n+1) * beta'_2 = 2 * 4 * 8 * 1 * 2.
  EXPECT_EQ(exact(ev.beta(1, 1, 1, 1)), "128");
}

TEST(BoundValue, BudgetFallsBackToMagnitude) {
  const BoundArithmetic small(64);
  const BoundValue big = small.pow(BoundValue(10), 40);
  EXPECT_FALSE(big.is_exact());
  EXPECT_TRUE(big.has_flag(kBoundInexact));
  EXPECT_NEAR(big.log10(), 40.0, 0.01);
  EXPECT_EQ(big.magnitude_string(), "10^{40.000}");
  EXPECT_THROW(big.exact(), Error);

  const BoundArithmetic wide;
  const BoundValue v = wide.pow(BoundValue(7), 300);
  ASSERT_TRUE(v.is_exact());
  EXPECT_NEAR(v.log10(), 300 * std::log10(7.0), 0.01);
  EXPECT_NEAR(small.mul(small.pow(BoundValue(7), 300), BoundValue(3)).log10(), 300 * std::log10(7.0) + std::log10(3.0), 0.01);
}

TEST(BoundValue, TowerStaysFinite) {
  BoundEvaluator ev(default_degree_bounds());
  const BoundValue v = ev.greenberg(3, 3, 5);
  EXPECT_TRUE(std::isfinite(v.log10()));
  EXPECT_GT(v.log10(), 100);
}

TEST(RestrictedBound, Cusp) {
  BoundEvaluator ev(stub_degree_bounds());
  const RestrictedBound r = binomial_restricted_bound(cusp(), OrderVector({3, 2}), 7, ev);
  EXPECT_EQ(r.max_weight, 6);
  EXPECT_EQ(r.jet_variables, 5);
  EXPECT_EQ(r.degree, 3);
  EXPECT_EQ(exact(r.q), "3");   // 3^min(2,1)
  EXPECT_EQ(exact(r.e), "64");  // 1 * 4 * 4^2
  EXPECT_EQ(exact(r.unit_term), "1344");
  EXPECT_EQ(compare(r.a_part, ev.arithmetic().max(r.unit_term, r.jet_term)), 0);
  EXPECT_EQ(exact(r.b_part), "6");
  EXPECT_EQ(compare(r.value, ev.arithmetic().add(r.a_part, BoundValue(6))), 0);
  EXPECT_FALSE(r.degenerate_threshold);
  EXPECT_TRUE(binomial_restricted_bound(cusp(), OrderVector({3, 2}), 5, ev).degenerate_threshold);
  EXPECT_THROW(binomial_restricted_bound(cusp(), OrderVector({2, 2}), 7, ev), Error);
}

TEST(RestrictedBound, Diagonal) {
  BoundEvaluator ev(stub_degree_bounds());
  const RestrictedBound r = binomial_restricted_bound(diagonal(), OrderVector({1, 1}), 3, ev);
  EXPECT_EQ(r.max_weight, 1);
  EXPECT_EQ(exact(r.q), "1");
  EXPECT_EQ(exact(r.e), "16");
  EXPECT_EQ(exact(r.unit_term), "48");
  EXPECT_EQ(compare(r.jet_term, ev.greenberg(2, 1, 3)), 0);
}

TEST(GlobalBound, Examples) {
  BoundEvaluator ev(stub_degree_bounds());
  const GlobalBound g = binomial_global_bound(diagonal(), 2, ev);
  ASSERT_TRUE(g.worst.has_value());
  EXPECT_EQ(g.worst->values(), (std::vector<int>{1, 1}));
  EXPECT_EQ(compare(g.value, binomial_restricted_bound(diagonal(), OrderVector({1, 1}), 2, ev).value), 0);

  const GlobalBound c = binomial_global_bound(cusp(), 3, ev);
  EXPECT_EQ(c.vectors_examined, 4u);
  EXPECT_EQ(c.compatible_vectors, 0u);
  EXPECT_FALSE(c.worst.has_value());
  EXPECT_EQ(exact(c.value), "576");  // 3 * 64 * 3

  const GlobalBound c5 = binomial_global_bound(cusp(), 5, ev);
  ASSERT_TRUE(c5.worst.has_value());
  EXPECT_EQ(c5.worst->values(), (std::vector<int>{3, 2}));
}

TEST(GlobalBound, MonotoneInI) {
  BoundEvaluator ev(stub_degree_bounds());
  for (int i = 1; i < 6; ++i) {
    EXPECT_GE(compare(binomial_global_bound(cusp(), i + 1, ev).value, binomial_global_bound(cusp(), i, ev).value), 0);
    EXPECT_GE(compare(binomial_global_bound(diagonal(), i + 1, ev).value, binomial_global_bound(diagonal(), i, ev).value), 0);
  }
}
