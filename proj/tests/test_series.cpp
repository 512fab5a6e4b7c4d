#include <gtest/gtest.h>

#include "artin/artin.hpp"
#include "gen.hpp"
#include "oracle.hpp"

using namespace artin;

namespace {

Series2 S(const std::string& text, int prec) { return parse_series<2>(text, prec); }
Series1 S1(const std::string& text, int prec) { return parse_series<1>(text, prec); }

}  // namespace

TEST(Coeff, CanonicalForm) {
  EXPECT_EQ(format_coeff(parse_coeff("6/-4")), "-3/2");
  EXPECT_EQ(format_coeff(parse_coeff("0/5")), "0");
  EXPECT_THROW(parse_coeff("1/0"), Error);
  EXPECT_THROW(parse_coeff("abc"), Error);
}

TEST(Coeff, RationalRoots) {
  EXPECT_EQ(*rational_root(Coeff(8, 27), 3), Coeff(2, 3));
  EXPECT_EQ(*rational_root(Coeff(-8), 3), Coeff(-2));
  EXPECT_FALSE(rational_root(Coeff(-4), 2));
  EXPECT_FALSE(rational_root(Coeff(2), 2));
}

TEST(SeriesAdd, Examples) {
  EXPECT_EQ(S("t + z", 5) + S("t - z", 5), S("2*t", 5));
  const Series2 s = S("1 + 3*t*z - z^2", 6);
  EXPECT_EQ(s + Series2(6), s);
  const Series2 r = S("1 + t", 5) + S("t^2", 3);
  EXPECT_EQ(r.precision(), 3);
  EXPECT_EQ(r, S("1 + t + t^2", 3));
}

TEST(SeriesMul, Examples) {
  EXPECT_EQ(S("t + z", 6) * S("t - z", 6), S("t^2 - z^2", 6));
  const Series2 s = S("2 + t*z - 1/3*z^4", 6);
  EXPECT_EQ(s * Series2::constant(6, 1), s);
  EXPECT_EQ(S("1 + t", 6) * S("1 - t + t^2 - t^3 + t^4 - t^5", 6), Series2::constant(6, 1));
}

TEST(SeriesOrder, Examples) {
  EXPECT_EQ(S("t^2*z + t^4", 8).order(), Order::exactly(3));
  EXPECT_EQ(Series2(8).order(), Order::at_least(8));
  EXPECT_EQ(pow(S("t^2 - z", 12), 5).order(), Order::exactly(5));
}

TEST(SeriesOrder, AtLeastIsNotExact) {
  const Order o = S("t^9", 5).order();
  EXPECT_FALSE(o.is_exact());
  EXPECT_TRUE(o.reaches(5));
  EXPECT_FALSE(o.reaches(6));
  EXPECT_EQ(o.to_string(), ">=5");
}

TEST(InvertUnit, Examples) {
  EXPECT_EQ(invert_unit(S("1 + t", 3)), S("1 - t + t^2", 3));
  EXPECT_EQ(invert_unit(S("2", 4)), S("1/2", 4));
  EXPECT_EQ(invert_unit(S("1 + t + z", 3)), S("1 - t - z + t^2 + 2*t*z + z^2", 3));
  EXPECT_THROW(invert_unit(S("t + z", 4)), Error);
}

TEST(InvertUnit, Series1) {
  EXPECT_EQ(invert_unit(S1("1 - t", 5)), S1("1 + t + t^2 + t^3 + t^4", 5));
}

TEST(Substitute, Examples) {
  const MultiPoly cusp = parse_polynomial("X^2 - Y^3", {"X", "Y"});
  EXPECT_TRUE(substitute(cusp, std::vector<Series2>{S("t^3", 10), S("t^2", 10)}).is_zero());

  const MultiPoly cone = parse_polynomial("X^2 - Z*Y^2", {"X", "Y", "Z"});
  const Series2 base = S("t^2 - z", 14);
  const Series2 y = pow(base, 2);
  const Series2 x = S("t", 14) * y;
  EXPECT_EQ(substitute(cone, std::vector<Series2>{x, y, S("z", 14)}), pow(base, 5));

  const MultiPoly sum = parse_polynomial("X + Y", {"X", "Y"});
  EXPECT_EQ(substitute(sum, std::vector<Series2>{S("t", 4), S("z", 4)}), S("t + z", 4));
  EXPECT_THROW(substitute(sum, std::vector<Series2>{S("t", 4)}), Error);
}

TEST(ZRegularize, Examples) {
  auto r = z_regularize({S("z", 5)});
  EXPECT_EQ(r.shear, 0);
  EXPECT_EQ(r.transformed[0], S("z", 5));

  r = z_regularize({S("t^2", 5)});
  EXPECT_EQ(r.shear, 1);
  EXPECT_EQ(r.transformed[0], S("t^2 + 2*t*z + z^2", 5));

  r = z_regularize({S("t*z", 5)});
  EXPECT_EQ(r.shear, 1);
  EXPECT_EQ(r.transformed[0], S("t*z + z^2", 5));

  EXPECT_THROW(z_regularize({Series2(5)}), Error);
}

TEST(ZRegularize, FamilyNeedsCommonShear) {
  // t z vanishes at c = 0 and t^2 - t z at c = 1.
  auto r = z_regularize({S("t*z", 6), S("t^2 - t*z", 6)});
  EXPECT_EQ(r.shear, 2);
}

TEST(MultiPolyArith, Basics) {
  const MultiPoly x = MultiPoly::variable({"x", "y"}, 0);
  const MultiPoly y = MultiPoly::variable({"x", "y"}, 1);
  EXPECT_EQ(pow(x + y, 2), parse_polynomial("x^2 + 2*x*y + y^2", {"x", "y"}));
  EXPECT_THROW(x + MultiPoly::variable({"a"}, 0), Error);
  EXPECT_EQ((x * y - y * x).is_zero(), true);
}

// Properties, checked against dense schoolbook arithmetic on the test side.

class SeriesProperties : public ::testing::TestWithParam<int> {};

TEST_P(SeriesProperties, RingAxioms) {
  gen::Rng rng(1000 + GetParam());
  const int prec = gen::uniform(rng, 3, 9);
  const Series2 a = gen::series(rng, prec), b = gen::series(rng, prec), c = gen::series(rng, prec);
  EXPECT_EQ((a * b) * c, a * (b * c));
  EXPECT_EQ(a * b, b * a);
  EXPECT_EQ(a + b, b + a);
  EXPECT_EQ(a * (b + c), a * b + a * c);
  EXPECT_EQ(oracle::Dense::from(a * b, prec), oracle::Dense::from(a, prec) * oracle::Dense::from(b, prec));
  EXPECT_EQ(oracle::Dense::from(a + c, prec), oracle::Dense::from(a, prec) + oracle::Dense::from(c, prec));
}

TEST_P(SeriesProperties, OrderIsAdditive) {
  gen::Rng rng(2000 + GetParam());
  const int prec = gen::uniform(rng, 4, 10);
  const Series2 a = gen::series(rng, prec, gen::uniform(rng, 0, 2));
  const Series2 b = gen::series(rng, prec, gen::uniform(rng, 0, 2));
  if (a.is_zero() || b.is_zero()) return;
  const int oa = a.order().value(), ob = b.order().value();
  if (oa + ob < prec) {
    EXPECT_EQ((a * b).order(), Order::exactly(oa + ob));
  }
  else EXPECT_FALSE((a * b).order().is_exact());
  EXPECT_EQ(a.order().value(), oracle::Dense::from(a, prec).order());
}

TEST_P(SeriesProperties, TruncationCoherence) {
  gen::Rng rng(3000 + GetParam());
  const int n = gen::uniform(rng, 4, 10);
  const int m = gen::uniform(rng, 1, n);
  const Series2 a = gen::series(rng, n), b = gen::series(rng, n), c = gen::series(rng, n);
  const Series2 high = (a * b + c) * a;
  const Series2 low = (a.truncated(m) * b.truncated(m) + c.truncated(m)) * a.truncated(m);
  EXPECT_EQ(high.truncated(m), low);
}

TEST_P(SeriesProperties, InverseRoundTrip) {
  gen::Rng rng(4000 + GetParam());
  const int prec = gen::uniform(rng, 2, 9);
  const Series2 u = gen::unit(rng, prec);
  EXPECT_EQ(u * invert_unit(u), Series2::constant(prec, 1));
}

TEST_P(SeriesProperties, RegularizedOrderPreserved) {
  gen::Rng rng(5000 + GetParam());
  const int prec = 8;
  std::vector<Series2> fam;
  for (int k = 0; k < 2; ++k) {
    Series2 s = gen::series(rng, prec, 1, 3);
    if (s.is_zero()) s = S("t", prec);
    fam.push_back(s);
  }
  const auto r = z_regularize(fam);
  for (std::size_t k = 0; k < fam.size(); ++k) {
    const int o = fam[k].order().value();
    EXPECT_EQ(r.transformed[k].order(), Order::exactly(o));
    EXPECT_NE(r.transformed[k].coefficient({0, o}), 0);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeded, SeriesProperties, ::testing::Range(0, 40));
