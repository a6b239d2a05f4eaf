#include <dihedral/cmform.hpp>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace dihedral;

namespace {

using Gen = HeckeChar::Generator;

CMForm d7_k3() { return CMForm(HeckeChar::build(QuadField(-7), 3, QuadField(-7).unit_ideal(), {}, 1)); }
CMForm d4_k5() { return CMForm(HeckeChar::build(QuadField(-4), 5, QuadField(-4).unit_ideal(), {}, 1)); }
CMForm d3_k7() { return CMForm(HeckeChar::build(QuadField(-3), 7, QuadField(-3).unit_ideal(), {}, 1)); }
CMForm d4_k4() { return CMForm(HeckeChar::build(QuadField(-4), 4, QuadIdeal{1, 5, 4}, {Gen{{0, 1}, 1}}, 4)); }

std::vector<CMForm> samples() { return {d7_k3(), d4_k5(), d3_k7(), d4_k4()}; }

TEST(CMForm, SmallCoefficients) {
  auto f = d7_k3();
  auto a = f.coefficients(10);
  EXPECT_EQ(a[1], Cyclo::integer(1, 1));
  EXPECT_EQ(a[2], Cyclo::integer(1, -3));
  EXPECT_TRUE(a[3].is_zero());
  EXPECT_EQ(f.weight(), 3);
  EXPECT_EQ(f.level(), 7);
  EXPECT_EQ(f.nebentypus().parity(), 1);
}

TEST(CMForm, ThetaSeriesOracle) {
  struct Case {
    CMForm f;
    i64 D;
  };
  for (const auto& [f, D] : std::vector<Case>{{d7_k3(), -7}, {d4_k5(), -4}, {d3_k7(), -3}}) {
    auto a = f.coefficients(200);
    for (i64 n = 1; n <= 200; ++n) {
      auto o = oracle::theta_coefficient(D, f.weight(), n);
      Complex v = a[static_cast<std::size_t>(n)].embed(64);
      double scale = std::max(1.0L, std::abs(o));
      EXPECT_NEAR(v.re.to_double(), static_cast<double>(o.real()), 1e-9 * scale) << D << " " << n;
      EXPECT_NEAR(v.im.to_double(), static_cast<double>(o.imag()), 1e-9 * scale) << D << " " << n;
    }
  }
}

TEST(CMForm, EulerProductMatchesIdealSum) {
  for (const auto& f : samples()) {
    auto a = f.coefficients(300);
    for (i64 n = 1; n <= 300; ++n) EXPECT_EQ(a[static_cast<std::size_t>(n)], f.coefficient_by_ideals(n)) << n;
  }
}

TEST(CMForm, UnramifiedCoefficientsAreIntegers) {
  for (const auto& f : {d7_k3(), d4_k5(), d3_k7()})
    for (const auto& c : f.coefficients(300)) {
      ASSERT_TRUE(c.is_rational());
      EXPECT_EQ(c.rational().get_den(), 1);
    }
}

TEST(CMForm, HeckeRelations) {
  for (const auto& f : samples()) {
    auto a = f.coefficients(400);
    auto at = [&](i64 n) { return a[static_cast<std::size_t>(n)]; };
    for (i64 m = 1; m <= 20; ++m)
      for (i64 n = 1; n <= 20; ++n)
        if (std::gcd(m, n) == 1) {
          EXPECT_EQ(at(m * n), at(m) * at(n));
        }
    for (i64 p : primes_upto(19)) {
      if (!f.is_good(p)) continue;
      Cyclo c = f.nebentypus().value(p) * mpq_class(mpz_class(static_cast<unsigned long>(std::pow(p, f.weight() - 1))));
      for (i64 pr = p, prev = 1; pr * p <= 400; prev = pr, pr *= p) EXPECT_EQ(at(pr * p), at(p) * at(pr) - c * at(prev)) << p;
    }
  }
}

TEST(CMForm, EulerFactors) {
  for (const auto& f : samples()) {
    const QuadField& K = f.field();
    for (i64 p : primes_upto(60)) {
      auto ef = f.euler_factor(p);
      auto a = f.coefficients(p);
      EXPECT_EQ(ef.a, a[static_cast<std::size_t>(p)]);
      if (f.is_good(p)) {
        mpz_class pk;
        mpz_pow_ui(pk.get_mpz_t(), mpz_class(p).get_mpz_t(), static_cast<unsigned long>(f.weight() - 1));
        EXPECT_EQ(ef.c, f.nebentypus().value(p) * mpq_class(pk)) << p;
        if (K.splitting(p) == Splitting::inert) {
          EXPECT_TRUE(ef.a.is_zero());
        }
      } else {
        // beta_p = 0 at bad p
        EXPECT_TRUE(ef.c.is_zero()) << p;
      }
      if (ef.roots) {
        EXPECT_EQ(ef.roots->first + ef.roots->second, ef.a);
        EXPECT_EQ(ef.roots->first * ef.roots->second, ef.c);
      }
    }
  }
  // split p = P Pbar: a_p = lambda(P) + lambda(Pbar)
  auto f = d7_k3();
  auto P = f.field().primes_above(11);
  ASSERT_EQ(P.size(), 2u);
  EXPECT_EQ(f.euler_factor(11).a, *f.character().lambda(P[0]) + *f.character().lambda(P[1]));
}

TEST(CMForm, RamanujanBoundInEveryEmbedding) {
  for (const auto& f : samples()) {
    auto a = f.coefficients(200);
    i64 L = f.value_order();
    for (i64 p : primes_upto(200)) {
      if (!f.is_good(p)) continue;
      for (i64 b = 1; b < L; ++b) {
        if (std::gcd(b, L) != 1) continue;
        Complex z = a[static_cast<std::size_t>(p)].galois(b).embed(128);
        double lhs = log2_abs(abs(z));
        double rhs = 1.0 + 0.5 * (f.weight() - 1) * std::log2(static_cast<double>(p));
        EXPECT_LE(lhs, rhs + 1e-12) << p << " " << b;
      }
    }
  }
}

TEST(CMForm, Twists) {
  auto f = d7_k3();
  auto a = f.coefficients(500);
  // trivial twist
  auto t0 = f.twist(DirichletChar(1)).coefficients(500);
  for (i64 n = 1; n <= 500; ++n) EXPECT_EQ(t0[static_cast<std::size_t>(n)], a[static_cast<std::size_t>(n)]);
  // twist by a character mod 3 against direct scaling
  auto xi = DirichletChar::from_index(3, 1);
  auto t = f.twist(xi).coefficients(500);
  for (i64 n = 1; n <= 500; ++n) {
    if (n % 3 == 0) continue;
    EXPECT_EQ(t[static_cast<std::size_t>(n)], a[static_cast<std::size_t>(n)] * xi.value(n)) << n;
  }
  // omega_K o N is trivial on ideals prime to D, so the twisted series is unchanged
  auto tk = CMForm(f.character().twist(f.field().omega())).coefficients(500);
  for (i64 n = 1; n <= 500; ++n) EXPECT_EQ(tk[static_cast<std::size_t>(n)], a[static_cast<std::size_t>(n)]) << n;
  EXPECT_THROW(f.twist(f.field().omega()), std::invalid_argument);
}

}  // namespace
