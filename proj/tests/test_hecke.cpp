#include <dihedral/hecke.hpp>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace dihedral;

namespace {

using Gen = HeckeChar::Generator;

HeckeChar d7_k3() { return HeckeChar::build(QuadField(-7), 3, QuadField(-7).unit_ideal(), {}, 1); }
// conductor a prime above 5 in Z[i]; i generates (O/p)^x
HeckeChar d4_k4() { return HeckeChar::build(QuadField(-4), 4, QuadIdeal{1, 5, 4}, {Gen{{0, 1}, 1}}, 4); }
HeckeChar d3_k7() { return HeckeChar::build(QuadField(-3), 7, QuadField(-3).unit_ideal(), {}, 1); }

std::vector<HeckeChar> samples() { return {d7_k3(), d4_k4(), d3_k7(), HeckeChar::build(QuadField(-4), 5, QuadField(-4).unit_ideal(), {}, 1)}; }

TEST(Hecke, BuildExamples) {
  EXPECT_NO_THROW(d7_k3());
  EXPECT_NO_THROW(HeckeChar::build(QuadField(-4), 5, QuadField(-4).unit_ideal(), {}, 1));
  try {
    HeckeChar::build(QuadField(-4), 3, QuadField(-4).unit_ideal(), {}, 1);
    FAIL() << "expected a unit error";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("unit i"), std::string::npos) << e.what();
  }
  EXPECT_THROW(HeckeChar::build(QuadField(-23), 3, QuadIdeal{1, 1, 1}, {}, 1), std::domain_error);
  EXPECT_THROW(HeckeChar::build(QuadField(-7), 1, QuadField(-7).unit_ideal(), {}, 1), std::invalid_argument);
  // the same prime with the wrong exponent breaks unit compatibility
  EXPECT_THROW(HeckeChar::build(QuadField(-4), 4, QuadIdeal{1, 5, 4}, {Gen{{0, 1}, 2}}, 4), std::invalid_argument);
  // generator not coprime to the conductor
  EXPECT_THROW(HeckeChar::build(QuadField(-4), 4, QuadIdeal{1, 5, 4}, {Gen{{5, 0}, 1}}, 4), std::invalid_argument);
}

TEST(Hecke, Weights) {
  auto chi = d7_k3();
  EXPECT_EQ(chi.weight(), 3);
  EXPECT_EQ(chi.infinity_weight(), 2);
  EXPECT_EQ(chi.power(2).weight(), 5);
  EXPECT_EQ(d4_k4().level(), 20);
}

TEST(Hecke, ValueIndependentOfGenerator) {
  for (const auto& chi : samples()) {
    const QuadField& K = chi.field();
    for (i64 x = -6; x <= 6; ++x)
      for (i64 y = -6; y <= 6; ++y) {
        QuadInt a{x, y};
        if (K.norm(a) == 0 || !chi.coprime(a)) continue;
        auto v = chi.lambda_element(a);
        for (const auto& u : K.units()) EXPECT_EQ(*chi.lambda_element(K.mul(u, a)), *v) << chi.describe();
        EXPECT_EQ(*chi.lambda(K.ideal_of(a)), *v);
      }
  }
}

TEST(Hecke, UnramifiedValuesAreAlphaPowers) {
  // lambda((alpha)) = alpha^2 for D = -7; compare with a double-precision embedding
  auto chi = d7_k3();
  for (i64 n = 1; n <= 60; ++n)
    for (const auto& e : oracle::elements_of_norm(-7, n)) {
      auto z = std::pow(oracle::embed(-7, e), 2);
      // oracle coordinates are halves of (x2 + y2 sqrt D); convert to x + y tau with tau = (1 + sqrt D)/2
      QuadInt a{(e.x2 - e.y2) / 2, e.y2};
      Complex v = chi.lambda_element(a)->embed(64);
      EXPECT_NEAR(v.re.to_double(), static_cast<double>(z.real()), 1e-9);
      EXPECT_NEAR(v.im.to_double(), static_cast<double>(z.imag()), 1e-9);
    }
}

TEST(Hecke, AbsoluteValueAndMultiplicativity) {
  for (const auto& chi : samples()) {
    const QuadField& K = chi.field();
    auto ideals = K.enumerate_ideals(150);
    for (const auto& [I, n] : ideals) {
      auto v = chi.lambda(I);
      if (!v) continue;
      // |lambda|^2 = N^{k-1}
      mpz_class nk;
      mpz_pow_ui(nk.get_mpz_t(), mpz_class(n).get_mpz_t(), static_cast<unsigned long>(chi.weight() - 1));
      EXPECT_EQ(*v * v->conj(), Cyclo(v->order(), mpq_class(nk)));
    }
    for (const auto& [I, n] : ideals)
      for (const auto& [J, m] : ideals) {
        if (n * m > 150 || std::gcd(n, m) != 1) continue;
        auto a = chi.lambda(I), b = chi.lambda(J);
        if (!a || !b) continue;
        EXPECT_EQ(*chi.lambda(K.multiply(I, J)), *a * *b);
      }
  }
}

TEST(Hecke, PowerRaisesValues) {
  for (const auto& chi : samples()) {
    EXPECT_EQ(chi.power(1), chi);
    for (int n : {2, 3}) {
      auto cn = chi.power(n);
      EXPECT_EQ(cn.infinity_weight(), n * chi.infinity_weight());
      for (i64 p : primes_upto(100))
        for (const auto& P : chi.field().primes_above(p)) {
          if (P.norm() >= 100) continue;
          auto v = chi.lambda(P);
          if (!v) continue;
          EXPECT_EQ(cn.lambda(P)->lift(v->order()), v->pow(n)) << n << " " << p;
        }
    }
  }
}

TEST(Hecke, ConjugateIsInvolutionAndProductDependsOnNorm) {
  for (const auto& chi : samples()) {
    auto c = chi.galois_conjugate();
    EXPECT_EQ(c.galois_conjugate(), chi);
    const QuadField& K = chi.field();
    for (const auto& [I, n] : K.enumerate_ideals(120)) {
      auto v = chi.lambda(K.conj(I));
      if (!v) continue;
      EXPECT_EQ(*c.lambda(I), *v);
    }
    auto prod = chi * c;
    for (i64 n = 1; n <= 120; ++n) {
      std::optional<Cyclo> first;
      for (const auto& I : K.ideals_of_norm(n)) {
        auto v = prod.lambda(I);
        if (!v) continue;
        if (!first) first = v;
        EXPECT_EQ(*v, *first) << n;
      }
    }
  }
}

TEST(Hecke, PowersAreNeverGaloisInvariant) {
  for (const auto& chi : samples())
    for (int n = 1; n <= 6; ++n) EXPECT_FALSE(chi.power(n).is_galois_invariant()) << chi.describe() << " n=" << n;
  // the weight-one case is where invariance can occur: the norm character N^1 has type (1, 1)
  auto N = d7_k3() * d7_k3().galois_conjugate();
  EXPECT_EQ(N.p(), N.q());
  EXPECT_TRUE(N.is_galois_invariant());
}

TEST(Hecke, GaloisActionConjugatesValues) {
  for (const auto& chi : samples()) {
    i64 L = chi.value_order();
    for (i64 b = 1; b < L; ++b) {
      if (std::gcd(b, L) != 1) continue;
      auto cs = chi.galois_action(b);
      EXPECT_EQ(cs.value_order(), L);
      for (const auto& [I, n] : chi.field().enumerate_ideals(60)) {
        auto v = chi.lambda(I);
        if (!v) continue;
        EXPECT_EQ(*cs.lambda(I), v->galois(b)) << chi.describe() << " b=" << b;
      }
    }
    EXPECT_THROW(chi.galois_action(L), std::invalid_argument);
  }
}

TEST(Hecke, NebentypusParity) {
  for (const auto& chi : samples()) {
    auto om = chi.nebentypus();
    EXPECT_EQ(om.parity(), chi.weight() % 2) << chi.describe();
    // omega * omega_K = chi_Q as value tables
    auto lhs = om * chi.field().omega();
    auto rhs = chi.restrict_to_Q();
    i64 N = lcm(lhs.modulus(), rhs.modulus());
    for (i64 n = 1; n < N; ++n) {
      if (std::gcd(n, N) != 1) continue;
      EXPECT_EQ(lhs.value(n), rhs.value(n)) << n;
    }
  }
  // unramified: chi_Q is trivial, so the nebentypus is omega_K
  auto chi = d7_k3();
  EXPECT_TRUE(chi.restrict_to_Q().is_trivial());
  for (i64 p : primes_upto(50)) EXPECT_EQ(chi.nebentypus().real_value(p), QuadField(-7).omega_value(p));
}

TEST(Hecke, PrimitiveAndTwist) {
  QuadField K(-7);
  // trivial finite part written at modulus (3); the listed residues span (O/3)^x
  auto wide = HeckeChar::build(K, 3, QuadIdeal{3, 1, 1}, {Gen{{0, 1}, 0}, Gen{{1, 1}, 0}, Gen{{2, 1}, 0}, Gen{{-1, 0}, 0}}, 1);
  EXPECT_FALSE(wide.is_primitive());
  EXPECT_EQ(wide.primitive().modulus(), K.unit_ideal());
  EXPECT_TRUE(d4_k4().is_primitive());
  // twisting by a character mod 3 (3 inert) gives conductor (3)
  auto xi = DirichletChar::from_index(3, 1);
  auto t = d7_k3().twist(xi);
  EXPECT_TRUE(t.is_primitive());
  EXPECT_EQ(t.modulus().norm(), 9);
  for (const auto& [I, n] : K.enumerate_ideals(80)) {
    if (n % 3 == 0) continue;
    EXPECT_EQ(*t.lambda(I), d7_k3().lambda(I)->lift(t.value_order()) * Cyclo::integer(t.value_order(), xi.real_value(n)));
  }
}

}  // namespace
