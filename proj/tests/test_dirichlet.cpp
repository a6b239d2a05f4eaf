#include <dihedral/lvalue.hpp>

#include <gtest/gtest.h>

#include "oracles.hpp"

#include <set>

using namespace dihedral;

namespace {

constexpr long kBits = 256;

double rel(const Complex& a, const Complex& b) { return log2_abs(rel_error(a, b)); }

std::vector<DirichletChar> primitive_chars(i64 c) {
  std::vector<DirichletChar> out;
  for (i64 i = 0; i < DirichletChar::count(c); ++i) {
    auto chi = DirichletChar::from_index(c, i);
    if (chi.is_primitive()) out.push_back(chi);
  }
  return out;
}

TEST(Dirichlet, CharacterGroupStructure) {
  for (i64 N = 1; N <= 40; ++N) {
    std::set<std::vector<std::string>> tables;
    for (i64 i = 0; i < DirichletChar::count(N); ++i) {
      auto chi = DirichletChar::from_index(N, i);
      std::vector<std::string> t;
      for (i64 r = 0; r < N; ++r) {
        auto e = chi.exponent(r);
        EXPECT_EQ(e.has_value(), std::gcd(r, N) == 1 || N == 1);
        t.push_back(e ? mpq_class(*e, chi.value_order()).get_str() : "-");
      }
      tables.insert(t);
      // complete multiplicativity
      for (i64 a = 1; a < N; ++a)
        for (i64 b = 1; b < N; ++b) EXPECT_EQ(chi.value(a * b), chi.value(a) * chi.value(b));
      // the primitive part induces chi
      EXPECT_EQ(chi.primitive().induce(N), chi);
    }
    EXPECT_EQ(static_cast<i64>(tables.size()), euler_phi(N)) << N;
  }
}

TEST(Dirichlet, GaussSumExamples) {
  auto chi4 = DirichletChar::from_index(4, 1);
  EXPECT_EQ(gauss_sum_exact(chi4), Cyclo::root(4, 1) * mpq_class(2));
  EXPECT_LT(rel(gauss_sum(chi4, kBits), Complex(0, 2, kBits)), -250);
  EXPECT_EQ(gauss_sum_exact(DirichletChar(1)), Cyclo::integer(1, 1));
  auto chi8 = chi4.induce(8);
  EXPECT_EQ(chi8.conductor(), 4);
  EXPECT_LT(rel(gauss_sum(chi8, kBits), Complex(0, 2, kBits)), -250);
}

TEST(Dirichlet, GaussSumAgainstDoubleOracle) {
  for (i64 c : {5, 7, 8, 12, 13}) {
    for (const auto& chi : primitive_chars(c)) {
      std::vector<std::complex<double>> vals;
      for (i64 u = 0; u < c; ++u) {
        auto e = chi.exponent(u);
        vals.push_back(e ? std::polar(1.0, 2 * M_PI * static_cast<double>(*e) / static_cast<double>(chi.value_order())) : 0.0);
      }
      auto o = oracle::gauss_sum(vals);
      Complex g = gauss_sum(chi, 64);
      EXPECT_NEAR(g.re.to_double(), o.real(), 1e-9);
      EXPECT_NEAR(g.im.to_double(), o.imag(), 1e-9);
    }
  }
}

TEST(Dirichlet, GaussSumNormAndConjugateProduct) {
  for (i64 c = 3; c <= 50; ++c)
    for (const auto& chi : primitive_chars(c)) {
      Complex g = gauss_sum(chi, kBits);
      Real n2 = g.re * g.re + g.im * g.im;
      EXPECT_LT(log2_abs(abs(n2 - Real(c, kBits))) - log2_abs(Real(c, kBits)), -100) << chi.describe();
      Cyclo prod = gauss_sum_exact(chi) * gauss_sum_exact(chi.conj());
      EXPECT_EQ(prod, Cyclo::integer(prod.order(), chi.parity() ? -c : c)) << chi.describe();
    }
}

TEST(Dirichlet, BernoulliExamples) {
  auto chi4 = DirichletChar::from_index(4, 1);
  EXPECT_EQ(bernoulli_gen(1, chi4), Cyclo::integer(1, 0) + Cyclo(chi4.value_order(), mpq_class(-1, 2)));
  EXPECT_EQ(bernoulli_gen(2, DirichletChar(1)).rational(), mpq_class(1, 6));
  EXPECT_THROW(bernoulli_gen(1, chi4.induce(8)), std::invalid_argument);
}

TEST(Dirichlet, BernoulliEquivariance) {
  for (i64 idx = 0; idx < 4; ++idx) {
    auto chi = DirichletChar::from_index(5, idx);
    if (!chi.is_primitive()) continue;
    for (int m = 1; m <= 6; ++m) {
      for (i64 b : {1, 3}) {
        Cyclo lhs = bernoulli_gen(m, conjugate_char(chi, b));
        Cyclo rhs = bernoulli_gen(m, chi).galois(b);
        EXPECT_EQ(lhs, rhs) << m << " " << b;
      }
    }
  }
}

TEST(Dirichlet, ConjugateChar) {
  auto chi = DirichletChar::from_index(5, 1);
  ASSERT_EQ(chi.value_order(), 4);
  EXPECT_EQ(conjugate_char(chi, 1), chi);
  EXPECT_EQ(conjugate_char(chi, 3), chi.conj());
  EXPECT_THROW(conjugate_char(chi, 2), std::invalid_argument);
  auto q = DirichletChar::kronecker_char(-7);
  for (i64 b : {1, 3, 5}) EXPECT_EQ(conjugate_char(q, b), q);
}

TEST(Dirichlet, ClosedFormExamples) {
  auto chi4 = DirichletChar::from_index(4, 1);
  EXPECT_LT(rel(dirichlet_L(1, chi4, kBits), Complex(pi(kBits) / 4L)), -250);
  EXPECT_THROW(dirichlet_L(2, chi4, kBits), std::domain_error);
  // zeta(2), zeta(4)
  EXPECT_LT(rel(dirichlet_L(2, DirichletChar(1), kBits), Complex(pi(kBits) * pi(kBits) / 6L)), -250);
  Real p4 = pow(pi(kBits), 4L);
  EXPECT_LT(rel(dirichlet_L(4, DirichletChar(1), kBits), Complex(p4 / 90L)), -250);
}

// Leibniz partial sums with the alternating-series midpoint bound, in long double.
TEST(Dirichlet, LeibnizOracle) {
  long double s = 0;
  const long N = 2000000;
  for (long n = 0; n < N; ++n) s += (n % 2 ? -1.0L : 1.0L) / (2 * n + 1);
  long double mid = s + (N % 2 ? -0.5L : 0.5L) / (2 * N + 1);
  auto v = dirichlet_L(1, DirichletChar::from_index(4, 1), 128);
  EXPECT_NEAR(static_cast<double>(mid), v.re.to_double(), 1e-12);
}

TEST(Dirichlet, ClosedFormMatchesSeries) {
  for (i64 c = 3; c <= 13; ++c)
    for (const auto& chi : primitive_chars(c))
      for (int m = 1; m <= 8; ++m) {
        if ((m - chi.parity()) % 2 != 0) continue;
        LFunction L(dirichlet_spec(chi));
        Complex direct = L.dirichlet_sum(Complex(Real(static_cast<long>(m), kBits)), kBits);
        EXPECT_LT(rel(dirichlet_L(m, chi, kBits), direct), -(kBits - 16)) << chi.describe() << " m=" << m;
      }
}

TEST(Dirichlet, ImprimitiveClosedFormHasEulerCorrection) {
  auto chi = DirichletChar::from_index(4, 1).induce(12);
  LFunction L(dirichlet_spec(chi.primitive()));
  Complex full = dirichlet_L(3, chi.primitive(), kBits);
  // remove the Euler factor at 3: (1 - chi(3) 3^-3) = 1 + 1/27
  Complex expect = full * Real(mpq_class(28, 27), kBits);
  EXPECT_LT(rel(dirichlet_L(3, chi, kBits), expect), -250);
}

TEST(Dirichlet, NonpositiveValues) {
  // L(0, chi_4) = 1/2, zeta(-1) = -1/12
  EXPECT_EQ(dirichlet_L_nonpositive(1, DirichletChar::from_index(4, 1)).rational(), mpq_class(1, 2));
  EXPECT_EQ(dirichlet_L_nonpositive(2, DirichletChar(1)).rational(), mpq_class(-1, 12));
}

TEST(Dirichlet, GaussQuotientExamples) {
  auto chi4 = DirichletChar::from_index(4, 1);
  auto chi5 = DirichletChar::from_index(5, 1);
  EXPECT_EQ(gauss_quotient_exact(chi5, DirichletChar(1)), Cyclo::integer(1, 1));
  EXPECT_EQ(gauss_quotient_exact(chi4, chi4), Cyclo::integer(1, -4));
  EXPECT_LT(rel(gauss_quotient(chi4, chi4, kBits), Complex(-4, 0, kBits)), -250);
}

// sigma(gamma(a) gamma(b) / gamma(ab)) = gamma(a^s) gamma(b^s) / gamma(a^s b^s)
TEST(Dirichlet, GaussQuotientEquivariance) {
  auto chi4 = DirichletChar::from_index(4, 1);
  auto chi5 = DirichletChar::from_index(5, 1);
  for (i64 b = 1; b < 20; ++b) {
    if (std::gcd(b, 20) != 1) continue;
    Cyclo q = gauss_quotient_exact(chi5, chi4);
    Cyclo qs = gauss_quotient_exact(conjugate_char(chi5, b), conjugate_char(chi4, b));
    EXPECT_EQ(q.lift(20).galois(b), qs.lift(20)) << b;
  }
}

}  // namespace
