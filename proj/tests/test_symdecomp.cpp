#include <dihedral/symdecomp.hpp>

#include <gtest/gtest.h>

#include <complex>

using namespace dihedral;

namespace {

using Gen = HeckeChar::Generator;
using cd = std::complex<double>;

HeckeChar d7_k3() { return HeckeChar::build(QuadField(-7), 3, QuadField(-7).unit_ideal(), {}, 1); }
HeckeChar d4_k4() { return HeckeChar::build(QuadField(-4), 4, QuadIdeal{1, 5, 4}, {Gen{{0, 1}, 1}}, 4); }
HeckeChar d3_k7() { return HeckeChar::build(QuadField(-3), 7, QuadField(-3).unit_ideal(), {}, 1); }
HeckeChar d8_k3() { return HeckeChar::build(QuadField(-8), 3, QuadField(-8).unit_ideal(), {}, 1); }

std::vector<HeckeChar> samples() { return {d7_k3(), d4_k4(), d3_k7(), d8_k3()}; }

cd to_cd(const Cyclo& c) {
  Complex z = c.embed(80);
  return {z.re.to_double(), z.im.to_double()};
}

// prod (1 - r_i X) in doubles
std::vector<cd> expand(const std::vector<cd>& roots) {
  std::vector<cd> p{1.0};
  for (cd r : roots) {
    p.push_back(0.0);
    for (std::size_t i = p.size() - 1; i > 0; --i) p[i] -= r * p[i - 1];
  }
  return p;
}

TEST(SymDecomp, SymFactorDegreeAndFirstPower) {
  CMForm f(d7_k3());
  for (i64 p : {2L, 3L, 11L, 13L})
    for (int n = 1; n <= 8; ++n) {
      auto P = sym_euler_factor(f, p, n);
      trim(P);
      EXPECT_EQ(P.size(), static_cast<std::size_t>(n + 2)) << p << " " << n;
    }
  for (i64 p : primes_upto(50)) {
    if (!f.is_good(p)) continue;
    EXPECT_TRUE(poly_equal(sym_euler_factor(f, p, 1), f.euler_factor(p).poly())) << p;
  }
  EXPECT_THROW(sym_euler_factor(f, 7, 2), std::invalid_argument);
  EXPECT_THROW(sym_euler_factor(f, 9, 2), std::invalid_argument);
}

TEST(SymDecomp, SymFactorAgainstRootExpansion) {
  for (const auto& chi : samples()) {
    CMForm f(chi);
    for (i64 p : primes_upto(40)) {
      if (!f.is_good(p)) continue;
      auto ef = f.euler_factor(p);
      for (int n = 1; n <= 6; ++n) {
        auto P = sym_euler_factor(f, p, n);
        if (ef.roots) {
          // exact: multiply out the linear factors
          i64 L = f.value_order();
          CycloPoly q{Cyclo::integer(L, 1)};
          for (int i = 0; i <= n; ++i) q = poly_mul(q, {Cyclo::integer(L, 1), -(ef.roots->first.pow(i) * ef.roots->second.pow(n - i))});
          EXPECT_TRUE(poly_equal(P, q)) << p << " " << n;
        }
        // numeric: roots of X^2 - a X + c in doubles
        cd a = to_cd(ef.a), c = to_cd(ef.c);
        cd disc = std::sqrt(a * a - 4.0 * c);
        cd al = (a + disc) / 2.0, be = (a - disc) / 2.0;
        std::vector<cd> roots;
        for (int i = 0; i <= n; ++i) roots.push_back(std::pow(al, i) * std::pow(be, n - i));
        auto q = expand(roots);
        P.resize(q.size(), Cyclo(f.value_order()));
        for (std::size_t i = 0; i < q.size(); ++i) {
          cd v = to_cd(P[i]);
          EXPECT_LE(std::abs(v - q[i]), 1e-9 * std::max(1.0, std::abs(q[i]))) << p << " " << n << " " << i;
        }
      }
    }
  }
}

TEST(SymDecomp, ProductOfRoots) {
  for (const auto& chi : samples()) {
    CMForm f(chi);
    for (i64 p : primes_upto(60)) {
      if (!f.is_good(p)) continue;
      Cyclo c = f.euler_factor(p).c;
      for (int n = 1; n <= 6; ++n) {
        auto P = sym_euler_factor(f, p, n);
        Cyclo top = c.pow(n * (n + 1) / 2);
        EXPECT_EQ(P[static_cast<std::size_t>(n + 1)], (n + 1) % 2 ? -top : top) << p << " " << n;
      }
    }
  }
}

TEST(SymDecomp, IsobaricShapes) {
  auto chi = d7_k3();
  auto d2 = isobaric_decomposition(chi, 2);
  ASSERT_EQ(d2.size(), 2u);
  EXPECT_EQ(d2[0].kind, IsobaricComponent::Kind::gl2);
  EXPECT_EQ(*d2[0].psi, chi.power(2));
  EXPECT_EQ(d2[1].kind, IsobaricComponent::Kind::gl1);
  EXPECT_EQ(d2[1].shift, 2);
  EXPECT_EQ(*d2[1].gl1, chi.restrict_to_Q());

  auto d3 = isobaric_decomposition(chi, 3);
  ASSERT_EQ(d3.size(), 2u);
  EXPECT_EQ(*d3[0].psi, chi.power(3));
  EXPECT_EQ(*d3[1].psi, chi.power(2) * chi.galois_conjugate());
  EXPECT_EQ(d3[1].shift, 2);

  auto d4 = isobaric_decomposition(chi, 4);
  ASSERT_EQ(d4.size(), 3u);
  EXPECT_EQ(*d4[1].psi, chi.power(3) * chi.galois_conjugate());
  EXPECT_EQ(d4[2].kind, IsobaricComponent::Kind::gl1);
  EXPECT_EQ(*d4[2].gl1, chi.restrict_to_Q().pow(2));

  for (const auto& c : samples())
    for (int n = 1; n <= 8; ++n) {
      int deg = 0;
      for (const auto& x : isobaric_decomposition(c, n)) deg += x.kind == IsobaricComponent::Kind::gl1 ? 1 : 2;
      EXPECT_EQ(deg, n + 1);
    }
}

TEST(SymDecomp, WeightOneHasNoDecomposition) {
  // the norm character has type (1, 1): Galois invariant
  auto N = d7_k3() * d7_k3().galois_conjugate();
  EXPECT_THROW(isobaric_decomposition(N, 2), std::domain_error);
}

TEST(SymDecomp, FactorizationHoldsExactly) {
  for (const auto& chi : samples()) {
    CMForm f(chi);
    for (int n = 1; n <= 6; ++n)
      for (i64 p : primes_upto(120)) {
        if (!f.is_good(p)) continue;
        for (auto model : {TwistModel::direct, TwistModel::omega_omegaK}) {
          auto r = factorization_check(chi, n, p, model);
          EXPECT_TRUE(r.ok) << chi.describe() << " n=" << n << " p=" << p << " " << r.variant;
        }
      }
  }
}

TEST(SymDecomp, CorruptedFactorIsCaught) {
  for (int n = 1; n <= 4; ++n) {
    auto r = factorization_check(d7_k3(), n, 2, TwistModel::direct, true);
    EXPECT_FALSE(r.ok) << n;
    EXPECT_FALSE(poly_equal(r.lhs, r.rhs));
  }
}

TEST(SymDecomp, RankinSelbergHoldsExactly) {
  for (const auto& chi : samples()) {
    CMForm f(chi);
    for (int n = 1; n <= 4; ++n)
      for (i64 p : primes_upto(200)) {
        if (!f.is_good(p)) continue;
        auto r = rankin_selberg_check(chi, n, p);
        EXPECT_TRUE(r.ok) << chi.describe() << " n=" << n << " p=" << p;
        EXPECT_EQ(r.lhs.size(), 5u);
      }
  }
  EXPECT_THROW(rankin_selberg_check(d7_k3(), 2, 7), std::invalid_argument);
}

TEST(SymDecomp, InfinityTypes) {
  using K = WRComponent::Kind;
  EXPECT_EQ(sym_infinity_type(5, 1), (std::vector<WRComponent>{{K::induced, 4, 0}}));
  EXPECT_EQ(sym_infinity_type(3, 2), (std::vector<WRComponent>{{K::trivial, 0, 0}, {K::induced, 4, 0}}));
  EXPECT_EQ(sym_infinity_type(4, 2), (std::vector<WRComponent>{{K::sign, 0, 0}, {K::induced, 6, 0}}));
  EXPECT_EQ(sym_infinity_type(3, 3), (std::vector<WRComponent>{{K::induced, 2, 0}, {K::induced, 6, 0}}));
  for (int k = 2; k <= 12; ++k)
    for (int n = 1; n <= 8; ++n) {
      int d = 0;
      for (const auto& c : sym_infinity_type(k, n)) d += c.dim();
      EXPECT_EQ(d, n + 1);
    }
}

TEST(SymDecomp, ArchimedeanFactors) {
  using K = WRComponent::Kind;
  const long bits = 128;
  Complex v = archimedean_factor(Complex(2, 0, bits), WRComponent{K::trivial, 0, 0}, bits);
  EXPECT_LT(log2_abs(rel_error(v, Complex(Real(1L, bits) / pi(bits)))), -120);
  // I(chi_l): 2 (2 pi)^{-(s + l/2)} Gamma(s + l/2) at s = 1, l = 2
  Complex w = archimedean_factor(Complex(1, 0, bits), WRComponent{K::induced, 2, 0}, bits);
  Real expect = Real(2L, bits) / pow(pi(bits) * 2L, 2L);
  EXPECT_LT(log2_abs(rel_error(w, Complex(expect))), -120);

  auto ps = poles(WRComponent{K::sign, 0, 0});
  EXPECT_EQ(ps.start, -1);
  EXPECT_EQ(ps.step, 2);
  auto pi4 = poles(WRComponent{K::induced, 4, 0});
  EXPECT_EQ(pi4.start, -2);
  EXPECT_EQ(pi4.step, 1);
  for (int s : {-1, -3, -5}) EXPECT_TRUE(has_pole(WRComponent{K::sign, 0, 0}, s));
  for (int s : {0, -2}) EXPECT_FALSE(has_pole(WRComponent{K::sign, 0, 0}, s));
  for (int s : {-2, -3, -4}) EXPECT_TRUE(has_pole(WRComponent{K::induced, 4, 0}, s));
  EXPECT_FALSE(has_pole(WRComponent{K::induced, 4, 0}, -1));
  EXPECT_THROW(archimedean_factor(Complex(-3, 0, bits), WRComponent{K::sign, 0, 0}, bits), std::domain_error);
  EXPECT_EQ(normal_form({{K::induced, 0, 1}}), (std::vector<WRComponent>{{K::trivial, 0, 1}, {K::sign, 0, 1}}));
}

TEST(SymDecomp, CriticalSetExamples) {
  EXPECT_EQ(critical_set(2, 1), std::vector<int>{1});
  std::vector<int> all;
  for (int m = 1; m <= 11; ++m) all.push_back(m);
  EXPECT_EQ(critical_set(12, 1), all);
  EXPECT_EQ(critical_set(4, 4), (std::vector<int>{5, 8}));
  EXPECT_EQ(critical_set(3, 2), (std::vector<int>{1, 4}));
  EXPECT_TRUE(is_critical(3, 3, 4));
  EXPECT_FALSE(is_critical(3, 3, 5));
}

TEST(SymDecomp, CriticalSetMatchesPoleScan) {
  for (int k = 2; k <= 12; ++k)
    for (int n = 1; n <= 8; ++n) EXPECT_EQ(critical_set(k, n), critical_set_oracle(k, n)) << "k=" << k << " n=" << n;
  for (int n = 1; n <= 8; ++n) {
    EXPECT_TRUE(critical_set(1, n).empty());
    EXPECT_TRUE(critical_set_oracle(1, n).empty());
  }
}

}  // namespace
