#include <dihedral/recognize.hpp>

#include <gtest/gtest.h>

using namespace dihedral;

namespace {

constexpr long kBits = 256;

Complex real(const Real& x) { return Complex(x); }

TEST(Recognize, LLLFindsShortVector) {
  // 2 (1, 0, 1000) - (0, 1, 1999) = (2, -1, 1), squared length 6
  std::vector<IntVec> b{{1, 0, 1000}, {0, 1, 1999}};
  lll_reduce(b);
  mpz_class n0 = b[0][0] * b[0][0] + b[0][1] * b[0][1] + b[0][2] * b[0][2];
  EXPECT_EQ(n0, 6);
}

TEST(Recognize, Rationals) {
  auto r = recognize_algebraic(real(Real(mpq_class(1, 2), kBits)), kBits);
  ASSERT_TRUE(r.recognized());
  EXPECT_EQ(r.poly, (std::vector<mpz_class>{-1, 2}));
  EXPECT_EQ(r.poly_string(), "2x - 1");
  r = recognize_algebraic(real(Real(mpq_class(-224, 243), kBits)), kBits);
  ASSERT_TRUE(r.recognized());
  EXPECT_EQ(*r.rational(), mpq_class(-224, 243));
  EXPECT_LT(r.residual_log2, -kBits / 2.0);
}

TEST(Recognize, QuadraticAndHigherDegree) {
  auto r = recognize_algebraic(real(sqrt(Real(2L, kBits))), kBits);
  ASSERT_TRUE(r.recognized());
  EXPECT_EQ(r.poly, (std::vector<mpz_class>{-2, 0, 1}));
  // (1 + sqrt(-7)) / 2 : x^2 - x + 2
  Complex t(Real(mpq_class(1, 2), kBits), sqrt(Real(7L, kBits)) / 2L);
  r = recognize_algebraic(t, kBits);
  ASSERT_TRUE(r.recognized());
  EXPECT_EQ(r.poly, (std::vector<mpz_class>{2, -1, 1}));
  // 2^{1/5} + 1: (x - 1)^5 - 2
  Real c = pow(Real(2L, kBits), Real(mpq_class(1, 5), kBits)) + Real(1L, kBits);
  r = recognize_algebraic(real(c), kBits);
  ASSERT_TRUE(r.recognized());
  EXPECT_EQ(r.degree(), 5);
  EXPECT_EQ(r.poly, (std::vector<mpz_class>{-3, 5, -10, 10, -5, 1}));
}

TEST(Recognize, DegreeCapIsRespected) {
  Real c = pow(Real(2L, kBits), Real(mpq_class(1, 5), kBits));
  auto r = recognize_algebraic(real(c), kBits, RecognitionCaps{4, 1000000});
  EXPECT_FALSE(r.recognized());
  EXPECT_EQ(r.max_degree, 4);
}

TEST(Recognize, TranscendentalDecoys) {
  for (const Real& x : {pi(kBits), exp(Real(1L, kBits)), log(Real(2L, kBits))}) {
    auto r = recognize_algebraic(real(x), kBits);
    EXPECT_FALSE(r.recognized()) << x.to_string(20) << " -> " << r.poly_string();
    EXPECT_EQ(r.verdict, RecognitionResult::Verdict::not_found);
  }
}

TEST(Recognize, RejectsLowPrecision) { EXPECT_THROW(recognize_algebraic(real(Real(1L, 64)), 64), std::invalid_argument); }

TEST(Recognize, CyclotomicCoordinates) {
  // i sqrt(7) (-5/3) + 3/2 in Q(zeta_7), where i sqrt 7 = 2 zeta + ... is the Gauss sum
  Complex z(Real(mpq_class(3, 2), kBits), -sqrt(Real(7L, kBits)) * Real(mpq_class(5, 3), kBits));
  auto r = recognize_in_cyclotomic(z, 7, kBits, 20);
  ASSERT_TRUE(r.recognized);
  Complex e = r.value.embed(kBits);
  EXPECT_LT(log2_abs(abs(e - z)), -200);
  // the same number has no small representation once perturbed
  Complex zp = z + Complex(pow2(-60, kBits));
  EXPECT_FALSE(recognize_in_cyclotomic(zp, 7, kBits, 20).recognized);
  EXPECT_FALSE(recognize_in_cyclotomic(Complex(pi(kBits)), 4, kBits, 1000000).recognized);
}

}  // namespace
