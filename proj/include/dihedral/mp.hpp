#pragma once

// Arbitrary precision real and complex scalars on top of MPFR.
//
// Every value carries its own precision (in bits). Binary operations return a
// value at the larger of the two operand precisions, so a computation started
// at N bits stays at N bits unless something explicitly widens it.

#include <mpfr.h>
#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dihedral {

inline constexpr long kDefaultBits = 256;
inline constexpr long kGuardBits = 32;

class Real {
 public:
  explicit Real(long bits = kDefaultBits) { mpfr_init2(v_, clamp(bits)); mpfr_set_zero(v_, 1); }
  Real(long value, long bits) : Real(bits) { mpfr_set_si(v_, value, MPFR_RNDN); }
  Real(int value, long bits) : Real(static_cast<long>(value), bits) {}
  Real(double value, long bits) : Real(bits) { mpfr_set_d(v_, value, MPFR_RNDN); }
  Real(const mpz_class& value, long bits) : Real(bits) { mpfr_set_z(v_, value.get_mpz_t(), MPFR_RNDN); }
  Real(const mpq_class& value, long bits) : Real(bits) { mpfr_set_q(v_, value.get_mpq_t(), MPFR_RNDN); }
  Real(const std::string& text, long bits) : Real(bits) {
    if (mpfr_set_str(v_, text.c_str(), 10, MPFR_RNDN) != 0) throw std::invalid_argument("bad real literal: " + text);
  }

  Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  long bits() const { return static_cast<long>(mpfr_get_prec(v_)); }
  Real with_bits(long bits) const {
    Real r(bits);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  // Nearest integer.
  mpz_class round_z() const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
    return z;
  }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_integer() const { return mpfr_integer_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  // floor(log2 |x|) + 1, or a very negative number for zero.
  long exponent() const { return is_zero() ? -(1L << 40) : static_cast<long>(mpfr_get_exp(v_)); }

  std::string to_string(int digits = 30) const {
    if (is_zero()) return "0";
    mpfr_exp_t e = 0;
    char* s = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(digits), v_, MPFR_RNDN);
    std::string m(s);
    mpfr_free_str(s);
    std::string sign;
    if (!m.empty() && m[0] == '-') {
      sign = "-";
      m.erase(0, 1);
    }
    return sign + "0." + m + "e" + std::to_string(static_cast<long>(e));
  }

  Real operator-() const {
    Real r(bits());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }
  Real& operator+=(const Real& o) { return assign_op(o, mpfr_add); }
  Real& operator-=(const Real& o) { return assign_op(o, mpfr_sub); }
  Real& operator*=(const Real& o) { return assign_op(o, mpfr_mul); }
  Real& operator/=(const Real& o) { return assign_op(o, mpfr_div); }

  friend Real operator+(const Real& a, const Real& b) { return binop(a, b, mpfr_add); }
  friend Real operator-(const Real& a, const Real& b) { return binop(a, b, mpfr_sub); }
  friend Real operator*(const Real& a, const Real& b) { return binop(a, b, mpfr_mul); }
  friend Real operator/(const Real& a, const Real& b) { return binop(a, b, mpfr_div); }
  friend Real operator*(const Real& a, long b) {
    Real r(a.bits());
    mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Real operator*(long b, const Real& a) { return a * b; }
  friend Real operator/(const Real& a, long b) {
    Real r(a.bits());
    mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Real operator+(const Real& a, long b) {
    Real r(a.bits());
    mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Real operator-(const Real& a, long b) {
    Real r(a.bits());
    mpfr_sub_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Real operator-(long b, const Real& a) {
    Real r(a.bits());
    mpfr_si_sub(r.v_, b, a.v_, MPFR_RNDN);
    return r;
  }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }

  template <class F>
  Real apply(F f) const {
    Real r(bits());
    f(r.v_, v_, MPFR_RNDN);
    return r;
  }

 private:
  static mpfr_prec_t clamp(long bits) { return std::max<mpfr_prec_t>(MPFR_PREC_MIN, static_cast<mpfr_prec_t>(bits)); }

  template <class F>
  static Real binop(const Real& a, const Real& b, F f) {
    Real r(std::max(a.bits(), b.bits()));
    f(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  template <class F>
  Real& assign_op(const Real& o, F f) {
    if (o.bits() > bits()) mpfr_prec_round(v_, o.bits(), MPFR_RNDN);
    f(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }

  mpfr_t v_;
};

inline Real pi(long bits) {
  Real r(bits);
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}
inline Real euler_gamma(long bits) {
  Real r(bits);
  mpfr_const_euler(r.raw(), MPFR_RNDN);
  return r;
}
inline Real sqrt(const Real& x) { return x.apply(mpfr_sqrt); }
inline Real exp(const Real& x) { return x.apply(mpfr_exp); }
inline Real log(const Real& x) { return x.apply(mpfr_log); }
inline Real sin(const Real& x) { return x.apply(mpfr_sin); }
inline Real cos(const Real& x) { return x.apply(mpfr_cos); }
inline Real abs(const Real& x) { return x.apply(mpfr_abs); }
inline Real floor(const Real& x) {
  Real r(x.bits());
  mpfr_floor(r.raw(), x.raw());
  return r;
}
inline Real gamma(const Real& x) {
  if (x.is_integer() && x.sign() <= 0) throw std::domain_error("gamma pole at nonpositive integer");
  return x.apply(mpfr_gamma);
}
inline Real atan2(const Real& y, const Real& x) {
  Real r(std::max(x.bits(), y.bits()));
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}
inline Real pow(const Real& x, const Real& y) {
  Real r(std::max(x.bits(), y.bits()));
  mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}
inline Real pow(const Real& x, long n) {
  Real r(x.bits());
  mpfr_pow_si(r.raw(), x.raw(), n, MPFR_RNDN);
  return r;
}
inline Real ldexp(const Real& x, long e) {
  Real r(x.bits());
  mpfr_mul_2si(r.raw(), x.raw(), e, MPFR_RNDN);
  return r;
}
inline Real max(const Real& a, const Real& b) { return a < b ? b : a; }

// 2^e at the given precision.
inline Real pow2(long e, long bits) { return ldexp(Real(1L, bits), e); }

class Complex {
 public:
  Real re, im;

  explicit Complex(long bits = kDefaultBits) : re(bits), im(bits) {}
  Complex(Real r) : re(std::move(r)), im(re.bits()) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Complex(long r, long i, long bits) : re(r, bits), im(i, bits) {}

  long bits() const { return std::max(re.bits(), im.bits()); }
  Complex with_bits(long bits) const { return {re.with_bits(bits), im.with_bits(bits)}; }
  bool is_real() const { return im.is_zero(); }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }

  Complex operator-() const { return {-re, -im}; }
  Complex conj() const { return {re, -im}; }
  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o) { return *this = *this * o; }
  Complex& operator/=(const Complex& o) { return *this = *this / o; }

  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    if (b.im.is_zero()) return {a.re * b.re, a.im * b.re};
    if (a.im.is_zero()) return {a.re * b.re, a.re * b.im};
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator*(const Complex& a, const Real& b) { return {a.re * b, a.im * b}; }
  friend Complex operator*(const Real& b, const Complex& a) { return {a.re * b, a.im * b}; }
  friend Complex operator*(const Complex& a, long b) { return {a.re * b, a.im * b}; }
  friend Complex operator/(const Complex& a, const Real& b) { return {a.re / b, a.im / b}; }
  friend Complex operator/(const Complex& a, long b) { return {a.re / b, a.im / b}; }
  friend Complex operator/(const Complex& a, const Complex& b) {
    if (b.im.is_zero()) return {a.re / b.re, a.im / b.re};
    Real d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  friend Complex operator+(const Complex& a, const Real& b) { return {a.re + b, a.im}; }
  friend Complex operator-(const Complex& a, const Real& b) { return {a.re - b, a.im}; }
  friend Complex operator+(const Complex& a, long b) { return {a.re + b, a.im}; }
  friend Complex operator-(const Complex& a, long b) { return {a.re - b, a.im}; }
  friend Complex operator-(long b, const Complex& a) { return {b - a.re, -a.im}; }
  friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
};

inline Real norm2(const Complex& z) { return z.re * z.re + z.im * z.im; }
inline Real abs(const Complex& z) {
  Real r(z.bits());
  mpfr_hypot(r.raw(), z.re.raw(), z.im.raw(), MPFR_RNDN);
  return r;
}
inline Real arg(const Complex& z) { return atan2(z.im, z.re); }
inline Complex exp(const Complex& z) {
  if (z.im.is_zero()) return Complex(exp(z.re));
  Real m = exp(z.re);
  return {m * cos(z.im), m * sin(z.im)};
}
inline Complex log(const Complex& z) { return {log(abs(z)), arg(z)}; }
inline Complex sqrt(const Complex& z) {
  if (z.is_zero()) return z;
  Real r = abs(z);
  Real a = sqrt((r + abs(z.re)) / 2L);
  if (z.re.sign() >= 0) return {a, z.im / (a * 2L)};
  Real b = z.im.sign() >= 0 ? a : -a;
  return {abs(z.im) / (a * 2L), b};
}
inline Complex sin(const Complex& z) {
  if (z.im.is_zero()) return Complex(sin(z.re));
  Real ep = exp(z.im), em = Real(1L, z.bits()) / ep;
  return {sin(z.re) * (ep + em) / 2L, cos(z.re) * (ep - em) / 2L};
}
inline Complex pow(const Complex& z, long n) {
  Complex result(1, 0, z.bits()), base = z;
  bool inv = n < 0;
  unsigned long e = inv ? static_cast<unsigned long>(-(n + 1)) + 1UL : static_cast<unsigned long>(n);
  while (e) {
    if (e & 1UL) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return inv ? Complex(1, 0, z.bits()) / result : result;
}
// x^s for real x > 0.
inline Complex pow(const Real& x, const Complex& s) {
  if (s.im.is_zero()) return Complex(pow(x, s.re));
  return exp(s * log(x));
}
inline Complex pow(const Complex& z, const Complex& w) {
  if (z.is_zero()) return Complex(z.bits());
  return exp(w * log(z));
}
// e^{2 pi i num/den}
inline Complex root_of_unity(long num, long den, long bits) {
  long n = ((num % den) + den) % den;
  Real t = pi(bits) * (2 * n) / den;
  return {cos(t), sin(t)};
}
inline Complex I(long bits) { return {Real(bits), Real(1L, bits)}; }
// (2 pi i)^m
inline Complex two_pi_i_pow(long m, long bits) { return pow(Complex(Real(bits), pi(bits) * 2L), m); }

// |a - b| / max(|b|, tiny)
inline Real rel_error(const Complex& a, const Complex& b) {
  Real d = abs(a - b), m = abs(b);
  if (m.is_zero()) return d;
  return d / m;
}

// log2 of |x| as a double (finite even for tiny MPFR exponents).
inline double log2_abs(const Real& x) {
  if (x.is_zero()) return -1e300;
  long e = 0;
  double m = mpfr_get_d_2exp(&e, x.raw(), MPFR_RNDN);
  return std::log2(std::fabs(m)) + static_cast<double>(e);
}

// Exact Bernoulli numbers B_0..B_n with B_1 = -1/2, cached process-wide.
inline const std::vector<mpq_class>& bernoulli_numbers(std::size_t n) {
  static std::mutex mu;
  static std::vector<mpq_class> table{mpq_class(1)};
  std::lock_guard<std::mutex> lock(mu);
  while (table.size() <= n) {
    // sum_{j=0}^{m} C(m+1, j) B_j = 0
    std::size_t m = table.size();
    mpq_class acc = 0;
    mpz_class binom = 1;  // C(m+1, 0)
    for (std::size_t j = 0; j < m; ++j) {
      acc += mpq_class(binom) * table[j];
      binom = binom * static_cast<unsigned long>(m + 1 - j) / static_cast<unsigned long>(j + 1);
    }
    mpq_class b = -acc / mpq_class(static_cast<unsigned long>(m + 1));
    b.canonicalize();
    table.push_back(b);
  }
  return table;
}

namespace detail {

// Stirling series for log Gamma(z), Re z large.
inline Complex log_gamma_stirling(const Complex& z, long bits) {
  Complex result = (z - Real(0.5, bits)) * log(z) - z + log(pi(bits) * 2L) / 2L;
  Complex zinv = Complex(1, 0, bits) / z;
  Complex zinv2 = zinv * zinv;
  Complex zp = zinv;
  Real tol = pow2(-bits - 8, bits);
  for (std::size_t j = 1; j < 4000; ++j) {
    const auto& B = bernoulli_numbers(2 * j);
    Real c(B[2 * j], bits);
    c = c / static_cast<long>((2 * j) * (2 * j - 1));
    Complex term = zp * c;
    result += term;
    if (abs(term) < tol) break;
    zp = zp * zinv2;
  }
  return result;
}

}  // namespace detail

// Gamma for complex arguments; throws at the poles.
inline Complex gamma(const Complex& z) {
  long bits = z.bits();
  if (z.im.is_zero()) return Complex(gamma(z.re));
  long wb = bits + kGuardBits;
  Complex zz = z.with_bits(wb);
  if (zz.re < Real(0.5, wb)) {
    // Gamma(z) Gamma(1-z) = pi / sin(pi z)
    Complex one_minus = Complex(1, 0, wb) - zz;
    Complex g = gamma(one_minus);
    Complex s = sin(zz * pi(wb));
    return (Complex(pi(wb)) / (s * g)).with_bits(bits);
  }
  Real target(0.12 * static_cast<double>(wb) + 10.0, wb);
  Complex prod(1, 0, wb);
  Complex shifted = zz;
  while (shifted.re < target) {
    prod = prod * shifted;
    shifted = shifted + 1L;
  }
  Complex lg = detail::log_gamma_stirling(shifted, wb);
  return (exp(lg) / prod).with_bits(bits);
}

namespace detail {

inline Real upper_gamma_cf(const Real& a, const Real& x, long wb);
inline Complex upper_gamma_cf(const Complex& a, const Real& x, long wb);

// Modified Lentz evaluation of the Legendre continued fraction for Gamma(a, x).
template <class T>
T upper_gamma_cf_impl(const T& a, const Real& x, long wb) {
  Real tiny = pow2(-4 * wb, wb);
  Real eps = pow2(-wb, wb);
  T b = T(x + 1L) - a;
  T c = T(Real(1L, wb) / tiny);
  T d = T(Real(1L, wb)) / b;
  T h = d;
  for (long i = 1; i < 200000; ++i) {
    T an = (a - i) * i;  // -i (i - a)
    b = b + T(Real(2L, wb));
    d = an * d + b;
    if (abs(d) < tiny) d = T(tiny);
    c = b + an / c;
    if (abs(c) < tiny) c = T(tiny);
    d = T(Real(1L, wb)) / d;
    T del = d * c;
    h = h * del;
    if (abs(del - T(Real(1L, wb))) < eps) break;
  }
  T lx = a * log(x.with_bits(wb)) - x.with_bits(wb);
  return exp(lx) * h;
}

inline Real upper_gamma_cf(const Real& a, const Real& x, long wb) { return upper_gamma_cf_impl<Real>(a, x, wb); }
inline Complex upper_gamma_cf(const Complex& a, const Real& x, long wb) { return upper_gamma_cf_impl<Complex>(a, x, wb); }

// gamma(a, x) = x^a e^{-x} sum_k x^k / (a (a+1) ... (a+k))
template <class T>
T lower_gamma_series(const T& a, const Real& x, long wb) {
  Real tol = pow2(-wb, wb);
  T term = T(Real(1L, wb)) / a;
  T sum = term;
  for (long k = 1; k < 1000000; ++k) {
    term = term * x / (a + k);
    sum = sum + term;
    if (k > x.to_double() && abs(term) < tol * abs(sum)) break;
  }
  T lx = a * log(x.with_bits(wb)) - x.with_bits(wb);
  return exp(lx) * sum;
}

// Gamma(-n, x) for integers n >= 0 via E1 and the downward recurrence.
inline Real upper_gamma_nonpositive_int(long n, const Real& x, long wb) {
  Real xx = x.with_bits(wb);
  Real tol = pow2(-wb, wb);
  // E1(x) = -gamma - ln x - sum_{k>=1} (-x)^k / (k k!)
  Real s(wb), term(1L, wb);
  for (long k = 1; k < 1000000; ++k) {
    term = term * (-xx) / k;
    Real add = term / k;
    s += add;
    if (k > xx.to_double() && abs(add) < tol) break;
  }
  Real g = -euler_gamma(wb) - log(xx) - s;  // Gamma(0, x)
  Real ex = exp(-xx);
  for (long a = 0; a > -n; --a) {
    // Gamma(a-1, x) = (Gamma(a, x) - x^{a-1} e^{-x}) / (a-1)
    g = (g - pow(xx, a - 1) * ex) / (a - 1);
  }
  return g;
}

inline bool near_nonpositive_integer(const Real& re, const Real& im, long* n, double* dist) {
  if (!im.is_zero()) {
    *dist = std::fabs(im.to_double());
  } else {
    *dist = 1.0;
  }
  double r = re.to_double();
  if (r > 0.5) return false;
  double nearest = std::round(r);
  if (nearest > 0) return false;
  *n = static_cast<long>(-nearest);
  double d = std::fabs(r - nearest);
  if (!im.is_zero()) d = std::hypot(d, im.to_double());
  *dist = d;
  return true;
}

}  // namespace detail

// Upper incomplete gamma Gamma(a, x) for x > 0. Continued fraction for
// x >= max(30, 1.2 |a|), otherwise Gamma(a) - gamma(a, x) by series with guard
// bits covering the cancellation.
inline Real upper_gamma(const Real& a, const Real& x, long bits) {
  if (x.sign() <= 0) throw std::domain_error("upper_gamma needs x > 0");
  if (a.is_integer() && a.sign() > 0 && a.to_double() < 64) {
    // (a-1)! e^{-x} sum_{j<a} x^j / j!
    long n = static_cast<long>(a.to_double());
    long wb = bits + 16;
    Real xx = x.with_bits(wb), term(1L, wb), sum(1L, wb);
    for (long j = 1; j < n; ++j) {
      term = term * xx / j;
      sum += term;
    }
    Real fact(1L, wb);
    for (long j = 2; j < n; ++j) fact = fact * j;
    return (fact * exp(-xx) * sum).with_bits(bits);
  }
  double xd = x.to_double();
  double ad = std::fabs(a.to_double());
  if (xd >= std::max(30.0, 1.2 * ad)) {
    long wb = bits + kGuardBits;
    return detail::upper_gamma_cf(a.with_bits(wb), x, wb).with_bits(bits);
  }
  long n = 0;
  double dist = 1.0;
  bool near = detail::near_nonpositive_integer(a, Real(a.bits()), &n, &dist);
  long wb = bits + kGuardBits + static_cast<long>(1.5 * xd) + 16;
  if (near && a.is_integer()) return detail::upper_gamma_nonpositive_int(n, x, wb).with_bits(bits);
  if (near && dist < 0.25) wb += static_cast<long>(std::min(-std::log2(dist), static_cast<double>(bits))) + 8;
  Real aa = a.with_bits(wb);
  Real g = gamma(aa);
  wb += std::max(0L, g.exponent());
  aa = a.with_bits(wb);
  g = gamma(aa);
  Real lower = detail::lower_gamma_series<Real>(aa, x, wb);
  return (g - lower).with_bits(bits);
}

inline Complex upper_gamma(const Complex& a, const Real& x, long bits) {
  if (a.im.is_zero()) return Complex(upper_gamma(a.re, x, bits));
  if (x.sign() <= 0) throw std::domain_error("upper_gamma needs x > 0");
  double xd = x.to_double();
  double ad = abs(a).to_double();
  if (xd >= std::max(30.0, 1.2 * ad)) {
    long wb = bits + kGuardBits;
    return detail::upper_gamma_cf(a.with_bits(wb), x, wb).with_bits(bits);
  }
  long n = 0;
  double dist = 1.0;
  bool near = detail::near_nonpositive_integer(a.re, a.im, &n, &dist);
  long wb = bits + kGuardBits + static_cast<long>(1.5 * xd) + 16;
  if (near && dist < 0.25) wb += static_cast<long>(std::min(-std::log2(dist), static_cast<double>(bits))) + 8;
  Complex aa = a.with_bits(wb);
  Complex g = gamma(aa);
  wb += std::max(0L, abs(g).exponent());
  aa = a.with_bits(wb);
  g = gamma(aa);
  Complex lower = detail::lower_gamma_series<Complex>(aa, x, wb);
  return (g - lower).with_bits(bits);
}

}  // namespace dihedral
