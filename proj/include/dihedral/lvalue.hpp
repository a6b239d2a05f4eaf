#pragma once

// Degree 1 and 2 L-functions: direct Dirichlet series, the smoothed approximate
// functional equation, and numerical calibration of conductor and root number.
//
// With a single Gamma factor the completed function is
//     Lambda(s) = B^s Gamma(h s + c) L(s),   Lambda(s) = eps conj(Lambda)(w + 1 - s),
// (h, B) = (1/2, sqrt(Q/pi)) for Gamma_R and (1, sqrt(Q)/(2 pi)) for Gamma_C.
// For any t > 0, with x_n = (n/B)^{1/h},
//     Lambda(s) = sum a_n (B/n)^s Gamma(hs + c, x_n t)
//               + eps sum conj(a_n) (B/n)^{w+1-s} Gamma(h(w+1-s) + c, x_n / t)
//               + sum_j r_j t^{h(s - s_j)} / (s - s_j),
// r_j the residues of Lambda. Independence of t is the functional equation.

#include "arith.hpp"
#include "dirichlet.hpp"
#include "mp.hpp"
#include "symdecomp.hpp"

#include <cmath>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace dihedral {

struct LSeriesSpec {
  std::string name;
  // a_0 .. a_N (a_0 ignored)
  std::function<std::vector<Complex>(i64 N, long bits)> coefficients;
  std::vector<WRComponent> gamma;
  int motivic_weight = 0;
  i64 conductor = 0;  // 0: unknown
  bool fit_conductor = false;
  std::optional<Complex> root_number;
  // poles of Lambda: (location, residue)
  std::vector<std::pair<Complex, Complex>> poles;
  // coefficients are chi(n): enables Euler-Maclaurin tails in dirichlet_sum
  std::optional<DirichletChar> periodic;
};

struct CalibrationReport {
  i64 conductor = 0;
  Complex root_number{Real(1L, 64)};
  double residual_log2 = 0;  // log2 of the verification residual
  bool conductor_fitted = false;
  std::vector<i64> tried;
  long bits = 0;
};

struct LEval {
  Complex L, Lambda;
  double residual_log2 = 0;  // t-independence of Lambda at s
  i64 terms = 0;
};

namespace detail {

inline double log2_abs(const Complex& z) { return log2_abs(abs(z)); }

// log2 |a - b| / |a|, floored at the working precision of the operands.
inline double rel_log2(const Complex& a, const Complex& b) {
  double floor_ = -static_cast<double>(std::min(a.bits(), b.bits()));
  Complex d = a - b;
  if (d.is_zero()) return floor_;
  return std::max(floor_, log2_abs(d) - log2_abs(a));
}

// log2 of an upper bound for |Gamma(a, x)|, a = re part; +inf when no bound applies.
inline double log2_upper_gamma_bound(double a, double x) {
  if (x <= 0) return INFINITY;
  if (x >= 2.0 * std::max(a - 1.0, 0.0) + 1.0) return 1.0 + (a - 1.0) * std::log2(x) - x / std::log(2.0);
  return INFINITY;
}

// log2 Gamma(a) for a > 0; 0 otherwise (only used for scale estimates).
inline double log2_gamma(double a) { return a > 0 ? std::lgamma(a) / std::log(2.0) : 0.0; }

}  // namespace detail

class LFunction {
 public:
  explicit LFunction(LSeriesSpec spec) : spec_(std::move(spec)) {
    auto g = normal_form(spec_.gamma);
    if (g.size() == 2 && g[0].kind == WRComponent::Kind::trivial && g[1].kind == WRComponent::Kind::sign && g[0].t == g[1].t) {
      // Gamma_R(s) Gamma_R(s+1) = Gamma_C(s)
      complex_ = true;
      c_ = g[0].t;
    } else if (g.size() == 1) {
      const auto& x = g[0];
      complex_ = x.kind == WRComponent::Kind::induced;
      if (x.kind == WRComponent::Kind::trivial) c_ = x.t / 2;
      if (x.kind == WRComponent::Kind::sign) c_ = (x.t + 1) / 2;
      if (x.kind == WRComponent::Kind::induced) c_ = x.t + mpq_class(x.l, 2);
    } else {
      throw std::invalid_argument("only a single Gamma_R or Gamma_C factor is supported (degree <= 2)");
    }
    c_.canonicalize();
    if (spec_.conductor > 0) report_.conductor = spec_.conductor;
    if (spec_.root_number) report_.root_number = *spec_.root_number;
  }

  const LSeriesSpec& spec() const { return spec_; }
  const CalibrationReport& calibration() const { return report_; }
  bool calibrated() const { return calibrated_; }
  double h() const { return complex_ ? 1.0 : 0.5; }
  int degree() const { return complex_ ? 2 : 1; }

  // Root number (and the conductor when allowed) from the functional equation.
  const CalibrationReport& calibrate(long bits) {
    if (calibrated_ && report_.bits >= bits) return report_;
    std::vector<i64> candidates;
    if (spec_.conductor > 0) candidates.push_back(spec_.conductor);
    if (spec_.fit_conductor) {
      if (spec_.conductor > 0)
        for (i64 d : divisors(spec_.conductor))
          if (d != spec_.conductor) candidates.push_back(d);
      for (i64 q = 1; q <= 2000; ++q) candidates.push_back(q);
    }
    if (candidates.empty()) throw std::invalid_argument(spec_.name + ": conductor unknown and fitting disabled");
    long screen_bits = std::min<long>(bits, 96);
    double gate = -static_cast<double>(bits) / 2.0;
    report_.tried.clear();
    for (i64 Q : candidates) {
      if (std::find(report_.tried.begin(), report_.tried.end(), Q) != report_.tried.end()) continue;
      report_.tried.push_back(Q);
      auto [eps, res] = solve_root_number(Q, screen_bits);
      if (res > -static_cast<double>(screen_bits) / 2.0) continue;
      auto [eps2, res2] = solve_root_number(Q, bits);
      if (res2 > gate) continue;
      report_.conductor = Q;
      report_.root_number = eps2;
      report_.residual_log2 = res2;
      report_.conductor_fitted = Q != spec_.conductor;
      report_.bits = bits;
      calibrated_ = true;
      return report_;
    }
    throw std::runtime_error(spec_.name + ": spec inconsistent, no (conductor, root number) pair satisfies the functional equation");
  }

  Real B(i64 Q, long bits) const {
    Real q(Q, bits);
    if (complex_) return sqrt(q) / (pi(bits) * 2L);
    return sqrt(q / pi(bits));
  }

  // B^s Gamma(hs + c)
  Complex gamma_factor(const Complex& s, long bits) const {
    require_calibrated();
    long wb = bits + 16;
    Complex a = gamma_arg(s.with_bits(wb), wb);
    if (a.im.is_zero() && a.re.is_integer() && a.re.sign() <= 0)
      throw std::domain_error(spec_.name + ": Gamma factor has a pole at s = " + s.re.to_string(12));
    return (pow(B(report_.conductor, wb), s.with_bits(wb)) * gamma(a)).with_bits(bits);
  }

  // Lambda(s) at the smoothing parameter t.
  Complex completed(const Complex& s, long bits, const Real* t = nullptr) const {
    require_calibrated();
    Real tt = t ? *t : Real(1L, bits);
    return lambda_at(s, report_.conductor, report_.root_number, tt, bits, nullptr);
  }

  LEval evaluate(const Complex& s, long bits) const {
    require_calibrated();
    LEval r;
    long wb = bits + 8;
    Real t1(1L, wb), t2(mpq_class(6, 5), wb);
    r.Lambda = lambda_at(s, report_.conductor, report_.root_number, t1, wb, &r.terms);
    Complex l2 = lambda_at(s, report_.conductor, report_.root_number, t2, wb, nullptr);
    r.residual_log2 = detail::rel_log2(r.Lambda, l2);
    r.L = (r.Lambda / gamma_factor(s, wb)).with_bits(bits);
    r.Lambda = r.Lambda.with_bits(bits);
    return r;
  }
  Complex value(const Complex& s, long bits) const { return evaluate(s, bits).L; }

  // |Lambda(s; t_a) - Lambda(s; t_b)| / |Lambda(s)|, log2, for t_a, t_b away from
  // the calibration values.
  double fe_residual_log2(const Complex& s, long bits) const {
    require_calibrated();
    Real ta(mpq_class(9, 10), bits + 8), tb(mpq_class(4, 3), bits + 8);
    Complex la = lambda_at(s, report_.conductor, report_.root_number, ta, bits + 8, nullptr);
    Complex lb = lambda_at(s, report_.conductor, report_.root_number, tb, bits + 8, nullptr);
    return detail::rel_log2(la, lb);
  }

  // sum a_n n^{-s} with a certified tail bound from |a_n| <= d(n) n^{w/2}, or an
  // Euler-Maclaurin tail when the coefficients are a Dirichlet character.
  Complex dirichlet_sum(const Complex& s, long bits, i64* terms = nullptr) const {
    if (spec_.periodic) return dirichlet_series_em(*spec_.periodic, s, bits, terms);
    double alpha = s.re.to_double() - spec_.motivic_weight / 2.0;
    if (!(alpha > 1.0))
      throw std::domain_error(spec_.name + ": Re(s) = " + s.re.to_string(10) + " is outside the region of absolute convergence; use completed_L");
    long wb = bits + kGuardBits;
    // sum_{n>N} d(n) n^{-alpha} <= alpha N^{1-alpha} ((ln N + 1)/(alpha-1) + 1/(alpha-1)^2)
    double target = -static_cast<double>(wb);
    auto tail = [&](double N) {
      double a1 = alpha - 1.0;
      return std::log2(alpha) + (1.0 - alpha) * std::log2(N) + std::log2((std::log(N) + 1.0) / a1 + 1.0 / (a1 * a1));
    };
    i64 lo = 0, hi = 1;
    while (tail(static_cast<double>(hi)) > target && hi <= kMaxDirectTerms) hi *= 2;
    while (hi - lo > 1) {
      i64 mid = (lo + hi) / 2;
      (tail(static_cast<double>(mid)) > target ? lo : hi) = mid;
    }
    i64 N = hi;
    if (N > kMaxDirectTerms)
      throw std::domain_error(spec_.name + ": direct summation at Re(s) = " + s.re.to_string(10) + " needs " + std::to_string(N) +
                              " terms for 2^-" + std::to_string(wb) + "; use completed_L");
    auto ap = coeffs(N, wb);
    const auto& a = *ap;
    Complex ss = s.with_bits(wb);
    Complex sum(wb);
    for (i64 n = 1; n <= N; ++n) {
      const Complex& an = a[static_cast<std::size_t>(n)];
      if (an.is_zero()) continue;
      sum += an * pow(Real(n, wb), -ss);
    }
    if (terms) *terms = N;
    return sum.with_bits(bits);
  }

  static constexpr i64 kMaxDirectTerms = 1000000;

 private:
  void require_calibrated() const {
    if (!calibrated_) throw std::logic_error(spec_.name + ": calibrate() first");
  }

  Complex gamma_arg(const Complex& s, long wb) const {
    Real c(c_, wb);
    if (complex_) return s + Complex(c);
    return s / Real(2L, wb) + Complex(c);
  }

  // Shared read-only snapshot of a_0..a_M, M >= N.
  std::shared_ptr<const std::vector<Complex>> coeffs(i64 N, long bits) const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    if (!cache_->data || static_cast<i64>(cache_->data->size()) <= N || cache_->bits < bits) {
      i64 n2 = N;
      if (cache_->data) n2 = std::max<i64>(N, static_cast<i64>(cache_->data->size()) - 1);
      cache_->bits = std::max(bits, cache_->bits);
      cache_->data = std::make_shared<const std::vector<Complex>>(spec_.coefficients(n2, cache_->bits));
    }
    return cache_->data;
  }

  // Terms needed so that the dropped part of sum_n |a_n| |(B/n)^z Gamma(hz+c, x_n tau)|
  // lies below 2^-target relative to the leading scale.
  i64 terms_needed(double zre, double Bd, double tau, long target) const {
    double hh = h();
    double c = c_.get_d();
    double a = hh * zre + c;
    double scale = zre * std::log2(Bd) + detail::log2_gamma(std::max(a, 1.0));
    double e = spec_.motivic_weight / 2.0;
    double step = std::pow(1.0 / Bd, 1.0 / hh) * tau;  // lower bound on x_{n+1} - x_n
    double q = -std::expm1(-std::min(step, 50.0));
    double geo = -std::log2(q);
    for (i64 n = 1; n < 50 * kMaxDirectTerms; n = n < 64 ? n + 1 : n + n / 64) {
      double nd = static_cast<double>(n);
      double x = std::pow(nd / Bd, 1.0 / hh) * tau;
      double g = detail::log2_upper_gamma_bound(a, x);
      if (!std::isfinite(g)) continue;
      double b = 1.0 + (0.5 + e) * std::log2(nd) + zre * std::log2(Bd / nd) + g;
      // past the peak of x^{a-1+...} e^{-x}, the bound decays at least geometrically
      double slope_ok = x > 2.0 * (std::fabs(a) + std::fabs(zre) / hh + e + 2.0);
      if (slope_ok && b + geo < scale - static_cast<double>(target)) return n;
    }
    throw std::runtime_error(spec_.name + ": approximate functional equation needs too many terms");
  }

  // sum_n b_n (B/n)^z Gamma(hz+c, x_n tau) for n <= N.
  Complex afe_sum(const std::vector<Complex>& b, bool conjugate, i64 N, const Complex& z, const Real& Bv, const Real& tau, long wb,
                  Real* maxterm) const {
    Complex a = gamma_arg(z, wb);
    Complex sum(wb);
    Real logB = log(Bv);
    Real inv_h(complex_ ? 1L : 2L, wb);
    for (i64 n = 1; n <= N; ++n) {
      const Complex& bn = b[static_cast<std::size_t>(n)];
      if (bn.is_zero()) continue;
      Real logn = log(Real(n, wb));
      Real x = exp((logn - logB) * inv_h) * tau;
      Complex pw = exp(z * (logB - logn));
      Complex g = upper_gamma(a, x, wb);
      Complex term = (conjugate ? bn.conj() : bn) * pw * g;
      Real m = abs(term);
      if (maxterm && m > *maxterm) *maxterm = m;
      sum += term;
    }
    return sum;
  }

  struct Parts {
    Complex S, D, P;
    Real maxterm;
    i64 terms = 0;
  };

  Parts parts(const Complex& s, i64 Q, const Real& t, long wb) const {
    Real Bv = B(Q, wb);
    double Bd = Bv.to_double();
    int w = spec_.motivic_weight;
    Complex s2 = Complex(Real(static_cast<long>(w + 1), wb)) - s.with_bits(wb);
    i64 N1 = terms_needed(s.re.to_double(), Bd, t.to_double(), wb);
    i64 N2 = terms_needed(s2.re.to_double(), Bd, 1.0 / t.to_double(), wb);
    i64 N = std::max(N1, N2);
    auto ap = coeffs(N, wb);
    const auto& a = *ap;
    Parts p{Complex(wb), Complex(wb), Complex(wb), Real(wb), N};
    p.S = afe_sum(a, false, N1, s.with_bits(wb), Bv, t.with_bits(wb), wb, &p.maxterm);
    Real tinv = Real(1L, wb) / t.with_bits(wb);
    p.D = afe_sum(a, true, N2, s2, Bv, tinv, wb, &p.maxterm);
    for (const auto& [sj, rj] : spec_.poles) {
      Complex d = s.with_bits(wb) - sj.with_bits(wb);
      Complex e = d * Real(h(), wb);
      p.P += rj.with_bits(wb) * pow(t.with_bits(wb), e) / d;
    }
    return p;
  }

  // Lambda with guard bits raised until the cancellation is covered.
  Complex lambda_at(const Complex& s, i64 Q, const Complex& eps, const Real& t, long bits, i64* terms) const {
    long guard = kGuardBits;
    for (int attempt = 0; attempt < 4; ++attempt) {
      long wb = bits + guard;
      Parts p = parts(s, Q, t, wb);
      Complex lam = p.S + eps.with_bits(wb) * p.D + p.P;
      double loss = log2_abs(p.maxterm) - detail::log2_abs(lam);
      if (terms) *terms = p.terms;
      if (lam.is_zero() || loss <= static_cast<double>(guard) - 16.0) return lam.with_bits(bits);
      guard = static_cast<long>(loss) + kGuardBits;
      if (guard > 4 * bits) return lam.with_bits(bits);
    }
    return Complex(bits);
  }

  // eps from two values of t at an interior point, verified at a second point.
  std::pair<Complex, double> solve_root_number(i64 Q, long bits) const {
    long wb = bits + 8;
    int w = spec_.motivic_weight;
    double center = (w + 1) / 2.0;
    Complex s0(Real(center + 0.25, wb), Real(0.125, wb));
    Real t1(1L, wb), t2(mpq_class(23, 20), wb);
    auto lam_parts = [&](const Complex& s, const Real& t) {
      long guard = kGuardBits + 16;
      Parts p = parts(s, Q, t, wb + guard);
      return p;
    };
    Parts a = lam_parts(s0, t1), b = lam_parts(s0, t2);
    Complex num = (a.S + a.P) - (b.S + b.P);
    Complex den = b.D - a.D;
    if (den.is_zero()) return {Complex(Real(1L, wb)), 0.0};
    Complex eps = (num / den).with_bits(wb);
    // the root number has modulus one
    double mod_err = std::fabs(abs(eps).to_double() - 1.0);
    if (mod_err > 1e-6) return {eps, 0.0};
    Complex s1(Real(center + 0.6, wb), Real(-0.3, wb));
    Real t3(mpq_class(7, 8), wb), t4(mpq_class(5, 4), wb);
    Parts c = lam_parts(s1, t3), d = lam_parts(s1, t4);
    Complex lc = c.S + eps * c.D + c.P, ld = d.S + eps * d.D + d.P;
    double res = detail::rel_log2(lc, ld);
    return {eps, res};
  }

  // Euler-Maclaurin on each residue class a mod q: f(x) = (a + qx)^{-s}.
  static Complex dirichlet_series_em(const DirichletChar& chi, const Complex& s, long bits, i64* terms) {
    long wb = bits + kGuardBits;
    i64 q = chi.modulus();
    Complex ss = s.with_bits(wb);
    double sigma = s.re.to_double();
    bool s_is_one = s.im.is_zero() && s.re.is_integer() && s.re.to_double() == 1.0;
    if (s_is_one && chi.is_trivial()) throw std::domain_error("zeta has a pole at s = 1");
    if (sigma <= 0) throw std::domain_error("Euler-Maclaurin summation needs Re(s) > 0");
    i64 J = std::max<i64>(1, (bits + q) / q);
    double y0 = static_cast<double>(q * J);
    double sabs = abs(ss).to_double();
    // choose K with 4 (|s| + 2K)^{2K} (q / 2 pi y0)^{2K} below the target; the
    // q^{2K} comes from differentiating (a + qx)^{-s}
    int K = 1;
    auto rem = [&](int k) {
      double lp = 0;
      for (int j = 0; j < 2 * k; ++j) lp += std::log2(sabs + j);
      return 2.0 + lp - 2.0 * k * std::log2(2.0 * M_PI * y0 / static_cast<double>(q)) + (1.0 - sigma) * std::log2(y0) +
             std::log2(y0 / (sigma + 2 * k - 1));
    };
    while (rem(K) > -static_cast<double>(wb) && K < 400) ++K;
    if (rem(K) > -static_cast<double>(wb)) {
      J *= 4;
      y0 *= 4;
      K = 1;
      while (rem(K) > -static_cast<double>(wb) && K < 400) ++K;
    }
    const auto& bern = bernoulli_numbers(static_cast<std::size_t>(2 * K + 2));
    Complex head(wb);
    i64 N = q * J;
    for (i64 n = 1; n <= N; ++n) {
      auto e = chi.exponent(n);
      if (!e) continue;
      head += chi.value_numeric(n, wb) * pow(Real(n, wb), -ss);
    }
    Complex tail(wb);
    Real qr(q, wb);
    for (i64 a = 1; a <= q; ++a) {
      auto e = chi.exponent(a);
      if (!e) continue;
      Real y(a + q * J, wb);  // a + q J
      Complex ys = pow(y, -ss);
      Complex integral = s_is_one ? Complex(-log(y) / qr) : ys * y / (qr * (ss - Complex(Real(1L, wb))));
      Complex t = integral + ys / Real(2L, wb);
      // - sum_k B_2k/(2k)! f^{(2k-1)}(J), f^{(j)} = (-q)^j (s)_j y^{-s-j}
      Complex poch = ss;  // (s)_1
      Complex deriv = ys * poch * (-qr) / y;  // f'
      Real fact(1L, wb);
      for (int k = 1; k <= K; ++k) {
        if (k > 1) {
          // advance f^{(2k-3)} -> f^{(2k-1)}
          Complex s1 = ss + Complex(Real(static_cast<long>(2 * k - 3), wb));
          Complex s2 = ss + Complex(Real(static_cast<long>(2 * k - 2), wb));
          deriv = deriv * s1 * s2 * qr * qr / (y * y);
        }
        fact = fact * static_cast<long>(2 * k - 1) * static_cast<long>(2 * k);
        Real coef(bern[static_cast<std::size_t>(2 * k)], wb);
        t -= deriv * (coef / fact);
      }
      tail += chi.value_numeric(a, wb) * t;
    }
    if (terms) *terms = N;
    return (head + tail).with_bits(bits);
  }

  LSeriesSpec spec_;
  bool complex_ = false;
  mpq_class c_;
  bool calibrated_ = false;
  CalibrationReport report_;
  struct Cache {
    std::mutex mu;
    std::shared_ptr<const std::vector<Complex>> data;
    long bits = 0;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

// --- specs -------------------------------------------------------------------------

// L(s, chi) for the primitive character inducing chi.
inline LSeriesSpec dirichlet_spec(const DirichletChar& chi_in) {
  DirichletChar chi = chi_in.primitive();
  LSeriesSpec sp;
  sp.name = "L(s, " + chi.describe() + ")";
  sp.coefficients = [chi](i64 N, long bits) {
    std::vector<Complex> a(static_cast<std::size_t>(N + 1), Complex(bits));
    std::vector<Complex> vals;
    for (i64 r = 0; r < chi.modulus(); ++r) vals.push_back(chi.value_numeric(r, bits));
    for (i64 n = 1; n <= N; ++n) a[static_cast<std::size_t>(n)] = vals[static_cast<std::size_t>(n % chi.modulus())];
    return a;
  };
  sp.gamma = {{chi.parity() ? WRComponent::Kind::sign : WRComponent::Kind::trivial, 0, 0}};
  sp.motivic_weight = 0;
  sp.conductor = chi.modulus();
  sp.periodic = chi;
  if (chi.is_trivial()) {
    long b = 64;
    sp.poles = {{Complex(1, 0, b), Complex(1, 0, b)}, {Complex(0, 0, b), Complex(-1, 0, b)}};
  }
  return sp;
}

// Root number of a primitive character: gamma(chi) / (i^nu sqrt(c)).
inline Complex dirichlet_root_number(const DirichletChar& chi, long bits) {
  DirichletChar p = chi.primitive();
  Complex g = gauss_sum(p, bits);
  Complex inu = p.parity() ? I(bits) : Complex(1, 0, bits);
  return g / (inu * sqrt(Real(p.modulus(), bits)));
}

// The theta series of a CM form (the Hecke L-series of its character), twisted
// by xi(n) when given.
inline LSeriesSpec cm_spec(const CMForm& f, const std::optional<DirichletChar>& xi = std::nullopt) {
  LSeriesSpec sp;
  const HeckeChar& psi = f.character();
  std::optional<DirichletChar> x;
  if (xi && !xi->is_trivial()) x = xi->primitive();
  if (x && std::gcd(x->modulus(), f.level()) != 1)
    throw std::invalid_argument("twist conductor " + std::to_string(x->modulus()) + " is not coprime to the level " +
                                std::to_string(f.level()));
  sp.name = "L(s, " + psi.describe() + (x ? ", twisted by " + x->describe() : "") + ")";
  sp.coefficients = [f, x](i64 N, long bits) {
    auto a = f.coefficients_numeric(N, bits);
    if (x)
      for (i64 n = 1; n <= N; ++n) a[static_cast<std::size_t>(n)] = a[static_cast<std::size_t>(n)] * x->value_numeric(n, bits);
    return a;
  };
  int w = psi.infinity_weight();
  sp.gamma = {{WRComponent::Kind::induced, std::abs(psi.p() - psi.q()), mpq_class(-w, 2)}};
  sp.motivic_weight = w;
  i64 c = x ? x->modulus() : 1;
  sp.conductor = f.level() * c * c;
  sp.fit_conductor = true;
  if (psi.p() == psi.q() && psi.finite_order() == 1 && psi.modulus().norm() == 1 && !x) {
    // lambda = N^q: the Dedekind zeta function shifted by q
    const QuadField& K = psi.field();
    long b = 128;
    Real Bq = pow(sqrt(Real(sp.conductor, b)) / (pi(b) * 2L), static_cast<long>(psi.q()));
    Real r = Bq * Real(mpq_class(K.class_number(), K.unit_count()), b);
    sp.poles = {{Complex(psi.q() + 1, 0, b), Complex(r)}, {Complex(psi.q(), 0, b), Complex(-r)}};
    sp.fit_conductor = false;
  }
  return sp;
}

// zeta_K as a degree-2 series with Gamma_R(s) Gamma_R(s+1).
inline LSeriesSpec dedekind_zeta_spec(const QuadField& K) {
  LSeriesSpec sp;
  sp.name = "zeta_K, D = " + std::to_string(K.disc());
  sp.coefficients = [K](i64 N, long bits) {
    std::vector<i64> cnt(static_cast<std::size_t>(N + 1), 0);
    for (i64 d = 1; d <= N; ++d) {
      int o = K.omega_value(d);
      if (o == 0) continue;
      for (i64 m = d; m <= N; m += d) cnt[static_cast<std::size_t>(m)] += o;
    }
    std::vector<Complex> a(static_cast<std::size_t>(N + 1), Complex(bits));
    for (i64 n = 1; n <= N; ++n) a[static_cast<std::size_t>(n)] = Complex(Real(cnt[static_cast<std::size_t>(n)], bits));
    return a;
  };
  sp.gamma = {{WRComponent::Kind::trivial, 0, 0}, {WRComponent::Kind::sign, 0, 0}};
  sp.conductor = -K.disc();
  long b = 128;
  Real r(mpq_class(K.class_number(), K.unit_count()), b);
  sp.poles = {{Complex(1, 0, b), Complex(r)}, {Complex(0, 0, b), Complex(-r)}};
  return sp;
}

// --- symmetric power values through the factorization ---------------------------------

struct ComponentValue {
  std::string description;
  std::string method;  // closed form, AFE, ...
  int point = 0;  // the argument at which the piece is evaluated
  Complex value;
  std::optional<CalibrationReport> calibration;
  double residual_log2 = 0;
};

struct CriticalValue {
  int n = 0, m = 0;
  bool critical = true;
  std::vector<std::string> warnings;
  std::vector<ComponentValue> components;
  Complex value;
};

// L(s, chi) for a Dirichlet character at an integer point, closed form when
// available.
inline ComponentValue dirichlet_value_at(const DirichletChar& chi_in, int m, long bits) {
  DirichletChar chi = chi_in.primitive();
  ComponentValue v;
  v.point = m;
  v.description = "L(" + std::to_string(m) + ", " + chi.describe() + ")";
  if (m == 1 && chi.is_trivial()) throw std::domain_error("GL1 factor zeta(s) has a pole at s = 1");
  if (m <= 0) {
    v.method = "exact (generalized Bernoulli)";
    v.value = dirichlet_L_nonpositive(1 - m, chi).embed(bits);
    return v;
  }
  if ((m - chi.parity()) % 2 == 0) {
    v.method = "closed form";
    v.value = dirichlet_L(m, chi, bits);
    return v;
  }
  LFunction L(dirichlet_spec(chi));
  L.calibrate(bits);
  auto e = L.evaluate(Complex(Real(static_cast<long>(m), bits)), bits);
  v.method = "approximate functional equation";
  v.value = e.L;
  v.calibration = L.calibration();
  v.residual_log2 = e.residual_log2;
  return v;
}

inline ComponentValue cm_value_at(const CMForm& f, const std::optional<DirichletChar>& xi, int m, long bits) {
  LFunction L(cm_spec(f, xi));
  L.calibrate(bits);
  auto e = L.evaluate(Complex(Real(static_cast<long>(m), bits)), bits);
  ComponentValue v;
  v.point = m;
  v.description = L.spec().name + " at s = " + std::to_string(m);
  v.method = "approximate functional equation";
  v.value = e.L;
  v.calibration = L.calibration();
  v.residual_log2 = e.residual_log2;
  return v;
}

// Criticality read off the pieces: a GL2 piece of infinity type (p, q) needs
// q < m <= p; a GL1 piece psi at m' needs m' >= 1 with m' = parity(psi) mod 2, or
// m' <= 0 with the opposite parity.
inline bool is_critical_twisted(const HeckeChar& chi, int n, int m, const std::optional<DirichletChar>& xi) {
  for (const auto& c : isobaric_decomposition(chi, n)) {
    if (c.kind == IsobaricComponent::Kind::gl1) {
      DirichletChar g = xi ? (*c.gl1 * *xi) : *c.gl1;
      int mm = m - c.shift, nu = g.parity();
      bool ok = mm >= 1 ? (mm - nu) % 2 == 0 : ((mm - nu) % 2 + 2) % 2 == 1;
      if (!ok) return false;
    } else {
      int lo = std::min(c.psi->p(), c.psi->q()), hi = std::max(c.psi->p(), c.psi->q());
      if (!(lo < m && m <= hi)) return false;
    }
  }
  return true;
}

// L_f(m, Sym^n phi_chi, xi) as the product of its degree <= 2 pieces.
inline CriticalValue critical_L_value(const HeckeChar& chi, int n, int m, const std::optional<DirichletChar>& xi, long bits) {
  CriticalValue out;
  out.n = n;
  out.m = m;
  int k = chi.weight();
  std::optional<DirichletChar> x;
  if (xi && !xi->is_trivial()) x = xi->primitive();
  out.critical = is_critical_twisted(chi, n, m, x);
  if (!out.critical) out.warnings.push_back("m = " + std::to_string(m) + " is not critical for Sym^" + std::to_string(n) + " of weight " +
                                            std::to_string(k) + "; evaluated anyway");
  long wb = bits + 16;
  Complex prod(1, 0, wb);
  for (const auto& c : isobaric_decomposition(chi, n)) {
    ComponentValue v;
    if (c.kind == IsobaricComponent::Kind::gl1) {
      DirichletChar g = x ? (*c.gl1 * *x) : *c.gl1;
      v = dirichlet_value_at(g, m - c.shift, wb);
      v.description = c.describe() + ": " + v.description;
    } else {
      v = cm_value_at(CMForm(*c.psi), x, m, wb);
      v.description = c.describe() + ": " + v.description;
    }
    prod = prod * v.value;
    v.value = v.value.with_bits(bits);
    out.components.push_back(std::move(v));
  }
  out.value = prod.with_bits(bits);
  return out;
}

}  // namespace dihedral
