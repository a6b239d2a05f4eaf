#pragma once

// Shimura periods u^+-, the Deligne period combinations c^+-(Sym^n), and the
// verifiers that divide critical values by them and recognize the quotient.

#include "cmform.hpp"
#include "lvalue.hpp"
#include "recognize.hpp"
#include "symdecomp.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace dihedral {

struct PeriodOptions {
  i64 conductor_bound = 200;
  // Skip this many valid twists before accepting one; 0 = smallest conductor.
  int skip_plus = 0, skip_minus = 0;
};

struct TwistChoice {
  DirichletChar xi{1};
  Complex L;  // L_f(m0, phi, xi), the nonvanishing certificate
  Complex gauss;
  std::optional<CalibrationReport> calibration;
};

struct PeriodPair {
  Complex u_plus, u_minus;
  TwistChoice plus, minus;
  int point = 0;  // the critical m0 = k - 1
  std::vector<std::string> skipped;
  long bits = 0;
};

namespace detail {

// Real primitive characters ordered by conductor: trivial, then the Kronecker
// symbol of the fundamental discriminant +-c.
inline std::vector<DirichletChar> real_primitive_chars(i64 bound) {
  std::vector<DirichletChar> out{DirichletChar(1)};
  for (i64 c = 3; c <= bound; ++c)
    for (i64 d : {c, -c})
      if (is_fundamental_discriminant(d)) out.push_back(DirichletChar::kronecker_char(d));
  return out;
}

inline TwistChoice find_twist(const CMForm& f, int parity, int m, long bits, const PeriodOptions& opt, int skip,
                              std::vector<std::string>& skipped) {
  Real gate = pow(Real(10L, 64), Real(mpq_class(-bits, 8), 64));
  std::string sign = parity == 0 ? "+" : "-";
  std::vector<std::string> tried;
  for (const auto& xi : real_primitive_chars(opt.conductor_bound)) {
    std::string name = "xi" + sign + " conductor " + std::to_string(xi.conductor());
    if (xi.parity() != parity) {
      skipped.push_back(name + ": parity");
      continue;
    }
    if (std::gcd(xi.conductor(), f.level()) != 1) {
      skipped.push_back(name + ": not coprime to the level");
      continue;
    }
    LFunction L(cm_spec(f, xi.is_trivial() ? std::nullopt : std::optional<DirichletChar>(xi)));
    L.calibrate(bits);
    Complex v = L.value(Complex(Real(static_cast<long>(m + f.shift()), bits)), bits);
    tried.push_back(std::to_string(xi.conductor()));
    if (abs(v).with_bits(64) <= gate) {
      skipped.push_back(name + ": L-value below the nonvanishing gate");
      continue;
    }
    if (skip-- > 0) {
      skipped.push_back(name + ": skipped on request");
      continue;
    }
    return {xi, v, gauss_sum(xi, bits), L.calibration()};
  }
  std::string list;
  for (const auto& t : tried) list += (list.empty() ? "" : ", ") + t;
  throw std::runtime_error("no nonvanishing twist of parity " + sign + " with conductor <= " + std::to_string(opt.conductor_bound) +
                           " (tried " + list + ")");
}

}  // namespace detail

// u^+- = L_f(k-1, phi, xi^+-) / ((2 pi i)^{k-1} gamma(xi^+-)) with xi^+-(-1) = +-(-1)^{k-1}.
inline PeriodPair shimura_periods(const CMForm& f, long bits, const PeriodOptions& opt = {}) {
  int k = f.weight();
  if (k < 2) throw std::invalid_argument("periods need weight >= 2");
  PeriodPair pp;
  pp.bits = bits;
  pp.point = k - 1;
  long wb = bits + 32;
  int par = (k - 1) % 2;
  pp.plus = detail::find_twist(f, par, pp.point, wb, opt, opt.skip_plus, pp.skipped);
  pp.minus = detail::find_twist(f, 1 - par, pp.point, wb, opt, opt.skip_minus, pp.skipped);
  Complex tp = two_pi_i_pow(pp.point, wb);
  pp.u_plus = pp.plus.L / (tp * pp.plus.gauss);
  pp.u_minus = pp.minus.L / (tp * pp.minus.gauss);
  return pp;
}

// delta(omega) = (2 pi i)^{1-k} gamma(omega).
inline Complex delta_omega(const CMForm& f, long bits) {
  return gauss_sum(f.nebentypus().primitive(), bits) / two_pi_i_pow(f.weight() - 1, bits);
}

struct DelignePeriodSet {
  int n = 0;
  int d_plus = 0, d_minus = 0;
  Complex c_plus, c_minus, delta;
};

inline DelignePeriodSet deligne_periods(const CMForm& f, int n, const PeriodPair& pp, long bits) {
  if (n < 1) throw std::invalid_argument("symmetric power must be >= 1");
  DelignePeriodSet d;
  d.n = n;
  d.delta = delta_omega(f, bits + 32);
  int r = n / 2;
  long t = static_cast<long>(r) * (r + 1) / 2;
  const Complex& up = pp.u_plus;
  const Complex& um = pp.u_minus;
  if (n % 2 == 1) {
    long a = static_cast<long>(r + 1) * (r + 2) / 2;
    d.d_plus = d.d_minus = r + 1;
    d.c_plus = pow(up, a) * pow(um, t) * pow(d.delta, t);
    d.c_minus = pow(um, a) * pow(up, t) * pow(d.delta, t);
  } else {
    d.d_plus = r + 1;
    d.d_minus = r;
    Complex uu = pow(up * um, t);
    d.c_plus = uu * pow(d.delta, t);
    d.c_minus = uu * pow(d.delta, static_cast<long>(r) * (r - 1) / 2);
  }
  return d;
}

// Degree of Q(a_n : n <= bound): the number of distinct conjugates of the
// coefficient vector.
inline int coefficient_field_degree(const CMForm& f, i64 bound = 100) {
  auto a = f.coefficients(bound);
  i64 L = f.value_order();
  std::set<std::vector<std::string>> seen;
  for (i64 b = 1; b < L || b == 1; ++b) {
    if (std::gcd(b, L) != 1) continue;
    std::vector<std::string> key;
    for (std::size_t n = 1; n < a.size(); ++n) key.push_back(a[n].galois(b).to_string());
    seen.insert(std::move(key));
  }
  return static_cast<int>(seen.size());
}

struct RatioReport {
  std::string label;
  Complex ratio;
  RecognitionResult recognition;
  std::vector<std::pair<long, double>> residual_curve;  // (bits, best residual) when not found
};

namespace detail {

inline RatioReport recognize_ratio(std::string label, const Complex& z, long bits, const RecognitionCaps& caps) {
  RatioReport r;
  r.label = std::move(label);
  r.ratio = z.with_bits(bits);
  r.recognition = recognize_algebraic(r.ratio, bits, caps);
  if (!r.recognition.recognized())
    for (long b : {128L, (128 + bits) / 2, bits}) {
      if (b > bits) continue;
      auto t = recognize_algebraic(r.ratio.with_bits(b), b, caps);
      r.residual_curve.emplace_back(b, t.residual_log2);
    }
  return r;
}

inline mpz_class default_height() { return 1000000; }

}  // namespace detail

struct RelationReport {
  int n = 0;
  PeriodPair base, power;
  Complex gamma_K;
  RatioReport plus, minus;
  bool plus_exactly_one = false;
  bool ok() const { return plus.recognition.recognized() && minus.recognition.recognized(); }
};

// r+ = u+(phi_{chi^n}) / u+(phi_chi)^n and r- = u-(phi_{chi^n}) / (u+(phi_chi)^n gamma(omega_K)).
inline RelationReport verify_period_relation(const HeckeChar& chi, int n, long bits, const mpz_class& max_height = detail::default_height(),
                                             const PeriodOptions& opt = {}) {
  if (n < 1) throw std::invalid_argument("symmetric power must be >= 1");
  RelationReport rep;
  rep.n = n;
  long wb = bits + 32;
  CMForm f(chi);
  rep.base = shimura_periods(f, wb, opt);
  rep.power = n == 1 ? rep.base : shimura_periods(CMForm(chi.power(n)), wb, opt);
  rep.gamma_K = gauss_sum(chi.field().omega(), wb);
  Complex un = pow(rep.base.u_plus, static_cast<long>(n));
  RecognitionCaps caps{coefficient_field_degree(f), max_height};
  Complex rp = rep.power.u_plus / un;
  Complex rm = rep.power.u_minus / (un * rep.gamma_K);
  rep.plus_exactly_one = n == 1 && rp.re == Real(1L, wb) && rp.im.is_zero();
  rep.plus = detail::recognize_ratio("r+", rp, bits, caps);
  rep.minus = detail::recognize_ratio("r-", rm, bits, caps);
  return rep;
}

struct DeligneReport {
  int n = 0, m = 0;
  char sign = '+';
  int d = 0;
  CriticalValue value;
  PeriodPair periods;
  DelignePeriodSet deligne;
  RatioReport ratio;
  bool ok() const { return ratio.recognition.recognized(); }
};

// L_f(m, Sym^n phi) / ((2 pi i)^{m d^+-} c^+-) with +- = (-1)^m.
inline DeligneReport verify_deligne(const HeckeChar& chi, int n, int m, long bits, const mpz_class& max_height = detail::default_height(),
                                    const PeriodOptions& opt = {}) {
  int k = chi.primitive().weight();
  if (!is_critical(k, n, m))
    throw std::domain_error("m = " + std::to_string(m) + " is not critical for Sym^" + std::to_string(n) + " in weight " + std::to_string(k));
  DeligneReport rep;
  rep.n = n;
  rep.m = m;
  long wb = bits + 32;
  CMForm f(chi);
  rep.periods = shimura_periods(f, wb, opt);
  rep.deligne = deligne_periods(f, n, rep.periods, wb);
  rep.value = critical_L_value(chi, n, m, std::nullopt, wb);
  bool plus = m % 2 == 0;
  rep.sign = plus ? '+' : '-';
  rep.d = plus ? rep.deligne.d_plus : rep.deligne.d_minus;
  const Complex& c = plus ? rep.deligne.c_plus : rep.deligne.c_minus;
  Complex z = rep.value.value / (two_pi_i_pow(static_cast<long>(m) * rep.d, wb) * c);
  rep.ratio = detail::recognize_ratio("L/((2 pi i)^{m d} c)", z, bits, {coefficient_field_degree(f), max_height});
  return rep;
}

struct SturmReport {
  int m = 0;
  DirichletChar xi{1};
  CriticalValue value;
  PeriodPair periods;
  RatioReport ratio;
  int two_pi_i_exponent = 0;
  bool ok() const { return ratio.recognition.recognized(); }
};

// L_f(m, Sym^2 phi, xi) / ((2 pi i)^{2m+1-k} u+ u- gamma(omega xi^2)) for
// k <= m <= 2k-2-nu, m = nu mod 2.
inline SturmReport sturm_check(const HeckeChar& chi, int m, const DirichletChar& xi_in, long bits,
                               const mpz_class& max_height = detail::default_height(), const PeriodOptions& opt = {}) {
  DirichletChar xi = xi_in.primitive();
  int k = chi.primitive().weight();
  int nu = xi.parity();
  if (m < k || m > 2 * k - 2 - nu || (m - nu) % 2 != 0)
    throw std::out_of_range("m = " + std::to_string(m) + " outside the range k <= m <= 2k-2-nu, m = nu mod 2 (k = " + std::to_string(k) +
                            ", nu = " + std::to_string(nu) + ")");
  SturmReport rep;
  rep.m = m;
  rep.xi = xi;
  long wb = bits + 32;
  CMForm f(chi);
  rep.periods = shimura_periods(f, wb, opt);
  rep.value = critical_L_value(chi, 2, m, xi.is_trivial() ? std::nullopt : std::optional<DirichletChar>(xi), wb);
  rep.two_pi_i_exponent = 2 * m + 1 - k;
  Complex g = gauss_sum((f.nebentypus() * xi.pow(2)).primitive(), wb);
  Complex z = rep.value.value / (two_pi_i_pow(rep.two_pi_i_exponent, wb) * rep.periods.u_plus * rep.periods.u_minus * g);
  rep.ratio = detail::recognize_ratio("Sturm quotient", z, bits, {coefficient_field_degree(f), max_height});
  return rep;
}

struct EquivarianceReport {
  i64 b = 1;
  i64 field_order = 1;
  FieldRecognition plus, minus, plus_conj, minus_conj;
  bool conclusive = false;
  bool plus_match = false, minus_match = false;
  bool ok() const { return conclusive && plus_match && minus_match; }
};

// sigma_b applied to the recognized ratios of chi must give the ratios of chi^sigma.
inline EquivarianceReport equivariance_check(const HeckeChar& chi, int n, i64 b, long bits, const mpz_class& max_height = detail::default_height()) {
  EquivarianceReport rep;
  rep.b = b;
  i64 L = chi.primitive().value_order();
  rep.field_order = L;
  HeckeChar chis = chi.galois_action(b);
  auto ratios = [&](const HeckeChar& c) {
    long wb = bits + 32;
    CMForm f(c);
    PeriodPair base = shimura_periods(f, wb);
    PeriodPair pw = n == 1 ? base : shimura_periods(CMForm(c.power(n)), wb);
    Complex un = pow(base.u_plus, static_cast<long>(n));
    Complex gK = gauss_sum(c.field().omega(), wb);
    return std::make_pair((pw.u_plus / un).with_bits(bits), (pw.u_minus / (un * gK)).with_bits(bits));
  };
  auto [p1, m1] = ratios(chi);
  auto [p2, m2] = ratios(chis);
  rep.plus = recognize_in_cyclotomic(p1, L, bits, max_height);
  rep.minus = recognize_in_cyclotomic(m1, L, bits, max_height);
  rep.plus_conj = recognize_in_cyclotomic(p2, L, bits, max_height);
  rep.minus_conj = recognize_in_cyclotomic(m2, L, bits, max_height);
  rep.conclusive = rep.plus.recognized && rep.minus.recognized && rep.plus_conj.recognized && rep.minus_conj.recognized;
  if (rep.conclusive) {
    rep.plus_match = rep.plus.value.galois(b) == rep.plus_conj.value;
    rep.minus_match = rep.minus.value.galois(b) == rep.minus_conj.value;
  }
  return rep;
}

}  // namespace dihedral
