#pragma once

// Symmetric powers of a CM form: local factors, the isobaric pieces, the
// archimedean data and critical integers.

#include "cmform.hpp"
#include "cyclotomic.hpp"
#include "dirichlet.hpp"
#include "hecke.hpp"
#include "mp.hpp"

#include <gmpxx.h>

#include <string>
#include <vector>

namespace dihedral {

// --- local factors ----------------------------------------------------------

namespace detail {

// Polynomial prod (1 - r_i X) from the power sums P_1..P_d of the r_i.
inline CycloPoly from_power_sums(const std::vector<Cyclo>& P, i64 L) {
  std::size_t d = P.size();
  std::vector<Cyclo> e(d + 1, Cyclo(L));
  e[0] = Cyclo::integer(L, 1);
  for (std::size_t k = 1; k <= d; ++k) {
    Cyclo s(L);
    for (std::size_t i = 1; i <= k; ++i) {
      Cyclo t = e[k - i] * P[i - 1];
      s = (i % 2 == 1) ? s + t : s - t;
    }
    e[k] = s * mpq_class(1, static_cast<long>(k));
  }
  CycloPoly out(d + 1, Cyclo(L));
  for (std::size_t k = 0; k <= d; ++k) out[k] = (k % 2 == 0) ? e[k] : -e[k];
  return out;
}

// alpha^j + beta^j for j = 1..d, from a = alpha + beta and c = alpha beta.
inline std::vector<Cyclo> root_power_sums(const Cyclo& a, const Cyclo& c, std::size_t d) {
  i64 L = a.order();
  std::vector<Cyclo> s{Cyclo::integer(L, 2), a};
  for (std::size_t j = 2; j <= d; ++j) s.push_back(a * s[j - 1] - c * s[j - 2]);
  return s;
}

}  // namespace detail

namespace detail {

// Sym^n of the pair with alpha + beta = a, alpha beta = c. The power sums of
// the alpha^i beta^{n-i} are h_n(alpha^j, beta^j), h_m = s_j h_{m-1} - c^j h_{m-2}.
inline CycloPoly sym_from_pair(const Cyclo& a, const Cyclo& c, int n) {
  i64 L = a.order();
  auto s = root_power_sums(a, c, static_cast<std::size_t>(n) + 1);
  std::vector<Cyclo> P;
  for (int j = 1; j <= n + 1; ++j) {
    Cyclo cj = c.pow(j);
    Cyclo h0 = Cyclo::integer(L, 1), h1 = s[static_cast<std::size_t>(j)];
    for (int m = 2; m <= n; ++m) {
      Cyclo h2 = s[static_cast<std::size_t>(j)] * h1 - cj * h0;
      h0 = h1;
      h1 = h2;
    }
    P.push_back(h1);
  }
  return from_power_sums(P, L);
}

}  // namespace detail

// prod_{i=0}^{n} (1 - alpha^i beta^{n-i} X) at a good prime.
inline CycloPoly sym_euler_factor(const CMForm& f, i64 p, int n) {
  if (n < 1) throw std::invalid_argument("symmetric power must be >= 1");
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  if (!f.is_good(p)) throw std::invalid_argument("bad prime " + std::to_string(p) + ": only the partial L-function is defined there");
  EulerFactor ef = f.euler_factor(p);
  return detail::sym_from_pair(ef.a, ef.c, n);
}

// The factor of f twisted by a character value xi_p and shifted s -> s - shift:
// 1 - xi_p a p^shift X + xi_p^2 c p^{2 shift} X^2.
inline CycloPoly twisted_shifted_factor(const EulerFactor& ef, const Cyclo& xi_p, int shift) {
  mpq_class ps(mpz_class(1));
  for (int i = 0; i < shift; ++i) ps *= ef.p;
  Cyclo one = Cyclo::integer(ef.a.order(), 1);
  return {one, -(ef.a * xi_p) * ps, ef.c * xi_p * xi_p * ps * ps};
}

// --- isobaric decomposition ---------------------------------------------------

struct IsobaricComponent {
  enum class Kind { gl1, gl2 };
  Kind kind = Kind::gl2;
  int a = 0;  // index in the decomposition
  int shift = 0;  // a (k - 1), or r (k - 1) for the GL1 piece
  // gl2: the character chi^{n-a} chi'^a, and its untwisted model chi^{n-2a}
  std::optional<HeckeChar> psi;
  std::optional<HeckeChar> base;
  int base_power = 0;
  int twist_power = 0;  // the model is twisted by chi_Q^twist_power
  // gl1: chi_Q^r
  std::optional<DirichletChar> gl1;

  std::string describe() const {
    if (kind == Kind::gl1) return "chi_Q^" + std::to_string(shift == 0 ? 0 : twist_power) + " shifted by " + std::to_string(shift);
    return "AI(chi^" + std::to_string(base_power + a) + " chi'^" + std::to_string(a) + ") = phi_{chi^" + std::to_string(base_power) +
           "} x chi_Q^" + std::to_string(twist_power) + " shifted by " + std::to_string(shift);
  }
};

inline std::vector<IsobaricComponent> isobaric_decomposition(const HeckeChar& chi, int n) {
  if (n < 1) throw std::invalid_argument("symmetric power must be >= 1");
  for (int m = 1; m <= n; ++m)
    if (chi.power(m).is_galois_invariant())
      throw std::domain_error("chi^" + std::to_string(m) + " is Galois invariant, so phi_chi has weight 1 and no dihedral decomposition");
  int k1 = chi.infinity_weight();
  HeckeChar chic = chi.galois_conjugate();
  DirichletChar chiQ = chi.restrict_to_Q();
  int r = n / 2;
  std::vector<IsobaricComponent> out;
  int top = (n % 2 == 0) ? r - 1 : r;
  for (int a = 0; a <= top; ++a) {
    IsobaricComponent c;
    c.kind = IsobaricComponent::Kind::gl2;
    c.a = a;
    c.shift = a * k1;
    c.psi = (a == 0) ? chi.power(n) : chi.power(n - a) * chic.power(a);
    c.base_power = n - 2 * a;
    c.base = chi.power(n - 2 * a);
    c.twist_power = a;
    out.push_back(std::move(c));
  }
  if (n % 2 == 0) {
    IsobaricComponent c;
    c.kind = IsobaricComponent::Kind::gl1;
    c.a = r;
    c.shift = r * k1;
    c.twist_power = r;
    c.gl1 = chiQ.pow(r);
    out.push_back(std::move(c));
  }
  return out;
}

// --- exact checks ---------------------------------------------------------------

enum class TwistModel { direct, omega, omega_omegaK };

inline const char* to_string(TwistModel t) {
  switch (t) {
    case TwistModel::direct:
      return "direct";
    case TwistModel::omega:
      return "omega";
    case TwistModel::omega_omegaK:
      return "omega*omega_K";
  }
  return "?";
}

struct PolyCheck {
  bool ok = false;
  i64 p = 0;
  int n = 0;
  std::string variant;
  CycloPoly lhs, rhs;
};

// Product of the local factors of the isobaric pieces at p. The GL2 pieces are
// taken either directly from chi^{n-a} chi'^a or as twists of phi_{chi^{n-2a}}.
inline CycloPoly isobaric_factor(const HeckeChar& chi, int n, i64 p, TwistModel model) {
  CMForm f(chi);
  i64 L = f.value_order();
  CycloPoly prod{Cyclo::integer(L, 1)};
  DirichletChar omega = f.nebentypus();
  DirichletChar omegaK = chi.field().omega();
  for (const auto& c : isobaric_decomposition(chi, n)) {
    CycloPoly fac;
    if (c.kind == IsobaricComponent::Kind::gl1) {
      Cyclo v = c.gl1->value(p);
      mpq_class ps(mpz_class(1));
      for (int i = 0; i < c.shift; ++i) ps *= p;
      fac = {Cyclo::integer(v.order(), 1), -(v * ps)};
    } else if (model == TwistModel::direct) {
      CMForm g(*c.psi);
      if (!g.is_good(p)) throw std::invalid_argument("prime " + std::to_string(p) + " is bad for a component");
      fac = g.euler_factor(p).poly();
    } else {
      CMForm g(*c.base);
      if (!g.is_good(p)) throw std::invalid_argument("prime " + std::to_string(p) + " is bad for a component");
      DirichletChar xi = model == TwistModel::omega ? omega.pow(c.twist_power) : (omega * omegaK).pow(c.twist_power);
      fac = twisted_shifted_factor(g.euler_factor(p), xi.value(p), c.shift);
    }
    prod = poly_mul(prod, fac);
  }
  return prod;
}

// Sym^n factor against the isobaric product, exactly. corrupt perturbs a_p on
// the left side (negative-path fixture).
inline PolyCheck factorization_check(const HeckeChar& chi, int n, i64 p, TwistModel model = TwistModel::direct, bool corrupt = false) {
  CMForm f(chi);
  PolyCheck r;
  r.p = p;
  r.n = n;
  r.variant = to_string(model);
  if (corrupt) {
    EulerFactor ef = f.euler_factor(p);
    r.lhs = detail::sym_from_pair(ef.a + Cyclo::integer(ef.a.order(), 1), ef.c, n);
  } else {
    r.lhs = sym_euler_factor(f, p, n);
  }
  r.rhs = isobaric_factor(chi, n, p, model);
  r.ok = poly_equal(r.lhs, r.rhs);
  return r;
}

// L(s, phi_{chi^n} x phi_chi) = L(s, phi_{chi^{n+1}}) L(s - k + 1, phi_{chi^{n-1}}, omega), locally at p.
inline PolyCheck rankin_selberg_check(const HeckeChar& chi, int n, i64 p) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  CMForm f(chi.power(n)), g(chi);
  if (!f.is_good(p) || !g.is_good(p)) throw std::invalid_argument("bad prime " + std::to_string(p));
  EulerFactor ef = f.euler_factor(p), eg = g.euler_factor(p);
  i64 L = lcm(ef.a.order(), eg.a.order());
  auto sf = detail::root_power_sums(ef.a.lift(L), ef.c.lift(L), 4);
  auto sg = detail::root_power_sums(eg.a.lift(L), eg.c.lift(L), 4);
  std::vector<Cyclo> P;
  for (std::size_t j = 1; j <= 4; ++j) P.push_back(sf[j] * sg[j]);
  PolyCheck r;
  r.p = p;
  r.n = n;
  r.variant = "rankin-selberg";
  r.lhs = detail::from_power_sums(P, L);
  CMForm up(chi.power(n + 1));
  CMForm down(chi.power(n - 1));
  DirichletChar omega = g.nebentypus();
  if (!up.is_good(p) || !down.is_good(p)) throw std::invalid_argument("bad prime " + std::to_string(p));
  r.rhs = poly_mul(up.euler_factor(p).poly(), twisted_shifted_factor(down.euler_factor(p), omega.value(p), chi.infinity_weight()));
  r.ok = poly_equal(r.lhs, r.rhs);
  return r;
}

// --- archimedean data -----------------------------------------------------------

struct WRComponent {
  enum class Kind { trivial, sign, induced };
  Kind kind = Kind::trivial;
  int l = 0;
  mpq_class t = 0;

  int dim() const { return kind == Kind::induced ? 2 : 1; }
  std::string describe() const {
    std::string base = kind == Kind::trivial ? "1" : kind == Kind::sign ? "eps" : "I(chi_" + std::to_string(l) + ")";
    if (t != 0) base += " |.|^" + t.get_str();
    return base;
  }
  friend bool operator==(const WRComponent& a, const WRComponent& b) { return a.kind == b.kind && a.l == b.l && a.t == b.t; }
};

// I(chi_0) = 1 + eps; eps^e collapses by parity.
inline std::vector<WRComponent> normal_form(const std::vector<WRComponent>& in) {
  std::vector<WRComponent> out;
  for (const auto& c : in) {
    if (c.kind == WRComponent::Kind::induced && c.l == 0) {
      out.push_back({WRComponent::Kind::trivial, 0, c.t});
      out.push_back({WRComponent::Kind::sign, 0, c.t});
    } else {
      out.push_back(c);
    }
  }
  return out;
}

inline std::vector<WRComponent> sym_infinity_type(int k, int n) {
  if (k < 1) throw std::invalid_argument("weight must be >= 1");
  if (n < 1) throw std::invalid_argument("symmetric power must be >= 1");
  std::vector<WRComponent> out;
  int r = n / 2;
  if (n % 2 == 1) {
    for (int a = 0; a <= r; ++a) out.push_back({WRComponent::Kind::induced, (2 * a + 1) * (k - 1), 0});
  } else {
    out.push_back({(r * (k - 1)) % 2 ? WRComponent::Kind::sign : WRComponent::Kind::trivial, 0, 0});
    for (int a = 1; a <= r; ++a) out.push_back({WRComponent::Kind::induced, 2 * a * (k - 1), 0});
  }
  return out;
}

// The argument of the Gamma function in the component's factor at s.
inline mpq_class gamma_argument(const WRComponent& c, const mpq_class& s) {
  switch (c.kind) {
    case WRComponent::Kind::trivial:
      return (s + c.t) / 2;
    case WRComponent::Kind::sign:
      return (s + c.t + 1) / 2;
    case WRComponent::Kind::induced:
      return s + c.t + mpq_class(c.l, 2);
  }
  return 0;
}

inline bool has_pole(const WRComponent& c, const mpq_class& s) {
  mpq_class x = gamma_argument(c, s);
  x.canonicalize();
  return x.get_den() == 1 && x <= 0;
}

// Pole set in s, as a progression start, start - step, ...
struct PoleSet {
  mpq_class start;
  int step;
  std::string describe() const { return "s = " + start.get_str() + " - " + std::to_string(step) + "j, j >= 0"; }
};

inline PoleSet poles(const WRComponent& c) {
  PoleSet ps{0, 1};
  switch (c.kind) {
    case WRComponent::Kind::trivial:
      ps = {-c.t, 2};
      break;
    case WRComponent::Kind::sign:
      ps = {-c.t - 1, 2};
      break;
    case WRComponent::Kind::induced:
      ps = {mpq_class(-c.t - mpq_class(c.l, 2)), 1};
      break;
  }
  ps.start.canonicalize();
  return ps;
}

inline Complex archimedean_factor(const Complex& s, const WRComponent& c, long bits) {
  long wb = bits + 16;
  Complex st = s.with_bits(wb) + Complex(Real(c.t, wb));
  Real pi_ = pi(wb);
  Complex a(wb);
  Real base(wb), scale(1L, wb);
  switch (c.kind) {
    case WRComponent::Kind::trivial:
      a = st / Real(2L, wb);
      base = pi_;
      break;
    case WRComponent::Kind::sign:
      a = (st + Complex(Real(1L, wb))) / Real(2L, wb);
      base = pi_;
      break;
    case WRComponent::Kind::induced:
      a = st + Complex(Real(mpq_class(c.l, 2), wb));
      base = pi_ * 2L;
      scale = Real(2L, wb);
      break;
  }
  if (a.im.is_zero() && a.re.is_integer() && a.re.sign() <= 0)
    throw std::domain_error("archimedean factor " + c.describe() + " has a pole at s = " + s.re.to_string(20) + " (poles: " +
                            poles(c).describe() + ")");
  return (pow(base, -a) * gamma(a) * scale).with_bits(bits);
}

// The factor of a list of components (product).
inline Complex archimedean_factor(const Complex& s, const std::vector<WRComponent>& cs, long bits) {
  Complex r(1, 0, bits);
  for (const auto& c : cs) r = r * archimedean_factor(s, c, bits);
  return r;
}

// --- critical integers --------------------------------------------------------------

inline std::vector<int> critical_set(int k, int n) {
  if (k < 1 || n < 1) throw std::invalid_argument("need k >= 1 and n >= 1");
  std::vector<int> out;
  int r = n / 2, k1 = k - 1;
  if (n % 2 == 1) {
    for (int m = r * k1 + 1; m <= (r + 1) * k1; ++m) out.push_back(m);
    return out;
  }
  auto range = [&](int a, int b) {
    for (int m = a; m <= b; m += 2) out.push_back(m);
  };
  bool r_odd = r % 2 == 1, k_even = k % 2 == 0;
  if (r_odd && k_even) {
    range((r - 1) * k1 + 1, r * k1);
    range(r * k1 + 1, (r + 1) * k1);
  } else if (r_odd && !k_even) {
    range((r - 1) * k1 + 1, r * k1 - 1);
    range(r * k1 + 2, (r + 1) * k1);
  } else if (!r_odd && k_even) {
    range((r - 1) * k1 + 2, r * k1 - 1);
    range(r * k1 + 2, (r + 1) * k1 - 1);
  } else {
    range((r - 1) * k1 + 1, r * k1 - 1);
    range(r * k1 + 2, (r + 1) * k1);
  }
  return out;
}

// Gamma-pole scan: L_inf in the classical variable is the automorphic one at
// s - n(k-1)/2; m is critical iff neither L_inf(m) nor L_inf(n(k-1) + 1 - m) has
// a pole.
inline std::vector<int> critical_set_oracle(int k, int n) {
  auto comps = sym_infinity_type(k, n);
  mpq_class t(-n * (k - 1), 2);
  for (auto& c : comps) c.t = t;
  comps = normal_form(comps);
  auto regular = [&](const mpq_class& s) {
    for (const auto& c : comps)
      if (has_pole(c, s)) return false;
    return true;
  };
  std::vector<int> out;
  int w = n * (k - 1);
  // every critical m lies in [0, w + 1]
  for (int m = -w - 4; m <= 2 * w + 4; ++m)
    if (regular(mpq_class(m)) && regular(mpq_class(w + 1 - m))) out.push_back(m);
  return out;
}

inline bool is_critical(int k, int n, int m) {
  for (int x : critical_set(k, n))
    if (x == m) return true;
  return false;
}

}  // namespace dihedral
