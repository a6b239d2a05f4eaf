#pragma once

// Dirichlet characters with exact root-of-unity values, Gauss sums,
// generalized Bernoulli numbers and the closed form for L(m, chi).

#include "arith.hpp"
#include "cyclotomic.hpp"
#include "mp.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dihedral {

// Generators of (Z/N)^x in canonical order: primes ascending, and for 2^e
// (e >= 3) first -1 then 5. Each entry is (generator mod N, its order).
struct UnitGenerator {
  i64 g;
  i64 order;
};

inline std::vector<UnitGenerator> unit_generators(i64 N) {
  std::vector<UnitGenerator> gens;
  if (N <= 2) return gens;
  for (auto [p, e] : factorize(N)) {
    i64 pe = ipow(p, e);
    i64 rest = N / pe;
    auto lift = [&](i64 x) { return rest == 1 ? mod(x, pe) : crt(mod(x, pe), pe, 1, rest); };
    if (p == 2) {
      if (e == 1) continue;
      gens.push_back({lift(-1), 2});
      if (e >= 3) gens.push_back({lift(5), pe / 4});
    } else {
      gens.push_back({lift(primitive_root(p, e)), pe / p * (p - 1)});
    }
  }
  return gens;
}

class DirichletChar {
 public:
  DirichletChar() : DirichletChar(1) {}
  // Trivial character mod N.
  explicit DirichletChar(i64 N) : N_(N), M_(1), exps_(static_cast<std::size_t>(N), -1) {
    for (i64 r = 0; r < N; ++r)
      if (std::gcd(r, N) == 1) exps_[static_cast<std::size_t>(r)] = 0;
    if (N == 1) exps_[0] = 0;
  }

  // From a full table of exponents mod M (-1 marks residues sharing a factor with N).
  DirichletChar(i64 N, i64 M, std::vector<i64> exps) : N_(N), M_(M), exps_(std::move(exps)) {
    if (static_cast<i64>(exps_.size()) != N) throw std::invalid_argument("character table has wrong size");
    for (i64 r = 0; r < N; ++r) {
      bool unit = std::gcd(r, N) == 1 || N == 1;
      i64& e = exps_[static_cast<std::size_t>(r)];
      if (!unit) {
        if (e != -1) throw std::invalid_argument("character nonzero on a non-unit residue");
        continue;
      }
      if (e < 0) throw std::invalid_argument("character zero on a unit residue");
      e = mod(e, M_);
    }
    for (const auto& g : unit_generators(N)) {
      for (i64 r = 1; r < N; ++r) {
        if (std::gcd(r, N) != 1) continue;
        if (exp_at(mulmod(g.g, r, N)) != mod(exp_at(g.g) + exp_at(r), M_)) throw std::invalid_argument("character table is not multiplicative");
      }
    }
    reduce_order();
  }

  // Character number `index` in the canonical enumeration of characters mod N.
  static DirichletChar from_index(i64 N, i64 index) {
    auto gens = unit_generators(N);
    i64 total = 1;
    for (const auto& g : gens) total *= g.order;
    if (index < 0 || index >= total) throw std::out_of_range("character index out of range for modulus " + std::to_string(N));
    i64 M = 1;
    for (const auto& g : gens) M = lcm(M, g.order);
    std::vector<i64> digits;
    i64 rest = index;
    for (const auto& g : gens) {
      digits.push_back(rest % g.order);
      rest /= g.order;
    }
    std::vector<i64> exps(static_cast<std::size_t>(N), -1);
    if (N == 1) exps[0] = 0;
    // walk the group as a product of cyclic factors
    std::vector<i64> j(gens.size(), 0);
    while (true) {
      i64 x = 1 % N, ex = 0;
      for (std::size_t i = 0; i < gens.size(); ++i) {
        x = mulmod(x, powmod(gens[i].g, j[i], N), N);
        ex += j[i] * digits[i] * (M / gens[i].order);
      }
      if (N > 1) exps[static_cast<std::size_t>(x)] = mod(ex, M);
      std::size_t i = 0;
      for (; i < gens.size(); ++i) {
        if (++j[i] < gens[i].order) break;
        j[i] = 0;
      }
      if (i == gens.size()) break;
    }
    return DirichletChar(N, M, std::move(exps));
  }

  static i64 count(i64 N) { return euler_phi(N); }

  // Kronecker symbol (d|.) as a character mod |d|.
  static DirichletChar kronecker_char(i64 d) {
    i64 N = d < 0 ? -d : d;
    std::vector<i64> exps(static_cast<std::size_t>(N), -1);
    for (i64 r = 0; r < N; ++r) {
      int k = kronecker(d, r);
      if (N == 1) k = 1;
      if (k != 0) exps[static_cast<std::size_t>(r)] = k == 1 ? 0 : 1;
    }
    return DirichletChar(N, 2, std::move(exps));
  }

  i64 modulus() const { return N_; }
  i64 value_order() const { return M_; }
  const std::vector<i64>& table() const { return exps_; }

  // Exponent e with chi(n) = zeta_M^e, or nullopt if gcd(n, N) > 1.
  std::optional<i64> exponent(i64 n) const {
    i64 e = exps_[static_cast<std::size_t>(mod(n, N_))];
    if (e < 0) return std::nullopt;
    return e;
  }
  Cyclo value(i64 n) const {
    auto e = exponent(n);
    if (!e) return Cyclo(M_);
    return Cyclo::root(M_, *e);
  }
  Complex value_numeric(i64 n, long bits) const {
    auto e = exponent(n);
    if (!e) return Complex(bits);
    return root_of_unity(*e, M_, bits);
  }
  // Real-valued character evaluated as an integer; throws otherwise.
  int real_value(i64 n) const {
    if (M_ > 2) throw std::domain_error("character is not real");
    auto e = exponent(n);
    if (!e) return 0;
    return *e == 0 ? 1 : -1;
  }

  bool is_trivial() const {
    for (i64 e : exps_)
      if (e > 0) return false;
    return true;
  }
  bool is_real() const { return M_ <= 2; }
  // nu with chi(-1) = (-1)^nu
  int parity() const {
    if (N_ <= 2) return 0;
    return *exponent(-1) == 0 ? 0 : 1;
  }

  i64 conductor() const {
    for (i64 c : divisors(N_)) {
      bool ok = true;
      for (i64 r = 1; r < N_ && ok; r += c) {
        auto e = exponent(r);
        if (e && *e != 0) ok = false;
      }
      if (ok) return c;
    }
    return N_;
  }
  bool is_primitive() const { return conductor() == N_; }

  DirichletChar primitive() const {
    i64 c = conductor();
    if (c == N_) return *this;
    std::vector<i64> exps(static_cast<std::size_t>(c), -1);
    if (c == 1) exps[0] = 0;
    for (i64 u = 0; u < c; ++u) {
      if (std::gcd(u, c) != 1) continue;
      i64 r = u;
      while (std::gcd(r, N_) != 1) r += c;
      exps[static_cast<std::size_t>(u)] = *exponent(r);
    }
    return DirichletChar(c, M_, std::move(exps));
  }

  // Same character viewed modulo a multiple of N.
  DirichletChar induce(i64 N2) const {
    if (N2 % N_ != 0) throw std::invalid_argument("induce target must be a multiple of the modulus");
    std::vector<i64> exps(static_cast<std::size_t>(N2), -1);
    for (i64 r = 0; r < N2; ++r) {
      if (std::gcd(r, N2) != 1 && N2 > 1) continue;
      exps[static_cast<std::size_t>(r)] = *exponent(r);
    }
    if (N2 == 1) exps[0] = 0;
    return DirichletChar(N2, M_, std::move(exps));
  }

  friend DirichletChar operator*(const DirichletChar& a, const DirichletChar& b) {
    i64 N = lcm(a.N_, b.N_);
    i64 M = lcm(a.M_, b.M_);
    std::vector<i64> exps(static_cast<std::size_t>(N), -1);
    for (i64 r = 0; r < N; ++r) {
      auto ea = a.exponent(r), eb = b.exponent(r);
      if (!ea || !eb) continue;
      if (std::gcd(r, N) != 1 && N > 1) continue;
      exps[static_cast<std::size_t>(r)] = mod(*ea * (M / a.M_) + *eb * (M / b.M_), M);
    }
    return DirichletChar(N, M, std::move(exps));
  }

  DirichletChar pow(i64 n) const {
    std::vector<i64> exps = exps_;
    for (i64& e : exps)
      if (e >= 0) e = mod(e * n, M_);
    return DirichletChar(N_, M_, std::move(exps));
  }
  DirichletChar conj() const { return pow(-1); }

  friend bool operator==(const DirichletChar& a, const DirichletChar& b) {
    if (a.N_ != b.N_) return false;
    i64 M = lcm(a.M_, b.M_);
    for (std::size_t r = 0; r < a.exps_.size(); ++r) {
      i64 x = a.exps_[r], y = b.exps_[r];
      if ((x < 0) != (y < 0)) return false;
      if (x >= 0 && x * (M / a.M_) != y * (M / b.M_)) return false;
    }
    return true;
  }

  std::string describe() const {
    return "mod " + std::to_string(N_) + ", conductor " + std::to_string(conductor()) + ", order " + std::to_string(M_) + ", parity " +
           std::to_string(parity());
  }

 private:
  i64 exp_at(i64 n) const { return exps_[static_cast<std::size_t>(mod(n, N_))]; }

  void reduce_order() {
    i64 g = M_;
    for (i64 e : exps_)
      if (e > 0) g = std::gcd(g, e);
    if (g <= 1) return;
    for (i64& e : exps_)
      if (e >= 0) e /= g;
    M_ /= g;
  }

  i64 N_;
  i64 M_;
  std::vector<i64> exps_;
};

// chi^sigma for sigma: zeta -> zeta^b on the value field.
inline DirichletChar conjugate_char(const DirichletChar& chi, i64 b) {
  if (std::gcd(mod(b, chi.value_order()), chi.value_order()) != 1 && chi.value_order() > 1)
    throw std::invalid_argument("conjugation index must be coprime to the value order " + std::to_string(chi.value_order()));
  return chi.pow(b);
}

// Exact Gauss sum of the primitive part, in Q(zeta_lcm(M, c)).
inline Cyclo gauss_sum_exact(const DirichletChar& chi) {
  DirichletChar p = chi.primitive();
  i64 c = p.modulus();
  i64 L = lcm(p.value_order(), c);
  if (c == 1) return Cyclo::integer(L, 1);
  Cyclo s(L);
  for (i64 u = 1; u < c; ++u) {
    auto e = p.exponent(u);
    if (!e) continue;
    s += Cyclo::root(L, *e * (L / p.value_order()) + u * (L / c));
  }
  return s;
}

inline Complex gauss_sum(const DirichletChar& chi, long bits) {
  DirichletChar p = chi.primitive();
  i64 c = p.modulus();
  if (c == 1) return Complex(1, 0, bits);
  long wb = bits + 16;
  Complex s(wb);
  for (i64 u = 1; u < c; ++u) {
    auto e = p.exponent(u);
    if (!e) continue;
    i64 L = lcm(p.value_order(), c);
    s += root_of_unity(*e * (L / p.value_order()) + u * (L / c), L, wb);
  }
  return s.with_bits(bits);
}

// gamma(chi1) gamma(chi2) / gamma(chi1 chi2), exactly.
inline Cyclo gauss_quotient_exact(const DirichletChar& a, const DirichletChar& b) {
  return gauss_sum_exact(a) * gauss_sum_exact(b) / gauss_sum_exact(a * b);
}
inline Complex gauss_quotient(const DirichletChar& a, const DirichletChar& b, long bits) {
  return gauss_quotient_exact(a, b).embed(bits);
}

// Bernoulli polynomial B_m(x) with B_1 = -1/2.
inline mpq_class bernoulli_poly(int m, const mpq_class& x) {
  const auto& B = bernoulli_numbers(static_cast<std::size_t>(m));
  mpq_class r = 0, xp = 1;
  mpz_class binom;
  for (int j = m; j >= 0; --j) {
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(j));
    r += mpq_class(binom) * B[static_cast<std::size_t>(j)] * xp;
    xp *= x;
  }
  return r;
}

// B_{m,chi} = c^{m-1} sum_{a=1}^{c} chi(a) B_m(a/c) for primitive chi.
inline Cyclo bernoulli_gen(int m, const DirichletChar& chi) {
  if (m < 1) throw std::invalid_argument("bernoulli_gen needs m >= 1");
  if (!chi.is_primitive()) throw std::invalid_argument("bernoulli_gen needs a primitive character (pass chi.primitive())");
  i64 c = chi.modulus();
  Cyclo s(chi.value_order());
  for (i64 a = 1; a <= c; ++a) {
    auto e = chi.exponent(a);
    if (!e) continue;
    s += Cyclo::root(chi.value_order(), *e) * bernoulli_poly(m, mpq_class(a, c));
  }
  mpz_class cp;
  mpz_ui_pow_ui(cp.get_mpz_t(), static_cast<unsigned long>(c), static_cast<unsigned long>(m - 1));
  return s * mpq_class(cp);
}

// Primes dividing N but not the conductor.
inline std::vector<i64> imprimitive_primes(const DirichletChar& chi) {
  std::vector<i64> out;
  i64 c = chi.conductor();
  for (auto [p, e] : factorize(chi.modulus()))
    if (c % p != 0) out.push_back(p);
  return out;
}

// L(1 - m, chi) for m >= 1, exact (finite Euler factors removed for imprimitive chi).
inline Cyclo dirichlet_L_nonpositive(int m, const DirichletChar& chi) {
  DirichletChar p = chi.primitive();
  Cyclo v = bernoulli_gen(m, p) * mpq_class(-1, m);
  for (i64 q : imprimitive_primes(chi)) {
    mpz_class qp;
    mpz_ui_pow_ui(qp.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(m - 1));
    v = v * (Cyclo::integer(p.value_order(), 1) - p.value(q) * mpq_class(qp));
  }
  return v;
}

// L_f(m, chi) for m >= 1 with m = nu (mod 2), via generalized Bernoulli numbers.
inline Complex dirichlet_L(int m, const DirichletChar& chi, long bits) {
  if (m < 1) throw std::invalid_argument("dirichlet_L needs m >= 1");
  int nu = chi.parity();
  if ((m - nu) % 2 != 0) throw std::domain_error("non-critical parity: m = " + std::to_string(m) + ", nu = " + std::to_string(nu));
  DirichletChar p = chi.primitive();
  if (p.modulus() == 1 && m == 1) throw std::domain_error("zeta has a pole at s = 1");
  long wb = bits + kGuardBits;
  i64 c = p.modulus();
  Complex g = gauss_sum(p, wb);
  Complex ipow = nu == 0 ? Complex(1, 0, wb) : I(wb);
  Complex b = bernoulli_gen(m, p.conj()).embed(wb);
  Real fact(1L, wb);
  for (int j = 2; j <= m; ++j) fact *= Real(static_cast<long>(j), wb);
  Real scale = pow(pi(wb) * 2L / Real(static_cast<long>(c), wb), static_cast<long>(m)) / fact;
  int sgn = ((1 + (m - nu) / 2) % 2 == 0) ? 1 : -1;
  Complex v = g / (ipow * 2L) * scale * b * static_cast<long>(sgn);
  for (i64 q : imprimitive_primes(chi)) {
    Complex f = Complex(1, 0, wb) - p.value_numeric(q, wb) * pow(Real(q, wb), -static_cast<long>(m));
    v = v * f;
  }
  return v.with_bits(bits);
}

}  // namespace dihedral
