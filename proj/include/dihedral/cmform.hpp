#pragma once

// The theta series of a Hecke character: sum over integral ideals a coprime to
// the conductor of lambda(a) q^{N(a)}.
//
// For a character of infinity type (p, q) this is the L-series
//     sum lambda(a) N(a)^{-s} = L_f(s - min(p, q), phi)
// with phi the newform of weight |p - q| + 1.

#include "cyclotomic.hpp"
#include "dirichlet.hpp"
#include "hecke.hpp"
#include "qfield.hpp"

#include <optional>
#include <vector>

namespace dihedral {

// Embed a list of elements of one cyclotomic field, sharing the root table.
inline std::vector<Complex> embed_all(const std::vector<Cyclo>& v, long bits) {
  std::vector<Complex> out;
  out.reserve(v.size());
  if (v.empty()) return out;
  i64 L = v[0].order();
  long wb = bits + 16;
  std::vector<Complex> roots;
  for (i64 j = 0; j < L; ++j) roots.push_back(root_of_unity(j, L, wb));
  for (const auto& x : v) {
    if (x.order() != L) {
      out.push_back(x.embed(bits));
      continue;
    }
    Complex s(wb);
    const auto& c = x.coeffs();
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (c[j] == 0) continue;
      s += roots[j] * Real(c[j], wb);
    }
    out.push_back(s.with_bits(bits));
  }
  return out;
}

// 1 - a X + c X^2, with the roots when they lie in the coefficient field.
struct EulerFactor {
  i64 p = 0;
  bool good = true;
  Cyclo a, c;
  std::optional<std::pair<Cyclo, Cyclo>> roots;
  CycloPoly poly() const { return {Cyclo::integer(a.order(), 1), -a, c}; }
};

class CMForm {
 public:
  explicit CMForm(const HeckeChar& chi) : psi_(chi.primitive()) {}

  const HeckeChar& character() const { return psi_; }
  const QuadField& field() const { return psi_.field(); }
  int weight() const { return psi_.weight(); }
  // L-series of the character = L_f(s - shift, phi)
  int shift() const { return std::min(psi_.p(), psi_.q()); }
  int motivic_weight() const { return psi_.infinity_weight(); }
  // Convention |D| * N(conductor).
  i64 level() const { return psi_.level(); }
  DirichletChar nebentypus() const { return psi_.nebentypus(); }
  i64 value_order() const { return psi_.value_order(); }

  bool is_good(i64 p) const { return level() % p != 0; }

  EulerFactor euler_factor(i64 p) const {
    const QuadField& K = field();
    i64 L = value_order();
    CycloPoly poly{Cyclo::integer(L, 1)};
    std::vector<Cyclo> linear_roots;
    bool inert = K.splitting(p) == Splitting::inert;
    for (const auto& P : K.primes_above(p)) {
      auto lam = psi_.lambda(P);
      if (!lam) continue;
      if (inert) {
        poly = poly_mul(poly, {Cyclo::integer(L, 1), Cyclo(L), -*lam});
      } else {
        poly = poly_mul(poly, {Cyclo::integer(L, 1), -*lam});
        linear_roots.push_back(*lam);
      }
    }
    poly.resize(3, Cyclo(L));
    EulerFactor f;
    f.p = p;
    f.good = is_good(p);
    f.a = -poly[1];
    f.c = poly[2];
    if (!inert) {
      while (linear_roots.size() < 2) linear_roots.push_back(Cyclo(L));
      f.roots = std::make_pair(linear_roots[0], linear_roots[1]);
    }
    return f;
  }

  // a_1 .. a_bound (index 0 unused) from the Euler product.
  std::vector<Cyclo> coefficients(i64 bound) const {
    i64 L = value_order();
    std::vector<Cyclo> a(static_cast<std::size_t>(bound + 1), Cyclo(L));
    if (bound < 1) return a;
    a[1] = Cyclo::integer(L, 1);
    std::vector<i64> spf(static_cast<std::size_t>(bound + 1), 0);
    for (i64 i = 2; i <= bound; ++i) {
      if (spf[static_cast<std::size_t>(i)] != 0) continue;
      for (i64 j = i; j <= bound; j += i)
        if (spf[static_cast<std::size_t>(j)] == 0) spf[static_cast<std::size_t>(j)] = i;
    }
    for (i64 p = 2; p <= bound; ++p) {
      if (spf[static_cast<std::size_t>(p)] != p) continue;
      EulerFactor f = euler_factor(p);
      // a_{p^e} = a a_{p^{e-1}} - c a_{p^{e-2}}
      Cyclo prev2 = Cyclo::integer(L, 1), prev1 = f.a;
      for (i64 pe = p; pe <= bound; pe *= p) {
        a[static_cast<std::size_t>(pe)] = prev1;
        Cyclo next = f.a * prev1 - f.c * prev2;
        prev2 = prev1;
        prev1 = next;
        if (pe > bound / p) break;
      }
    }
    for (i64 n = 2; n <= bound; ++n) {
      i64 p = spf[static_cast<std::size_t>(n)];
      i64 pe = 1, m = n;
      while (m % p == 0) {
        m /= p;
        pe *= p;
      }
      if (m == 1) continue;
      a[static_cast<std::size_t>(n)] = a[static_cast<std::size_t>(pe)] * a[static_cast<std::size_t>(m)];
    }
    return a;
  }

  // Direct ideal sum, independent of the Euler product.
  Cyclo coefficient_by_ideals(i64 n) const {
    Cyclo s(value_order());
    for (const auto& I : field().ideals_of_norm(n)) {
      auto v = psi_.lambda(I);
      if (v) s += *v;
    }
    return s;
  }

  std::vector<Complex> coefficients_numeric(i64 bound, long bits) const { return embed_all(coefficients(bound), bits); }

  // Twist by xi o N; coefficients become xi(n) a_n for n prime to cond(xi).
  CMForm twist(const DirichletChar& xi) const {
    if (std::gcd(xi.conductor(), level()) != 1)
      throw std::invalid_argument("twist conductor " + std::to_string(xi.conductor()) + " is not coprime to the level " +
                                  std::to_string(level()));
    return CMForm(psi_.twist(xi));
  }

 private:
  HeckeChar psi_;
};

}  // namespace dihedral
