#pragma once

// Algebraic recognition of high-precision complex numbers: continued fractions
// for rationals, integral LLL for minimal polynomials and for coordinates in a
// cyclotomic field.

#include "cyclotomic.hpp"
#include "mp.hpp"

#include <gmpxx.h>

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace dihedral {

using IntVec = std::vector<mpz_class>;

// Integral LLL (Cohen, Alg. 2.6.7) with delta = dn/dd. Rows must be independent.
inline void lll_reduce(std::vector<IntVec>& b, long dn = 99, long dd = 100) {
  std::size_t n = b.size();
  if (n < 2) return;
  auto dot = [](const IntVec& x, const IntVec& y) {
    mpz_class s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
  };
  // 1-based: d[0] = 1, lam[k][j] for j < k
  std::vector<mpz_class> d(n + 1, 0);
  std::vector<std::vector<mpz_class>> lam(n + 1, std::vector<mpz_class>(n + 1, 0));
  auto B = [&](std::size_t i) -> IntVec& { return b[i - 1]; };
  d[0] = 1;
  d[1] = dot(B(1), B(1));
  std::size_t k = 2, kmax = 1;
  auto red = [&](std::size_t kk, std::size_t l) {
    mpz_class two = 2 * lam[kk][l];
    if (abs(two) <= d[l]) return;
    // q = round(lam / d)
    mpz_class q;
    mpz_class num = 2 * lam[kk][l] + d[l];
    mpz_class den = 2 * d[l];
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    for (std::size_t i = 0; i < B(kk).size(); ++i) B(kk)[i] -= q * B(l)[i];
    lam[kk][l] -= q * d[l];
    for (std::size_t i = 1; i < l; ++i) lam[kk][i] -= q * lam[l][i];
  };
  auto swap = [&](std::size_t kk) {
    std::swap(B(kk), B(kk - 1));
    for (std::size_t j = 1; j + 1 < kk; ++j) std::swap(lam[kk][j], lam[kk - 1][j]);
    mpz_class l = lam[kk][kk - 1];
    mpz_class Bv = (d[kk - 2] * d[kk] + l * l) / d[kk - 1];
    for (std::size_t i = kk + 1; i <= kmax; ++i) {
      mpz_class t = lam[i][kk];
      lam[i][kk] = (d[kk] * lam[i][kk - 1] - l * t) / d[kk - 1];
      lam[i][kk - 1] = (Bv * t + l * lam[i][kk]) / d[kk];
    }
    d[kk - 1] = Bv;
  };
  while (k <= n) {
    if (k > kmax) {
      kmax = k;
      for (std::size_t j = 1; j <= k; ++j) {
        mpz_class u = dot(B(k), B(j));
        for (std::size_t i = 1; i < j; ++i) u = (d[i] * u - lam[k][i] * lam[j][i]) / d[i - 1];
        if (j < k)
          lam[k][j] = u;
        else
          d[k] = u;
      }
      if (d[k] == 0) throw std::invalid_argument("LLL input rows are linearly dependent");
    }
    red(k, k - 1);
    if (dd * d[k] * d[k - 2] < dn * d[k - 1] * d[k - 1] - dd * lam[k][k - 1] * lam[k][k - 1]) {
      swap(k);
      if (k > 2) --k;
    } else {
      for (std::size_t l = k - 1; l-- > 1;) red(k, l);
      ++k;
    }
  }
}

struct RecognitionResult {
  enum class Verdict { recognized, not_found };
  Verdict verdict = Verdict::not_found;
  std::vector<mpz_class> poly;  // c_0 + c_1 x + ..., primitive, leading coefficient > 0
  double residual_log2 = 0;  // log2 |P(z)| / sum |c_i| |z|^i
  mpz_class height = 0;
  int max_degree = 0;
  long bits = 0;
  std::string method;

  bool recognized() const { return verdict == Verdict::recognized; }
  int degree() const { return poly.empty() ? -1 : static_cast<int>(poly.size()) - 1; }
  // -c_0 / c_1 for a linear polynomial
  std::optional<mpq_class> rational() const {
    if (!recognized() || degree() != 1) return std::nullopt;
    mpq_class q(-poly[0], poly[1]);
    q.canonicalize();
    return q;
  }
  std::string poly_string() const {
    std::string s;
    for (std::size_t i = poly.size(); i-- > 0;) {
      if (poly[i] == 0) continue;
      if (!s.empty()) s += poly[i] > 0 ? " + " : " - ";
      else if (poly[i] < 0) s += "-";
      mpz_class a = abs(poly[i]);
      if (a != 1 || i == 0) s += a.get_str();
      if (i >= 1) s += "x";
      if (i >= 2) s += "^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
  }
};

struct RecognitionCaps {
  int max_degree = 8;
  mpz_class max_height = 1000000;
};

namespace detail {

inline mpz_class scaled(const Real& x, long p) { return ldexp(x, p).round_z(); }

// |P(z)| / sum |c_i||z|^i, log2.
inline double poly_residual_log2(const std::vector<mpz_class>& c, const Complex& z, long wb) {
  Complex zz = z.with_bits(wb);
  Complex val(wb), pw(1, 0, wb);
  Real scale(wb);
  Real az = abs(zz);
  Real apw(1L, wb);
  for (const auto& ci : c) {
    Real cr(ci, wb);
    val += pw * cr;
    scale += abs(cr) * apw;
    pw = pw * zz;
    apw = apw * az;
  }
  if (scale.is_zero()) return 0;
  if (val.is_zero()) return -static_cast<double>(wb);
  return log2_abs(abs(val)) - log2_abs(scale);
}

inline void normalize_poly(std::vector<mpz_class>& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
  mpz_class g = 0;
  for (const auto& x : c) g = gcd(g, x);
  if (g > 1)
    for (auto& x : c) x /= g;
  if (!c.empty() && c.back() < 0)
    for (auto& x : c) x = -x;
}

inline mpz_class height(const std::vector<mpz_class>& c) {
  mpz_class h = 0;
  for (const auto& x : c)
    if (abs(x) > h) h = abs(x);
  return h;
}

// Accept only relations far better than the generic size H^{-(d+1)} that any
// number admits.
inline bool accept(double res, const mpz_class& H, int terms, long bits) {
  double gate = -static_cast<double>(bits) / 2.0;
  double generic = -static_cast<double>(terms) * std::log2(H.get_d() + 1.0) - 32.0;
  return res < gate && res < generic;
}

}  // namespace detail

// Minimal polynomial of z of degree <= caps.max_degree and height <= caps.max_height,
// from z known to `bits` bits.
inline RecognitionResult recognize_algebraic(const Complex& z, long bits, const RecognitionCaps& caps = {}) {
  if (bits < 128) throw std::invalid_argument("recognition needs at least 128 bits");
  RecognitionResult r;
  r.max_degree = caps.max_degree;
  r.bits = bits;
  Real az = abs(z);
  bool real = z.im.is_zero() || (!az.is_zero() && log2_abs(abs(z.im)) - log2_abs(az) < -static_cast<double>(bits) + 8);
  long wb = bits + 32;
  // degree 1 by continued fractions
  if (real) {
    Real x = z.re.with_bits(wb);
    mpz_class p0 = 1, q0 = 0, p1, q1 = 1;
    Real rem = x;
    p1 = floor(rem).round_z();
    rem = rem - Real(p1, wb);
    for (int it = 0; it < 2000; ++it) {
      std::vector<mpz_class> c{-p1, q1};
      detail::normalize_poly(c);
      double res = detail::poly_residual_log2(c, z, wb);
      mpz_class H = detail::height(c);
      if (H > caps.max_height) break;
      if (detail::accept(res, H, 2, bits)) {
        r.verdict = RecognitionResult::Verdict::recognized;
        r.poly = c;
        r.residual_log2 = res;
        r.height = H;
        r.method = "continued fraction";
        return r;
      }
      if (rem.is_zero() || log2_abs(rem) < -static_cast<double>(bits)) break;
      Real inv = Real(1L, wb) / rem;
      mpz_class a = floor(inv).round_z();
      rem = inv - Real(a, wb);
      mpz_class p2 = a * p1 + p0, q2 = a * q1 + q0;
      p0 = p1;
      q0 = q1;
      p1 = p2;
      q1 = q2;
    }
  }
  // integer relations among 1, z, ..., z^d
  long P = bits - 8;
  double best = 0;
  for (int d = real ? 2 : 1; d <= caps.max_degree; ++d) {
    std::vector<IntVec> rows;
    Complex pw(1, 0, wb);
    for (int i = 0; i <= d; ++i) {
      IntVec row(static_cast<std::size_t>(d + 1), 0);
      row[static_cast<std::size_t>(i)] = 1;
      row.push_back(detail::scaled(pw.re, P));
      if (!real) row.push_back(detail::scaled(pw.im, P));
      rows.push_back(std::move(row));
      pw = pw * z.with_bits(wb);
    }
    lll_reduce(rows);
    for (const auto& row : rows) {
      std::vector<mpz_class> c(row.begin(), row.begin() + d + 1);
      detail::normalize_poly(c);
      if (c.size() < 2) continue;
      mpz_class H = detail::height(c);
      if (H > caps.max_height) continue;
      double res = detail::poly_residual_log2(c, z, wb);
      best = std::min(best, res);
      if (detail::accept(res, H, static_cast<int>(c.size()), bits)) {
        r.verdict = RecognitionResult::Verdict::recognized;
        r.poly = c;
        r.residual_log2 = res;
        r.height = H;
        r.method = "LLL degree " + std::to_string(d);
        return r;
      }
    }
  }
  r.residual_log2 = best;
  r.method = "exhausted";
  return r;
}

struct FieldRecognition {
  bool recognized = false;
  Cyclo value;
  double residual_log2 = 0;
  mpz_class height = 0;
};

// z = sum_j (c_j / c_0) zeta_L^j over the power basis of Q(zeta_L).
inline FieldRecognition recognize_in_cyclotomic(const Complex& z, i64 L, long bits, const mpz_class& max_height = 1000000) {
  FieldRecognition out;
  long wb = bits + 32;
  std::size_t deg = Cyclo(L).degree();
  std::vector<Complex> basis;
  for (std::size_t j = 0; j < deg; ++j) basis.push_back(root_of_unity(static_cast<long>(j), static_cast<long>(L), wb));
  long P = bits - 8;
  std::vector<IntVec> rows;
  std::size_t n = deg + 1;
  auto push = [&](std::size_t i, const Complex& v) {
    IntVec row(n, 0);
    row[i] = 1;
    row.push_back(detail::scaled(v.re, P));
    row.push_back(detail::scaled(v.im, P));
    rows.push_back(std::move(row));
  };
  push(0, z.with_bits(wb));
  for (std::size_t j = 0; j < deg; ++j) push(j + 1, -basis[j]);
  lll_reduce(rows);
  for (const auto& row : rows) {
    if (row[0] == 0) continue;
    std::vector<mpz_class> c(row.begin(), row.begin() + static_cast<long>(n));
    mpz_class H = detail::height(c);
    if (H > max_height) continue;
    std::vector<mpq_class> coeffs;
    for (std::size_t j = 0; j < deg; ++j) {
      mpq_class q(c[j + 1], c[0]);
      q.canonicalize();
      coeffs.push_back(q);
    }
    Cyclo v(L, coeffs);
    Complex e = v.embed(wb);
    Real err = abs(e - z.with_bits(wb));
    Real sc = abs(z);
    for (const auto& q : coeffs) sc += abs(Real(q, wb));
    double res = err.is_zero() ? -static_cast<double>(wb) : log2_abs(err) - log2_abs(sc);
    if (!detail::accept(res, H, static_cast<int>(n), bits)) continue;
    out.recognized = true;
    out.value = v;
    out.residual_log2 = res;
    out.height = H;
    return out;
  }
  return out;
}

}  // namespace dihedral
