#pragma once

// Exact arithmetic in Q(zeta_L), elements stored on the power basis
// 1, z, ..., z^{phi(L)-1} reduced modulo the L-th cyclotomic polynomial.

#include "arith.hpp"
#include "mp.hpp"

#include <gmpxx.h>

#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

namespace dihedral {

namespace detail {

struct CycloTables {
  i64 order;
  std::size_t degree;
  std::vector<mpz_class> phi;                 // monic, phi[degree] = 1
  std::vector<std::vector<mpz_class>> power;  // power[e] = z^e reduced, e in [0, L)
};

inline std::vector<mpz_class> poly_divexact(std::vector<mpz_class> num, const std::vector<mpz_class>& den) {
  std::size_t dn = den.size() - 1;
  std::vector<mpz_class> q(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    mpz_class c = num[i];  // den is monic
    q[i - dn] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  return q;
}

inline std::vector<mpz_class> cyclotomic_poly(i64 n);

inline const CycloTables& cyclo_tables(i64 L) {
  static std::mutex mu;
  static std::map<i64, std::shared_ptr<CycloTables>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(L);
    if (it != cache.end()) return *it->second;
  }
  auto t = std::make_shared<CycloTables>();
  t->order = L;
  t->phi = cyclotomic_poly(L);
  t->degree = t->phi.size() - 1;
  std::size_t d = t->degree;
  t->power.assign(static_cast<std::size_t>(L), std::vector<mpz_class>(d, 0));
  std::vector<mpz_class> cur(d, 0);
  cur[0] = 1;
  for (i64 e = 0; e < L; ++e) {
    t->power[static_cast<std::size_t>(e)] = cur;
    // multiply by z
    mpz_class top = cur[d - 1];
    for (std::size_t i = d - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    for (std::size_t i = 0; i < d; ++i) cur[i] -= top * t->phi[i];
  }
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = cache.emplace(L, t);
  return *it->second;
}

inline std::vector<mpz_class> cyclotomic_poly(i64 n) {
  std::vector<mpz_class> num(static_cast<std::size_t>(n + 1), 0);
  num[0] = -1;
  num[static_cast<std::size_t>(n)] = 1;
  for (i64 d : divisors(n)) {
    if (d == n) continue;
    num = poly_divexact(num, cyclo_tables(d).phi);
  }
  return num;
}

}  // namespace detail

class Cyclo {
 public:
  Cyclo() : Cyclo(1) {}
  explicit Cyclo(i64 order) : order_(order), c_(detail::cyclo_tables(order).degree, 0) {}
  Cyclo(i64 order, const mpq_class& value) : Cyclo(order) { c_[0] = value; }
  Cyclo(i64 order, std::vector<mpq_class> coeffs) : order_(order), c_(std::move(coeffs)) {
    if (c_.size() != detail::cyclo_tables(order).degree) throw std::invalid_argument("coefficient count != phi(order)");
  }

  // z_L^e
  static Cyclo root(i64 order, i64 e) {
    const auto& t = detail::cyclo_tables(order);
    Cyclo r(order);
    const auto& p = t.power[static_cast<std::size_t>(mod(e, order))];
    for (std::size_t i = 0; i < t.degree; ++i) r.c_[i] = p[i];
    return r;
  }
  static Cyclo integer(i64 order, long v) { return Cyclo(order, mpq_class(v)); }

  i64 order() const { return order_; }
  std::size_t degree() const { return c_.size(); }
  const std::vector<mpq_class>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }
  bool is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }
  mpq_class rational() const {
    if (!is_rational()) throw std::domain_error("not rational");
    return c_[0];
  }

  // Rewrite in Q(zeta_M) for a multiple M of the order.
  Cyclo lift(i64 M) const {
    if (M == order_) return *this;
    if (M % order_ != 0) {
      // Q(zeta_2h) = Q(zeta_h) for odd h: zeta_2h = -zeta_h^((h+1)/2).
      i64 h = order_ / 2;
      if (order_ % 4 != 2 || M % h != 0) throw std::invalid_argument("lift target must be a multiple of the order");
      Cyclo r(h);
      for (std::size_t j = 0; j < c_.size(); ++j) {
        if (c_[j] == 0) continue;
        i64 e = static_cast<i64>(j) * ((h + 1) / 2);
        Cyclo z = root(h, e) * mpq_class(j % 2 ? -c_[j] : c_[j]);
        r = r + z;
      }
      return r.lift(M);
    }
    i64 step = M / order_;
    Cyclo r(M);
    const auto& t = detail::cyclo_tables(M);
    for (std::size_t j = 0; j < c_.size(); ++j) {
      if (c_[j] == 0) continue;
      const auto& p = t.power[static_cast<std::size_t>(mod(static_cast<i64>(j) * step, M))];
      for (std::size_t i = 0; i < t.degree; ++i)
        if (p[i] != 0) r.c_[i] += c_[j] * p[i];
    }
    return r;
  }

  // sigma_b : z -> z^b, gcd(b, L) = 1
  Cyclo galois(i64 b) const {
    if (std::gcd(mod(b, order_), order_) != 1 && order_ > 1) throw std::invalid_argument("conjugation index not coprime to order");
    const auto& t = detail::cyclo_tables(order_);
    Cyclo r(order_);
    for (std::size_t j = 0; j < c_.size(); ++j) {
      if (c_[j] == 0) continue;
      const auto& p = t.power[static_cast<std::size_t>(mod(static_cast<i64>(j) * b, order_))];
      for (std::size_t i = 0; i < t.degree; ++i)
        if (p[i] != 0) r.c_[i] += c_[j] * p[i];
    }
    return r;
  }
  Cyclo conj() const { return galois(-1); }

  Cyclo operator-() const {
    Cyclo r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend Cyclo operator+(const Cyclo& a, const Cyclo& b) {
    if (a.order_ != b.order_) return common(a, b, [](const Cyclo& x, const Cyclo& y) { return x + y; });
    Cyclo r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
    return r;
  }
  friend Cyclo operator-(const Cyclo& a, const Cyclo& b) { return a + (-b); }
  friend Cyclo operator*(const Cyclo& a, const Cyclo& b) {
    if (a.order_ != b.order_) return common(a, b, [](const Cyclo& x, const Cyclo& y) { return x * y; });
    const auto& t = detail::cyclo_tables(a.order_);
    std::size_t d = t.degree;
    if (a.is_rational()) return b * a.c_[0];
    if (b.is_rational()) return a * b.c_[0];
    std::vector<mpq_class> full(2 * d - 1, 0);
    for (std::size_t i = 0; i < d; ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < d; ++j) {
        if (b.c_[j] == 0) continue;
        full[i + j] += a.c_[i] * b.c_[j];
      }
    }
    Cyclo r(a.order_);
    for (std::size_t e = 0; e < full.size(); ++e) {
      if (full[e] == 0) continue;
      if (e < d) {
        r.c_[e] += full[e];
        continue;
      }
      const auto& p = t.power[e % static_cast<std::size_t>(a.order_)];
      for (std::size_t i = 0; i < d; ++i)
        if (p[i] != 0) r.c_[i] += full[e] * p[i];
    }
    return r;
  }
  friend Cyclo operator*(const Cyclo& a, const mpq_class& s) {
    Cyclo r = a;
    for (auto& x : r.c_) x *= s;
    return r;
  }
  friend Cyclo operator*(const mpq_class& s, const Cyclo& a) { return a * s; }
  friend Cyclo operator/(const Cyclo& a, const Cyclo& b) { return a * b.inverse(); }
  Cyclo& operator+=(const Cyclo& o) { return *this = *this + o; }
  Cyclo& operator-=(const Cyclo& o) { return *this = *this - o; }
  Cyclo& operator*=(const Cyclo& o) { return *this = *this * o; }

  friend bool operator==(const Cyclo& a, const Cyclo& b) {
    if (a.order_ != b.order_) {
      i64 M = lcm(a.order_, b.order_);
      return a.lift(M).c_ == b.lift(M).c_;
    }
    return a.c_ == b.c_;
  }
  friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }
  friend std::ostream& operator<<(std::ostream& os, const Cyclo& a) { return os << a.to_string(); }

  Cyclo pow(long n) const {
    if (n < 0) return inverse().pow(-n);
    Cyclo r = integer(order_, 1), base = *this;
    while (n > 0) {
      if (n & 1) r = r * base;
      n >>= 1;
      if (n) base = base * base;
    }
    return r;
  }

  // Absolute norm to Q.
  mpq_class norm() const {
    Cyclo p = integer(order_, 1);
    for (i64 b = 1; b < std::max<i64>(order_, 2); ++b) {
      if (std::gcd(b, order_) != 1) continue;
      p = p * galois(b);
    }
    return p.rational();
  }

  Cyclo inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    if (is_rational()) return Cyclo(order_, 1 / c_[0]);
    Cyclo p = integer(order_, 1);
    for (i64 b = 2; b < order_; ++b) {
      if (std::gcd(b, order_) != 1) continue;
      p = p * galois(b);
    }
    mpq_class n = (p * *this).rational();
    return p * (1 / n);
  }

  // Embedding with z_L -> e^{2 pi i / L}.
  Complex embed(long bits) const {
    long wb = bits + 16;
    Complex r(wb);
    for (std::size_t j = 0; j < c_.size(); ++j) {
      if (c_[j] == 0) continue;
      r += root_of_unity(static_cast<long>(j), order_, wb) * Real(c_[j], wb);
    }
    return r.with_bits(bits);
  }

  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t j = 0; j < c_.size(); ++j) {
      if (c_[j] == 0) continue;
      if (!first) os << " + ";
      first = false;
      os << c_[j].get_str();
      if (j == 1) os << "*z";
      if (j > 1) os << "*z^" << j;
    }
    if (first) os << "0";
    if (order_ > 2) os << " [z=zeta_" << order_ << "]";
    return os.str();
  }

 private:
  template <class F>
  static Cyclo common(const Cyclo& a, const Cyclo& b, F f) {
    i64 M = lcm(a.order_, b.order_);
    return f(a.lift(M), b.lift(M));
  }

  i64 order_;
  std::vector<mpq_class> c_;
};

// Polynomials in X with cyclotomic coefficients, index = degree.
using CycloPoly = std::vector<Cyclo>;

inline void trim(CycloPoly& p) {
  while (p.size() > 1 && p.back().is_zero()) p.pop_back();
}

inline CycloPoly poly_mul(const CycloPoly& a, const CycloPoly& b) {
  if (a.empty() || b.empty()) return {};
  i64 M = lcm(a[0].order(), b[0].order());
  CycloPoly r(a.size() + b.size() - 1, Cyclo(M));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j].is_zero()) continue;
      r[i + j] += a[i] * b[j];
    }
  }
  trim(r);
  return r;
}

inline bool poly_equal(CycloPoly a, CycloPoly b) {
  trim(a);
  trim(b);
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

inline std::string poly_to_string(const CycloPoly& p) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << p[i].to_string() << ")";
    if (i == 1) os << "*X";
    if (i > 1) os << "*X^" << i;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace dihedral
