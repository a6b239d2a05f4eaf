#pragma once

// Imaginary quadratic fields Q(sqrt D): integers, ideals, splitting of primes
// and the quadratic character.
//
// Integers are written x + y*tau with tau = (d + sqrt D)/2, d = D mod 2, so
// tau^2 = d*tau + (D - d)/4.

#include "arith.hpp"
#include "cyclotomic.hpp"
#include "dirichlet.hpp"
#include "mp.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <ostream>
#include <string>
#include <vector>

namespace dihedral {

class QuadField;

struct QuadInt {
  i64 x = 0, y = 0;
  friend bool operator==(const QuadInt&, const QuadInt&) = default;
  friend auto operator<=>(const QuadInt&, const QuadInt&) = default;
};

enum class Splitting { split, inert, ramified };

inline const char* to_string(Splitting s) {
  switch (s) {
    case Splitting::split:
      return "split";
    case Splitting::inert:
      return "inert";
    default:
      return "ramified";
  }
}

// The ideal g * (a Z + ((b + sqrt D)/2) Z), norm g^2 a, with 0 <= b < 2a and
// b^2 = D (mod 4a). The content g is the largest rational integer dividing it.
struct QuadIdeal {
  i64 g = 1, a = 1, b = 0;
  i64 norm() const { return g * g * a; }
  friend bool operator==(const QuadIdeal&, const QuadIdeal&) = default;
  friend auto operator<=>(const QuadIdeal&, const QuadIdeal&) = default;
  friend std::ostream& operator<<(std::ostream& os, const QuadIdeal& I) { return os << "[" << I.g << ", " << I.a << ", " << I.b << "]"; }
};

class QuadField {
 public:
  explicit QuadField(i64 D) : D_(D) {
    if (D >= 0) throw std::invalid_argument("discriminant must be negative, got " + std::to_string(D));
    if (!is_fundamental_discriminant(D)) throw std::invalid_argument("not a fundamental discriminant: " + std::to_string(D));
    delta_ = mod(D, 2);
    c0_ = (D - delta_) / 4;
    w_ = D == -3 ? 6 : (D == -4 ? 4 : 2);
    h_ = count_reduced_forms();
  }

  i64 disc() const { return D_; }
  i64 delta() const { return delta_; }
  i64 class_number() const { return h_; }
  int unit_count() const { return w_; }

  // Arithmetic of integers.
  QuadInt add(QuadInt u, QuadInt v) const { return {u.x + v.x, u.y + v.y}; }
  QuadInt mul(QuadInt u, QuadInt v) const {
    // (x1 + y1 t)(x2 + y2 t) with t^2 = delta t + c0
    i64 yy = u.y * v.y;
    return {u.x * v.x + yy * c0_, u.x * v.y + u.y * v.x + yy * delta_};
  }
  QuadInt conj(QuadInt u) const { return {u.x + delta_ * u.y, -u.y}; }
  i64 norm(QuadInt u) const { return u.x * u.x + delta_ * u.x * u.y - c0_ * u.y * u.y; }
  i64 trace(QuadInt u) const { return 2 * u.x + delta_ * u.y; }
  QuadInt pow(QuadInt u, int n) const {
    QuadInt r{1, 0};
    for (int i = 0; i < n; ++i) r = mul(r, u);
    return r;
  }

  // Units in order u_j = zeta_w^j under the embedding tau -> (d + i sqrt|D|)/2.
  std::vector<QuadInt> units() const {
    if (w_ == 2) return {{1, 0}, {-1, 0}};
    if (w_ == 4) return {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    // D = -3: tau = zeta_6
    std::vector<QuadInt> u{{1, 0}};
    for (int j = 1; j < 6; ++j) u.push_back(mul(u.back(), QuadInt{0, 1}));
    return u;
  }
  // Index j with u = zeta_w^j, or -1 if u is not a unit.
  int unit_index(QuadInt u) const {
    auto us = units();
    for (int j = 0; j < w_; ++j)
      if (us[static_cast<std::size_t>(j)] == u) return j;
    return -1;
  }

  // Exact image in Q(zeta_|D|): sqrt D is the quadratic Gauss sum.
  Cyclo sqrt_disc() const {
    std::call_once(*sqrt_once_, [this] { *sqrt_d_ = gauss_sum_exact(omega()); });
    return *sqrt_d_;
  }
  i64 embedding_order() const { return -D_; }
  Cyclo embed_exact(QuadInt u) const {
    Cyclo tau = (Cyclo::integer(-D_, delta_) + sqrt_disc()) * mpq_class(1, 2);
    return Cyclo::integer(-D_, u.x) + tau * mpq_class(u.y);
  }
  Complex embed(QuadInt u, long bits) const {
    Real s = sqrt(Real(-D_, bits));
    Real re = Real(u.x, bits) + Real(u.y * delta_, bits) / 2L;
    return {re, s * u.y / 2L};
  }

  // The quadratic character (D|.) mod |D|.
  DirichletChar omega() const {
    std::call_once(*omega_once_, [this] { *omega_ = DirichletChar::kronecker_char(D_); });
    return *omega_;
  }
  int omega_value(i64 n) const { return kronecker(D_, n); }

  Splitting splitting(i64 p) const {
    if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
    int k = kronecker(D_, p);
    if (k == 0) return Splitting::ramified;
    return k == 1 ? Splitting::split : Splitting::inert;
  }

  // Ideals.
  bool valid(const QuadIdeal& I) const {
    if (I.g < 1 || I.a < 1 || I.b < 0 || I.b >= 2 * I.a) return false;
    return mod(I.b * I.b - D_, 4 * I.a) == 0;
  }
  QuadIdeal unit_ideal() const { return {1, 1, delta_}; }
  QuadIdeal conj(const QuadIdeal& I) const { return {I.g, I.a, mod(-I.b, 2 * I.a)}; }

  // Z-basis of the ideal in (x, y) coordinates: (g a, 0) and (g (b - d)/2, g).
  std::pair<QuadInt, QuadInt> basis(const QuadIdeal& I) const {
    return {{I.g * I.a, 0}, {I.g * (I.b - delta_) / 2, I.g}};
  }
  bool contains(const QuadIdeal& I, QuadInt u) const {
    if (mod(u.y, I.g) != 0) return false;
    i64 v = u.y / I.g;
    i64 rem = u.x - v * I.g * ((I.b - delta_) / 2);
    return mod(rem, I.g * I.a) == 0;
  }
  // Reduce u modulo I to a canonical representative.
  QuadInt reduce(const QuadIdeal& I, QuadInt u) const {
    i64 v = mod(u.y, I.g);  // y coordinate reduced mod g
    i64 k = (u.y - v) / I.g;
    i64 x = u.x - k * I.g * ((I.b - delta_) / 2);
    return {mod(x, I.g * I.a), v};
  }
  // All residues of O / I in canonical form.
  std::vector<QuadInt> residues(const QuadIdeal& I) const {
    std::vector<QuadInt> out;
    for (i64 y = 0; y < I.g; ++y)
      for (i64 x = 0; x < I.g * I.a; ++x) out.push_back({x, y});
    return out;
  }

  // Principal ideal (u), u != 0.
  QuadIdeal ideal_of(QuadInt u) const {
    if (u.x == 0 && u.y == 0) throw std::invalid_argument("zero has no ideal");
    i64 g = std::gcd(u.x, u.y);
    QuadInt p{u.x / g, u.y / g};
    i64 a = norm(p);
    // p lies in a Z + ((b + sqrt D)/2) Z iff (b - d)/2 = x / y (mod a)
    i64 b = delta_;
    if (a > 1) b = mod(delta_ + 2 * mulmod(p.x, invmod(p.y, a), a), 2 * a);
    QuadIdeal I{g, a, b};
    if (!valid(I) || !contains(I, u)) throw std::logic_error("ideal_of failed");
    return I;
  }

  // A generator of I (class number one only).
  QuadInt generator(const QuadIdeal& I) const {
    if (h_ != 1) throw std::domain_error("generators need class number 1");
    // reduce the form (a, b, c) tracking the change of basis
    i64 a = I.a, b = I.b, c = (I.b * I.b - D_) / (4 * I.a);
    i64 m11 = 1, m12 = 0, m21 = 0, m22 = 1;
    for (int guard = 0; guard < 10000; ++guard) {
      // translate so -a < b <= a
      i64 k = floor_div(a - b, 2 * a);
      if (k != 0) {
        c = a * k * k + b * k + c;
        b = b + 2 * a * k;
        m12 += k * m11;
        m22 += k * m21;
      }
      if (a > c || (a == c && b < 0)) {
        std::swap(a, c);
        b = -b;
        i64 t11 = m12, t21 = m22;
        m12 = -m11;
        m22 = -m21;
        m11 = t11;
        m21 = t21;
        continue;
      }
      break;
    }
    if (a != 1) throw std::logic_error("form did not reduce to the principal form");
    // lattice element m11 * (a0) + m21 * ((b0 + sqrt D)/2)
    QuadInt e1{I.a, 0}, e2{(I.b - delta_) / 2, 1};
    QuadInt alpha{m11 * e1.x + m21 * e2.x, m21 * e2.y};
    alpha.x *= I.g;
    alpha.y *= I.g;
    if (norm(alpha) != I.norm()) throw std::logic_error("generator has wrong norm");
    return alpha;
  }

  QuadIdeal multiply(const QuadIdeal& I, const QuadIdeal& J) const {
    if (h_ != 1) throw std::domain_error("ideal products implemented through generators (class number 1)");
    return ideal_of(mul(generator(I), generator(J)));
  }

  // Square roots of D modulo 4a, as a set of b in [0, 2a).
  std::vector<i64> roots_mod_4a(i64 a) const {
    std::vector<std::pair<i64, std::vector<i64>>> local;  // (p^e, roots)
    for (auto [p, e] : factorize(4 * a)) {
      i64 pe = ipow(p, e);
      local.push_back({pe, prime_power_roots(p, e)});
      if (local.back().second.empty()) return {};
    }
    std::vector<i64> sols{0};
    i64 m = 1;
    for (auto& [pe, rs] : local) {
      std::vector<i64> next;
      for (i64 s : sols)
        for (i64 r : rs) next.push_back(crt(s, m, r, pe));
      sols.swap(next);
      m *= pe;
    }
    std::set<i64> bs;
    for (i64 s : sols) bs.insert(mod(s, 2 * a));
    return {bs.begin(), bs.end()};
  }

  std::vector<QuadIdeal> ideals_of_norm(i64 n) const {
    std::vector<QuadIdeal> out;
    for (i64 g = 1; g * g <= n; ++g) {
      if (n % (g * g) != 0) continue;
      i64 a = n / (g * g);
      for (i64 b : roots_mod_4a(a)) out.push_back({g, a, b});
    }
    return out;
  }

  // Every integral ideal of norm <= bound, once, grouped by norm.
  std::vector<std::pair<QuadIdeal, i64>> enumerate_ideals(i64 bound) const {
    if (bound < 1) throw std::invalid_argument("bound must be >= 1");
    std::vector<std::pair<QuadIdeal, i64>> out;
    for (i64 n = 1; n <= bound; ++n)
      for (const auto& I : ideals_of_norm(n)) out.push_back({I, n});
    return out;
  }

  // Prime ideals above p.
  std::vector<QuadIdeal> primes_above(i64 p) const {
    switch (splitting(p)) {
      case Splitting::inert:
        return {QuadIdeal{p, 1, delta_}};
      default:
        return ideals_of_norm(p);
    }
  }

  std::string describe() const {
    return "Q(sqrt(" + std::to_string(D_) + ")), h = " + std::to_string(h_) + ", w = " + std::to_string(w_);
  }

 private:
  static i64 floor_div(i64 a, i64 b) {
    i64 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
  }

  i64 count_reduced_forms() const {
    // reduced: |b| <= a <= c, b >= 0 if |b| = a or a = c
    i64 count = 0;
    i64 absD = -D_;
    for (i64 a = 1; 3 * a * a <= absD; ++a) {
      for (i64 b = -a + 1; b <= a; ++b) {
        i64 num = b * b - D_;
        if (num % (4 * a) != 0) continue;
        i64 c = num / (4 * a);
        if (c < a) continue;
        if (a == c && b < 0) continue;
        if (std::gcd(std::gcd(a, b < 0 ? -b : b), c) != 1) continue;
        ++count;
      }
    }
    return count;
  }

  std::vector<i64> prime_power_roots(i64 p, int e) const {
    auto key = std::make_pair(p, e);
    {
      std::lock_guard<std::mutex> lock(*roots_mu_);
      auto it = roots_cache_->find(key);
      if (it != roots_cache_->end()) return it->second;
    }
    i64 pe = ipow(p, e);
    std::vector<i64> rs;
    if (p == 2 || pe <= 64) {
      for (i64 x = 0; x < pe; ++x)
        if (mod(x * x - D_, pe) == 0) rs.push_back(x);
    } else if (D_ % p == 0) {
      if (e == 1) rs.push_back(0);
    } else if (kronecker(D_, p) == 1) {
      i64 r = sqrt_mod_prime(mod(D_, p), p);
      i64 pk = p;
      for (int k = 1; k < e; ++k) {
        i64 pk1 = pk * p;
        // Hensel: r <- r - (r^2 - D) / (2r) mod p^{k+1}
        i64 f = mod(static_cast<i64>((static_cast<i128>(r) * r - D_) % pk1), pk1);
        i64 inv = invmod(mod(2 * r, pk1), pk1);
        r = mod(r - mulmod(f, inv, pk1), pk1);
        pk = pk1;
      }
      rs.push_back(r);
      rs.push_back(mod(-r, pe));
      std::sort(rs.begin(), rs.end());
    }
    std::lock_guard<std::mutex> lock(*roots_mu_);
    roots_cache_->emplace(key, rs);
    return rs;
  }

  // Tonelli-Shanks
  static i64 sqrt_mod_prime(i64 a, i64 p) {
    if (p == 2) return a & 1;
    i64 q = p - 1;
    int s = 0;
    while ((q & 1) == 0) {
      q >>= 1;
      ++s;
    }
    i64 z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    i64 m = s, c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
      i64 i = 0, tt = t;
      while (tt != 1) {
        tt = mulmod(tt, tt, p);
        ++i;
      }
      i64 b = c;
      for (i64 j = 0; j < m - i - 1; ++j) b = mulmod(b, b, p);
      m = i;
      c = mulmod(b, b, p);
      t = mulmod(t, c, p);
      r = mulmod(r, b, p);
    }
    return r;
  }

  i64 D_;
  i64 delta_;
  i64 c0_;
  int w_;
  i64 h_;
  std::shared_ptr<std::mutex> roots_mu_ = std::make_shared<std::mutex>();
  std::shared_ptr<std::map<std::pair<i64, int>, std::vector<i64>>> roots_cache_ =
      std::make_shared<std::map<std::pair<i64, int>, std::vector<i64>>>();
  std::shared_ptr<std::once_flag> sqrt_once_ = std::make_shared<std::once_flag>();
  std::shared_ptr<Cyclo> sqrt_d_ = std::make_shared<Cyclo>();
  std::shared_ptr<std::once_flag> omega_once_ = std::make_shared<std::once_flag>();
  std::shared_ptr<DirichletChar> omega_ = std::make_shared<DirichletChar>();
};

}  // namespace dihedral
