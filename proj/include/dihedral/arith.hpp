#pragma once

// Elementary integer arithmetic on machine words.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

namespace dihedral {

using i64 = std::int64_t;
using i128 = __int128;

inline i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

inline i64 mulmod(i64 a, i64 b, i64 m) { return static_cast<i64>(static_cast<i128>(mod(a, m)) * mod(b, m) % m); }

inline i64 powmod(i64 a, i64 e, i64 m) {
  if (m == 1) return 0;
  i64 r = 1, b = mod(a, m);
  while (e > 0) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

inline i64 ipow(i64 b, int e) {
  i64 r = 1;
  while (e-- > 0) r *= b;
  return r;
}

inline i64 isqrt(i64 n) {
  if (n < 0) throw std::domain_error("isqrt of negative");
  i64 r = static_cast<i64>(__builtin_sqrtl(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Extended gcd: returns g and sets x, y with a x + b y = g.
inline i64 egcd(i64 a, i64 b, i64& x, i64& y) {
  i64 x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    i64 q = a / b;
    std::tie(a, b) = std::make_pair(b, a - q * b);
    std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
    std::tie(y0, y1) = std::make_pair(y1, y0 - q * y1);
  }
  if (a < 0) {
    a = -a;
    x0 = -x0;
    y0 = -y0;
  }
  x = x0;
  y = y0;
  return a;
}

inline i64 invmod(i64 a, i64 m) {
  i64 x, y;
  if (egcd(mod(a, m), m, x, y) != 1) throw std::domain_error("not invertible");
  return mod(x, m);
}

inline bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 p : {2, 3, 5, 7, 11, 13}) {
    if (n % p == 0) return n == p;
  }
  for (i64 d = 17; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::vector<i64> primes_upto(i64 n) {
  std::vector<i64> out;
  if (n < 2) return out;
  std::vector<bool> comp(static_cast<std::size_t>(n + 1), false);
  for (i64 p = 2; p <= n; ++p) {
    if (comp[static_cast<std::size_t>(p)]) continue;
    out.push_back(p);
    for (i64 q = p * p; q <= n; q += p) comp[static_cast<std::size_t>(q)] = true;
  }
  return out;
}

struct PrimePower {
  i64 p;
  int e;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

inline std::vector<PrimePower> factorize(i64 n) {
  if (n <= 0) throw std::domain_error("factorize needs n > 0");
  std::vector<PrimePower> f;
  for (i64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.push_back({p, e});
  }
  if (n > 1) f.push_back({n, 1});
  return f;
}

inline std::vector<i64> divisors(i64 n) {
  std::vector<i64> d{1};
  for (auto [p, e] : factorize(n)) {
    std::size_t sz = d.size();
    i64 pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < sz; ++i) d.push_back(d[i] * pk);
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

inline bool squarefree(i64 n) {
  if (n < 0) n = -n;
  for (auto [p, e] : factorize(n)) {
    if (e > 1) return false;
  }
  return true;
}

inline i64 euler_phi(i64 n) {
  i64 r = n;
  for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
  return r;
}

inline i64 lcm(i64 a, i64 b) { return a / std::gcd(a, b) * b; }

// Kronecker symbol (a|n).
inline int kronecker(i64 a, i64 n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  int v = 0;
  while ((n & 1) == 0) {
    n >>= 1;
    ++v;
  }
  if (v > 0) {
    if ((a & 1) == 0) return 0;
    if ((v & 1) && (mod(a, 8) == 3 || mod(a, 8) == 5)) result = -result;
  }
  a = mod(a, n);
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      if (n % 8 == 3 || n % 8 == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

inline bool is_fundamental_discriminant(i64 d) {
  if (d == 0 || d == 1) return false;
  i64 r = mod(d, 4);
  if (r == 1) return squarefree(d);
  if (r != 0) return false;
  i64 q = d / 4;
  i64 rq = mod(q, 4);
  return (rq == 2 || rq == 3) && squarefree(q);
}

// Chinese remainder for coprime moduli; returns x mod m1*m2.
inline i64 crt(i64 r1, i64 m1, i64 r2, i64 m2) {
  i64 m = m1 * m2;
  i64 t = mulmod(mod(r2 - r1, m2), invmod(mod(m1, m2), m2), m2);
  return mod(r1 + static_cast<i64>(static_cast<i128>(m1) * t % m), m);
}

// Smallest generator of (Z/p^e)^x for odd p, or of (Z/2)^x, (Z/4)^x.
inline i64 primitive_root(i64 p, int e) {
  i64 pe = ipow(p, e);
  if (p == 2) {
    if (e > 2) throw std::domain_error("(Z/2^e)^x is not cyclic for e > 2");
    return pe - 1;
  }
  i64 phi = pe / p * (p - 1);
  auto fac = factorize(phi);
  for (i64 g = 2; g < pe; ++g) {
    if (g % p == 0) continue;
    bool ok = true;
    for (auto [q, k] : fac) {
      if (powmod(g, phi / q, pe) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw std::logic_error("no primitive root");
}

}  // namespace dihedral
