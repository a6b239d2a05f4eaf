#pragma once

// Independent reference computations used by the tests. Nothing here calls the
// library's ideal, character or L-series code.

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace oracle {

using cld = std::complex<long double>;

// Elements (x + y sqrt(D)) / 2 with x = D y mod 2 and norm n, by brute force.
struct Element {
  long long x2, y2;  // twice the coordinates: alpha = (x2 + y2 sqrt(D)) / 2
};

inline std::vector<Element> elements_of_norm(long long D, long long n) {
  std::vector<Element> out;
  long long ymax = static_cast<long long>(std::sqrt(4.0L * n / -D)) + 1;
  long long xmax = static_cast<long long>(std::sqrt(4.0L * n)) + 1;
  for (long long y = -ymax; y <= ymax; ++y)
    for (long long x = -xmax; x <= xmax; ++x) {
      if (((x - D * y) % 2 + 2) % 2 != 0) continue;
      if (x * x - D * y * y == 4 * n) out.push_back({x, y});
    }
  return out;
}

inline int unit_count(long long D) { return D == -3 ? 6 : D == -4 ? 4 : 2; }

// Principal ideals of norm n; for class number one these are all ideals.
inline long long ideal_count_by_elements(long long D, long long n) {
  return static_cast<long long>(elements_of_norm(D, n).size()) / unit_count(D);
}

inline cld embed(long long D, const Element& e) {
  return cld(e.x2 / 2.0L, e.y2 * std::sqrt(static_cast<long double>(-D)) / 2.0L);
}

// a_n of the theta series of alpha -> alpha^{k-1} (unramified, w | k-1).
inline cld theta_coefficient(long long D, int k, long long n) {
  cld s = 0;
  for (const auto& e : elements_of_norm(D, n)) s += std::pow(embed(D, e), k - 1);
  return s / static_cast<long double>(unit_count(D));
}

// Legendre symbol by Euler's criterion, p an odd prime.
inline int legendre(long long a, long long p) {
  long long r = 1, b = ((a % p) + p) % p, e = (p - 1) / 2;
  if (b == 0) return 0;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r == 1 ? 1 : -1;
}

// Gauss sum of a character given by its value table over residues mod c.
inline std::complex<double> gauss_sum(const std::vector<std::complex<double>>& values) {
  std::complex<double> s = 0;
  double c = static_cast<double>(values.size());
  for (std::size_t u = 0; u < values.size(); ++u) s += values[u] * std::polar(1.0, 2 * M_PI * static_cast<double>(u) / c);
  return s;
}

}  // namespace oracle
