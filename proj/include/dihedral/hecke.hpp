#pragma once

// Hecke characters of an imaginary quadratic field with class number one.
//
// A character is stored algebraically: on a principal ideal (alpha) coprime to
// the modulus m,
//     lambda((alpha)) = zeta_M^{e(alpha)} * alpha^p * conj(alpha)^q,
// where e is a homomorphism (O/m)^x -> Z/M. The unitary character of weight
// k = p + 1 (q = 0) is lambda / N^{(k-1)/2}.

#include "arith.hpp"
#include "cyclotomic.hpp"
#include "dirichlet.hpp"
#include "qfield.hpp"

#include <gmpxx.h>

#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dihedral {

struct QuadZ {
  mpz_class x, y;
};

class HeckeChar {
 public:
  struct Generator {
    QuadInt gen;
    i64 exp;
  };

  // The character of infinity type (k-1, 0) whose finite part sends each listed
  // generator of (O/m)^x to zeta_M^exp.
  static HeckeChar build(const QuadField& K, int k, const QuadIdeal& modulus, const std::vector<Generator>& gens, i64 M) {
    if (K.class_number() != 1)
      throw std::domain_error("unsupported: class number " + std::to_string(K.class_number()) + " > 1 (only h(D) = 1 is implemented)");
    if (k < 2) throw std::invalid_argument("weight_k must be >= 2");
    if (M < 1) throw std::invalid_argument("order must be >= 1");
    if (!K.valid(modulus)) throw std::invalid_argument("conductor is not a valid ideal [g, a, b]");
    HeckeChar chi(K, k - 1, 0, modulus, M);
    chi.fill_from_generators(gens);
    chi.check_units();
    chi.normalize_order();
    return chi;
  }

  // Internal constructor from a complete table on (O/m)^x.
  HeckeChar(const QuadField& K, int p, int q, const QuadIdeal& modulus, i64 M, std::map<QuadInt, i64> table)
      : HeckeChar(K, p, q, modulus, M) {
    table_ = std::move(table);
    for (auto& [r, e] : table_) e = mod(e, M_);
    if (static_cast<i64>(table_.size()) != unit_count_) throw std::invalid_argument("finite part table does not cover (O/m)^x");
    check_units();
    normalize_order();
  }

  const QuadField& field() const { return K_; }
  int p() const { return p_; }
  int q() const { return q_; }
  // Modular weight of the associated form: |p - q| + 1.
  int weight() const { return std::abs(p_ - q_) + 1; }
  int infinity_weight() const { return p_ + q_; }
  const QuadIdeal& modulus() const { return m_; }
  i64 finite_order() const { return M_; }
  // Order of the cyclotomic field containing all lambda values.
  i64 value_order() const { return lcm(M_, -K_.disc()); }
  const std::map<QuadInt, i64>& table() const { return table_; }
  i64 level() const { return -K_.disc() * m_.norm(); }

  bool coprime(QuadInt alpha) const {
    if (m_.norm() == 1) return true;
    for (const auto& P : prime_divisors_)
      if (K_.contains(P, alpha)) return false;
    return true;
  }
  std::optional<i64> finite_exp(QuadInt alpha) const {
    if (!coprime(alpha)) return std::nullopt;
    return table_.at(K_.reduce(m_, alpha));
  }

  // lambda((alpha)) in Q(zeta_L), L = value_order(); empty if not coprime.
  std::optional<Cyclo> lambda_element(QuadInt alpha) const {
    auto e = finite_exp(alpha);
    if (!e) return std::nullopt;
    i64 L = value_order();
    QuadZ a = qpow({alpha.x, alpha.y}, p_);
    QuadZ b = qpow(conj({alpha.x, alpha.y}), q_);
    QuadZ ab = qmul(a, b);
    Cyclo v = Cyclo(L, mpq_class(ab.x)) + tau_ * mpq_class(ab.y);
    if (*e != 0) v = v * Cyclo::root(L, *e * (L / M_));
    return v;
  }
  std::optional<Cyclo> lambda(const QuadIdeal& I) const { return lambda_element(K_.generator(I)); }
  Complex lambda_numeric(const QuadIdeal& I, long bits) const {
    auto v = lambda(I);
    if (!v) return Complex(bits);
    return v->embed(bits);
  }

  HeckeChar power(int n) const {
    if (n < 0) throw std::invalid_argument("power needs n >= 0");
    std::map<QuadInt, i64> t = table_;
    for (auto& [r, e] : t) e = mod(e * n, M_);
    return HeckeChar(K_, p_ * n, q_ * n, m_, M_, std::move(t));
  }

  // chi'(a) = chi(conj a)
  HeckeChar galois_conjugate() const {
    QuadIdeal mc = K_.conj(m_);
    std::map<QuadInt, i64> t;
    for (const auto& r : K_.residues(mc)) {
      if (!coprime(K_.conj(r))) continue;
      t[r] = table_.at(K_.reduce(m_, K_.conj(r)));
    }
    return HeckeChar(K_, q_, p_, mc, M_, std::move(t));
  }

  bool is_galois_invariant() const {
    if (p_ != q_) return false;
    return *this == galois_conjugate();
  }

  friend HeckeChar operator*(const HeckeChar& a, const HeckeChar& b) {
    if (a.K_.disc() != b.K_.disc()) throw std::invalid_argument("characters of different fields");
    const QuadField& K = a.K_;
    QuadIdeal m = K.multiply(a.m_, b.m_);
    i64 M = lcm(a.M_, b.M_);
    std::map<QuadInt, i64> t;
    for (const auto& r : K.residues(m)) {
      auto ea = a.finite_exp(r), eb = b.finite_exp(r);
      if (!ea || !eb) continue;
      t[r] = mod(*ea * (M / a.M_) + *eb * (M / b.M_), M);
    }
    return HeckeChar(K, a.p_ + b.p_, a.q_ + b.q_, m, M, std::move(t)).primitive();
  }

  // chi * (xi o N)
  HeckeChar twist(const DirichletChar& xi) const {
    DirichletChar x = xi.primitive();
    i64 c = x.modulus();
    if (c == 1) return *this;
    QuadIdeal m = K_.multiply(m_, QuadIdeal{c, 1, K_.delta()});
    i64 M = lcm(M_, x.value_order());
    std::map<QuadInt, i64> t;
    for (const auto& r : K_.residues(m)) {
      auto e = finite_exp(r);
      if (!e) continue;
      auto ex = x.exponent(K_.norm(r));
      if (!ex) continue;
      t[r] = mod(*e * (M / M_) + *ex * (M / x.value_order()), M);
    }
    return HeckeChar(K_, p_, q_, m, M, std::move(t)).primitive();
  }

  // chi^sigma for sigma : zeta_L -> zeta_L^b.
  HeckeChar galois_action(i64 b) const {
    i64 L = value_order();
    if (std::gcd(mod(b, L), L) != 1) throw std::invalid_argument("conjugation index not coprime to " + std::to_string(L));
    std::map<QuadInt, i64> t = table_;
    for (auto& [r, e] : t) e = mod(e * b, M_);
    bool swaps = kronecker(K_.disc(), mod(b, -K_.disc())) == -1;
    return HeckeChar(K_, swaps ? q_ : p_, swaps ? p_ : q_, m_, M_, std::move(t));
  }

  // Conductor: the smallest divisor of m through which the finite part factors.
  HeckeChar primitive() const {
    if (m_.norm() == 1) return *this;
    std::vector<QuadIdeal> divs;
    for (i64 d : divisors(m_.norm()))
      for (const auto& J : K_.ideals_of_norm(d))
        if (ideal_contains(J, m_)) divs.push_back(J);
    for (const auto& J : divs) {
      if (J == m_) break;
      bool ok = true;
      for (const auto& [r, e] : table_) {
        if (e == 0) continue;
        QuadInt diff{r.x - 1, r.y};
        if (K_.contains(J, diff)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      std::map<QuadInt, i64> t;
      for (const auto& [r, e] : table_) t.emplace(K_.reduce(J, r), e);
      return HeckeChar(K_, p_, q_, J, M_, std::move(t));
    }
    return *this;
  }
  bool is_primitive() const { return primitive().m_ == m_; }

  // chi restricted to Q: n -> e(n) on integers coprime to m, as a Dirichlet character.
  DirichletChar restrict_to_Q() const {
    i64 m0 = m_.g * m_.a;
    if (m0 == 1) return DirichletChar(1);
    std::vector<i64> exps(static_cast<std::size_t>(m0), -1);
    for (i64 n = 1; n < m0; ++n) {
      if (std::gcd(n, m0) != 1) continue;
      exps[static_cast<std::size_t>(n)] = *finite_exp(QuadInt{n, 0});
    }
    return DirichletChar(m0, M_, std::move(exps));
  }
  // Nebentypus omega of the form: omega * omega_K = chi_Q.
  DirichletChar nebentypus() const { return restrict_to_Q() * K_.omega(); }

  friend bool operator==(const HeckeChar& a, const HeckeChar& b) {
    if (a.K_.disc() != b.K_.disc() || a.p_ != b.p_ || a.q_ != b.q_ || !(a.m_ == b.m_)) return false;
    i64 M = lcm(a.M_, b.M_);
    for (const auto& [r, e] : a.table_)
      if (e * (M / a.M_) != b.table_.at(r) * (M / b.M_)) return false;
    return true;
  }

  std::string describe() const {
    return "Hecke character on Q(sqrt(" + std::to_string(K_.disc()) + ")), infinity type (" + std::to_string(p_) + ", " +
           std::to_string(q_) + "), modulus [" + std::to_string(m_.g) + ", " + std::to_string(m_.a) + ", " + std::to_string(m_.b) +
           "], finite order " + std::to_string(M_);
  }

  QuadZ qmul(const QuadZ& u, const QuadZ& v) const {
    mpz_class yy = u.y * v.y;
    return {u.x * v.x + yy * c0_, u.x * v.y + u.y * v.x + yy * K_.delta()};
  }
  QuadZ conj(const QuadZ& u) const { return {u.x + K_.delta() * u.y, -u.y}; }
  QuadZ qpow(QuadZ u, int n) const {
    QuadZ r{1, 0};
    while (n > 0) {
      if (n & 1) r = qmul(r, u);
      n >>= 1;
      if (n) u = qmul(u, u);
    }
    return r;
  }

 private:
  HeckeChar(const QuadField& K, int p, int q, const QuadIdeal& modulus, i64 M) : K_(K), p_(p), q_(q), m_(modulus), M_(M) {
    if (K.class_number() != 1) throw std::domain_error("unsupported: class number > 1");
    c0_ = (K.disc() - K.delta()) / 4;
    tau_ = ((Cyclo::integer(-K.disc(), K.delta()) + K.sqrt_disc()) * mpq_class(1, 2)).lift(value_order());
    for (const auto& [pr, e] : factorize_or_empty(m_.norm()))
      for (const auto& P : K.primes_above(pr))
        if (ideal_contains(P, m_)) prime_divisors_.push_back(P);
    unit_count_ = 0;
    for (const auto& r : K.residues(m_))
      if (coprime(r)) ++unit_count_;
  }

  static std::vector<PrimePower> factorize_or_empty(i64 n) { return n == 1 ? std::vector<PrimePower>{} : factorize(n); }

  // J contains I
  bool ideal_contains(const QuadIdeal& J, const QuadIdeal& I) const {
    auto [e1, e2] = K_.basis(I);
    return K_.contains(J, e1) && K_.contains(J, e2);
  }

  void fill_from_generators(const std::vector<Generator>& gens) {
    QuadInt one = K_.reduce(m_, {1, 0});
    std::vector<std::pair<QuadInt, i64>> g;
    for (const auto& [gen, e] : gens) {
      if (!coprime(gen))
        throw std::invalid_argument("finite_part generator " + std::to_string(gen.x) + "+" + std::to_string(gen.y) +
                                    "*tau is not a unit modulo the conductor");
      g.push_back({K_.reduce(m_, gen), mod(e, M_)});
    }
    table_.clear();
    table_[one] = 0;
    std::deque<QuadInt> queue{one};
    while (!queue.empty()) {
      QuadInt x = queue.front();
      queue.pop_front();
      i64 ex = table_.at(x);
      for (const auto& [gr, ge] : g) {
        QuadInt y = K_.reduce(m_, K_.mul(x, gr));
        i64 ey = mod(ex + ge, M_);
        auto it = table_.find(y);
        if (it == table_.end()) {
          table_[y] = ey;
          queue.push_back(y);
        } else if (it->second != ey) {
          throw std::invalid_argument("finite_part is not well defined: relation among the generators violated at residue " +
                                      std::to_string(y.x) + "+" + std::to_string(y.y) + "*tau");
        }
      }
    }
    if (static_cast<i64>(table_.size()) != unit_count_)
      throw std::invalid_argument("finite_part generators span " + std::to_string(table_.size()) + " of the " + std::to_string(unit_count_) +
                                  " units modulo the conductor");
  }

  // e(u)/M + j (p - q)/w must be an integer for u = zeta_w^j.
  void check_units() const {
    int w = K_.unit_count();
    auto us = K_.units();
    for (int j = 0; j < w; ++j) {
      QuadInt u = us[static_cast<std::size_t>(j)];
      i64 e = table_.at(K_.reduce(m_, u));
      // e/M + j(p-q)/w in Z  <=>  e*w + j*(p-q)*M = 0 mod M*w
      i64 lhs = e * w + static_cast<i64>(j) * (p_ - q_) * M_;
      if (mod(lhs, M_ * w) != 0) throw std::invalid_argument("unit compatibility fails at the unit " + unit_name(j, w));
    }
  }

  static std::string unit_name(int j, int w) {
    if (w == 2) return j == 0 ? "1" : "-1";
    if (w == 4) {
      const char* n[] = {"1", "i", "-1", "-i"};
      return n[j];
    }
    return "zeta_6^" + std::to_string(j);
  }

  void normalize_order() {
    i64 g = M_;
    for (const auto& [r, e] : table_)
      if (e > 0) g = std::gcd(g, e);
    if (g <= 1) return;
    for (auto& [r, e] : table_) e /= g;
    M_ /= g;
    tau_ = ((Cyclo::integer(-K_.disc(), K_.delta()) + K_.sqrt_disc()) * mpq_class(1, 2)).lift(value_order());
  }

  QuadField K_;
  int p_, q_;
  QuadIdeal m_;
  i64 M_;
  i64 c0_ = 0;
  Cyclo tau_;
  std::vector<QuadIdeal> prime_divisors_;
  i64 unit_count_ = 0;
  std::map<QuadInt, i64> table_;
};

}  // namespace dihedral
