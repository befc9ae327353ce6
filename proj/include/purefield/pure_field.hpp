#pragma once

// Closed-form discriminant and index of pure fields Q(a^(1/n)).

#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "purefield/arith.hpp"
#include "purefield/error.hpp"
#include "purefield/integer.hpp"

namespace purefield {

/// sign * prod p^e, with every listed exponent positive.
struct FactoredInteger {
  int sign = 1;
  std::map<Integer, Exponent> factors;

  /// Multiplies in p^e; e = 0 is a no-op.
  void add(const Integer& p, Exponent e) {
    if (e != 0) factors[p] += e;
  }

  bool is_one() const noexcept { return sign == 1 && factors.empty(); }

  Integer value() const {
    Integer v = sign;
    for (const auto& [p, e] : factors) v *= ipow(p, e);
    return v;
  }

  Integer magnitude() const { return abs(value()); }

  /// "2^3 * 5^1"; "1" when there are no factors. The sign is not rendered.
  std::string factors_string() const {
    if (factors.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& [p, e] : factors) {
      if (!first) os << " * ";
      first = false;
      os << p << '^' << e;
    }
    return os.str();
  }

  friend bool operator==(const FactoredInteger&,
                         const FactoredInteger&) = default;
};

/// Data at a prime p dividing the degree.
struct DegreePrime {
  Integer prime;
  Exponent s = 0;               // v_p(n)
  std::uint64_t cofactor = 0;   // n / p^s
  Exponent a_valuation = 0;     // v_p(a)
  /// v_p(a^(p-1) - 1) - 1, or -1 when p | a.
  std::int64_t r = -1;
};

/// Data at a prime q dividing a.
struct RadicandPrime {
  Integer prime;
  Exponent t = 0;       // v_q(a)
  std::uint64_t m = 0;  // gcd(n, t)
};

class ValidatedPureField;
ValidatedPureField validate(std::uint64_t n, const Integer& a);

/// (n, a) with x^n - a irreducible and v_p(a) = 0 or coprime to p at every
/// prime p | n. Only obtainable through validate().
class ValidatedPureField {
 public:
  std::uint64_t n() const noexcept { return n_; }
  const Integer& a() const noexcept { return a_; }
  const PrimeFactorization& n_factors() const noexcept { return n_factors_; }
  const PrimeFactorization& a_factors() const noexcept { return a_factors_; }
  const std::vector<DegreePrime>& degree_primes() const noexcept {
    return degree_primes_;
  }
  const std::vector<RadicandPrime>& radicand_primes() const noexcept {
    return radicand_primes_;
  }

 private:
  friend ValidatedPureField validate(std::uint64_t n, const Integer& a);
  ValidatedPureField() = default;

  std::uint64_t n_ = 0;
  Integer a_;
  PrimeFactorization n_factors_;
  PrimeFactorization a_factors_;
  std::vector<DegreePrime> degree_primes_;
  std::vector<RadicandPrime> radicand_primes_;
};

inline constexpr std::uint64_t kMaxDegree = std::uint64_t{1} << 32;

inline ValidatedPureField validate(std::uint64_t n, const Integer& a) {
  if (n < 2) throw InvalidArgument("degree must be at least 2");
  if (n > kMaxDegree) throw InvalidArgument("degree too large");
  if (a == 0) throw InvalidArgument("a must be nonzero");
  if (!xn_minus_a_irreducible(n, a))
    throw ReducibleError("x^" + std::to_string(n) + " - (" + a.str() +
                         ") is reducible over Q");

  ValidatedPureField f;
  f.n_ = n;
  f.a_ = a;
  f.n_factors_ = factorize(n);
  f.a_factors_ = factorize(abs(a));

  for (const auto& [p, s] : f.n_factors_.factors) {
    DegreePrime d;
    d.prime = p;
    d.s = s;
    d.cofactor = n / static_cast<std::uint64_t>(ipow(p, s));
    d.a_valuation = f.a_factors_.exponent_of(p);
    if (d.a_valuation != 0) {
      if (d.a_valuation % static_cast<std::uint64_t>(p) == 0)
        throw HypothesisViolation(
            p, "v_" + p.str() + "(a) = " + std::to_string(d.a_valuation) +
                   " is divisible by " + p.str());
      d.r = -1;
    } else {
      d.r = static_cast<std::int64_t>(unit_power_valuation(a, p)) - 1;
    }
    f.degree_primes_.push_back(std::move(d));
  }

  for (const auto& [q, t] : f.a_factors_.factors) {
    RadicandPrime rq{q, t, std::gcd(n, static_cast<std::uint64_t>(t))};
    if (Integer(rq.m) % q == 0)
      throw InternalError("q divides gcd(n, v_q(a)) after validation");
    f.radicand_primes_.push_back(std::move(rq));
  }
  return f;
}

/// v_q of the index at q | a: (1/2)[(n-1)(t-1) + m - 1] with m = gcd(n, t).
inline Exponent index_q_valuation(std::uint64_t n, Exponent t, std::uint64_t m) {
  if (n == 0 || t == 0 || m == 0)
    throw InvalidArgument("index_q_valuation needs positive arguments");
  const Exponent twice = (n - 1) * (t - 1) + m - 1;
  if (twice % 2 != 0) throw InternalError("index_q_valuation is not integral");
  return twice / 2;
}

/// v_p of the index at p | n, p not dividing a:
/// n_i * sum_{j=1}^{min(r,s)} p^(s-j) when r > 0, else 0.
inline Exponent index_p_valuation(const Integer& p, Exponent s,
                                  std::uint64_t cofactor, std::int64_t r) {
  if (r <= 0) return 0;
  const Exponent top = std::min<Exponent>(static_cast<Exponent>(r), s);
  Integer sum = 0;
  for (Exponent j = 1; j <= top; ++j) sum += ipow(p, s - j);
  return static_cast<Exponent>(sum * cofactor);
}

/// Ind(theta) = [A_K : Z[theta]] in factored form.
inline FactoredInteger theta_index(const ValidatedPureField& f) {
  FactoredInteger ind;
  for (const auto& d : f.degree_primes())
    ind.add(d.prime, index_p_valuation(d.prime, d.s, d.cofactor, d.r));
  for (const auto& q : f.radicand_primes())
    ind.add(q.prime, index_q_valuation(f.n(), q.t, q.m));
  return ind;
}

/// (-1)^((n-1)(n-2)/2) * sgn(a^(n-1)).
inline int discriminant_sign(std::uint64_t n, const Integer& a) {
  const Integer half = Integer(n - 1) * (n - 2) / 2;
  int sign = bit_test(half, 0) ? -1 : 1;
  if (a < 0 && n % 2 == 0) sign = -sign;
  return sign;
}

/// d_K, with exponents at primes dividing both n and a accumulated.
inline FactoredInteger discriminant(const ValidatedPureField& f) {
  FactoredInteger d;
  d.sign = discriminant_sign(f.n(), f.a());
  const std::uint64_t n = f.n();
  for (const auto& p : f.degree_primes()) {
    const Exponent full = n * p.s;
    d.add(p.prime, full - 2 * index_p_valuation(p.prime, p.s, p.cofactor, p.r));
  }
  for (const auto& q : f.radicand_primes()) d.add(q.prime, n - q.m);
  return d;
}

inline bool is_squarefree(const Integer& a) {
  if (a == 0) return false;
  for (const auto& f : factorize(abs(a)).factors)
    if (f.exponent > 1) return false;
  return true;
}

/// d_K of Q(a^(1/p^s)) for squarefree a != +-1, evaluated directly from the
/// prime-power formula: +-p^nu a^(p^s - 1).
inline FactoredInteger discriminant_prime_power(const Integer& p, Exponent s,
                                                const Integer& a) {
  require_prime(p);
  if (s == 0) throw InvalidArgument("s must be positive");
  if (a == 1 || a == -1) throw InvalidArgument("a must not be +-1");
  if (!is_squarefree(a)) throw InvalidArgument("a must be squarefree");
  const Integer big_degree = ipow(p, s);
  if (big_degree > kMaxDegree) throw InvalidArgument("degree too large");
  const auto degree = static_cast<std::uint64_t>(big_degree);
  if (!xn_minus_a_irreducible(degree, a))
    throw ReducibleError("x^" + std::to_string(degree) + " - (" + a.str() +
                         ") is reducible over Q");

  std::int64_t r = -1;
  if (a % p != 0) r = static_cast<std::int64_t>(unit_power_valuation(a, p)) - 1;
  Exponent nu = s * degree;
  if (r > 0) {
    Exponent sum = 0;
    for (Exponent j = 1; j <= std::min<Exponent>(static_cast<Exponent>(r), s); ++j)
      sum += static_cast<Exponent>(ipow(p, s - j));
    nu -= 2 * sum;
  }
  FactoredInteger d;
  d.sign = discriminant_sign(degree, a);
  d.add(p, nu);
  for (const auto& q : factorize(abs(a)).factors) d.add(q.prime, degree - 1);
  return d;
}

/// Piecewise discriminant of Q(a^(1/8)) for squarefree a != +-1, selected by
/// the class of a mod 16 (least nonnegative residue, also for negative a).
inline FactoredInteger octic_table(const Integer& a) {
  if (a == 1 || a == -1) throw InvalidArgument("a must not be +-1");
  if (!is_squarefree(a)) throw InvalidArgument("a must be squarefree");
  if (!xn_minus_a_irreducible(8, a))
    throw ReducibleError("x^8 - (" + a.str() + ") is reducible over Q");
  const auto res16 = static_cast<unsigned>(mod_floor(a, 16));
  Exponent two;
  if (res16 % 4 == 2 || res16 % 4 == 3)
    two = 24;
  else if (res16 == 5 || res16 == 13)
    two = 16;
  else if (res16 == 9)
    two = 12;
  else if (res16 == 1)
    two = 10;
  else
    throw InternalError("squarefree a cannot be 0 mod 4");
  FactoredInteger d;
  d.sign = a < 0 ? 1 : -1;  // -a^7 has the sign of -a
  d.add(2, two);
  for (const auto& q : factorize(abs(a)).factors) d.add(q.prime, 7);
  return d;
}

struct MonogenicWitness {
  enum class Kind { NonSquarefree, DegreePrime };
  Kind kind;
  Integer prime;
};

struct MonogenicResult {
  bool monogenic = false;
  std::optional<MonogenicWitness> witness;
};

/// Z[theta] is the full ring of integers iff a is squarefree and
/// p^2 does not divide a^(p-1) - 1 for every p | n.
inline MonogenicResult is_monogenic(const ValidatedPureField& f) {
  for (const auto& q : f.radicand_primes())
    if (q.t >= 2)
      return {false, MonogenicWitness{MonogenicWitness::Kind::NonSquarefree, q.prime}};
  for (const auto& p : f.degree_primes())
    if (p.r > 0)
      return {false, MonogenicWitness{MonogenicWitness::Kind::DegreePrime, p.prime}};
  return {true, std::nullopt};
}

/// (-1)^((n-1)(n-2)/2) n^n a^(n-1), the discriminant of x^n - a.
inline Integer power_basis_discriminant(std::uint64_t n, const Integer& a) {
  Integer v = ipow(Integer(n), n) * ipow(a, n - 1);
  const Integer half = Integer(n - 1) * (n - 2) / 2;
  return bit_test(half, 0) ? Integer(-v) : v;
}

}  // namespace purefield
