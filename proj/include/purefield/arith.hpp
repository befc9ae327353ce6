#pragma once

// Exact integer utilities: p-adic valuations, primality, factorization,
// modular unit valuations and the Capelli irreducibility test for x^n - a.

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <vector>

#include "purefield/error.hpp"
#include "purefield/integer.hpp"

namespace purefield {

struct PrimePower {
  Integer prime;
  Exponent exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Canonical factorization: strictly increasing primes, exponents >= 1.
struct PrimeFactorization {
  std::vector<PrimePower> factors;

  bool empty() const noexcept { return factors.empty(); }
  std::size_t size() const noexcept { return factors.size(); }

  Integer value() const {
    Integer v = 1;
    for (const auto& f : factors) v *= ipow(f.prime, f.exponent);
    return v;
  }

  /// Exponent of `p`, zero when absent.
  Exponent exponent_of(const Integer& p) const {
    for (const auto& f : factors)
      if (f.prime == p) return f.exponent;
    return 0;
  }

  friend bool operator==(const PrimeFactorization&,
                         const PrimeFactorization&) = default;
};

namespace detail {

inline std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b,
                              std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod64(std::uint64_t b, std::uint64_t e,
                              std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod64(r, b, m);
    b = mulmod64(b, b, m);
    e >>= 1;
  }
  return r;
}

inline bool miller_rabin64(std::uint64_t n) {
  // Deterministic for all n < 2^64 (Jim Sinclair's base set).
  constexpr std::array<std::uint64_t, 7> bases{
      2, 325, 9375, 28178, 450775, 9780504, 1795265022};
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t b : bases) {
    b %= n;
    if (b == 0) continue;
    std::uint64_t x = powmod64(b, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline bool miller_rabin_big(const Integer& n) {
  // The first 13 prime bases are deterministic below 3.3e24; beyond that the
  // answer is a strong probable prime.
  constexpr std::array<unsigned, 13> bases{2,  3,  5,  7,  11, 13, 17,
                                           19, 23, 29, 31, 37, 41};
  Integer d = n - 1;
  unsigned s = 0;
  while (!bit_test(d, 0)) {
    d >>= 1;
    ++s;
  }
  const Integer n_minus_1 = n - 1;
  for (unsigned b : bases) {
    Integer x = boost::multiprecision::powm(Integer(b), d, n);
    if (x == 1 || x == n_minus_1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      x = x * x % n;
      if (x == n_minus_1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline bool fits_u64(const Integer& x) {
  return x >= 0 && x <= std::numeric_limits<std::uint64_t>::max();
}

/// Strips every factor p from x (x != 0) and returns the count. No checks.
inline Exponent strip(Integer& x, const Integer& p) {
  Exponent k = 0;
  Integer q, r;
  for (;;) {
    divide_qr(x, p, q, r);
    if (r != 0) break;
    x.swap(q);
    ++k;
  }
  return k;
}

inline Exponent valuation_unchecked(Integer x, const Integer& p) {
  return strip(x, p);
}

}  // namespace detail

inline bool is_prime(const Integer& n) {
  if (n < 2) return false;
  constexpr std::array<unsigned, 15> small{2,  3,  5,  7,  11, 13, 17, 19,
                                           23, 29, 31, 37, 41, 43, 47};
  for (unsigned p : small) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  if (n < 47 * 47) return true;
  if (detail::fits_u64(n))
    return detail::miller_rabin64(static_cast<std::uint64_t>(n));
  return detail::miller_rabin_big(n);
}

inline void require_prime(const Integer& p) {
  if (!is_prime(p))
    throw InvalidArgument(p.str() + " is not prime");
}

/// Largest k with p^k | x.
inline Exponent vp(const Integer& x, const Integer& p) {
  if (x == 0) throw InvalidArgument("valuation of zero undefined");
  require_prime(p);
  return detail::valuation_unchecked(abs(x), p);
}

/// Legendre's formula: v_p(m!) = sum_{j>=1} floor(m / p^j).
inline Exponent vp_factorial(const Integer& m, const Integer& p) {
  if (m < 0) throw InvalidArgument("factorial of a negative number");
  require_prime(p);
  Exponent total = 0;
  Integer q = m / p;
  while (q > 0) {
    total += static_cast<Exponent>(q);
    q /= p;
  }
  return total;
}

/// v_p of the binomial coefficient C(p^s, u) for 1 <= u <= p^s, which is
/// s - v_p(u).
inline Exponent binom_vp(const Integer& p, Exponent s, const Integer& u) {
  require_prime(p);
  if (s == 0) throw InvalidArgument("binom_vp needs s >= 1");
  const Integer ps = ipow(p, s);
  if (u < 1 || u > ps)
    throw InvalidArgument("binom_vp: u out of range [1, p^s]");
  return s - detail::valuation_unchecked(u, p);
}

namespace detail {

inline Integer kth_root_floor_impl(const Integer& x, unsigned k) {
  if (x < 2 || k == 1) return x;
  const auto bits = msb(x) + 1;
  Integer lo = 1;
  Integer hi = Integer(1) << (bits / k + 1);
  while (lo < hi) {
    Integer mid = (lo + hi + 1) >> 1;
    if (ipow(mid, k) <= x)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

}  // namespace detail

/// floor(x^(1/k)) for x >= 0, k >= 1, by binary search.
inline Integer kth_root_floor(const Integer& x, unsigned k) {
  if (x < 0) throw InvalidArgument("kth_root_floor of a negative number");
  if (k == 0) throw InvalidArgument("kth_root_floor with k = 0");
  return detail::kth_root_floor_impl(x, k);
}

namespace detail {

inline Integer pollard_brent(const Integer& n) {
  if (!bit_test(n, 0)) return 2;
  const auto f = [&n](const Integer& x, const Integer& c) {
    return (x * x + c) % n;
  };
  for (Integer c = 1;; ++c) {
    Integer y = 2, x, ys, g = 1, q = 1;
    const unsigned m = 128;
    std::uint64_t r = 1;
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y, c);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min<std::uint64_t>(m, r - k); ++i) {
          y = f(y, c);
          q = q * abs(x - y) % n;
        }
        g = gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys, c);
        g = gcd(abs(x - ys), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

/// n = root^k with k maximal; rho is hopeless on powers of a large prime.
inline std::pair<Integer, unsigned> split_power(const Integer& n) {
  const auto bits = static_cast<unsigned>(msb(n)) + 1;
  for (unsigned k = bits; k >= 2; --k) {
    const Integer root = kth_root_floor_impl(n, k);
    if (root >= 2 && ipow(root, k) == n) return {root, k};
  }
  return {n, 1};
}

inline void factor_into(const Integer& n, Exponent mult,
                        std::map<Integer, Exponent>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out[n] += mult;
    return;
  }
  if (auto [root, k] = split_power(n); k > 1) {
    factor_into(root, mult * k, out);
    return;
  }
  Integer d = pollard_brent(n);
  factor_into(d, mult, out);
  factor_into(n / d, mult, out);
}

}  // namespace detail

/// Trial division to 10^6, then Brent's variant of Pollard rho.
inline PrimeFactorization factorize(const Integer& m) {
  if (m <= 0) throw InvalidArgument("factorize needs m >= 1");
  constexpr std::uint64_t kTrialBound = 1'000'000;
  std::map<Integer, Exponent> found;
  Integer rest = m;
  if (detail::fits_u64(rest)) {
    auto r = static_cast<std::uint64_t>(rest);
    for (std::uint64_t d = 2; d <= kTrialBound && d * d <= r; d += (d == 2 ? 1 : 2)) {
      while (r % d == 0) {
        ++found[d];
        r /= d;
      }
    }
    rest = r;
  } else {
    for (std::uint64_t d = 2; d <= kTrialBound && Integer(d) * d <= rest;
         d += (d == 2 ? 1 : 2)) {
      if (rest % d == 0) found[d] += detail::strip(rest, d);
    }
  }
  if (rest > 1) detail::factor_into(rest, 1, found);
  PrimeFactorization pf;
  for (auto& [p, e] : found) pf.factors.push_back({p, e});
  return pf;
}

/// True iff a = b^k for some integer b.
inline bool is_perfect_power(const Integer& a, unsigned k) {
  if (a < 0) {
    if (k % 2 == 0) return false;
    return is_perfect_power(-a, k);
  }
  return ipow(kth_root_floor(a, k), k) == a;
}

/// Capelli: x^n - a is irreducible over Q iff a is not a p-th power for any
/// prime p | n, and a != -4c^4 when 4 | n.
inline bool xn_minus_a_irreducible(std::uint64_t n, const Integer& a) {
  if (n < 2) throw InvalidArgument("degree must be at least 2");
  if (a == 0) return false;
  for (const auto& f : factorize(n).factors) {
    const auto p = static_cast<unsigned long long>(f.prime);
    if (p > std::numeric_limits<unsigned>::max()) {
      // Only |a| in {0, 1} is a p-th power for p this large.
      if (a == 1 || a == -1) return false;
      continue;
    }
    if (is_perfect_power(a, static_cast<unsigned>(p))) return false;
  }
  if (n % 4 == 0 && a < 0 && (-a) % 4 == 0 && is_perfect_power(-a / 4, 4))
    return false;
  return true;
}

/// Largest k with a^(p-1) = 1 (mod p^k), for a prime p not dividing a.
/// Works against growing moduli p^k and never forms a^(p-1) itself.
inline Exponent unit_power_valuation(const Integer& a, const Integer& p) {
  require_prime(p);
  if (a % p == 0) throw InvalidArgument("unit_power_valuation: p divides a");
  if (a == 1 || (a == -1 && p != 2))
    throw InvalidArgument("infinite valuation: a^(p-1) = 1");
  const Integer e = p - 1;
  const auto holds = [&](Exponent k) {
    const Integer mod = ipow(p, k);
    return boost::multiprecision::powm(mod_floor(a, mod), e, mod) == 1 % mod;
  };
  // |a^(p-1) - 1| < (|a|+1)^(p-1), so the valuation is bounded by the bit
  // length of that quantity.
  const Exponent bound =
      static_cast<Exponent>(msb(abs(a) + 1) + 1) * static_cast<Exponent>(e) + 1;
  Exponent good = 1;  // p | a^(p-1) - 1 by Fermat.
  Exponent k = 2;
  while (holds(k)) {
    good = k;
    if (k > bound) throw InternalError("unit_power_valuation did not terminate");
    k *= 2;
  }
  Exponent lo = good, hi = k;  // holds(lo), !holds(hi)
  while (hi - lo > 1) {
    const Exponent mid = lo + (hi - lo) / 2;
    if (holds(mid))
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

}  // namespace purefield
