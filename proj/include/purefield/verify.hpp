#pragma once

// First-principles cross-checks of the closed forms: brute-force lattice
// scans, predicted Newton polygon vertices, the power-basis discriminant
// identity, and a sweep harness that runs them all over a range of (n, a).

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "purefield/arith.hpp"
#include "purefield/newton_polygon.hpp"
#include "purefield/polynomial.hpp"
#include "purefield/pure_field.hpp"

namespace purefield {

/// (x + a)^(p^s) - a, whose root x = theta - a generates the same order.
inline IntPolynomial shifted_polynomial(const Integer& p, Exponent s,
                                        const Integer& a) {
  require_prime(p);
  if (s == 0) throw InvalidArgument("s must be positive");
  if (a % p == 0) throw InvalidArgument("shifted_polynomial needs p not dividing a");
  const auto degree = static_cast<std::size_t>(ipow(p, s));
  std::vector<Integer> c(degree + 1);
  // c_k = C(N, k) a^(N-k), walking k downward from N.
  Integer binom = 1;
  Integer apow = 1;
  for (std::size_t k = degree + 1; k-- > 0;) {
    c[k] = binom * apow;
    binom = binom * k / (degree - k + 1);
    apow *= a;
  }
  c[0] -= a;
  return IntPolynomial(std::move(c));
}

/// Vertices of the p-Newton polygon of (x + a)^(p^s) - a predicted from
/// r = v_p(a^(p-1) - 1) - 1 >= 1.
inline std::vector<Point> predicted_vertices(std::int64_t p, std::int64_t s,
                                             std::int64_t r) {
  if (r < 1) throw InvalidArgument("predicted_vertices needs r >= 1");
  const auto pw = [p](std::int64_t k) {
    return static_cast<std::int64_t>(ipow(Integer(p), static_cast<std::uint64_t>(k)));
  };
  const std::int64_t N = pw(s);
  std::int64_t middle;
  if (r > s)
    middle = s;
  else if (p != 2)
    middle = r;
  else
    middle = r - 1;
  std::vector<Point> v{{0, 0}};
  for (std::int64_t i = 1; i <= middle; ++i) v.push_back({N - pw(s - i), i});
  v.push_back({N, r + 1});
  return v;
}

/// The Eisenstein shape, r = 0.
inline std::vector<Point> eisenstein_vertices(std::int64_t degree) {
  return {{0, 0}, {degree, 1}};
}

/// Direct scan of 1 <= x < width, 1 <= y <= max height, testing each point
/// against the edge above it in exact integer arithmetic.
inline std::uint64_t brute_lattice_count(const NewtonPolygon& poly) {
  if (poly.vertices().front() != Point{0, 0})
    throw InvalidArgument("polygon must start at the origin");
  const std::int64_t width = poly.width();
  std::int64_t top = 0;
  for (const auto& v : poly.vertices()) top = std::max(top, v.y);
  std::uint64_t count = 0;
  for (std::int64_t x = 1; x < width; ++x) {
    const Edge& e = poly.edge_at(x);
    const std::int64_t dx = e.length();
    for (std::int64_t y = 1; y <= top; ++y) {
      // y <= start.y + (x - start.x) * rise / dx
      if (y * dx <= e.start.y * dx + (x - e.start.x) * e.rise()) ++count;
    }
  }
  return count;
}

struct VertexCheck {
  std::int64_t r = 0;
  std::vector<Point> predicted;
  std::vector<Point> computed;

  bool ok() const { return predicted == computed; }
};

inline VertexCheck check_vertex_prediction(const Integer& p, Exponent s,
                                           const Integer& a) {
  const IntPolynomial g = shifted_polynomial(p, s, a);
  VertexCheck check;
  check.r = static_cast<std::int64_t>(unit_power_valuation(a, p)) - 1;
  const auto pp = static_cast<std::int64_t>(p);
  const auto ss = static_cast<std::int64_t>(s);
  check.predicted = check.r == 0
                        ? eisenstein_vertices(static_cast<std::int64_t>(g.degree()))
                        : predicted_vertices(pp, ss, check.r);
  check.computed = build_polygon(g, p).vertices();
  return check;
}

/// d_K * Ind(theta)^2 == (-1)^((n-1)(n-2)/2) n^n a^(n-1), exactly.
inline bool check_global_relation(const ValidatedPureField& f) {
  const Integer ind = theta_index(f).value();
  return discriminant(f).value() * ind * ind ==
         power_basis_discriminant(f.n(), f.a());
}

inline bool check_global_relation(std::uint64_t n, const Integer& a) {
  return check_global_relation(validate(n, a));
}

struct SweepFailure {
  std::string check;
  std::uint64_t n = 0;
  std::string a;
  std::string prime;
  std::string expected;
  std::string actual;

  friend bool operator==(const SweepFailure&, const SweepFailure&) = default;
};

struct CheckTally {
  std::uint64_t global_relation = 0;
  std::uint64_t route_agreement = 0;
  std::uint64_t lattice_oracle = 0;
  std::uint64_t vertex_prediction = 0;
  std::uint64_t monogenic = 0;

  std::uint64_t total() const noexcept {
    return global_relation + route_agreement + lattice_oracle +
           vertex_prediction + monogenic;
  }
  CheckTally& operator+=(const CheckTally& o) {
    global_relation += o.global_relation;
    route_agreement += o.route_agreement;
    lattice_oracle += o.lattice_oracle;
    vertex_prediction += o.vertex_prediction;
    monogenic += o.monogenic;
    return *this;
  }
  friend bool operator==(const CheckTally&, const CheckTally&) = default;
};

struct SweepReport {
  std::uint64_t n_max = 0;
  std::uint64_t a_max = 0;
  std::uint64_t pairs = 0;
  std::uint64_t validated = 0;
  std::uint64_t skipped_reducible = 0;
  std::uint64_t skipped_hypothesis = 0;
  CheckTally checks;
  std::uint64_t checks_passed = 0;
  std::vector<SweepFailure> failures;
  double wall_time_seconds = 0.0;

  bool ok() const noexcept { return failures.empty(); }

  /// Counter-wise sum; failures are kept sorted so merge order is irrelevant.
  SweepReport& merge(const SweepReport& o) {
    pairs += o.pairs;
    validated += o.validated;
    skipped_reducible += o.skipped_reducible;
    skipped_hypothesis += o.skipped_hypothesis;
    checks += o.checks;
    checks_passed += o.checks_passed;
    failures.insert(failures.end(), o.failures.begin(), o.failures.end());
    std::sort(failures.begin(), failures.end(), [](const auto& l, const auto& r) {
      return std::tie(l.n, l.a, l.check, l.prime) <
             std::tie(r.n, r.a, r.check, r.prime);
    });
    return *this;
  }
};

namespace detail {

class SweepRecorder {
 public:
  SweepRecorder(SweepReport& report, std::uint64_t n, const Integer& a)
      : report_(report), n_(n), a_(a.str()) {}

  void record(std::uint64_t CheckTally::*counter, const char* name,
              bool passed, const Integer& prime, const std::string& expected,
              const std::string& actual) {
    ++(report_.checks.*counter);
    if (passed) {
      ++report_.checks_passed;
      return;
    }
    report_.failures.push_back(
        {name, n_, a_, prime == 0 ? "" : prime.str(), expected, actual});
  }

  template <typename T>
  void compare(std::uint64_t CheckTally::*counter, const char* name,
               const Integer& prime, const T& expected, const T& actual) {
    record(counter, name, expected == actual, prime, to_str(expected),
           to_str(actual));
  }

 private:
  static std::string to_str(std::uint64_t v) { return std::to_string(v); }
  static std::string to_str(const Integer& v) { return v.str(); }
  static std::string to_str(bool v) { return v ? "true" : "false"; }
  static std::string to_str(const std::vector<Point>& pts) {
    std::string s;
    for (const auto& pt : pts)
      s += "(" + std::to_string(pt.x) + "," + std::to_string(pt.y) + ")";
    return s;
  }

  SweepReport& report_;
  std::uint64_t n_;
  std::string a_;
};

/// Ore route at one prime: lattice oracle plus the index valuation, or the
/// regularity failure recorded.
inline std::optional<std::uint64_t> ore_route(SweepRecorder& rec,
                                              const IntPolynomial& g,
                                              const Integer& p) {
  const NewtonPolygon poly = build_polygon(g, p);
  if (poly.all_slopes_positive())
    rec.compare(&CheckTally::lattice_oracle, "lattice_oracle", p,
                brute_lattice_count(poly), lattice_count(poly));
  try {
    return ore_index_valuation(g, p);
  } catch (const OreRegularityFailure& e) {
    rec.record(&CheckTally::route_agreement, "route_agreement", false, p,
               "regular", e.what());
    return std::nullopt;
  }
}

inline void sweep_pair(SweepReport& report, std::uint64_t n, const Integer& a) {
  ++report.pairs;
  std::optional<ValidatedPureField> field;
  try {
    field = validate(n, a);
  } catch (const ReducibleError&) {
    ++report.skipped_reducible;
    return;
  } catch (const HypothesisViolation&) {
    ++report.skipped_hypothesis;
    return;
  }
  ++report.validated;
  const ValidatedPureField& f = *field;
  SweepRecorder rec(report, n, a);

  const FactoredInteger disc = discriminant(f);
  const FactoredInteger ind = theta_index(f);
  const Integer ind_value = ind.value();
  rec.compare(&CheckTally::global_relation, "global_relation", Integer(0),
              power_basis_discriminant(n, a),
              Integer(disc.value() * ind_value * ind_value));

  for (const auto& d : f.degree_primes()) {
    if (d.a_valuation != 0) continue;
    const IntPolynomial g = shifted_polynomial(d.prime, d.s, a);
    if (auto ore = ore_route(rec, g, d.prime))
      rec.compare(&CheckTally::route_agreement, "route_agreement", d.prime,
                  index_p_valuation(d.prime, d.s, d.cofactor, d.r),
                  d.cofactor * *ore);
    const VertexCheck vc = check_vertex_prediction(d.prime, d.s, a);
    rec.compare(&CheckTally::vertex_prediction, "vertex_prediction", d.prime,
                vc.predicted, vc.computed);
  }

  const IntPolynomial xn = IntPolynomial::x_pow_minus(n, a);
  for (const auto& q : f.radicand_primes()) {
    if (auto ore = ore_route(rec, xn, q.prime))
      rec.compare(&CheckTally::route_agreement, "route_agreement", q.prime,
                  index_q_valuation(n, q.t, q.m), *ore);
  }

  const bool mono = is_monogenic(f).monogenic;
  rec.compare(&CheckTally::monogenic, "monogenic_vs_index", Integer(0), mono,
              ind.is_one());
  rec.compare(&CheckTally::monogenic, "monogenic_vs_discriminant", Integer(0),
              mono, disc.magnitude() == abs(power_basis_discriminant(n, a)));
}

}  // namespace detail

/// Runs every check over 2 <= n <= n_max, 2 <= |a| <= a_max. Work is split
/// by degree across `threads` workers; the merged report does not depend on
/// the split.
inline SweepReport sweep(std::uint64_t n_max, std::uint64_t a_max,
                         unsigned threads = 1) {
  if (n_max < 2 || a_max < 2)
    throw InvalidArgument("sweep needs n_max >= 2 and a_max >= 2");
  if (n_max > 4096) throw InvalidArgument("sweep degree bound too large");
  const auto start = std::chrono::steady_clock::now();
  threads = std::max(1u, threads);

  std::vector<SweepReport> parts(threads);
  const auto work = [&](unsigned w) {
    for (std::uint64_t n = 2 + w; n <= n_max; n += threads)
      for (std::uint64_t m = 2; m <= a_max; ++m) {
        detail::sweep_pair(parts[w], n, Integer(m));
        detail::sweep_pair(parts[w], n, -Integer(m));
      }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
  }

  SweepReport report;
  report.n_max = n_max;
  report.a_max = a_max;
  for (const auto& part : parts) report.merge(part);
  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

inline nlohmann::ordered_json to_json(const SweepReport& r) {
  nlohmann::ordered_json failures = nlohmann::ordered_json::array();
  for (const auto& f : r.failures)
    failures.push_back({{"check", f.check},
                        {"n", std::to_string(f.n)},
                        {"a", f.a},
                        {"prime", f.prime.empty() ? nlohmann::ordered_json(nullptr)
                                                  : nlohmann::ordered_json(f.prime)},
                        {"expected", f.expected},
                        {"actual", f.actual}});
  return {
      {"command", "verify"},
      {"n_max", r.n_max},
      {"a_max", r.a_max},
      {"pairs", r.pairs},
      {"validated", r.validated},
      {"skipped",
       {{"reducible", r.skipped_reducible},
        {"hypothesis_violation", r.skipped_hypothesis}}},
      {"checks",
       {{"global_relation", r.checks.global_relation},
        {"route_agreement", r.checks.route_agreement},
        {"lattice_oracle", r.checks.lattice_oracle},
        {"vertex_prediction", r.checks.vertex_prediction},
        {"monogenic", r.checks.monogenic}}},
      {"checks_passed", r.checks_passed},
      {"failures", failures},
      {"wall_time_seconds", r.wall_time_seconds},
  };
}

}  // namespace purefield
