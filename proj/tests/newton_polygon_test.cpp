#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "oracles.hpp"
#include "purefield/newton_polygon.hpp"
#include "purefield/verify.hpp"

namespace purefield {
namespace {

IntPolynomial shifted(std::uint64_t N, const Integer& a) {
  return IntPolynomial(oracle::shifted_by_multiplication(N, a));
}

std::vector<Point> pts(std::initializer_list<std::pair<int, int>> xs) {
  std::vector<Point> v;
  for (auto [x, y] : xs) v.push_back({x, y});
  return v;
}

TEST(IntPolynomial, Invariants) {
  EXPECT_THROW(IntPolynomial({0, 1}), InvalidArgument);
  EXPECT_THROW(IntPolynomial({1, 2}), InvalidArgument);
  EXPECT_THROW(IntPolynomial({5}), InvalidArgument);
  EXPECT_EQ(IntPolynomial({-5, 0, 1, 0}).degree(), 2u);
  EXPECT_EQ(IntPolynomial({620, 500, 150, 20, 1}).to_string(),
            "x^4 + 20*x^3 + 150*x^2 + 500*x + 620");
  EXPECT_EQ(IntPolynomial::x_pow_minus(3, 2).to_string(), "x^3 - 2");
}

TEST(BuildPolygon, EisensteinShape) {
  const auto poly = build_polygon(IntPolynomial::x_pow_minus(4, 5), 5);
  EXPECT_EQ(poly.vertices(), pts({{0, 0}, {4, 1}}));
  ASSERT_EQ(poly.edges().size(), 1u);
  EXPECT_EQ(poly.edges()[0].slope, (Slope{1, 4}));
  EXPECT_EQ(poly.edges()[0].denominator(), 4);
}

TEST(BuildPolygon, WorkedExampleSingleEdge) {
  const auto g = shifted(4, 5);
  EXPECT_EQ(g.coefficients(), (std::vector<Integer>{620, 500, 150, 20, 1}));
  const auto poly = build_polygon(g, 2);
  EXPECT_EQ(poly.vertices(), pts({{0, 0}, {4, 2}}));
  const Edge& e = poly.edges().at(0);
  EXPECT_EQ(e.slope, (Slope{1, 2}));
  EXPECT_EQ(e.denominator(), 2);
  EXPECT_EQ(e.degree(), 2);
}

TEST(BuildPolygon, ShiftedOctic) {
  const auto poly = build_polygon(shifted(8, 33), 2);
  EXPECT_EQ(poly.vertices(), pts({{0, 0}, {4, 1}, {6, 2}, {7, 3}, {8, 5}}));
  std::vector<Slope> slopes;
  for (const auto& e : poly.edges()) slopes.push_back(e.slope);
  EXPECT_EQ(slopes, (std::vector<Slope>{{1, 4}, {1, 2}, {1, 1}, {2, 1}}));
}

TEST(BuildPolygon, ZeroCoefficientsContributeNoPoint) {
  // x^4 + 0x^3 + 0x^2 + 0x + 8: only (0,0) and (4,3)
  const auto poly = build_polygon(IntPolynomial({8, 0, 0, 0, 1}), 2);
  EXPECT_EQ(poly.vertices(), pts({{0, 0}, {4, 3}}));
}

TEST(BuildPolygon, NonPositiveSlopesAllowed) {
  // x^2 + x + 4 at 2: (0,0), (1,0), (2,2)
  const auto poly = build_polygon(IntPolynomial({4, 1, 1}), 2);
  EXPECT_EQ(poly.vertices(), pts({{0, 0}, {1, 0}, {2, 2}}));
  EXPECT_FALSE(poly.all_slopes_positive());
  EXPECT_THROW(lattice_count(poly), InvalidArgument);
  EXPECT_THROW(ore_index_valuation(IntPolynomial({4, 1, 1}), 2), InvalidArgument);
}

TEST(BuildPolygon, RejectsNonPrime) {
  EXPECT_THROW(build_polygon(IntPolynomial::x_pow_minus(2, 5), 4), InvalidArgument);
}

TEST(BuildPolygon, RandomHullProperties) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 1 + rng() % 30;
    std::vector<Integer> c(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
      const auto mag = static_cast<long long>(rng() % 1'000'001);
      // Bias toward highly divisible coefficients so polygons are not flat.
      const long long scale = 1LL << (rng() % 12);
      c[i] = (rng() % 4 == 0) ? Integer(0) : Integer(mag) * scale * ((rng() & 1) ? 1 : -1);
    }
    if (c[0] == 0) c[0] = 1 << (rng() % 20);
    c[n] = 1;
    const IntPolynomial g(c);
    for (unsigned p : {2u, 3u, 5u}) {
      const auto poly = build_polygon(g, p);
      ASSERT_EQ(poly.vertices().front(), (Point{0, 0}));
      ASSERT_EQ(poly.width(), static_cast<std::int64_t>(n));
      std::int64_t total = 0;
      for (std::size_t i = 0; i < poly.edges().size(); ++i) {
        const Edge& e = poly.edges()[i];
        total += e.length();
        if (i) {
          ASSERT_TRUE(poly.edges()[i - 1].slope < e.slope);
        }
        ASSERT_EQ(std::gcd(e.slope.num, e.slope.den), 1);
        ASSERT_EQ(e.slope.num * e.length() % e.slope.den, 0);
      }
      ASSERT_EQ(total, static_cast<std::int64_t>(n));
      for (std::size_t j = 0; j <= n; ++j) {
        if (c[n - j] == 0) continue;
        const auto y = static_cast<std::int64_t>(oracle::valuation(c[n - j], p));
        const auto x = static_cast<std::int64_t>(j);
        for (const Edge& e : poly.edges())
          ASSERT_GE((y - e.start.y) * e.length(), (x - e.start.x) * e.rise())
              << "point (" << x << "," << y << ") below an edge line";
      }
      for (const Point& v : poly.vertices()) {
        const Integer& cv = c[n - static_cast<std::size_t>(v.x)];
        ASSERT_NE(cv, 0);
        ASSERT_EQ(static_cast<std::int64_t>(oracle::valuation(cv, p)), v.y);
      }
    }
  }
}

TEST(Residual, WorkedExample) {
  const auto g = shifted(4, 5);
  const auto poly = build_polygon(g, 2);
  const auto T = residual_polynomial(g, 2, poly.edges()[0]);
  EXPECT_EQ(T.coefficients, (std::vector<Integer>{1, 1, 1}));
  EXPECT_EQ(T.to_string(), "Y^2 + Y + 1");
  EXPECT_TRUE(is_separable_mod_p(T));
}

TEST(Residual, QuadraticAtFive) {
  const auto g = IntPolynomial::x_pow_minus(2, 5);
  const auto T = residual_polynomial(g, 5, build_polygon(g, 5).edges()[0]);
  EXPECT_EQ(T.coefficients, (std::vector<Integer>{4, 1}));
}

TEST(Residual, SexticAtThree) {
  const auto g = IntPolynomial::x_pow_minus(6, 9);
  const auto poly = build_polygon(g, 3);
  ASSERT_EQ(poly.edges().size(), 1u);
  EXPECT_EQ(poly.edges()[0].slope, (Slope{1, 3}));
  const auto T = residual_polynomial(g, 3, poly.edges()[0]);
  EXPECT_EQ(T.coefficients, (std::vector<Integer>{2, 0, 1}));
  EXPECT_TRUE(is_separable_mod_p(T));
}

TEST(Residual, NormalizedOnInnerEdges) {
  // The last edge of (x+9)^4 - 9 at 2 starts at (2,1) and carries Y^2+Y+1.
  const auto g = shifted(4, 9);
  const auto poly = build_polygon(g, 2);
  ASSERT_EQ(poly.vertices(), pts({{0, 0}, {2, 1}, {4, 3}}));
  const auto T = residual_polynomial(g, 2, poly.edges()[1]);
  EXPECT_EQ(T.coefficients, (std::vector<Integer>{1, 1, 1}));
}

TEST(Residual, RejectsFlatEdge) {
  const IntPolynomial g({4, 1, 1});
  EXPECT_THROW(residual_polynomial(g, 2, build_polygon(g, 2).edges()[0]),
               InvalidArgument);
}

TEST(Residual, BinomialAtRadicandPrimes) {
  // x^n - a at q | a, q not dividing m = gcd(n, t): T = Y^m - (a / q^t).
  for (unsigned q = 2; q <= 50; ++q) {
    if (!is_prime(q)) continue;
    for (std::uint64_t n = 2; n <= 24; ++n)
      for (std::uint64_t t = 1; t <= 6; ++t) {
        const std::uint64_t m = std::gcd(n, t);
        if (m % q == 0) continue;
        for (int unit : {1, -1, 2, -7, 11}) {
          if (unit % static_cast<int>(q) == 0) continue;
          const Integer a = ipow(Integer(q), t) * unit;
          const auto g = IntPolynomial::x_pow_minus(n, a);
          const auto poly = build_polygon(g, q);
          ASSERT_EQ(poly.edges().size(), 1u);
          const auto T = residual_polynomial(g, q, poly.edges()[0]);
          std::vector<Integer> expected(m + 1);
          expected[0] = mod_floor(-Integer(unit), q);
          expected[m] = 1;
          ASSERT_EQ(T.coefficients, expected) << "q=" << q << " n=" << n << " t=" << t;
          ASSERT_TRUE(is_separable_mod_p(T));
        }
      }
  }
}

TEST(Separable, Examples) {
  EXPECT_TRUE(is_separable_mod_p({2, {1, 1, 1}}));
  EXPECT_FALSE(is_separable_mod_p({2, {1, 0, 1}}));
  EXPECT_TRUE(is_separable_mod_p({5, {4, 1}}));
  EXPECT_FALSE(is_separable_mod_p({3, {1, 0, 0, 1}}));  // Y^3 + 1 = (Y+1)^3
  EXPECT_FALSE(is_separable_mod_p({5, {1, 2, 1}}));     // (Y+1)^2 over F_5
  EXPECT_TRUE(is_separable_mod_p({7, {3, 0, 1}}));      // (Y-2)(Y+2)
  EXPECT_THROW(is_separable_mod_p({3, {0, 0}}), InvalidArgument);
}

TEST(TriangleCount, Examples) {
  EXPECT_EQ(triangle_count(4, 2), 2u);
  for (std::uint64_t n = 1; n <= 30; ++n) EXPECT_EQ(triangle_count(n, n), n * (n - 1) / 2);
  EXPECT_EQ(triangle_count(8, 1), 0u);
  EXPECT_THROW(triangle_count(0, 3), InvalidArgument);
}

TEST(TriangleCount, ExhaustiveAgainstEnumerationAndFloorSum) {
  for (std::uint64_t n = 1; n <= 200; ++n)
    for (std::uint64_t t = 1; t <= 200; ++t) {
      std::uint64_t floor_sum = 0;
      for (std::uint64_t i = 1; i < n; ++i) floor_sum += i * t / n;
      const auto c = triangle_count(n, t);
      ASSERT_EQ(c, floor_sum) << n << "," << t;
      if (n <= 60 && t <= 60) {
        ASSERT_EQ(c, oracle::triangle_points(n, t)) << n << "," << t;
      }
    }
}

TEST(LatticeCount, Examples) {
  EXPECT_EQ(lattice_count(NewtonPolygon(2, pts({{0, 0}, {4, 2}}))), 2u);
  EXPECT_EQ(lattice_count(build_polygon(shifted(8, 33), 2)), 7u);
  for (int k = 1; k <= 10; ++k)
    EXPECT_EQ(lattice_count(NewtonPolygon(2, pts({{0, 0}, {1, k}}))), 0u);
  EXPECT_THROW(lattice_count(NewtonPolygon(2, pts({{0, 1}, {3, 4}}))), InvalidArgument);
}

TEST(LatticeCount, SingleEdgeEqualsTriangle) {
  for (int n = 1; n <= 40; ++n)
    for (int t = 1; t <= 40; ++t)
      ASSERT_EQ(lattice_count(NewtonPolygon(3, pts({{0, 0}, {n, t}}))),
                triangle_count(n, t));
}

TEST(LatticeCount, RandomConvexPolygonsMatchScan) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 2000; ++trial) {
    // Build a convex chain from edges of increasing positive slope.
    std::vector<std::pair<int, int>> steps;  // (dx, dy)
    const int k = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < k; ++i) steps.push_back({1 + static_cast<int>(rng() % 9), 1 + static_cast<int>(rng() % 9)});
    std::sort(steps.begin(), steps.end(), [](auto l, auto r) {
      return l.second * r.first < r.second * l.first;
    });
    std::vector<Point> v{{0, 0}};
    bool ok = true;
    for (std::size_t i = 0; i < steps.size(); ++i) {
      if (i && steps[i].second * steps[i - 1].first == steps[i - 1].second * steps[i].first) {
        ok = false;
        break;
      }
      v.push_back({v.back().x + steps[i].first, v.back().y + steps[i].second});
    }
    if (!ok) continue;
    const NewtonPolygon poly(2, v);
    ASSERT_EQ(lattice_count(poly), brute_lattice_count(poly));
  }
}

TEST(OreIndex, Examples) {
  // Points (2,1) and (3,1) lie under the edge (0,0)-(4,2).
  EXPECT_EQ(ore_index_valuation(shifted(4, 5), 2), 2u);
  EXPECT_EQ(ore_index_valuation(shifted(3, 2), 3), 0u);
  EXPECT_EQ(build_polygon(shifted(3, 2), 3).vertices(), pts({{0, 0}, {3, 1}}));
  EXPECT_EQ(ore_index_valuation(shifted(8, 33), 2), 7u);
}

TEST(OreIndex, IrregularResidualIsReported) {
  // x^6 - 4 at 2: slope 1/3, T = Y^2 - 1 = (Y+1)^2 over F_2.
  const auto g = IntPolynomial::x_pow_minus(6, 4);
  try {
    ore_index_valuation(g, 2);
    FAIL() << "expected OreRegularityFailure";
  } catch (const OreRegularityFailure& e) {
    EXPECT_EQ(e.prime(), 2);
  }
}

TEST(OreIndex, RequiresCongruenceToMonomial) {
  EXPECT_THROW(ore_index_valuation(IntPolynomial::x_pow_minus(3, 2), 3), InvalidArgument);
}

}  // namespace
}  // namespace purefield
