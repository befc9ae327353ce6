#pragma once

// p-adic Newton polygons of monic integer polynomials, residual polynomials
// over F_p, and the lattice-point count of Ore's index theorem.

#include <cstdint>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "purefield/arith.hpp"
#include "purefield/error.hpp"
#include "purefield/integer.hpp"
#include "purefield/polynomial.hpp"

namespace purefield {

struct Point {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend bool operator==(const Point&, const Point&) = default;
  friend std::ostream& operator<<(std::ostream& os, const Point& pt) {
    return os << '(' << pt.x << ',' << pt.y << ')';
  }
};

/// Reduced fraction with positive denominator.
struct Slope {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Slope of(std::int64_t dy, std::int64_t dx) {
    if (dx <= 0) throw InvalidArgument("slope needs a positive run");
    const std::int64_t g = std::gcd(dy, dx);
    return {dy / g, dx / g};
  }

  bool positive() const noexcept { return num > 0; }
  std::string to_string() const {
    return std::to_string(num) + "/" + std::to_string(den);
  }

  friend bool operator==(const Slope&, const Slope&) = default;
  friend bool operator<(const Slope& l, const Slope& r) {
    return l.num * r.den < r.num * l.den;
  }
};

struct Edge {
  Point start;
  Point end;
  Slope slope;

  std::int64_t length() const noexcept { return end.x - start.x; }
  std::int64_t rise() const noexcept { return end.y - start.y; }
  /// Least positive e with e * slope integral.
  std::int64_t denominator() const noexcept { return slope.den; }
  /// Degree of the residual polynomial.
  std::int64_t degree() const noexcept { return length() / slope.den; }

  friend bool operator==(const Edge&, const Edge&) = default;
};

class NewtonPolygon {
 public:
  NewtonPolygon(Integer prime, std::vector<Point> vertices)
      : prime_(std::move(prime)), vertices_(std::move(vertices)) {
    if (vertices_.empty()) throw InvalidArgument("polygon without vertices");
    for (std::size_t i = 1; i < vertices_.size(); ++i) {
      const Point& a = vertices_[i - 1];
      const Point& b = vertices_[i];
      edges_.push_back({a, b, Slope::of(b.y - a.y, b.x - a.x)});
    }
    for (std::size_t i = 1; i < edges_.size(); ++i)
      if (!(edges_[i - 1].slope < edges_[i].slope))
        throw InvalidArgument("polygon slopes must strictly increase");
  }

  const Integer& prime() const noexcept { return prime_; }
  const std::vector<Point>& vertices() const noexcept { return vertices_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  /// Abscissa of the last vertex; equals the degree for built polygons.
  std::int64_t width() const noexcept { return vertices_.back().x; }

  bool all_slopes_positive() const noexcept {
    for (const auto& e : edges_)
      if (!e.slope.positive()) return false;
    return true;
  }

  /// Edge whose abscissa range contains x; the left one at shared vertices.
  const Edge& edge_at(std::int64_t x) const {
    for (const auto& e : edges_)
      if (x <= e.end.x) return e;
    throw InvalidArgument("abscissa beyond the polygon");
  }

 private:
  Integer prime_;
  std::vector<Point> vertices_;
  std::vector<Edge> edges_;
};

/// Lower convex hull of {(j, v_p(c_{n-j})) : c_{n-j} != 0} by monotone chain.
/// Collinear interior points are dropped from the vertex list.
inline NewtonPolygon build_polygon(const IntPolynomial& g, const Integer& p) {
  require_prime(p);
  const auto n = static_cast<std::int64_t>(g.degree());
  std::vector<Point> hull;
  for (std::int64_t j = 0; j <= n; ++j) {
    const Integer& c = g.coeff(static_cast<std::size_t>(n - j));
    if (c == 0) continue;
    const Point pt{j, static_cast<std::int64_t>(
                          detail::valuation_unchecked(abs(c), p))};
    while (hull.size() >= 2) {
      const Point& o = hull[hull.size() - 2];
      const Point& a = hull.back();
      // Pop `a` unless it lies strictly below the segment o -> pt.
      const std::int64_t cross =
          (a.x - o.x) * (pt.y - o.y) - (a.y - o.y) * (pt.x - o.x);
      if (cross <= 0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(pt);
  }
  return NewtonPolygon(p, std::move(hull));
}

/// Monic polynomial over F_p, coefficients ascending by degree.
struct ResidualPolynomial {
  Integer prime;
  std::vector<Integer> coefficients;

  std::int64_t degree() const noexcept {
    return static_cast<std::int64_t>(coefficients.size()) - 1;
  }

  std::string to_string(char var = 'Y') const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = coefficients.size(); i-- > 0;) {
      const Integer& c = coefficients[i];
      if (c == 0) continue;
      if (!first) os << " + ";
      first = false;
      if (i == 0 || c != 1) os << c;
      if (i >= 1) os << var;
      if (i >= 2) os << '^' << i;
    }
    if (first) os << '0';
    return os.str();
  }

  friend bool operator==(const ResidualPolynomial&,
                         const ResidualPolynomial&) = default;
};

namespace detail {

using FpPoly = std::vector<Integer>;

inline void trim(FpPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline Integer inverse_mod(const Integer& x, const Integer& p) {
  return boost::multiprecision::powm(mod_floor(x, p), p - 2, p);
}

/// Remainder of f by nonzero g over F_p.
inline FpPoly poly_rem(FpPoly f, const FpPoly& g, const Integer& p) {
  const Integer inv = inverse_mod(g.back(), p);
  trim(f);
  while (f.size() >= g.size()) {
    const Integer factor = f.back() * inv % p;
    const std::size_t shift = f.size() - g.size();
    for (std::size_t i = 0; i < g.size(); ++i)
      f[shift + i] = mod_floor(f[shift + i] - factor * g[i], p);
    trim(f);
  }
  return f;
}

inline FpPoly poly_gcd(FpPoly a, FpPoly b, const Integer& p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    FpPoly r = poly_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace detail

/// Residual polynomial of `g` attached to one polygon edge. The points of
/// the edge with abscissa x0 + e*j contribute c_{n-x0-ej} / p^{y0 + ej*slope}
/// reduced mod p; the result is normalized to be monic.
inline ResidualPolynomial residual_polynomial(const IntPolynomial& g,
                                              const Integer& p,
                                              const Edge& edge) {
  if (!edge.slope.positive())
    throw InvalidArgument("residual polynomial needs a positive slope");
  const auto n = static_cast<std::int64_t>(g.degree());
  const std::int64_t e = edge.denominator();
  const std::int64_t t = edge.degree();
  const std::int64_t h = edge.slope.num;  // rise per e steps
  // value_j for j = 0..t, with T = sum value_j Y^{t-j}
  std::vector<Integer> values(static_cast<std::size_t>(t + 1));
  for (std::int64_t j = 0; j <= t; ++j) {
    const std::int64_t x = edge.start.x + e * j;
    const std::int64_t line_y = edge.start.y + h * j;
    const Integer& c = g.coeff(static_cast<std::size_t>(n - x));
    if (c == 0) continue;
    Integer rest = c;
    const auto v = static_cast<std::int64_t>(detail::strip(rest, p));
    if (v < line_y)
      throw InternalError("coefficient lies below a Newton polygon edge");
    if (v == line_y) values[static_cast<std::size_t>(j)] = mod_floor(rest, p);
  }
  if (values.front() == 0 || values.back() == 0)
    throw InternalError("edge endpoints must be polygon points");
  const Integer inv = detail::inverse_mod(values.front(), p);
  ResidualPolynomial T{p, std::vector<Integer>(values.size())};
  for (std::int64_t j = 0; j <= t; ++j)
    T.coefficients[static_cast<std::size_t>(t - j)] =
        values[static_cast<std::size_t>(j)] * inv % p;
  return T;
}

/// True iff gcd(T, T') is constant over F_p.
inline bool is_separable_mod_p(const ResidualPolynomial& T) {
  detail::FpPoly f = T.coefficients;
  detail::trim(f);
  if (f.empty()) throw InvalidArgument("zero polynomial");
  if (f.size() <= 2) return true;
  detail::FpPoly df(f.size() - 1);
  for (std::size_t i = 1; i < f.size(); ++i)
    df[i - 1] = mod_floor(f[i] * i, T.prime);
  detail::trim(df);
  if (df.empty()) return false;
  return detail::poly_gcd(f, df, T.prime).size() == 1;
}

/// Positive lattice points inside or on the triangle (0,0), (n,0), (n,t),
/// off the line x = n: (1/2)[(n-1)(t-1) + gcd(n,t) - 1].
inline std::uint64_t triangle_count(std::uint64_t n, std::uint64_t t) {
  if (n == 0 || t == 0) throw InvalidArgument("triangle_count needs n, t >= 1");
  const std::uint64_t twice = (n - 1) * (t - 1) + std::gcd(n, t) - 1;
  return twice / 2;
}

/// Points (x, y) with x, y >= 1, x below the last abscissa and y at most the
/// path height, summed edge by edge from triangle counts.
inline std::uint64_t lattice_count(const NewtonPolygon& poly) {
  if (poly.vertices().front() != Point{0, 0})
    throw InvalidArgument("polygon must start at the origin");
  if (!poly.all_slopes_positive())
    throw InvalidArgument("lattice count needs positive slopes");
  const std::int64_t last = poly.width();
  std::uint64_t total = 0;
  for (const auto& e : poly.edges()) {
    const auto dx = static_cast<std::uint64_t>(e.length());
    const auto dy = static_cast<std::uint64_t>(e.rise());
    total += (dx - 1) * static_cast<std::uint64_t>(e.start.y);
    total += triangle_count(dx, dy);
    if (e.end.x < last) total += static_cast<std::uint64_t>(e.end.y);
  }
  return total;
}

/// v_p of the index of a root of g, via Ore: requires g = x^n (mod p) and
/// every residual polynomial separable.
inline std::uint64_t ore_index_valuation(const IntPolynomial& g,
                                         const Integer& p) {
  NewtonPolygon poly = build_polygon(g, p);
  if (!poly.all_slopes_positive())
    throw InvalidArgument("polynomial is not congruent to x^n mod p");
  for (const auto& e : poly.edges()) {
    if (!is_separable_mod_p(residual_polynomial(g, p, e)))
      throw OreRegularityFailure(
          p, "Ore regularity fails at p = " + p.str() + " on edge of slope " +
                 e.slope.to_string());
  }
  return lattice_count(poly);
}

}  // namespace purefield
