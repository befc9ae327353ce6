#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "purefield/error.hpp"
#include "purefield/integer.hpp"

namespace purefield {

/// Monic integer polynomial with nonzero constant term, stored densely as
/// c_0, ..., c_n.
class IntPolynomial {
 public:
  explicit IntPolynomial(std::vector<Integer> coefficients)
      : coeffs_(std::move(coefficients)) {
    while (coeffs_.size() > 1 && coeffs_.back() == 0) coeffs_.pop_back();
    if (coeffs_.size() < 2)
      throw InvalidArgument("polynomial must have degree at least 1");
    if (coeffs_.back() != 1)
      throw InvalidArgument("polynomial must be monic");
    if (coeffs_.front() == 0)
      throw InvalidArgument("polynomial must have a nonzero constant term");
  }

  /// x^n - a.
  static IntPolynomial x_pow_minus(std::size_t n, const Integer& a) {
    std::vector<Integer> c(n + 1);
    c[0] = -a;
    c[n] = 1;
    return IntPolynomial(std::move(c));
  }

  std::size_t degree() const noexcept { return coeffs_.size() - 1; }
  const Integer& coeff(std::size_t i) const { return coeffs_.at(i); }
  const std::vector<Integer>& coefficients() const noexcept { return coeffs_; }

  std::string to_string(char var = 'x') const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
      const Integer& c = coeffs_[i];
      if (c == 0) continue;
      const Integer mag = abs(c);
      if (first) {
        if (c < 0) os << '-';
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      first = false;
      if (i == 0 || mag != 1) {
        os << mag;
        if (i > 0) os << '*';
      }
      if (i >= 1) os << var;
      if (i >= 2) os << '^' << i;
    }
    return os.str();
  }

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

 private:
  std::vector<Integer> coeffs_;
};

}  // namespace purefield
