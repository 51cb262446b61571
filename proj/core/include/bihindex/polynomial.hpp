#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "bihindex/rational.hpp"

namespace bihindex {

/// Dense univariate polynomial with exact rational coefficients, stored
/// lowest degree first. The zero polynomial has no coefficients.
class RationalPolynomial {
 public:
  RationalPolynomial() = default;
  RationalPolynomial(std::initializer_list<Rational> low_to_high);
  explicit RationalPolynomial(std::vector<Rational> low_to_high);

  /// The monomial x.
  static RationalPolynomial x();

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  /// Coefficient of x^k, zero beyond the degree.
  Rational coefficient(int k) const;

  Rational operator()(const Rational& x) const;
  double operator()(double x) const;

  /// p(x + shift).
  RationalPolynomial taylor_shift(const Rational& shift) const;

  /// True when every coefficient is >= 0 and the constant term is > 0, which
  /// makes p strictly positive on [0, inf).
  bool positive_on_nonnegative_axis() const;

  std::string str(const std::string& var = "x") const;

  RationalPolynomial& operator+=(const RationalPolynomial& rhs);
  RationalPolynomial& operator-=(const RationalPolynomial& rhs);
  RationalPolynomial& operator*=(const RationalPolynomial& rhs);
  friend RationalPolynomial operator+(RationalPolynomial a, const RationalPolynomial& b) { return a += b; }
  friend RationalPolynomial operator-(RationalPolynomial a, const RationalPolynomial& b) { return a -= b; }
  friend RationalPolynomial operator*(RationalPolynomial a, const RationalPolynomial& b) { return a *= b; }
  RationalPolynomial operator-() const;

  friend bool operator==(const RationalPolynomial&, const RationalPolynomial&) = default;

 private:
  void normalize();
  std::vector<Rational> coeffs_;
};

}  // namespace bihindex
