#pragma once

#include <string>

#include "bihindex/rational.hpp"

namespace bihindex {

/// Exact number a + b*sqrt(d) with rational a, b and rational d >= 0.
///
/// Comparisons against rationals never touch floating point: the sign of
/// a + b*sqrt(d) - q is read off the signs of (a - q) and b, and when they
/// disagree, from (a - q)^2 versus b^2 d.
class QuadraticSurd {
 public:
  QuadraticSurd() = default;
  QuadraticSurd(Rational a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  /// Throws std::invalid_argument when d < 0.
  QuadraticSurd(Rational a, Rational b, Rational d);

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const Rational& d() const { return d_; }

  /// True when the value is rational as represented (b = 0 or d = 0, or d a
  /// perfect rational square).
  bool is_rational() const;

  /// Sign of (*this - q): -1, 0 or +1.
  int compare(const Rational& q) const;
  int sign() const { return compare(Rational(0)); }

  double to_double() const;
  std::string str() const;

  friend bool operator<(const QuadraticSurd& s, const Rational& q) { return s.compare(q) < 0; }
  friend bool operator<=(const QuadraticSurd& s, const Rational& q) { return s.compare(q) <= 0; }
  friend bool operator>(const QuadraticSurd& s, const Rational& q) { return s.compare(q) > 0; }
  friend bool operator>=(const QuadraticSurd& s, const Rational& q) { return s.compare(q) >= 0; }
  friend bool operator<(const Rational& q, const QuadraticSurd& s) { return s.compare(q) > 0; }
  friend bool operator<=(const Rational& q, const QuadraticSurd& s) { return s.compare(q) >= 0; }
  friend bool operator>(const Rational& q, const QuadraticSurd& s) { return s.compare(q) < 0; }
  friend bool operator>=(const Rational& q, const QuadraticSurd& s) { return s.compare(q) <= 0; }

 private:
  Rational a_{0};
  Rational b_{0};
  Rational d_{0};
};

/// Exact square root of a non-negative rational when it is a perfect square.
bool rational_sqrt(const Rational& x, Rational& root);

}  // namespace bihindex
