#pragma once

#include <array>
#include <map>
#include <string>

namespace bihindex::oracle {

using Point3 = std::array<double, 3>;

/// Polynomial in three real variables with double coefficients, used for
/// closed-form derivatives on the round 2-sphere.
class Polynomial3 {
 public:
  using Exponent = std::array<int, 3>;

  Polynomial3() = default;
  Polynomial3(double constant);  // NOLINT(google-explicit-constructor)

  static Polynomial3 variable(int i);
  static Polynomial3 monomial(double coef, int e0, int e1, int e2);

  const std::map<Exponent, double>& terms() const { return terms_; }
  int degree() const;
  bool is_zero() const { return terms_.empty(); }

  double operator()(const Point3& y) const;
  Polynomial3 derivative(int var) const;

  Polynomial3& operator+=(const Polynomial3& rhs);
  Polynomial3& operator-=(const Polynomial3& rhs);
  Polynomial3& operator*=(const Polynomial3& rhs);
  Polynomial3& operator*=(double s);
  friend Polynomial3 operator+(Polynomial3 a, const Polynomial3& b) { return a += b; }
  friend Polynomial3 operator-(Polynomial3 a, const Polynomial3& b) { return a -= b; }
  friend Polynomial3 operator*(Polynomial3 a, const Polynomial3& b) { return a *= b; }
  friend Polynomial3 operator*(Polynomial3 a, double s) { return a *= s; }
  friend Polynomial3 operator*(double s, Polynomial3 a) { return a *= s; }
  Polynomial3 operator-() const { return *this * -1.0; }

 private:
  void add_term(const Exponent& e, double c);
  std::map<Exponent, double> terms_;
};

/// Positive Laplace-Beltrami operator of the sphere of radius r centred at
/// the origin, applied to the restriction of p:
/// -Delta p + (y^T Hess(p) y + 2 y . grad p) / r^2.
Polynomial3 sphere_laplacian(const Polynomial3& p, double radius);

/// Tangential gradient of the restriction of p, as three ambient components:
/// grad p - (y . grad p) y / r^2.
std::array<Polynomial3, 3> sphere_gradient(const Polynomial3& p, double radius);

}  // namespace bihindex::oracle
