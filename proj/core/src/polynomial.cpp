#include "bihindex/polynomial.hpp"

#include <algorithm>

namespace bihindex {

RationalPolynomial::RationalPolynomial(std::initializer_list<Rational> low_to_high) : coeffs_(low_to_high) {
  normalize();
}

RationalPolynomial::RationalPolynomial(std::vector<Rational> low_to_high) : coeffs_(std::move(low_to_high)) {
  normalize();
}

RationalPolynomial RationalPolynomial::x() { return RationalPolynomial{Rational(0), Rational(1)}; }

void RationalPolynomial::normalize() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Rational RationalPolynomial::coefficient(int k) const {
  if (k < 0 || k > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(k)];
}

Rational RationalPolynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double RationalPolynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->to_double();
  return acc;
}

RationalPolynomial RationalPolynomial::taylor_shift(const Rational& shift) const {
  // Repeated synthetic division (Horner shift), O(n^2).
  std::vector<Rational> c = coeffs_;
  const std::size_t n = c.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = n - 1; j > i; --j) c[j - 1] += shift * c[j];
  }
  return RationalPolynomial(std::move(c));
}

bool RationalPolynomial::positive_on_nonnegative_axis() const {
  if (coeffs_.empty() || coeffs_.front().sign() <= 0) return false;
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c.sign() >= 0; });
}

std::string RationalPolynomial::str(const std::string& var) const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    const Rational& c = coeffs_[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    const bool negative = c.sign() < 0;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    const Rational mag = abs(c);
    if (k == 0 || mag != Rational(1)) out += mag.str();
    if (k >= 1) {
      if (mag != Rational(1)) out += "*";
      out += var;
      if (k >= 2) out += "^" + std::to_string(k);
    }
  }
  return out;
}

RationalPolynomial& RationalPolynomial::operator+=(const RationalPolynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), Rational(0));
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  normalize();
  return *this;
}

RationalPolynomial& RationalPolynomial::operator-=(const RationalPolynomial& rhs) { return *this += -rhs; }

RationalPolynomial& RationalPolynomial::operator*=(const RationalPolynomial& rhs) {
  if (coeffs_.empty() || rhs.coeffs_.empty()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<Rational> out(coeffs_.size() + rhs.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * rhs.coeffs_[j];
  }
  coeffs_ = std::move(out);
  normalize();
  return *this;
}

RationalPolynomial RationalPolynomial::operator-() const {
  std::vector<Rational> c = coeffs_;
  for (auto& v : c) v = -v;
  return RationalPolynomial(std::move(c));
}

}  // namespace bihindex
