#include "bihindex/surd.hpp"

#include <cmath>
#include <stdexcept>

namespace bihindex {
namespace {

bool integer_sqrt(const BigInt& n, BigInt& root) {
  if (n < 0) return false;
  BigInt r = boost::multiprecision::sqrt(n);
  if (r * r != n) return false;
  root = r;
  return true;
}

}  // namespace

bool rational_sqrt(const Rational& x, Rational& root) {
  if (x.sign() < 0) return false;
  BigInt num_root;
  BigInt den_root;
  if (!integer_sqrt(x.numerator(), num_root) || !integer_sqrt(x.denominator(), den_root)) return false;
  root = Rational(num_root, den_root);
  return true;
}

QuadraticSurd::QuadraticSurd(Rational a, Rational b, Rational d)
    : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {
  if (d_.sign() < 0) throw std::invalid_argument("quadratic surd with negative radicand " + d_.str());
}

bool QuadraticSurd::is_rational() const {
  if (b_.is_zero() || d_.is_zero()) return true;
  Rational root;
  return rational_sqrt(d_, root);
}

int QuadraticSurd::compare(const Rational& q) const {
  const Rational r = a_ - q;
  if (b_.is_zero() || d_.is_zero()) return r.sign();
  const int sr = r.sign();
  const int sb = b_.sign();
  if (sr == 0) return sb;
  if (sr == sb) return sr;
  // Opposite signs: |r| against |b| sqrt(d).
  const Rational lhs = r * r;
  const Rational rhs = b_ * b_ * d_;
  if (lhs > rhs) return sr;
  if (lhs < rhs) return sb;
  return 0;
}

double QuadraticSurd::to_double() const {
  return a_.to_double() + b_.to_double() * std::sqrt(d_.to_double());
}

std::string QuadraticSurd::str() const {
  if (b_.is_zero() || d_.is_zero()) return a_.str();
  std::string out;
  if (!a_.is_zero()) out = a_.str() + (b_.sign() < 0 ? " - " : " + ");
  else if (b_.sign() < 0) out = "-";
  const Rational mag = abs(b_);
  if (mag != Rational(1)) out += mag.str() + "*";
  out += "sqrt(" + d_.str() + ")";
  return out;
}

}  // namespace bihindex
