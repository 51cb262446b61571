#include "bihindex/oracle/polynomial3.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bihindex::oracle {

Polynomial3::Polynomial3(double constant) {
  if (constant != 0.0) terms_[{0, 0, 0}] = constant;
}

Polynomial3 Polynomial3::variable(int i) {
  if (i < 0 || i > 2) throw std::invalid_argument("Polynomial3::variable: index out of range");
  Exponent e{0, 0, 0};
  e[static_cast<std::size_t>(i)] = 1;
  Polynomial3 p;
  p.terms_[e] = 1.0;
  return p;
}

Polynomial3 Polynomial3::monomial(double coef, int e0, int e1, int e2) {
  Polynomial3 p;
  p.add_term({e0, e1, e2}, coef);
  return p;
}

int Polynomial3::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e[0] + e[1] + e[2]);
  return d;
}

double Polynomial3::operator()(const Point3& y) const {
  double acc = 0.0;
  for (const auto& [e, c] : terms_) {
    double t = c;
    for (std::size_t i = 0; i < 3; ++i) {
      for (int k = 0; k < e[i]; ++k) t *= y[i];
    }
    acc += t;
  }
  return acc;
}

Polynomial3 Polynomial3::derivative(int var) const {
  if (var < 0 || var > 2) throw std::invalid_argument("Polynomial3::derivative: index out of range");
  const auto v = static_cast<std::size_t>(var);
  Polynomial3 out;
  for (const auto& [e, c] : terms_) {
    if (e[v] == 0) continue;
    Exponent d = e;
    d[v] -= 1;
    out.add_term(d, c * e[v]);
  }
  return out;
}

void Polynomial3::add_term(const Exponent& e, double c) {
  if (c == 0.0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

Polynomial3& Polynomial3::operator+=(const Polynomial3& rhs) {
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

Polynomial3& Polynomial3::operator-=(const Polynomial3& rhs) {
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

Polynomial3& Polynomial3::operator*=(const Polynomial3& rhs) {
  Polynomial3 out;
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : rhs.terms_) {
      out.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
    }
  }
  terms_ = std::move(out.terms_);
  return *this;
}

Polynomial3& Polynomial3::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

Polynomial3 sphere_laplacian(const Polynomial3& p, double radius) {
  const double inv_r2 = 1.0 / (radius * radius);
  std::array<Polynomial3, 3> grad;
  for (int i = 0; i < 3; ++i) grad[static_cast<std::size_t>(i)] = p.derivative(i);
  Polynomial3 flat_laplacian;
  Polynomial3 radial_second;
  Polynomial3 radial_first;
  for (int i = 0; i < 3; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    radial_first += Polynomial3::variable(i) * grad[ui];
    for (int j = 0; j < 3; ++j) {
      const Polynomial3 hij = grad[ui].derivative(j);
      if (i == j) flat_laplacian += hij;
      radial_second += Polynomial3::variable(i) * Polynomial3::variable(j) * hij;
    }
  }
  return -flat_laplacian + (radial_second + 2.0 * radial_first) * inv_r2;
}

std::array<Polynomial3, 3> sphere_gradient(const Polynomial3& p, double radius) {
  const double inv_r2 = 1.0 / (radius * radius);
  std::array<Polynomial3, 3> grad;
  Polynomial3 radial;
  for (int i = 0; i < 3; ++i) {
    grad[static_cast<std::size_t>(i)] = p.derivative(i);
    radial += Polynomial3::variable(i) * grad[static_cast<std::size_t>(i)];
  }
  for (int i = 0; i < 3; ++i) {
    grad[static_cast<std::size_t>(i)] -= radial * Polynomial3::variable(i) * inv_r2;
  }
  return grad;
}

}  // namespace bihindex::oracle
