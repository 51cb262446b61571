#include "calculus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bihindex::oracle::detail {
namespace {

void require_same_shape(const VectorSamples& a, const VectorSamples& b) {
  if (a.dim() != b.dim() || a.nodes() != b.nodes()) throw std::invalid_argument("vector samples shape mismatch");
}

}  // namespace

Samples dot(const VectorSamples& a, const VectorSamples& b) {
  require_same_shape(a, b);
  Samples out(a.nodes(), 0.0);
  for (std::size_t c = 0; c < a.dim(); ++c) {
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += a.comp[c][k] * b.comp[c][k];
  }
  return out;
}

Samples norm2(const VectorSamples& a) { return dot(a, a); }

VectorSamples operator+(const VectorSamples& a, const VectorSamples& b) {
  require_same_shape(a, b);
  VectorSamples out = a;
  for (std::size_t c = 0; c < a.dim(); ++c) {
    for (std::size_t k = 0; k < a.nodes(); ++k) out.comp[c][k] += b.comp[c][k];
  }
  return out;
}

VectorSamples operator-(const VectorSamples& a, const VectorSamples& b) { return a + (-1.0) * b; }

VectorSamples operator*(double s, const VectorSamples& v) {
  VectorSamples out = v;
  for (auto& c : out.comp) {
    for (auto& x : c) x *= s;
  }
  return out;
}

VectorSamples operator*(const Samples& f, const VectorSamples& v) {
  if (f.size() != v.nodes()) throw std::invalid_argument("scalar and vector samples differ in size");
  VectorSamples out = v;
  for (auto& c : out.comp) {
    for (std::size_t k = 0; k < c.size(); ++k) c[k] *= f[k];
  }
  return out;
}

Samples operator+(const Samples& a, const Samples& b) {
  Samples out = a;
  for (std::size_t k = 0; k < out.size(); ++k) out[k] += b[k];
  return out;
}

Samples operator-(const Samples& a, const Samples& b) {
  Samples out = a;
  for (std::size_t k = 0; k < out.size(); ++k) out[k] -= b[k];
  return out;
}

Samples operator*(const Samples& a, const Samples& b) {
  Samples out = a;
  for (std::size_t k = 0; k < out.size(); ++k) out[k] *= b[k];
  return out;
}

Samples operator*(double s, const Samples& a) {
  Samples out = a;
  for (auto& x : out) x *= s;
  return out;
}

double max_norm(const VectorSamples& v) {
  double m = 0.0;
  for (double x : norm2(v)) m = std::max(m, x);
  return std::sqrt(m);
}

double max_abs(const Samples& f) {
  double m = 0.0;
  for (double x : f) m = std::max(m, std::abs(x));
  return m;
}

VectorSamples project_to_sphere(const VectorSamples& phi, const VectorSamples& w) {
  return w - dot(w, phi) * phi;
}

FlatCalculus::FlatCalculus(const ExplicitGeometry& g)
    : geom_(&g), dims_(g.parameter_dims()), inv_c_(1.0 / g.metric_factor()) {
  if (!g.spectral()) throw std::invalid_argument("FlatCalculus requires a periodic geometry");
  dphi_norm2_.assign(g.nodes(), 0.0);
  tension_ = VectorSamples(g.phi().dim(), g.nodes());
  for (int i = 0; i < dims_; ++i) {
    dphi_.push_back(partial(g.phi(), i));
    dphi_norm2_ = dphi_norm2_ + inv_c_ * norm2(dphi_.back());
    tension_ = tension_ + inv_c_ * project_to_sphere(g.phi(), partial(g.phi(), i, 2));
  }
}

Samples FlatCalculus::partial(const Samples& f, int axis, int order) const {
  return geom_->differentiator().derivative(f, axis, order);
}

VectorSamples FlatCalculus::partial(const VectorSamples& v, int axis, int order) const {
  VectorSamples out;
  out.comp.reserve(v.dim());
  for (const auto& c : v.comp) out.comp.push_back(partial(c, axis, order));
  return out;
}

VectorSamples FlatCalculus::covariant(const VectorSamples& v, int axis) const {
  return project_to_sphere(geom_->phi(), partial(v, axis));
}

VectorSamples FlatCalculus::rough_laplacian(const VectorSamples& v) const {
  VectorSamples out(v.dim(), v.nodes());
  for (int i = 0; i < dims_; ++i) out = out - inv_c_ * covariant(covariant(v, i), i);
  return out;
}

VectorSamples FlatCalculus::tangent_part(const VectorSamples& v) const {
  VectorSamples out(v.dim(), v.nodes());
  for (int i = 0; i < dims_; ++i) out = out + inv_c_ * (dot(v, dphi_[static_cast<std::size_t>(i)]) * dphi_[static_cast<std::size_t>(i)]);
  return out;
}

Samples FlatCalculus::pair_with_dphi(const VectorSamples& v) const {
  Samples out(v.nodes(), 0.0);
  for (int i = 0; i < dims_; ++i) out = out + inv_c_ * dot(covariant(v, i), dphi_[static_cast<std::size_t>(i)]);
  return out;
}

VectorSamples FlatCalculus::project_to_psi_sphere(const VectorSamples& w) const {
  const auto& psi = geom_->psi();
  const Samples inv_r2 = [&] {
    Samples r2 = norm2(psi);
    for (auto& x : r2) x = 1.0 / x;
    return r2;
  }();
  return w - (dot(w, psi) * inv_r2) * psi;
}

VectorSamples FlatCalculus::psi_rough_laplacian(const VectorSamples& v) const {
  VectorSamples out(v.dim(), v.nodes());
  for (int i = 0; i < dims_; ++i) {
    const VectorSamples first = project_to_psi_sphere(partial(v, i));
    out = out - inv_c_ * project_to_psi_sphere(partial(first, i));
  }
  return out;
}

SphereCalculus::SphereCalculus(const ExplicitGeometry& g) : geom_(&g) {
  if (g.spectral()) throw std::invalid_argument("SphereCalculus requires a sphere geometry");
  const auto& phi = g.phi_polynomial();
  const std::size_t npsi = phi.size() - 1;
  for (std::size_t a = 0; a < npsi; ++a) {
    jac_.push_back({phi[a].derivative(0), phi[a].derivative(1), phi[a].derivative(2)});
  }
  const double inv_r2 = 1.0 / (g.radius() * g.radius());
  jac_samples_.resize(g.nodes());
  dphi_norm2_.assign(g.nodes(), 0.0);
  for (std::size_t k = 0; k < g.nodes(); ++k) {
    const Point3& y = g.points()[k];
    auto& rows = jac_samples_[k];
    rows.resize(npsi);
    for (std::size_t a = 0; a < npsi; ++a) {
      std::array<double, 3> row{jac_[a][0](y), jac_[a][1](y), jac_[a][2](y)};
      const double radial = (row[0] * y[0] + row[1] * y[1] + row[2] * y[2]) * inv_r2;
      for (std::size_t i = 0; i < 3; ++i) row[i] -= radial * y[i];
      rows[a] = row;
      dphi_norm2_[k] += row[0] * row[0] + row[1] * row[1] + row[2] * row[2];
    }
  }
}

VectorSamples SphereCalculus::sample(const PolyVector& v) const {
  VectorSamples out;
  for (const auto& p : v) out.comp.push_back(sample(p));
  return out;
}

Samples SphereCalculus::sample(const Polynomial3& f) const {
  Samples out(geom_->nodes());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = f(geom_->points()[k]);
  return out;
}

PolyVector SphereCalculus::laplacian(const PolyVector& v) const {
  PolyVector out;
  for (const auto& p : v) out.push_back(sphere_laplacian(p, geom_->radius()));
  return out;
}

PolyVector SphereCalculus::push_forward(const std::array<Polynomial3, 3>& x) const {
  PolyVector out;
  for (const auto& row : jac_) out.push_back(row[0] * x[0] + row[1] * x[1] + row[2] * x[2]);
  out.emplace_back();
  return out;
}

VectorSamples SphereCalculus::rough_laplacian(const PolyVector& v) const {
  return project_to_sphere(geom_->phi(), sample(laplacian(v))) - tangent_part(sample(v));
}

VectorSamples SphereCalculus::tangent_part(const VectorSamples& v) const {
  VectorSamples out(v.dim(), v.nodes());
  const std::size_t npsi = jac_.size();
  for (std::size_t k = 0; k < v.nodes(); ++k) {
    // Rows are already projected, so Dphi P_S Dphi^T = rows * rows^T.
    std::array<double, 3> w{0.0, 0.0, 0.0};
    for (std::size_t a = 0; a < npsi; ++a) {
      for (std::size_t i = 0; i < 3; ++i) w[i] += v.comp[a][k] * jac_samples_[k][a][i];
    }
    for (std::size_t a = 0; a < npsi; ++a) {
      const auto& r = jac_samples_[k][a];
      out.comp[a][k] = r[0] * w[0] + r[1] * w[1] + r[2] * w[2];
    }
  }
  return out;
}

}  // namespace bihindex::oracle::detail
