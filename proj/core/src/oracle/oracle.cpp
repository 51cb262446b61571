#include "bihindex/oracle/oracle.hpp"

#include <gsl/gsl_linalg.h>
#include <gsl/gsl_matrix.h>
#include <gsl/gsl_vector.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>

#include "calculus.hpp"

namespace bihindex::oracle {

using detail::dot;
using detail::FlatCalculus;
using detail::max_abs;
using detail::max_norm;
using detail::norm2;
using detail::PolyVector;
using detail::SphereCalculus;
using detail::operator+;
using detail::operator-;
using detail::operator*;

namespace {

// Room left between the data's bandwidth and the grid's Nyquist frequency;
// the fourth-order operator multiplies by phi and its derivatives a few times.
constexpr int kBandMargin = 12;

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

void require_periodic(const ExplicitGeometry& g, const char* what) {
  if (!g.spectral()) throw std::invalid_argument(std::string(what) + ": requires the circle or torus geometry");
}

int trig_bandwidth(const ScalarField& f) {
  if (const auto* t = std::get_if<TrigPolynomial>(&f)) return t->bandwidth();
  return 0;
}

const Polynomial3& as_polynomial(const ExplicitGeometry& g, const ScalarField& f) {
  const auto* p = std::get_if<Polynomial3>(&f);
  if (!p || g.spectral()) throw std::invalid_argument("scalar field type does not match the " + g.tag() + " geometry");
  return *p;
}

void check_bandwidth(const ExplicitGeometry& g, int band) {
  if (band + kBandMargin >= g.grid() / 2) {
    throw std::domain_error("aliasing: bandwidth " + std::to_string(band) + " needs a grid finer than " +
                            std::to_string(g.grid()) + " (bandwidth + " + std::to_string(kBandMargin) +
                            " must stay below N/2)");
  }
}

int measured_bandwidth(const ExplicitGeometry& g, const VectorSamples& v) {
  double scale = 0.0;
  for (const auto& c : v.comp) scale = std::max(scale, max_abs(c));
  int band = 0;
  for (const auto& c : v.comp) {
    if (max_abs(c) <= 1e-14 * scale) continue;
    band = std::max(band, g.differentiator().bandwidth(c, 1e-11));
  }
  return band;
}

void check_section_bandwidth(const ExplicitGeometry& g, const DiscretizedSection& v) {
  check_bandwidth(g, std::max(v.bandwidth, measured_bandwidth(g, v.values)));
}

PolyVector eta_polynomial(const ExplicitGeometry& g) {
  PolyVector eta = g.phi_polynomial();
  eta.back() = Polynomial3(-kInvSqrt2);
  return eta;
}

PolyVector scale_vector(const Polynomial3& f, const PolyVector& v) {
  PolyVector out;
  for (const auto& c : v) out.push_back(f * c);
  return out;
}

DiscretizedSection from_closed_form(const ExplicitGeometry& g, BundleTag tag, PolyVector v) {
  const SphereCalculus calc(g);
  DiscretizedSection s;
  s.tag = tag;
  s.values = calc.sample(v);
  s.closed_form = std::move(v);
  return s;
}

// Coefficient fields X^j as samples.
std::vector<Samples> sample_field(const ExplicitGeometry& g, const std::vector<TrigPolynomial>& field) {
  if (static_cast<int>(field.size()) != g.parameter_dims()) {
    throw std::invalid_argument("tangent field needs " + std::to_string(g.parameter_dims()) + " components");
  }
  std::vector<Samples> out;
  for (const auto& c : field) out.push_back(c.sample(g));
  return out;
}

int field_bandwidth(const std::vector<TrigPolynomial>& field) {
  int b = 0;
  for (const auto& c : field) b = std::max(b, c.bandwidth());
  return b;
}

VectorSamples push_forward(const FlatCalculus& calc, const std::vector<Samples>& x) {
  const auto& g = calc.geometry();
  VectorSamples v(g.phi().dim(), g.nodes());
  for (std::size_t i = 0; i < x.size(); ++i) v = v + x[i] * calc.dphi()[i];
  return v;
}

VectorSamples psi_part(const VectorSamples& v) {
  VectorSamples out = v;
  out.comp.pop_back();
  return out;
}

VectorSamples lift(const VectorSamples& v) {
  VectorSamples out = v;
  out.comp.emplace_back(v.nodes(), 0.0);
  return out;
}

double relative(double a, double b, double floor = 1.0) { return std::abs(a - b) / std::max(floor, std::abs(b)); }

}  // namespace

std::string to_string(BundleTag t) {
  switch (t) {
    case BundleTag::normal: return "normal";
    case BundleTag::tangent: return "tangent";
    case BundleTag::vertical: return "vertical";
    case BundleTag::mixed: return "mixed";
  }
  return "mixed";
}

Samples sample(const ExplicitGeometry& g, const ScalarField& f) {
  if (const auto* t = std::get_if<TrigPolynomial>(&f)) {
    if (!g.spectral()) throw std::invalid_argument("trigonometric field given on the " + g.tag() + " geometry");
    return t->sample(g);
  }
  const Polynomial3& p = as_polynomial(g, f);
  Samples out(g.nodes());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = p(g.points()[k]);
  return out;
}

DiscretizedSection normal_section(const ExplicitGeometry& g, const ScalarField& f) {
  if (g.spectral()) {
    DiscretizedSection s;
    s.tag = BundleTag::normal;
    s.values = sample(g, f) * g.eta();
    s.bandwidth = trig_bandwidth(f) + 1;
    return s;
  }
  return from_closed_form(g, BundleTag::normal, scale_vector(as_polynomial(g, f), eta_polynomial(g)));
}

DiscretizedSection gradient_section(const ExplicitGeometry& g, const ScalarField& f) {
  if (g.spectral()) {
    const FlatCalculus calc(g);
    const Samples fs = sample(g, f);
    std::vector<Samples> x;
    for (int i = 0; i < g.parameter_dims(); ++i) x.push_back(calc.inverse_metric() * calc.partial(fs, i));
    DiscretizedSection s;
    s.tag = BundleTag::tangent;
    s.values = push_forward(calc, x);
    s.bandwidth = trig_bandwidth(f) + 1;
    return s;
  }
  const SphereCalculus calc(g);
  return from_closed_form(g, BundleTag::tangent,
                          calc.push_forward(sphere_gradient(as_polynomial(g, f), g.radius())));
}

DiscretizedSection tangent_section(const ExplicitGeometry& g, const std::vector<TrigPolynomial>& field) {
  require_periodic(g, "tangent_section");
  const FlatCalculus calc(g);
  DiscretizedSection s;
  s.tag = BundleTag::tangent;
  s.values = push_forward(calc, sample_field(g, field));
  s.bandwidth = field_bandwidth(field) + 1;
  return s;
}

DiscretizedSection vertical_section(const ExplicitGeometry& g, const ScalarField& f, int direction) {
  const int ambient = g.ambient_dim();
  const std::string tag = g.tag();
  if (tag == "torus") {
    if (direction != 0) throw std::invalid_argument("vertical_section: the torus has one vertical direction");
    DiscretizedSection s;
    s.tag = BundleTag::vertical;
    s.values = sample(g, f) * g.xi();
    s.bandwidth = trig_bandwidth(f) + 1;
    return s;
  }
  if (tag == "veronese") throw std::invalid_argument("vertical_section: not available for the Veronese surface");
  // psi occupies coordinates 0..m, the constant coordinate is the last one.
  const int index = g.m() + 1 + direction;
  if (direction < 0 || index >= ambient - 1) {
    throw std::invalid_argument("vertical_section: direction " + std::to_string(direction) + " out of range for " + tag +
                                " (codimension " + std::to_string(ambient - g.m() - 2) + ")");
  }
  if (g.spectral()) {
    DiscretizedSection s;
    s.tag = BundleTag::vertical;
    s.values = VectorSamples(static_cast<std::size_t>(ambient), g.nodes());
    s.values.comp[static_cast<std::size_t>(index)] = sample(g, f);
    s.bandwidth = trig_bandwidth(f);
    return s;
  }
  PolyVector v(static_cast<std::size_t>(ambient));
  v[static_cast<std::size_t>(index)] = as_polynomial(g, f);
  return from_closed_form(g, BundleTag::vertical, std::move(v));
}

DiscretizedSection combine(double a, const DiscretizedSection& v, double b, const DiscretizedSection& w) {
  DiscretizedSection s;
  s.tag = v.tag == w.tag ? v.tag : BundleTag::mixed;
  s.values = a * v.values + b * w.values;
  s.bandwidth = std::max(v.bandwidth, w.bandwidth);
  if (!v.closed_form.empty() && !w.closed_form.empty()) {
    for (std::size_t c = 0; c < v.closed_form.size(); ++c) s.closed_form.push_back(a * v.closed_form[c] + b * w.closed_form[c]);
  }
  return s;
}

void validate_section(const ExplicitGeometry& g, const DiscretizedSection& v, double tol) {
  if (v.values.dim() != static_cast<std::size_t>(g.ambient_dim()) || v.values.nodes() != g.nodes()) {
    throw std::domain_error("section shape does not match the " + g.tag() + " geometry");
  }
  const double scale = tol * std::max(1.0, max_norm(v.values));
  const auto fail = [&](const std::string& what, const Samples& err) {
    for (std::size_t k = 0; k < err.size(); ++k) {
      if (std::abs(err[k]) > scale) {
        throw std::domain_error(to_string(v.tag) + " section: " + what + " at node " + std::to_string(k) + " (" +
                                std::to_string(err[k]) + ")");
      }
    }
  };
  fail("not tangent to the target sphere", dot(v.values, g.phi()));
  if (v.tag == BundleTag::mixed) return;

  VectorSamples tangent_part;
  if (g.spectral()) {
    tangent_part = FlatCalculus(g).tangent_part(v.values);
  } else {
    tangent_part = SphereCalculus(g).tangent_part(v.values);
  }
  const Samples along_eta = dot(v.values, g.eta());
  switch (v.tag) {
    case BundleTag::normal: {
      Samples off = norm2(v.values - along_eta * g.eta());
      for (auto& x : off) x = std::sqrt(x);
      fail("component off the normal direction", off);
      break;
    }
    case BundleTag::tangent: {
      fail("component along eta", along_eta);
      Samples off = norm2(v.values - tangent_part);
      for (auto& x : off) x = std::sqrt(x);
      fail("component off dphi(TM)", off);
      break;
    }
    case BundleTag::vertical: {
      fail("component along eta", along_eta);
      Samples off = norm2(tangent_part);
      for (auto& x : off) x = std::sqrt(x);
      fail("component in dphi(TM)", off);
      break;
    }
    case BundleTag::mixed: break;
  }
}

BiharmonicityResiduals biharmonicity_residuals(const ExplicitGeometry& g) {
  const double m = g.m();
  Samples energy;
  VectorSamples tension;
  VectorSamples bitension;
  if (g.spectral()) {
    const FlatCalculus calc(g);
    energy = 0.5 * calc.dphi_norm2();
    tension = calc.tension();
    bitension = (-1.0) * calc.rough_laplacian(tension) - calc.tangent_part(tension) + calc.dphi_norm2() * tension;
  } else {
    const SphereCalculus calc(g);
    energy = 0.5 * calc.dphi_norm2();
    // tau = -P(Delta phi) and tau2 = -P(Delta tau) + |dphi|^2 tau for maps into the unit sphere.
    const PolyVector& phi = g.phi_polynomial();
    const PolyVector lap_phi = calc.laplacian(phi);
    Polynomial3 radial;
    for (std::size_t a = 0; a < phi.size(); ++a) radial += lap_phi[a] * phi[a];
    PolyVector tau;
    for (std::size_t a = 0; a < phi.size(); ++a) tau.push_back(radial * phi[a] - lap_phi[a]);
    tension = calc.sample(tau);
    bitension = (-1.0) * detail::project_to_sphere(g.phi(), calc.sample(calc.laplacian(tau))) + calc.dphi_norm2() * tension;
  }

  BiharmonicityResiduals r;
  const auto track = [](const Samples& err, double& worst, std::size_t& node) {
    for (std::size_t k = 0; k < err.size(); ++k) {
      if (std::abs(err[k]) > worst) {
        worst = std::abs(err[k]);
        node = k;
      }
    }
  };
  Samples e_err = energy;
  for (auto& x : e_err) x -= m / 2.0;
  track(e_err, r.energy_density, r.worst_node[0]);
  Samples t_err = norm2(tension + m * g.eta());
  for (auto& x : t_err) x = std::sqrt(x);
  track(t_err, r.tension, r.worst_node[1]);
  Samples b_err = norm2(bitension);
  for (auto& x : b_err) x = std::sqrt(x);
  track(b_err, r.bitension, r.worst_node[2]);
  return r;
}

double integral_of_square(const ExplicitGeometry& g, const ScalarField& f) {
  const Samples s = sample(g, f);
  return g.integrate(s * s);
}

double quadform_numeric(const ExplicitGeometry& g, const DiscretizedSection& v) {
  if (v.tag == BundleTag::mixed) throw std::invalid_argument("quadform_numeric: the integrated forms need a pure bundle tag");
  validate_section(g, v);
  VectorSamples lap;
  if (g.spectral()) {
    check_section_bandwidth(g, v);
    lap = FlatCalculus(g).rough_laplacian(v.values);
  } else {
    if (v.closed_form.empty()) throw std::invalid_argument("quadform_numeric: sphere sections need a closed form");
    lap = SphereCalculus(g).rough_laplacian(v.closed_form);
  }
  const double m = g.m();
  const VectorSamples& val = v.values;
  switch (v.tag) {
    case BundleTag::normal: return g.integrate(norm2(lap - m * val) - (4.0 * m * m) * norm2(val));
    case BundleTag::tangent: return g.integrate(norm2(lap + (1.0 - m) * val) - (m * m) * norm2(val));
    case BundleTag::vertical: return g.integrate(norm2(lap) - (2.0 * m) * dot(lap, val));
    case BundleTag::mixed: break;
  }
  return 0.0;
}

DiscretizedSection full_second_variation(const ExplicitGeometry& g, const DiscretizedSection& v) {
  require_periodic(g, "full_second_variation");
  check_section_bandwidth(g, v);
  validate_section(g, DiscretizedSection{BundleTag::mixed, v.values, {}, v.bandwidth});

  const FlatCalculus calc(g);
  const VectorSamples& V = v.values;
  const VectorSamples& tau = calc.tension();
  const Samples& e2 = calc.dphi_norm2();
  const double ic = calc.inverse_metric();

  const VectorSamples lap = calc.rough_laplacian(V);
  const VectorSamples gv = calc.tangent_part(V);

  VectorSamples out = calc.rough_laplacian(lap);
  out = out + calc.rough_laplacian(gv - e2 * V);
  out = out + (2.0 * calc.pair_with_dphi(tau)) * V;
  out = out + norm2(tau) * V;
  for (int i = 0; i < calc.dims(); ++i) {
    const auto& dphi_i = calc.dphi()[static_cast<std::size_t>(i)];
    out = out - (2.0 * ic) * (dot(V, calc.covariant(tau, i)) * dphi_i);
    out = out - (2.0 * ic) * (dot(tau, calc.covariant(V, i)) * dphi_i);
  }
  out = out - dot(tau, V) * tau;
  out = out + calc.tangent_part(lap);
  out = out + calc.tangent_part(gv);
  out = out - (2.0 * e2) * gv;
  out = out + (2.0 * calc.pair_with_dphi(V)) * tau;
  out = out - e2 * lap;
  out = out + (e2 * e2) * V;

  DiscretizedSection result;
  result.tag = BundleTag::mixed;
  result.values = std::move(out);
  result.bandwidth = v.bandwidth + 4;
  return result;
}

double bilinear(const ExplicitGeometry& g, const DiscretizedSection& v, const DiscretizedSection& w) {
  const DiscretizedSection iv = full_second_variation(g, v);
  return g.integrate(dot(iv.values, w.values));
}

Samples dropped_tangent_density(const ExplicitGeometry& g, const ScalarField& f) {
  const std::size_t npsi = g.psi().dim();
  VectorSamples w(npsi, g.nodes());
  if (g.spectral()) {
    const FlatCalculus calc(g);
    const double ic = calc.inverse_metric();
    const Samples fs = sample(g, f);
    const int dims = g.parameter_dims();
    for (int j = 0; j < dims; ++j) {
      const Samples xj = ic * calc.partial(fs, j);
      for (int i = 0; i < dims; ++i) {
        const VectorSamples hess = calc.project_to_psi_sphere(calc.partial(calc.partial(g.psi(), i), j));
        w = w + (ic * calc.partial(xj, i)) * hess;
      }
    }
    w = calc.project_to_psi_sphere(w);
  } else {
    const Polynomial3& fp = as_polynomial(g, f);
    const SphereCalculus calc(g);
    const double r2 = g.radius() * g.radius();
    const auto x = sphere_gradient(fp, g.radius());
    std::array<std::array<Polynomial3, 3>, 3> dx;  // dx[j][k] = d X_j / d y_k
    for (std::size_t j = 0; j < 3; ++j) {
      for (std::size_t k = 0; k < 3; ++k) dx[j][k] = x[j].derivative(static_cast<int>(k));
    }
    const auto& jac = calc.psi_jacobian();
    std::vector<std::array<std::array<Polynomial3, 3>, 3>> hess(npsi);
    for (std::size_t a = 0; a < npsi; ++a) {
      for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t k = 0; k < 3; ++k) hess[a][i][k] = jac[a][i].derivative(static_cast<int>(k));
      }
    }
    for (std::size_t node = 0; node < g.nodes(); ++node) {
      const Point3& y = g.points()[node];
      double ps[3][3];
      double dxs[3][3];
      for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t k = 0; k < 3; ++k) {
          ps[i][k] = (i == k ? 1.0 : 0.0) - y[i] * y[k] / r2;
          dxs[i][k] = dx[i][k](y);
        }
      }
      double div = 0.0;  // tr(P DX P) = tr(DX P) on the sphere
      for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t k = 0; k < 3; ++k) div += dxs[i][k] * ps[k][i];
      }
      // tr(DX^T P H P) = tr(Q H) with Q = P DX^T P.
      double q[3][3] = {};
      for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t k = 0; k < 3; ++k) {
          for (std::size_t s = 0; s < 3; ++s) {
            for (std::size_t t = 0; t < 3; ++t) q[i][k] += ps[i][s] * dxs[t][s] * ps[t][k];
          }
        }
      }
      for (std::size_t a = 0; a < npsi; ++a) {
        double trace = 0.0;
        double radial = 0.0;
        for (std::size_t i = 0; i < 3; ++i) {
          radial += y[i] * jac[a][i](y);
          for (std::size_t k = 0; k < 3; ++k) trace += q[i][k] * hess[a][k][i](y);
        }
        w.comp[a][node] = trace - radial * div / r2;
      }
    }
    // Project onto the tangent space of the sphere of radius 1/sqrt2 at psi.
    Samples inv = norm2(g.psi());
    for (auto& v : inv) v = 1.0 / v;
    w = w - (dot(w, g.psi()) * inv) * g.psi();
  }
  return 4.0 * norm2(w);
}

double dropped_tangent_term(const ExplicitGeometry& g, const ScalarField& f) {
  return g.integrate(dropped_tangent_density(g, f));
}

IdentityResiduals identity_residuals(const ExplicitGeometry& g, const std::vector<TrigPolynomial>& field) {
  require_periodic(g, "identity_residuals");
  check_bandwidth(g, field_bandwidth(field) + 1);
  const FlatCalculus calc(g);
  const double ic = calc.inverse_metric();
  const double c = g.metric_factor();
  const double m = g.m();
  const int dims = g.parameter_dims();
  const auto x = sample_field(g, field);
  const auto dim = static_cast<std::size_t>(dims);

  std::vector<std::vector<Samples>> dx(dim);  // dx[i][j] = d_i X^j
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) dx[i].push_back(calc.partial(x[j], static_cast<int>(i)));
  }
  Samples div(g.nodes(), 0.0);
  for (std::size_t i = 0; i < dim; ++i) div = div + dx[i][i];
  Samples lie2(g.nodes(), 0.0);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      const Samples s = dx[i][j] + dx[j][i];
      lie2 = lie2 + s * s;
    }
  }

  IdentityResiduals r;

  // Flat domain: Ric = 0 and g(Y, X) = c sum Y^j X^j.
  Samples rough(g.nodes(), 0.0);
  for (std::size_t j = 0; j < dim; ++j) {
    Samples trace(g.nodes(), 0.0);
    for (int i = 0; i < dims; ++i) trace = trace + ic * calc.partial(x[j], i, 2);
    rough = rough + trace * x[j];
  }
  const double yano_lhs = g.integrate(div * div - c * rough);
  const double yano_rhs = 0.5 * g.integrate(lie2);
  r.yano = relative(yano_lhs, yano_rhs);

  const VectorSamples v = push_forward(calc, x);
  const VectorSamples lap = calc.rough_laplacian(v);
  const VectorSamples vpsi = psi_part(v);
  const VectorSamples lap_psi = calc.psi_rough_laplacian(vpsi);
  const VectorSamples bochner_rhs = lift(lap_psi) + (2.0 * div) * g.eta() + v;
  r.bochner = max_norm(lap - bochner_rhs) / std::max(1.0, max_norm(lap));

  // Curvature of the sphere of radius 1/sqrt2 is 2.
  const VectorSamples t_psi = psi_part(calc.tangent_part(v));
  const VectorSamples j_curv = lap_psi - 2.0 * (calc.dphi_norm2() * vpsi - t_psi);
  const VectorSamples j_formula = lap_psi + (2.0 * (1.0 - m)) * vpsi;
  r.jacobi = max_norm(j_curv - j_formula) / std::max(1.0, max_norm(lap_psi));

  DiscretizedSection section;
  section.tag = BundleTag::tangent;
  section.values = v;
  section.bandwidth = field_bandwidth(field) + 1;
  const double ivv = bilinear(g, section, section);
  const double decomposition =
      g.integrate(norm2(j_formula) + 4.0 * (div * div) + (2.0 * m) * dot(j_formula, vpsi));
  r.jacobi_decomposition = relative(ivv, decomposition);

  const double lie_scale = std::max(1.0, max_abs(lie2));
  double margin = 0.0;
  bool first = true;
  for (std::size_t k = 0; k < g.nodes(); ++k) {
    const double gap = (lie2[k] - 4.0 / m * div[k] * div[k]) / lie_scale;
    if (first || gap < margin) margin = gap;
    first = false;
  }
  r.killing_bound_margin = margin;
  return r;
}

double first_variation_error(const ExplicitGeometry& g, const DiscretizedSection& v, double step) {
  validate_section(g, DiscretizedSection{BundleTag::mixed, v.values, {}, v.bandwidth});
  const std::size_t dim = static_cast<std::size_t>(g.ambient_dim());

  // Energy of u = F / |F| from the derivatives of F = phi + s V:
  // du = (dF - <dF, u> u) / |F|.
  const auto energy_spectral = [&](double s, const FlatCalculus& calc) {
    const VectorSamples f = g.phi() + s * v.values;
    Samples inv = norm2(f);
    for (auto& x : inv) x = 1.0 / std::sqrt(x);
    const VectorSamples u = inv * f;
    Samples density(g.nodes(), 0.0);
    for (int i = 0; i < g.parameter_dims(); ++i) {
      const VectorSamples df = calc.partial(f, i);
      density = density + calc.inverse_metric() * ((inv * inv) * norm2(df - dot(df, u) * u));
    }
    return 0.5 * g.integrate(density);
  };

  double expected = 0.0;
  double plus = 0.0;
  double minus = 0.0;
  if (g.spectral()) {
    check_section_bandwidth(g, v);
    const FlatCalculus calc(g);
    expected = -g.integrate(dot(calc.tension(), v.values));
    plus = energy_spectral(step, calc);
    minus = energy_spectral(-step, calc);
  } else {
    if (v.closed_form.empty()) throw std::invalid_argument("first_variation_error: sphere sections need a closed form");
    const SphereCalculus calc(g);
    const PolyVector& phi = g.phi_polynomial();
    const PolyVector lap_phi = calc.laplacian(phi);
    const VectorSamples tau = (-1.0) * detail::project_to_sphere(g.phi(), calc.sample(lap_phi));
    expected = -g.integrate(dot(tau, v.values));

    const double r2 = g.radius() * g.radius();
    const auto energy = [&](double s) {
      std::vector<std::array<Polynomial3, 3>> grad(dim);
      for (std::size_t a = 0; a < dim; ++a) {
        const Polynomial3 fa = phi[a] + s * v.closed_form[a];
        for (std::size_t k = 0; k < 3; ++k) grad[a][k] = fa.derivative(static_cast<int>(k));
      }
      const VectorSamples f = g.phi() + s * v.values;
      Samples density(g.nodes(), 0.0);
      for (std::size_t node = 0; node < g.nodes(); ++node) {
        const Point3& y = g.points()[node];
        double norm_f = 0.0;
        for (std::size_t a = 0; a < dim; ++a) norm_f += f.comp[a][node] * f.comp[a][node];
        norm_f = std::sqrt(norm_f);
        // Tangential Jacobian rows of F.
        std::vector<std::array<double, 3>> rows(dim);
        for (std::size_t a = 0; a < dim; ++a) {
          std::array<double, 3> row{grad[a][0](y), grad[a][1](y), grad[a][2](y)};
          const double radial = (row[0] * y[0] + row[1] * y[1] + row[2] * y[2]) / r2;
          for (std::size_t i = 0; i < 3; ++i) row[i] -= radial * y[i];
          rows[a] = row;
        }
        double total = 0.0;
        for (std::size_t i = 0; i < 3; ++i) {
          double along_u = 0.0;
          for (std::size_t a = 0; a < dim; ++a) along_u += rows[a][i] * f.comp[a][node] / norm_f;
          for (std::size_t a = 0; a < dim; ++a) {
            const double col = rows[a][i] - along_u * f.comp[a][node] / norm_f;
            total += col * col;
          }
        }
        density[node] = total / (norm_f * norm_f);
      }
      return 0.5 * g.integrate(density);
    };
    plus = energy(step);
    minus = energy(-step);
  }
  const double numeric = (plus - minus) / (2.0 * step);
  return relative(numeric, expected);
}

int killing_dimension(const ExplicitGeometry& g, int degree) {
  require_periodic(g, "killing_dimension");
  if (degree < 0) throw std::invalid_argument("killing_dimension: negative degree");
  check_bandwidth(g, degree + 1);
  const FlatCalculus calc(g);
  const int dims = g.parameter_dims();
  const auto dim = static_cast<std::size_t>(dims);

  // Unit-coefficient basis of trigonometric monomials.
  std::vector<TrigTerm> basis;
  std::mt19937_64 unused(0);
  for (const auto& t : random_trig_polynomial(unused, dims, degree).terms) {
    basis.push_back({1.0, t.p, t.q, t.sin_u, t.sin_v});
  }
  std::vector<std::vector<Samples>> columns;  // per column, the independent entries of L_X g
  for (std::size_t j = 0; j < dim; ++j) {
    for (const auto& b : basis) {
      std::vector<TrigPolynomial> field(dim);
      field[j].terms.push_back(b);
      const auto x = sample_field(g, field);
      std::vector<Samples> entries;
      for (std::size_t a = 0; a < dim; ++a) {
        for (std::size_t c = a; c < dim; ++c) {
          entries.push_back(calc.partial(x[c], static_cast<int>(a)) + calc.partial(x[a], static_cast<int>(c)));
        }
      }
      columns.push_back(std::move(entries));
    }
  }
  const std::size_t cols = columns.size();
  const std::size_t per_column = columns.front().size() * g.nodes();
  const std::size_t rows = std::max(per_column, cols);

  const auto free_matrix = [](gsl_matrix* p) { gsl_matrix_free(p); };
  const auto free_vector = [](gsl_vector* p) { gsl_vector_free(p); };
  std::unique_ptr<gsl_matrix, decltype(free_matrix)> a(gsl_matrix_calloc(rows, cols), free_matrix);
  std::unique_ptr<gsl_matrix, decltype(free_matrix)> vt(gsl_matrix_alloc(cols, cols), free_matrix);
  std::unique_ptr<gsl_vector, decltype(free_vector)> s(gsl_vector_alloc(cols), free_vector);
  std::unique_ptr<gsl_vector, decltype(free_vector)> work(gsl_vector_alloc(cols), free_vector);
  for (std::size_t col = 0; col < cols; ++col) {
    std::size_t row = 0;
    for (const auto& entry : columns[col]) {
      for (double value : entry) gsl_matrix_set(a.get(), row++, col, value);
    }
  }
  if (gsl_linalg_SV_decomp(a.get(), vt.get(), s.get(), work.get()) != 0) {
    throw std::runtime_error("killing_dimension: SVD failed");
  }
  const double largest = gsl_vector_get(s.get(), 0);
  int null = 0;
  for (std::size_t i = 0; i < cols; ++i) {
    if (gsl_vector_get(s.get(), i) <= 1e-8 * largest) ++null;
  }
  return null;
}

std::vector<TrigPolynomial> random_tangent_field(const ExplicitGeometry& g, std::mt19937_64& rng, int degree) {
  require_periodic(g, "random_tangent_field");
  std::vector<TrigPolynomial> field;
  for (int i = 0; i < g.parameter_dims(); ++i) field.push_back(random_trig_polynomial(rng, g.parameter_dims(), degree));
  return field;
}

}  // namespace bihindex::oracle
