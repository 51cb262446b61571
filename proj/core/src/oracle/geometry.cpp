#include "bihindex/oracle/geometry.hpp"

#include <gsl/gsl_integration.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bihindex::oracle {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kPi = std::numbers::pi;
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

struct GlTable {
  explicit GlTable(std::size_t n) : table(gsl_integration_glfixed_table_alloc(n)) {
    if (!table) throw std::runtime_error("Gauss-Legendre table allocation failed");
  }
  ~GlTable() { gsl_integration_glfixed_table_free(table); }
  GlTable(const GlTable&) = delete;
  GlTable& operator=(const GlTable&) = delete;
  gsl_integration_glfixed_table* table;
};

void require_spectral_grid(int grid) {
  if (grid < 16 || (grid & (grid - 1)) != 0) {
    throw std::invalid_argument("build_geometry: periodic grid must be a power of two >= 16, got " +
                                std::to_string(grid));
  }
}

// Veronese components v(x) with |v| = |x|^2 / sqrt3.
std::vector<Polynomial3> veronese_components() {
  const Polynomial3 x = Polynomial3::variable(0);
  const Polynomial3 y = Polynomial3::variable(1);
  const Polynomial3 z = Polynomial3::variable(2);
  const double s3 = std::sqrt(3.0);
  return {x * y, x * z, y * z, 0.5 * (x * x - y * y), (x * x + y * y - 2.0 * z * z) * (1.0 / (2.0 * s3))};
}

}  // namespace

std::string case_tag(const GeometryCase& c) {
  return std::visit(overloaded{
                        [](const CircleInclusion&) { return std::string("circle"); },
                        [](const TorusClifford&) { return std::string("torus"); },
                        [](const SphereInclusion&) { return std::string("sphere"); },
                        [](const VeroneseSurface&) { return std::string("veronese"); },
                    },
                    c);
}

double ExplicitGeometry::integrate(const Samples& density) const {
  if (density.size() != weights_.size()) throw std::invalid_argument("integrate: sample count mismatch");
  Samples weighted(density.size());
  for (std::size_t i = 0; i < density.size(); ++i) weighted[i] = density[i] * weights_[i];
  return pairwise_sum(weighted);
}

double ExplicitGeometry::volume() const { return pairwise_sum(weights_); }

const SpectralDifferentiator& ExplicitGeometry::differentiator() const {
  if (!differentiator_) throw std::logic_error(tag() + " geometry has no spectral differentiator");
  return *differentiator_;
}

std::optional<std::array<double, 2>> ExplicitGeometry::shape_operator_xi() const {
  if (!std::holds_alternative<TorusClifford>(case_)) return std::nullopt;
  return std::array<double, 2>{-std::numbers::sqrt2, std::numbers::sqrt2};
}

ExplicitGeometry build_geometry(const GeometryCase& c, int grid) {
  ExplicitGeometry g;
  g.case_ = c;
  g.grid_ = grid;

  if (const auto* circle = std::get_if<CircleInclusion>(&c)) {
    if (circle->n < 1) throw std::invalid_argument("build_geometry: circle requires n >= 1");
    require_spectral_grid(grid);
    g.m_ = 1;
    g.ambient_ = circle->n + 2;
    g.param_dims_ = 1;
    g.metric_factor_ = 0.5;
    g.differentiator_ = std::make_shared<SpectralDifferentiator>(1, grid);
    const auto nodes = static_cast<std::size_t>(grid);
    g.weights_.assign(nodes, 2.0 * kPi / grid * std::sqrt(g.metric_factor_));
    g.psi_ = VectorSamples(static_cast<std::size_t>(circle->n + 1), nodes);
    for (std::size_t i = 0; i < nodes; ++i) {
      const double t = 2.0 * kPi * static_cast<double>(i) / grid;
      g.params_.push_back({t, 0.0});
      g.psi_.comp[0][i] = std::cos(t) * kInvSqrt2;
      g.psi_.comp[1][i] = std::sin(t) * kInvSqrt2;
    }
  } else if (std::holds_alternative<TorusClifford>(c)) {
    require_spectral_grid(grid);
    g.m_ = 2;
    g.ambient_ = 5;
    g.param_dims_ = 2;
    g.metric_factor_ = 0.25;
    g.differentiator_ = std::make_shared<SpectralDifferentiator>(2, grid);
    const auto nodes = static_cast<std::size_t>(grid) * grid;
    const double h = 2.0 * kPi / grid;
    g.weights_.assign(nodes, h * h * g.metric_factor_);
    g.psi_ = VectorSamples(4, nodes);
    g.xi_ = VectorSamples(5, nodes);
    for (int i = 0; i < grid; ++i) {
      for (int j = 0; j < grid; ++j) {
        const auto k = static_cast<std::size_t>(i) * grid + j;
        const double u = h * i;
        const double v = h * j;
        g.params_.push_back({u, v});
        g.psi_.comp[0][k] = 0.5 * std::cos(u);
        g.psi_.comp[1][k] = 0.5 * std::sin(u);
        g.psi_.comp[2][k] = 0.5 * std::cos(v);
        g.psi_.comp[3][k] = 0.5 * std::sin(v);
        g.xi_.comp[0][k] = std::cos(u) * kInvSqrt2;
        g.xi_.comp[1][k] = std::sin(u) * kInvSqrt2;
        g.xi_.comp[2][k] = -std::cos(v) * kInvSqrt2;
        g.xi_.comp[3][k] = -std::sin(v) * kInvSqrt2;
      }
    }
  } else {
    if (grid < 8) throw std::invalid_argument("build_geometry: sphere grid needs >= 8 latitudes");
    g.m_ = 2;
    g.lat_ = grid;
    g.lon_ = 2 * grid;
    std::vector<Polynomial3> psi_poly;
    if (const auto* sphere = std::get_if<SphereInclusion>(&c)) {
      if (sphere->n < 2) throw std::invalid_argument("build_geometry: sphere inclusion requires n >= 2");
      g.radius_ = kInvSqrt2;
      for (int a = 0; a < sphere->n + 1; ++a) psi_poly.push_back(a < 3 ? Polynomial3::variable(a) : Polynomial3());
    } else {
      g.radius_ = std::sqrt(1.5);
      const double scale = std::sqrt(1.5) / (g.radius_ * g.radius_);
      for (auto& p : veronese_components()) psi_poly.push_back(p * scale);
    }
    g.ambient_ = static_cast<int>(psi_poly.size()) + 1;
    g.phi_poly_ = psi_poly;
    g.phi_poly_.emplace_back(kInvSqrt2);

    const GlTable gl(static_cast<std::size_t>(g.lat_));
    const double dlon = 2.0 * kPi / g.lon_;
    const double r = g.radius_;
    for (int i = 0; i < g.lat_; ++i) {
      double z = 0.0;
      double w = 0.0;
      gsl_integration_glfixed_point(-1.0, 1.0, static_cast<std::size_t>(i), &z, &w, gl.table);
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      for (int j = 0; j < g.lon_; ++j) {
        const double lon = dlon * j;
        g.points_.push_back({r * rho * std::cos(lon), r * rho * std::sin(lon), r * z});
        g.weights_.push_back(w * dlon * r * r);
      }
    }
    g.psi_ = VectorSamples(psi_poly.size(), g.points_.size());
    for (std::size_t a = 0; a < psi_poly.size(); ++a) {
      for (std::size_t k = 0; k < g.points_.size(); ++k) g.psi_.comp[a][k] = psi_poly[a](g.points_[k]);
    }
  }

  const std::size_t nodes = g.weights_.size();
  const std::size_t npsi = g.psi_.dim();
  g.phi_ = VectorSamples(npsi + 1, nodes);
  g.eta_ = VectorSamples(npsi + 1, nodes);
  for (std::size_t a = 0; a < npsi; ++a) {
    g.phi_.comp[a] = g.psi_.comp[a];
    g.eta_.comp[a] = g.psi_.comp[a];
  }
  g.phi_.comp[npsi].assign(nodes, kInvSqrt2);
  g.eta_.comp[npsi].assign(nodes, -kInvSqrt2);
  return g;
}

Samples TrigPolynomial::sample(const ExplicitGeometry& g) const {
  if (!g.spectral()) throw std::invalid_argument("TrigPolynomial::sample: geometry is not periodic");
  const auto& params = g.parameters();
  Samples out(params.size(), 0.0);
  for (const auto& t : terms) {
    if (g.parameter_dims() == 1 && t.q != 0) throw std::invalid_argument("TrigPolynomial: circle terms must have q = 0");
    for (std::size_t k = 0; k < params.size(); ++k) {
      const double fu = t.sin_u ? std::sin(t.p * params[k][0]) : std::cos(t.p * params[k][0]);
      const double fv = g.parameter_dims() == 1 ? 1.0 : (t.sin_v ? std::sin(t.q * params[k][1]) : std::cos(t.q * params[k][1]));
      out[k] += t.coef * fu * fv;
    }
  }
  return out;
}

int TrigPolynomial::bandwidth() const {
  int b = 0;
  for (const auto& t : terms) b = std::max({b, std::abs(t.p), std::abs(t.q)});
  return b;
}

TrigPolynomial random_trig_polynomial(std::mt19937_64& rng, int dims, int degree) {
  std::normal_distribution<double> normal(0.0, 1.0);
  TrigPolynomial out;
  const int qmax = dims == 1 ? 0 : degree;
  for (int p = 0; p <= degree; ++p) {
    for (int q = 0; q <= qmax; ++q) {
      for (int su = 0; su < 2; ++su) {
        for (int sv = 0; sv < (dims == 1 ? 1 : 2); ++sv) {
          if ((su && p == 0) || (sv && q == 0)) continue;
          out.terms.push_back({normal(rng), p, q, su == 1, sv == 1});
        }
      }
    }
  }
  return out;
}

Polynomial3 harmonic_polynomial(int k, bool azimuthal) {
  if (k < 0) throw std::invalid_argument("harmonic_polynomial: k must be >= 0");
  if (!azimuthal && k == 0) throw std::invalid_argument("harmonic_polynomial: the polar family starts at k = 1");
  const int n = azimuthal ? k : k - 1;
  // Re((x + i y)^n) = sum_j C(n, 2j) (-1)^j x^{n-2j} y^{2j}
  Polynomial3 re;
  double binom = 1.0;
  for (int j = 0; j <= n; ++j) {
    if (j > 0) binom = binom * (n - j + 1) / j;
    if (j % 2 == 1) continue;
    const double sign = (j / 2) % 2 == 0 ? 1.0 : -1.0;
    re += Polynomial3::monomial(sign * binom, n - j, j, 0);
  }
  return azimuthal ? re : re * Polynomial3::variable(2);
}

}  // namespace bihindex::oracle
