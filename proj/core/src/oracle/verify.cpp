#include "bihindex/oracle/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bihindex/quadforms.hpp"
#include "calculus.hpp"

namespace bihindex::oracle {
namespace {

using detail::max_norm;
using detail::norm2;

constexpr double kInvariantTol = 1e-12;
constexpr double kEnergyTol = 1e-10;
constexpr double kSpectralTol = 1e-8;
constexpr double kSphereFormTol = 1e-5;
constexpr double kSphereResidualTol = 1e-6;
constexpr double kIdentityTol = 1e-9;
constexpr double kGradientTol = 1e-4;
constexpr double kRefinementTol = 1e-10;

std::string lambda_label(const Rational& lambda) { return "lambda=" + lambda.str(); }

double max_deviation(const Samples& values, double target) {
  double worst = 0.0;
  for (double v : values) worst = std::max(worst, std::abs(std::sqrt(v) - target));
  return worst;
}

TrigPolynomial random_level_term(std::mt19937_64& rng, int p, int q, bool torus) {
  std::normal_distribution<double> normal(0.0, 1.0);
  TrigPolynomial t;
  for (int su = 0; su < 2; ++su) {
    for (int sv = 0; sv < (torus ? 2 : 1); ++sv) {
      if ((su && p == 0) || (sv && q == 0)) continue;
      t.terms.push_back({normal(rng), p, q, su == 1, sv == 1});
    }
  }
  return t;
}

double form_tolerance(const ExplicitGeometry& g) { return g.spectral() ? kSpectralTol : kSphereFormTol; }

bool has_vertical(const ExplicitGeometry& g) {
  if (g.tag() == "torus") return true;
  if (g.tag() == "veronese") return false;
  return g.ambient_dim() - g.m() - 2 > 0;
}

}  // namespace

VerificationCheck make_check(std::string name, std::string anchor, double computed, double expected, double tolerance) {
  VerificationCheck c{std::move(name), std::move(anchor), computed, expected, tolerance, false};
  c.pass = std::isfinite(computed) && std::abs(computed - expected) <= tolerance * std::max(1.0, std::abs(expected));
  return c;
}

bool VerificationReport::passed() const { return failures() == 0; }

std::size_t VerificationReport::failures() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) { return !c.pass; }));
}

ManifoldFamily family_of(const GeometryCase& c) {
  if (const auto* circle = std::get_if<CircleInclusion>(&c)) return ManifoldFamily::tgi(1, circle->n);
  if (std::holds_alternative<TorusClifford>(c)) return ManifoldFamily::clifford(1);
  if (const auto* sphere = std::get_if<SphereInclusion>(&c)) return ManifoldFamily::tgi(2, sphere->n);
  return ManifoldFamily::veronese(2);
}

ScalarField random_eigenfunction(const ExplicitGeometry& g, const Eigenvalue& e, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  if (g.tag() == "torus") {
    const auto& level = std::get<ProductLevel>(e.level);
    TrigPolynomial f;
    for (const auto& [p, q] : level.pairs) {
      for (const auto& t : random_level_term(rng, p, q, true).terms) f.terms.push_back(t);
    }
    return f;
  }
  const int k = std::get<SphereLevel>(e.level).k;
  if (g.spectral()) return random_level_term(rng, k, 0, false);
  if (k == 0) return Polynomial3(normal(rng));
  return normal(rng) * harmonic_polynomial(k, true) + normal(rng) * harmonic_polynomial(k, false);
}

std::vector<VerificationCheck> formula_agreement_checks(const ExplicitGeometry& g, const Rational& lambda_max,
                                                        std::mt19937_64& rng) {
  const ManifoldFamily family = family_of(g.geometry_case());
  const double tol = form_tolerance(g);
  std::vector<VerificationCheck> out;

  const auto r = biharmonicity_residuals(g);
  const double residual_tol = g.spectral() ? kSpectralTol : kSphereResidualTol;
  out.push_back(make_check("tension residual", "tau(phi) = -m eta", r.tension, 0.0, residual_tol));
  out.push_back(make_check("bitension residual", "tau2(phi) = 0", r.bitension, 0.0, residual_tol));

  for (const auto& e : family_spectrum(family, lambda_max)) {
    const Rational& lambda = e.value;
    const ScalarField f = random_eigenfunction(g, e, rng);
    const double f2 = integral_of_square(g, f);
    const std::string at = " " + lambda_label(lambda);

    const DiscretizedSection normal = normal_section(g, f);
    const double qn = quadform_numeric(g, normal) / f2;
    const FormValue fn = normal_form(g.m(), lambda);
    out.push_back(make_check("normal form" + at, fn.anchor, qn, fn.value.to_double(), tol));

    const DiscretizedSection tangent = gradient_section(g, f);
    const double qt = quadform_numeric(g, tangent) / f2;
    const FormValue ft = tangent_form(family, lambda);
    if (ft.kind == FormKind::exact) {
      out.push_back(make_check("tangent form" + at, ft.anchor, qt, ft.value.to_double(), tol));
    } else {
      const double dropped = dropped_tangent_term(g, f) / f2;
      out.push_back(make_check("tangent lower bound plus dropped term" + at,
                               ft.anchor + "; numeric minus 4|tr nabla dpsi(nabla X, .)|^2", qt - dropped,
                               ft.value.to_double(), tol));
      if (family.is<CliffordTorus>() && lambda == first_nonzero_eigenvalue(family).value) {
        const FormValue refined = tangent_form(family, lambda, true);
        out.push_back(make_check("tangent refinement" + at, refined.anchor, qt, refined.value.to_double(), tol));
      }
    }

    std::optional<DiscretizedSection> vertical;
    double qv = 0.0;
    if (has_vertical(g)) {
      vertical = vertical_section(g, f);
      qv = quadform_numeric(g, *vertical) / f2;
      const FormValue fv = vertical_form(family, lambda);
      out.push_back(make_check("vertical form" + at, fv.anchor, qv, fv.value.to_double(), tol));
    }

    if (!g.spectral()) continue;
    out.push_back(make_check("fourth-order operator, normal" + at, "integrated normal form",
                             bilinear(g, normal, normal) / f2, qn, kSpectralTol));
    out.push_back(make_check("fourth-order operator, tangent" + at, "integrated tangent form",
                             bilinear(g, tangent, tangent) / f2, qt, kSpectralTol));
    if (vertical) {
      out.push_back(make_check("fourth-order operator, vertical" + at, "integrated vertical form",
                               bilinear(g, *vertical, *vertical) / f2, qv, kSpectralTol));
    }
    if (family.is<TotallyGeodesicInclusion>() && lambda.sign() > 0) {
      out.push_back(make_check("cross term" + at, "-4 lambda (lambda + 2 - 2m)", bilinear(g, normal, tangent) / f2,
                               cross_term(family, lambda).to_double(), kSpectralTol));
    }
  }

  if (!g.spectral()) return out;

  // Self-adjointness on random mixed sections.
  {
    const int dims = g.parameter_dims();
    const auto mixed = [&]() {
      const DiscretizedSection a = normal_section(g, random_trig_polynomial(rng, dims, 2));
      const DiscretizedSection b = tangent_section(g, random_tangent_field(g, rng, 2));
      DiscretizedSection s = combine(1.0, a, 1.0, b);
      if (has_vertical(g)) s = combine(1.0, s, 1.0, vertical_section(g, random_trig_polynomial(rng, dims, 2)));
      return s;
    };
    const DiscretizedSection v = mixed();
    const DiscretizedSection w = mixed();
    const double vw = bilinear(g, v, w);
    const double wv = bilinear(g, w, v);
    out.push_back(make_check("symmetry (I(V),W) = (I(W),V)", "self-adjointness", (vw - wv) / std::max(1.0, std::abs(vw)),
                             0.0, kIdentityTol));
  }

  // Known kernel directions.
  if (g.tag() == "circle") {
    const Eigenvalue e1 = first_nonzero_eigenvalue(family);
    const ScalarField f = random_eigenfunction(g, e1, rng);
    const DiscretizedSection v = combine(2.0, normal_section(g, f), 1.0, gradient_section(g, f));
    const double size = max_norm(full_second_variation(g, v).values) / max_norm(v.values);
    out.push_back(make_check("kernel 2f eta + dphi(grad f)", "I(2f eta + dphi(grad f)) = 0 at lambda1", size, 0.0,
                             kIdentityTol));
  } else {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<TrigPolynomial> killing(2);
    killing[0].terms.push_back({normal(rng), 0, 0, false, false});
    killing[1].terms.push_back({normal(rng), 0, 0, false, false});
    const DiscretizedSection v = tangent_section(g, killing);
    const double size = max_norm(full_second_variation(g, v).values) / max_norm(v.values);
    out.push_back(make_check("kernel dphi(Killing field)", "I(dphi(X)) = 0 for Killing X", size, 0.0, kIdentityTol));
  }
  return out;
}

std::vector<VerificationCheck> identity_checks(const ExplicitGeometry& g, int fields, std::mt19937_64& rng) {
  std::vector<VerificationCheck> out;
  if (!g.spectral() || fields <= 0) return out;
  IdentityResiduals worst;
  worst.killing_bound_margin = 0.0;
  for (int i = 0; i < fields; ++i) {
    const auto r = identity_residuals(g, random_tangent_field(g, rng, 3));
    worst.yano = std::max(worst.yano, r.yano);
    worst.bochner = std::max(worst.bochner, r.bochner);
    worst.jacobi = std::max(worst.jacobi, r.jacobi);
    worst.jacobi_decomposition = std::max(worst.jacobi_decomposition, r.jacobi_decomposition);
    worst.killing_bound_margin = std::min(worst.killing_bound_margin, r.killing_bound_margin);
  }
  const std::string n = " (" + std::to_string(fields) + " fields)";
  out.push_back(make_check("yano identity" + n, "int (div X)^2 - <tr nabla^2 X + Ric X, X> = 1/2 int |L_X g|^2",
                           worst.yano, 0.0, kIdentityTol));
  out.push_back(make_check("bochner identity" + n, "Delta^phi V = Delta^psi V + 2 (div X) eta + V", worst.bochner, 0.0,
                           kIdentityTol));
  out.push_back(make_check("jacobi operator" + n, "J(V) = Delta^psi V + 2(1-m) V", worst.jacobi, 0.0, kIdentityTol));
  out.push_back(make_check("jacobi decomposition" + n, "(I(V),V) = int |J V|^2 + 4 (div X)^2 + 2m <J V, V>",
                           worst.jacobi_decomposition, 0.0, kIdentityTol));
  out.push_back(make_check("killing bound" + n, "|L_X g|^2 >= (4/m)(div X)^2", std::max(0.0, -worst.killing_bound_margin),
                           0.0, kIdentityTol));

  if (g.tag() == "torus") {
    // f = a cos u + b sin u at the first eigenvalue.
    std::normal_distribution<double> normal(0.0, 1.0);
    const double m = g.m();
    double worst_density = 0.0;
    for (int i = 0; i < fields; ++i) {
      TrigPolynomial f;
      f.terms.push_back({normal(rng), 1, 0, false, false});
      f.terms.push_back({normal(rng), 1, 0, true, false});
      const Samples density = dropped_tangent_density(g, f);
      const Samples fs = f.sample(g);
      double scale = 0.0;
      double err = 0.0;
      for (std::size_t k = 0; k < fs.size(); ++k) {
        const double target = 32.0 * m * m * fs[k] * fs[k];
        scale = std::max(scale, target);
        err = std::max(err, std::abs(density[k] - target));
      }
      worst_density = std::max(worst_density, err / std::max(1.0, scale));
    }
    out.push_back(make_check("dropped tangent term at lambda1" + n, "4|tr nabla dpsi(nabla X, .)|^2 = 32 m^2 f^2",
                             worst_density, 0.0, kIdentityTol));
  }
  return out;
}

VerificationReport verify_geometry(const VerificationOptions& options) {
  const ExplicitGeometry g = build_geometry(options.geometry, options.grid);
  const ManifoldFamily family = family_of(options.geometry);
  std::mt19937_64 rng(options.seed);

  VerificationReport report;
  report.case_tag = g.tag();
  report.family = family.describe();
  report.grid = options.grid;
  report.seed = options.seed;
  auto& checks = report.checks;

  Samples phi_norm = norm2(g.phi());
  Samples psi_norm = norm2(g.psi());
  checks.push_back(make_check("phi on the unit sphere", "|phi| = 1", max_deviation(phi_norm, 1.0), 0.0, kInvariantTol));
  checks.push_back(make_check("psi on the tropic", "|psi| = 1/sqrt2", max_deviation(psi_norm, 1.0 / std::sqrt(2.0)), 0.0,
                              kInvariantTol));
  checks.push_back(make_check("energy density", "e(psi) = m/2", biharmonicity_residuals(g).energy_density, 0.0, kEnergyTol));

  for (auto& c : formula_agreement_checks(g, options.lambda_max, rng)) checks.push_back(std::move(c));
  for (auto& c : identity_checks(g, options.identity_fields, rng)) checks.push_back(std::move(c));

  // First variation of the energy against the tension field.
  {
    DiscretizedSection v;
    if (g.spectral()) {
      v = combine(1.0, normal_section(g, random_trig_polynomial(rng, g.parameter_dims(), 2)), 0.5,
                  tangent_section(g, random_tangent_field(g, rng, 2)));
    } else {
      std::normal_distribution<double> normal(0.0, 1.0);
      const Polynomial3 f = normal(rng) + normal(rng) * harmonic_polynomial(1) + normal(rng) * harmonic_polynomial(2, false);
      v = combine(1.0, normal_section(g, f), 0.5, gradient_section(g, harmonic_polynomial(2)));
    }
    checks.push_back(make_check("first variation of energy", "dE/ds = -int <tau, V>", first_variation_error(g, v), 0.0,
                                kGradientTol));
  }

  if (g.spectral()) {
    checks.push_back(make_check("killing field dimension", "dimension of the isometry group",
                                killing_dimension(g, 2), static_cast<double>(isometry_group_dim(family)), 0.0));
  }

  // Grid refinement of the first-eigenvalue forms.
  {
    const Eigenvalue e1 = first_nonzero_eigenvalue(family);
    const ScalarField f = random_eigenfunction(g, e1, rng);
    const ExplicitGeometry fine = build_geometry(options.geometry, 2 * options.grid);
    const double coarse_n = quadform_numeric(g, normal_section(g, f)) / integral_of_square(g, f);
    const double fine_n = quadform_numeric(fine, normal_section(fine, f)) / integral_of_square(fine, f);
    const double coarse_t = quadform_numeric(g, gradient_section(g, f)) / integral_of_square(g, f);
    const double fine_t = quadform_numeric(fine, gradient_section(fine, f)) / integral_of_square(fine, f);
    const double change = std::max(std::abs(coarse_n - fine_n) / std::max(1.0, std::abs(fine_n)),
                                   std::abs(coarse_t - fine_t) / std::max(1.0, std::abs(fine_t)));
    checks.push_back(make_check("grid refinement", "doubling the grid leaves the forms unchanged", change, 0.0,
                                kRefinementTol));
  }

  if (options.tolerance) {
    for (auto& c : checks) c = make_check(c.name, c.anchor, c.computed, c.expected, *options.tolerance);
  }
  return report;
}

}  // namespace bihindex::oracle
