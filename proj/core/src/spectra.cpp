#include "bihindex/spectra.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace bihindex {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::uint64_t to_u64(const BigInt& v) {
  if (v < 0 || v > std::numeric_limits<std::uint64_t>::max()) {
    throw std::overflow_error("multiplicity " + v.str() + " does not fit in 64 bits");
  }
  return v.convert_to<std::uint64_t>();
}

BigInt factorial(int n) {
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// Metric factor c of the sphere domain (S^dim, c g_can) for sphere-type families.
struct SphereDomain {
  int dim;
  Rational scale;
  bool even_levels_only;
};

SphereDomain sphere_domain(const ManifoldFamily& family) {
  return std::visit(
      overloaded{
          [](const TotallyGeodesicInclusion& f) { return SphereDomain{f.m, Rational(1, 2), false}; },
          [](const Veronese& f) { return SphereDomain{f.m, Rational(f.m + 1, f.m), false}; },
          [](const VeroneseProjective& f) { return SphereDomain{f.m, Rational(f.m + 1, f.m), true}; },
          [](const IdentityMap& f) { return SphereDomain{f.n, Rational(1), false}; },
          [](const CliffordTorus&) -> SphereDomain { throw std::logic_error("product domain"); },
      },
      family.kind());
}

Spectrum sphere_type_spectrum(const SphereDomain& dom, const Rational& lambda_max) {
  Spectrum out;
  for (int k = 0;; ++k) {
    const int level = dom.even_levels_only ? 2 * k : k;
    Eigenvalue ev = sphere_level(dom.dim, dom.scale, level);
    if (ev.value > lambda_max) break;
    ev.level = SphereLevel{k};
    out.push_back(std::move(ev));
  }
  return out;
}

Spectrum clifford_spectrum(int l, const Rational& lambda_max) {
  const Rational factor_scale(1, 4);
  std::vector<Eigenvalue> factor;
  for (int k = 0;; ++k) {
    Eigenvalue ev = sphere_level(l, factor_scale, k);
    if (ev.value > lambda_max) break;
    factor.push_back(std::move(ev));
  }
  std::map<Rational, Eigenvalue> merged;
  for (std::size_t p = 0; p < factor.size(); ++p) {
    for (std::size_t q = 0; q < factor.size(); ++q) {
      const Rational value = factor[p].value + factor[q].value;
      if (value > lambda_max) continue;
      const std::uint64_t mult = factor[p].multiplicity * factor[q].multiplicity;
      auto [it, inserted] = merged.try_emplace(value, Eigenvalue{value, ProductLevel{}, 0});
      it->second.multiplicity += mult;
      std::get<ProductLevel>(it->second.level).pairs.emplace_back(static_cast<int>(p), static_cast<int>(q));
    }
  }
  Spectrum out;
  out.reserve(merged.size());
  for (auto& [value, ev] : merged) {
    auto& pairs = std::get<ProductLevel>(ev.level).pairs;
    std::sort(pairs.begin(), pairs.end());
    out.push_back(std::move(ev));
  }
  return out;
}

}  // namespace

ManifoldFamily::ManifoldFamily(Variant v) : kind_(std::move(v)) {
  std::visit(overloaded{
                 [](const TotallyGeodesicInclusion& f) {
                   if (f.m < 1) throw std::invalid_argument("TotallyGeodesicInclusion requires m >= 1");
                   if (f.n < f.m) throw std::invalid_argument("TotallyGeodesicInclusion requires m <= n");
                 },
                 [](const Veronese& f) {
                   if (f.m < 2) throw std::invalid_argument("Veronese requires m >= 2");
                 },
                 [](const VeroneseProjective& f) {
                   if (f.m < 2) throw std::invalid_argument("VeroneseProjective requires m >= 2");
                 },
                 [](const CliffordTorus& f) {
                   if (f.l < 1) throw std::invalid_argument("CliffordTorus requires l >= 1");
                 },
                 [](const IdentityMap& f) {
                   if (f.n < 2) throw std::invalid_argument("IdentityMap requires n >= 2");
                 },
             },
             kind_);
}

int ManifoldFamily::domain_dimension() const {
  return std::visit(overloaded{
                        [](const TotallyGeodesicInclusion& f) { return f.m; },
                        [](const Veronese& f) { return f.m; },
                        [](const VeroneseProjective& f) { return f.m; },
                        [](const CliffordTorus& f) { return 2 * f.l; },
                        [](const IdentityMap& f) { return f.n; },
                    },
                    kind_);
}

int ManifoldFamily::target_dimension() const {
  return std::visit(overloaded{
                        [](const TotallyGeodesicInclusion& f) { return f.n + 1; },
                        [](const Veronese& f) { return f.m + veronese_codimension(f.m) + 1; },
                        [](const VeroneseProjective& f) { return f.m + veronese_codimension(f.m) + 1; },
                        [](const CliffordTorus& f) { return 2 * f.l + 2; },
                        [](const IdentityMap& f) { return f.n; },
                    },
                    kind_);
}

std::string ManifoldFamily::tag() const {
  return std::visit(overloaded{
                        [](const TotallyGeodesicInclusion&) { return std::string("tgi"); },
                        [](const Veronese&) { return std::string("veronese"); },
                        [](const VeroneseProjective&) { return std::string("veronese-proj"); },
                        [](const CliffordTorus&) { return std::string("clifford"); },
                        [](const IdentityMap&) { return std::string("identity"); },
                    },
                    kind_);
}

std::string ManifoldFamily::describe() const {
  return std::visit(
      overloaded{
          [](const TotallyGeodesicInclusion& f) {
            return "TotallyGeodesicInclusion{m=" + std::to_string(f.m) + ",n=" + std::to_string(f.n) + "}";
          },
          [](const Veronese& f) { return "Veronese{m=" + std::to_string(f.m) + "}"; },
          [](const VeroneseProjective& f) { return "VeroneseProjective{m=" + std::to_string(f.m) + "}"; },
          [](const CliffordTorus& f) { return "CliffordTorus{l=" + std::to_string(f.l) + "}"; },
          [](const IdentityMap& f) { return "IdentityMap{n=" + std::to_string(f.n) + "}"; },
      },
      kind_);
}

bool operator==(const ManifoldFamily& a, const ManifoldFamily& b) { return a.describe() == b.describe(); }

int veronese_codimension(int m) { return (m - 1) * (m + 2) / 2; }

std::string level_string(const Level& level) {
  return std::visit(overloaded{
                        [](const SphereLevel& s) { return std::to_string(s.k); },
                        [](const ProductLevel& p) {
                          std::ostringstream os;
                          for (std::size_t i = 0; i < p.pairs.size(); ++i) {
                            if (i) os << ';';
                            os << '(' << p.pairs[i].first << ',' << p.pairs[i].second << ')';
                          }
                          return os.str();
                        },
                    },
                    level);
}

std::uint64_t sphere_multiplicity(int m, int k) {
  if (m < 1) throw std::invalid_argument("sphere dimension must be >= 1");
  if (k < 0) throw std::invalid_argument("sphere level must be >= 0");
  if (k == 0) return 1;
  if (m == 1) return 2;
  // (2k+m-1)(k+m-2)! / (k! (m-1)!)
  const BigInt num = BigInt(2 * k + m - 1) * factorial(k + m - 2);
  const BigInt den = factorial(k) * factorial(m - 1);
  if (num % den != 0) throw std::logic_error("non-integral sphere multiplicity");
  return to_u64(num / den);
}

Eigenvalue sphere_level(int m, const Rational& scale, int k) {
  if (m < 1) throw std::invalid_argument("sphere_level: m must be >= 1");
  if (k < 0) throw std::invalid_argument("sphere_level: k must be >= 0");
  if (scale.sign() <= 0) throw std::invalid_argument("sphere_level: metric scale must be > 0");
  Eigenvalue ev;
  ev.value = Rational(static_cast<std::int64_t>(k) * (m + k - 1)) / scale;
  ev.level = SphereLevel{k};
  ev.multiplicity = sphere_multiplicity(m, k);
  return ev;
}

Spectrum family_spectrum(const ManifoldFamily& family, const Rational& lambda_max) {
  if (lambda_max.sign() < 0) throw std::invalid_argument("family_spectrum: lambda_max must be >= 0");
  if (family.is<CliffordTorus>()) return clifford_spectrum(family.as<CliffordTorus>().l, lambda_max);
  return sphere_type_spectrum(sphere_domain(family), lambda_max);
}

Eigenvalue next_eigenvalue_above(const ManifoldFamily& family, const Rational& lambda) {
  // A single-factor or single-level value above lambda bounds the search window.
  Rational bound;
  if (family.is<CliffordTorus>()) {
    const int l = family.as<CliffordTorus>().l;
    int k = 0;
    do {
      bound = sphere_level(l, Rational(1, 4), ++k).value;
    } while (bound <= lambda);
  } else {
    const SphereDomain dom = sphere_domain(family);
    int k = 0;
    do {
      ++k;
      bound = sphere_level(dom.dim, dom.scale, dom.even_levels_only ? 2 * k : k).value;
    } while (bound <= lambda);
  }
  for (auto& ev : family_spectrum(family, bound)) {
    if (ev.value > lambda) return ev;
  }
  throw std::logic_error("next_eigenvalue_above: empty window");
}

bool is_eigenvalue(const ManifoldFamily& family, const Rational& lambda) {
  if (lambda.sign() < 0) return false;
  const Spectrum s = family_spectrum(family, lambda);
  return !s.empty() && s.back().value == lambda;
}

Eigenvalue first_nonzero_eigenvalue(const ManifoldFamily& family) { return next_eigenvalue_above(family, 0); }

EinsteinData einstein_constant(const ManifoldFamily& family) {
  return std::visit(overloaded{
                        [](const TotallyGeodesicInclusion& f) { return EinsteinData{Rational(2 * (f.m - 1)), true}; },
                        [](const Veronese& f) { return EinsteinData{Rational(f.m * (f.m - 1), f.m + 1), true}; },
                        [](const VeroneseProjective& f) {
                          return EinsteinData{Rational(f.m * (f.m - 1), f.m + 1), true};
                        },
                        [](const CliffordTorus& f) { return EinsteinData{Rational(4 * (f.l - 1)), true}; },
                        [](const IdentityMap& f) { return EinsteinData{Rational(f.n - 1), true}; },
                    },
                    family.kind());
}

std::uint64_t isometry_group_dim(const ManifoldFamily& family) {
  auto so = [](std::uint64_t k) { return k * (k + 1) / 2; };
  return std::visit(overloaded{
                        [&](const TotallyGeodesicInclusion& f) { return so(f.m); },
                        [&](const Veronese& f) { return so(f.m); },
                        [&](const VeroneseProjective& f) { return so(f.m); },
                        [&](const CliffordTorus& f) { return 2 * so(f.l); },
                        [&](const IdentityMap& f) { return so(f.n); },
                    },
                    family.kind());
}

}  // namespace bihindex
