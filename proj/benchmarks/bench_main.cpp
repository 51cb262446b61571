#include <benchmark/benchmark.h>

#include "bihindex/classifier.hpp"
#include "bihindex/oracle/oracle.hpp"
#include "bihindex/quadforms.hpp"
#include "bihindex/spectra.hpp"

namespace {

using namespace bihindex;

void BM_FamilySpectrum(benchmark::State& state) {
  const ManifoldFamily f = ManifoldFamily::veronese(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(family_spectrum(f, Rational(2000)));
}
BENCHMARK(BM_FamilySpectrum)->Arg(2)->Arg(8)->Arg(32);

void BM_ClassifyInclusion(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const ManifoldFamily f = ManifoldFamily::tgi(m, m + 3);
  for (auto _ : state) benchmark::DoNotOptimize(classify(f));
}
BENCHMARK(BM_ClassifyInclusion)->Arg(2)->Arg(12)->Arg(40);

void BM_ClassifyVeronese(benchmark::State& state) {
  const ManifoldFamily f = ManifoldFamily::veronese(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(classify(f));
}
BENCHMARK(BM_ClassifyVeronese)->Arg(5)->Arg(20);

void BM_ClassifyClifford(benchmark::State& state) {
  const ManifoldFamily f = ManifoldFamily::clifford(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(classify(f));
}
BENCHMARK(BM_ClassifyClifford)->Arg(1)->Arg(10);

void BM_BlockDefiniteness(benchmark::State& state) {
  const ManifoldFamily v = ManifoldFamily::veronese(7);
  const Rational l1 = first_nonzero_eigenvalue(v).value;
  const Rational qn = normal_form(7, l1).value;
  const Rational qt = tangent_form(v, l1).value;
  const Rational c = cross_term(v, l1);
  for (auto _ : state) benchmark::DoNotOptimize(block_definiteness(qn, qt, c));
}
BENCHMARK(BM_BlockDefiniteness);

void BM_QuadformNumericTorus(benchmark::State& state) {
  const oracle::ExplicitGeometry g = oracle::build_geometry(oracle::TorusClifford{}, 64);
  const oracle::ScalarField f = oracle::TrigPolynomial{{oracle::TrigTerm{0.7, 2, 1, false, true}}};
  const oracle::DiscretizedSection v = oracle::gradient_section(g, f);
  for (auto _ : state) benchmark::DoNotOptimize(oracle::quadform_numeric(g, v));
}
BENCHMARK(BM_QuadformNumericTorus)->Unit(benchmark::kMillisecond);

void BM_FullSecondVariationTorus(benchmark::State& state) {
  const oracle::ExplicitGeometry g = oracle::build_geometry(oracle::TorusClifford{}, 64);
  const oracle::ScalarField f = oracle::TrigPolynomial{{oracle::TrigTerm{0.7, 2, 1, false, true}}};
  const oracle::DiscretizedSection v = oracle::normal_section(g, f);
  for (auto _ : state) benchmark::DoNotOptimize(oracle::full_second_variation(g, v));
}
BENCHMARK(BM_FullSecondVariationTorus)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
