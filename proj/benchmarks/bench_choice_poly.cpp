#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>

#include "mwp/choice_poly.hpp"

namespace {

using namespace mwp;

// Random polynomial over `indices` choice points of cardinality 3.
ChoicePolynomial random_poly(std::mt19937& rng, int monomials, int indices) {
  std::uniform_int_distribution<int> scalar(1, 4), len(2, 3), idx(0, indices - 1), val(0, 2);
  std::vector<Monomial> ms;
  for (int k = 0; k < monomials; ++k) {
    DeltaList d;
    for (int t = len(rng); t > 0; --t) {
      const Delta x{static_cast<std::uint32_t>(idx(rng)), static_cast<std::uint32_t>(val(rng))};
      if (std::none_of(d.begin(), d.end(), [&](const Delta& y) { return y.index == x.index; }))
        d.push_back(x);
    }
    std::sort(d.begin(), d.end());
    // Roughly one monomial in eight is infinite.
    const auto s = scalar(rng) == 4 && rng() % 2 ? MwpInf::kInf : static_cast<MwpInf>(1 + rng() % 3);
    ms.push_back(Monomial{s, std::move(d)});
  }
  return ChoicePolynomial(std::move(ms));
}

template <ChoicePolynomial (*Mul)(const ChoicePolynomial&, const ChoicePolynomial&)>
void BM_Mul(benchmark::State& state) {
  std::mt19937 rng(7);
  const int n = static_cast<int>(state.range(0));
  const auto p = random_poly(rng, n, 24), q = random_poly(rng, n, 24);
  for (auto _ : state) benchmark::DoNotOptimize(Mul(p, q));
  state.SetComplexityN(n);
}

BENCHMARK(BM_Mul<mul>)->Name("mul/merge")->RangeMultiplier(2)->Range(4, 128)->Complexity();
BENCHMARK(BM_Mul<mul_naive>)->Name("mul/naive")->RangeMultiplier(2)->Range(4, 128)->Complexity();

void BM_Simplify(benchmark::State& state) {
  std::mt19937 rng(3);
  const ChoiceDomainRegistry reg(std::vector<std::uint32_t>(6, 3));
  const auto p = random_poly(rng, static_cast<int>(state.range(0)), 6);
  for (auto _ : state) benchmark::DoNotOptimize(p.simplify(reg));
}

BENCHMARK(BM_Simplify)->RangeMultiplier(2)->Range(4, 32);

}  // namespace

BENCHMARK_MAIN();
