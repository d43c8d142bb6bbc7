#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "mwp/analyzer.hpp"
#include "mwp/frontend.hpp"

namespace {

using namespace mwp;

// Loops of three additions over X1..X6; each addition is one choice point.
Program wide_program(int choices) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> v(1, 6);
  auto x = [&] { return "X" + std::to_string(v(rng)); };
  std::string s = "function main() {\n";
  for (int b = 0, left = choices; left > 0; ++b) {
    s += "  loop X" + std::to_string(7 + b % 2) + " {\n";
    for (int k = 0; k < 3 && left > 0; ++k, --left) s += "    " + x() + " = " + x() + " + " + x() + ";\n";
    s += "  }\n";
  }
  return parse_program(s + "}\n");
}

void BM_Fast(benchmark::State& state) {
  const auto p = wide_program(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(analyze_program(p, {.fast = true}));
}

void BM_Full(benchmark::State& state) {
  const auto p = wide_program(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(analyze_program(p));
}

BENCHMARK(BM_Fast)->DenseRange(3, 18, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Full)->DenseRange(3, 9, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
