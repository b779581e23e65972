#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

#include "takum/decoder.hpp"
#include "takum/encoder.hpp"
#include "takum/oracle.hpp"
#include "takum/pattern.hpp"

namespace {

using namespace takum;

std::vector<pattern> random_patterns(int n, std::size_t count) {
  std::mt19937_64 rng(42);
  std::vector<pattern> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.emplace_back(rng() & low_mask(n), n);
  return out;
}

std::vector<encoder_input> random_inputs(int n, std::size_t count) {
  std::mt19937_64 rng(43);
  std::vector<encoder_input> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    encoder_input in;
    in.sign = rng() & 1;
    in.characteristic = -255 + static_cast<int>(rng() % 510);
    in.mantissa = rng() & low_mask(mantissa_width(n));
    out.push_back(in);
  }
  return out;
}

void BM_DecodeLogarithmic(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto patterns = random_patterns(n, 4096);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(decode_logarithmic(patterns[i++ & 4095]));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_DecodeLogarithmic)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_DecodeLinear(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto patterns = random_patterns(n, 4096);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(decode_linear(patterns[i++ & 4095]));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_DecodeLinear)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_Postencode(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto inputs = random_inputs(n, 4096);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(postencode(inputs[i++ & 4095], n));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Postencode)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_NearestFromLbar(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int k = mantissa_width(n);
  std::vector<exact_lbar> inputs;
  for (const encoder_input& in : random_inputs(n, 1024)) {
    inputs.push_back({mpz_from(int128{in.characteristic} * (int128{1} << k) + in.mantissa), k});
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(nearest_from_lbar(false, inputs[i++ & 1023], n));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_NearestFromLbar)->Arg(12)->Arg(64);

void BM_ExactValueDecimal(benchmark::State& state) {
  const auto patterns = random_patterns(32, 256);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_value_decimal(patterns[i++ & 255], 20, mode::logarithmic));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ExactValueDecimal);

}  // namespace

BENCHMARK_MAIN();
