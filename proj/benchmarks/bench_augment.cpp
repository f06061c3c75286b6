#include <benchmark/benchmark.h>

#include <random>

#include "rsh/augment.hpp"
#include "rsh/geometry.hpp"
#include "rsh/imgio.hpp"
#include "rsh/pipeline.hpp"

namespace {

rsh::Image noise(int w, int h, int c) {
  rsh::Image img(w, h, c);
  std::mt19937_64 gen(7);
  for (auto& v : img.data()) v = static_cast<std::uint8_t>(gen());
  return img;
}

void BM_RasterizeMask(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const rsh::Trapezoid t{0.1 * n, 0.6 * n, 0.2 * n, 0.5 * n};
  for (auto _ : state) benchmark::DoNotOptimize(rsh::rasterize_mask(t, n, n));
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_RasterizeMask)->Arg(64)->Arg(224)->Arg(1024);

void BM_ApplyRsh(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const rsh::Image img = noise(n, n, 3);
  rsh::RshParams p;
  p.p = 1.0;
  rsh::SeededSource rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(rsh::apply_rsh(img, p, rng));
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_ApplyRsh)->Arg(64)->Arg(224)->Arg(1024);

void BM_ColorJitter(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const rsh::Image img = noise(n, n, 3);
  rsh::JitterParams p;
  p.p = 1.0;
  rsh::SeededSource rng(2);
  for (auto _ : state) benchmark::DoNotOptimize(rsh::color_jitter(img, p, rng));
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_ColorJitter)->Arg(64)->Arg(224);

void BM_DeriveSeed(benchmark::State& state) {
  const std::string path = "train/n01443537/n01443537_10007.JPEG";
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(seed = rsh::derive_seed(seed, path));
}
BENCHMARK(BM_DeriveSeed);

void BM_EncodePng(benchmark::State& state) {
  const rsh::Image img = noise(224, 224, 3);
  for (auto _ : state) benchmark::DoNotOptimize(rsh::encode_image(img, rsh::ImageFormat::png));
}
BENCHMARK(BM_EncodePng);

}  // namespace

BENCHMARK_MAIN();
