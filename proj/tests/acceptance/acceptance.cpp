// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails. Tolerances are fixed here on purpose.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <string>

#include "rsh/augment.hpp"
#include "rsh/digest.hpp"
#include "rsh/geometry.hpp"
#include "rsh/imgio.hpp"
#include "rsh/pipeline.hpp"
#include "support/test_support.hpp"

namespace fs = std::filesystem;
using namespace rsh;

namespace {

constexpr double kRasterBudgetSeconds = 30.0;
constexpr double kDecompositionBudgetSeconds = 60.0;
constexpr double kGatingSigmas = 3.0;
constexpr double kMaskAreaTolerance = 0.02;
constexpr std::size_t kMonteCarloSamples = 4'000'000;

struct Verdict {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Verdict rasterizer_fidelity() {
  const auto start = Clock::now();
  std::mt19937_64 gen(1001);
  std::uniform_int_distribution<int> size(1, 64);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::size_t mismatches = 0, pixels = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int w = size(gen), h = size(gen);
    // Ranges wider than the defaults so edges also leave the image.
    const Trapezoid t{u(gen) * 0.6 * h, u(gen) * 1.2 * h, u(gen) * 0.6 * h, u(gen) * 1.2 * h};
    const Mask m = rasterize_mask(t, w, h);
    const auto expected = test::oracle_mask(
        test::oracle_quad(w, t.left_top, t.left_height, t.right_top, t.right_height), w, h);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        mismatches += m.at(x, y) != expected[static_cast<std::size_t>(y) * w + x];
        ++pixels;
      }
    }
  }
  const double elapsed = seconds_since(start);
  char buf[160];
  std::snprintf(buf, sizeof buf, "1000 trapezoids, %zu pixels, %zu mismatches, %.2f s (limit %.0f s)",
                pixels, mismatches, elapsed, kRasterBudgetSeconds);
  return {mismatches == 0 && elapsed < kRasterBudgetSeconds, buf};
}

Verdict decomposition() {
  const auto start = Clock::now();
  std::mt19937_64 gen(1002);
  std::uniform_int_distribution<int> size(1, 64);
  RshParams p;
  p.p = 1.0;
  int bad = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Image img = test::random_image(gen, size(gen), size(gen), trial % 3 == 0 ? 1 : 3);
    SeededSource source(gen());
    RecordingSource rec(source);
    const Image out = apply_rsh(img, p, rec);
    if (rec.draws().size() != 7 || out != test::oracle_rsh(img, p, rec.draws())) ++bad;
  }
  const double elapsed = seconds_since(start);
  char buf[160];
  std::snprintf(buf, sizeof buf, "1000 (image, seed) pairs, %d mismatching outputs, %.2f s (limit %.0f s)",
                bad, elapsed, kDecompositionBudgetSeconds);
  return {bad == 0 && elapsed < kDecompositionBudgetSeconds, buf};
}

Verdict draw_count() {
  SeededSource inner(1003);
  test::CountingSource counter(inner);
  const Image img = test::constant_image(4, 4, 3, 100);
  int skipped = 0, applied = 0, bad = 0;
  RshParams p;
  for (int trial = 0; trial < 10'000; ++trial) {
    counter.reset();
    const Outcome o = apply_rsh_detailed(img, p, counter);
    if (o.applied) {
      ++applied;
      bad += counter.count() != 7;
    } else {
      ++skipped;
      bad += counter.count() != 1;
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "10000 trials: %d applied (7 draws), %d skipped (1 draw), %d violations",
                applied, skipped, bad);
  return {bad == 0 && applied > 0 && skipped > 0, buf};
}

Verdict gating_statistics() {
  const Image img = test::constant_image(1, 1, 1, 50);
  constexpr int n = 10'000;
  bool ok = true;
  std::string detail;
  std::uint64_t seed = 1004;
  for (double prob : {0.1, 0.3, 0.5, 0.9}) {
    RshParams p;
    p.p = prob;
    SeededSource source(seed++);
    int applied = 0;
    for (int i = 0; i < n; ++i) applied += apply_rsh_detailed(img, p, source).applied;
    const double rate = static_cast<double>(applied) / n;
    const double band = kGatingSigmas * std::sqrt(prob * (1 - prob) / n);
    ok = ok && std::abs(rate - prob) <= band;
    char buf[96];
    std::snprintf(buf, sizeof buf, "%sp=%.1f rate=%.4f (+/-%.4f)", detail.empty() ? "" : ", ", prob,
                  rate, band);
    detail += buf;
  }
  return {ok, detail};
}

Verdict defaults() {
  const RshParams r;
  const bool rsh_ok = r.highlight_range == Range{1.0, 2.0} && r.shadow_range == Range{0.0, 1.0} &&
                      r.left_upper == Range{0.0, 0.3} && r.right_upper == Range{0.0, 0.3} &&
                      r.left_lower == Range{0.4, 0.8} && r.right_lower == Range{0.4, 0.8};
  const bool gamma_ok = GammaParams{}.gamma_range == Range{0.0, 1.5};
  const JitterParams j;
  const bool jitter_ok = j.brightness_range == Range{0.0, 2.0} && j.contrast_range == Range{0.0, 2.0} &&
                         j.saturation_range == Range{0.0, 2.0} && j.hue_range == Range{-0.5, 0.5};
  return {rsh_ok && gamma_ok && jitter_ok,
          std::string("rsh ") + (rsh_ok ? "ok" : "MISMATCH") + ", gamma " + (gamma_ok ? "ok" : "MISMATCH") +
              ", jitter " + (jitter_ok ? "ok" : "MISMATCH")};
}

Verdict ttd_table() {
  struct Row {
    const char* method;
    double train, test, test_rsh, ttd, ttd_rsh;
  };
  // Train error, test error, test error under RSH(1), and both published differences.
  const Row rows[] = {
      {"Baseline", 0.303, 0.408, 0.630, 0.105, 0.327},  {"RGC (0.5)", 0.301, 0.396, 0.603, 0.095, 0.302},
      {"RCJ (0.5)", 0.415, 0.406, 0.612, -0.009, 0.197}, {"RDI (0.5)", 0.493, 0.410, 0.627, -0.083, 0.134},
      {"RSH (0.5)", 0.353, 0.407, 0.449, 0.054, 0.096},  {"RGC (1)", 0.323, 0.400, 0.600, 0.077, 0.277},
      {"RCJ (1)", 0.485, 0.459, 0.656, -0.026, 0.171},   {"RDI (1)", 0.639, 0.631, 0.780, -0.008, 0.141},
      {"RSH (1)", 0.411, 0.434, 0.450, 0.023, 0.039},
  };
  auto thousandths = [](double v) { return std::lround(v * 1000.0); };
  int matched = 0;
  std::string misses;
  for (const Row& r : rows) {
    const bool a = thousandths(compute_ttd(r.train, r.test)) == thousandths(r.ttd);
    const bool b = thousandths(compute_ttd(r.train, r.test_rsh)) == thousandths(r.ttd_rsh);
    if (a && b) {
      ++matched;
    } else {
      misses += std::string(" ") + r.method;
    }
  }
  return {matched == 9, std::to_string(matched) + "/9 rows reproduced to 3 decimals (both columns)" +
                            (misses.empty() ? "" : "; misses:" + misses)};
}

std::map<std::string, std::string> tree_digests(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) {
      out[e.path().lexically_relative(root).generic_string()] = sha256_hex(read_file(e.path()));
    }
  }
  return out;
}

Verdict parallel_determinism() {
  test::TempDir in, out1, out2, out8;
  std::mt19937_64 gen(1007);
  for (int i = 0; i < 200; ++i) {
    const std::string dir = "class_" + std::to_string(i % 7) + "/";
    const int channels = i % 4 == 0 ? 1 : 3;
    const char* ext = i % 5 != 0 ? ".png" : (channels == 1 ? ".pgm" : ".ppm");
    save_image(test::random_image(gen, 16 + i % 17, 16 + i % 11, channels),
               in.path() / (dir + "img_" + std::to_string(i) + ext));
  }
  auto run = [&](unsigned jobs, const fs::path& out) {
    return process_dataset({RshParams{}, 2024, jobs, in.path(), out});
  };
  const Manifest m1 = run(1, out1.path());
  const Manifest m2 = run(2, out2.path());
  const Manifest m8 = run(8, out8.path());
  const bool manifests_equal =
      manifest_to_json(m1) == manifest_to_json(m2) && manifest_to_json(m1) == manifest_to_json(m8);
  const auto d1 = tree_digests(out1.path());
  const bool outputs_equal = d1 == tree_digests(out2.path()) && d1 == tree_digests(out8.path());

  const Manifest parsed = parse_manifest(manifest_to_json(m8));
  std::size_t replayed = 0;
  for (const auto& r : parsed.records) replayed += replay_digest(parsed, r, in.path()) == r.output_digest;

  const bool ok = m1.records.size() == 200 && manifests_equal && outputs_equal && replayed == 200;
  return {ok, std::to_string(m1.records.size()) + " images, jobs {1,2,8}: manifests " +
                  (manifests_equal ? "identical" : "DIFFER") + ", outputs " +
                  (outputs_equal ? "identical" : "DIFFER") + ", replay " + std::to_string(replayed) +
                  "/200"};
}

Verdict mask_area_mean() {
  test::TempDir in, out;
  std::mt19937_64 gen(1008);
  for (int i = 0; i < 500; ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "img_%03d.png", i);
    save_image(test::random_image(gen, 64, 64, 3), in.path() / name);
  }
  RshParams p;
  p.p = 1.0;
  const Manifest m = process_dataset({p, 1009, 4, in.path(), out.path()});
  const double expected = test::monte_carlo_mask_area(RshParams{}, kMonteCarloSamples, 1010);
  const double observed = m.summary.mask_area_mean;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu runs: mean %.4f, Monte-Carlo %.4f, |diff| %.4f (limit %.2f)",
                m.summary.mask_samples, observed, expected, std::abs(observed - expected),
                kMaskAreaTolerance);
  return {m.summary.mask_samples == 500 && std::abs(observed - expected) <= kMaskAreaTolerance, buf};
}

Verdict color_spot_checks() {
  Image red(1, 1, 3, {255, 0, 0});
  const Image gray = adjust_saturation(red, 0.0);
  const Image cyan = shift_hue(red, 0.5);
  const Image gamma = apply_gamma(Image(1, 1, 1, {64}), 0.5);
  const bool sat_ok = gray == Image(1, 1, 3, {76, 76, 76});
  const bool hue_ok = cyan == Image(1, 1, 3, {0, 255, 255});
  const bool gamma_ok = gamma.data()[0] == 128;
  char buf[160];
  std::snprintf(buf, sizeof buf, "saturation 0 of red -> (%d,%d,%d), hue +0.5 of red -> (%d,%d,%d), gamma 0.5 of 64 -> %d",
                gray.data()[0], gray.data()[1], gray.data()[2], cyan.data()[0], cyan.data()[1],
                cyan.data()[2], gamma.data()[0]);
  return {sat_ok && hue_ok && gamma_ok, buf};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Verdict()>> criteria[] = {
      {"rasterizer-oracle", rasterizer_fidelity},
      {"decomposition", decomposition},
      {"draw-count", draw_count},
      {"gating-statistics", gating_statistics},
      {"default-parameters", defaults},
      {"ttd-table", ttd_table},
      {"parallel-determinism", parallel_determinism},
      {"mask-area-mean", mask_area_mean},
      {"color-spot-checks", color_spot_checks},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.pass;
    std::printf("%s %-22s %s\n", v.pass ? "PASS" : "FAIL", name, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
