#include "commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <regex>
#include <sstream>
#include <thread>

#include "rsh/augment.hpp"
#include "rsh/config.hpp"
#include "rsh/digest.hpp"
#include "rsh/error.hpp"
#include "rsh/imgio.hpp"
#include "rsh/pipeline.hpp"
#include "rsh/random.hpp"

namespace fs = std::filesystem;

namespace rsh::cli {
namespace {

const char* kDefaultsFooter =
    "Parameter defaults (override with --config FILE):\n"
    "  rsh:    p=0.5 highlight_range=[1,2] shadow_range=[0,1]\n"
    "          left_upper=[0,0.3] right_upper=[0,0.3] left_lower=[0.4,0.8] right_lower=[0.4,0.8]\n"
    "  gamma:  p=0.5 gamma_range=[0,1.5]\n"
    "  jitter: p=0.5 brightness_range=[0,2] contrast_range=[0,2] saturation_range=[0,2]\n"
    "          hue_range=[-0.5,0.5]\n"
    "  disk:   p=0.5 radius_range=[0.25,0.75] factor_range=[0,2]\n"
    "          (disk is a stand-in: uniform centre, hard-edged disk)\n";

// Raised for conditions that map to exit code 2 after CLI11 parsing succeeded.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::vector<std::string> kOps = {"rsh", "gamma", "jitter", "disk", "none"};

OpParams resolve_params(Op op, const std::string& config_path) {
  try {
    if (config_path.empty()) return default_params(op);
    return load_config(config_path, op);
  } catch (const Error& e) {
    throw UsageError(std::string("invalid config: ") + e.what());
  }
}

void check_output_extension(const std::string& path) {
  try {
    output_format_for(path);
  } catch (const Error& e) {
    throw UsageError(std::string("--output: ") + e.what());
  }
}

std::pair<int, int> parse_dims(const std::string& text, const char* flag) {
  static const std::regex kDims(R"((\d{1,6})x(\d{1,6}))");
  std::smatch m;
  if (!std::regex_match(text, m, kDims)) {
    throw UsageError(std::string(flag) + ": expected AxB, got '" + text + "'");
  }
  const int a = std::stoi(m[1]);
  const int b = std::stoi(m[2]);
  if (a < 1 || b < 1) {
    throw UsageError(std::string(flag) + ": both dimensions must be at least 1, got '" + text + "'");
  }
  return {a, b};
}

std::string fixed(double v, int digits = 6) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

void print_draws(std::ostream& out, Op op, const std::vector<double>& draws) {
  const auto names = draw_order(op);
  for (std::size_t i = 0; i < draws.size(); ++i) {
    const std::string name = i < names.size() ? std::string(names[i]) : "draw_" + std::to_string(i);
    out << "  " << std::left << std::setw(18) << name << std::setprecision(17) << draws[i] << "\n";
  }
}

// ---------------------------------------------------------------------------

struct ApplyArgs {
  std::string input, output, op, config;
  std::uint64_t seed = 0;
  bool force = false;
  bool verbose = false;
};

int cmd_apply(const ApplyArgs& a, std::ostream& out) {
  const Op op = parse_op(a.op);
  OpParams params = resolve_params(op, a.config);
  if (a.force) set_gating_probability(params, 1.0);
  check_output_extension(a.output);

  const Image img = load_image(a.input);
  SeededSource source(a.seed);
  RecordingSource recorder(source);
  const Outcome outcome = apply_op(img, params, recorder);
  save_image(outcome.image, a.output);

  if (a.verbose) {
    out << "op:      " << to_string(op) << "\n"
        << "seed:    " << a.seed << "\n"
        << "applied: " << (outcome.applied ? "yes" : "no") << "\n";
    if (outcome.mask_area) out << "mask area fraction: " << fixed(*outcome.mask_area) << "\n";
    out << "draws:\n";
    print_draws(out, op, recorder.draws());
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct DatasetArgs {
  std::string input, output, op, config, manifest;
  std::optional<double> p;
  std::uint64_t seed = 0;
  unsigned jobs = 0;
};

void print_summary(std::ostream& out, const Manifest& m, const std::string& manifest_path) {
  const Summary& s = m.summary;
  out << "images:       " << s.total << " (succeeded " << s.succeeded << ", failed " << s.failed
      << ")\n"
      << "applied:      " << s.applied << "\n"
      << "gating rate:  " << fixed(s.gating_rate) << "\n";
  if (s.mask_samples > 0) {
    out << "mask area:    mean " << fixed(s.mask_area_mean) << "  stddev "
        << fixed(s.mask_area_stddev) << "  (n=" << s.mask_samples << ")\n";
  }
  out << "manifest:     " << manifest_path << "\n";
  for (const auto& f : m.failures) out << "failed:       " << f.relative_path << ": " << f.message << "\n";
}

int cmd_dataset(const DatasetArgs& a, std::ostream& out, std::ostream& err) {
  const Op op = parse_op(a.op);
  JobConfig cfg;
  cfg.params = resolve_params(op, a.config);
  if (a.p) {
    if (op == Op::none) throw UsageError("--p: op 'none' has no gating probability");
    set_gating_probability(cfg.params, *a.p);
    try {
      validate(cfg.params);
    } catch (const Error& e) {
      throw UsageError(std::string("--p: ") + e.what());
    }
  }
  cfg.base_seed = a.seed;
  cfg.jobs = a.jobs > 0 ? a.jobs : std::max(1u, std::thread::hardware_concurrency());
  cfg.input_root = a.input;
  cfg.output_root = a.output;
  const fs::path manifest_path =
      a.manifest.empty() ? fs::path(a.output) / "manifest.json" : fs::path(a.manifest);

  const Manifest manifest = process_dataset(cfg);
  const std::string text = manifest_to_json(manifest);
  write_file(manifest_path,
             std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
  print_summary(out, manifest, manifest_path.generic_string());
  if (manifest.records.empty()) {
    err << "error: no image could be processed\n";
    return kExitFailure;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct PreviewArgs {
  std::string input, output, grid, config;
  std::uint64_t seed = 0;
  bool verbose = false;
};

int cmd_preview(const PreviewArgs& a, std::ostream& out) {
  const auto [rows, cols] = parse_dims(a.grid, "--grid");
  OpParams params = resolve_params(Op::rsh, a.config);
  set_gating_probability(params, 1.0);
  const auto& rsh_params = std::get<RshParams>(params);
  check_output_extension(a.output);

  const Image img = load_image(a.input);
  const int w = img.width();
  const int h = img.height();
  const int c = img.channels();
  Image montage(w * cols, h * rows, c);
  for (int r = 0; r < rows; ++r) {
    for (int col = 0; col < cols; ++col) {
      const int index = r * cols + col;
      const std::uint64_t seed = derive_seed(a.seed, "cell/" + std::to_string(index));
      SeededSource source(seed);
      const Image cell = apply_rsh(img, rsh_params, source);
      for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
          for (int ch = 0; ch < c; ++ch) montage.at(col * w + x, r * h + y, ch) = cell.at(x, y, ch);
        }
      }
      if (a.verbose) out << "cell " << index << " (row " << r << ", col " << col << "): seed " << seed << "\n";
    }
  }
  save_image(montage, a.output);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct StatsArgs {
  std::string manifest;
  bool json = false;
  int bins = 10;
};

struct DrawStats {
  std::string name;
  std::size_t count = 0;
  double mean = 0.0;
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();
};

int cmd_stats(const StatsArgs& a, std::ostream& out, std::ostream& err) {
  Manifest m;
  try {
    const auto bytes = read_file(a.manifest);
    m = parse_manifest(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
  } catch (const Error& e) {
    err << "error: cannot read manifest: " << e.what() << "\n";
    return kExitFailure;
  }
  if (m.records.empty()) {
    err << "error: manifest " << a.manifest << " has no records\n";
    return kExitFailure;
  }
  const Summary& s = m.summary;
  const Op op = op_of(m.params);

  std::vector<std::size_t> histogram(static_cast<std::size_t>(a.bins), 0);
  double mask_min = std::numeric_limits<double>::infinity();
  double mask_max = -std::numeric_limits<double>::infinity();
  std::vector<DrawStats> draws;
  const auto names = draw_order(op);
  for (const auto& r : m.records) {
    if (r.mask_area_fraction) {
      const double v = *r.mask_area_fraction;
      mask_min = std::min(mask_min, v);
      mask_max = std::max(mask_max, v);
      const auto bin = std::min<std::size_t>(static_cast<std::size_t>(v * a.bins), a.bins - 1);
      ++histogram[bin];
    }
    for (std::size_t i = 0; i < r.draws.size(); ++i) {
      if (draws.size() <= i) {
        draws.push_back({i < names.size() ? std::string(names[i]) : "draw_" + std::to_string(i)});
      }
      DrawStats& d = draws[i];
      ++d.count;
      d.mean += r.draws[i];
      d.min = std::min(d.min, r.draws[i]);
      d.max = std::max(d.max, r.draws[i]);
    }
  }
  for (auto& d : draws) d.mean /= static_cast<double>(d.count);

  if (a.json) {
    nlohmann::ordered_json doc;
    doc["op"] = to_string(op);
    doc["records"] = s.succeeded;
    doc["failures"] = s.failed;
    doc["applied"] = s.applied;
    doc["gating_rate"] = s.gating_rate;
    auto& mask = doc["mask_area"];
    mask["count"] = s.mask_samples;
    if (s.mask_samples > 0) {
      mask["mean"] = s.mask_area_mean;
      mask["stddev"] = s.mask_area_stddev;
      mask["min"] = mask_min;
      mask["max"] = mask_max;
      mask["histogram"] = histogram;
    }
    auto& dj = doc["draws"] = nlohmann::ordered_json::array();
    for (const auto& d : draws) {
      dj.push_back({{"name", d.name}, {"count", d.count}, {"mean", d.mean}, {"min", d.min}, {"max", d.max}});
    }
    out << doc.dump(2) << "\n";
    return kExitOk;
  }

  out << "op:           " << to_string(op) << "\n"
      << "records:      " << s.succeeded << " (failures " << s.failed << ")\n"
      << "applied:      " << s.applied << "\n"
      << "gating rate:  " << fixed(s.gating_rate) << "\n";
  if (s.mask_samples > 0) {
    out << "mask area:    mean " << fixed(s.mask_area_mean) << "  stddev " << fixed(s.mask_area_stddev)
        << "  min " << fixed(mask_min) << "  max " << fixed(mask_max) << "  (n=" << s.mask_samples
        << ")\n";
    for (int b = 0; b < a.bins; ++b) {
      out << "  [" << fixed(static_cast<double>(b) / a.bins, 2) << ", "
          << fixed(static_cast<double>(b + 1) / a.bins, 2) << (b + 1 == a.bins ? "]  " : ")  ")
          << std::setw(6) << std::right << histogram[b] << "\n";
    }
  }
  if (!draws.empty()) {
    out << "draws:\n";
    for (const auto& d : draws) {
      out << "  " << std::left << std::setw(18) << d.name << "n=" << d.count << "  mean "
          << fixed(d.mean) << "  min " << fixed(d.min) << "  max " << fixed(d.max) << "\n";
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct SynthArgs {
  std::string output, size = "64x64", format = "png";
  int count = 10;
  int channels = 3;
  std::uint64_t seed = 0;
};

// Smooth gradient, a few flat rectangles and light noise; enough structure
// for the lighting transforms to be visible.
Image synth_image(int w, int h, int channels, std::uint64_t seed) {
  SeededSource rng(seed);
  Image img(w, h, channels);
  double base[3], gx[3], gy[3];
  for (int c = 0; c < 3; ++c) {
    base[c] = 40.0 + 120.0 * rng.next_uniform();
    gx[c] = 80.0 * (rng.next_uniform() - 0.5);
    gy[c] = 80.0 * (rng.next_uniform() - 0.5);
  }
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < channels; ++c) {
        const double v = base[c] + gx[c] * x / w + gy[c] * y / h + 16.0 * (rng.next_uniform() - 0.5);
        img.at(x, y, c) = quantize(v);
      }
    }
  }
  for (int k = 0; k < 3; ++k) {
    const int x0 = static_cast<int>(rng.next_uniform() * w);
    const int y0 = static_cast<int>(rng.next_uniform() * h);
    const int x1 = std::min(w, x0 + 1 + static_cast<int>(rng.next_uniform() * w / 3));
    const int y1 = std::min(h, y0 + 1 + static_cast<int>(rng.next_uniform() * h / 3));
    std::uint8_t color[3];
    for (auto& v : color) v = quantize(255.0 * rng.next_uniform());
    for (int y = y0; y < y1; ++y) {
      for (int x = x0; x < x1; ++x) {
        for (int c = 0; c < channels; ++c) img.at(x, y, c) = color[c];
      }
    }
  }
  return img;
}

int cmd_synth(const SynthArgs& a, std::ostream& out) {
  const auto [w, h] = parse_dims(a.size, "--size");
  if (a.channels != 1 && a.channels != 3) throw UsageError("--channels: must be 1 or 3");
  if (a.count < 1) throw UsageError("--count: must be at least 1");
  std::string ext = "." + a.format;
  if (a.format == "pnm") ext = a.channels == 3 ? ".ppm" : ".pgm";
  if (ext == ".ppm" && a.channels != 3) throw UsageError("--format ppm needs --channels 3");
  if (ext == ".pgm" && a.channels != 1) throw UsageError("--format pgm needs --channels 1");
  for (int i = 0; i < a.count; ++i) {
    std::ostringstream name;
    name << "img_" << std::setw(4) << std::setfill('0') << i << ext;
    save_image(synth_image(w, h, a.channels, derive_seed(a.seed, name.str())),
               fs::path(a.output) / name.str());
  }
  out << "wrote " << a.count << " images to " << a.output << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------

std::string join_ops() {
  std::string s;
  for (const auto& op : kOps) s += (s.empty() ? "" : ", ") + op;
  return s;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Seeded lighting augmentation: Random Shadows and Highlights plus gamma, colour "
               "jitter and disk illumination baselines.",
               "rsh-augment"};
  app.require_subcommand(1);
  app.footer(kDefaultsFooter);
  app.set_version_flag("--version", std::string(kToolVersion));

  ApplyArgs apply;
  auto* apply_cmd = app.add_subcommand("apply", "Transform a single image");
  apply_cmd->add_option("-i,--input", apply.input, "Input image (PNG, JPEG, PPM, PGM)")->required();
  apply_cmd->add_option("-o,--output", apply.output, "Output image (.png, .ppm, .pgm)")->required();
  apply_cmd->add_option("--op", apply.op, "Transform: " + join_ops())
      ->required()
      ->check(CLI::IsMember(kOps));
  apply_cmd->add_option("--seed", apply.seed, "Seed of the random stream")->capture_default_str();
  apply_cmd->add_flag("--force", apply.force, "Set the gating probability p to 1");
  apply_cmd->add_option("--config", apply.config, "JSON parameter file (defaults listed below)");
  apply_cmd->add_flag("-v,--verbose", apply.verbose, "Print the consumed draws");
  apply_cmd->footer(kDefaultsFooter);

  DatasetArgs dataset;
  auto* dataset_cmd = app.add_subcommand("dataset", "Transform every image under a directory tree");
  dataset_cmd->add_option("-i,--input", dataset.input, "Input root directory")->required();
  dataset_cmd->add_option("-o,--output", dataset.output, "Output root directory")->required();
  dataset_cmd->add_option("--op", dataset.op, "Transform: " + join_ops())
      ->required()
      ->check(CLI::IsMember(kOps));
  dataset_cmd->add_option("--p", dataset.p, "Gating probability override (config default 0.5)")
      ->check(CLI::Range(0.0, 1.0));
  dataset_cmd->add_option("--seed", dataset.seed, "Base seed; per-file seeds derive from it")
      ->capture_default_str();
  dataset_cmd->add_option("-j,--jobs", dataset.jobs, "Worker threads (0 = hardware concurrency)")
      ->capture_default_str();
  dataset_cmd->add_option("--manifest", dataset.manifest,
                          "Manifest path (default <output>/manifest.json)");
  dataset_cmd->add_option("--config", dataset.config, "JSON parameter file (defaults listed below)");
  dataset_cmd->footer(kDefaultsFooter);

  PreviewArgs preview;
  auto* preview_cmd = app.add_subcommand("preview", "Montage of independently seeded RSH samples");
  preview_cmd->add_option("-i,--input", preview.input, "Input image")->required();
  preview_cmd->add_option("-o,--output", preview.output, "Montage image (.png, .ppm, .pgm)")
      ->required();
  preview_cmd->add_option("--grid", preview.grid, "Rows x columns, e.g. 3x3")->required();
  preview_cmd->add_option("--seed", preview.seed, "Base seed; cell i uses derive(seed, \"cell/i\")")
      ->capture_default_str();
  preview_cmd->add_option("--config", preview.config, "JSON parameter file (rsh section; p is forced to 1)");
  preview_cmd->add_flag("-v,--verbose", preview.verbose, "Print per-cell seeds");
  preview_cmd->footer(kDefaultsFooter);

  StatsArgs stats;
  auto* stats_cmd = app.add_subcommand("stats", "Summarize an existing run manifest");
  stats_cmd->add_option("--manifest", stats.manifest, "Manifest JSON file")->required();
  stats_cmd->add_flag("--json", stats.json, "Machine-readable output");
  stats_cmd->add_option("--bins", stats.bins, "Mask-area histogram bins")
      ->capture_default_str()
      ->check(CLI::Range(1, 1000));

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Write a deterministic synthetic image set");
  synth_cmd->add_option("-o,--output", synth.output, "Output directory")->required();
  synth_cmd->add_option("--count", synth.count, "Number of images")->capture_default_str();
  synth_cmd->add_option("--size", synth.size, "Width x height")->capture_default_str();
  synth_cmd->add_option("--channels", synth.channels, "1 or 3")->capture_default_str();
  synth_cmd->add_option("--format", synth.format, "png, ppm, pgm or pnm")
      ->capture_default_str()
      ->check(CLI::IsMember({"png", "ppm", "pgm", "pnm"}));
  synth_cmd->add_option("--seed", synth.seed, "Seed")->capture_default_str();

  auto* defaults_cmd = app.add_subcommand("defaults", "Print the default parameter file");

  std::vector<const char*> argv{"rsh-augment"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*apply_cmd) return cmd_apply(apply, out);
    if (*dataset_cmd) return cmd_dataset(dataset, out, err);
    if (*preview_cmd) return cmd_preview(preview, out);
    if (*stats_cmd) return cmd_stats(stats, out, err);
    if (*synth_cmd) return cmd_synth(synth, out);
    if (*defaults_cmd) {
      out << default_config_json(2) << "\n";
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace rsh::cli
