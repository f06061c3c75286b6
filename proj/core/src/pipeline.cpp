#include "rsh/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <set>
#include <thread>
#include <variant>

#include "params_json.hpp"
#include "rsh/augment.hpp"
#include "rsh/digest.hpp"
#include "rsh/error.hpp"
#include "rsh/imgio.hpp"
#include "rsh/random.hpp"

namespace fs = std::filesystem;

namespace rsh {
namespace {

constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

bool is_jpeg_name(std::string_view path) {
  std::string ext = fs::path(path).extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".jpg" || ext == ".jpeg";
}

using FileResult = std::variant<ManifestRecord, Failure>;

struct EncodedOutput {
  std::vector<std::uint8_t> bytes;
  bool applied = false;
  std::vector<double> draws;
  std::optional<double> mask_area;
};

// Transform one decoded file exactly as process_dataset does; shared with replay.
EncodedOutput transform_file(const std::vector<std::uint8_t>& input, const OpParams& params,
                             std::uint64_t seed, const std::string& output_path) {
  const Image img = decode_image(input);
  if (op_of(params) == Op::none) return {input, false, {}, std::nullopt};
  SeededSource source(seed);
  RecordingSource recorder(source);
  Outcome outcome = apply_op(img, params, recorder);
  return {encode_image(outcome.image, output_format_for(output_path)), outcome.applied,
          recorder.draws(), outcome.mask_area};
}

FileResult process_file(const JobConfig& cfg, const std::string& rel) {
  try {
    const auto input = read_file(cfg.input_root / rel);
    ManifestRecord record;
    record.relative_path = rel;
    record.output_path = output_relative_path(rel, op_of(cfg.params));
    record.derived_seed = derive_seed(cfg.base_seed, rel);
    record.input_digest = sha256_hex(input);
    EncodedOutput out = transform_file(input, cfg.params, record.derived_seed, record.output_path);
    write_file(cfg.output_root / record.output_path, out.bytes);
    record.applied = out.applied;
    record.draws = std::move(out.draws);
    record.mask_area_fraction = out.mask_area;
    record.output_digest = sha256_hex(out.bytes);
    return record;
  } catch (const Error& e) {
    return Failure{rel, std::string(to_string(e.code())) + ": " + e.what()};
  }
}

nlohmann::ordered_json record_json(const ManifestRecord& r) {
  nlohmann::ordered_json j;
  j["relative_path"] = r.relative_path;
  j["output_path"] = r.output_path;
  j["derived_seed"] = r.derived_seed;
  j["applied"] = r.applied;
  j["draws"] = r.draws;
  if (r.mask_area_fraction) j["mask_area_fraction"] = *r.mask_area_fraction;
  j["input_digest"] = r.input_digest;
  j["output_digest"] = r.output_digest;
  return j;
}

template <typename T>
T field(const nlohmann::json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) throw Error(ErrorCode::BadManifest, std::string("manifest lacks '") + key + "'");
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorCode::BadManifest, std::string("manifest field '") + key + "' has wrong type");
  }
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base_seed, std::string_view relative_path) {
  std::uint64_t h = mix64(base_seed);
  for (unsigned char c : relative_path) {
    h ^= c;
    h *= kFnvPrime;
  }
  return mix64(h ^ static_cast<std::uint64_t>(relative_path.size()));
}

std::vector<std::string_view> draw_order(Op op) {
  switch (op) {
    case Op::none: return {};
    case Op::rsh:
      return {"p1", "left_height", "left_top", "right_height", "right_top", "shadow_factor",
              "highlight_factor"};
    case Op::gamma: return {"p1", "gamma"};
    case Op::jitter: return {"p1", "brightness", "contrast", "saturation", "hue"};
    case Op::disk: return {"p1", "center_x", "center_y", "radius_fraction", "factor"};
  }
  return {};
}

std::string output_relative_path(std::string_view relative_path, Op op) {
  std::string out(relative_path);
  if (op != Op::none && is_jpeg_name(relative_path)) out += ".png";
  return out;
}

Summary summarize(const std::vector<ManifestRecord>& records, std::size_t failures) {
  Summary s;
  s.succeeded = records.size();
  s.failed = failures;
  s.total = s.succeeded + s.failed;
  double sum = 0.0;
  for (const auto& r : records) {
    if (r.applied) ++s.applied;
    if (r.mask_area_fraction) {
      ++s.mask_samples;
      sum += *r.mask_area_fraction;
    }
  }
  s.gating_rate = s.succeeded ? static_cast<double>(s.applied) / s.succeeded : 0.0;
  if (s.mask_samples > 0) {
    s.mask_area_mean = sum / s.mask_samples;
    double ss = 0.0;
    for (const auto& r : records) {
      if (r.mask_area_fraction) ss += std::pow(*r.mask_area_fraction - s.mask_area_mean, 2);
    }
    s.mask_area_stddev = std::sqrt(ss / s.mask_samples);
  }
  return s;
}

Manifest process_dataset(const JobConfig& cfg) {
  validate(cfg.params);
  const std::vector<std::string> files = list_dataset(cfg.input_root);
  if (files.empty()) {
    throw Error(ErrorCode::EmptyInput, "no supported images under " + cfg.input_root.string());
  }

  std::error_code ec;
  std::set<fs::path> dirs{cfg.output_root};
  for (const auto& rel : files) dirs.insert((cfg.output_root / rel).parent_path());
  for (const auto& dir : dirs) {
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::IoFailure, "cannot create " + dir.string() + ": " + ec.message());
  }

  std::vector<std::optional<FileResult>> results(files.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr fatal;
  std::mutex fatal_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      try {
        results[i] = process_file(cfg, files[i]);
      } catch (...) {
        std::lock_guard lock(fatal_mutex);
        if (!fatal) fatal = std::current_exception();
      }
    }
  };
  const unsigned workers =
      std::clamp<unsigned>(cfg.jobs, 1u, static_cast<unsigned>(std::min<std::size_t>(files.size(), 256)));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < workers; ++t) pool.emplace_back(worker);
    worker();
  }
  if (fatal) std::rethrow_exception(fatal);

  Manifest manifest;
  manifest.params = cfg.params;
  manifest.base_seed = cfg.base_seed;
  for (auto& result : results) {
    if (auto* rec = std::get_if<ManifestRecord>(&*result)) {
      manifest.records.push_back(std::move(*rec));
    } else {
      manifest.failures.push_back(std::get<Failure>(std::move(*result)));
    }
  }
  manifest.summary = summarize(manifest.records, manifest.failures.size());
  return manifest;
}

std::string manifest_to_json(const Manifest& m, int indent) {
  nlohmann::ordered_json doc;
  doc["tool"] = m.tool;
  doc["version"] = m.version;
  doc["prng"] = kPrngName;
  doc["seed_derivation"] = "splitmix64(fnv1a64(path, splitmix64(base_seed)) ^ len(path))";
  const Op op = op_of(m.params);
  doc["config"]["op"] = to_string(op);
  doc["config"]["base_seed"] = m.base_seed;
  doc["config"]["params"] = detail::params_to_json_value(m.params);
  auto& order = doc["config"]["draw_order"] = nlohmann::ordered_json::array();
  for (auto name : draw_order(op)) order.push_back(name);
  if (op == Op::disk) {
    doc["config"]["note"] =
        "disk illumination is a stand-in: uniform centre, radius as a fraction of min(W, H), "
        "hard-edged disk";
  }

  auto& records = doc["records"] = nlohmann::ordered_json::array();
  for (const auto& r : m.records) records.push_back(record_json(r));
  auto& failures = doc["failures"] = nlohmann::ordered_json::array();
  for (const auto& f : m.failures) {
    failures.push_back({{"relative_path", f.relative_path}, {"error", f.message}});
  }
  const Summary& s = m.summary;
  doc["summary"] = {{"total", s.total},
                    {"succeeded", s.succeeded},
                    {"failed", s.failed},
                    {"applied", s.applied},
                    {"gating_rate", s.gating_rate},
                    {"mask_samples", s.mask_samples},
                    {"mask_area_mean", s.mask_area_mean},
                    {"mask_area_stddev", s.mask_area_stddev}};
  return doc.dump(indent) + "\n";
}

Manifest parse_manifest(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::BadManifest, std::string("manifest is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::BadManifest, "manifest must be a JSON object");

  Manifest m;
  m.tool = field<std::string>(doc, "tool");
  m.version = field<std::string>(doc, "version");
  const auto config = field<nlohmann::json>(doc, "config");
  const Op op = parse_op(field<std::string>(config, "op"));
  m.base_seed = field<std::uint64_t>(config, "base_seed");
  try {
    m.params = detail::params_from_json_value(field<nlohmann::json>(config, "params"), op);
  } catch (const Error& e) {
    throw Error(ErrorCode::BadManifest, std::string("manifest config is invalid: ") + e.what());
  }

  const auto records = field<nlohmann::json>(doc, "records");
  if (!records.is_array()) throw Error(ErrorCode::BadManifest, "manifest 'records' must be an array");
  for (const auto& j : records) {
    ManifestRecord r;
    r.relative_path = field<std::string>(j, "relative_path");
    r.output_path = field<std::string>(j, "output_path");
    r.derived_seed = field<std::uint64_t>(j, "derived_seed");
    r.applied = field<bool>(j, "applied");
    r.draws = field<std::vector<double>>(j, "draws");
    if (j.contains("mask_area_fraction")) {
      r.mask_area_fraction = field<double>(j, "mask_area_fraction");
    }
    r.input_digest = field<std::string>(j, "input_digest");
    r.output_digest = field<std::string>(j, "output_digest");
    m.records.push_back(std::move(r));
  }
  if (doc.contains("failures")) {
    for (const auto& j : field<nlohmann::json>(doc, "failures")) {
      m.failures.push_back({field<std::string>(j, "relative_path"), field<std::string>(j, "error")});
    }
  }
  m.summary = summarize(m.records, m.failures.size());
  return m;
}

std::string replay_digest(const Manifest& manifest, const ManifestRecord& record,
                          const fs::path& input_root) {
  const auto input = read_file(input_root / record.relative_path);
  const EncodedOutput out =
      transform_file(input, manifest.params, record.derived_seed, record.output_path);
  return sha256_hex(out.bytes);
}

double compute_ttd(double train_error, double test_error) {
  const auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!in_unit(train_error) || !in_unit(test_error)) {
    throw Error(ErrorCode::InvalidArgument, "error rates must lie in [0, 1]");
  }
  return test_error - train_error;
}

}  // namespace rsh
