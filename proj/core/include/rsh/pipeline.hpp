#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rsh/params.hpp"

namespace rsh {

inline constexpr const char* kToolName = "rsh-augment";
inline constexpr const char* kToolVersion = "1.0.0";

/// Per-file seed: FNV-1a 64 over the path bytes, started from the splitmix64
/// mix of the base seed, then finalized with one more splitmix64 mix. Depends
/// only on (base_seed, relative_path).
std::uint64_t derive_seed(std::uint64_t base_seed, std::string_view relative_path);

struct JobConfig {
  OpParams params;
  std::uint64_t base_seed = 0;
  unsigned jobs = 1;
  std::filesystem::path input_root;
  std::filesystem::path output_root;
};

struct ManifestRecord {
  std::string relative_path;
  std::string output_path;  // relative to the output root
  std::uint64_t derived_seed = 0;
  bool applied = false;
  std::vector<double> draws;
  std::optional<double> mask_area_fraction;
  std::string input_digest;
  std::string output_digest;

  friend bool operator==(const ManifestRecord&, const ManifestRecord&) = default;
};

struct Failure {
  std::string relative_path;
  std::string message;

  friend bool operator==(const Failure&, const Failure&) = default;
};

struct Summary {
  std::size_t total = 0;
  std::size_t succeeded = 0;
  std::size_t failed = 0;
  std::size_t applied = 0;
  double gating_rate = 0.0;  // applied / succeeded
  std::size_t mask_samples = 0;
  double mask_area_mean = 0.0;
  double mask_area_stddev = 0.0;  // population
};

struct Manifest {
  std::string tool = kToolName;
  std::string version = kToolVersion;
  OpParams params;
  std::uint64_t base_seed = 0;
  std::vector<ManifestRecord> records;  // sorted by relative_path
  std::vector<Failure> failures;
  Summary summary;
};

Summary summarize(const std::vector<ManifestRecord>& records, std::size_t failures);

/// Names of the draws an op consumes when it applies, in consumption order.
std::vector<std::string_view> draw_order(Op op);

/// Output location of an input file. JPEG inputs get ".png" appended because
/// the tool never writes lossy files; Op::none keeps the original name.
std::string output_relative_path(std::string_view relative_path, Op op);

/// Transforms every image under input_root into the mirrored tree under
/// output_root. Undecodable files are recorded in `failures` and skipped.
/// Throws EmptyInput when no candidate image exists and IoFailure when the
/// input root is missing. Output is independent of `jobs`.
Manifest process_dataset(const JobConfig& cfg);

std::string manifest_to_json(const Manifest& manifest, int indent = 2);
/// Throws BadManifest on malformed input.
Manifest parse_manifest(std::string_view json_text);

/// Re-runs the op for one record from the input file and returns the digest
/// of the bytes the pipeline would write.
std::string replay_digest(const Manifest& manifest, const ManifestRecord& record,
                          const std::filesystem::path& input_root);

/// Test error minus train error; both must lie in [0, 1].
double compute_ttd(double train_error, double test_error);

}  // namespace rsh
