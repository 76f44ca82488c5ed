#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qfract/config.hpp"

namespace qfract::cli {

// Exit codes: 0 success, 1 usage error, 2 numerical-check failure.
inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_check_failed = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SliceSpec {
  int axis = 0;  // 1-based coordinate index in the CLI, stored 0-based
  double lo = 0.0;
  double hi = 0.0;
};

struct SampleParams {
  std::string polytope;
  double alpha = 0.5;
  std::uint64_t points = 0;
  std::uint64_t seed = 1;
  std::uint64_t burn_in = defaults::burn_in;
  std::optional<SliceSpec> slice;
  unsigned chains = 1;
  unsigned threads = 1;
  std::string out;
};

// Evaluation surface request for the density command.
// kind: "sphere" (full grid), "slice" (axis/value section), "torus" (ring
// surface of a 600-cell torus family).
struct SurfaceSpec {
  std::string kind = "sphere";
  int axis = 4;          // slice: 1-based coordinate index
  double value = 0.0;    // slice: coordinate value
  std::string family = "aa";  // torus family
};

struct DensityParams {
  std::string polytope;
  double alpha = 0.5;
  int depth = 1;
  SurfaceSpec surface;
  std::vector<std::size_t> grid;  // empty: per-surface default
  unsigned threads = 1;
  std::string out;
  std::string image;  // optional PGM path
};

struct DimParams {
  std::string input;
  double rmin = 0.0;  // 0: defaults::fit_rmin_frac * diameter
  double rmax = 0.0;
  std::size_t bins = 24;
  std::uint64_t subsample = 0;  // 0: use every point
  std::uint64_t seed = 1;
  std::string out;       // optional curve CSV
  std::string json_out;  // optional result JSON; always printed to stdout
};

struct CommandResult {
  std::vector<std::string> outputs;  // files written (manifest excluded)
  std::string manifest_path;
  std::string summary;  // one-line human-readable result
};

CommandResult cmd_polytope_show(const std::string& name, const std::string& out_csv);
std::string polytope_list_text();

CommandResult cmd_sample(const SampleParams& p);
CommandResult cmd_density(const DensityParams& p);
CommandResult cmd_dim(const DimParams& p);

// Re-runs the command recorded in a manifest with outputs redirected to
// scratch_dir, then byte-compares every recorded output. Returns the list of
// mismatched files (empty means reproducible).
std::vector<std::string> replay_manifest(const std::string& manifest_path,
                                         const std::string& scratch_dir);

}  // namespace qfract::cli
