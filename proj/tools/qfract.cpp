// qfract: conformal iterated-function-system workbench.
//
// Subcommands: polytope (list/show detector configurations), sample (chaos
// game), density (Markov-operator density iterates), dim (correlation
// dimension), verify (invariant/acceptance suites, manifest replay).

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qfract/commands.hpp"
#include "qfract/config.hpp"
#include "qfract/io.hpp"
#include "qfract/verify.hpp"

namespace cli = qfract::cli;

namespace {

// Optional JSON config: top-level keys are subcommand names, values are
// objects whose entries fill in options the command line left unset.
class ConfigFile {
 public:
  void load(const std::string& path) {
    tree_ = nlohmann::json::parse(qfract::io::read_file(path));
  }
  template <typename T>
  void fill(const std::string& command, const std::string& key,
            const CLI::Option* opt, T& target) const {
    if (opt && opt->count() > 0) return;  // flags override file values
    if (!tree_.contains(command)) return;
    const auto& sub = tree_.at(command);
    if (sub.contains(key)) target = sub.at(key).get<T>();
  }

 private:
  nlohmann::json tree_ = nlohmann::json::object();
};

unsigned default_threads() {
  if (const char* env = std::getenv("QFRACT_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? hc : 1;
}

cli::SliceSpec parse_slice(const std::string& text) {
  // axis:lo:hi with a 1-based axis.
  std::stringstream ss(text);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(ss, part, ':')) parts.push_back(part);
  if (parts.size() != 3)
    throw cli::UsageError("--slice expects axis:lo:hi");
  cli::SliceSpec s;
  s.axis = std::stoi(parts[0]) - 1;
  s.lo = std::stod(parts[1]);
  s.hi = std::stod(parts[2]);
  if (s.axis < 0) throw cli::UsageError("--slice axis is 1-based");
  if (!(s.lo < s.hi)) throw cli::UsageError("--slice needs lo < hi");
  return s;
}

cli::SurfaceSpec parse_surface(const std::string& text) {
  cli::SurfaceSpec spec;
  if (text == "sphere") {
    spec.kind = "sphere";
    return spec;
  }
  std::stringstream ss(text);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(ss, part, ':')) parts.push_back(part);
  if (parts[0] == "slice") {
    if (parts.size() != 3) throw cli::UsageError("--surface slice:axis:value");
    spec.kind = "slice";
    spec.axis = std::stoi(parts[1]);
    spec.value = std::stod(parts[2]);
    return spec;
  }
  if (parts[0] == "torus") {
    if (parts.size() != 2) throw cli::UsageError("--surface torus:<family>");
    spec.kind = "torus";
    spec.family = parts[1];
    return spec;
  }
  throw cli::UsageError("unknown surface '" + text + "'");
}

std::vector<std::size_t> parse_grid(const std::string& text) {
  std::vector<std::size_t> dims;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, 'x')) dims.push_back(std::stoull(part));
  return dims;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conformal IFS fractals on n-spheres: samplers, Markov densities, diagnostics"};
  app.require_subcommand(1);
  unsigned threads = default_threads();
  auto* o_threads = app.add_option(
      "--threads", threads, "worker threads (default: QFRACT_THREADS or hardware)");
  o_threads->capture_default_str();
  std::string config_path;
  app.add_option("--config", config_path,
                 "JSON config file with per-subcommand defaults; flags win");

  // polytope ---------------------------------------------------------------
  auto* cmd_poly = app.add_subcommand("polytope", "detector configurations");
  cmd_poly->require_subcommand(1);
  cmd_poly->add_subcommand("list", "list shipped configuration names");
  auto* poly_show = cmd_poly->add_subcommand("show", "emit vertices as CSV");
  std::string poly_name;
  std::string poly_out;
  poly_show->add_option("name", poly_name, "configuration name")->required();
  poly_show->add_option("--out", poly_out, "write CSV here instead of stdout");

  // sample -----------------------------------------------------------------
  auto* cmd_sample = app.add_subcommand("sample", "chaos-game point cloud");
  cli::SampleParams sp;
  std::string slice_text;
  auto* so_poly = cmd_sample->add_option("--polytope", sp.polytope, "configuration name");
  auto* so_alpha = cmd_sample->add_option("--alpha", sp.alpha, "boost strength in (0,1)");
  auto* so_points = cmd_sample->add_option("--points", sp.points, "points to emit");
  auto* so_seed = cmd_sample->add_option("--seed", sp.seed, "RNG seed");
  so_seed->capture_default_str();
  auto* so_burn = cmd_sample->add_option("--burn-in", sp.burn_in,
                                         "discarded transient steps");
  so_burn->capture_default_str();
  auto* so_slice =
      cmd_sample->add_option("--slice", slice_text, "keep only axis:lo:hi (1-based axis)");
  auto* so_chains = cmd_sample->add_option("--chains", sp.chains, "independent chains");
  so_chains->capture_default_str();
  auto* so_out = cmd_sample->add_option("--out", sp.out, "output CSV");

  // density ----------------------------------------------------------------
  auto* cmd_density = app.add_subcommand("density", "Markov-operator density iterate");
  cli::DensityParams dp;
  std::string surface_text = "sphere";
  std::string grid_text;
  auto* do_poly = cmd_density->add_option("--polytope", dp.polytope, "configuration name");
  auto* do_alpha = cmd_density->add_option("--alpha", dp.alpha, "boost strength in (0,1)");
  auto* do_depth = cmd_density->add_option("--depth", dp.depth, "iteration level k");
  auto* do_surface = cmd_density->add_option(
      "--surface", surface_text, "sphere | slice:axis:value | torus:<family>");
  do_surface->capture_default_str();
  auto* do_grid =
      cmd_density->add_option("--grid", grid_text, "resolution, e.g. 8192 or 1024x512");
  auto* do_out = cmd_density->add_option("--out", dp.out, "output CSV");
  auto* do_image =
      cmd_density->add_option("--image", dp.image, "optional 16-bit PGM of log10(f+1)");

  // dim --------------------------------------------------------------------
  auto* cmd_dim = app.add_subcommand("dim", "correlation dimension of a point cloud");
  cli::DimParams mp;
  auto* mo_input = cmd_dim->add_option("--input", mp.input, "points CSV (x* columns)");
  auto* mo_rmin = cmd_dim->add_option("--rmin", mp.rmin,
                                      "fit window lower radius (default: 1e-3 diam)");
  auto* mo_rmax = cmd_dim->add_option("--rmax", mp.rmax,
                                      "fit window upper radius (default: 1e-1 diam)");
  auto* mo_bins = cmd_dim->add_option("--bins", mp.bins, "log-spaced radii");
  mo_bins->capture_default_str();
  auto* mo_sub = cmd_dim->add_option("--subsample", mp.subsample,
                                     "use only this many points");
  auto* mo_seed =
      cmd_dim->add_option("--seed", mp.seed, "seed for subsampling/pair sampling");
  mo_seed->capture_default_str();
  auto* mo_out = cmd_dim->add_option("--out", mp.out, "curve CSV");
  auto* mo_json = cmd_dim->add_option("--json", mp.json_out, "result JSON file");

  // verify -----------------------------------------------------------------
  auto* cmd_verify = app.add_subcommand("verify", "run invariant/acceptance checks");
  std::string suite = "all";
  std::string manifest;
  auto* vo_suite = cmd_verify->add_option(
      "--suite", suite, "clifford|conformal|polytopes|markov|fracdim|ifs|cli|all");
  cmd_verify->add_option("--manifest", manifest,
                         "replay a run manifest and compare outputs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);  // prints the message or the requested help text
    return code == 0 ? cli::exit_ok : cli::exit_usage;
  }

  try {
    ConfigFile config;
    if (!config_path.empty()) {
      config.load(config_path);
      config.fill("global", "threads", o_threads, threads);
      config.fill("sample", "polytope", so_poly, sp.polytope);
      config.fill("sample", "alpha", so_alpha, sp.alpha);
      config.fill("sample", "points", so_points, sp.points);
      config.fill("sample", "seed", so_seed, sp.seed);
      config.fill("sample", "burn_in", so_burn, sp.burn_in);
      config.fill("sample", "slice", so_slice, slice_text);
      config.fill("sample", "chains", so_chains, sp.chains);
      config.fill("sample", "out", so_out, sp.out);
      config.fill("density", "polytope", do_poly, dp.polytope);
      config.fill("density", "alpha", do_alpha, dp.alpha);
      config.fill("density", "depth", do_depth, dp.depth);
      config.fill("density", "surface", do_surface, surface_text);
      config.fill("density", "grid", do_grid, grid_text);
      config.fill("density", "out", do_out, dp.out);
      config.fill("density", "image", do_image, dp.image);
      config.fill("dim", "input", mo_input, mp.input);
      config.fill("dim", "rmin", mo_rmin, mp.rmin);
      config.fill("dim", "rmax", mo_rmax, mp.rmax);
      config.fill("dim", "bins", mo_bins, mp.bins);
      config.fill("dim", "subsample", mo_sub, mp.subsample);
      config.fill("dim", "seed", mo_seed, mp.seed);
      config.fill("dim", "out", mo_out, mp.out);
      config.fill("dim", "json", mo_json, mp.json_out);
      config.fill("verify", "suite", vo_suite, suite);
    }

    if (cmd_poly->parsed()) {
      if (cmd_poly->get_subcommand("list")->parsed()) {
        std::cout << cli::polytope_list_text();
        return cli::exit_ok;
      }
      cli::CommandResult r = cli::cmd_polytope_show(poly_name, poly_out);
      std::cout << r.summary;
      if (!poly_out.empty()) std::cout << "\n";
      return cli::exit_ok;
    }
    if (cmd_sample->parsed()) {
      if (!slice_text.empty()) sp.slice = parse_slice(slice_text);
      sp.threads = threads;
      std::cout << cli::cmd_sample(sp).summary << "\n";
      return cli::exit_ok;
    }
    if (cmd_density->parsed()) {
      dp.surface = parse_surface(surface_text);
      if (!grid_text.empty()) dp.grid = parse_grid(grid_text);
      dp.threads = threads;
      std::cout << cli::cmd_density(dp).summary << "\n";
      return cli::exit_ok;
    }
    if (cmd_dim->parsed()) {
      std::cout << cli::cmd_dim(mp).summary << "\n";
      return cli::exit_ok;
    }
    if (cmd_verify->parsed()) {
      if (!manifest.empty()) {
        namespace fs = std::filesystem;
        fs::path scratch = fs::temp_directory_path() /
                           ("qfract-replay-" + std::to_string(::getpid()));
        auto mismatched = cli::replay_manifest(manifest, scratch.string());
        std::error_code ec;
        fs::remove_all(scratch, ec);
        if (mismatched.empty()) {
          std::cout << "replay reproduced every output bit-for-bit\n";
          return cli::exit_ok;
        }
        for (const auto& f : mismatched) std::cout << "MISMATCH " << f << "\n";
        return cli::exit_check_failed;
      }
      auto results = qfract::verify::run_acceptance(
          threads, qfract::verify::suite_criteria(suite));
      bool all_ok = true;
      for (const auto& r : results) {
        std::printf("[%2d] %s %s (%.1fs)\n      %s\n", r.id,
                    r.pass ? "PASS" : "FAIL", r.name.c_str(), r.seconds,
                    r.detail.c_str());
        all_ok = all_ok && r.pass;
      }
      return all_ok ? cli::exit_ok : cli::exit_check_failed;
    }
  } catch (const cli::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::exit_usage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::exit_check_failed;
  }
  return cli::exit_usage;
}
