#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "qfract/config.hpp"
#include "qfract/polytopes.hpp"
#include "qfract/rng.hpp"

namespace qfract::ifs {

// An iterated function system of conformal maps: one boost of strength alpha
// toward every vertex of a balanced configuration, selected with the
// geometric place-dependent probabilities
//   p_i(x) = (1 + alpha^2 + 2 alpha (n_i . x)) / (N (1 + alpha^2)).
class IFSSystem {
 public:
  IFSSystem(polytopes::VertexConfiguration config, double alpha);

  const polytopes::VertexConfiguration& config() const { return config_; }
  double alpha() const { return alpha_; }
  int sphere_dim() const { return config_.dim; }
  int ambient_dim() const { return config_.ambient_dim(); }
  std::size_t map_count() const { return config_.count(); }
  std::span<const double> axis(std::size_t i) const {
    return {config_.vertices[i].data(), config_.vertices[i].size()};
  }

 private:
  polytopes::VertexConfiguration config_;
  double alpha_;
};

// Selection probabilities at x; out.size() == map_count().
void probabilities(const IFSSystem& s, std::span<const double> x,
                   std::span<double> out);
std::vector<double> probabilities(const IFSSystem& s, std::span<const double> x);

// One jump: draws the map index by inverse CDF on a single uniform variate,
// applies it, renormalizes x in place. Returns the chosen index.
int step(const IFSSystem& s, std::span<double> x, Rng& rng);

struct SamplePoint {
  std::uint32_t chain;
  std::uint64_t step;
  std::uint32_t map_index;
};

// Streaming chaos game. Each chain gets its own counter-based stream derived
// from (seed, chain), starts at x0 (default: first vertex), discards burn_in
// points, then emits `count` points through the sink in (chain, step) order.
// Chains run in parallel when threads > 1; output order does not depend on
// the worker count.
using SampleSink =
    std::function<void(const SamplePoint&, std::span<const double>)>;
void run_stream(const IFSSystem& s, std::size_t count, std::uint64_t seed,
                const SampleSink& sink, std::size_t burn_in = defaults::burn_in,
                std::span<const double> x0 = {}, unsigned chains = 1,
                unsigned threads = 1);

// Materialized run: coordinates flattened row-major, one map index per point.
struct SampleRun {
  std::uint64_t seed = 0;
  int ambient_dim = 0;
  std::vector<double> coords;
  std::vector<SamplePoint> meta;

  std::size_t count() const { return meta.size(); }
  std::span<const double> point(std::size_t i) const {
    return {coords.data() + i * ambient_dim, static_cast<std::size_t>(ambient_dim)};
  }
};

SampleRun run(const IFSSystem& s, std::size_t count, std::uint64_t seed,
              std::size_t burn_in = defaults::burn_in,
              std::span<const double> x0 = {}, unsigned chains = 1,
              unsigned threads = 1);

// Points with lo < x[axis] < hi, that coordinate dropped. axis is 0-based.
std::vector<std::vector<double>> slice_project(const SampleRun& run, int axis,
                                               double lo, double hi);

}  // namespace qfract::ifs
