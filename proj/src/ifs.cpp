#include "qfract/ifs.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

#include "qfract/conformal.hpp"

namespace qfract::ifs {

IFSSystem::IFSSystem(polytopes::VertexConfiguration config, double alpha)
    : config_(std::move(config)), alpha_(alpha) {
  if (alpha <= 0.0 || alpha >= 1.0)
    throw std::invalid_argument("IFSSystem: alpha must be in (0,1)");
  auto rep = polytopes::check_balanced(config_);
  if (!rep.balanced)
    throw std::invalid_argument("IFSSystem: configuration is not balanced (|sum| = " +
                                std::to_string(rep.residual) + ")");
  for (const auto& v : config_.vertices) {
    double n2 = 0.0;
    for (double c : v) n2 += c * c;
    if (std::fabs(std::sqrt(n2) - 1.0) > tol::unit_norm)
      throw std::invalid_argument("IFSSystem: vertices must be unit vectors");
  }
}

void probabilities(const IFSSystem& s, std::span<const double> x,
                   std::span<double> out) {
  if (out.size() != s.map_count())
    throw std::invalid_argument("probabilities: output size mismatch");
  const double a = s.alpha();
  const double inv_z = 1.0 / (static_cast<double>(s.map_count()) * (1.0 + a * a));
  for (std::size_t i = 0; i < s.map_count(); ++i) {
    double nx = conformal::detail::dot(s.axis(i), x);
    out[i] = (1.0 + a * a + 2.0 * a * nx) * inv_z;
  }
}

std::vector<double> probabilities(const IFSSystem& s, std::span<const double> x) {
  std::vector<double> p(s.map_count());
  probabilities(s, x, p);
  return p;
}

namespace {

void renormalize(std::span<double> x) {
  double n2 = 0.0;
  for (double v : x) n2 += v * v;
  double inv = 1.0 / std::sqrt(n2);
  for (double& v : x) v *= inv;
}

int select_and_apply(const IFSSystem& s, std::span<double> x, Rng& rng,
                     std::span<double> weights) {
  probabilities(s, x, weights);
  double total = 0.0;
  for (double w : weights) total += w;
  double u = rng.next_double() * total;
  std::size_t idx = 0;
  double acc = 0.0;
  for (; idx < weights.size(); ++idx) {
    acc += weights[idx];
    if (u < acc) break;
  }
  if (idx == weights.size()) idx = weights.size() - 1;  // u == total edge
  conformal::detail::moebius_apply_raw(s.alpha(), s.axis(idx), x, x);
  renormalize(x);
  return static_cast<int>(idx);
}

}  // namespace

int step(const IFSSystem& s, std::span<double> x, Rng& rng) {
  std::vector<double> weights(s.map_count());
  return select_and_apply(s, x, rng, weights);
}

void run_stream(const IFSSystem& s, std::size_t count, std::uint64_t seed,
                const SampleSink& sink, std::size_t burn_in,
                std::span<const double> x0, unsigned chains, unsigned threads) {
  if (count == 0) throw std::invalid_argument("run_stream: count must be >= 1");
  if (chains == 0) chains = 1;
  const std::size_t d = static_cast<std::size_t>(s.ambient_dim());
  std::vector<double> start(d);
  if (x0.empty()) {
    for (std::size_t i = 0; i < d; ++i) start[i] = s.axis(0)[i];
  } else {
    if (x0.size() != d)
      throw std::invalid_argument("run_stream: x0 dimension mismatch");
    for (std::size_t i = 0; i < d; ++i) start[i] = x0[i];
    renormalize(start);
  }

  // Per-chain point budget: near-even split, remainder to the low chains.
  std::vector<std::size_t> budget(chains, count / chains);
  for (std::size_t c = 0; c < count % chains; ++c) ++budget[c];

  auto run_chain = [&](unsigned chain, const SampleSink& emit) {
    Rng rng(seed, chain);
    std::vector<double> x = start;
    std::vector<double> weights(s.map_count());
    for (std::size_t k = 0; k < burn_in; ++k) select_and_apply(s, x, rng, weights);
    for (std::size_t k = 0; k < budget[chain]; ++k) {
      int idx = select_and_apply(s, x, rng, weights);
      emit(SamplePoint{chain, k, static_cast<std::uint32_t>(idx)}, x);
    }
  };

  if (threads <= 1 || chains == 1) {
    // Sequential execution streams straight through; no buffering.
    for (unsigned c = 0; c < chains; ++c) run_chain(c, sink);
    return;
  }

  // Parallel chains buffer their output; emission is serialized in
  // (chain, step) order regardless of scheduling, so the bytes written
  // downstream do not depend on the worker count.
  struct ChainOut {
    std::vector<double> coords;
    std::vector<std::uint32_t> maps;
  };
  std::vector<ChainOut> outs(chains);
  std::vector<std::thread> pool;
  unsigned active = std::min(threads, chains);
  for (unsigned t = 0; t < active; ++t)
    pool.emplace_back([&, t] {
      for (unsigned c = t; c < chains; c += active) {
        outs[c].coords.reserve(budget[c] * d);
        outs[c].maps.reserve(budget[c]);
        run_chain(c, [&](const SamplePoint& p, std::span<const double> x) {
          outs[c].maps.push_back(p.map_index);
          outs[c].coords.insert(outs[c].coords.end(), x.begin(), x.end());
        });
      }
    });
  for (auto& th : pool) th.join();

  for (unsigned c = 0; c < chains; ++c) {
    const ChainOut& out = outs[c];
    for (std::size_t k = 0; k < out.maps.size(); ++k) {
      SamplePoint p{c, k, out.maps[k]};
      sink(p, {out.coords.data() + k * d, d});
    }
  }
}

SampleRun run(const IFSSystem& s, std::size_t count, std::uint64_t seed,
              std::size_t burn_in, std::span<const double> x0, unsigned chains,
              unsigned threads) {
  SampleRun r;
  r.seed = seed;
  r.ambient_dim = s.ambient_dim();
  r.coords.reserve(count * s.ambient_dim());
  r.meta.reserve(count);
  run_stream(
      s, count, seed,
      [&](const SamplePoint& p, std::span<const double> x) {
        r.meta.push_back(p);
        r.coords.insert(r.coords.end(), x.begin(), x.end());
      },
      burn_in, x0, chains, threads);
  return r;
}

std::vector<std::vector<double>> slice_project(const SampleRun& run, int axis,
                                               double lo, double hi) {
  if (axis < 0 || axis >= run.ambient_dim)
    throw std::invalid_argument("slice_project: axis out of range");
  if (run.ambient_dim < 2)
    throw std::invalid_argument("slice_project: need ambient dimension >= 2");
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < run.count(); ++i) {
    std::span<const double> x = run.point(i);
    if (x[axis] > lo && x[axis] < hi) {
      std::vector<double> proj;
      proj.reserve(run.ambient_dim - 1);
      for (int j = 0; j < run.ambient_dim; ++j)
        if (j != axis) proj.push_back(x[j]);
      out.push_back(std::move(proj));
    }
  }
  return out;
}

}  // namespace qfract::ifs
