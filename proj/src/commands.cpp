#include "qfract/commands.hpp"

#include <cmath>
#include <filesystem>
#include <stdexcept>

#include <json.hpp>

#include "qfract/fracdim.hpp"
#include "qfract/ifs.hpp"
#include "qfract/io.hpp"
#include "qfract/markov.hpp"
#include "qfract/polytopes.hpp"

namespace qfract::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string manifest_path_for(const std::string& out) {
  return out + ".manifest.json";
}

void write_manifest(const std::string& path, const std::string& command,
                    const json& params, const std::vector<std::string>& outputs,
                    const json& extra = json::object()) {
  json m;
  m["schema"] = 1;
  m["tool"] = "qfract";
  m["version"] = tool_version;
  m["command"] = command;
  m["timestamp_utc"] = io::utc_timestamp();
  m["params"] = params;
  json outs = json::array();
  for (const auto& o : outputs) outs.push_back(fs::path(o).filename().string());
  m["outputs"] = outs;
  for (auto it = extra.begin(); it != extra.end(); ++it) m[it.key()] = it.value();
  io::write_file(path, m.dump(2) + "\n");
}

std::vector<std::string> coord_header(int ambient_dim) {
  std::vector<std::string> h;
  for (int i = 1; i <= ambient_dim; ++i) h.push_back("x" + std::to_string(i));
  return h;
}

}  // namespace

std::string polytope_list_text() {
  std::string out;
  for (const auto& n : polytopes::shipped_names()) out += n + "\n";
  return out;
}

CommandResult cmd_polytope_show(const std::string& name, const std::string& out_csv) {
  polytopes::VertexConfiguration c = polytopes::by_name(name);
  io::CsvTable t;
  t.header = coord_header(c.ambient_dim());
  for (const auto& v : c.vertices) t.rows.push_back(v);
  CommandResult res;
  if (out_csv.empty()) {
    res.summary = io::csv_to_string(t);
    return res;
  }
  io::write_csv(out_csv, t);
  res.outputs.push_back(out_csv);
  res.manifest_path = manifest_path_for(out_csv);
  write_manifest(res.manifest_path, "polytope",
                 json{{"name", name}, {"out", fs::path(out_csv).filename().string()}},
                 res.outputs);
  res.summary = c.name + ": " + std::to_string(c.count()) + " vertices";
  return res;
}

CommandResult cmd_sample(const SampleParams& p) {
  if (p.points == 0) throw UsageError("sample: --points must be >= 1");
  if (p.out.empty()) throw UsageError("sample: --out is required");
  polytopes::VertexConfiguration config = polytopes::by_name(p.polytope);
  ifs::IFSSystem system(std::move(config), p.alpha);

  io::CsvTable t;
  t.header = {"chain", "step", "map_index"};
  for (const auto& h : coord_header(system.ambient_dim())) t.header.push_back(h);

  std::string body;
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    if (i) body += ',';
    body += t.header[i];
  }
  body += '\n';

  std::uint64_t written = 0;
  ifs::run_stream(
      system, p.points, p.seed,
      [&](const ifs::SamplePoint& sp, std::span<const double> x) {
        if (p.slice) {
          double v = x[p.slice->axis];
          if (!(v > p.slice->lo && v < p.slice->hi)) return;
        }
        body += std::to_string(sp.chain);
        body += ',';
        body += std::to_string(sp.step);
        body += ',';
        body += std::to_string(sp.map_index);
        for (double v : x) {
          body += ',';
          body += io::format_double(v);
        }
        body += '\n';
        ++written;
      },
      p.burn_in, {}, p.chains, p.threads);
  io::write_file(p.out, body);

  CommandResult res;
  res.outputs.push_back(p.out);
  res.manifest_path = manifest_path_for(p.out);
  json params{{"polytope", p.polytope}, {"alpha", p.alpha},
              {"points", p.points},     {"seed", p.seed},
              {"burn_in", p.burn_in},   {"chains", p.chains},
              {"out", fs::path(p.out).filename().string()}};
  if (p.slice)
    params["slice"] = {{"axis", p.slice->axis + 1},
                       {"lo", p.slice->lo},
                       {"hi", p.slice->hi}};
  write_manifest(res.manifest_path, "sample", params, res.outputs);
  res.summary = "wrote " + std::to_string(written) + " of " +
                std::to_string(p.points) + " sampled points to " + p.out;
  return res;
}

namespace {

markov::DensitySurface build_surface(const ifs::IFSSystem& system,
                                     const SurfaceSpec& spec,
                                     std::vector<std::size_t> grid) {
  const int n = system.sphere_dim();
  if (spec.kind == "sphere") {
    if (grid.empty()) {
      if (n == 1) grid = {defaults::grid_s1};
      else if (n == 2) grid = {defaults::grid_s2_lat, defaults::grid_s2_lon};
      else grid = {defaults::grid_s3, defaults::grid_s3, defaults::grid_s3};
    }
    return markov::make_sphere_surface(n, grid);
  }

  markov::DensitySurface s;
  s.kind = markov::ChartKind::points;
  s.ambient_dim = system.ambient_dim();
  if (spec.kind == "slice") {
    if (n < 2) throw UsageError("density: slice surfaces need S^2 or S^3");
    if (spec.axis < 1 || spec.axis > system.ambient_dim())
      throw UsageError("density: slice axis out of range");
    if (std::fabs(spec.value) >= 1.0)
      throw UsageError("density: slice value must lie inside (-1, 1)");
    double rad = std::sqrt(1.0 - spec.value * spec.value);
    if (n == 3) {
      if (grid.empty()) grid = {256, 512};
      std::size_t nth = grid[0], nph = grid.size() > 1 ? grid[1] : grid[0];
      constexpr double pi = 3.14159265358979323846;
      for (std::size_t i = 0; i < nth; ++i) {
        double th = pi * (static_cast<double>(i) + 0.5) / static_cast<double>(nth);
        for (std::size_t j = 0; j < nph; ++j) {
          double ph = 2.0 * pi * static_cast<double>(j) / static_cast<double>(nph);
          double sub[3] = {rad * std::sin(th) * std::cos(ph),
                           rad * std::sin(th) * std::sin(ph), rad * std::cos(th)};
          int si = 0;
          for (int c = 0; c < 4; ++c)
            s.points.push_back(c == spec.axis - 1 ? spec.value : sub[si++]);
        }
      }
      s.rows = nth;
      s.cols = nph;
    } else {
      if (grid.empty()) grid = {2048};
      std::size_t m = grid[0];
      constexpr double pi = 3.14159265358979323846;
      for (std::size_t j = 0; j < m; ++j) {
        double t = 2.0 * pi * static_cast<double>(j) / static_cast<double>(m);
        double sub[2] = {rad * std::cos(t), rad * std::sin(t)};
        int si = 0;
        for (int c = 0; c < 3; ++c)
          s.points.push_back(c == spec.axis - 1 ? spec.value : sub[si++]);
      }
      s.rows = 1;
      s.cols = m;
    }
  } else if (spec.kind == "torus") {
    if (n != 3) throw UsageError("density: torus surfaces need S^3");
    if (grid.empty()) grid = {256, 256};
    std::size_t nu = grid[0], nv = grid.size() > 1 ? grid[1] : grid[0];
    auto radii = polytopes::torus_radii(polytopes::torus_family_from_string(spec.family));
    Matrix rot = polytopes::coxeter_alignment();
    constexpr double pi = 3.14159265358979323846;
    for (std::size_t i = 0; i < nu; ++i) {
      double u = 2.0 * pi * static_cast<double>(i) / static_cast<double>(nu);
      for (std::size_t j = 0; j < nv; ++j) {
        double v = 2.0 * pi * static_cast<double>(j) / static_cast<double>(nv);
        double raw[4] = {radii[0] * std::cos(u), radii[0] * std::sin(u),
                         radii[1] * std::cos(v), radii[1] * std::sin(v)};
        for (int r = 0; r < 4; ++r) {
          double acc = 0.0;
          for (int c = 0; c < 4; ++c) acc += rot(r, c) * raw[c];
          s.points.push_back(acc);
        }
      }
    }
    s.rows = nu;
    s.cols = nv;
  } else {
    throw UsageError("density: unknown surface kind '" + spec.kind + "'");
  }
  s.values.assign(s.count(), 1.0);
  return s;
}

}  // namespace

CommandResult cmd_density(const DensityParams& p) {
  if (p.out.empty() && p.image.empty())
    throw UsageError("density: need --out and/or --image");
  if (p.depth < 0) throw UsageError("density: --depth must be >= 0");
  polytopes::VertexConfiguration config = polytopes::by_name(p.polytope);
  ifs::IFSSystem system(std::move(config), p.alpha);
  markov::DensitySurface surface = build_surface(system, p.surface, p.grid);
  surface.config_name = system.config().name;
  surface.alpha = p.alpha;

  if (surface.kind != markov::ChartKind::points) {
    for (int k = 0; k < p.depth; ++k)
      surface = markov::density_grid_iterate(system, surface, p.threads);
  } else {
    // Point-list surfaces cannot be iterated in place. Use the exact
    // recursion when it is affordable, otherwise evaluate a full-sphere grid
    // and interpolate onto the surface.
    double cost = std::pow(static_cast<double>(system.map_count()), p.depth) *
                  static_cast<double>(surface.count());
    if (cost <= defaults::density_cost_cap) {
      surface.values = markov::density_exact_batch(system, surface, p.depth, p.threads);
    } else {
      markov::DensitySurface full =
          markov::make_sphere_surface(system.sphere_dim(),
                                      {defaults::grid_s3, defaults::grid_s3,
                                       defaults::grid_s3});
      for (int k = 0; k < p.depth; ++k)
        full = markov::density_grid_iterate(system, full, p.threads);
      for (std::size_t i = 0; i < surface.count(); ++i)
        surface.values[i] = markov::interpolate(full, surface.point(i));
    }
    surface.level = p.depth;
  }

  CommandResult res;
  if (!p.out.empty()) {
    io::CsvTable t;
    t.header = coord_header(surface.ambient_dim);
    t.header.push_back("weight");
    t.header.push_back("f");
    for (std::size_t i = 0; i < surface.count(); ++i) {
      std::vector<double> row(surface.point(i).begin(), surface.point(i).end());
      row.push_back(surface.weights.empty() ? 0.0 : surface.weights[i]);
      row.push_back(surface.values[i]);
      t.rows.push_back(std::move(row));
    }
    io::write_csv(p.out, t);
    res.outputs.push_back(p.out);
  }
  json extra = json::object();
  if (!p.image.empty()) {
    double nmin = 0.0, nmax = 0.0;
    std::vector<std::uint16_t> px = io::normalize_log_image(surface.values, nmin, nmax);
    std::size_t rows = surface.rows, cols = surface.cols;
    if (surface.kind == markov::ChartKind::s1) {
      // Render the circle density as a filled graph of log10(f+1).
      std::size_t h = 512, w = std::min<std::size_t>(surface.count(), 2048);
      std::vector<std::uint16_t> plot(h * w, 0);
      for (std::size_t cx = 0; cx < w; ++cx) {
        std::size_t src = cx * surface.count() / w;
        std::size_t top = static_cast<std::size_t>(
            static_cast<double>(px[src]) / 65535.0 * static_cast<double>(h - 1));
        for (std::size_t y = 0; y <= top; ++y) plot[(h - 1 - y) * w + cx] = 65535;
      }
      io::write_pgm16(p.image, h, w, plot);
    } else {
      io::write_pgm16(p.image, rows, cols, px);
    }
    res.outputs.push_back(p.image);
    extra["image_normalization"] = {{"min", nmin}, {"max", nmax}};
  }

  res.manifest_path = manifest_path_for(p.out.empty() ? p.image : p.out);
  json params{{"polytope", p.polytope},
              {"alpha", p.alpha},
              {"depth", p.depth},
              {"surface",
               {{"kind", p.surface.kind},
                {"axis", p.surface.axis},
                {"value", p.surface.value},
                {"family", p.surface.family}}},
              {"grid", p.grid}};
  if (!p.out.empty()) params["out"] = fs::path(p.out).filename().string();
  if (!p.image.empty()) params["image"] = fs::path(p.image).filename().string();
  write_manifest(res.manifest_path, "density", params, res.outputs, extra);
  res.summary = "level " + std::to_string(p.depth) + " density on " +
                std::to_string(surface.count()) + " points -> " +
                (p.out.empty() ? p.image : p.out);
  return res;
}

CommandResult cmd_dim(const DimParams& p) {
  if (p.input.empty()) throw UsageError("dim: --input is required");
  io::CsvTable t = io::read_csv(p.input);
  // Use the coordinate columns (x1, x2, ...) when present; otherwise every column.
  std::vector<std::size_t> cols;
  for (std::size_t i = 0; i < t.header.size(); ++i)
    if (!t.header[i].empty() && t.header[i][0] == 'x') cols.push_back(i);
  if (cols.empty())
    for (std::size_t i = 0; i < t.header.size(); ++i) cols.push_back(i);
  const int dim = static_cast<int>(cols.size());

  std::vector<double> pts;
  pts.reserve(t.rows.size() * cols.size());
  for (const auto& row : t.rows)
    for (std::size_t c : cols) pts.push_back(row[c]);

  std::size_t m = t.rows.size();
  if (p.subsample && p.subsample < m) {
    // Deterministic reservoir-free subsample: take a seeded random subset.
    Rng rng(p.seed, 0x73756273ULL);
    std::vector<double> picked;
    picked.reserve(p.subsample * dim);
    // Floyd-style selection over indices.
    std::vector<std::uint8_t> used(m, 0);
    std::uint64_t need = p.subsample;
    for (std::uint64_t i = m - need; i < m; ++i) {
      std::uint64_t j = rng.next_below(i + 1);
      std::uint64_t pick = used[j] ? i : j;
      used[pick] = 1;
    }
    for (std::size_t i = 0; i < m; ++i)
      if (used[i])
        for (int k = 0; k < dim; ++k) picked.push_back(pts[i * dim + k]);
    pts = std::move(picked);
    m = p.subsample;
  }

  double diam = fracdim::diameter_upper_bound(pts, dim);
  double rmin = p.rmin > 0.0 ? p.rmin : defaults::fit_rmin_frac * diam;
  double rmax = p.rmax > 0.0 ? p.rmax : defaults::fit_rmax_frac * diam;
  fracdim::CorrelationCurve curve = fracdim::correlation_integral(
      pts, dim, fracdim::log_radii(rmin, rmax, p.bins),
      fracdim::CorrelationOptions{0, false, p.seed});
  fracdim::DimensionFit fit = fracdim::fit_dimension(curve, rmin, rmax);

  CommandResult res;
  json result{{"dimension", fit.dimension},
              {"intercept", fit.intercept},
              {"rms_residual", fit.rms_residual},
              {"staircase", fit.staircase},
              {"rmin", fit.rmin_used},
              {"rmax", fit.rmax_used},
              {"radii_used", fit.radii_used},
              {"points", m},
              {"pairs_counted", curve.pairs_counted},
              {"sampled_pairs", curve.sampled}};
  res.summary = result.dump(2);

  if (!p.out.empty()) {
    io::CsvTable ct;
    ct.header = {"r", "C"};
    for (std::size_t i = 0; i < curve.radii.size(); ++i)
      ct.rows.push_back({curve.radii[i], curve.c[i]});
    io::write_csv(p.out, ct);
    res.outputs.push_back(p.out);
  }
  if (!p.json_out.empty()) {
    io::write_file(p.json_out, result.dump(2) + "\n");
    res.outputs.push_back(p.json_out);
  }
  if (!res.outputs.empty()) {
    res.manifest_path = manifest_path_for(res.outputs.front());
    write_manifest(res.manifest_path, "dim",
                   json{{"input", fs::path(p.input).filename().string()},
                        {"rmin", p.rmin},
                        {"rmax", p.rmax},
                        {"bins", p.bins},
                        {"subsample", p.subsample},
                        {"seed", p.seed}},
                   res.outputs, json{{"result", result}});
  }
  return res;
}

std::vector<std::string> replay_manifest(const std::string& manifest_path,
                                         const std::string& scratch_dir) {
  json m = json::parse(io::read_file(manifest_path));
  fs::path orig_dir = fs::path(manifest_path).parent_path();
  fs::create_directories(scratch_dir);
  const std::string command = m.at("command");
  const json& params = m.at("params");

  auto scratch = [&](const std::string& name) {
    return (fs::path(scratch_dir) / name).string();
  };

  if (command == "sample") {
    SampleParams p;
    p.polytope = params.at("polytope");
    p.alpha = params.at("alpha");
    p.points = params.at("points");
    p.seed = params.at("seed");
    p.burn_in = params.at("burn_in");
    p.chains = params.at("chains");
    if (params.contains("slice")) {
      SliceSpec s;
      s.axis = params["slice"].at("axis").get<int>() - 1;
      s.lo = params["slice"].at("lo");
      s.hi = params["slice"].at("hi");
      p.slice = s;
    }
    p.out = scratch(params.at("out"));
    cmd_sample(p);
  } else if (command == "density") {
    DensityParams p;
    p.polytope = params.at("polytope");
    p.alpha = params.at("alpha");
    p.depth = params.at("depth");
    p.surface.kind = params.at("surface").at("kind");
    p.surface.axis = params.at("surface").at("axis");
    p.surface.value = params.at("surface").at("value");
    p.surface.family = params.at("surface").at("family");
    p.grid = params.at("grid").get<std::vector<std::size_t>>();
    if (params.contains("out")) p.out = scratch(params.at("out"));
    if (params.contains("image")) p.image = scratch(params.at("image"));
    cmd_density(p);
  } else if (command == "polytope") {
    cmd_polytope_show(params.at("name"), scratch(params.at("out")));
  } else {
    throw UsageError("replay: command '" + command + "' is not replayable");
  }

  std::vector<std::string> mismatched;
  for (const auto& out : m.at("outputs")) {
    std::string name = out.get<std::string>();
    std::string orig = (orig_dir / name).string();
    if (io::read_file(orig) != io::read_file(scratch(name)))
      mismatched.push_back(name);
  }
  return mismatched;
}

}  // namespace qfract::cli
