#include "invsub/tools/experiments.hpp"

#include "invsub/errors.hpp"
#include "invsub/montecarlo.hpp"
#include "invsub/paths.hpp"
#include "invsub/processes.hpp"
#include "invsub/tools/oracle.hpp"
#include "invsub/tools/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>

namespace invsub::tools {

namespace {

using processes::ClockKind;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ClockKind parse_clock(const std::string& s) {
  if (s == "inverse") return ClockKind::Inverse;
  if (s == "undershoot") return ClockKind::Undershoot;
  if (s == "overshoot") return ClockKind::Overshoot;
  throw DomainError("clock must be inverse, undershoot or overshoot, got '" + s + "'");
}

std::size_t count(const ExperimentConfig& cfg, const std::string& key, std::int64_t fallback, std::int64_t min = 0) {
  const auto v = cfg.integer(key, fallback);
  if (v < min) throw DomainError("config key '" + key + "' must be at least " + std::to_string(min));
  return static_cast<std::size_t>(v);
}

std::optional<processes::FellerSpec> process_spec(const ExperimentConfig& cfg) {
  const std::string p = cfg.text("process", "none");
  if (p == "none") return std::nullopt;
  const int d = static_cast<int>(cfg.integer("dimension", 1));
  processes::FellerSpec spec;
  if (p == "brownian") {
    spec = processes::FellerSpec::brownian(d);
  } else if (p == "isotropic_stable") {
    spec = processes::FellerSpec::isotropic_stable(d, cfg.number("alpha_M", 1.5));
  } else if (p == "ou") {
    spec = processes::FellerSpec::ornstein_uhlenbeck(cfg.number("ou_rate", 0.5), cfg.number("ou_mean", 0.25),
                                                     cfg.number("ou_vol", 0.5), cfg.number("x0", 0.0));
  } else {
    throw DomainError("process must be none, brownian, isotropic_stable or ou, got '" + p + "'");
  }
  spec.validate();
  return spec;
}

std::vector<double> clock_values(const std::vector<paths::TripletState>& path, std::span<const double> grid,
                                 ClockKind kind) {
  std::vector<double> T(grid.size());
  double lo = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double v = 0.0;
    switch (kind) {
      case ClockKind::Inverse: v = path[i].x; break;
      case ClockKind::Undershoot: v = grid[i] - path[i].g; break;
      case ClockKind::Overshoot: v = grid[i] + path[i].R; break;
    }
    T[i] = lo = std::max(v, lo);
  }
  return T;
}

nlohmann::json fit_json(const stats::LinearFit& f) {
  return {{"slope", f.slope}, {"intercept", f.intercept}, {"slope_se", f.slope_se}, {"residuals", f.residuals}};
}

stats::LinearFit log_log_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() < 2) return {kNaN, kNaN, kNaN, {}};
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  return stats::linear_fit(lx, ly);
}

// dX = X/(1+s) ds + theta X dW with exact solution x0 (1+s) exp(theta W_s - theta^2 s/2).
sde::StrongErrorSample linear_growth_replica(double theta, double x0, const levy::LevyModel& levy, ClockKind kind,
                                             std::span<const double> grid, double h, Rng& rng) {
  Rng clock_rng = make_stream(rng(), 0);
  Rng noise_rng = make_stream(rng(), 1);
  const auto T = processes::sample_clock(levy, kind, grid, clock_rng);
  const auto mesh = sde::merged_grid(h, T);
  double w = 0.0, scheme = x0;
  sde::StrongErrorSample best{grid.empty() ? 0.0 : grid[0], 0.0};
  std::size_t j = 0;
  auto record = [&](std::size_t k) {
    const double s = mesh[k];
    const double exact = x0 * (1.0 + s) * std::exp(theta * w - 0.5 * theta * theta * s);
    const double err = (exact - scheme) * (exact - scheme);
    for (; j < T.size() && T[j] <= s; ++j)
      if (err > best.max_sq_error) best = {grid[j], err};
  };
  record(0);
  for (std::size_t k = 0; k + 1 < mesh.size(); ++k) {
    const double dt = mesh[k + 1] - mesh[k];
    const double dW = std::sqrt(dt) * normal(noise_rng);
    scheme += scheme / (1.0 + mesh[k]) * dt + theta * scheme * dW;
    w += dW;
    record(k + 1);
  }
  return best;
}

template <class F>
std::uint64_t elapsed_ns(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  const auto stop = std::chrono::steady_clock::now();
  return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count());
}

}  // namespace

std::vector<std::filesystem::path> write_output(const ExperimentOutput& out, const ExperimentConfig& cfg) {
  const auto prov = provenance_of(cfg);
  std::vector<std::filesystem::path> files;
  for (const auto& [table, schema] : out.tables)
    files.push_back(write_table(table, schema, prov, cfg.out_dir, cfg.format));
  files.push_back(write_report(cfg.experiment + "_summary", out.summary, prov, cfg.out_dir));
  return files;
}

// ---------------------------------------------------------------- paths

ExperimentOutput compute_paths(const ExperimentConfig& cfg) {
  const auto model = cfg.model(0.75, 1.0, kInf);
  const double t_end = cfg.number("t_end", 2.5);
  if (!(t_end > 0.0)) throw DomainError("t_end must be positive");
  const auto steps = count(cfg, "steps", 1000);
  const auto replicas = count(cfg, "replicas", 1, 1);
  const bool long_format = cfg.flag("long_format", false);
  const auto kind = parse_clock(cfg.text("clock", "inverse"));
  const auto spec = process_spec(cfg);
  const auto grid = steps == 0 ? std::vector<double>{} : paths::uniform_grid(t_end, steps);
  const auto seed = cfg.require_seed();

  std::vector<std::string> header = kPathsHeader;
  if (spec) {
    header.push_back("T");
    for (int k = 1; k <= spec->d; ++k) header.push_back("M_" + std::to_string(k));
  }
  if (long_format) header.insert(header.begin(), "replica");

  using Rows = std::vector<std::vector<Cell>>;
  const auto per_replica = parallel_map<Rows>(replicas, seed, cfg.threads, [&](std::size_t i, Rng& rng) {
    Rng clock_rng = make_stream(rng(), 0);
    Rng proc_rng = make_stream(rng(), 1);
    const auto path = paths::sample_triplet_path({}, 0.0, grid, model, clock_rng);
    std::vector<double> T;
    std::vector<Eigen::VectorXd> M;
    if (spec) {
      T = clock_values(path, grid, kind);
      M = processes::sample_feller_at(*spec, T, proc_rng);
    }
    Rows rows;
    rows.reserve(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
      std::vector<Cell> row;
      if (long_format) row.emplace_back(static_cast<std::int64_t>(i));
      row.insert(row.end(), {grid[k], path[k].x, path[k].g, path[k].R});
      if (spec) {
        row.emplace_back(T[k]);
        for (int c = 0; c < spec->d; ++c) row.emplace_back(M[k](c));
      }
      rows.push_back(std::move(row));
    }
    return rows;
  });

  ExperimentOutput out;
  if (long_format) {
    Table t{"paths", header, {}};
    for (const auto& rows : per_replica) t.rows.insert(t.rows.end(), rows.begin(), rows.end());
    out.tables.emplace_back(std::move(t), header);
  } else {
    for (std::size_t i = 0; i < replicas; ++i) {
      const std::string name = replicas == 1 ? "paths" : "paths_" + std::to_string(i);
      out.tables.emplace_back(Table{name, header, per_replica[i]}, header);
    }
  }
  out.summary = {{"model", model.describe()}, {"t_end", t_end}, {"rows_per_replica", grid.size()},
                 {"replicas", replicas}, {"clock", cfg.text("clock", "inverse")},
                 {"process", cfg.text("process", "none")}};
  return out;
}

// ---------------------------------------------------------------- web

WebReport compute_web_report(const ExperimentConfig& cfg) {
  const auto model = cfg.model(0.5, 0.0, kInf);
  if (cfg.text("clock", "inverse") != "inverse") throw DomainError("web supports the inverse clock only");
  const std::string process = cfg.text("process", "time_changed_brownian");
  if (process != "brownian" && process != "time_changed_brownian")
    throw DomainError("web process must be brownian or time_changed_brownian, got '" + process + "'");
  const bool time_changed = process == "time_changed_brownian";
  const double t = cfg.number("t", 1.0);
  if (!(t > 0.0)) throw DomainError("lag t must be positive");
  const auto Ts = cfg.numbers("T", {10, 20, 50, 100, 200, 500, 1000, 2000, 5000, 10000});
  if (Ts.empty()) throw DomainError("T list is empty");
  const auto replicas = count(cfg, "replicas", 1000, 2);
  const double conf = cfg.number("conf_level", 0.95);
  const auto seed = cfg.require_seed();

  auto windows = [&](double T, double lag) -> long {
    const double n = T / lag;
    const long k = std::lround(n);
    if (k < 1 || std::fabs(n - static_cast<double>(k)) > 1e-9 * n)
      throw DomainError("grid error: T = " + std::to_string(T) + " is not an integer multiple of t = " +
                        std::to_string(lag));
    return k;
  };
  struct CellDef {
    long mult;  // lag = mult * t
    long n;     // windows
  };
  std::vector<CellDef> defs;
  long n_max = 0;
  for (double T : Ts) {
    defs.push_back({1, windows(T, t)});
    n_max = std::max(n_max, defs.back().n);
  }
  const double T_max = *std::max_element(Ts.begin(), Ts.end());
  for (double m : cfg.numbers("lag_multipliers", {1, 2, 5, 10})) {
    const long k = std::lround(m);
    if (k < 1 || static_cast<double>(k) != m) throw DomainError("lag_multipliers must be positive integers");
    if (k > 1 && n_max % k == 0) defs.push_back({k, n_max / k});
  }
  WebReport rep;
  rep.msd_time = cfg.number("msd_time", t);
  const long msd_index = windows(rep.msd_time, t);
  n_max = std::max(n_max, msd_index);

  std::vector<double> grid(static_cast<std::size_t>(n_max));
  for (long i = 0; i < n_max; ++i) grid[static_cast<std::size_t>(i)] = t * static_cast<double>(i + 1);

  const auto values = parallel_map<std::vector<double>>(replicas, seed, cfg.threads, [&](std::size_t, Rng& rng) {
    Rng clock_rng = make_stream(rng(), 0);
    Rng bm_rng = make_stream(rng(), 1);
    std::vector<double> b(grid.size() + 1, 0.0);
    if (time_changed) {
      const auto path = paths::sample_lifetime_path({}, 0.0, grid, model, clock_rng);
      double prev = 0.0;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const double dl = std::max(path[i].x - prev, 0.0);
        prev = std::max(prev, path[i].x);
        b[i + 1] = b[i] + std::sqrt(dl) * normal(bm_rng);
      }
    } else {
      for (std::size_t i = 0; i < grid.size(); ++i) b[i + 1] = b[i] + std::sqrt(t) * normal(bm_rng);
    }
    std::vector<double> out;
    out.reserve(defs.size() + 1);
    for (const auto& d : defs) {
      double s = 0.0;
      for (long i = 0; i < d.n; ++i) {
        const double inc = b[static_cast<std::size_t>((i + 1) * d.mult)] - b[static_cast<std::size_t>(i * d.mult)];
        s += inc * inc;
      }
      out.push_back(s / static_cast<double>(d.n));
    }
    out.push_back(b[static_cast<std::size_t>(msd_index)] * b[static_cast<std::size_t>(msd_index)]);
    return out;
  });

  rep.samples.assign(defs.size(), std::vector<double>(replicas));
  std::vector<double> msd(replicas);
  for (std::size_t r = 0; r < replicas; ++r) {
    for (std::size_t c = 0; c < defs.size(); ++c) rep.samples[c][r] = values[r][c];
    msd[r] = values[r].back();
  }
  for (std::size_t c = 0; c < defs.size(); ++c) {
    const auto e = montecarlo::summarize(rep.samples[c], conf);
    const double lag = t * static_cast<double>(defs[c].mult);
    rep.cells.push_back({lag, lag * static_cast<double>(defs[c].n), replicas, e.mean, e.mean - e.ci_halfwidth,
                         e.mean + e.ci_halfwidth});
  }
  const auto m = montecarlo::summarize(msd, conf);
  rep.msd_mean = m.mean;
  rep.msd_ci = m.ci_halfwidth;
  rep.msd_n = replicas;

  // exponent in T at the base lag, smallest decade of T excluded
  const double T_min = *std::min_element(Ts.begin(), Ts.end());
  std::vector<double> xs, ys;
  for (std::size_t c = 0; c < defs.size(); ++c)
    if (defs[c].mult == 1 && rep.cells[c].T >= 10.0 * T_min) {
      xs.push_back(rep.cells[c].T);
      ys.push_back(rep.cells[c].mean);
    }
  rep.fit_T = log_log_fit(xs, ys);
  rep.exponent_T = rep.fit_T.slope;
  rep.C_alpha = std::exp(rep.fit_T.intercept) / t;

  xs.clear();
  ys.clear();
  for (std::size_t c = 0; c < defs.size(); ++c)
    if (std::fabs(rep.cells[c].T - T_max) <= 1e-9 * T_max) {
      xs.push_back(rep.cells[c].t);
      ys.push_back(rep.cells[c].mean);
    }
  rep.fit_t = log_log_fit(xs, ys);
  rep.slope_t = rep.fit_t.slope;
  return rep;
}

ExperimentOutput compute_web(const ExperimentConfig& cfg) {
  const auto rep = compute_web_report(cfg);
  Table samples{"web", kWebHeader, {}};
  Table summary{"web_means", kWebSummaryHeader, {}};
  nlohmann::json cells = nlohmann::json::array();
  for (std::size_t c = 0; c < rep.cells.size(); ++c) {
    const auto& w = rep.cells[c];
    for (std::size_t r = 0; r < rep.samples[c].size(); ++r)
      samples.rows.push_back({w.t, w.T, static_cast<std::int64_t>(r), rep.samples[c][r]});
    summary.rows.push_back({w.t, w.T, w.mean, w.ci_lo, w.ci_hi});
    cells.push_back({{"t", w.t}, {"T", w.T}, {"replicas", w.n}, {"mean", w.mean}, {"ci_lo", w.ci_lo},
                     {"ci_hi", w.ci_hi}});
  }
  ExperimentOutput out;
  out.tables.emplace_back(std::move(samples), kWebHeader);
  out.tables.emplace_back(std::move(summary), kWebSummaryHeader);
  out.summary = {{"cells", cells},
                 {"msd", {{"time", rep.msd_time}, {"mean", rep.msd_mean}, {"ci_halfwidth", rep.msd_ci},
                          {"replicas", rep.msd_n}}},
                 {"fit_T", fit_json(rep.fit_T)},
                 {"exponent_T", rep.exponent_T},
                 {"C_alpha", rep.C_alpha},
                 {"fit_t", fit_json(rep.fit_t)},
                 {"slope_t", rep.slope_t}};
  return out;
}

// ---------------------------------------------------------------- strong error

StrongErrorReport compute_strong_error_report(const ExperimentConfig& cfg) {
  const std::string which = cfg.text("sde", "ou");
  const bool ou = which == "ou";
  if (!ou && which != "linear_growth")
    throw DomainError("strong-error needs an SDE whose exact solution can be driven by the scheme's noise; "
                      "set \"sde\" to \"ou\" or \"linear_growth\"");
  const auto levy = cfg.model(0.8, 0.0, kInf);
  const auto kind = parse_clock(cfg.text("clock", ou ? "inverse" : "undershoot"));
  const double t_end = cfg.number("t_end", 0.1);
  const auto points = count(cfg, "grid_points", 100, 1);
  const auto replicas = count(cfg, "replicas", 500, 1);
  const auto seed = cfg.require_seed();

  sde::OuParams op{cfg.number("ou_rate", 0.5), cfg.number("ou_mean", 0.25), cfg.number("ou_vol", 0.5),
                   cfg.number("x0", ou ? 0.0 : 1.0)};
  const double theta = cfg.number("diffusion_theta", -0.2);
  const auto model = ou ? sde::SdeModel::ornstein_uhlenbeck(op.rate, op.mean, op.vol, op.x0, cfg.number("K", 0.625))
                        : sde::SdeModel::linear_growth(theta, op.x0, cfg.number("K", 1.0 + std::fabs(theta)));

  StrongErrorReport rep;
  rep.epsilon = cfg.number("epsilon", 0.1);
  const auto k = sde::compute_constants(model);
  const double gap = cfg.number("c3_gap", 6.0);
  const double em = (kind == ClockKind::Inverse && gap > 0.0)
                        ? sde::exp_moment_inverse_fixed_gap(levy, k.C2, t_end, gap).value
                        : sde::exp_moment(levy, kind, k.C2, t_end);
  rep.planned_h = sde::choose_step(k, em, model.gamma_hoelder, rep.epsilon);
  rep.h = cfg.number("h", rep.planned_h);

  const auto grid = paths::uniform_grid(t_end, points);
  rep.samples = parallel_map<sde::StrongErrorSample>(replicas, seed, cfg.threads, [&](std::size_t, Rng& rng) {
    return ou ? sde::ou_strong_error_replica(op, levy, kind, grid, rep.h, rng)
              : linear_growth_replica(theta, op.x0, levy, kind, grid, rep.h, rng);
  });
  std::size_t below = 0;
  for (const auto& s : rep.samples) below += s.max_sq_error < rep.epsilon;
  rep.fraction_below = static_cast<double>(below) / static_cast<double>(replicas);
  return rep;
}

StrongOrderReport compute_strong_order_report(const ExperimentConfig& cfg) {
  const sde::OuParams op{cfg.number("ou_rate", 0.5), cfg.number("ou_mean", 0.25), cfg.number("ou_vol", 0.5),
                         cfg.number("x0", 0.0)};
  const double t_end = cfg.number("t_end", 1.0);
  const int j_min = static_cast<int>(cfg.integer("j_min", 6));
  const int j_max = static_cast<int>(cfg.integer("j_max", 12));
  const auto n_paths = count(cfg, "replicas", 1000, 2);
  StrongOrderReport rep;
  rep.mean_sq_sup_error = sde::ou_strong_error_sweep(op, t_end, j_min, j_max, n_paths, cfg.require_seed());
  for (int j = j_min; j <= j_max; ++j) rep.h.push_back(t_end * std::ldexp(1.0, -j));
  rep.fit = log_log_fit(rep.h, rep.mean_sq_sup_error);
  return rep;
}

ExperimentOutput compute_strong_error(const ExperimentConfig& cfg) {
  ExperimentOutput out;
  const std::string mode = cfg.text("mode", "fixed");
  if (mode == "order") {
    const auto rep = compute_strong_order_report(cfg);
    Table t{"strong_order", kStrongOrderHeader, {}};
    for (std::size_t i = 0; i < rep.h.size(); ++i) t.rows.push_back({rep.h[i], rep.mean_sq_sup_error[i]});
    out.tables.emplace_back(std::move(t), kStrongOrderHeader);
    out.summary = {{"mode", mode}, {"fit", fit_json(rep.fit)}};
    return out;
  }
  if (mode != "fixed") throw DomainError("strong-error mode must be fixed or order");
  const auto rep = compute_strong_error_report(cfg);
  Table t{"strong_error", kStrongErrorHeader, {}};
  for (std::size_t i = 0; i < rep.samples.size(); ++i)
    t.rows.push_back({static_cast<std::int64_t>(i), rep.samples[i].t_star, rep.samples[i].max_sq_error});
  out.tables.emplace_back(std::move(t), kStrongErrorHeader);
  out.summary = {{"mode", mode},         {"h", rep.h},
                 {"planned_h", rep.planned_h}, {"epsilon", rep.epsilon},
                 {"replicas", rep.samples.size()}, {"fraction_below_epsilon", rep.fraction_below}};
  return out;
}

// ---------------------------------------------------------------- benchmark

BenchmarkReport compute_benchmark_report(const ExperimentConfig& cfg) {
  BenchmarkReport rep;
  rep.setup = static_cast<int>(cfg.integer("setup", 1));
  if (rep.setup != 1 && rep.setup != 2) throw DomainError("benchmark setup must be 1 or 2");
  const bool first = rep.setup == 1;
  rep.draws = count(cfg, "draws", first ? 100 : 10, 1);
  const auto reps = count(cfg, "repetitions", 10, 1);
  const double t = cfg.number("t", 1.0);
  const auto seed = cfg.require_seed();
  std::vector<double> params;
  if (first) {
    params = cfg.numbers("alphas", {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9});
  } else {
    std::vector<double> qs;
    for (int k = 0; k < 10; ++k) qs.push_back(1.0 + 0.75 * k);
    params = cfg.numbers("qs", qs);
  }
  rep.pilot_param = cfg.number("pilot", first ? 0.5 : params.front());

  auto model_for = [&](double p) {
    levy::LevyModel m;
    m.theta = 1.0;
    m.r = 1.0;
    if (first) {
      m.alpha = p;
      m.zeta = levy::FiniteMeasure::stable_segment(p, 1.0, 0.0, 1.0, kInf);
    } else {
      m.alpha = cfg.number("alpha", 0.65);
      m.q = p;
      m.zeta = levy::FiniteMeasure::pareto5(1.0);
    }
    m.validate();
    return m;
  };

  for (std::size_t c = 0; c < params.size(); ++c) {
    const auto model = model_for(params[c]);
    BenchmarkCell cell{params[c], {}, {}};
    Rng rng = make_stream(seed, c);
    for (std::size_t r = 0; r <= reps; ++r) {
      Counters counters;
      const auto ns = elapsed_ns([&] {
        for (std::size_t m = 0; m < rep.draws; ++m) first_passage::sample_crossing(t, model, rng, &counters);
      });
      if (r == 0) continue;  // warm-up
      cell.wall_ns.push_back(static_cast<double>(ns));
      cell.ops.push_back(static_cast<double>(counters.iterations + counters.rejections));
    }
    const auto b = first_passage::expected_cost_bounds(model, t);
    cell.frak_c = b.frak_c;
    cell.bound = first ? b.bound_simplif : b.bound_simplif2;
    cell.mean_ops_per_draw = stats::mean(cell.ops) / static_cast<double>(rep.draws);
    cell.slow = b.frak_c > 1e4;
    rep.cells.push_back(std::move(cell));
  }

  const auto pilot = std::min_element(rep.cells.begin(), rep.cells.end(), [&](const auto& a, const auto& b) {
    return std::fabs(a.param - rep.pilot_param) < std::fabs(b.param - rep.pilot_param);
  });
  if (pilot != rep.cells.end()) {
    rep.pilot_param = pilot->param;
    rep.const_zeta = std::max(1.0, pilot->mean_ops_per_draw / pilot->bound);
  }
  for (auto& cell : rep.cells) {
    cell.bound *= rep.const_zeta;
    cell.within = cell.mean_ops_per_draw <= cell.bound;
  }
  return rep;
}

ExperimentOutput compute_benchmark(const ExperimentConfig& cfg) {
  const auto rep = compute_benchmark_report(cfg);
  Table t{"benchmark", kBenchmarkHeader, {}};
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : rep.cells) {
    for (std::size_t r = 0; r < c.wall_ns.size(); ++r)
      t.rows.push_back({c.param, static_cast<std::int64_t>(r), static_cast<std::int64_t>(c.wall_ns[r]),
                        static_cast<std::int64_t>(c.ops[r])});
    cells.push_back({{"param", c.param}, {"frak_c", c.frak_c}, {"bound_per_draw", c.bound},
                     {"mean_ops_per_draw", c.mean_ops_per_draw}, {"mean_wall_ns", stats::mean(c.wall_ns)},
                     {"within_bound", c.within}, {"slow", c.slow}});
  }
  ExperimentOutput out;
  out.tables.emplace_back(std::move(t), kBenchmarkHeader);
  out.summary = {{"setup", rep.setup}, {"draws_per_repetition", rep.draws}, {"const_zeta", rep.const_zeta},
                 {"pilot_param", rep.pilot_param}, {"cells", cells}};
  return out;
}

// ---------------------------------------------------------------- oracle validation

OracleReport compute_oracle_report(const ExperimentConfig& cfg) {
  OracleReport rep;
  const auto model = cfg.model(0.75, 0.0, kInf);
  const double t = cfg.number("t", 1.0);
  rep.N = count(cfg, "N", 10000);
  if (rep.N < 1000) throw DomainError("oracle validation needs N >= 1000 per side, got " + std::to_string(rep.N));
  rep.step = cfg.number("step", 1e-4);
  const double corrupt = cfg.number("corrupt_gamma", 1.0);
  const std::string mode = cfg.text("mode", "exact");
  if (mode != "exact" && mode != "self") throw DomainError("validate mode must be exact or self");
  const auto seed = cfg.require_seed();

  using Pair = std::pair<first_passage::CrossingSample, first_passage::CrossingSample>;
  const auto draws = parallel_map<Pair>(rep.N, seed, cfg.threads, [&](std::size_t, Rng& rng) {
    Rng a = make_stream(rng(), 0);
    Rng b = make_stream(rng(), 1);
    auto x = mode == "self" ? oracle_crossing(t, model, rep.step, a) : first_passage::sample_crossing(t, model, a);
    x.gamma *= corrupt;
    return Pair{x, oracle_crossing(t, model, rep.step, b)};
  });
  std::vector<double> xl, xg, xG, yl, yg, yG;
  for (const auto& [x, y] : draws) {
    xl.push_back(x.L);
    xg.push_back(x.gamma);
    xG.push_back(x.Gamma);
    yl.push_back(y.L);
    yg.push_back(y.gamma);
    yG.push_back(y.Gamma);
  }
  rep.L = stats::ks_two_sample(xl, yl);
  rep.gamma = stats::ks_two_sample(xg, yg);
  rep.Gamma = stats::ks_two_sample(xG, yG);
  return rep;
}

ExperimentOutput compute_oracle_validation(const ExperimentConfig& cfg) {
  const auto rep = compute_oracle_report(cfg);
  Table t{"validate", kValidateHeader, {}};
  t.rows.push_back({std::string("L"), rep.L.statistic, rep.L.p_value});
  t.rows.push_back({std::string("gamma"), rep.gamma.statistic, rep.gamma.p_value});
  t.rows.push_back({std::string("Gamma"), rep.Gamma.statistic, rep.Gamma.p_value});
  ExperimentOutput out;
  out.tables.emplace_back(std::move(t), kValidateHeader);
  out.summary = {{"N", rep.N},
                 {"step", rep.step},
                 {"p_values", {{"L", rep.L.p_value}, {"gamma", rep.gamma.p_value}, {"Gamma", rep.Gamma.p_value}}}};
  return out;
}

std::vector<std::filesystem::path> run_paths(const ExperimentConfig& cfg) {
  return write_output(compute_paths(cfg), cfg);
}
std::vector<std::filesystem::path> run_web(const ExperimentConfig& cfg) { return write_output(compute_web(cfg), cfg); }
std::vector<std::filesystem::path> run_strong_error(const ExperimentConfig& cfg) {
  return write_output(compute_strong_error(cfg), cfg);
}
std::vector<std::filesystem::path> run_benchmark(const ExperimentConfig& cfg) {
  return write_output(compute_benchmark(cfg), cfg);
}
std::vector<std::filesystem::path> run_oracle_validation(const ExperimentConfig& cfg) {
  return write_output(compute_oracle_validation(cfg), cfg);
}

}  // namespace invsub::tools
