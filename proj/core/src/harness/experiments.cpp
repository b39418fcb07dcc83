#include "dissim/harness/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "dissim/circuits.hpp"
#include "dissim/lindblad.hpp"
#include "dissim/noise.hpp"
#include "dissim/sampling.hpp"

namespace dissim {

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double quad3(double ym, double y0, double yp, double u) {
  return ym * 0.5 * u * (u - 1.0) + y0 * (1.0 - u * u) + yp * 0.5 * u * (u + 1.0);
}

}  // namespace

RunOptions run_options_from_config(const Config& cfg) {
  RunOptions opt;
  opt.out_dir = cfg.get_string_or("run", "out", "out");
  opt.seed = static_cast<std::uint64_t>(cfg.get_int_or("run", "seed", 12345));
  opt.shots = cfg.get_int_or("run", "shots", 0);
  opt.threads = static_cast<unsigned>(cfg.get_int_or("run", "threads", 0));
  require(opt.shots >= 0, "config [run] shots: must be non-negative");
  return opt;
}

unsigned thread_cap(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("DISSIM_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

void parallel_for(int n, unsigned threads, const std::function<void(int)>& fn) {
  const unsigned t = std::min<unsigned>(std::max(1u, threads), static_cast<unsigned>(std::max(1, n)));
  if (t <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  for (unsigned w = 0; w < t; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

void write_files(const FileSet& files, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  for (const auto& [name, text] : files) {
    std::ofstream out(std::filesystem::path(out_dir) / name, std::ios::binary);
    require(out.good(), "cannot write output file: " + name);
    out << text;
  }
}

DensitySeries sample_series(const DensitySeries& series, long shots, std::uint64_t seed) {
  if (shots <= 0) return series;
  DensitySeries out = series;
  Rng rng(seed);
  for (double& v : out.values)
    v = static_cast<double>(rng.binomial(shots, std::clamp(v, 0.0, 1.0))) /
        static_cast<double>(shots);
  return out;
}

void reconstruct_momentum_curve(const DensitySeries& series, int grid_points,
                                std::vector<double>& k_m, std::vector<double>& occupation) {
  const LatticeParams& p = series.params;
  require(p.omega > 0.0, "momentum reconstruction requires a positive omega");
  require(grid_points >= 4, "need at least 4 grid points");
  const double tau = p.period();
  const int n = static_cast<int>(series.values.size());
  require(n >= 4, "series too short");
  require(series.times.back() - series.times.front() >= tau * (1.0 - 1e-9),
          "series spans less than one Floquet period");

  // trailing window of just over one period; gauge momenta advance
  // uniformly by omega*dt per sample
  int window = std::min(n, static_cast<int>(std::ceil(tau / p.dt)) + 2);
  const int start = n - window;
  const double x0 = p.k + p.omega * series.times[start];
  const double dk = p.omega * p.dt;

  k_m.resize(grid_points);
  occupation.resize(grid_points);
  for (int j = 0; j < grid_points; ++j) {
    const double target = -kPi + (j + 0.5) * 2.0 * kPi / grid_points;
    k_m[j] = target;
    double adj = target + 2.0 * kPi * std::ceil((x0 - target) / (2.0 * kPi));
    double u = (adj - x0) / dk;
    if (u > window - 1) u -= 2.0 * kPi / dk;
    int i = static_cast<int>(std::lround(u));
    i = std::clamp(i, 1, window - 2);
    occupation[j] = quad3(series.values[start + i - 1], series.values[start + i],
                          series.values[start + i + 1], u - i);
  }
}

FileSet run_lattice_evolve(const Config& cfg, const RunOptions& opt) {
  FileSet files;
  LatticeParams lp = lattice_from_config(cfg);
  require(lp.n_steps >= 1, "config [lattice] n_steps: must be at least 1");
  const double n0 = cfg.get_double_or("lattice", "n0", 0.0);
  require(n0 >= 0.0 && n0 <= 1.0, "config [lattice] n0: must lie in [0,1]");

  std::ostringstream summary;
  const DensitySeries ideal = evolve_density(lp, n0);
  files["ideal.csv"] = series_to_csv(ideal);
  if (opt.shots > 0)
    files["ideal_sampled.csv"] =
        series_to_csv(sample_series(ideal, opt.shots, derive_seed(opt.seed, 0)));

  std::vector<int> resets;
  std::map<int, DensitySeries> noisy;
  if (cfg.sections().count("noise")) {
    NoiseParams np = noise_from_config(cfg);
    resets = cfg.get_int_list_or("noise", "resets", {1, 2, 3, 4});
    for (int r : resets) {
      np.resets = r;
      DensitySeries s = noisy_series(lp, np, n0);
      files["noisy_r" + std::to_string(r) + ".csv"] = series_to_csv(s);
      if (opt.shots > 0) {
        s = sample_series(s, opt.shots, derive_seed(opt.seed, 10 + r));
        files["noisy_r" + std::to_string(r) + "_sampled.csv"] = series_to_csv(s);
      }
      noisy.emplace(r, std::move(s));
    }
  }

  const int n_cut = static_cast<int>(cfg.get_int_or("postprocess", "n_cut", 30));
  const int grid_points = static_cast<int>(cfg.get_int_or("postprocess", "grid_points", 96));
  const std::vector<int> extrapolate_rs =
      cfg.get_int_list_or("postprocess", "extrapolate_rs", {2, 3, 4});

  if (lp.omega > 0.0 && ideal.times.back() - ideal.times[n_cut] >= 2.0 * lp.period()) {
    const PeriodCurve ideal_curve = floquet_average(discard_transient(ideal, n_cut), grid_points);
    files["ideal_period.csv"] = curve_to_csv(ideal_curve);
    summary << "ideal curve averaged over " << ideal_curve.n_periods << " periods\n";

    const bool have_all = std::all_of(extrapolate_rs.begin(), extrapolate_rs.end(),
                                      [&](int r) { return noisy.count(r) > 0; });
    if (have_all && extrapolate_rs.size() >= 3) {
      std::vector<PeriodCurve> curves;
      for (int r : extrapolate_rs)
        curves.push_back(floquet_average(discard_transient(noisy.at(r), n_cut), grid_points));
      bool flat = false;
      const PeriodCurve processed =
          stretch(center(extrapolate_resets(curves, extrapolate_rs)), lp.gamma, lp.omega, &flat);
      files["processed.csv"] = curve_to_csv(processed);
      if (flat) summary << "warning: flat curve, stretch skipped\n";
      double worst = 0.0;
      for (size_t j = 0; j < processed.values.size(); ++j)
        worst = std::max(worst, std::abs(processed.values[j] - ideal_curve.values[j]));
      summary << "processed curve max deviation from ideal curve: " << fmt_double(worst) << "\n";
    } else if (!noisy.empty()) {
      summary << "postprocess skipped: need noisy series for every r in extrapolate_rs\n";
    }
  } else {
    summary << "postprocess skipped: series covers fewer than two Floquet periods after the cut\n";
  }
  files["summary.txt"] = summary.str();
  return files;
}

FileSet run_current_sweep(const Config& cfg, const RunOptions& opt) {
  LatticeParams base;
  base.gamma_h = cfg.get_double_or("lattice", "gamma_h", 1.0);
  base.gamma = cfg.get_double("lattice", "gamma");
  base.beta = cfg.get_double("lattice", "beta");
  base.k = cfg.get_double_or("lattice", "k", 0.0);

  const double omega_min = cfg.get_double_or("sweep", "omega_min", 0.1);
  const double omega_max = cfg.get_double_or("sweep", "omega_max", 2.0);
  const int points = static_cast<int>(cfg.get_int_or("sweep", "omega_points", 20));
  const int n_steps = static_cast<int>(cfg.get_int_or("sweep", "n_steps", 50));
  const int grid = static_cast<int>(cfg.get_int_or("sweep", "grid_points", 256));
  const int quad_points = static_cast<int>(cfg.get_int_or("sweep", "quadrature_points", 4000));
  const std::string n0_mode = cfg.get_string_or("sweep", "n0", "1.0");
  require(points >= 1, "config [sweep] omega_points: must be at least 1");
  require(omega_min > 0.0 && omega_max >= omega_min, "config [sweep]: bad omega range");

  NoiseParams np;
  if (cfg.sections().count("noise")) np = noise_from_config(cfg);
  const std::vector<int> extrapolate_rs =
      cfg.get_int_list_or("postprocess", "extrapolate_rs", {2, 3, 4});

  struct Row {
    double omega, j_lindblad, j_ideal, j_noisy;
    bool converged;
  };
  std::vector<Row> rows(points);

  parallel_for(points, thread_cap(opt.threads), [&](int idx) {
    LatticeParams lp = base;
    lp.omega = points == 1 ? omega_min
                           : omega_min + (omega_max - omega_min) * idx / (points - 1);
    const double tau = lp.period();
    lp.dt = tau * (0.022 + 0.031 * lp.omega);
    lp.n_steps = n_steps;
    lp.validate();

    std::vector<double> km(grid), occ(grid);
    for (int j = 0; j < grid; ++j) {
      km[j] = -kPi + (j + 0.5) * 2.0 * kPi / grid;
      occ[j] = steady_state_occupation(lp, km[j], quad_points);
    }
    const double j_lindblad = dc_current(km, occ, lp.gamma_h);

    double n0;
    if (n0_mode == "steady")
      n0 = steady_state_occupation(lp, lp.k, quad_points);
    else
      n0 = std::stod(n0_mode);
    const DensitySeries ideal = evolve_density(lp, n0);

    std::vector<double> km_t, occ_t;
    reconstruct_momentum_curve(ideal, grid, km_t, occ_t);
    const double j_ideal = dc_current(km_t, occ_t, lp.gamma_h);

    // steady-state convergence: drift across the trailing Floquet period
    const double t_end = ideal.times.back();
    const double x = (t_end - tau) / lp.dt;
    int i = std::clamp(static_cast<int>(std::lround(x)), 1, lp.n_steps - 1);
    const double prev = quad3(ideal.values[i - 1], ideal.values[i], ideal.values[i + 1], x - i);
    const double drift = std::abs(ideal.values.back() - prev);

    // noisy-model branch: reconstruct per r, extrapolate, center, stretch
    double j_noisy = 0.0;
    {
      std::vector<PeriodCurve> curves;
      for (int r : extrapolate_rs) {
        NoiseParams nr = np;
        nr.resets = r;
        DensitySeries noisy = noisy_series(lp, nr, n0);
        if (opt.shots > 0)
          noisy = sample_series(noisy, opt.shots,
                                derive_seed(opt.seed, 1000 + 10 * idx + r));
        std::vector<double> km_n, occ_n;
        reconstruct_momentum_curve(noisy, grid, km_n, occ_n);
        PeriodCurve pc;
        pc.grid.resize(grid);
        for (int j = 0; j < grid; ++j) pc.grid[j] = (km_n[j] + kPi) / lp.omega;
        pc.values = occ_n;
        pc.period = tau;
        pc.n_periods = 1;
        curves.push_back(std::move(pc));
      }
      bool flat = false;
      const PeriodCurve processed =
          stretch(center(extrapolate_resets(curves, extrapolate_rs)), lp.gamma, lp.omega, &flat);
      j_noisy = dc_current(km, processed.values, lp.gamma_h);
    }

    rows[idx] = {lp.omega, j_lindblad, j_ideal, j_noisy, drift < 5e-3};
  });

  std::ostringstream os;
  os << "omega,J_lindblad,J_ideal_trotter,J_noisy_postprocessed,converged\n";
  for (const Row& r : rows)
    os << fmt_double(r.omega) << "," << fmt_double(r.j_lindblad) << "," << fmt_double(r.j_ideal)
       << "," << fmt_double(r.j_noisy) << "," << (r.converged ? 1 : 0) << "\n";

  FileSet files;
  files["current.csv"] = os.str();
  std::ostringstream summary;
  int conv = 0;
  for (const Row& r : rows) conv += r.converged ? 1 : 0;
  summary << conv << "/" << points << " sweep points reached the steady state within " << n_steps
          << " steps (drift < 5e-3 across the trailing period)\n";
  for (const Row& r : rows)
    if (!r.converged)
      summary << "not converged at omega = " << fmt_double(r.omega)
              << " (steady state not yet reached within the step budget)\n";
  files["summary.txt"] = summary.str();
  return files;
}

FileSet run_hubbard_thermal(const Config& cfg, const RunOptions& opt) {
  HubbardParams hp = hubbard_from_config(cfg);
  const int step_cap = static_cast<int>(cfg.get_int_or("hubbard", "step_cap", 19));
  const int n_steps = static_cast<int>(cfg.get_int_or("hubbard", "n_steps", 19));
  require(n_steps >= 1 && n_steps <= step_cap,
          "config [hubbard] n_steps: must be in [1, step_cap]");
  const std::vector<int> order_list = cfg.get_int_list_or("hubbard", "order", {0, 2, 3, 1});
  require(order_list.size() == 4, "config [hubbard] order: need exactly 4 states");
  std::array<int, 4> order{};
  std::copy(order_list.begin(), order_list.end(), order.begin());

  const std::string start = cfg.get_string_or("hubbard", "start", "vacuum");
  DensityMatrix rho0 = DensityMatrix::basis_state(4, kEmpty);
  if (start == "mixed") {
    rho0 = DensityMatrix::maximally_mixed(4);
  } else if (start == "random") {
    Rng rng(derive_seed(opt.seed, 7));
    rho0 = random_pure(rng, 4);
  } else {
    require(start == "vacuum", "config [hubbard] start: expected vacuum|mixed|random");
  }

  const auto states = prepare_thermal(hp, order, n_steps, rho0);
  const DensityMatrix gibbs = thermal_state(hp);

  std::ostringstream os;
  os << "step,p_empty,p_up,p_down,p_double,gibbs_empty,gibbs_up,gibbs_down,gibbs_double,"
        "trace_distance_to_gibbs\n";
  for (size_t s = 0; s < states.size(); ++s) {
    os << s;
    for (int i = 0; i < 4; ++i) os << "," << fmt_double(states[s].population(i));
    for (int i = 0; i < 4; ++i) os << "," << fmt_double(gibbs.population(i));
    os << "," << fmt_double(trace_distance(states[s], gibbs)) << "\n";
  }

  FileSet files;
  files["populations.csv"] = os.str();

  std::vector<int> snaps = cfg.get_int_list_or("hubbard", "snapshot_steps",
                                               {0, n_steps / 2, n_steps});
  for (int s : snaps) {
    require(s >= 0 && s <= n_steps, "config [hubbard] snapshot_steps: step out of range");
    std::ostringstream snap;
    snap << "row,col,re,im\n";
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        snap << r << "," << c << "," << fmt_double(states[s](r, c).real()) << ","
             << fmt_double(states[s](r, c).imag()) << "\n";
    files["rho_step" + std::to_string(s) + ".csv"] = snap.str();
  }

  std::ostringstream summary;
  summary << "mu = " << fmt_double(hp.mu) << ", filling = " << fmt_double(thermal_filling(hp))
          << "\n"
          << "trace distance to the Gibbs state after " << n_steps
          << " steps: " << fmt_double(trace_distance(states.back(), gibbs)) << "\n";
  files["summary.txt"] = summary.str();
  return files;
}

FileSet run_noise_fit(const Config& cfg, const RunOptions& opt) {
  LatticeParams lp = lattice_from_config(cfg);
  if (lp.n_steps == 0) lp.n_steps = 120;
  const double n0 = cfg.get_double_or("lattice", "n0", 1.0);
  const std::vector<int> resets = cfg.get_int_list_or("truth", "resets", {1, 2, 3, 4});

  FileSet files;
  std::vector<DensitySeries> observed;
  if (cfg.sections().count("observed")) {
    for (int r : resets) {
      const std::string path = cfg.get_string("observed", "series_r" + std::to_string(r));
      std::ifstream in(path);
      require(in.good(), "config [observed]: cannot open " + path);
      const SeriesTable table = read_series_csv(in);
      DensitySeries s;
      s.params = lp;
      s.times = table.t;
      s.values = table.n;
      observed.push_back(std::move(s));
    }
  } else {
    NoiseParams truth;
    truth.p0 = cfg.get_double_or("truth", "p0", 0.97);
    truth.p1 = cfg.get_double_or("truth", "p1", 0.91);
    truth.reset_time = cfg.get_double_or("truth", "reset_time", 0.06);
    for (int r : resets) {
      NoiseParams np = truth;
      np.resets = r;
      DensitySeries s = noisy_series(lp, np, n0);
      if (opt.shots > 0) s = sample_series(s, opt.shots, derive_seed(opt.seed, 100 + r));
      files["observed_r" + std::to_string(r) + ".csv"] = series_to_csv(s);
      observed.push_back(std::move(s));
    }
  }

  const NoiseFit fit = fit_noise(observed, resets, lp, n0);
  std::ostringstream os;
  os << "reset_time,p0,p1,residual,ill_posed\n";
  os << fmt_double(fit.params.reset_time) << "," << fmt_double(fit.params.p0) << ","
     << fmt_double(fit.params.p1) << "," << fmt_double(fit.residual) << ","
     << (fit.ill_posed ? 1 : 0) << "\n";
  files["fit.csv"] = os.str();

  std::ostringstream summary;
  summary << "recovered reset_time = " << fmt_double(fit.params.reset_time)
          << ", p0 = " << fmt_double(fit.params.p0) << ", p1 = " << fmt_double(fit.params.p1)
          << ", residual = " << fmt_double(fit.residual) << "\n";
  if (fit.ill_posed) summary << "warning: " << fit.diagnostic << "\n";
  files["summary.txt"] = summary.str();
  return files;
}

}  // namespace dissim
