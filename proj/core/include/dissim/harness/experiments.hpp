#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "dissim/harness/config.hpp"
#include "dissim/postprocess.hpp"

namespace dissim {

/// Run-level options; CLI flags override the [run] section of the config.
struct RunOptions {
  std::string out_dir = "out";
  std::uint64_t seed = 12345;
  long shots = 0;  // 0 = exact probabilities
  unsigned threads = 0;  // 0 = DISSIM_THREADS or hardware
};

RunOptions run_options_from_config(const Config& cfg);

/// Thread cap: explicit option, then DISSIM_THREADS, then hardware.
unsigned thread_cap(unsigned requested);

/// Deterministic parallel map: out[i] = fn(i), assembled in index order.
void parallel_for(int n, unsigned threads, const std::function<void(int)>& fn);

/// Files written by an experiment, keyed by name, rendered to full text.
/// Rendering is separated from disk IO so byte-level determinism can be
/// tested in memory.
using FileSet = std::map<std::string, std::string>;

void write_files(const FileSet& files, const std::string& out_dir);

/// Binomial sampling of a series at `shots` per point (shots = 0 returns
/// the series unchanged).
DensitySeries sample_series(const DensitySeries& series, long shots, std::uint64_t seed);

/// Occupation resampled onto a uniform gauge-momentum grid over [-pi, pi)
/// from the trailing Floquet period of a series, via the gauge mapping
/// k_m = k + omega t and periodic quadratic interpolation.
void reconstruct_momentum_curve(const DensitySeries& series, int grid_points,
                                std::vector<double>& k_m, std::vector<double>& occupation);

FileSet run_lattice_evolve(const Config& cfg, const RunOptions& opt);
FileSet run_current_sweep(const Config& cfg, const RunOptions& opt);
FileSet run_hubbard_thermal(const Config& cfg, const RunOptions& opt);
FileSet run_noise_fit(const Config& cfg, const RunOptions& opt);

}  // namespace dissim
