#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dissim/density_matrix.hpp"
#include "dissim/lattice.hpp"
#include "dissim/types.hpp"

namespace dissim {

/// Hardware reset/decay model: p0 = p(measure 0 | state 0),
/// p1 = p(measure 1 | state 1), reset_time = duration of one reset gate in
/// units of the system T1, resets = reset repetitions per Trotter step.
struct NoiseParams {
  double p0 = 0.97;
  double p1 = 0.91;
  double reset_time = 0.06;
  int resets = 1;

  void validate() const;
};

/// Probability of finding |0> after `resets` measure-and-flip reset gates,
/// starting from <0|rho|0> = a0:
///   a0 (p0-p1)^r + p1 (1-(p0-p1)^r) / (1-p0+p1).
double reset_success(double a0, const NoiseParams& np);

/// Channel form of the same model: output is diagonal with
/// <0|out|0> = reset_success(<0|in|0>), coherences destroyed.
KrausChannel noisy_reset_channel(const NoiseParams& np);

/// Amplitude damping accumulated over the reset operation; survival of the
/// excited population is e^{-r T}.
KrausChannel damping_channel(const NoiseParams& np);

/// One step of the coupled error-model recurrences for the populations
/// n_s = <0|rho_S|0> and a_s = <0|rho_a|0>, implemented exactly as the
/// closed pair:
///   n' = 1 - e^{-rT} ((2a-1)(2 G dt (n - n_F) - n) + a)
///   a' = [a + 2 G dt (2a-1)((n-1) n_F(eps) - n n_F(-eps))] (p0-p1)^r + tail.
std::pair<double, double> recurrence_step(double n_s, double a_s, int step,
                                          const LatticeParams& lp, const NoiseParams& np);

/// n-update with the ancilla fidelity frozen at a constant a0.
double frozen_recurrence_step(double n_s, int step, const LatticeParams& lp,
                              const NoiseParams& np, double a0);

/// Iterates recurrence_step over lp.n_steps (a starts at a_init, the fresh
/// qubit); index 0 of the series is n0.
DensitySeries noisy_series(const LatticeParams& lp, const NoiseParams& np, double n0,
                           double a_init = 1.0);

/// Closed-form solution of the frozen recurrence: shift plus a geometric
/// kernel sum over tanh(beta eps_t / 2) with base a0 e^{-rT}(1 - 2 G dt).
/// Note the a0 here parameterizes the kernel directly; the per-step model
/// frozen at fidelity a has kernel (2a-1)e^{-rT}(1-2 G dt), so the two
/// coincide under a = (1 + a0)/2.
double closed_form_occupation(int s, double a0, const LatticeParams& lp, const NoiseParams& np);

struct NoiseFit {
  NoiseParams params;
  double residual = 0.0;
  bool ill_posed = false;
  std::string diagnostic;
};

/// Least-squares recovery of (reset_time, p0, p1) from occupation series
/// observed at several reset counts. Derivative-free simplex descent with
/// ten fixed restarts from a coarse grid; bounds p0,p1 in [0.5,1],
/// reset_time in [0,1]. Constant (flat) data yields an ill-posed warning.
NoiseFit fit_noise(const std::vector<DensitySeries>& observed, const std::vector<int>& resets,
                   const LatticeParams& lp, double n0 = 1.0, double a_init = 1.0);

}  // namespace dissim
