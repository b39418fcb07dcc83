#pragma once

#include <vector>

#include "dissim/density_matrix.hpp"
#include "dissim/types.hpp"

namespace dissim {

/// One momentum mode of the field-driven, reservoir-coupled tight-binding
/// chain. gamma_h is the hopping amplitude and the energy unit; omega the
/// field strength; gamma the effective reservoir coupling; beta the inverse
/// reservoir temperature; k the crystal momentum; dt the Trotter step.
struct LatticeParams {
  double gamma_h = 1.0;
  double omega = 0.0;
  double gamma = 0.1;
  double beta = 5.0;
  double k = 0.0;
  double dt = 0.1;
  int n_steps = 0;

  /// Floquet period 2*pi/omega.
  double period() const { return 2.0 * kPi / omega; }

  /// Throws validation_error naming the offending field. The rotation-angle
  /// arguments stay in [0,1] for every reachable dispersion iff 2*gamma*dt <= 1.
  void validate() const;
};

/// Occupation of the mode at the Trotter sample times. Index 0 is the
/// initial occupation at t = 0.
struct DensitySeries {
  std::vector<double> times;
  std::vector<double> values;
  LatticeParams params;
};

/// Band energy -2*gamma_h*cos(phase).
inline double band_energy(double gamma_h, double phase) {
  return -2.0 * gamma_h * std::cos(phase);
}

/// Dispersion at step s: -2*gamma_h*cos(k + omega*s*dt).
double dispersion(const LatticeParams& p, int step);
/// Dispersion at continuous time t.
double dispersion_at(const LatticeParams& p, double t);

struct StepAngles {
  double theta;  // fill rotation, 2*asin(sqrt(2*Gamma*dt*n_F(eps)))
  double phi;    // drain rotation, 2*asin(sqrt(2*Gamma*dt*n_F(-eps)))
};

StepAngles step_angles(const LatticeParams& p, int step);

/// The three Kraus operators of one dissipative Trotter step in the mode
/// basis {|empty>, |occupied>}: a no-jump operator carrying the coherent
/// phase e^{-i eps dt} on the occupied branch, a fill jump and a drain jump.
/// Operators with exactly zero amplitude are dropped (gamma = 0 leaves a
/// single unitary operator).
KrausChannel trotter_channel(const LatticeParams& p, int step);

/// Iterates apply_channel(trotter_channel(s)) from diag(1-n0, n0) and
/// records the occupation at every sample time (t=0 included).
DensitySeries evolve_density(const LatticeParams& p, double n0);

/// Steady-state occupation as a function of the gauge-invariant momentum
/// k_m = k + omega*t:
///   n(k_m) = (2G/W) Int_{-inf}^{k_m} dy e^{(2G/W)(y-k_m)} n_F(eps(y)).
/// The semi-infinite tail is resummed geometrically over 2*pi periods
/// (factor e^{-4*pi*G/W}), leaving one period integrated by composite
/// Gauss-Legendre with about `quadrature_points` evaluations.
double steady_state_occupation(const LatticeParams& p, double k_m, int quadrature_points = 200);

/// Zero-temperature maximum of the steady-state occupation,
/// (1/2)(1 + tanh(pi*Gamma/Omega)); the stretch target in post-processing.
double max_steady_occupation(double gamma, double omega);

/// DC current (units of gamma_h) from an occupation curve sampled on a
/// uniform periodic k_m grid covering [-pi, pi):
///   J = (gamma_h/pi) * Int dk_m sin(k_m) n(k_m), trapezoidal on the circle.
double dc_current(const std::vector<double>& k_m, const std::vector<double>& occupation,
                  double gamma_h = 1.0);

}  // namespace dissim
