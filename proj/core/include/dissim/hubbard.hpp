#pragma once

#include <array>
#include <vector>

#include "dissim/density_matrix.hpp"
#include "dissim/types.hpp"

namespace dissim {

/// Occupation basis states of the single-site interacting atom, in the
/// order used throughout: index = n_up + 2*n_down.
enum HubbardState : int { kEmpty = 0, kUp = 1, kDown = 2, kDoubleOcc = 3 };

/// H = U n_up n_down - (mu/2)(n_up + n_down) - (B/2)(n_up - n_down).
/// U is the energy unit; B is in Bohr-magneton units.
struct HubbardParams {
  double u = 1.0;
  double mu = 0.0;
  double b_field = 0.0;
  double beta = 1.0;

  void validate() const;
};

/// Energies (eps_0, eps_up, eps_down, eps_updown) of the four basis states.
std::array<double, 4> state_energies(const HubbardParams& p);

/// Diagonal Gibbs state e^{-beta H}/Z over the four occupation states.
DensityMatrix thermal_state(const HubbardParams& p);

/// <n_up + n_down> in the Gibbs state, in [0, 2].
double thermal_filling(const HubbardParams& p);

/// Root-solves thermal_filling(mu) = target by bisection; filling is
/// monotone increasing in mu.
double chemical_potential_for_filling(double u, double b_field, double beta, double target);

/// A single cycle through the four basis states with detailed-balanced
/// transition probabilities gamma_{i -> next(i)} = N e^{beta eps_i}; the
/// normalization N is chosen so the largest gamma is exactly 1.
struct TransitionCycle {
  std::array<int, 4> order;        // visiting order, permutation of {0,1,2,3}
  std::array<double, 4> gamma_from;  // indexed by source state
  double normalization = 0.0;

  int next(int state) const;
  /// True when every cycle edge flips exactly one occupation bit (the two
  /// Gray orders); circuits can only realize those directly.
  bool single_bit_flip() const;
};

/// Cycle visiting 0 -> down -> updown -> up -> 0, the default order.
std::array<int, 4> default_cycle_order();

TransitionCycle build_cycle(const HubbardParams& p, const std::array<int, 4>& order);

/// Four Kraus operators, one per cycle edge:
///   K_i = sqrt(1-gamma_i)|i><i| - i sqrt(gamma_i)|next(i)><i|.
/// Each basis state has exactly one outgoing edge, so the sum rule holds
/// identically.
KrausChannel cycle_channel(const TransitionCycle& cycle);

/// Iterates cycle_channel n_steps times from rho0 and records every state
/// (index 0 is rho0 itself); the recorded matrices are the full tomography.
std::vector<DensityMatrix> prepare_thermal(const HubbardParams& p, const std::array<int, 4>& order,
                                           int n_steps, const DensityMatrix& rho0);

/// Same, starting from the vacuum |0><0|.
std::vector<DensityMatrix> prepare_thermal(const HubbardParams& p, const std::array<int, 4>& order,
                                           int n_steps);

}  // namespace dissim
