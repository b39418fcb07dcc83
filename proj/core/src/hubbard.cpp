#include "dissim/hubbard.hpp"

#include <algorithm>
#include <cmath>

namespace dissim {

void HubbardParams::validate() const {
  require(u > 0.0, "hubbard u must be positive");
  require(std::isfinite(mu) && std::isfinite(b_field), "hubbard mu and b_field must be finite");
  require(beta >= 0.0 && std::isfinite(beta),
          "hubbard beta must be finite and non-negative (beta = 0 is the maximally mixed case)");
}

std::array<double, 4> state_energies(const HubbardParams& p) {
  return {0.0, -p.mu / 2.0 - p.b_field / 2.0, -p.mu / 2.0 + p.b_field / 2.0, p.u - p.mu};
}

DensityMatrix thermal_state(const HubbardParams& p) {
  p.validate();
  const auto eps = state_energies(p);
  const double eps_min = *std::min_element(eps.begin(), eps.end());
  std::array<double, 4> w{};
  double z = 0.0;
  for (int i = 0; i < 4; ++i) {
    w[i] = std::exp(-p.beta * (eps[i] - eps_min));
    z += w[i];
  }
  cmat rho = cmat::Zero(4, 4);
  for (int i = 0; i < 4; ++i) rho(i, i) = w[i] / z;
  return DensityMatrix(std::move(rho));
}

double thermal_filling(const HubbardParams& p) {
  const DensityMatrix rho = thermal_state(p);
  return rho.population(kUp) + rho.population(kDown) + 2.0 * rho.population(kDoubleOcc);
}

double chemical_potential_for_filling(double u, double b_field, double beta, double target) {
  require(target > 0.0 && target < 2.0, "target filling must lie in (0,2)");
  require(beta > 0.0, "filling inversion requires beta > 0");
  HubbardParams p{u, 0.0, b_field, beta};
  double lo = -50.0 * u, hi = 50.0 * u;
  for (int it = 0; it < 200; ++it) {
    p.mu = 0.5 * (lo + hi);
    if (thermal_filling(p) < target)
      lo = p.mu;
    else
      hi = p.mu;
    if (hi - lo < 1e-14) break;
  }
  return 0.5 * (lo + hi);
}

int TransitionCycle::next(int state) const {
  for (int k = 0; k < 4; ++k)
    if (order[k] == state) return order[(k + 1) % 4];
  throw validation_error("state not present in cycle order");
}

bool TransitionCycle::single_bit_flip() const {
  for (int k = 0; k < 4; ++k) {
    const int flips = order[k] ^ order[(k + 1) % 4];
    if (flips != 1 && flips != 2) return false;
  }
  return true;
}

std::array<int, 4> default_cycle_order() { return {kEmpty, kDown, kDoubleOcc, kUp}; }

TransitionCycle build_cycle(const HubbardParams& p, const std::array<int, 4>& order) {
  p.validate();
  std::array<bool, 4> seen{};
  for (int s : order) {
    require(s >= 0 && s < 4, "cycle order entries must be basis states 0..3");
    require(!seen[s], "cycle order must be a permutation (single 4-cycle)");
    seen[s] = true;
  }
  const auto eps = state_energies(p);
  const double eps_max = *std::max_element(eps.begin(), eps.end());
  TransitionCycle cycle;
  cycle.order = order;
  cycle.normalization = std::exp(-p.beta * eps_max);
  for (int i = 0; i < 4; ++i) cycle.gamma_from[i] = std::exp(p.beta * (eps[i] - eps_max));
  return cycle;
}

KrausChannel cycle_channel(const TransitionCycle& cycle) {
  KrausChannel ch{4, 4, {}};
  for (int k = 0; k < 4; ++k) {
    const int i = cycle.order[k];
    const int j = cycle.order[(k + 1) % 4];
    const double g = cycle.gamma_from[i];
    require(g >= 0.0 && g <= 1.0, "cycle transition probability outside [0,1]");
    cmat op = cmat::Zero(4, 4);
    op(i, i) = std::sqrt(1.0 - g);
    op(j, i) = complexd(0.0, -1.0) * std::sqrt(g);
    ch.operators.push_back(std::move(op));
  }
  const double residual = validate_channel(ch);
  require(residual < 1e-12, "cycle channel fails completeness (malformed cycle)");
  return ch;
}

std::vector<DensityMatrix> prepare_thermal(const HubbardParams& p, const std::array<int, 4>& order,
                                           int n_steps, const DensityMatrix& rho0) {
  require(n_steps >= 1, "need at least one step");
  require(rho0.dim() == 4, "hubbard state must have dimension 4");
  const KrausChannel ch = cycle_channel(build_cycle(p, order));
  std::vector<DensityMatrix> out;
  out.reserve(n_steps + 1);
  out.push_back(rho0);
  for (int s = 0; s < n_steps; ++s) out.push_back(apply_channel(ch, out.back()));
  return out;
}

std::vector<DensityMatrix> prepare_thermal(const HubbardParams& p, const std::array<int, 4>& order,
                                           int n_steps) {
  return prepare_thermal(p, order, n_steps, DensityMatrix::basis_state(4, kEmpty));
}

}  // namespace dissim
