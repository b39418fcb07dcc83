#pragma once

#include <vector>

#include "dissim/density_matrix.hpp"
#include "dissim/lattice.hpp"
#include "dissim/types.hpp"

namespace dissim {

/// Continuous-time reference solution sampled at the Trotter times.
struct OdeSolution {
  std::vector<double> times;
  std::vector<double> values;  // occupation n_k(t)
  double dt_ode = 0.0;
  int order = 4;
};

/// Right-hand side of the master equation for one mode,
///   d rho/dt = -i[H(t), rho] + sum_l ( L rho L^dag - (1/2){L^dag L, rho} ),
/// with jump operators L_fill = sqrt(2 Gamma n_F(eps)) d^dag and
/// L_drain = sqrt(2 Gamma n_F(-eps)) d. This choice reproduces the scalar
/// occupation equation dn/dt = -2 Gamma (n - n_F(eps(t))) exactly and has
/// the instantaneous thermal state as its fixed point; the output is
/// Hermitian and traceless.
cmat lindblad_rhs(const LatticeParams& p, double t, const cmat& rho);

/// Fixed-step classical RK4 integration of lindblad_rhs, sampled at the
/// Trotter times s*dt up to t_max. dt_ode must be at most dt/10 so the
/// oracle error stays far below the Trotter error it certifies.
OdeSolution solve_master(const LatticeParams& p, const DensityMatrix& rho0, double t_max,
                         double dt_ode);

/// Closed-form convolution solution of the scalar occupation equation,
///   n(t) = n0 e^{-2G t} + 2G Int_0^t ds e^{-2G(t-s)} n_F(eps(k + W s)),
/// evaluated by adaptive quadrature (absolute tolerance ~1e-10).
double scalar_occupation(const LatticeParams& p, double n0, double t);

/// scalar_occupation evaluated at every Trotter sample time, composed
/// incrementally (the convolution solution composes exactly step to step).
DensitySeries scalar_occupation_series(const LatticeParams& p, double n0);

}  // namespace dissim
