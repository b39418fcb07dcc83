#include "dissim/lindblad.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

namespace dissim {

cmat lindblad_rhs(const LatticeParams& p, double t, const cmat& rho) {
  require(rho.rows() == 2 && rho.cols() == 2, "lindblad_rhs expects a 2x2 matrix");
  const double eps = dispersion_at(p, t);
  const double rate_fill = 2.0 * p.gamma * fermi(eps, p.beta);
  const double rate_drain = 2.0 * p.gamma * fermi(-eps, p.beta);

  // H = eps |1><1|; [H, rho] only rotates the coherences.
  cmat out = cmat::Zero(2, 2);
  const complexd i_eps(0.0, eps);
  out(0, 1) += i_eps * rho(0, 1);
  out(1, 0) += -i_eps * rho(1, 0);

  // L_fill = sqrt(rate_fill) |1><0|
  out(1, 1) += rate_fill * rho(0, 0);
  out(0, 0) -= rate_fill * rho(0, 0);
  out(0, 1) -= 0.5 * rate_fill * rho(0, 1);
  out(1, 0) -= 0.5 * rate_fill * rho(1, 0);

  // L_drain = sqrt(rate_drain) |0><1|
  out(0, 0) += rate_drain * rho(1, 1);
  out(1, 1) -= rate_drain * rho(1, 1);
  out(0, 1) -= 0.5 * rate_drain * rho(0, 1);
  out(1, 0) -= 0.5 * rate_drain * rho(1, 0);

  return out;
}

OdeSolution solve_master(const LatticeParams& p, const DensityMatrix& rho0, double t_max,
                         double dt_ode) {
  p.validate();
  require(rho0.dim() == 2, "solve_master expects a two-level state");
  require(dt_ode > 0.0, "dt_ode must be positive");
  require(dt_ode <= p.dt / 10.0 + 1e-15, "dt_ode must be at most dt/10");
  require(t_max >= 0.0, "t_max must be non-negative");

  const int n_sub = std::max(1, static_cast<int>(std::ceil(p.dt / dt_ode - 1e-12)));
  const double h = p.dt / n_sub;
  const int n_record = static_cast<int>(std::floor(t_max / p.dt + 1e-9));

  OdeSolution sol;
  sol.dt_ode = h;
  sol.times.reserve(n_record + 1);
  sol.values.reserve(n_record + 1);

  cmat rho = rho0.entries();
  double t = 0.0;
  sol.times.push_back(0.0);
  sol.values.push_back(rho(1, 1).real());
  for (int s = 0; s < n_record; ++s) {
    for (int sub = 0; sub < n_sub; ++sub) {
      const cmat k1 = lindblad_rhs(p, t, rho);
      const cmat k2 = lindblad_rhs(p, t + 0.5 * h, rho + 0.5 * h * k1);
      const cmat k3 = lindblad_rhs(p, t + 0.5 * h, rho + 0.5 * h * k2);
      const cmat k4 = lindblad_rhs(p, t + h, rho + h * k3);
      rho += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      t += h;
    }
    sol.times.push_back((s + 1) * p.dt);
    sol.values.push_back(rho(1, 1).real());
  }
  return sol;
}

double scalar_occupation(const LatticeParams& p, double n0, double t) {
  require(t >= 0.0, "time must be non-negative");
  require(n0 >= 0.0 && n0 <= 1.0, "initial occupation must lie in [0,1]");
  if (t == 0.0) return n0;
  const double two_gamma = 2.0 * p.gamma;
  auto integrand = [&](double s) {
    return std::exp(-two_gamma * (t - s)) * fermi(dispersion_at(p, s), p.beta);
  };
  const double integral = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      integrand, 0.0, t, 15, 1e-12);
  return n0 * std::exp(-two_gamma * t) + two_gamma * integral;
}

DensitySeries scalar_occupation_series(const LatticeParams& p, double n0) {
  p.validate();
  DensitySeries out;
  out.params = p;
  out.times.push_back(0.0);
  out.values.push_back(n0);
  double n = n0;
  LatticeParams shifted = p;
  for (int s = 0; s < p.n_steps; ++s) {
    // n(t+dt) from n(t) is the same convolution with the momentum advanced
    // by omega*t, so one short integral per step suffices.
    shifted.k = p.k + p.omega * s * p.dt;
    n = scalar_occupation(shifted, n, p.dt);
    out.times.push_back((s + 1) * p.dt);
    out.values.push_back(n);
  }
  return out;
}

}  // namespace dissim
