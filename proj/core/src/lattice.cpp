#include "dissim/lattice.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace dissim {

namespace {

// 10-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr std::array<double, 5> kGlNodes = {
    0.14887433898163121, 0.43339539412924719, 0.67940956829902441,
    0.86506336668898451, 0.97390652851717172};
constexpr std::array<double, 5> kGlWeights = {
    0.29552422471475287, 0.26926671930999635, 0.21908636251598204,
    0.14945134915058059, 0.066671344308688138};

}  // namespace

void LatticeParams::validate() const {
  require(gamma_h > 0.0, "lattice gamma_h must be positive");
  require(omega >= 0.0, "lattice omega must be non-negative");
  require(gamma >= 0.0, "lattice gamma must be non-negative");
  require(beta >= 0.0 && std::isfinite(beta), "lattice beta must be finite and non-negative");
  require(dt > 0.0, "lattice dt must be positive");
  require(n_steps >= 0, "lattice n_steps must be non-negative");
  if (2.0 * gamma * dt > 1.0) {
    std::ostringstream os;
    os << "lattice dt too large for gamma: 2*gamma*dt = " << 2.0 * gamma * dt
       << " exceeds 1, rotation-angle argument leaves [0,1]";
    throw validation_error(os.str());
  }
}

double dispersion(const LatticeParams& p, int step) {
  return band_energy(p.gamma_h, p.k + p.omega * step * p.dt);
}

double dispersion_at(const LatticeParams& p, double t) {
  return band_energy(p.gamma_h, p.k + p.omega * t);
}

StepAngles step_angles(const LatticeParams& p, int step) {
  const double eps = dispersion(p, step);
  const double g = 2.0 * p.gamma * p.dt;
  const double arg_fill = g * fermi(eps, p.beta);
  const double arg_drain = g * fermi(-eps, p.beta);
  if (arg_fill < 0.0 || arg_fill > 1.0 || arg_drain < 0.0 || arg_drain > 1.0) {
    std::ostringstream os;
    os << "rotation-angle argument outside [0,1] (2*gamma*dt*n_F = " << std::max(arg_fill, arg_drain)
       << "): dt too large for gamma";
    throw validation_error(os.str());
  }
  return {2.0 * std::asin(std::sqrt(arg_fill)), 2.0 * std::asin(std::sqrt(arg_drain))};
}

KrausChannel trotter_channel(const LatticeParams& p, int step) {
  const double eps = dispersion(p, step);
  const double g = 2.0 * p.gamma * p.dt;
  const double fill = g * fermi(eps, p.beta);
  const double drain = g * fermi(-eps, p.beta);
  require(fill <= 1.0 && drain <= 1.0, "dt too large for gamma");

  const complexd phase = std::exp(complexd(0.0, -eps * p.dt));
  cmat k0 = cmat::Zero(2, 2);
  k0(0, 0) = std::sqrt(1.0 - fill);
  k0(1, 1) = std::sqrt(1.0 - drain) * phase;

  KrausChannel ch{2, 2, {k0}};
  if (fill > 0.0) {
    cmat k1 = cmat::Zero(2, 2);
    k1(1, 0) = std::sqrt(fill);
    ch.operators.push_back(std::move(k1));
  }
  if (drain > 0.0) {
    cmat k2 = cmat::Zero(2, 2);
    k2(0, 1) = std::sqrt(drain);
    ch.operators.push_back(std::move(k2));
  }
  return ch;
}

DensitySeries evolve_density(const LatticeParams& p, double n0) {
  p.validate();
  require(n0 >= 0.0 && n0 <= 1.0, "initial occupation must lie in [0,1]");
  DensitySeries out;
  out.params = p;
  out.times.reserve(p.n_steps + 1);
  out.values.reserve(p.n_steps + 1);
  out.times.push_back(0.0);
  out.values.push_back(n0);
  DensityMatrix rho = DensityMatrix::two_level(n0);
  for (int s = 0; s < p.n_steps; ++s) {
    rho = apply_channel(trotter_channel(p, s), rho);
    out.times.push_back((s + 1) * p.dt);
    out.values.push_back(rho.population(1));
  }
  return out;
}

double steady_state_occupation(const LatticeParams& p, double k_m, int quadrature_points) {
  require(p.omega > 0.0, "steady-state occupation requires a positive omega");
  require(p.gamma > 0.0, "steady-state occupation requires a positive gamma");
  require(quadrature_points >= 10, "need at least 10 quadrature points");

  const double c = 2.0 * p.gamma / p.omega;
  const int panels = std::max(1, quadrature_points / 10);
  const double h = 2.0 * kPi / panels;

  double integral = 0.0;
  for (int panel = 0; panel < panels; ++panel) {
    const double mid = (panel + 0.5) * h;
    double acc = 0.0;
    for (size_t q = 0; q < kGlNodes.size(); ++q) {
      for (double sgn : {-1.0, 1.0}) {
        const double u = mid + sgn * kGlNodes[q] * (h / 2.0);
        acc += kGlWeights[q] * std::exp(-c * u) * fermi(band_energy(p.gamma_h, k_m - u), p.beta);
      }
    }
    integral += acc * (h / 2.0);
  }

  const double two_pi_c = 2.0 * kPi * c;
  const double tail = (two_pi_c > 700.0) ? 1.0 : 1.0 - std::exp(-two_pi_c);
  return c * integral / tail;
}

double max_steady_occupation(double gamma, double omega) {
  require(gamma > 0.0 && omega > 0.0, "max steady occupation requires gamma > 0 and omega > 0");
  return 0.5 * (1.0 + std::tanh(kPi * gamma / omega));
}

double dc_current(const std::vector<double>& k_m, const std::vector<double>& occupation,
                  double gamma_h) {
  require(k_m.size() == occupation.size(), "k grid and occupation size mismatch");
  require(k_m.size() >= 4, "need at least 4 grid points");
  const size_t n = k_m.size();
  const double dk = k_m[1] - k_m[0];
  require(dk > 0.0, "k grid must be increasing");
  for (size_t i = 0; i + 1 < n; ++i)
    require(std::abs(k_m[i + 1] - k_m[i] - dk) < 1e-9, "k grid must be uniform");
  require(std::abs(static_cast<double>(n) * dk - 2.0 * kPi) < 1e-9,
          "k grid must cover one full period of 2*pi");

  double sum = 0.0;
  for (size_t i = 0; i < n; ++i) sum += std::sin(k_m[i]) * occupation[i];
  return gamma_h / kPi * dk * sum;
}

}  // namespace dissim
