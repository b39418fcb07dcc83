#include "dissim/noise.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace dissim {

namespace {

// (p0-p1)^r and the reset fixed-point tail p1(1-(p0-p1)^r)/(1-p0+p1),
// guarded for the p0=1, p1=0 corner where the map is the identity.
struct ResetAffine {
  double scale;
  double tail;
};

ResetAffine reset_affine(const NoiseParams& np) {
  const double s = std::pow(np.p0 - np.p1, np.resets);
  const double denom = 1.0 - np.p0 + np.p1;
  if (std::abs(denom) < 1e-300) return {s, 0.0};
  return {s, np.p1 * (1.0 - s) / denom};
}

}  // namespace

void NoiseParams::validate() const {
  require(p0 >= 0.0 && p0 <= 1.0, "noise p0 must lie in [0,1]");
  require(p1 >= 0.0 && p1 <= 1.0, "noise p1 must lie in [0,1]");
  require(reset_time >= 0.0, "noise reset_time must be non-negative");
  require(resets >= 0, "noise resets must be non-negative");
}

double reset_success(double a0, const NoiseParams& np) {
  np.validate();
  require(np.resets >= 1, "reset_success is undefined for zero resets");
  require(a0 >= 0.0 && a0 <= 1.0, "a0 must lie in [0,1]");
  const auto [s, tail] = reset_affine(np);
  return a0 * s + tail;
}

KrausChannel noisy_reset_channel(const NoiseParams& np) {
  np.validate();
  require(np.resets >= 1, "noisy reset requires at least one reset gate");
  const auto [s, tail] = reset_affine(np);
  // classical transition matrix on the measurement basis; coherences die
  const double m00 = s + tail;     // 0 -> 0
  const double m10 = 1.0 - m00;    // 0 -> 1
  const double m01 = tail;         // 1 -> 0
  const double m11 = 1.0 - tail;   // 1 -> 1
  require(m00 >= -1e-12 && m10 >= -1e-12 && m01 >= -1e-12 && m11 >= -1e-12,
          "reset model produced a negative transition probability");
  KrausChannel ch{2, 2, {}};
  const double m[2][2] = {{std::max(0.0, m00), std::max(0.0, m01)},
                          {std::max(0.0, m10), std::max(0.0, m11)}};
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 2; ++i) {
      if (m[j][i] == 0.0) continue;
      cmat k = cmat::Zero(2, 2);
      k(j, i) = std::sqrt(m[j][i]);
      ch.operators.push_back(std::move(k));
    }
  return ch;
}

KrausChannel damping_channel(const NoiseParams& np) {
  np.validate();
  const double survive = std::exp(-np.resets * np.reset_time);
  cmat keep = cmat::Zero(2, 2);
  keep(0, 0) = 1.0;
  keep(1, 1) = std::sqrt(survive);
  KrausChannel ch{2, 2, {keep}};
  if (survive < 1.0) {
    cmat decay = cmat::Zero(2, 2);
    decay(0, 1) = std::sqrt(1.0 - survive);
    ch.operators.push_back(std::move(decay));
  }
  return ch;
}

std::pair<double, double> recurrence_step(double n_s, double a_s, int step,
                                          const LatticeParams& lp, const NoiseParams& np) {
  require(n_s >= -1e-9 && n_s <= 1.0 + 1e-9, "n_s must lie in [0,1]");
  require(a_s >= -1e-9 && a_s <= 1.0 + 1e-9, "a_s must lie in [0,1]");
  const double eps = dispersion(lp, step);
  const double nf = fermi(eps, lp.beta);
  const double nfm = fermi(-eps, lp.beta);
  const double g = 2.0 * lp.gamma * lp.dt;
  const double decay = std::exp(-np.resets * np.reset_time);

  const double n_next = 1.0 - decay * ((2.0 * a_s - 1.0) * (g * (n_s - nf) - n_s) + a_s);
  const double a_mid = a_s + g * (2.0 * a_s - 1.0) * ((n_s - 1.0) * nf - n_s * nfm);
  const auto [scale, tail] = reset_affine(np);
  const double a_next = a_mid * scale + tail;
  return {n_next, a_next};
}

double frozen_recurrence_step(double n_s, int step, const LatticeParams& lp,
                              const NoiseParams& np, double a0) {
  const double eps = dispersion(lp, step);
  const double nf = fermi(eps, lp.beta);
  const double g = 2.0 * lp.gamma * lp.dt;
  const double decay = std::exp(-np.resets * np.reset_time);
  return 1.0 - decay * ((2.0 * a0 - 1.0) * (g * (n_s - nf) - n_s) + a0);
}

DensitySeries noisy_series(const LatticeParams& lp, const NoiseParams& np, double n0,
                           double a_init) {
  lp.validate();
  np.validate();
  DensitySeries out;
  out.params = lp;
  out.times.push_back(0.0);
  out.values.push_back(n0);
  double n = n0, a = a_init;
  for (int s = 0; s < lp.n_steps; ++s) {
    std::tie(n, a) = recurrence_step(n, a, s, lp, np);
    out.times.push_back((s + 1) * lp.dt);
    out.values.push_back(n);
  }
  return out;
}

double closed_form_occupation(int s, double a0, const LatticeParams& lp, const NoiseParams& np) {
  require(s >= 0, "step must be non-negative");
  const double decay = std::exp(-np.resets * np.reset_time);
  const double scaled = a0 * decay;
  const double kernel = scaled * (1.0 - 2.0 * lp.gamma * lp.dt);
  const double shift = 0.5 + (1.0 - decay) / (2.0 * (1.0 - kernel));
  double acc = 0.0;  // sum_t tanh(beta eps_t / 2) kernel^{s-1-t}
  for (int t = 0; t < s; ++t)
    acc = acc * kernel + std::tanh(0.5 * lp.beta * dispersion(lp, t));
  return shift - scaled * lp.gamma * lp.dt * acc;
}

namespace {

struct Simplex {
  // Nelder-Mead over x = (reset_time, p0, p1) with box clamping; a small
  // quadratic penalty keeps the search from drifting far outside the box.
  static constexpr double kLo[3] = {0.0, 0.5, 0.5};
  static constexpr double kHi[3] = {1.0, 1.0, 1.0};

  std::function<double(const std::array<double, 3>&)> objective;

  static std::array<double, 3> clamp(const std::array<double, 3>& x) {
    std::array<double, 3> c = x;
    for (int i = 0; i < 3; ++i) c[i] = std::min(kHi[i], std::max(kLo[i], c[i]));
    return c;
  }

  double eval(const std::array<double, 3>& x) const {
    const auto c = clamp(x);
    double pen = 0.0;
    for (int i = 0; i < 3; ++i) pen += (x[i] - c[i]) * (x[i] - c[i]);
    return objective(c) + 1e3 * pen;
  }

  std::pair<std::array<double, 3>, double> minimize(std::array<double, 3> start,
                                                    int max_evals) const {
    std::array<std::array<double, 3>, 4> x;
    std::array<double, 4> f;
    const double steps[3] = {0.02, 0.01, 0.01};
    x[0] = clamp(start);
    f[0] = eval(x[0]);
    int evals = 1;
    for (int i = 0; i < 3; ++i) {
      x[i + 1] = x[0];
      x[i + 1][i] += (x[0][i] + steps[i] <= kHi[i]) ? steps[i] : -steps[i];
      f[i + 1] = eval(x[i + 1]);
      ++evals;
    }
    auto order = [&] {
      std::array<int, 4> idx = {0, 1, 2, 3};
      std::sort(idx.begin(), idx.end(), [&](int a, int b) { return f[a] < f[b]; });
      std::array<std::array<double, 3>, 4> x2;
      std::array<double, 4> f2;
      for (int i = 0; i < 4; ++i) {
        x2[i] = x[idx[i]];
        f2[i] = f[idx[i]];
      }
      x = x2;
      f = f2;
    };
    while (evals < max_evals) {
      order();
      if (f[3] - f[0] < 1e-16) break;
      std::array<double, 3> centroid = {0, 0, 0};
      for (int v = 0; v < 3; ++v)
        for (int i = 0; i < 3; ++i) centroid[i] += x[v][i] / 3.0;
      auto blend = [&](double coef) {
        std::array<double, 3> p;
        for (int i = 0; i < 3; ++i) p[i] = centroid[i] + coef * (centroid[i] - x[3][i]);
        return p;
      };
      const auto xr = blend(1.0);
      const double fr = eval(xr);
      ++evals;
      if (fr < f[0]) {
        const auto xe = blend(2.0);
        const double fe = eval(xe);
        ++evals;
        if (fe < fr) {
          x[3] = xe;
          f[3] = fe;
        } else {
          x[3] = xr;
          f[3] = fr;
        }
      } else if (fr < f[2]) {
        x[3] = xr;
        f[3] = fr;
      } else {
        const bool outside = fr < f[3];
        const auto xc = blend(outside ? 0.5 : -0.5);
        const double fc = eval(xc);
        ++evals;
        if (fc < (outside ? fr : f[3])) {
          x[3] = xc;
          f[3] = fc;
        } else {
          for (int v = 1; v < 4; ++v) {
            for (int i = 0; i < 3; ++i) x[v][i] = x[0][i] + 0.5 * (x[v][i] - x[0][i]);
            f[v] = eval(x[v]);
            ++evals;
          }
        }
      }
    }
    order();
    return {clamp(x[0]), f[0]};
  }
};

}  // namespace

NoiseFit fit_noise(const std::vector<DensitySeries>& observed, const std::vector<int>& resets,
                   const LatticeParams& lp, double n0, double a_init) {
  require(!observed.empty() && observed.size() == resets.size(),
          "fit_noise needs one reset count per observed series");
  for (const auto& s : observed)
    require(s.values.size() >= 2, "observed series too short to fit");

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& s : observed)
    for (double v : s.values) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }

  NoiseFit fit;
  if (hi - lo < 1e-12) {
    fit.ill_posed = true;
    fit.diagnostic =
        "observed series are constant: the residual surface is flat in (reset_time, p0, p1)";
  }

  Simplex nm;
  nm.objective = [&](const std::array<double, 3>& x) {
    NoiseParams np{x[1], x[2], x[0], 1};
    double sum = 0.0;
    for (size_t i = 0; i < observed.size(); ++i) {
      np.resets = resets[i];
      double n = n0, a = a_init;
      const auto& obs = observed[i].values;
      double d0 = obs[0] - n;
      sum += d0 * d0;
      const int steps = static_cast<int>(obs.size()) - 1;
      for (int s = 0; s < steps; ++s) {
        std::tie(n, a) = recurrence_step(n, a, s, lp, np);
        const double d = obs[s + 1] - n;
        sum += d * d;
      }
    }
    return sum;
  };

  constexpr std::array<std::array<double, 3>, 10> kStarts = {{
      {0.05, 0.96, 0.90},
      {0.02, 0.99, 0.95},
      {0.10, 0.95, 0.85},
      {0.30, 0.90, 0.80},
      {0.01, 0.97, 0.93},
      {0.15, 0.99, 0.90},
      {0.08, 0.93, 0.88},
      {0.50, 0.97, 0.75},
      {0.002, 0.995, 0.99},
      {0.25, 0.85, 0.70},
  }};

  std::array<double, 3> best{};
  double best_f = std::numeric_limits<double>::infinity();
  for (const auto& start : kStarts) {
    const auto [x, f] = nm.minimize(start, 4000);
    if (f < best_f) {
      best_f = f;
      best = x;
    }
  }
  // polish from the winner with a fresh simplex
  const auto [x, f] = nm.minimize(best, 6000);
  if (f < best_f) {
    best_f = f;
    best = x;
  }

  fit.params = NoiseParams{best[1], best[2], best[0], 1};
  fit.residual = best_f;
  return fit;
}

}  // namespace dissim
