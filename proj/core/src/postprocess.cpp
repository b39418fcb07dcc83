#include "dissim/postprocess.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace dissim {

namespace {

// quadratic Lagrange on a uniform stencil: y at fractional offset u from
// the middle point, u in [-1/2, 1/2] away from node i
double quad3(double ym, double y0, double yp, double u) {
  return ym * 0.5 * u * (u - 1.0) + y0 * (1.0 - u * u) + yp * 0.5 * u * (u + 1.0);
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

double PeriodCurve::value_at(double t) const {
  require(grid.size() >= 3, "period curve too short to interpolate");
  const int g = static_cast<int>(grid.size());
  const double h = period / g;
  double x = std::fmod(t, period);
  if (x < 0.0) x += period;
  x /= h;
  int i = static_cast<int>(std::lround(x));
  const double u = x - i;
  i %= g;
  const double ym = values[(i - 1 + g) % g];
  const double y0 = values[i];
  const double yp = values[(i + 1) % g];
  return quad3(ym, y0, yp, u);
}

DensitySeries discard_transient(const DensitySeries& series, int n_cut) {
  require(n_cut >= 0, "n_cut must be non-negative");
  require(n_cut < static_cast<int>(series.values.size()),
          "series too short for the requested transient cut");
  DensitySeries out;
  out.params = series.params;
  out.times.assign(series.times.begin() + n_cut, series.times.end());
  out.values.assign(series.values.begin() + n_cut, series.values.end());
  return out;
}

PeriodCurve floquet_average(const DensitySeries& series, int grid_points) {
  require(grid_points >= 4, "need at least 4 grid points");
  require(series.params.omega > 0.0, "Floquet averaging requires a positive omega");
  require(series.values.size() >= 3, "series too short");
  const double tau = series.params.period();
  const double dt = series.params.dt;
  const double t0 = series.times.front();
  const double span = series.times.back() - t0;
  require(span >= 2.0 * tau * (1.0 - 1e-12), "series must span at least two Floquet periods");
  const int n_periods = static_cast<int>(std::floor(span / tau + 1e-12));
  const int n = static_cast<int>(series.values.size());

  PeriodCurve curve;
  curve.period = tau;
  curve.n_periods = n_periods;
  curve.grid.resize(grid_points);
  curve.values.assign(grid_points, 0.0);
  for (int j = 0; j < grid_points; ++j) {
    curve.grid[j] = j * tau / grid_points;
    double acc = 0.0;
    for (int l = 0; l < n_periods; ++l) {
      const double x = (l * tau + curve.grid[j]) / dt;
      int i = static_cast<int>(std::lround(x));
      i = std::clamp(i, 1, n - 2);
      acc += quad3(series.values[i - 1], series.values[i], series.values[i + 1], x - i);
    }
    curve.values[j] = acc / n_periods;
  }
  return curve;
}

PeriodCurve center(const PeriodCurve& curve) {
  require(!curve.values.empty(), "cannot center an empty curve");
  double mean = 0.0;
  for (double v : curve.values) mean += v;
  mean /= static_cast<double>(curve.values.size());
  PeriodCurve out = curve;
  for (double& v : out.values) v += 0.5 - mean;
  return out;
}

PeriodCurve extrapolate_resets(const std::vector<PeriodCurve>& curves,
                               const std::vector<int>& resets) {
  require(curves.size() == resets.size(), "one reset count per curve required");
  require(curves.size() >= 3, "need at least three reset counts for a quadratic");
  const auto& base = curves.front();
  for (const auto& c : curves) {
    require(c.grid.size() == base.grid.size(), "curves must share a grid");
    for (size_t j = 0; j < c.grid.size(); ++j)
      require(std::abs(c.grid[j] - base.grid[j]) < 1e-12, "curves must share a grid");
  }

  std::vector<double> w(curves.size());
  std::vector<int> sorted = resets;
  std::sort(sorted.begin(), sorted.end());
  if (sorted == std::vector<int>{2, 3, 4} && resets == sorted) {
    w = {6.0, -8.0, 3.0};  // interpolating quadratic through r=2,3,4 at r=0
  } else {
    // least-squares quadratic; with three points this is interpolation
    const int m = static_cast<int>(resets.size());
    Eigen::MatrixXd v(m, 3);
    for (int i = 0; i < m; ++i) {
      v(i, 0) = 1.0;
      v(i, 1) = resets[i];
      v(i, 2) = static_cast<double>(resets[i]) * resets[i];
    }
    const Eigen::MatrixXd pinv = (v.transpose() * v).inverse() * v.transpose();
    for (int i = 0; i < m; ++i) w[i] = pinv(0, i);
  }

  PeriodCurve out = base;
  std::fill(out.values.begin(), out.values.end(), 0.0);
  int min_periods = curves.front().n_periods;
  for (size_t c = 0; c < curves.size(); ++c) {
    min_periods = std::min(min_periods, curves[c].n_periods);
    for (size_t j = 0; j < out.values.size(); ++j) out.values[j] += w[c] * curves[c].values[j];
  }
  out.n_periods = min_periods;
  return out;
}

PeriodCurve stretch(const PeriodCurve& curve, double gamma, double omega, bool* flat_warning) {
  require(!curve.values.empty(), "cannot stretch an empty curve");
  double mean = 0.0;
  for (double v : curve.values) mean += v;
  mean /= static_cast<double>(curve.values.size());
  require(std::abs(mean - 0.5) < 1e-9, "stretch expects a centered curve (period mean 1/2)");
  if (flat_warning) *flat_warning = false;

  const double peak = *std::max_element(curve.values.begin(), curve.values.end());
  const double amplitude = peak - 0.5;
  if (std::abs(amplitude) < 1e-12) {
    if (flat_warning) *flat_warning = true;
    return curve;
  }
  const double factor = (max_steady_occupation(gamma, omega) - 0.5) / amplitude;
  PeriodCurve out = curve;
  for (double& v : out.values) v = 0.5 + factor * (v - 0.5);
  return out;
}

void write_series_csv(std::ostream& os, const DensitySeries& series) {
  os << "t,n\n";
  for (size_t i = 0; i < series.times.size(); ++i)
    os << fmt_double(series.times[i]) << "," << fmt_double(series.values[i]) << "\n";
}

std::string series_to_csv(const DensitySeries& series) {
  std::ostringstream os;
  write_series_csv(os, series);
  return os.str();
}

SeriesTable read_series_csv(std::istream& is) {
  std::string line;
  require(static_cast<bool>(std::getline(is, line)), "empty series CSV");
  require(line == "t,n", "series CSV must start with the header 't,n'");
  SeriesTable table;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    require(comma != std::string::npos, "malformed series CSV row: " + line);
    table.t.push_back(std::stod(line.substr(0, comma)));
    table.n.push_back(std::stod(line.substr(comma + 1)));
  }
  return table;
}

void write_curve_csv(std::ostream& os, const PeriodCurve& curve) {
  os << "t_mod_tau,n_ave,n_periods\n";
  for (size_t i = 0; i < curve.grid.size(); ++i)
    os << fmt_double(curve.grid[i]) << "," << fmt_double(curve.values[i]) << ","
       << curve.n_periods << "\n";
}

std::string curve_to_csv(const PeriodCurve& curve) {
  std::ostringstream os;
  write_curve_csv(os, curve);
  return os.str();
}

PeriodCurve read_curve_csv(std::istream& is) {
  std::string line;
  require(static_cast<bool>(std::getline(is, line)), "empty curve CSV");
  require(line == "t_mod_tau,n_ave,n_periods",
          "curve CSV must start with the header 't_mod_tau,n_ave,n_periods'");
  PeriodCurve curve;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    require(c1 != std::string::npos && c2 != std::string::npos,
            "malformed curve CSV row: " + line);
    curve.grid.push_back(std::stod(line.substr(0, c1)));
    curve.values.push_back(std::stod(line.substr(c1 + 1, c2 - c1 - 1)));
    curve.n_periods = std::stoi(line.substr(c2 + 1));
  }
  if (curve.grid.size() >= 2)
    curve.period = (curve.grid[1] - curve.grid[0]) * static_cast<double>(curve.grid.size());
  return curve;
}

}  // namespace dissim
