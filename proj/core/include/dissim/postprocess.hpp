#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dissim/lattice.hpp"
#include "dissim/types.hpp"

namespace dissim {

/// Occupation averaged onto a uniform grid over one Floquet period
/// tau = 2*pi/omega.
struct PeriodCurve {
  std::vector<double> grid;    // times in [0, tau)
  std::vector<double> values;  // averaged occupation
  int n_periods = 0;
  double period = 0.0;

  /// Periodic quadratic interpolation of the curve at any time offset.
  double value_at(double t) const;
};

/// Drops the first n_cut points of the series (default 30, where the
/// transients have died off).
DensitySeries discard_transient(const DensitySeries& series, int n_cut = 30);

/// Quadratic (local 3-point) interpolation of the series onto a common
/// uniform grid over one Floquet period, averaged over every complete
/// period the series covers (the series must span at least two).
PeriodCurve floquet_average(const DensitySeries& series, int grid_points);

/// Shifts the curve so its period mean is exactly 1/2.
PeriodCurve center(const PeriodCurve& curve);

/// Per-grid-point extrapolation of the curves to zero reset count. The
/// canonical reset counts {2,3,4} use the exact interpolating quadratic;
/// any other set of three or more uses a least-squares quadratic.
PeriodCurve extrapolate_resets(const std::vector<PeriodCurve>& curves,
                               const std::vector<int>& resets);

/// Rescales a centered curve about 1/2 so its maximum equals the
/// zero-temperature ceiling (1/2)(1+tanh(pi*Gamma/Omega)). A flat curve is
/// returned unchanged with *flat_warning set.
PeriodCurve stretch(const PeriodCurve& curve, double gamma, double omega,
                    bool* flat_warning = nullptr);

/// CSV with mandatory header `t,n`, full double precision.
void write_series_csv(std::ostream& os, const DensitySeries& series);
std::string series_to_csv(const DensitySeries& series);

struct SeriesTable {
  std::vector<double> t;
  std::vector<double> n;
};
SeriesTable read_series_csv(std::istream& is);

/// CSV with mandatory header `t_mod_tau,n_ave,n_periods`.
void write_curve_csv(std::ostream& os, const PeriodCurve& curve);
std::string curve_to_csv(const PeriodCurve& curve);
PeriodCurve read_curve_csv(std::istream& is);

}  // namespace dissim
