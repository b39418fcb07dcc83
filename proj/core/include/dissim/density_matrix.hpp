#pragma once

#include <vector>

#include "dissim/types.hpp"

namespace dissim {

/// Validated quantum state: Hermitian, unit trace, positive semidefinite
/// up to a small eigenvalue floor (repeated floating-point channel
/// application produces eigenvalues slightly below zero).
class DensityMatrix {
public:
  static constexpr double kHermTol = 1e-12;
  static constexpr double kTraceTol = 1e-12;
  static constexpr double kEigenFloor = -1e-10;

  /// Validates all invariants; throws validation_error on failure.
  explicit DensityMatrix(cmat entries);

  /// Pure basis state |index><index| of the given dimension.
  static DensityMatrix basis_state(int dim, int index);
  /// I/dim.
  static DensityMatrix maximally_mixed(int dim);
  /// |psi><psi| from an (unnormalized) amplitude vector.
  static DensityMatrix pure(const cvec& amplitudes);
  /// Two-level state diag(1-n, n); n is the occupation of basis state 1.
  static DensityMatrix two_level(double n);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const cmat& entries() const { return entries_; }
  complexd operator()(int r, int c) const { return entries_(r, c); }
  double population(int index) const { return entries_(index, index).real(); }
  std::vector<double> populations() const;

private:
  cmat entries_;
};

/// Ordered Kraus operators K_i (dim_out x dim_in) satisfying the
/// completeness sum rule sum_i K_i^dag K_i = I.
struct KrausChannel {
  int dim_in = 0;
  int dim_out = 0;
  std::vector<cmat> operators;

  static KrausChannel identity(int dim);
  /// {|0><0|, |0><1|}: unconditional reset of a single qubit.
  static KrausChannel reset();
  static KrausChannel from_unitary(const cmat& u);
};

/// Column-stochastic matrix of readout probabilities p(measured m | prepared m').
class ConfusionMatrix {
public:
  static constexpr double kColumnTol = 1e-12;

  explicit ConfusionMatrix(dmat entries);

  /// Single-qubit confusion matrix from assignment fidelities
  /// p0 = p(0|0), p1 = p(1|1).
  static ConfusionMatrix single_qubit(double p0, double p1);
  /// n-qubit tensor power of a single-qubit confusion matrix.
  static ConfusionMatrix tensor_power(const ConfusionMatrix& base, int n);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const dmat& entries() const { return entries_; }

private:
  dmat entries_;
};

/// max-norm of sum K^dag K - I. Throws if the operator list is empty or
/// dimensions are inconsistent.
double validate_channel(const KrausChannel& channel);

/// sum_i K_i rho K_i^dag. Rejects dimension mismatches and channels whose
/// completeness residual exceeds 1e-12 (the error names the residual).
DensityMatrix apply_channel(const KrausChannel& channel, const DensityMatrix& state);

/// Same map applied to an arbitrary (not necessarily valid-state) matrix;
/// used to probe channels on matrix units.
cmat apply_channel_raw(const KrausChannel& channel, const cmat& m);

/// Kronecker product of states.
DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

/// Reduced state over the kept tensor factors. dims lists each factor's
/// dimension, slowest index first (factor 0 owns the most significant block).
DensityMatrix partial_trace(const DensityMatrix& state, const std::vector<int>& keep,
                            const std::vector<int>& dims);
cmat partial_trace_raw(const cmat& m, const std::vector<int>& keep, const std::vector<int>& dims);

/// (1/2) sum |eigenvalues(a-b)|, in [0,1].
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

/// Readout mitigation: cm^{-1} * raw, negatives clipped, renormalized to 1.
std::vector<double> mitigate_counts(const std::vector<double>& raw, const ConfusionMatrix& cm);

/// Forward application of a confusion matrix to ideal probabilities.
std::vector<double> apply_confusion(const std::vector<double>& probs, const ConfusionMatrix& cm);

}  // namespace dissim
