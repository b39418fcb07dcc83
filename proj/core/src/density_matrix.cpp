#include "dissim/density_matrix.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <cmath>
#include <numeric>
#include <sstream>

namespace dissim {

DensityMatrix::DensityMatrix(cmat entries) : entries_(std::move(entries)) {
  require(entries_.rows() == entries_.cols() && entries_.rows() > 0,
          "density matrix must be square and non-empty");
  const double herm = max_abs(entries_ - entries_.adjoint());
  if (herm >= kHermTol) {
    std::ostringstream os;
    os << "density matrix not Hermitian: max |rho - rho^dag| = " << herm;
    throw validation_error(os.str());
  }
  const double tr_err = std::abs(entries_.trace() - complexd(1.0, 0.0));
  if (tr_err >= kTraceTol) {
    std::ostringstream os;
    os << "density matrix trace differs from 1 by " << tr_err;
    throw validation_error(os.str());
  }
  Eigen::SelfAdjointEigenSolver<cmat> es(entries_, Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < kEigenFloor) {
    std::ostringstream os;
    os << "density matrix has eigenvalue " << min_eig << " below floor " << kEigenFloor;
    throw validation_error(os.str());
  }
}

DensityMatrix DensityMatrix::basis_state(int dim, int index) {
  require(index >= 0 && index < dim, "basis index out of range");
  cmat m = cmat::Zero(dim, dim);
  m(index, index) = 1.0;
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  return DensityMatrix(cmat::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::pure(const cvec& amplitudes) {
  const double norm = amplitudes.norm();
  require(norm > 0.0, "pure state requires a nonzero amplitude vector");
  cvec psi = amplitudes / norm;
  return DensityMatrix(psi * psi.adjoint());
}

DensityMatrix DensityMatrix::two_level(double n) {
  require(n >= 0.0 && n <= 1.0, "occupation must lie in [0,1]");
  cmat m = cmat::Zero(2, 2);
  m(0, 0) = 1.0 - n;
  m(1, 1) = n;
  return DensityMatrix(std::move(m));
}

std::vector<double> DensityMatrix::populations() const {
  std::vector<double> p(dim());
  for (int i = 0; i < dim(); ++i) p[i] = entries_(i, i).real();
  return p;
}

KrausChannel KrausChannel::identity(int dim) {
  return {dim, dim, {cmat::Identity(dim, dim)}};
}

KrausChannel KrausChannel::reset() {
  cmat k0 = cmat::Zero(2, 2);
  cmat k1 = cmat::Zero(2, 2);
  k0(0, 0) = 1.0;
  k1(0, 1) = 1.0;
  return {2, 2, {k0, k1}};
}

KrausChannel KrausChannel::from_unitary(const cmat& u) {
  require(u.rows() == u.cols(), "unitary must be square");
  return {static_cast<int>(u.cols()), static_cast<int>(u.rows()), {u}};
}

ConfusionMatrix::ConfusionMatrix(dmat entries) : entries_(std::move(entries)) {
  require(entries_.rows() == entries_.cols() && entries_.rows() > 0,
          "confusion matrix must be square and non-empty");
  for (Eigen::Index c = 0; c < entries_.cols(); ++c) {
    double sum = 0.0;
    for (Eigen::Index r = 0; r < entries_.rows(); ++r) {
      const double v = entries_(r, c);
      require(v >= 0.0 && v <= 1.0, "confusion matrix entries must lie in [0,1]");
      sum += v;
    }
    if (std::abs(sum - 1.0) >= kColumnTol) {
      std::ostringstream os;
      os << "confusion matrix column " << c << " sums to " << sum;
      throw validation_error(os.str());
    }
  }
}

ConfusionMatrix ConfusionMatrix::single_qubit(double p0, double p1) {
  dmat m(2, 2);
  m << p0, 1.0 - p1, 1.0 - p0, p1;
  return ConfusionMatrix(std::move(m));
}

ConfusionMatrix ConfusionMatrix::tensor_power(const ConfusionMatrix& base, int n) {
  require(n >= 1, "tensor power requires n >= 1");
  dmat m = base.entries();
  for (int i = 1; i < n; ++i) {
    dmat next(m.rows() * base.dim(), m.cols() * base.dim());
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c)
        next.block(r * base.dim(), c * base.dim(), base.dim(), base.dim()) =
            m(r, c) * base.entries();
    m = std::move(next);
  }
  return ConfusionMatrix(std::move(m));
}

double validate_channel(const KrausChannel& channel) {
  require(!channel.operators.empty(), "channel has no Kraus operators");
  const auto rows = channel.operators.front().rows();
  const auto cols = channel.operators.front().cols();
  require(rows == channel.dim_out && cols == channel.dim_in,
          "Kraus operator shape disagrees with channel dimensions");
  cmat sum = cmat::Zero(cols, cols);
  for (const cmat& k : channel.operators) {
    require(k.rows() == rows && k.cols() == cols, "Kraus operators must share dimensions");
    sum += k.adjoint() * k;
  }
  return max_abs(sum - cmat::Identity(cols, cols));
}

cmat apply_channel_raw(const KrausChannel& channel, const cmat& m) {
  cmat out = cmat::Zero(channel.dim_out, channel.dim_out);
  for (const cmat& k : channel.operators) out += k * m * k.adjoint();
  return out;
}

DensityMatrix apply_channel(const KrausChannel& channel, const DensityMatrix& state) {
  require(channel.dim_in == state.dim(), "channel input dimension does not match state");
  const double residual = validate_channel(channel);
  if (residual >= 1e-12) {
    std::ostringstream os;
    os << "channel fails completeness: residual " << residual;
    throw validation_error(os.str());
  }
  return DensityMatrix(apply_channel_raw(channel, state.entries()));
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(kron(a.entries(), b.entries()));
}

cmat partial_trace_raw(const cmat& m, const std::vector<int>& keep, const std::vector<int>& dims) {
  int total = 1;
  for (int d : dims) {
    require(d >= 1, "factor dimensions must be positive");
    total *= d;
  }
  require(total == m.rows(), "product of factor dimensions must equal matrix dimension");
  std::vector<bool> kept(dims.size(), false);
  for (int k : keep) {
    require(k >= 0 && k < static_cast<int>(dims.size()), "keep index out of range");
    kept[k] = true;
  }
  int dim_keep = 1;
  for (size_t f = 0; f < dims.size(); ++f)
    if (kept[f]) dim_keep *= dims[f];

  // strides of each factor in the flattened index, factor 0 most significant
  std::vector<int> stride(dims.size(), 1);
  for (int f = static_cast<int>(dims.size()) - 2; f >= 0; --f)
    stride[f] = stride[f + 1] * dims[f + 1];

  cmat out = cmat::Zero(dim_keep, dim_keep);
  const int n = static_cast<int>(m.rows());
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      int rk = 0, ck = 0;
      bool diagonal_traced = true;
      int keep_stride = dim_keep;
      for (size_t f = 0; f < dims.size(); ++f) {
        const int rf = (r / stride[f]) % dims[f];
        const int cf = (c / stride[f]) % dims[f];
        if (kept[f]) {
          keep_stride /= dims[f];
          rk += rf * keep_stride;
          ck += cf * keep_stride;
        } else if (rf != cf) {
          diagonal_traced = false;
          break;
        }
      }
      if (diagonal_traced) out(rk, ck) += m(r, c);
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& state, const std::vector<int>& keep,
                            const std::vector<int>& dims) {
  return DensityMatrix(partial_trace_raw(state.entries(), keep, dims));
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  require(a.dim() == b.dim(), "trace distance requires equal dimensions");
  Eigen::SelfAdjointEigenSolver<cmat> es(a.entries() - b.entries(), Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

std::vector<double> apply_confusion(const std::vector<double>& probs, const ConfusionMatrix& cm) {
  require(static_cast<int>(probs.size()) == cm.dim(), "probability vector size mismatch");
  std::vector<double> out(probs.size(), 0.0);
  for (int r = 0; r < cm.dim(); ++r)
    for (int c = 0; c < cm.dim(); ++c) out[r] += cm.entries()(r, c) * probs[c];
  return out;
}

std::vector<double> mitigate_counts(const std::vector<double>& raw, const ConfusionMatrix& cm) {
  require(static_cast<int>(raw.size()) == cm.dim(), "probability vector size mismatch");
  const double sum = std::accumulate(raw.begin(), raw.end(), 0.0);
  require(std::abs(sum - 1.0) < 1e-9, "raw probabilities must sum to 1 within 1e-9");

  Eigen::FullPivLU<dmat> lu(cm.entries());
  require(lu.isInvertible(), "confusion matrix is singular");
  dvec r(raw.size());
  for (size_t i = 0; i < raw.size(); ++i) r(static_cast<Eigen::Index>(i)) = raw[i];
  dvec x = lu.solve(r);

  double total = 0.0;
  std::vector<double> out(raw.size());
  for (size_t i = 0; i < raw.size(); ++i) {
    out[i] = std::max(0.0, x(static_cast<Eigen::Index>(i)));
    total += out[i];
  }
  require(total > 0.0, "mitigated distribution vanished");
  for (double& v : out) v /= total;
  return out;
}

}  // namespace dissim
