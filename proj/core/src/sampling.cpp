#include "dissim/sampling.hpp"

#include <Eigen/Eigenvalues>

namespace dissim {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (tag + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

cmat random_gaussian(Rng& rng, int rows, int cols) {
  cmat g(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) g(r, c) = complexd(rng.normal(), rng.normal());
  return g;
}

}  // namespace

DensityMatrix random_density(Rng& rng, int dim) {
  const cmat g = random_gaussian(rng, dim, dim);
  cmat rho = g * g.adjoint();
  rho /= rho.trace();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(std::move(rho));
}

DensityMatrix random_pure(Rng& rng, int dim) {
  cvec psi(dim);
  for (int i = 0; i < dim; ++i) psi(i) = complexd(rng.normal(), rng.normal());
  return DensityMatrix::pure(psi);
}

KrausChannel random_channel(Rng& rng, int dim, int n_operators) {
  require(n_operators >= 1, "need at least one Kraus operator");
  std::vector<cmat> blocks;
  cmat gram = cmat::Zero(dim, dim);
  for (int i = 0; i < n_operators; ++i) {
    blocks.push_back(random_gaussian(rng, dim, dim));
    gram += blocks.back().adjoint() * blocks.back();
  }
  // whiten: K_i = G_i gram^{-1/2}
  Eigen::SelfAdjointEigenSolver<cmat> es(gram);
  cmat inv_sqrt = es.eigenvectors() *
                  es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                  es.eigenvectors().adjoint();
  KrausChannel ch{dim, dim, {}};
  for (auto& b : blocks) ch.operators.push_back(b * inv_sqrt);
  return ch;
}

}  // namespace dissim
