#pragma once

#include "thaumakit/linalg.hpp"

#include <random>

namespace thaumakit::testing {

inline CMatrix ginibre(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  CMatrix g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) g(i, j) = Complex(n(rng), n(rng));
  return g;
}

inline HermitianOperator random_hermitian(int dim, std::mt19937_64& rng) {
  const CMatrix g = ginibre(dim, dim, rng);
  return HermitianOperator(CMatrix(0.5 * (g + g.adjoint())));
}

/// Density matrix of the given rank (Ginibre ensemble).
inline HermitianOperator random_density(int dim, std::mt19937_64& rng, int rank = -1) {
  if (rank <= 0) rank = dim;
  const CMatrix g = ginibre(dim, rank, rng);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return HermitianOperator(CMatrix(0.5 * (rho + rho.adjoint())));
}

inline CVector random_unit_vector(int dim, std::mt19937_64& rng) {
  CVector v = ginibre(dim, 1, rng).col(0);
  return v / v.norm();
}

}  // namespace thaumakit::testing
