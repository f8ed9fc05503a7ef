#include "projlat/rng.hpp"

#include <cmath>

namespace projlat {

double SeededRng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double SeededRng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

int SeededRng::uniform_int(int lo, int hi) {
  if (hi < lo) throw ArgumentError("empty integer range");
  const double span = static_cast<double>(hi) - static_cast<double>(lo) + 1.0;
  const int offset = static_cast<int>(uniform() * span);
  return lo + std::min(offset, hi - lo);
}

double SeededRng::normal() {
  // Box-Muller on (0, 1] draws; one branch only, for stream stability.
  const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * 3.141592653589793238462643383279502884 * u2);
}

Complex SeededRng::gaussian_complex() {
  const double re = normal();
  const double im = normal();
  return Complex(re, im);
}

Matrix SeededRng::gaussian_matrix(int rows, int cols) {
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = gaussian_complex();
  }
  return m;
}

Matrix SeededRng::random_unitary(int dim) {
  if (dim <= 0) throw ArgumentError("dimension must be positive");
  // Modified Gram-Schmidt on a Gaussian matrix; full rank with probability 1.
  Matrix g = gaussian_matrix(dim, dim);
  for (int j = 0; j < dim; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (int k = 0; k < j; ++k) {
        g.col(j) -= g.col(k) * (g.col(k).adjoint() * g.col(j))(0, 0);
      }
    }
    g.col(j) /= g.col(j).norm();
  }
  return g;
}

HermitianOperator SeededRng::random_hermitian(int dim,
                                              const ToleranceConfig& cfg) {
  const Matrix g = gaussian_matrix(dim, dim);
  return HermitianOperator(0.5 * (g + g.adjoint()), cfg);
}

Projection SeededRng::random_projection(int dim, int rank,
                                        const ToleranceConfig& cfg) {
  if (rank < 0 || rank > dim) throw ArgumentError("rank out of range");
  if (rank == 0) return Projection::zero(dim);
  return Projection::from_basis(gaussian_matrix(dim, rank), dim, cfg);
}

Projection SeededRng::random_subprojection(const Projection& p, int rank,
                                           const ToleranceConfig& cfg) {
  if (rank < 0 || rank > p.rank()) {
    throw ArgumentError("subprojection rank out of range");
  }
  if (rank == 0) return Projection::zero(p.dim());
  const Matrix mix = gaussian_matrix(p.rank(), rank);
  return Projection::from_basis(p.range_basis() * mix, p.dim(), cfg);
}

}  // namespace projlat
