#include "projlat/projection.hpp"

#include <cmath>

namespace projlat {

namespace {

constexpr double kIdempotentTol = 1e-9;
constexpr double kHermitianTol = 1e-9;
constexpr double kTraceTol = 1e-6;
// Keep threshold for the canonical Gram-Schmidt pass.  A genuinely missing
// range direction always shows a residual >= 1/sqrt(dim) on some coordinate
// vector, so with dim <= 64 this separates cleanly from round-off residuals.
constexpr double kCanonKeepTol = 1e-6;

// Canonical orthonormal basis of range(M): project coordinate vectors through
// M, orthonormalize in index order with two-pass Gram-Schmidt.
Matrix canonical_basis(const Matrix& m, int rank) {
  const int n = static_cast<int>(m.rows());
  Matrix basis(n, rank);
  int collected = 0;
  for (int j = 0; j < n && collected < rank; ++j) {
    Vector w = m.col(j);
    for (int pass = 0; pass < 2; ++pass) {
      for (int b = 0; b < collected; ++b) {
        w -= basis.col(b) * (basis.col(b).adjoint() * w)(0, 0);
      }
    }
    const double norm = w.norm();
    if (norm > kCanonKeepTol) {
      basis.col(collected++) = w / norm;
    }
  }
  if (collected != rank) {
    throw ToleranceError(
        "projection range collapsed during canonicalization: found " +
        std::to_string(collected) + " of " + std::to_string(rank) +
        " directions");
  }
  return basis;
}

}  // namespace

Projection Projection::from_matrix(const Matrix& m, const ToleranceConfig& cfg) {
  cfg.validate();
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw ArgumentError("projection matrix must be square and non-empty");
  }
  if (!m.allFinite()) {
    throw NumericInputError("projection matrix has non-finite entries");
  }
  if ((m - m.adjoint()).norm() > kHermitianTol) {
    throw NumericInputError("projection matrix is not self-adjoint");
  }
  if ((m * m - m).norm() > kIdempotentTol) {
    throw NumericInputError("projection matrix is not idempotent");
  }
  const double trace = m.trace().real();
  const int rank = static_cast<int>(std::llround(trace));
  if (std::abs(trace - static_cast<double>(rank)) > kTraceTol || rank < 0 ||
      rank > m.rows()) {
    throw NumericInputError("projection trace is not close to an integer rank");
  }

  Projection p;
  if (rank == 0) {
    p.matrix_ = Matrix::Zero(m.rows(), m.cols());
    p.basis_ = Matrix(m.rows(), 0);
    return p;
  }
  p.basis_ = canonical_basis(m, rank);
  p.matrix_ = p.basis_ * p.basis_.adjoint();
  p.matrix_ = 0.5 * (p.matrix_ + p.matrix_.adjoint().eval());
  return p;
}

Projection Projection::from_basis(const Matrix& basis_columns, int dim,
                                  const ToleranceConfig& cfg) {
  cfg.validate();
  if (dim <= 0) throw ArgumentError("projection dimension must be positive");
  if (basis_columns.cols() > 0 && basis_columns.rows() != dim) {
    throw ArgumentError("basis vector length does not match dimension");
  }
  if (!basis_columns.allFinite()) {
    throw NumericInputError("basis has non-finite entries");
  }

  // Modified Gram-Schmidt with rank_tol drop; input need not be orthonormal.
  Matrix ortho(dim, basis_columns.cols());
  int kept = 0;
  for (int j = 0; j < basis_columns.cols(); ++j) {
    Vector w = basis_columns.col(j);
    const double scale = std::max(1.0, w.norm());
    for (int pass = 0; pass < 2; ++pass) {
      for (int b = 0; b < kept; ++b) {
        w -= ortho.col(b) * (ortho.col(b).adjoint() * w)(0, 0);
      }
    }
    const double norm = w.norm();
    if (norm > cfg.rank_tol * scale) {
      ortho.col(kept++) = w / norm;
    }
  }
  if (kept == 0) return zero(dim);
  const Matrix b = ortho.leftCols(kept);
  return from_matrix(b * b.adjoint(), cfg);
}

Projection Projection::zero(int dim) {
  if (dim <= 0) throw ArgumentError("projection dimension must be positive");
  Projection p;
  p.matrix_ = Matrix::Zero(dim, dim);
  p.basis_ = Matrix(dim, 0);
  return p;
}

Projection Projection::identity(int dim) {
  if (dim <= 0) throw ArgumentError("projection dimension must be positive");
  Projection p;
  p.matrix_ = Matrix::Identity(dim, dim);
  p.basis_ = Matrix::Identity(dim, dim);
  return p;
}

bool Projection::operator==(const Projection& other) const {
  return dim() == other.dim() && rank() == other.rank() &&
         matrix_ == other.matrix_ && basis_ == other.basis_;
}

}  // namespace projlat
