#pragma once

#include <vector>

#include "projlat/types.hpp"

namespace projlat {

// Orthogonal projection on C^n, stored with a canonical orthonormal range
// basis.  Canonical form: coordinate vectors are projected onto the range and
// orthonormalized in index order, so equal subspaces produce bit-identical
// bases regardless of how they were presented.
class Projection {
 public:
  // Validates ||M^2 - M|| <= 1e-9, ||M - M*|| <= 1e-9 (Frobenius) and that
  // trace(M) is within 1e-6 of an integer rank, then canonicalizes.
  static Projection from_matrix(const Matrix& m,
                                const ToleranceConfig& cfg = ToleranceConfig{});

  // Accepts any spanning set of columns; orthonormalizes, drops directions
  // below rank_tol, canonicalizes.
  static Projection from_basis(const Matrix& basis_columns, int dim,
                               const ToleranceConfig& cfg = ToleranceConfig{});

  static Projection zero(int dim);
  static Projection identity(int dim);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  int rank() const { return static_cast<int>(basis_.cols()); }
  const Matrix& matrix() const { return matrix_; }
  // dim x rank, orthonormal columns, M * basis = basis.
  const Matrix& range_basis() const { return basis_; }

  bool operator==(const Projection& other) const;

 private:
  Projection() = default;
  Matrix matrix_;
  Matrix basis_;
};

}  // namespace projlat
