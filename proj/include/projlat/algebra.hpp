#pragma once

#include <vector>

#include "projlat/spectra.hpp"
#include "projlat/types.hpp"

namespace projlat {

// Finite direct sum of full matrix blocks.
struct BlockAlgebra {
  std::vector<int> block_dims;

  void validate() const;
  int total_dim() const;
  bool operator==(const BlockAlgebra& other) const {
    return block_dims == other.block_dims;
  }
};

class AlgebraElement {
 public:
  AlgebraElement(BlockAlgebra algebra, std::vector<Matrix> blocks);

  static AlgebraElement zero(const BlockAlgebra& algebra);
  static AlgebraElement identity(const BlockAlgebra& algebra);

  const BlockAlgebra& algebra() const { return algebra_; }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  const Matrix& block(int i) const { return blocks_[static_cast<std::size_t>(i)]; }
  Matrix& block(int i) { return blocks_[static_cast<std::size_t>(i)]; }

  bool is_hermitian(double tol = 1e-9) const;
  bool is_projection(double tol = 1e-9) const;
  AlgebraElement adjoint() const;
  // Dense block-diagonal form, for oracle-side cross checks.
  Matrix assemble() const;

  friend AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator*(double c, const AlgebraElement& a);

 private:
  BlockAlgebra algebra_;
  std::vector<Matrix> blocks_;
};

// Unital morphism between block algebras: each target block selects one
// source block and conjugates it by a unitary.  Surjective exactly when the
// selected source blocks are pairwise distinct.
class Morphism {
 public:
  struct BlockAssignment {
    int source_block = 0;
    Matrix unitary;
  };

  Morphism(BlockAlgebra source, BlockAlgebra target,
           std::vector<BlockAssignment> assignment);

  // Target derived from the assignment (block j has the unitary's dimension).
  static Morphism from_assignment(BlockAlgebra source,
                                  std::vector<BlockAssignment> assignment);

  const BlockAlgebra& source() const { return source_; }
  const BlockAlgebra& target() const { return target_; }
  const std::vector<BlockAssignment>& assignment() const { return assignment_; }
  bool surjective() const;

  AlgebraElement apply(const AlgebraElement& x) const;

 private:
  BlockAlgebra source_;
  BlockAlgebra target_;
  std::vector<BlockAssignment> assignment_;
};

AlgebraElement apply(const Morphism& m, const AlgebraElement& x);

// Blockwise projection order.
bool element_leq(const AlgebraElement& p, const AlgebraElement& q,
                 const ToleranceConfig& cfg = ToleranceConfig{});

// Blockwise spectral family of a self-adjoint element.
AlgebraElement element_spectral_family(const AlgebraElement& s, double t,
                                       FamilySide side,
                                       const ToleranceConfig& cfg = ToleranceConfig{});

// For surjective m and a target projection q <= apply(m, P): lifts q through
// the canonical section, symmetrizes, and cuts the spectral window of PSP at
// delta = 1/4.  apply(m, result) reproduces q blockwise and result <= P.
AlgebraElement pullback_projection(const Morphism& m, const AlgebraElement& q,
                                   const AlgebraElement& p,
                                   const ToleranceConfig& cfg = ToleranceConfig{});

// Two-sided refinement: for R <= P with apply(m,R) <= q <= apply(m,P),
// returns Q with R <= Q <= P and apply(m, Q) = q.
AlgebraElement sandwich_pullback(const Morphism& m, const AlgebraElement& q,
                                 const AlgebraElement& r, const AlgebraElement& p,
                                 const ToleranceConfig& cfg = ToleranceConfig{});

// For a strict finite pregap (ps increasing, qs decreasing, every p strictly
// below every q) returns a source projection whose image sits strictly
// between both chains; a rank-1 top gap has no strict interpolant and yields
// the lower endpoint's pullback instead.
AlgebraElement interpolate_pregap(const Morphism& m,
                                  const std::vector<AlgebraElement>& ps,
                                  const std::vector<AlgebraElement>& qs,
                                  const ToleranceConfig& cfg = ToleranceConfig{});

// Checks both spectral-order transport directions:
//   P <= E_S(t)   implies  apply(P) <= E_{apply(S)}(t)
//   E_S(t-) <= P  implies  E_{apply(S)}(t-) <= apply(P).
bool pushforward_spectral_bound_check(const Morphism& m, const AlgebraElement& p,
                                      const AlgebraElement& s, double t,
                                      const ToleranceConfig& cfg = ToleranceConfig{});

}  // namespace projlat
