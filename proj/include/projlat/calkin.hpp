#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "projlat/types.hpp"

namespace projlat {

// Block-diagonal operator sequence, generated lazily per block index.  A
// truncation bound N stands in for the operator; tail windows over [N/2, N)
// model behaviour "up to compacts" at desk scale.
class BlockSequenceOperator {
 public:
  using Generator = std::function<Matrix(std::size_t)>;

  BlockSequenceOperator(Generator generator, std::size_t truncation);

  std::size_t truncation() const { return truncation_; }
  Matrix block(std::size_t index) const;
  int block_dim(std::size_t index) const;

  // Dense block-diagonal matrix of the first `upto` blocks.
  Matrix assemble(std::size_t upto) const;

  static BlockSequenceOperator map(const BlockSequenceOperator& a,
                                   std::function<Matrix(Matrix)> f);
  static BlockSequenceOperator map2(const BlockSequenceOperator& a,
                                    const BlockSequenceOperator& b,
                                    std::function<Matrix(Matrix, Matrix)> f);

 private:
  Generator generator_;
  std::size_t truncation_;
};

struct EssentialReport {
  double estimate = 0.0;
  // Maxima over the doubling windows [N/4, N/2) and [N/2, N).
  std::vector<double> window_max_sequence;
  bool converged = false;
};

// Max block norm over the tail window [N/2, N); requires N >= 8.
EssentialReport essential_norm_estimate(const BlockSequenceOperator& op);

// essential_norm_estimate(q^perp p) <= tol_ess.
bool essential_leq(const BlockSequenceOperator& p, const BlockSequenceOperator& q,
                   double tol_ess = 1e-6);

// Clustered union of tail-window block spectra, filtered to values present in
// both halves of the window.  The persistence radius is a desk-scale
// heuristic for "recurs along the tail".
std::vector<double> essential_spectrum_estimate(
    const BlockSequenceOperator& s,
    const ToleranceConfig& cfg = ToleranceConfig{},
    double persistence_radius = 1e-3);

// 2x2 blocks: P fixes the first coordinate, Q fixes (1, 1/(n+1)) normalized.
// The pair is essentially equal while every truncated meet is zero.
std::pair<BlockSequenceOperator, BlockSequenceOperator> badpq_family(
    std::size_t truncation);

// Diagonal replication of the same blocks so that every overlap value
// reappears in every tail window.
std::pair<BlockSequenceOperator, BlockSequenceOperator> pomega_family(
    std::size_t truncation);

struct ClosedSumReport {
  bool candidate_is_upper_bound = false;
  bool join_below_candidate = false;
  bool candidate_below_join = false;
  // Family members which bound the whole family essentially (at the tail
  // window scale) but not the blockwise join: witnesses that the modeled sum
  // is not closed.
  std::vector<int> overshooting_members;
  bool consistent_with_closed = false;
  bool heuristic = true;
};

// Compares the blockwise join of the family against a candidate upper bound
// under essential order.  Heuristic: a truncated model cannot certify
// closedness, only exhibit consistency or a concrete overshoot.
ClosedSumReport closed_sum_diagnostic(
    const std::vector<BlockSequenceOperator>& family,
    const BlockSequenceOperator& candidate,
    const ToleranceConfig& cfg = ToleranceConfig{}, double tol_ess = 1e-6);

}  // namespace projlat
