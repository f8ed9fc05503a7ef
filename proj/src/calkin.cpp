#include "projlat/calkin.hpp"

#include <algorithm>
#include <cmath>

#include "projlat/projection.hpp"
#include "projlat/projorder.hpp"
#include "projlat/spectra.hpp"

namespace projlat {

namespace {

constexpr double kConvergenceSlack = 1e-6;

void require_window(std::size_t truncation) {
  if (truncation < 8) {
    throw ConfigError("tail windows need a truncation of at least 8");
  }
}

double max_block_norm(const BlockSequenceOperator& op, std::size_t from,
                      std::size_t to) {
  double best = 0.0;
  for (std::size_t i = from; i < to; ++i) {
    best = std::max(best, operator_norm(op.block(i)));
  }
  return best;
}

std::vector<double> clustered_values(std::vector<double> values,
                                     double radius) {
  std::sort(values.begin(), values.end());
  std::vector<double> reps;
  std::size_t start = 0;
  while (start < values.size()) {
    std::size_t end = start + 1;
    while (end < values.size() && values[end] - values[end - 1] <= radius) {
      ++end;
    }
    double mean = 0.0;
    for (std::size_t i = start; i < end; ++i) mean += values[i];
    reps.push_back(mean / static_cast<double>(end - start));
    start = end;
  }
  return reps;
}

Matrix badpq_p_block(std::size_t) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  return m;
}

Matrix badpq_q_block(std::size_t n) {
  const double a = static_cast<double>(n) + 1.0;
  const double norm = std::sqrt(a * a + 1.0);
  Eigen::Vector2cd q;
  q << Complex(a / norm, 0.0), Complex(1.0 / norm, 0.0);
  return q * q.adjoint();
}

// Diagonal enumeration of omega x omega: index i sits on diagonal d at
// offset j, and the block repeats value index j.
std::size_t diagonal_offset(std::size_t i) {
  const double root =
      std::floor((std::sqrt(8.0 * static_cast<double>(i) + 1.0) - 1.0) / 2.0);
  std::size_t d = static_cast<std::size_t>(root);
  while ((d + 1) * (d + 2) / 2 <= i) ++d;
  while (d * (d + 1) / 2 > i) --d;
  return i - d * (d + 1) / 2;
}

}  // namespace

BlockSequenceOperator::BlockSequenceOperator(Generator generator,
                                             std::size_t truncation)
    : generator_(std::move(generator)), truncation_(truncation) {
  if (!generator_) throw ArgumentError("block generator must be callable");
  if (truncation_ == 0) throw ArgumentError("truncation must be positive");
}

Matrix BlockSequenceOperator::block(std::size_t index) const {
  Matrix b = generator_(index);
  if (b.rows() != b.cols() || b.rows() == 0) {
    throw NumericInputError("generated block must be square and non-empty");
  }
  if (!b.allFinite()) {
    throw NumericInputError("generated block has non-finite entries");
  }
  return b;
}

int BlockSequenceOperator::block_dim(std::size_t index) const {
  return static_cast<int>(block(index).rows());
}

Matrix BlockSequenceOperator::assemble(std::size_t upto) const {
  std::vector<Matrix> blocks;
  blocks.reserve(upto);
  int total = 0;
  for (std::size_t i = 0; i < upto; ++i) {
    blocks.push_back(block(i));
    total += static_cast<int>(blocks.back().rows());
  }
  Matrix out = Matrix::Zero(total, total);
  int at = 0;
  for (const Matrix& b : blocks) {
    out.block(at, at, b.rows(), b.cols()) = b;
    at += static_cast<int>(b.rows());
  }
  return out;
}

BlockSequenceOperator BlockSequenceOperator::map(
    const BlockSequenceOperator& a, std::function<Matrix(Matrix)> f) {
  auto gen = a.generator_;
  return BlockSequenceOperator(
      [gen, f](std::size_t i) { return f(gen(i)); }, a.truncation_);
}

BlockSequenceOperator BlockSequenceOperator::map2(
    const BlockSequenceOperator& a, const BlockSequenceOperator& b,
    std::function<Matrix(Matrix, Matrix)> f) {
  auto ga = a.generator_;
  auto gb = b.generator_;
  return BlockSequenceOperator(
      [ga, gb, f](std::size_t i) {
        Matrix x = ga(i);
        Matrix y = gb(i);
        if (x.rows() != y.rows() || x.cols() != y.cols()) {
          throw ArgumentError("block shapes disagree between operands");
        }
        return f(std::move(x), std::move(y));
      },
      std::min(a.truncation_, b.truncation_));
}

EssentialReport essential_norm_estimate(const BlockSequenceOperator& op) {
  const std::size_t n = op.truncation();
  require_window(n);
  EssentialReport report;
  report.window_max_sequence = {max_block_norm(op, n / 4, n / 2),
                                max_block_norm(op, n / 2, n)};
  report.estimate = report.window_max_sequence.back();
  report.converged = report.window_max_sequence[1] <=
                     report.window_max_sequence[0] + kConvergenceSlack;
  return report;
}

bool essential_leq(const BlockSequenceOperator& p, const BlockSequenceOperator& q,
                   double tol_ess) {
  const BlockSequenceOperator defect = BlockSequenceOperator::map2(
      p, q, [](Matrix pb, Matrix qb) -> Matrix {
        return (Matrix::Identity(qb.rows(), qb.cols()) - qb) * pb;
      });
  return essential_norm_estimate(defect).estimate <= tol_ess;
}

std::vector<double> essential_spectrum_estimate(const BlockSequenceOperator& s,
                                                const ToleranceConfig& cfg,
                                                double persistence_radius) {
  cfg.validate();
  const std::size_t n = s.truncation();
  require_window(n);
  std::vector<double> first_half;
  std::vector<double> second_half;
  for (std::size_t i = n / 2; i < n; ++i) {
    const HermitianOperator block(s.block(i), cfg);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(block.matrix(),
                                                 Eigen::EigenvaluesOnly);
    auto& sink = (i < n / 2 + (n - n / 2) / 2) ? first_half : second_half;
    for (int k = 0; k < solver.eigenvalues().size(); ++k) {
      sink.push_back(solver.eigenvalues()(k));
    }
  }
  const std::vector<double> reps1 =
      clustered_values(std::move(first_half), cfg.eig_cluster);
  const std::vector<double> reps2 =
      clustered_values(std::move(second_half), cfg.eig_cluster);
  std::vector<double> persistent;
  for (double v : reps1) {
    const auto it = std::lower_bound(reps2.begin(), reps2.end(), v);
    bool matched = false;
    if (it != reps2.end() && *it - v <= persistence_radius) matched = true;
    if (it != reps2.begin() && v - *(it - 1) <= persistence_radius) {
      matched = true;
    }
    if (matched) persistent.push_back(v);
  }
  return persistent;
}

std::pair<BlockSequenceOperator, BlockSequenceOperator> badpq_family(
    std::size_t truncation) {
  return {BlockSequenceOperator(badpq_p_block, truncation),
          BlockSequenceOperator(badpq_q_block, truncation)};
}

std::pair<BlockSequenceOperator, BlockSequenceOperator> pomega_family(
    std::size_t truncation) {
  return {BlockSequenceOperator(badpq_p_block, truncation),
          BlockSequenceOperator(
              [](std::size_t i) { return badpq_q_block(diagonal_offset(i)); },
              truncation)};
}

ClosedSumReport closed_sum_diagnostic(
    const std::vector<BlockSequenceOperator>& family,
    const BlockSequenceOperator& candidate, const ToleranceConfig& cfg,
    double tol_ess) {
  cfg.validate();
  if (family.empty()) throw ArgumentError("family must be non-empty");
  require_window(candidate.truncation());

  std::vector<BlockSequenceOperator> members = family;
  const BlockSequenceOperator blockwise_join(
      [members, cfg](std::size_t i) -> Matrix {
        std::vector<Projection> blocks;
        blocks.reserve(members.size());
        for (const auto& m : members) {
          blocks.push_back(Projection::from_matrix(m.block(i), cfg));
        }
        return join(blocks, cfg).matrix();
      },
      candidate.truncation());

  ClosedSumReport report;
  report.candidate_is_upper_bound = true;
  for (const auto& m : members) {
    report.candidate_is_upper_bound =
        report.candidate_is_upper_bound && essential_leq(m, candidate, tol_ess);
  }
  report.join_below_candidate =
      essential_leq(blockwise_join, candidate, tol_ess);
  report.candidate_below_join =
      essential_leq(candidate, blockwise_join, tol_ess);

  // Members can merge essentially no faster than the tail window resolves,
  // so member-vs-member comparisons run at the window scale.
  const double merge_tol =
      std::max(tol_ess, 4.0 / static_cast<double>(candidate.truncation()));
  for (std::size_t k = 0; k < members.size(); ++k) {
    bool bounds_family = true;
    for (const auto& other : members) {
      bounds_family =
          bounds_family && essential_leq(other, members[k], merge_tol);
    }
    if (bounds_family && !essential_leq(blockwise_join, members[k], merge_tol)) {
      report.overshooting_members.push_back(static_cast<int>(k));
    }
  }
  report.consistent_with_closed =
      report.candidate_is_upper_bound && report.join_below_candidate &&
      report.candidate_below_join && report.overshooting_members.empty();
  return report;
}

}  // namespace projlat
