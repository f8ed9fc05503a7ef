#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "projlat/calkin.hpp"
#include "projlat/projection.hpp"
#include "projlat/projorder.hpp"
#include "projlat/spectra.hpp"
#include "projlat/types.hpp"

using namespace projlat;

namespace {

const ToleranceConfig cfg;

Matrix diag_matrix(std::initializer_list<double> entries) {
  const int d = static_cast<int>(entries.size());
  Matrix m = Matrix::Zero(d, d);
  int i = 0;
  for (double e : entries) m(i, i) = e, ++i;
  return m;
}

BlockSequenceOperator constant_blocks(Matrix m, std::size_t trunc) {
  return BlockSequenceOperator([m](std::size_t) -> Matrix { return m; }, trunc);
}

bool spectrum_contains(const std::vector<double>& values, double v, double tol) {
  return std::any_of(values.begin(), values.end(),
                     [&](double x) { return std::abs(x - v) <= tol; });
}

}  // namespace

TEST_CASE("sequence operator plumbing") {
  const BlockSequenceOperator op(
      [](std::size_t n) -> Matrix {
        return static_cast<double>(n) * Matrix::Identity(2, 2);
      },
      16);
  CHECK(op.truncation() == 16);
  CHECK(op.block_dim(3) == 2);
  CHECK(op.block(3)(0, 0).real() == doctest::Approx(3.0));

  const Matrix dense = op.assemble(3);
  REQUIRE(dense.rows() == 6);
  CHECK(dense(0, 0).real() == doctest::Approx(0.0));
  CHECK(dense(4, 4).real() == doctest::Approx(2.0));

  const BlockSequenceOperator empty(
      [](std::size_t) -> Matrix { return Matrix::Zero(0, 0); }, 16);
  CHECK_THROWS_AS(empty.block(0), NumericInputError);
  const BlockSequenceOperator skew(
      [](std::size_t) -> Matrix { return Matrix::Zero(2, 3); }, 16);
  CHECK_THROWS_AS(skew.block(1), NumericInputError);
  CHECK_THROWS_AS(BlockSequenceOperator(nullptr, 16), ArgumentError);
  CHECK_THROWS_AS(constant_blocks(Matrix::Identity(2, 2), 0), ArgumentError);
}

TEST_CASE("map2 requires matching block shapes") {
  const auto a = constant_blocks(Matrix::Identity(2, 2), 16);
  const auto b = constant_blocks(Matrix::Identity(3, 3), 16);
  const auto bad = BlockSequenceOperator::map2(
      a, b, [](Matrix x, Matrix y) -> Matrix { return x + y; });
  CHECK_THROWS_AS(bad.block(0), ArgumentError);
}

TEST_CASE("essential norm estimates") {
  CHECK(essential_norm_estimate(constant_blocks(Matrix::Zero(2, 2), 64)).estimate ==
        doctest::Approx(0.0));
  const EssentialReport one =
      essential_norm_estimate(constant_blocks(Matrix::Identity(2, 2), 64));
  CHECK(one.estimate == doctest::Approx(1.0));
  CHECK(one.converged);

  // Blocks decaying like 1/(n+1) vanish at the window rate.
  const BlockSequenceOperator decaying(
      [](std::size_t n) -> Matrix {
        return (1.0 / (static_cast<double>(n) + 1.0)) * Matrix::Identity(2, 2);
      },
      1024);
  CHECK(essential_norm_estimate(decaying).estimate <= 2.0 / 1024.0);

  CHECK_THROWS_AS(
      essential_norm_estimate(constant_blocks(Matrix::Identity(2, 2), 4)),
      ConfigError);
}

TEST_CASE("essential order on constants") {
  const auto p = constant_blocks(diag_matrix({1.0, 0.0}), 64);
  const auto q = constant_blocks(diag_matrix({0.0, 1.0}), 64);
  CHECK(essential_leq(p, p));
  CHECK_FALSE(essential_leq(p, q));
  CHECK_FALSE(essential_leq(q, p));
  CHECK(essential_leq(p, constant_blocks(Matrix::Identity(2, 2), 64)));
}

TEST_CASE("the tilted pair merges essentially but meets at zero") {
  const std::size_t n_trunc = 200;
  const auto [p, q] = badpq_family(n_trunc);

  // Difference dies at the tail-window rate, not faster.
  const double essdiff = essential_norm_estimate(BlockSequenceOperator::map2(
                             p, q,
                             [](Matrix a, Matrix b) -> Matrix { return a - b; }))
                             .estimate;
  CHECK(essdiff <= 2.0 / static_cast<double>(n_trunc));
  CHECK(essdiff > 0.0);

  const double window_scale = 2.0 / static_cast<double>(n_trunc);
  CHECK(essential_leq(p, q, window_scale));
  CHECK(essential_leq(q, p, window_scale));

  // Block overlap ||P_n Q_n||^2 = (n+1)^2 / ((n+1)^2 + 1).
  for (std::size_t n : {std::size_t{0}, std::size_t{1}, std::size_t{7}}) {
    const double overlap = operator_norm(p.block(n) * q.block(n));
    const double m = static_cast<double>(n + 1);
    CHECK(overlap * overlap ==
          doctest::Approx(m * m / (m * m + 1.0)).epsilon(1e-12));
  }
  CHECK(operator_norm(p.block(0) * q.block(0)) ==
        doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));

  // Every truncated meet vanishes while the tail overlap climbs to 1.
  for (std::size_t cut : {std::size_t{8}, std::size_t{32}, std::size_t{64}}) {
    const Projection pd = Projection::from_matrix(p.assemble(cut), cfg);
    const Projection qd = Projection::from_matrix(q.assemble(cut), cfg);
    CHECK(meet_spectral({pd, qd}, cfg).rank() == 0);
  }
  const double tail_overlap =
      operator_norm(p.block(n_trunc - 1) * q.block(n_trunc - 1));
  CHECK(tail_overlap >= 1.0 - 1.0 / static_cast<double>(n_trunc));
}

TEST_CASE("the tilted pair separates under the strict essential tolerance") {
  // The tail defect only drops below 1e-6 once the window passes ~2e6 blocks.
  const std::size_t big = 4000000;
  const auto [p, q] = badpq_family(big);
  CHECK(essential_leq(p, q));
  CHECK(essential_leq(q, p));

  const std::size_t small = 200;
  const auto [ps, qs] = badpq_family(small);
  CHECK_FALSE(essential_leq(ps, qs));
  CHECK_FALSE(essential_leq(qs, ps));
}

TEST_CASE("essential spectra") {
  const auto diag_const = constant_blocks(diag_matrix({1.0, 0.0}), 64);
  const auto spec = essential_spectrum_estimate(diag_const, cfg);
  CHECK(spectrum_contains(spec, 0.0, 1e-9));
  CHECK(spectrum_contains(spec, 1.0, 1e-9));

  const auto zero =
      essential_spectrum_estimate(constant_blocks(Matrix::Zero(2, 2), 64), cfg);
  REQUIRE(zero.size() == 1);
  CHECK(zero[0] == doctest::Approx(0.0));

  // PQP carries the overlap squares (n+1)^2 / ((n+1)^2 + 1) along the tail;
  // the report keeps the values it saw in the first half of the window.
  const std::size_t n_trunc = 64;
  const auto [p, q] = badpq_family(n_trunc);
  const auto pqp = BlockSequenceOperator::map2(
      p, q, [](Matrix a, Matrix b) -> Matrix { return a * b * a; });
  const auto pqp_spec = essential_spectrum_estimate(pqp, cfg);
  for (std::size_t n = n_trunc / 2; n < n_trunc / 2 + n_trunc / 4; n += 4) {
    const double m = static_cast<double>(n + 1);
    CHECK(spectrum_contains(pqp_spec, m * m / (m * m + 1.0), 1e-6));
  }
}

TEST_CASE("replicated family keeps every overlap persistent") {
  const std::size_t n_trunc = 200;
  const auto [p, q] = pomega_family(n_trunc);
  const auto pqp = BlockSequenceOperator::map2(
      p, q, [](Matrix a, Matrix b) -> Matrix { return a * b * a; });
  const auto spec = essential_spectrum_estimate(pqp, cfg);

  CHECK(spectrum_contains(spec, 0.5, 1e-9));
  CHECK(spectrum_contains(spec, 0.8, 1e-9));
  CHECK(spectrum_contains(spec, 0.9, 1e-9));
  CHECK(*std::max_element(spec.begin(), spec.end()) >= 0.95);

  for (std::size_t cut : {std::size_t{8}, std::size_t{32}}) {
    const Projection pd = Projection::from_matrix(p.assemble(cut), cfg);
    const Projection qd = Projection::from_matrix(q.assemble(cut), cfg);
    CHECK(meet_spectral({pd, qd}, cfg).rank() == 0);
  }
}

TEST_CASE("closed sum diagnostic") {
  const std::size_t n_trunc = 200;

  // Orthogonal constant family against its genuine join.
  const std::vector<BlockSequenceOperator> orth{
      constant_blocks(diag_matrix({1.0, 0.0, 0.0}), n_trunc),
      constant_blocks(diag_matrix({0.0, 1.0, 0.0}), n_trunc)};
  const auto join_cand = constant_blocks(diag_matrix({1.0, 1.0, 0.0}), n_trunc);
  const ClosedSumReport ok = closed_sum_diagnostic(orth, join_cand, cfg);
  CHECK(ok.heuristic);
  CHECK(ok.candidate_is_upper_bound);
  CHECK(ok.join_below_candidate);
  CHECK(ok.candidate_below_join);
  CHECK(ok.overshooting_members.empty());
  CHECK(ok.consistent_with_closed);

  // The tilted pair against the identity: each member already bounds the
  // family essentially, yet neither reaches the blockwise join.
  const auto [p, q] = badpq_family(n_trunc);
  const ClosedSumReport bad = closed_sum_diagnostic(
      {p, q}, constant_blocks(Matrix::Identity(2, 2), n_trunc), cfg);
  CHECK(bad.candidate_is_upper_bound);
  CHECK_FALSE(bad.overshooting_members.empty());
  CHECK_FALSE(bad.consistent_with_closed);

  // Single member: the join is the member itself.
  const auto single = constant_blocks(diag_matrix({1.0, 0.0}), n_trunc);
  const ClosedSumReport solo = closed_sum_diagnostic({single}, single, cfg);
  CHECK(solo.consistent_with_closed);

  CHECK_THROWS_AS(closed_sum_diagnostic({}, single, cfg), ArgumentError);
}
