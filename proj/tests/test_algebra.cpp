#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "projlat/algebra.hpp"
#include "projlat/projection.hpp"
#include "projlat/rng.hpp"
#include "projlat/spectra.hpp"
#include "projlat/types.hpp"

using namespace projlat;

namespace {

const ToleranceConfig cfg;

Matrix diag_block(std::initializer_list<double> entries) {
  const int d = static_cast<int>(entries.size());
  Matrix m = Matrix::Zero(d, d);
  int i = 0;
  for (double e : entries) m(i, i) = e, ++i;
  return m;
}

Matrix rotation(double theta) {
  Matrix u(2, 2);
  u << Complex(std::cos(theta), 0), Complex(-std::sin(theta), 0),
      Complex(std::sin(theta), 0), Complex(std::cos(theta), 0);
  return u;
}

Morphism drop_tail(const BlockAlgebra& source) {
  std::vector<Morphism::BlockAssignment> a;
  a.push_back({0, Matrix::Identity(source.block_dims[0], source.block_dims[0])});
  return Morphism::from_assignment(source, std::move(a));
}

}  // namespace

TEST_CASE("block algebra validation") {
  BlockAlgebra good{{2, 3}};
  good.validate();
  CHECK(good.total_dim() == 5);
  CHECK_THROWS_AS((BlockAlgebra{{}}.validate()), ArgumentError);
  CHECK_THROWS_AS((BlockAlgebra{{2, 0}}.validate()), ArgumentError);
}

TEST_CASE("element arithmetic and assembly") {
  const BlockAlgebra alg{{2, 3}};
  const AlgebraElement one = AlgebraElement::identity(alg);
  const AlgebraElement zero = AlgebraElement::zero(alg);
  CHECK(one.is_projection());
  CHECK(zero.is_projection());
  CHECK_FALSE((0.5 * one).is_projection());
  CHECK((0.5 * one).is_hermitian());

  AlgebraElement x(alg, {diag_block({1.0, 2.0}), diag_block({0.0, 3.0, 4.0})});
  const AlgebraElement y = x + x - x;
  for (int i = 0; i < x.block_count(); ++i) {
    CHECK(frobenius(y.block(i) - x.block(i)) < 1e-14);
  }
  const AlgebraElement sq = x * x;
  CHECK(sq.block(0)(1, 1).real() == doctest::Approx(4.0));
  CHECK(sq.block(1)(2, 2).real() == doctest::Approx(16.0));

  const Matrix dense = x.assemble();
  REQUIRE(dense.rows() == 5);
  CHECK(dense(0, 0).real() == doctest::Approx(1.0));
  CHECK(dense(4, 4).real() == doctest::Approx(4.0));
  CHECK(std::abs(dense(1, 3)) == doctest::Approx(0.0));

  AlgebraElement offdiag(alg, {rotation(0.3), Matrix::Zero(3, 3)});
  CHECK_FALSE(offdiag.is_hermitian());
  const AlgebraElement adj = offdiag.adjoint();
  CHECK(frobenius(adj.block(0) - rotation(0.3).adjoint()) < 1e-14);

  CHECK_THROWS_AS(AlgebraElement(alg, {Matrix::Identity(2, 2)}), ArgumentError);
  CHECK_THROWS_AS(AlgebraElement(alg, {Matrix::Identity(3, 3),
                                       Matrix::Identity(2, 2)}),
                  ArgumentError);
}

TEST_CASE("identity morphism acts trivially") {
  const BlockAlgebra alg{{2, 3}};
  std::vector<Morphism::BlockAssignment> a;
  a.push_back({0, Matrix::Identity(2, 2)});
  a.push_back({1, Matrix::Identity(3, 3)});
  const Morphism id = Morphism::from_assignment(alg, std::move(a));
  CHECK(id.surjective());
  CHECK(id.target() == alg);

  SeededRng rng(41);
  const AlgebraElement x(alg, {rng.gaussian_matrix(2, 2), rng.gaussian_matrix(3, 3)});
  const AlgebraElement y = apply(id, x);
  for (int i = 0; i < x.block_count(); ++i) {
    CHECK(frobenius(y.block(i) - x.block(i)) < 1e-14);
  }
}

TEST_CASE("quotient onto the leading block") {
  const BlockAlgebra source{{2, 3}};
  const Morphism pi = drop_tail(source);
  CHECK(pi.surjective());
  CHECK(pi.target().block_dims == std::vector<int>{2});

  AlgebraElement x(source, {diag_block({1.0, 2.0}), diag_block({5.0, 6.0, 7.0})});
  const AlgebraElement y = pi.apply(x);
  CHECK(y.block_count() == 1);
  CHECK(frobenius(y.block(0) - diag_block({1.0, 2.0})) < 1e-14);
}

TEST_CASE("selection conjugated by a unitary") {
  const BlockAlgebra source{{2}};
  std::vector<Morphism::BlockAssignment> a;
  const double theta = 0.7;
  a.push_back({0, rotation(theta)});
  const Morphism m = Morphism::from_assignment(source, std::move(a));
  const AlgebraElement e(source, {diag_block({1.0, 0.0})});
  const AlgebraElement im = m.apply(e);
  Matrix expected(2, 2);
  expected << Complex(std::cos(theta) * std::cos(theta), 0),
      Complex(std::cos(theta) * std::sin(theta), 0),
      Complex(std::cos(theta) * std::sin(theta), 0),
      Complex(std::sin(theta) * std::sin(theta), 0);
  CHECK(frobenius(im.block(0) - expected) < 1e-12);
}

TEST_CASE("duplicate selections are not surjective") {
  const BlockAlgebra source{{2, 2}};
  std::vector<Morphism::BlockAssignment> a;
  a.push_back({0, Matrix::Identity(2, 2)});
  a.push_back({0, rotation(0.2)});
  const Morphism m = Morphism::from_assignment(source, std::move(a));
  CHECK_FALSE(m.surjective());
}

TEST_CASE("morphism construction rejects bad assignments") {
  const BlockAlgebra source{{2, 3}};
  std::vector<Morphism::BlockAssignment> missing;
  missing.push_back({5, Matrix::Identity(2, 2)});
  CHECK_THROWS_AS(Morphism::from_assignment(source, std::move(missing)),
                  ArgumentError);
  std::vector<Morphism::BlockAssignment> skewed;
  skewed.push_back({0, 2.0 * Matrix::Identity(2, 2)});
  CHECK_THROWS_AS(Morphism::from_assignment(source, std::move(skewed)),
                  ArgumentError);
}

TEST_CASE("blockwise order") {
  const BlockAlgebra alg{{2, 2}};
  const AlgebraElement small(alg, {diag_block({1.0, 0.0}), diag_block({0.0, 0.0})});
  const AlgebraElement big(alg, {diag_block({1.0, 1.0}), diag_block({1.0, 0.0})});
  CHECK(element_leq(small, big, cfg));
  CHECK_FALSE(element_leq(big, small, cfg));
  CHECK(element_leq(small, small, cfg));
  CHECK(element_leq(AlgebraElement::zero(alg), small, cfg));
  CHECK(element_leq(big, AlgebraElement::identity(alg), cfg));
}

TEST_CASE("blockwise spectral family") {
  const BlockAlgebra alg{{2, 2}};
  const AlgebraElement s(alg,
                         {diag_block({0.2, 0.7}), diag_block({0.9, -0.1})});
  const AlgebraElement below = element_spectral_family(s, 0.5, FamilySide::closed, cfg);
  CHECK(frobenius(below.block(0) - diag_block({1.0, 0.0})) < 1e-12);
  CHECK(frobenius(below.block(1) - diag_block({0.0, 1.0})) < 1e-12);

  AlgebraElement skew(alg, {rotation(0.4), Matrix::Zero(2, 2)});
  CHECK_THROWS_AS(element_spectral_family(skew, 0.5, FamilySide::closed, cfg),
                  ArgumentError);
}

TEST_CASE("pullback reproduces the target exactly and respects the cap") {
  SeededRng rng(42);
  const BlockAlgebra source{{3, 2}};
  std::vector<Morphism::BlockAssignment> a;
  a.push_back({0, rng.random_unitary(3)});
  const Morphism pi = Morphism::from_assignment(source, std::move(a));

  const AlgebraElement p(source,
                         {diag_block({1.0, 1.0, 0.0}), Matrix::Identity(2, 2)});
  const AlgebraElement image = pi.apply(p);
  const AlgebraElement q = pi.apply(AlgebraElement(
      source, {diag_block({1.0, 0.0, 0.0}), Matrix::Zero(2, 2)}));

  const AlgebraElement out = pullback_projection(pi, q, p, cfg);
  CHECK(out.is_projection());
  CHECK(element_leq(out, p, cfg));
  const AlgebraElement check = pi.apply(out);
  for (int j = 0; j < q.block_count(); ++j) {
    CHECK(frobenius(check.block(j) - q.block(j)) < 1e-8);
  }

  CHECK_THROWS_AS(pullback_projection(pi, AlgebraElement::identity(pi.target()),
                                      p, cfg),
                  OrderError);
  CHECK(element_leq(q, image, cfg));
}

TEST_CASE("pullback requires a surjective morphism") {
  const BlockAlgebra source{{3}};
  std::vector<Morphism::BlockAssignment> a;
  a.push_back({0, Matrix::Identity(3, 3)});
  a.push_back({0, Matrix::Identity(3, 3)});
  const Morphism m = Morphism::from_assignment(source, std::move(a));
  CHECK_THROWS_AS(pullback_projection(m, AlgebraElement::zero(m.target()),
                                      AlgebraElement::identity(source), cfg),
                  ArgumentError);
}

TEST_CASE("sandwich pullback honours both bounds") {
  SeededRng rng(43);
  const BlockAlgebra source{{4, 2}};
  std::vector<Morphism::BlockAssignment> a;
  a.push_back({0, rng.random_unitary(4)});
  const Morphism pi = Morphism::from_assignment(source, std::move(a));

  const AlgebraElement p(source,
                         {diag_block({1.0, 1.0, 1.0, 0.0}), Matrix::Identity(2, 2)});
  const AlgebraElement r(source,
                         {diag_block({1.0, 0.0, 0.0, 0.0}), Matrix::Zero(2, 2)});
  const AlgebraElement q = pi.apply(AlgebraElement(
      source, {diag_block({1.0, 1.0, 0.0, 0.0}), Matrix::Zero(2, 2)}));

  const AlgebraElement out = sandwich_pullback(pi, q, r, p, cfg);
  CHECK(out.is_projection());
  CHECK(element_leq(r, out, cfg));
  CHECK(element_leq(out, p, cfg));
  const AlgebraElement check = pi.apply(out);
  for (int j = 0; j < q.block_count(); ++j) {
    CHECK(frobenius(check.block(j) - q.block(j)) < 1e-8);
  }

  // Degenerate interval: the only admissible answer is p itself.
  const AlgebraElement tight =
      sandwich_pullback(pi, pi.apply(p), p, p, cfg);
  for (int i = 0; i < p.block_count(); ++i) {
    CHECK(frobenius(tight.block(i) - p.block(i)) < 1e-9);
  }

  CHECK_THROWS_AS(sandwich_pullback(pi, q, p, r, cfg), OrderError);
}

TEST_CASE("strict pregap interpolation") {
  const BlockAlgebra source{{4, 2}};
  const Morphism pi = drop_tail(source);

  const AlgebraElement p(pi.target(), {diag_block({1.0, 0.0, 0.0, 0.0})});
  const AlgebraElement q(pi.target(), {diag_block({1.0, 1.0, 1.0, 0.0})});
  const AlgebraElement mid = interpolate_pregap(pi, {p}, {q}, cfg);
  CHECK(mid.is_projection());
  const AlgebraElement im = pi.apply(mid);
  CHECK(element_leq(p, im, cfg));
  CHECK_FALSE(element_leq(im, p, cfg));
  CHECK(element_leq(im, q, cfg));
  CHECK_FALSE(element_leq(q, im, cfg));
}

TEST_CASE("one sided pregaps") {
  const BlockAlgebra source{{4, 2}};
  const Morphism pi = drop_tail(source);
  const AlgebraElement q(pi.target(), {diag_block({1.0, 1.0, 0.0, 0.0})});

  const AlgebraElement below = interpolate_pregap(pi, {}, {q}, cfg);
  CHECK(element_leq(pi.apply(below), q, cfg));
  CHECK_FALSE(element_leq(q, pi.apply(below), cfg));

  const AlgebraElement p(pi.target(), {diag_block({1.0, 0.0, 0.0, 0.0})});
  const AlgebraElement above = interpolate_pregap(pi, {p}, {}, cfg);
  CHECK(element_leq(p, pi.apply(above), cfg));
  CHECK_FALSE(element_leq(pi.apply(above), p, cfg));

  CHECK_THROWS_AS(interpolate_pregap(pi, {}, {}, cfg), ArgumentError);
}

TEST_CASE("rank one gaps fall back to the lower endpoint") {
  const BlockAlgebra source{{3, 2}};
  const Morphism pi = drop_tail(source);
  const AlgebraElement p(pi.target(), {diag_block({1.0, 0.0, 0.0})});
  const AlgebraElement q(pi.target(), {diag_block({1.0, 1.0, 0.0})});
  const AlgebraElement out = interpolate_pregap(pi, {p}, {q}, cfg);
  const AlgebraElement im = pi.apply(out);
  for (int j = 0; j < p.block_count(); ++j) {
    CHECK(frobenius(im.block(j) - p.block(j)) < 1e-9);
  }
}

TEST_CASE("equal chains are not a strict pregap") {
  const BlockAlgebra source{{3, 2}};
  const Morphism pi = drop_tail(source);
  const AlgebraElement p(pi.target(), {diag_block({1.0, 0.0, 0.0})});
  CHECK_THROWS_AS(interpolate_pregap(pi, {p}, {p}, cfg), OrderError);
}

TEST_CASE("spectral order transports through morphisms") {
  const BlockAlgebra alg{{3, 2}};
  std::vector<Morphism::BlockAssignment> ident;
  ident.push_back({0, Matrix::Identity(3, 3)});
  ident.push_back({1, Matrix::Identity(2, 2)});
  const Morphism id = Morphism::from_assignment(alg, std::move(ident));

  SeededRng rng(44);
  for (int it = 0; it < 10; ++it) {
    const AlgebraElement s(alg, {rng.random_hermitian(3, cfg).matrix(),
                                 rng.random_hermitian(2, cfg).matrix()});
    const double t = rng.uniform(-1.0, 1.0);
    const AlgebraElement p = element_spectral_family(s, t, FamilySide::closed, cfg);
    CHECK(pushforward_spectral_bound_check(id, p, s, t, cfg));
  }

  const BlockAlgebra source{{3, 2}};
  std::vector<Morphism::BlockAssignment> a;
  a.push_back({0, rng.random_unitary(3)});
  const Morphism pi = Morphism::from_assignment(source, std::move(a));
  for (int it = 0; it < 10; ++it) {
    const AlgebraElement s(source, {rng.random_hermitian(3, cfg).matrix(),
                                    rng.random_hermitian(2, cfg).matrix()});
    const double t = rng.uniform(-1.0, 1.0);
    const AlgebraElement p = element_spectral_family(s, t, FamilySide::closed, cfg);
    CHECK(pushforward_spectral_bound_check(pi, p, s, t, cfg));
    const double above = operator_norm(s.assemble()) + 0.5;
    CHECK(pushforward_spectral_bound_check(pi, AlgebraElement::identity(source),
                                           s, above, cfg));
  }
}
