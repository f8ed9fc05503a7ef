#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "projlat/calkin.hpp"
#include "projlat/projection.hpp"
#include "projlat/projorder.hpp"
#include "projlat/rng.hpp"
#include "projlat/spectra.hpp"
#include "projlat/types.hpp"

using namespace projlat;

namespace {

const ToleranceConfig cfg;

Projection diag_pattern(std::initializer_list<int> bits) {
  const int d = static_cast<int>(bits.size());
  Matrix m = Matrix::Zero(d, d);
  int i = 0;
  for (int b : bits) m(i, i) = b, ++i;
  return Projection::from_matrix(m, cfg);
}

Projection line(double theta) {
  Vector v(2);
  v << Complex(std::cos(theta), 0), Complex(std::sin(theta), 0);
  return Projection::from_matrix(v * v.adjoint(), cfg);
}

const Projection e_first = diag_pattern({1, 0});

}  // namespace

TEST_CASE("order comparisons") {
  CHECK(leq(e_first, e_first, cfg));
  CHECK(leq(Projection::zero(2), e_first, cfg));
  CHECK_FALSE(leq(e_first, line(M_PI / 4.0), cfg));
}

TEST_CASE("complement fixed points") {
  CHECK(complement(Projection::zero(3), cfg) == Projection::identity(3));
  CHECK(complement(Projection::identity(3), cfg) == Projection::zero(3));
  CHECK(complement(e_first, cfg) == diag_pattern({0, 1}));
}

TEST_CASE("null-space meet on trivial and tilted pairs") {
  CHECK(meet_nullspace({e_first, e_first}, cfg) == e_first);
  CHECK(meet_nullspace({e_first, diag_pattern({0, 1})}, cfg).rank() == 0);
  // Nearly aligned pair of distinct lines still meets trivially.
  const auto [p, q] = badpq_family(4);
  for (std::size_t n = 0; n < 4; ++n) {
    const Projection pb = Projection::from_matrix(p.block(n), cfg);
    const Projection qb = Projection::from_matrix(q.block(n), cfg);
    CHECK(meet_nullspace({pb, qb}, cfg).rank() == 0);
  }
}

TEST_CASE("spectral meet agrees with the null-space route") {
  CHECK(meet_spectral({e_first, e_first}, cfg) == e_first);
  CHECK(meet_spectral({e_first, line(M_PI / 4.0)}, cfg).rank() == 0);

  const Projection a = diag_pattern({1, 1, 0, 1, 0});
  const Projection b = diag_pattern({1, 0, 1, 1, 0});
  const Projection c = diag_pattern({1, 1, 1, 0, 0});
  const Projection expect = diag_pattern({1, 0, 0, 0, 0});
  CHECK(frobenius(meet_spectral({a, b, c}, cfg).matrix() - expect.matrix()) < 1e-10);
}

TEST_CASE("join via complements matches spans") {
  CHECK(join({e_first, Projection::zero(2)}, cfg) == e_first);
  CHECK(join({e_first, diag_pattern({0, 1})}, cfg) == Projection::identity(2));
  CHECK(join({e_first, line(M_PI / 4.0)}, cfg) == Projection::identity(2));
}

TEST_CASE("product-norm criterion reports the top non-unit eigenvalue") {
  const GlbReport same = glb_criterion({e_first, e_first}, cfg);
  CHECK(same.sup_sigma_excl_one == doctest::Approx(0.0));
  CHECK(same.criterion_holds);

  const GlbReport tilted = glb_criterion({e_first, line(M_PI / 4.0)}, cfg);
  CHECK(tilted.sup_sigma_excl_one == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(tilted.criterion_holds);
  CHECK(tilted.meet.rank() == 0);
}

TEST_CASE("criterion sup approaches one on nearly aligned truncations") {
  const std::size_t blocks = 5;
  const auto [p, q] = badpq_family(blocks);
  const Projection tp = Projection::from_matrix(p.assemble(blocks), cfg);
  const Projection tq = Projection::from_matrix(q.assemble(blocks), cfg);
  const GlbReport r = glb_criterion({tp, tq}, cfg);
  CHECK(r.sup_sigma_excl_one == doctest::Approx(25.0 / 26.0).epsilon(1e-12));
  CHECK(r.criterion_holds);
  CHECK(r.meet.rank() == 0);
}

TEST_CASE("norm test certifies the true meet and rejects strict minorants") {
  SeededRng rng(21);
  for (int it = 0; it < 20; ++it) {
    const int d = 3 + it % 6;
    const Projection p = rng.random_projection(d, 1 + it % (d - 1), cfg);
    const Projection q = rng.random_projection(d, 1 + (it + 2) % (d - 1), cfg);
    const Projection meet = meet_nullspace({p, q}, cfg);
    const GlbNormReport good = glb_norm_check({p, q}, meet, cfg);
    CHECK(good.is_glb);
    CHECK(good.norm < 1.0 - 1e-8);
    if (meet.rank() > 0) {
      const Projection below = Projection::from_basis(
          meet.range_basis().leftCols(meet.rank() - 1), d, cfg);
      const GlbNormReport bad = glb_norm_check({p, q}, below, cfg);
      CHECK_FALSE(bad.is_glb);
      CHECK(bad.norm >= 1.0 - 1e-8);
    }
  }
  const GlbNormReport idr =
      glb_norm_check({Projection::identity(3)}, Projection::identity(3), cfg);
  CHECK(idr.is_glb);
  CHECK(idr.norm == doctest::Approx(0.0));
}

TEST_CASE("nonzero meet detection through the rank oracle") {
  const NonzeroMeetReport orth =
      nonzero_meet_check(e_first, diag_pattern({0, 1}), cfg);
  CHECK_FALSE(orth.meet_nonzero);
  CHECK(orth.pq_norm == doctest::Approx(0.0));

  const NonzeroMeetReport shared = nonzero_meet_check(
      diag_pattern({1, 1, 0}), diag_pattern({1, 0, 1}), cfg);
  CHECK(shared.meet_nonzero);
  CHECK(shared.pq_norm == doctest::Approx(1.0));

  const NonzeroMeetReport tilted = nonzero_meet_check(e_first, line(M_PI / 4.0), cfg);
  CHECK_FALSE(tilted.meet_nonzero);
  CHECK(tilted.pq_norm == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
}

TEST_CASE("product spectra and window identities, exact cases") {
  const SpectrumIdentityReport comm =
      spectrum_identity_report(diag_pattern({1, 1, 0}), diag_pattern({1, 0, 1}), cfg);
  CHECK(comm.max_discrepancy < 1e-12);

  const SpectrumIdentityReport tilted =
      spectrum_identity_report(e_first, line(M_PI / 4.0), cfg);
  CHECK(tilted.max_discrepancy < 1e-9);
  CHECK(tilted.norm_squared == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(tilted.top_eigenvalue == doctest::Approx(0.5).epsilon(1e-12));
  REQUIRE(tilted.window_lhs.size() == 1);
  CHECK(tilted.window_lhs[0] == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("product spectra agree on a random pair") {
  SeededRng rng(22);
  const Projection p = rng.random_projection(8, 3, cfg);
  const Projection q = rng.random_projection(8, 5, cfg);
  CHECK(spectrum_identity_report(p, q, cfg).max_discrepancy < 1e-8);
}

TEST_CASE("subordinate witness for the one-third-turn pair") {
  const Projection q = line(M_PI / 3.0);
  const Projection w = separativity_witness(e_first, q, cfg);
  CHECK(w == e_first);
  CHECK(operator_norm(q.matrix() * w.matrix()) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("subordinate witness against the zero projection is everything") {
  const Projection w = separativity_witness(e_first, Projection::zero(2), cfg);
  CHECK(w == e_first);
}

TEST_CASE("subordinate witness postconditions on random non-comparable pairs") {
  SeededRng rng(23);
  int tested = 0;
  while (tested < 15) {
    const int d = 4 + tested % 5;
    const Projection p = rng.random_projection(d, 1 + tested % (d - 1), cfg);
    const Projection q = rng.random_projection(d, 1 + (tested + 1) % (d - 1), cfg);
    if (leq(p, q, cfg)) continue;
    const Projection w = separativity_witness(p, q, cfg);
    const double s =
        std::pow(operator_norm(complement(q, cfg).matrix() * p.matrix()), 2) / 2.0;
    CHECK(w.rank() >= 1);
    CHECK(leq(w, p, cfg));
    CHECK(operator_norm(q.matrix() * w.matrix()) <= std::sqrt(1.0 - s) + 1e-8);
    CHECK(meet_nullspace({w, q}, cfg).rank() == 0);
    ++tested;
  }
}

TEST_CASE("witness construction refuses comparable inputs") {
  CHECK_THROWS_AS(separativity_witness(e_first, Projection::identity(2), cfg),
                  OrderError);
}

TEST_CASE("state-centred families keep a near-unit product norm") {
  // Pure state inside every range.
  Matrix rho = Matrix::Zero(3, 3);
  rho(0, 0) = 1.0;
  const DensityState pure(rho, cfg);
  const StateCentredReport in =
      state_centred_check(pure, {diag_pattern({1, 1, 0}), diag_pattern({1, 0, 1})}, cfg);
  CHECK(in.all_one);
  CHECK(in.product_norm == doctest::Approx(1.0));

  const StateCentredReport out =
      state_centred_check(pure, {diag_pattern({0, 1, 1})}, cfg);
  CHECK_FALSE(out.all_one);
}
