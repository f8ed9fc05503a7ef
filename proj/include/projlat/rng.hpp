#pragma once

#include <cstdint>
#include <random>

#include "projlat/projection.hpp"
#include "projlat/spectra.hpp"
#include "projlat/types.hpp"

namespace projlat {

// Deterministic source for every randomized suite: std::mt19937_64 with
// explicit bit-to-double scaling and Box-Muller normals, so identical seeds
// give identical streams on every standard library.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  // Uniform in [0, 1): top 53 bits of the raw draw.
  double uniform();
  double uniform(double lo, double hi);
  // Inclusive on both ends.
  int uniform_int(int lo, int hi);
  double normal();
  Complex gaussian_complex();

  Matrix gaussian_matrix(int rows, int cols);
  Matrix random_unitary(int dim);
  HermitianOperator random_hermitian(int dim,
                                     const ToleranceConfig& cfg = ToleranceConfig{});
  Projection random_projection(int dim, int rank,
                               const ToleranceConfig& cfg = ToleranceConfig{});
  // Uniformly oriented subspace of the given range.
  Projection random_subprojection(const Projection& p, int rank,
                                  const ToleranceConfig& cfg = ToleranceConfig{});

 private:
  std::mt19937_64 engine_;
};

}  // namespace projlat
