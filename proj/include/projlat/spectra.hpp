#pragma once

#include <vector>

#include "projlat/projection.hpp"
#include "projlat/types.hpp"

namespace projlat {

// Self-adjoint operator on C^n.  Validated at construction
// (||M - M*|| <= rank_tol relative to max(1, ||M||)), then symmetrized.
class HermitianOperator {
 public:
  explicit HermitianOperator(Matrix m,
                             const ToleranceConfig& cfg = ToleranceConfig{});

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const Matrix& matrix() const { return matrix_; }

 private:
  Matrix matrix_;
};

// Continuous piecewise-linear function: constant extension outside the
// breakpoint range, linear interpolation inside.
class PiecewiseLinearFunction {
 public:
  PiecewiseLinearFunction(std::vector<double> breakpoints,
                          std::vector<double> values);

  double operator()(double t) const;

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

enum class FamilySide { closed, open_below };

// Eigenvalues clustered at radius eig_cluster (single linkage on the sorted
// list), one canonical projector per cluster; representatives ascending.
struct SpectralDecomposition {
  int dim = 0;
  std::vector<double> eigenvalues;
  std::vector<Projection> projectors;

  // E_S(t): spectral projection onto eigenvalues <= t, boundary band of width
  // eig_cluster included.  E_S(t-): strictly below t, boundary band excluded.
  Projection family(double t, FamilySide side, const ToleranceConfig& cfg) const;
  // Complements of the above.
  Projection family_upper(double t, FamilySide side,
                          const ToleranceConfig& cfg) const;
};

SpectralDecomposition decompose(const HermitianOperator& s,
                                const ToleranceConfig& cfg = ToleranceConfig{});

Projection spectral_family_at(const HermitianOperator& s, double t,
                              FamilySide side,
                              const ToleranceConfig& cfg = ToleranceConfig{});

// Clustered eigenvalue representatives, ascending.
std::vector<double> spectrum(const HermitianOperator& s,
                             const ToleranceConfig& cfg = ToleranceConfig{});

// Eigenvalues of an arbitrary square matrix, sorted by (re, im).
std::vector<Complex> nonsym_spectrum(const Matrix& m);

HermitianOperator apply_function(const HermitianOperator& s,
                                 const PiecewiseLinearFunction& f,
                                 const ToleranceConfig& cfg = ToleranceConfig{});

// Largest singular value.
double operator_norm(const Matrix& m);

// E^perp_S(t) for the window (t, s], 0 < t < s required.  When the spectrum
// avoids (t, s] this equals E^perp_S(s) exactly.
Projection spectral_window_projection(const HermitianOperator& s,
                                      double window_upper, double window_lower,
                                      const ToleranceConfig& cfg = ToleranceConfig{});

}  // namespace projlat
