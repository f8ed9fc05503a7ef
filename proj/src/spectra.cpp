#include "projlat/spectra.hpp"

#include <algorithm>
#include <cmath>

namespace projlat {

HermitianOperator::HermitianOperator(Matrix m, const ToleranceConfig& cfg) {
  cfg.validate();
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw ArgumentError("operator matrix must be square and non-empty");
  }
  if (!m.allFinite()) {
    throw NumericInputError("operator matrix has non-finite entries");
  }
  const double scale = std::max(1.0, m.norm());
  if ((m - m.adjoint()).norm() > cfg.rank_tol * scale) {
    throw NumericInputError("operator matrix is not self-adjoint");
  }
  matrix_ = 0.5 * (m + m.adjoint().eval());
}

PiecewiseLinearFunction::PiecewiseLinearFunction(std::vector<double> breakpoints,
                                                 std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (breakpoints_.empty() || breakpoints_.size() != values_.size()) {
    throw ArgumentError("piecewise-linear data must be non-empty and aligned");
  }
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    if (!std::isfinite(breakpoints_[i]) || !std::isfinite(values_[i])) {
      throw NumericInputError("piecewise-linear data has non-finite entries");
    }
    if (i > 0 && !(breakpoints_[i - 1] < breakpoints_[i])) {
      throw ArgumentError("breakpoints must be strictly ascending");
    }
  }
}

double PiecewiseLinearFunction::operator()(double t) const {
  if (t <= breakpoints_.front()) return values_.front();
  if (t >= breakpoints_.back()) return values_.back();
  const auto it =
      std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  const std::size_t hi = static_cast<std::size_t>(it - breakpoints_.begin());
  const std::size_t lo = hi - 1;
  const double span = breakpoints_[hi] - breakpoints_[lo];
  const double w = (t - breakpoints_[lo]) / span;
  return values_[lo] + w * (values_[hi] - values_[lo]);
}

SpectralDecomposition decompose(const HermitianOperator& s,
                                const ToleranceConfig& cfg) {
  cfg.validate();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(s.matrix());
  if (solver.info() != Eigen::Success) {
    throw NumericInputError("eigendecomposition did not converge");
  }
  const Eigen::VectorXd raw = solver.eigenvalues();
  const Matrix vecs = solver.eigenvectors();
  const int n = s.dim();

  SpectralDecomposition dec;
  dec.dim = n;
  int start = 0;
  while (start < n) {
    int end = start + 1;
    // Single linkage: extend the cluster while consecutive gaps stay inside
    // the clustering radius.
    while (end < n && raw[end] - raw[end - 1] <= cfg.eig_cluster) ++end;
    double mean = 0.0;
    for (int i = start; i < end; ++i) mean += raw[i];
    mean /= static_cast<double>(end - start);
    const Matrix cluster_vecs = vecs.middleCols(start, end - start);
    const Matrix pi = cluster_vecs * cluster_vecs.adjoint();
    dec.eigenvalues.push_back(mean);
    dec.projectors.push_back(Projection::from_matrix(pi, cfg));
    start = end;
  }
  return dec;
}

namespace {

Projection sum_of_clusters(const SpectralDecomposition& dec,
                           const std::vector<int>& which,
                           const ToleranceConfig& cfg) {
  if (which.empty()) return Projection::zero(dec.dim);
  int cols = 0;
  for (int i : which) cols += dec.projectors[static_cast<std::size_t>(i)].rank();
  if (cols == dec.dim) return Projection::identity(dec.dim);
  Matrix basis(dec.dim, cols);
  int at = 0;
  for (int i : which) {
    const Matrix& b = dec.projectors[static_cast<std::size_t>(i)].range_basis();
    basis.middleCols(at, static_cast<int>(b.cols())) = b;
    at += static_cast<int>(b.cols());
  }
  return Projection::from_matrix(basis * basis.adjoint(), cfg);
}

bool below_cutoff(double lambda, double t, FamilySide side, double ec) {
  return side == FamilySide::closed ? lambda <= t + ec : lambda < t - ec;
}

}  // namespace

Projection SpectralDecomposition::family(double t, FamilySide side,
                                         const ToleranceConfig& cfg) const {
  std::vector<int> which;
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    if (below_cutoff(eigenvalues[i], t, side, cfg.eig_cluster)) {
      which.push_back(static_cast<int>(i));
    }
  }
  return sum_of_clusters(*this, which, cfg);
}

Projection SpectralDecomposition::family_upper(double t, FamilySide side,
                                               const ToleranceConfig& cfg) const {
  std::vector<int> which;
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    if (!below_cutoff(eigenvalues[i], t, side, cfg.eig_cluster)) {
      which.push_back(static_cast<int>(i));
    }
  }
  return sum_of_clusters(*this, which, cfg);
}

Projection spectral_family_at(const HermitianOperator& s, double t,
                              FamilySide side, const ToleranceConfig& cfg) {
  if (!std::isfinite(t)) throw ArgumentError("cutoff must be finite");
  return decompose(s, cfg).family(t, side, cfg);
}

std::vector<double> spectrum(const HermitianOperator& s,
                             const ToleranceConfig& cfg) {
  return decompose(s, cfg).eigenvalues;
}

std::vector<Complex> nonsym_spectrum(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw ArgumentError("matrix must be square and non-empty");
  }
  if (!m.allFinite()) {
    throw NumericInputError("matrix has non-finite entries");
  }
  Eigen::ComplexEigenSolver<Matrix> solver(m, false);
  if (solver.info() != Eigen::Success) {
    throw NumericInputError("eigendecomposition did not converge");
  }
  std::vector<Complex> out(solver.eigenvalues().data(),
                           solver.eigenvalues().data() + m.rows());
  std::sort(out.begin(), out.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return out;
}

HermitianOperator apply_function(const HermitianOperator& s,
                                 const PiecewiseLinearFunction& f,
                                 const ToleranceConfig& cfg) {
  const SpectralDecomposition dec = decompose(s, cfg);
  Matrix out = Matrix::Zero(s.dim(), s.dim());
  for (std::size_t i = 0; i < dec.eigenvalues.size(); ++i) {
    out += f(dec.eigenvalues[i]) * dec.projectors[i].matrix();
  }
  return HermitianOperator(out, cfg);
}

double operator_norm(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  if (!m.allFinite()) {
    throw NumericInputError("matrix has non-finite entries");
  }
  // Closed form up to 2x2 keeps block-sequence scans cheap.
  if (m.rows() <= 2 && m.cols() <= 2) {
    const Matrix g = m.adjoint() * m;
    if (g.rows() == 1) return std::sqrt(std::max(0.0, g(0, 0).real()));
    const double half_trace = 0.5 * (g(0, 0).real() + g(1, 1).real());
    const double half_gap = 0.5 * (g(0, 0).real() - g(1, 1).real());
    const double disc =
        std::sqrt(std::max(0.0, half_gap * half_gap + std::norm(g(0, 1))));
    return std::sqrt(std::max(0.0, half_trace + disc));
  }
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

Projection spectral_window_projection(const HermitianOperator& s,
                                      double window_upper, double window_lower,
                                      const ToleranceConfig& cfg) {
  if (!(0.0 < window_lower) || !(window_lower < window_upper)) {
    throw ArgumentError("window must satisfy 0 < lower < upper");
  }
  // Exact upper end of the admissible interval: E^perp_S(lower).
  return decompose(s, cfg).family_upper(window_lower, FamilySide::closed, cfg);
}

}  // namespace projlat
