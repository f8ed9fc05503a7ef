#include "projlat/projorder.hpp"

#include <algorithm>
#include <cmath>

namespace projlat {

namespace {

constexpr double kNonzeroTol = 1e-8;   // filter for "nonzero part" of a spectrum
constexpr double kWindowEps = 1e-6;    // open window (eps, 1-eps) for Eq-style checks
constexpr double kStateTol = 1e-9;

void require_same_dims(const std::vector<Projection>& ps) {
  if (ps.empty()) throw ArgumentError("projection list must be non-empty");
  for (const auto& p : ps) {
    if (p.dim() != ps.front().dim()) {
      throw ArgumentError("projection dimensions do not match");
    }
  }
}

Matrix product_of(const std::vector<Projection>& ps) {
  Matrix t = ps.front().matrix();
  for (std::size_t i = 1; i < ps.size(); ++i) t *= ps[i].matrix();
  return t;
}

std::vector<Complex> hermitian_nonzero_spectrum(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (m + m.adjoint().eval()),
                                               Eigen::EigenvaluesOnly);
  std::vector<Complex> out;
  for (int i = 0; i < m.rows(); ++i) {
    const double v = solver.eigenvalues()(i);
    if (std::abs(v) > kNonzeroTol) out.emplace_back(v, 0.0);
  }
  std::sort(out.begin(), out.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return out;
}

std::vector<Complex> general_nonzero_spectrum(const Matrix& m) {
  std::vector<Complex> out;
  for (const Complex& v : nonsym_spectrum(m)) {
    if (std::abs(v) > kNonzeroTol) out.push_back(v);
  }
  return out;
}

double multiset_discrepancy(const std::vector<Complex>& a,
                            const std::vector<Complex>& b) {
  if (a.size() != b.size()) return 1.0;
  double disc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    disc = std::max(disc, std::abs(a[i] - b[i]));
  }
  return disc;
}

}  // namespace

bool leq(const Projection& p, const Projection& q, const ToleranceConfig& cfg) {
  cfg.validate();
  if (p.dim() != q.dim()) {
    throw ArgumentError("projection dimensions do not match");
  }
  return operator_norm(p.matrix() - q.matrix() * p.matrix()) <= cfg.order_tol;
}

Projection complement(const Projection& p, const ToleranceConfig& cfg) {
  const Matrix c = Matrix::Identity(p.dim(), p.dim()) - p.matrix();
  return Projection::from_matrix(c, cfg);
}

Projection meet_nullspace(const std::vector<Projection>& ps,
                          const ToleranceConfig& cfg) {
  cfg.validate();
  require_same_dims(ps);
  const int n = ps.front().dim();
  const int k = static_cast<int>(ps.size());
  Matrix stacked(static_cast<Eigen::Index>(k) * n, n);
  for (int i = 0; i < k; ++i) {
    stacked.middleRows(static_cast<Eigen::Index>(i) * n, n) =
        Matrix::Identity(n, n) - ps[static_cast<std::size_t>(i)].matrix();
  }
  Eigen::JacobiSVD<Matrix> svd(stacked, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double scale = std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
  int null_dim = 0;
  for (int i = static_cast<int>(sv.size()) - 1; i >= 0; --i) {
    if (sv(i) <= cfg.rank_tol * scale) ++null_dim;
    else break;
  }
  if (null_dim == 0) return Projection::zero(n);
  const Matrix basis = svd.matrixV().rightCols(null_dim);
  return Projection::from_basis(basis, n, cfg);
}

Projection meet_spectral(const std::vector<Projection>& ps,
                         const ToleranceConfig& cfg) {
  cfg.validate();
  require_same_dims(ps);
  const Matrix t = product_of(ps);
  const HermitianOperator gram(t.adjoint() * t, cfg);
  // Unit vectors fixed by every factor are exactly the eigenvalue-1 vectors
  // of T*T.
  return decompose(gram, cfg).family_upper(1.0, FamilySide::open_below, cfg);
}

Projection join(const std::vector<Projection>& ps, const ToleranceConfig& cfg) {
  require_same_dims(ps);
  std::vector<Projection> comps;
  comps.reserve(ps.size());
  for (const auto& p : ps) comps.push_back(complement(p, cfg));
  return complement(meet_spectral(comps, cfg), cfg);
}

GlbReport glb_criterion(const std::vector<Projection>& ps,
                        const ToleranceConfig& cfg) {
  cfg.validate();
  require_same_dims(ps);
  const Matrix t = product_of(ps);
  const HermitianOperator gram(t.adjoint() * t, cfg);
  const SpectralDecomposition dec = decompose(gram, cfg);

  GlbReport report;
  // Eigenvalues within eig_cluster of 1 count as 1; ties at the boundary are
  // excluded from the sup.
  report.sup_sigma_excl_one = 0.0;
  for (double v : dec.eigenvalues) {
    if (v < 1.0 - cfg.eig_cluster) {
      report.sup_sigma_excl_one = std::max(report.sup_sigma_excl_one, v);
    }
  }
  report.criterion_holds = report.sup_sigma_excl_one < 1.0 - cfg.eig_cluster;
  report.meet = dec.family_upper(1.0, FamilySide::open_below, cfg);
  report.norm_gap = operator_norm(t - report.meet.matrix());
  return report;
}

GlbNormReport glb_norm_check(const std::vector<Projection>& ps,
                             const Projection& r, const ToleranceConfig& cfg) {
  cfg.validate();
  require_same_dims(ps);
  if (r.dim() != ps.front().dim()) {
    throw ArgumentError("candidate dimension does not match");
  }
  GlbNormReport report;
  bool below_all = true;
  for (const auto& p : ps) below_all = below_all && leq(r, p, cfg);
  report.norm = operator_norm(product_of(ps) - r.matrix());
  report.is_glb = below_all && report.norm < 1.0 - cfg.order_tol;
  return report;
}

NonzeroMeetReport nonzero_meet_check(const Projection& p, const Projection& q,
                                     const ToleranceConfig& cfg) {
  cfg.validate();
  if (p.dim() != q.dim()) {
    throw ArgumentError("projection dimensions do not match");
  }
  NonzeroMeetReport report;
  report.meet_nonzero = meet_nullspace({p, q}, cfg).rank() > 0;
  report.pq_norm = operator_norm(p.matrix() * q.matrix());
  // In finite dimension a nonzero meet and a unit product norm are the same
  // thing; disagreement means the tolerances are inconsistent for this input.
  const bool norm_is_one = std::abs(report.pq_norm - 1.0) <= cfg.order_tol;
  if (report.meet_nonzero != norm_is_one) {
    throw ToleranceError(
        "nonzero-meet rank decision disagrees with product norm");
  }
  return report;
}

SpectrumIdentityReport spectrum_identity_report(const Projection& p,
                                                const Projection& q,
                                                const ToleranceConfig& cfg) {
  cfg.validate();
  if (p.dim() != q.dim()) {
    throw ArgumentError("projection dimensions do not match");
  }
  const Matrix& pm = p.matrix();
  const Matrix& qm = q.matrix();

  SpectrumIdentityReport report;
  report.product_spectra = {
      hermitian_nonzero_spectrum(pm * qm * pm),
      general_nonzero_spectrum(pm * pm * qm),
      general_nonzero_spectrum(pm * qm),
      general_nonzero_spectrum(qm * pm),
      general_nonzero_spectrum(qm * qm * pm),
      hermitian_nonzero_spectrum(qm * pm * qm),
  };
  report.product_max_discrepancy = 0.0;
  for (std::size_t i = 1; i < report.product_spectra.size(); ++i) {
    report.product_max_discrepancy =
        std::max(report.product_max_discrepancy,
                 multiset_discrepancy(report.product_spectra[0],
                                      report.product_spectra[i]));
  }

  const Matrix qperp = Matrix::Identity(p.dim(), p.dim()) - qm;
  Eigen::SelfAdjointEigenSolver<Matrix> lhs_solver(pm * qperp * pm,
                                                   Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Matrix> rhs_solver(pm * qm * pm,
                                                   Eigen::EigenvaluesOnly);
  for (int i = 0; i < p.dim(); ++i) {
    const double v = lhs_solver.eigenvalues()(i);
    if (v > kWindowEps && v < 1.0 - kWindowEps) report.window_lhs.push_back(v);
  }
  for (int i = p.dim() - 1; i >= 0; --i) {
    const double v = rhs_solver.eigenvalues()(i);
    if (v > kWindowEps && v < 1.0 - kWindowEps) {
      report.window_rhs.push_back(1.0 - v);
    }
  }
  std::sort(report.window_lhs.begin(), report.window_lhs.end());
  std::sort(report.window_rhs.begin(), report.window_rhs.end());
  if (report.window_lhs.size() != report.window_rhs.size()) {
    report.window_max_discrepancy = 1.0;
  } else {
    report.window_max_discrepancy = 0.0;
    for (std::size_t i = 0; i < report.window_lhs.size(); ++i) {
      report.window_max_discrepancy =
          std::max(report.window_max_discrepancy,
                   std::abs(report.window_lhs[i] - report.window_rhs[i]));
    }
  }

  const double pq_norm = operator_norm(pm * qm);
  report.norm_squared = pq_norm * pq_norm;
  report.top_eigenvalue =
      std::max(0.0, rhs_solver.eigenvalues()(p.dim() - 1));
  report.norm_discrepancy =
      std::abs(report.norm_squared - report.top_eigenvalue);

  report.max_discrepancy =
      std::max({report.product_max_discrepancy, report.window_max_discrepancy,
                report.norm_discrepancy});
  return report;
}

Projection separativity_witness(const Projection& p, const Projection& q,
                                const ToleranceConfig& cfg) {
  cfg.validate();
  if (p.dim() != q.dim()) {
    throw ArgumentError("projection dimensions do not match");
  }
  if (leq(p, q, cfg)) {
    throw OrderError("separativity witness requires P not below Q");
  }
  const Matrix qperp = Matrix::Identity(p.dim(), p.dim()) - q.matrix();
  const double overlap = operator_norm(qperp * p.matrix());
  const double s = 0.5 * overlap * overlap;
  const HermitianOperator pqp(p.matrix() * qperp * p.matrix(), cfg);
  const Projection r =
      decompose(pqp, cfg).family_upper(s, FamilySide::closed, cfg);

  if (r.rank() == 0 || !leq(r, p, cfg)) {
    throw ToleranceError("separativity witness failed its own certificate");
  }
  if (operator_norm(q.matrix() * r.matrix()) >
      std::sqrt(1.0 - s) + cfg.order_tol) {
    throw ToleranceError("separativity witness exceeds the norm bound");
  }
  if (meet_nullspace({r, q}, cfg).rank() != 0) {
    throw ToleranceError("separativity witness meets Q nontrivially");
  }
  return r;
}

DensityState::DensityState(Matrix rho, const ToleranceConfig& cfg) {
  cfg.validate();
  if (rho.rows() != rho.cols() || rho.rows() == 0) {
    throw ArgumentError("density matrix must be square and non-empty");
  }
  if (!rho.allFinite()) {
    throw NumericInputError("density matrix has non-finite entries");
  }
  if ((rho - rho.adjoint()).norm() > kStateTol) {
    throw NumericInputError("density matrix is not self-adjoint");
  }
  if (std::abs(rho.trace().real() - 1.0) > kStateTol ||
      std::abs(rho.trace().imag()) > kStateTol) {
    throw NumericInputError("density matrix trace must be 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(
      0.5 * (rho + rho.adjoint().eval()), Eigen::EigenvaluesOnly);
  if (solver.eigenvalues()(0) < -cfg.psd_tol) {
    throw NumericInputError("density matrix is not positive semidefinite");
  }
  rho_ = 0.5 * (rho + rho.adjoint().eval());
}

double DensityState::expectation(const Projection& p) const {
  if (p.dim() != dim()) {
    throw ArgumentError("projection dimension does not match state");
  }
  return (rho_ * p.matrix()).trace().real();
}

StateCentredReport state_centred_check(const DensityState& rho,
                                       const std::vector<Projection>& ps,
                                       const ToleranceConfig& cfg) {
  cfg.validate();
  require_same_dims(ps);
  if (ps.front().dim() != rho.dim()) {
    throw ArgumentError("state dimension does not match projections");
  }
  StateCentredReport report;
  report.all_one = true;
  for (const auto& p : ps) {
    report.all_one = report.all_one && rho.expectation(p) >= 1.0 - kStateTol;
  }
  report.product_norm = operator_norm(product_of(ps));
  return report;
}

}  // namespace projlat
