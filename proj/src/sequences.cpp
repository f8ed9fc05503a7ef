#include "projlat/sequences.hpp"

#include <algorithm>
#include <cmath>

#include "projlat/projorder.hpp"

namespace projlat {

namespace {

constexpr double kEeSlack = 1e-9;
constexpr double kTrendSlack = 1e-12;

void require_same_dims(const std::vector<Projection>& ps) {
  if (ps.empty()) throw ArgumentError("projection list must be non-empty");
  for (const auto& p : ps) {
    if (p.dim() != ps.front().dim()) {
      throw ArgumentError("projection dimensions do not match");
    }
  }
}

double ipow6(int base) {
  double b = static_cast<double>(base);
  double b2 = b * b;
  return b2 * b2 * b2;
}

}  // namespace

ScheduleConfig ScheduleConfig::make(int max_m, int max_n) {
  if (max_m < 0 || max_n < 0 || max_m > 16 || max_n > 16) {
    throw ConfigError("schedule depth limited to 16 in each index");
  }
  ScheduleConfig sched;
  sched.max_m_ = max_m;
  sched.max_n_ = max_n;
  const int width = max_m + max_n + 1;
  sched.complements_.resize(static_cast<std::size_t>(max_m) + 1);
  sched.complements_[0].assign(static_cast<std::size_t>(width), 1.0);
  for (int m = 1; m <= max_m; ++m) {
    const int row_width = width - m;
    sched.complements_[static_cast<std::size_t>(m)].resize(
        static_cast<std::size_t>(row_width));
    for (int n = 0; n < row_width; ++n) {
      const double prev =
          sched.complements_[static_cast<std::size_t>(m - 1)]
                            [static_cast<std::size_t>(n + 1)];
      const double next = prev / ipow6(m + n + 1);
      if (!(next > 0.0) ||
          !(next < sched.complements_[static_cast<std::size_t>(m - 1)]
                                     [static_cast<std::size_t>(n)])) {
        throw ConfigError("schedule grid lost strict monotonicity");
      }
      sched.complements_[static_cast<std::size_t>(m)]
                        [static_cast<std::size_t>(n)] = next;
    }
  }
  return sched;
}

double ScheduleConfig::one_minus_t(int m, int n) const {
  if (m < 0 || n < 0 || m > max_m_ || n > max_n_) {
    throw ConfigError("schedule index out of the configured depth");
  }
  return complements_[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)];
}

double ScheduleConfig::t(int m, int n) const { return 1.0 - one_minus_t(m, n); }

std::vector<Projection> decreasing_equalizer_recursive(
    const std::vector<Projection>& ps, const ToleranceConfig& cfg) {
  cfg.validate();
  require_same_dims(ps);

  std::vector<Projection> meets;  // exact partial meets M_0 >= M_1 >= ...
  meets.push_back(ps.front());
  for (std::size_t n = 1; n < ps.size(); ++n) {
    meets.push_back(meet_spectral({meets.back(), ps[n]}, cfg));
  }

  std::vector<Projection> out;
  out.push_back(ps.front());
  for (std::size_t n = 1; n < ps.size(); ++n) {
    const double step_tol = std::ldexp(1.0, -static_cast<int>(n));
    // Inner sequences are constant at the exact partial meets, so the index
    // search stabilizes at its first candidate; the conditions it would scan
    // for must still hold.
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (operator_norm((Matrix::Identity(ps[0].dim(), ps[0].dim()) -
                         meets[k].matrix()) *
                        meets[n].matrix()) > step_tol) {
        throw ToleranceError("partial meets drifted above the step tolerance");
      }
    }
    if (operator_norm((Matrix::Identity(ps[0].dim(), ps[0].dim()) -
                       out.back().matrix()) *
                      meets[n].matrix()) > step_tol) {
      throw ToleranceError("previous stage drifted above the step tolerance");
    }

    const Matrix sandwich =
        out.back().matrix() * meets[n].matrix() * out.back().matrix();
    const HermitianOperator s(sandwich, cfg);
    const double cutoff = 1.0 - std::ldexp(1.0, -2 * static_cast<int>(n));
    out.push_back(
        decompose(s, cfg).family_upper(cutoff, FamilySide::open_below, cfg));
  }
  return out;
}

std::vector<Projection> decreasing_equalizer_spectral(
    const std::vector<Projection>& ps, const ScheduleConfig& sched,
    const ToleranceConfig& cfg) {
  cfg.validate();
  require_same_dims(ps);
  if (static_cast<int>(ps.size()) - 1 > sched.max_m()) {
    throw ConfigError("input length exceeds the schedule depth");
  }

  std::vector<Projection> out;
  Matrix t = ps.front().matrix();
  for (std::size_t n = 0; n < ps.size(); ++n) {
    if (n > 0) t *= ps[n].matrix();
    const HermitianOperator gram(t.adjoint() * t, cfg);
    // The grid cutoff saturates at 1 in double precision for deep rows; the
    // effective cutoff stays one cluster band below 1 so that eigenvalue-1
    // directions are always retained.
    const double cutoff = std::min(sched.t(static_cast<int>(n), 1),
                                   1.0 - 2.0 * cfg.eig_cluster);
    const Projection raw =
        decompose(gram, cfg).family_upper(cutoff, FamilySide::closed, cfg);
    // A raw stage can pick up a direction with Gram eigenvalue strictly
    // inside (cutoff, 1), and such a direction need not lie in the previous
    // stage.  Intersecting with the previous stage keeps the sequence
    // decreasing; the family meet survives because it sits inside every raw
    // stage.
    out.push_back(n == 0 ? raw : meet_spectral({out.back(), raw}, cfg));
  }
  return out;
}

Projection range_product_projection(const std::vector<Projection>& ps, int n,
                                    const ToleranceConfig& cfg) {
  cfg.validate();
  require_same_dims(ps);
  if (n < 0 || n >= static_cast<int>(ps.size())) {
    throw ArgumentError("product index out of range");
  }
  Matrix t = ps.front().matrix();
  for (int i = 1; i <= n; ++i) t *= ps[static_cast<std::size_t>(i)].matrix();
  Eigen::JacobiSVD<Matrix> svd(t, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double scale = std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > cfg.rank_tol * scale) ++rank;
  }
  if (rank == 0) return Projection::zero(ps.front().dim());
  return Projection::from_basis(svd.matrixU().leftCols(rank), ps.front().dim(),
                                cfg);
}

TechconReport techcon_check(const std::vector<Projection>& ps,
                            const ToleranceConfig& cfg) {
  cfg.validate();
  require_same_dims(ps);
  const int dim = ps.front().dim();
  const Matrix id = Matrix::Identity(dim, dim);

  TechconReport report;
  report.partial_sums.assign(ps.size(), 0.0);
  for (std::size_t n = 1; n < ps.size(); ++n) {
    double sum = 0.0;
    Matrix chain = ps[n].matrix();  // P_{k+1} ... P_n, built downward in k
    for (std::size_t k = n; k-- > 0;) {
      sum += operator_norm((id - ps[k].matrix()) * chain);
      if (k > 0) chain = ps[k].matrix() * chain;
    }
    report.partial_sums[n] = sum;
  }

  const std::size_t half = (ps.size() + 1) / 2;
  double head = 0.0;
  double tail = 0.0;
  for (std::size_t i = 1; i < half; ++i) head = std::max(head, report.partial_sums[i]);
  for (std::size_t i = half; i < ps.size(); ++i) {
    tail = std::max(tail, report.partial_sums[i]);
  }
  report.decreasing_tail = tail <= head + kTrendSlack;
  return report;
}

EeReport ee_inequality_check(const HermitianOperator& s, const Projection& p,
                             double cut_s, double cut_t,
                             const ToleranceConfig& cfg) {
  cfg.validate();
  if (p.dim() != s.dim()) {
    throw ArgumentError("projection dimension does not match operator");
  }
  const double norm_s = operator_norm(s.matrix());
  if (!(cut_s >= 0.0) || !(cut_s < norm_s) || !(cut_t < norm_s)) {
    throw ArgumentError("cutoffs must satisfy 0 <= s < ||S|| and t < ||S||");
  }

  const Projection lower = spectral_family_at(s, cut_t, FamilySide::closed, cfg);
  const HermitianOperator psp(p.matrix() * s.matrix() * p.matrix(), cfg);
  const Projection upper =
      decompose(psp, cfg).family_upper(cut_s, FamilySide::closed, cfg);

  EeReport report;
  const double overlap = operator_norm(lower.matrix() * upper.matrix());
  report.lhs = overlap * overlap;
  report.rhs = (norm_s - cut_s) / (norm_s - cut_t);
  report.holds = report.lhs <= report.rhs + kEeSlack;
  return report;
}

std::vector<Projection> increasing_equalizer(const std::vector<Projection>& ps,
                                             const ToleranceConfig& cfg) {
  require_same_dims(ps);
  std::vector<Projection> comps;
  comps.reserve(ps.size());
  for (const auto& p : ps) comps.push_back(complement(p, cfg));
  std::vector<Projection> dec = decreasing_equalizer_recursive(comps, cfg);
  std::vector<Projection> out;
  out.reserve(dec.size());
  for (const auto& q : dec) out.push_back(complement(q, cfg));
  return out;
}

GapCertificate gap_element(const Projection& p, const Projection& q,
                           const ToleranceConfig& cfg) {
  cfg.validate();
  if (p.dim() != q.dim()) {
    throw ArgumentError("projection dimensions do not match");
  }
  const Matrix& pm = p.matrix();
  const Matrix& qm = q.matrix();
  if (operator_norm(pm * qm - qm * pm) <= cfg.order_tol) {
    throw ConstructionError(
        "gap construction requires a non-commuting pair of projections");
  }

  const HermitianOperator pqp(pm * qm * pm, cfg);
  const SpectralDecomposition dec = decompose(pqp, cfg);
  int pivot = -1;
  double best = 2.0;
  for (std::size_t i = 0; i < dec.eigenvalues.size(); ++i) {
    const double v = dec.eigenvalues[i];
    if (v <= cfg.eig_cluster || v >= 1.0 - cfg.eig_cluster) continue;
    // Strict improvement only: on an exact tie the smaller eigenvalue wins.
    if (std::abs(v - 0.5) < best) {
      best = std::abs(v - 0.5);
      pivot = static_cast<int>(i);
    }
  }
  if (pivot < 0) {
    throw ConstructionError("PQP has no eigenvalue strictly inside (0, 1)");
  }
  const double r = dec.eigenvalues[static_cast<std::size_t>(pivot)];

  // -1 below r/2, then a linear rise to the plateau r/4 from 3r/4 on.
  const PiecewiseLinearFunction f({0.5 * r, 0.75 * r}, {-1.0, 0.25 * r});
  GapCertificate cert{apply_function(pqp, f, cfg), r, Vector(), Vector()};

  cert.witness_pos =
      dec.projectors[static_cast<std::size_t>(pivot)].range_basis().col(0);
  const Projection pperp = complement(p, cfg);
  if (pperp.rank() == 0) {
    throw ConstructionError("gap construction requires P with proper range");
  }
  cert.witness_neg = pperp.range_basis().col(0);

  const Matrix& sm = cert.s.matrix();
  Eigen::SelfAdjointEigenSolver<Matrix> below_q(qm - sm, Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Matrix> below_p(pm - sm, Eigen::EigenvaluesOnly);
  const double pos = (cert.witness_pos.adjoint() * sm * cert.witness_pos)(0).real();
  const double neg = (cert.witness_neg.adjoint() * sm * cert.witness_neg)(0).real();
  const Projection meet = meet_nullspace({p, q}, cfg);
  const double meet_overlap = (meet.matrix() * cert.witness_pos).norm();
  if (below_q.eigenvalues()(0) < -cfg.psd_tol ||
      below_p.eigenvalues()(0) < -cfg.psd_tol || !(pos > 0.0) || !(neg < 0.0) ||
      meet_overlap > cfg.order_tol) {
    throw ToleranceError("gap certificate failed its own checks");
  }
  return cert;
}

}  // namespace projlat
