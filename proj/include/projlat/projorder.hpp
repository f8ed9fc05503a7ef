#pragma once

#include <vector>

#include "projlat/projection.hpp"
#include "projlat/spectra.hpp"
#include "projlat/types.hpp"

namespace projlat {

struct GlbReport {
  double sup_sigma_excl_one = 0.0;
  bool criterion_holds = false;
  Projection meet = Projection::zero(1);
  double norm_gap = 0.0;
};

struct GlbNormReport {
  bool is_glb = false;
  double norm = 0.0;
};

struct NonzeroMeetReport {
  bool meet_nonzero = false;
  double pq_norm = 0.0;
};

struct SpectrumIdentityReport {
  // Nonzero eigenvalue multisets of the six products, each sorted by
  // (re, im).  Order: pqp, ppq, pq, qp, qqp, qpq.
  std::vector<std::vector<Complex>> product_spectra;
  double product_max_discrepancy = 0.0;
  // sigma(P Q^perp P) and 1 - sigma(PQP), both restricted to (eps, 1-eps).
  std::vector<double> window_lhs;
  std::vector<double> window_rhs;
  double window_max_discrepancy = 0.0;
  double norm_squared = 0.0;      // ||PQ||^2
  double top_eigenvalue = 0.0;    // max sigma(PQP)
  double norm_discrepancy = 0.0;
  double max_discrepancy = 0.0;
};

// Trace-one positive operator; validated at construction.
class DensityState {
 public:
  explicit DensityState(Matrix rho,
                        const ToleranceConfig& cfg = ToleranceConfig{});
  int dim() const { return static_cast<int>(rho_.rows()); }
  const Matrix& matrix() const { return rho_; }
  double expectation(const Projection& p) const;

 private:
  Matrix rho_;
};

struct StateCentredReport {
  bool all_one = false;
  double product_norm = 0.0;
};

// P <= Q  iff  ||P - QP|| <= order_tol.
bool leq(const Projection& p, const Projection& q,
         const ToleranceConfig& cfg = ToleranceConfig{});

Projection complement(const Projection& p,
                      const ToleranceConfig& cfg = ToleranceConfig{});

// Intersection of ranges via the null space of stacked complements; the
// reference route, independent of the spectral route below.
Projection meet_nullspace(const std::vector<Projection>& ps,
                          const ToleranceConfig& cfg = ToleranceConfig{});

// E^perp_{T*T}(1-) for T = P_0 ... P_n.
Projection meet_spectral(const std::vector<Projection>& ps,
                         const ToleranceConfig& cfg = ToleranceConfig{});

// De Morgan dual of meet_spectral.
Projection join(const std::vector<Projection>& ps,
                const ToleranceConfig& cfg = ToleranceConfig{});

GlbReport glb_criterion(const std::vector<Projection>& ps,
                        const ToleranceConfig& cfg = ToleranceConfig{});

// Checks whether R is the greatest lower bound of ps through the norm test
// ||P_0...P_n - R|| < 1.
GlbNormReport glb_norm_check(const std::vector<Projection>& ps,
                             const Projection& r,
                             const ToleranceConfig& cfg = ToleranceConfig{});

NonzeroMeetReport nonzero_meet_check(const Projection& p, const Projection& q,
                                     const ToleranceConfig& cfg = ToleranceConfig{});

SpectrumIdentityReport spectrum_identity_report(
    const Projection& p, const Projection& q,
    const ToleranceConfig& cfg = ToleranceConfig{});

// For P not below Q: R = E^perp_{P Q^perp P}(s) at s = ||Q^perp P||^2 / 2.
// Nonzero, below P, ||QR|| <= sqrt(1 - s), and R meets Q trivially.
Projection separativity_witness(const Projection& p, const Projection& q,
                                const ToleranceConfig& cfg = ToleranceConfig{});

StateCentredReport state_centred_check(
    const DensityState& rho, const std::vector<Projection>& ps,
    const ToleranceConfig& cfg = ToleranceConfig{});

}  // namespace projlat
