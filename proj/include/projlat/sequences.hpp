#pragma once

#include <vector>

#include "projlat/projection.hpp"
#include "projlat/spectra.hpp"
#include "projlat/types.hpp"

namespace projlat {

// Doubly indexed cutoff grid
//   t(0, n) = 0,   t(m, n) = 1 - (1 - t(m-1, n+1)) / (m+n+1)^6,
// stored through the complements 1 - t(m, n), which stay exactly
// representable long after t itself rounds to 1.
class ScheduleConfig {
 public:
  static ScheduleConfig make(int max_m = 16, int max_n = 16);

  double t(int m, int n) const;
  double one_minus_t(int m, int n) const;
  int max_m() const { return max_m_; }
  int max_n() const { return max_n_; }

 private:
  ScheduleConfig() = default;
  int max_m_ = 0;
  int max_n_ = 0;
  std::vector<std::vector<double>> complements_;  // complements_[m][n] = 1 - t(m,n)
};

struct GapCertificate {
  HermitianOperator s;
  double r = 0.0;
  Vector witness_pos;
  Vector witness_neg;
};

struct TechconReport {
  std::vector<double> partial_sums;
  bool decreasing_tail = false;
};

struct EeReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

// Recursive equalizer: Q_n from the spectral family of Q_{n-1} M_n Q_{n-1}
// at cutoff (1 - 4^{-n}) from below, with the inner approximating sequences
// collapsed to the exact partial meets M_n, where the stabilization search
// terminates immediately.
std::vector<Projection> decreasing_equalizer_recursive(
    const std::vector<Projection>& ps,
    const ToleranceConfig& cfg = ToleranceConfig{});

// Spectral equalizer: Q_n = E^perp_{T_n* T_n}(t(n,1)) for T_n = P_0 ... P_n,
// cutoffs taken from the schedule grid (lower end of the admissible sandwich),
// each stage intersected with the previous one so the sequence decreases.
std::vector<Projection> decreasing_equalizer_spectral(
    const std::vector<Projection>& ps, const ScheduleConfig& sched,
    const ToleranceConfig& cfg = ToleranceConfig{});

// Projection onto R(P_0 ... P_n), singular values thresholded at rank_tol.
Projection range_product_projection(const std::vector<Projection>& ps, int n,
                                    const ToleranceConfig& cfg = ToleranceConfig{});

// Partial sums  sum_{k<n} ||P_k^perp P_{k+1} ... P_n||  and a finite-length
// trend flag (second-half maximum not above first-half maximum).
TechconReport techcon_check(const std::vector<Projection>& ps,
                            const ToleranceConfig& cfg = ToleranceConfig{});

// ||E_S(t) E^perp_{PSP}(s)||^2 <= (||S|| - s) / (||S|| - t).
EeReport ee_inequality_check(const HermitianOperator& s, const Projection& p,
                             double cut_s, double cut_t,
                             const ToleranceConfig& cfg = ToleranceConfig{});

// Order dual of the recursive equalizer.
std::vector<Projection> increasing_equalizer(
    const std::vector<Projection>& ps,
    const ToleranceConfig& cfg = ToleranceConfig{});

// For a non-commuting pair produces S = f(PQP) with S <= P, S <= Q and S
// incomparable with 0, witnessed by explicit vectors.
GapCertificate gap_element(const Projection& p, const Projection& q,
                           const ToleranceConfig& cfg = ToleranceConfig{});

}  // namespace projlat
