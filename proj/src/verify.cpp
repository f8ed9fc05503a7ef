#include "projlat/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "projlat/algebra.hpp"
#include "projlat/calkin.hpp"
#include "projlat/io.hpp"
#include "projlat/projorder.hpp"
#include "projlat/rng.hpp"
#include "projlat/sequences.hpp"

namespace projlat::verify {

namespace {

using io::json;

constexpr double kPropTol = 1e-8;

class Recorder {
 public:
  explicit Recorder(std::string name) { result_.name = std::move(name); }

  void observe(double d) {
    if (std::isfinite(d)) {
      result_.max_discrepancy = std::max(result_.max_discrepancy, d);
    }
  }

  // False condition records the violated property with its instance; the
  // first one is kept as the suite counterexample.
  void check(bool ok, const char* what, const json& instance) {
    if (ok) return;
    ++result_.failures;
    if (result_.counterexample.empty()) {
      result_.counterexample =
          json{{"violated", what}, {"instance", instance}}.dump();
    }
  }

  void fail(const std::string& what, const json& instance) {
    check(false, what.c_str(), instance);
  }

  void done_instance() { ++result_.instances; }

  SuiteResult finish(std::string detail = std::string()) {
    result_.passed = result_.failures == 0;
    result_.detail = std::move(detail);
    return std::move(result_);
  }

 private:
  SuiteResult result_;
};

SeededRng suite_rng(const VerifyOptions& opt, std::uint64_t salt) {
  return SeededRng(opt.seed ^ (0x9E3779B97F4A7C15ULL * (salt + 1)));
}

int draw_dim(SeededRng& rng, const VerifyOptions& opt, int lo = 2,
             int cap = 0) {
  int hi = std::max(lo, opt.max_dim);
  if (cap > 0) hi = std::min(hi, cap);
  return rng.uniform_int(lo, std::max(lo, hi));
}

double min_eigenvalue(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()),
                                           Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

json pair_json(const Projection& p, const Projection& q) {
  return json{{"p", io::projection_to_json(p)},
              {"q", io::projection_to_json(q)}};
}

json family_json(const std::vector<Projection>& ps) {
  json list = json::array();
  for (const auto& p : ps) list.push_back(io::projection_to_json(p));
  return json{{"ps", std::move(list)}};
}

// All members contain a fixed core subspace, so the family meet is nonzero.
std::vector<Projection> shared_core_family(SeededRng& rng, int dim, int count,
                                           int core_rank,
                                           const ToleranceConfig& cfg) {
  const Projection core = core_rank > 0
                              ? rng.random_projection(dim, core_rank, cfg)
                              : Projection::zero(dim);
  std::vector<Projection> ps;
  ps.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const int extra = rng.uniform_int(0, dim - core_rank);
    if (core_rank + extra == 0) {
      ps.push_back(Projection::zero(dim));
      continue;
    }
    Matrix cols(dim, core_rank + extra);
    if (core_rank > 0) cols.leftCols(core_rank) = core.range_basis();
    if (extra > 0) cols.rightCols(extra) = rng.gaussian_matrix(dim, extra);
    ps.push_back(Projection::from_basis(cols, dim, cfg));
  }
  return ps;
}

std::vector<Projection> generic_family(SeededRng& rng, int dim, int count,
                                       const ToleranceConfig& cfg) {
  std::vector<Projection> ps;
  ps.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    ps.push_back(rng.random_projection(dim, rng.uniform_int(1, dim), cfg));
  }
  return ps;
}

Projection span_join(const std::vector<Projection>& ps,
                     const ToleranceConfig& cfg) {
  const int dim = ps.front().dim();
  int total = 0;
  for (const auto& p : ps) total += p.rank();
  if (total == 0) return Projection::zero(dim);
  Matrix cols(dim, total);
  int at = 0;
  for (const auto& p : ps) {
    if (p.rank() > 0) cols.middleCols(at, p.rank()) = p.range_basis();
    at += p.rank();
  }
  return Projection::from_basis(cols, dim, cfg);
}

}  // namespace

SuiteResult suite_spectral_families(const VerifyOptions& opt) {
  Recorder rec("spectral_families");
  SeededRng rng = suite_rng(opt, 1);
  for (int it = 0; it < opt.count; ++it) {
    json inst;
    try {
      const int d = draw_dim(rng, opt);
      const HermitianOperator s = rng.random_hermitian(d, opt.cfg);
      inst = json{{"s", io::matrix_to_json(s.matrix())}};
      const double scale = std::max(1.0, operator_norm(s.matrix()));
      const SpectralDecomposition dec = decompose(s, opt.cfg);

      Matrix recon = Matrix::Zero(d, d);
      Matrix total = Matrix::Zero(d, d);
      for (std::size_t i = 0; i < dec.eigenvalues.size(); ++i) {
        recon += dec.eigenvalues[i] * dec.projectors[i].matrix();
        total += dec.projectors[i].matrix();
      }
      const double recon_err = operator_norm(recon - s.matrix());
      rec.observe(recon_err);
      rec.check(recon_err <= kPropTol * scale, "eigenprojector reconstruction",
                inst);
      rec.check(operator_norm(total - Matrix::Identity(d, d)) <= 1e-9,
                "eigenprojector completeness", inst);
      bool orthogonal = true;
      bool commutes = true;
      for (std::size_t i = 0; i < dec.projectors.size(); ++i) {
        const Matrix& pi = dec.projectors[i].matrix();
        if (operator_norm(pi * s.matrix() - s.matrix() * pi) > kPropTol * scale) {
          commutes = false;
        }
        for (std::size_t j = i + 1; j < dec.projectors.size(); ++j) {
          if (operator_norm(pi * dec.projectors[j].matrix()) > 1e-9) {
            orthogonal = false;
          }
        }
      }
      rec.check(orthogonal, "eigenprojector orthogonality", inst);
      rec.check(commutes, "eigenprojector commutation", inst);

      std::vector<double> cuts;
      cuts.push_back(dec.eigenvalues.front() - 1.0);
      for (double v : dec.eigenvalues) {
        cuts.push_back(v - 1e-6);
        cuts.push_back(v + 1e-6);
      }
      cuts.push_back(dec.eigenvalues.back() + 1.0);
      Projection prev = Projection::zero(d);
      bool monotone = true;
      bool complemented = true;
      bool open_below_closed = true;
      bool compressed = true;
      for (double t : cuts) {
        const Projection e = dec.family(t, FamilySide::closed, opt.cfg);
        const Projection f = dec.family_upper(t, FamilySide::closed, opt.cfg);
        const Projection e_open =
            dec.family(t, FamilySide::open_below, opt.cfg);
        if (!leq(prev, e, opt.cfg)) monotone = false;
        if (frobenius(e.matrix() + f.matrix() - Matrix::Identity(d, d)) >
            1e-9) {
          complemented = false;
        }
        if (!leq(e_open, e, opt.cfg)) open_below_closed = false;
        const double lo = min_eigenvalue(
            (t + opt.cfg.eig_cluster) * e.matrix() -
            e.matrix() * s.matrix() * e.matrix());
        const double hi = min_eigenvalue(
            f.matrix() * s.matrix() * f.matrix() - t * f.matrix());
        if (lo < -kPropTol * scale || hi < -kPropTol * scale) {
          compressed = false;
        }
        prev = e;
      }
      rec.check(monotone, "spectral family monotone in the cutoff", inst);
      rec.check(complemented, "family plus upper family is the identity", inst);
      rec.check(open_below_closed, "open-below family sits below closed", inst);
      rec.check(compressed, "family compresses the spectrum at the cutoff",
                inst);

      const double lo_bp = dec.eigenvalues.front() - 1.0;
      const double hi_bp = dec.eigenvalues.back() + 1.0;
      const PiecewiseLinearFunction ident({lo_bp, hi_bp}, {lo_bp, hi_bp});
      const double fun_err =
          operator_norm(apply_function(s, ident, opt.cfg).matrix() - s.matrix());
      rec.observe(fun_err);
      rec.check(fun_err <= kPropTol * scale,
                "functional calculus reproduces the identity map", inst);
    } catch (const Error& e) {
      rec.fail(std::string("exception: ") + e.what(), inst);
    }
    rec.done_instance();
  }
  return rec.finish();
}

SuiteResult suite_meet_oracle(const VerifyOptions& opt) {
  Recorder rec("meet_oracle");
  SeededRng rng = suite_rng(opt, 2);
  for (int it = 0; it < opt.count; ++it) {
    json inst;
    try {
      const int d = draw_dim(rng, opt);
      const int k = rng.uniform_int(2, 4);
      std::vector<Projection> ps;
      switch (it % 3) {
        case 0:
          ps = generic_family(rng, d, k, opt.cfg);
          break;
        case 1:
          ps = shared_core_family(rng, d, k,
                                  rng.uniform_int(1, std::max(1, d / 2)),
                                  opt.cfg);
          break;
        default: {
          ps.push_back(rng.random_projection(d, rng.uniform_int(1, d), opt.cfg));
          for (int i = 1; i < k; ++i) {
            ps.push_back(rng.random_subprojection(
                ps.back(), rng.uniform_int(0, ps.back().rank()), opt.cfg));
          }
          break;
        }
      }
      inst = family_json(ps);

      const Projection oracle = meet_nullspace(ps, opt.cfg);
      const Projection spectral = meet_spectral(ps, opt.cfg);
      const double meet_err = frobenius(spectral.matrix() - oracle.matrix());
      rec.observe(meet_err);
      rec.check(meet_err <= kPropTol, "spectral meet equals null-space meet",
                inst);
      bool below = true;
      for (const auto& p : ps) {
        if (!leq(oracle, p, opt.cfg)) below = false;
      }
      rec.check(below, "meet is a lower bound", inst);

      const Projection j = join(ps, opt.cfg);
      const Projection j_oracle = span_join(ps, opt.cfg);
      const double join_err = frobenius(j.matrix() - j_oracle.matrix());
      rec.observe(join_err);
      rec.check(join_err <= kPropTol, "join equals the span oracle", inst);
      bool above = true;
      for (const auto& p : ps) {
        if (!leq(p, j, opt.cfg)) above = false;
      }
      rec.check(above, "join is an upper bound", inst);
    } catch (const Error& e) {
      rec.fail(std::string("exception: ") + e.what(), inst);
    }
    rec.done_instance();
  }
  return rec.finish();
}

SuiteResult suite_lattice_laws(const VerifyOptions& opt) {
  Recorder rec("lattice_laws");
  SeededRng rng = suite_rng(opt, 3);
  for (int it = 0; it < opt.count; ++it) {
    json inst;
    try {
      const int d = draw_dim(rng, opt);
      const Projection p =
          rng.random_projection(d, rng.uniform_int(0, d), opt.cfg);
      const Projection q =
          rng.random_projection(d, rng.uniform_int(0, d), opt.cfg);
      inst = pair_json(p, q);

      rec.check(frobenius(meet_spectral({p, p}, opt.cfg).matrix() -
                          p.matrix()) <= 1e-9,
                "meet idempotent", inst);
      const Projection m_pq = meet_spectral({p, q}, opt.cfg);
      const Projection m_qp = meet_spectral({q, p}, opt.cfg);
      rec.observe(frobenius(m_pq.matrix() - m_qp.matrix()));
      rec.check(frobenius(m_pq.matrix() - m_qp.matrix()) <= kPropTol,
                "meet commutative", inst);
      const Projection j_pq = join({p, q}, opt.cfg);
      rec.check(frobenius(join({q, p}, opt.cfg).matrix() - j_pq.matrix()) <=
                    kPropTol,
                "join commutative", inst);
      rec.check(frobenius(meet_spectral({p, j_pq}, opt.cfg).matrix() -
                          p.matrix()) <= kPropTol,
                "meet absorbs the join", inst);
      rec.check(frobenius(join({p, m_pq}, opt.cfg).matrix() - p.matrix()) <=
                    kPropTol,
                "join absorbs the meet", inst);

      const Projection pc = complement(p, opt.cfg);
      const Projection qc = complement(q, opt.cfg);
      rec.check(frobenius(complement(pc, opt.cfg).matrix() - p.matrix()) <=
                    1e-12,
                "complement involution", inst);
      const double dm = frobenius(complement(j_pq, opt.cfg).matrix() -
                                  meet_nullspace({pc, qc}, opt.cfg).matrix());
      rec.observe(dm);
      rec.check(dm <= kPropTol, "complement of join is meet of complements",
                inst);

      const Projection r =
          rng.random_subprojection(p, rng.uniform_int(0, p.rank()), opt.cfg);
      rec.check(leq(r, p, opt.cfg), "subprojection comparison", inst);
      rec.check(leq(r, j_pq, opt.cfg), "order transitivity through the join",
                inst);
      rec.check(leq(m_pq, p, opt.cfg) && leq(m_pq, q, opt.cfg),
                "meet below both arguments", inst);
      if (leq(p, q, opt.cfg) && leq(q, p, opt.cfg)) {
        rec.check(frobenius(p.matrix() - q.matrix()) <= 1e-7,
                  "order antisymmetry", inst);
      }

      const NonzeroMeetReport nz = nonzero_meet_check(p, q, opt.cfg);
      rec.check(nz.meet_nonzero == (meet_nullspace({p, q}, opt.cfg).rank() > 0),
                "nonzero meet agrees with the rank oracle", inst);
    } catch (const Error& e) {
      rec.fail(std::string("exception: ") + e.what(), inst);
    }
    rec.done_instance();
  }
  return rec.finish();
}

SuiteResult suite_spectrum_identities(const VerifyOptions& opt) {
  Recorder rec("spectrum_identities");
  SeededRng rng = suite_rng(opt, 4);
  for (int it = 0; it < opt.count; ++it) {
    json inst;
    try {
      const int d = draw_dim(rng, opt);
      std::vector<Projection> ps;
      if (it % 2 == 0) {
        ps = generic_family(rng, d, 2, opt.cfg);
      } else {
        ps = shared_core_family(rng, d, 2,
                                rng.uniform_int(1, std::max(1, d / 2)),
                                opt.cfg);
      }
      const Projection& p = ps[0];
      const Projection& q = ps[1];
      inst = pair_json(p, q);

      const SpectrumIdentityReport r = spectrum_identity_report(p, q, opt.cfg);
      rec.observe(r.max_discrepancy);
      rec.check(r.max_discrepancy <= 1e-7,
                "product spectra, window and norm identities", inst);

      const DensityState mixed(Matrix::Identity(d, d) / static_cast<double>(d),
                               opt.cfg);
      const StateCentredReport sc = state_centred_check(mixed, {p, q}, opt.cfg);
      rec.check(sc.product_norm <= 1.0 + 1e-9,
                "projection products are contractive", inst);
      rec.check(sc.all_one == (p.rank() == d && q.rank() == d),
                "mixed state is centred only for full projections", inst);

      const Projection meet = meet_nullspace({p, q}, opt.cfg);
      if (meet.rank() > 0) {
        const DensityState centred(
            meet.matrix() / static_cast<double>(meet.rank()), opt.cfg);
        const StateCentredReport on_meet =
            state_centred_check(centred, {p, q}, opt.cfg);
        rec.check(on_meet.all_one, "state on the meet is centred", inst);
        rec.check(on_meet.product_norm >= 1.0 - 1e-9,
                  "centred state forces a norm-one product", inst);
      }
    } catch (const Error& e) {
      rec.fail(std::string("exception: ") + e.what(), inst);
    }
    rec.done_instance();
  }
  return rec.finish();
}

SuiteResult suite_glb_norm(const VerifyOptions& opt) {
  Recorder rec("glb_norm");
  SeededRng rng = suite_rng(opt, 5);
  for (int it = 0; it < opt.count; ++it) {
    json inst;
    try {
      const int d = draw_dim(rng, opt, 3);
      const int k = rng.uniform_int(2, 4);
      const int core = rng.uniform_int(1, std::max(1, d / 3));
      const std::vector<Projection> ps =
          shared_core_family(rng, d, k, core, opt.cfg);
      inst = family_json(ps);

      const Projection oracle = meet_nullspace(ps, opt.cfg);
      rec.check(oracle.rank() >= core, "shared core survives in the meet",
                inst);

      const GlbReport crit = glb_criterion(ps, opt.cfg);
      rec.check(crit.criterion_holds, "norm criterion holds for the true meet",
                inst);
      const double meet_err =
          frobenius(crit.meet.matrix() - oracle.matrix());
      rec.observe(meet_err);
      rec.check(meet_err <= kPropTol, "criterion meet equals the oracle", inst);

      const GlbNormReport good = glb_norm_check(ps, oracle, opt.cfg);
      rec.observe(good.norm);
      rec.check(good.is_glb, "true meet accepted by the norm test", inst);
      rec.check(good.norm < 1.0 - kPropTol,
                "product sits at norm distance below one from the meet", inst);

      if (oracle.rank() > 0) {
        const Projection strictly_below =
            oracle.rank() > 1
                ? Projection::from_basis(
                      oracle.range_basis().leftCols(oracle.rank() - 1), d,
                      opt.cfg)
                : Projection::zero(d);
        const GlbNormReport bad = glb_norm_check(ps, strictly_below, opt.cfg);
        rec.check(!bad.is_glb, "strictly smaller lower bound rejected", inst);
        rec.check(bad.norm >= 1.0 - kPropTol,
                  "strictly smaller lower bound saturates the norm", inst);
      }

      const Projection stray = rng.random_projection(d, 1, opt.cfg);
      if (!leq(stray, ps.front(), opt.cfg)) {
        rec.check(!glb_norm_check(ps, stray, opt.cfg).is_glb,
                  "non lower bound rejected", inst);
      }
    } catch (const Error& e) {
      rec.fail(std::string("exception: ") + e.what(), inst);
    }
    rec.done_instance();
  }
  return rec.finish();
}

SuiteResult suite_separativity(const VerifyOptions& opt) {
  Recorder rec("separativity");
  SeededRng rng = suite_rng(opt, 6);
  for (int it = 0; it < opt.count; ++it) {
    json inst;
    try {
      const int d = draw_dim(rng, opt);
      Projection p = Projection::zero(d);
      Projection q = Projection::zero(d);
      bool found = false;
      for (int attempt = 0; attempt < 20 && !found; ++attempt) {
        p = rng.random_projection(d, rng.uniform_int(1, d - 1), opt.cfg);
        q = rng.random_projection(d, rng.uniform_int(1, d - 1), opt.cfg);
        found = !leq(p, q, opt.cfg) && !leq(q, p, opt.cfg);
      }
      inst = pair_json(p, q);
      if (!found) {
        rec.fail("generator produced no non-comparable pair", inst);
        rec.done_instance();
        continue;
      }

      const Projection w = separativity_witness(p, q, opt.cfg);
      const double qperp_p =
          operator_norm((Matrix::Identity(d, d) - q.matrix()) * p.matrix());
      const double s = 0.5 * qperp_p * qperp_p;
      rec.check(w.rank() >= 1, "witness is nonzero", inst);
      rec.check(leq(w, p, opt.cfg), "witness sits below P", inst);
      const double qw = operator_norm(q.matrix() * w.matrix());
      rec.observe(qw);
      rec.check(qw <= std::sqrt(1.0 - s) + kPropTol,
                "witness overlap with Q is bounded away from one", inst);
      rec.check(meet_nullspace({w, q}, opt.cfg).rank() == 0,
                "witness meets Q trivially", inst);
    } catch (const Error& e) {
      rec.fail(std::string("exception: ") + e.what(), inst);
    }
    rec.done_instance();
  }
  return rec.finish();
}

SuiteResult suite_equalizers(const VerifyOptions& opt) {
  Recorder rec("equalizers");
  SeededRng rng = suite_rng(opt, 7);
  const ScheduleConfig sched = ScheduleConfig::make();
  for (int it = 0; it < opt.count; ++it) {
    json inst;
    try {
      const int d = draw_dim(rng, opt, 2, 12);
      const int k = rng.uniform_int(2, 6);
      std::vector<Projection> ps =
          it % 2 == 0 ? generic_family(rng, d, k, opt.cfg)
                      : shared_core_family(
                            rng, d, k, rng.uniform_int(1, std::max(1, d / 2)),
                            opt.cfg);
      inst = family_json(ps);
      const Projection oracle = meet_nullspace(ps, opt.cfg);
      const Matrix id = Matrix::Identity(d, d);

      const std::vector<Projection> recur =
          decreasing_equalizer_recursive(ps, opt.cfg);
      const std::vector<Projection> spectral =
          decreasing_equalizer_spectral(ps, sched, opt.cfg);
      rec.check(recur.size() == ps.size() && spectral.size() == ps.size(),
                "equalizer lengths match the family", inst);

      bool dec_r = true;
      bool dec_s = true;
      for (std::size_t i = 0; i + 1 < ps.size(); ++i) {
        if (!leq(recur[i + 1], recur[i], opt.cfg)) dec_r = false;
        if (!leq(spectral[i + 1], spectral[i], opt.cfg)) dec_s = false;
      }
      rec.check(dec_r, "recursive equalizer is decreasing", inst);
      rec.check(dec_s, "spectral equalizer is decreasing", inst);

      const double err_r =
          frobenius(recur.back().matrix() - oracle.matrix());
      const double err_s =
          frobenius(spectral.back().matrix() - oracle.matrix());
      rec.observe(std::max(err_r, err_s));
      rec.check(err_r <= kPropTol, "recursive equalizer reaches the meet",
                inst);
      rec.check(err_s <= kPropTol, "spectral equalizer reaches the meet", inst);

      bool chain_ok = true;
      for (std::size_t n = 0; n < ps.size(); ++n) {
        const double bound =
            1.0 / (static_cast<double>(n + 1) * static_cast<double>(n + 1));
        for (std::size_t m = 0; m <= n; ++m) {
          const double v =
              operator_norm((id - ps[m].matrix()) * spectral[n].matrix());
          rec.observe(v);
          if (v > bound + kPropTol) chain_ok = false;
        }
      }
      rec.check(chain_ok, "spectral equalizer obeys the inverse-square bound",
                inst);

      bool sums_ok = true;
      for (const auto& seq : {recur, spectral}) {
        const TechconReport t = techcon_check(seq, opt.cfg);
        for (std::size_t n = 0; n < t.partial_sums.size(); ++n) {
          if (t.partial_sums[n] > 1.0 / static_cast<double>(n + 1) + kPropTol) {
            sums_ok = false;
          }
        }
      }
      rec.check(sums_ok, "defect sums stay below the harmonic bound", inst);

      const std::vector<Projection> inc = increasing_equalizer(ps, opt.cfg);
      bool inc_ok = inc.size() == ps.size();
      for (std::size_t i = 0; inc_ok && i + 1 < inc.size(); ++i) {
        if (!leq(inc[i], inc[i + 1], opt.cfg)) inc_ok = false;
      }
      rec.check(inc_ok, "dual equalizer is increasing", inst);
      const double err_j =
          frobenius(inc.back().matrix() - span_join(ps, opt.cfg).matrix());
      rec.observe(err_j);
      rec.check(err_j <= kPropTol, "dual equalizer reaches the join", inst);

      const Projection ran = range_product_projection(
          ps, static_cast<int>(ps.size()) - 1, opt.cfg);
      rec.check(leq(oracle, ran, opt.cfg),
                "product range contains the meet", inst);
    } catch (const Error& e) {
      rec.fail(std::string("exception: ") + e.what(), inst);
    }
    rec.done_instance();
  }
  return rec.finish();
}

SuiteResult suite_ee_inequality(const VerifyOptions& opt) {
  Recorder rec("ee_inequality");
  SeededRng rng = suite_rng(opt, 8);
  for (int it = 0; it < opt.count; ++it) {
    json inst;
    try {
      const int d = draw_dim(rng, opt);
      HermitianOperator s = rng.random_hermitian(d, opt.cfg);
      for (int attempt = 0; attempt < 5 && operator_norm(s.matrix()) < 0.5;
           ++attempt) {
        s = rng.random_hermitian(d, opt.cfg);
      }
      const double ns = operator_norm(s.matrix());
      const double cut_s = rng.uniform(0.02, 0.9) * ns;
      const double cut_t = rng.uniform(-0.5 * ns, 0.95 * ns);
      const Projection p =
          rng.random_projection(d, rng.uniform_int(1, d), opt.cfg);
      inst = json{{"s", io::matrix_to_json(s.matrix())},
                  {"p", io::projection_to_json(p)},
                  {"cut_s", cut_s},
                  {"cut_t", cut_t}};

      const EeReport r = ee_inequality_check(s, p, cut_s, cut_t, opt.cfg);
      rec.observe(r.lhs - r.rhs);
      rec.check(r.holds, "two-family overlap bound", inst);
    } catch (const Error& e) {
      rec.fail(std::string("exception: ") + e.what(), inst);
    }
    rec.done_instance();
  }
  return rec.finish();
}

SuiteResult suite_gap(const VerifyOptions& opt) {
  Recorder rec("gap_construction");
  SeededRng rng = suite_rng(opt, 9);
  for (int it = 0; it < opt.count; ++it) {
    json inst;
    try {
      const int d = draw_dim(rng, opt);
      if (it % 4 == 3) {
        // Commuting pair from one shared eigenbasis; the construction must
        // refuse it.
        const Matrix u = rng.random_unitary(d);
        std::vector<int> order(static_cast<std::size_t>(d));
        std::iota(order.begin(), order.end(), 0);
        for (int i = d - 1; i > 0; --i) {
          std::swap(order[static_cast<std::size_t>(i)],
                    order[static_cast<std::size_t>(rng.uniform_int(0, i))]);
        }
        const int ra = rng.uniform_int(1, d - 1);
        const int rb = rng.uniform_int(1, d - 1);
        Matrix cols_a(d, ra);
        Matrix cols_b(d, rb);
        for (int i = 0; i < ra; ++i) cols_a.col(i) = u.col(i);
        for (int i = 0; i < rb; ++i) {
          cols_b.col(i) = u.col(order[static_cast<std::size_t>(i)]);
        }
        const Projection p = Projection::from_basis(cols_a, d, opt.cfg);
        const Projection q = Projection::from_basis(cols_b, d, opt.cfg);
        inst = pair_json(p, q);
        bool refused = false;
        try {
          gap_element(p, q, opt.cfg);
        } catch (const ConstructionError&) {
          refused = true;
        }
        rec.check(refused, "commuting pair refused", inst);
        rec.done_instance();
        continue;
      }

      Projection p = Projection::zero(d);
      Projection q = Projection::zero(d);
      bool found = false;
      for (int attempt = 0; attempt < 20 && !found; ++attempt) {
        p = rng.random_projection(d, rng.uniform_int(1, d - 1), opt.cfg);
        q = rng.random_projection(d, rng.uniform_int(1, d - 1), opt.cfg);
        found = operator_norm(p.matrix() * q.matrix() -
                              q.matrix() * p.matrix()) > 1e-6;
      }
      inst = pair_json(p, q);
      if (!found) {
        rec.fail("generator produced no non-commuting pair", inst);
        rec.done_instance();
        continue;
      }

      const GapCertificate cert = gap_element(p, q, opt.cfg);
      const Matrix& sm = cert.s.matrix();
      const double below_p = min_eigenvalue(p.matrix() - sm);
      const double below_q = min_eigenvalue(q.matrix() - sm);
      rec.observe(-std::min(below_p, below_q));
      rec.check(below_p >= -1e-9, "gap element sits below P", inst);
      rec.check(below_q >= -1e-9, "gap element sits below Q", inst);
      const double pos =
          (cert.witness_pos.adjoint() * sm * cert.witness_pos)(0).real();
      const double neg =
          (cert.witness_neg.adjoint() * sm * cert.witness_neg)(0).real();
      rec.check(pos > 0.0 && neg < 0.0,
                "witnesses show incomparability with zero", inst);
      const Projection meet = meet_nullspace({p, q}, opt.cfg);
      rec.check((meet.matrix() * cert.witness_pos).norm() <= kPropTol,
                "positive witness avoids the meet", inst);
      rec.check(operator_norm(sm) <= 1.0 + 1e-9,
                "gap element stays a contraction", inst);
    } catch (const Error& e) {
      rec.fail(std::string("exception: ") + e.what(), inst);
    }
    rec.done_instance();
  }
  return rec.finish();
}

namespace {

struct MorphismInstance {
  BlockAlgebra source;
  Morphism m;
};

MorphismInstance random_morphism(SeededRng& rng) {
  BlockAlgebra source;
  const int nb = rng.uniform_int(1, 3);
  for (int i = 0; i < nb; ++i) source.block_dims.push_back(rng.uniform_int(1, 5));
  std::vector<int> order(static_cast<std::size_t>(nb));
  std::iota(order.begin(), order.end(), 0);
  for (int i = nb - 1; i > 0; --i) {
    std::swap(order[static_cast<std::size_t>(i)],
              order[static_cast<std::size_t>(rng.uniform_int(0, i))]);
  }
  const int nt = rng.uniform_int(1, nb);
  std::vector<Morphism::BlockAssignment> assignment;
  for (int j = 0; j < nt; ++j) {
    const int src = order[static_cast<std::size_t>(j)];
    assignment.push_back(Morphism::BlockAssignment{
        src, rng.random_unitary(
                 source.block_dims[static_cast<std::size_t>(src)])});
  }
  Morphism m = Morphism::from_assignment(source, std::move(assignment));
  return MorphismInstance{std::move(source), std::move(m)};
}

AlgebraElement random_projection_element(SeededRng& rng,
                                         const BlockAlgebra& algebra,
                                         const ToleranceConfig& cfg) {
  std::vector<Matrix> blocks;
  for (int d : algebra.block_dims) {
    blocks.push_back(
        rng.random_projection(d, rng.uniform_int(0, d), cfg).matrix());
  }
  return AlgebraElement(algebra, std::move(blocks));
}

AlgebraElement random_subprojection_element(SeededRng& rng,
                                            const AlgebraElement& p,
                                            const ToleranceConfig& cfg) {
  std::vector<Matrix> blocks;
  for (int i = 0; i < p.block_count(); ++i) {
    const Projection b = Projection::from_matrix(p.block(i), cfg);
    blocks.push_back(
        rng.random_subprojection(b, rng.uniform_int(0, b.rank()), cfg)
            .matrix());
  }
  return AlgebraElement(p.algebra(), std::move(blocks));
}

int element_rank(const AlgebraElement& p) {
  int rank = 0;
  for (int i = 0; i < p.block_count(); ++i) {
    rank += static_cast<int>(std::llround(p.block(i).trace().real()));
  }
  return rank;
}

json morphism_instance_json(const MorphismInstance& mi) {
  json dims = json::array();
  for (int d : mi.source.block_dims) dims.push_back(d);
  return json{{"source_block_dims", std::move(dims)},
              {"morphism", io::morphism_to_json(mi.m)}};
}

}  // namespace

SuiteResult suite_pullback(const VerifyOptions& opt) {
  Recorder rec("pullback");
  SeededRng rng = suite_rng(opt, 10);
  for (int it = 0; it < opt.count; ++it) {
    json inst;
    try {
      const MorphismInstance mi = random_morphism(rng);
      const AlgebraElement p = random_projection_element(rng, mi.source, opt.cfg);
      const AlgebraElement q =
          random_subprojection_element(rng, mi.m.apply(p), opt.cfg);
      inst = morphism_instance_json(mi);
      inst["p"] = io::element_to_json(p);
      inst["q"] = io::element_to_json(q);

      const AlgebraElement pulled = pullback_projection(mi.m, q, p, opt.cfg);
      rec.check(pulled.is_projection(1e-8), "pullback is a projection", inst);
      const AlgebraElement image = mi.m.apply(pulled);
      double image_err = 0.0;
      for (int j = 0; j < q.block_count(); ++j) {
        image_err = std::max(image_err,
                             (image.block(j) - q.block(j)).norm());
      }
      rec.observe(image_err);
      rec.check(image_err <= kPropTol, "pullback image reproduces the target",
                inst);
      rec.check(element_leq(pulled, p, opt.cfg),
                "pullback stays below the upper bound", inst);
      const Matrix dense_p = p.assemble();
      const Matrix dense_q = pulled.assemble();
      rec.check(operator_norm(dense_q - dense_p * dense_q) <= kPropTol,
                "dense order oracle agrees", inst);

      const AlgebraElement q_small =
          random_subprojection_element(rng, q, opt.cfg);
      const AlgebraElement r = pullback_projection(mi.m, q_small, pulled, opt.cfg);
      const AlgebraElement sandwiched =
          sandwich_pullback(mi.m, q, r, p, opt.cfg);
      rec.check(element_leq(r, sandwiched, opt.cfg) &&
                    element_leq(sandwiched, p, opt.cfg),
                "sandwich stays inside its interval", inst);
      const AlgebraElement s_image = mi.m.apply(sandwiched);
      double s_err = 0.0;
      for (int j = 0; j < q.block_count(); ++j) {
        s_err = std::max(s_err, (s_image.block(j) - q.block(j)).norm());
      }
      rec.observe(s_err);
      rec.check(s_err <= kPropTol, "sandwich image reproduces the target",
                inst);

      // Interpolation inside a strict pregap in the target.
      AlgebraElement upper_chain_end =
          random_projection_element(rng, mi.m.target(), opt.cfg);
      AlgebraElement lower_chain_end =
          random_subprojection_element(rng, upper_chain_end, opt.cfg);
      int gap = element_rank(upper_chain_end) - element_rank(lower_chain_end);
      for (int attempt = 0; attempt < 10 && gap < 2; ++attempt) {
        upper_chain_end = random_projection_element(rng, mi.m.target(), opt.cfg);
        lower_chain_end =
            random_subprojection_element(rng, upper_chain_end, opt.cfg);
        gap = element_rank(upper_chain_end) - element_rank(lower_chain_end);
      }
      if (gap >= 2) {
        inst["pregap_lower"] = io::element_to_json(lower_chain_end);
        inst["pregap_upper"] = io::element_to_json(upper_chain_end);
        const AlgebraElement mid = interpolate_pregap(
            mi.m, {lower_chain_end}, {upper_chain_end}, opt.cfg);
        rec.check(mid.is_projection(1e-8), "interpolant is a projection", inst);
        const AlgebraElement mid_image = mi.m.apply(mid);
        rec.check(element_leq(lower_chain_end, mid_image, opt.cfg) &&
                      !element_leq(mid_image, lower_chain_end, opt.cfg),
                  "interpolant sits strictly above the lower chain", inst);
        rec.check(element_leq(mid_image, upper_chain_end, opt.cfg) &&
                      !element_leq(upper_chain_end, mid_image, opt.cfg),
                  "interpolant sits strictly below the upper chain", inst);
      }
      if (it % 4 == 0 && element_rank(upper_chain_end) >= 1) {
        // Rank-one gap: no strict interpolant exists, the lower endpoint's
        // pullback comes back instead.
        std::vector<Matrix> blocks;
        bool dropped = false;
        for (int i = 0; i < upper_chain_end.block_count(); ++i) {
          const Projection b =
              Projection::from_matrix(upper_chain_end.block(i), opt.cfg);
          if (!dropped && b.rank() > 0) {
            blocks.push_back(b.rank() > 1
                                 ? Projection::from_basis(
                                       b.range_basis().leftCols(b.rank() - 1),
                                       b.dim(), opt.cfg)
                                       .matrix()
                                 : Projection::zero(b.dim()).matrix());
            dropped = true;
          } else {
            blocks.push_back(b.matrix());
          }
        }
        const AlgebraElement tight(mi.m.target(), std::move(blocks));
        const AlgebraElement res = interpolate_pregap(
            mi.m, {tight}, {upper_chain_end}, opt.cfg);
        const AlgebraElement res_image = mi.m.apply(res);
        double endpoint_err = 0.0;
        for (int j = 0; j < tight.block_count(); ++j) {
          endpoint_err = std::max(
              endpoint_err, (res_image.block(j) - tight.block(j)).norm());
        }
        rec.observe(endpoint_err);
        rec.check(endpoint_err <= kPropTol,
                  "rank-one gap falls back to the lower endpoint", inst);
      }
      if (it % 5 == 0 && mi.source.block_dims.size() >= 2) {
        std::vector<Morphism::BlockAssignment> doubled;
        const int d0 = mi.source.block_dims[0];
        doubled.push_back(
            Morphism::BlockAssignment{0, Matrix::Identity(d0, d0)});
        doubled.push_back(
            Morphism::BlockAssignment{0, Matrix::Identity(d0, d0)});
        const Morphism folded =
            Morphism::from_assignment(mi.source, std::move(doubled));
        bool refused = false;
        try {
          pullback_projection(folded, folded.apply(p), p, opt.cfg);
        } catch (const ArgumentError&) {
          refused = true;
        }
        rec.check(refused, "non-surjective morphism refused", inst);
      }
    } catch (const Error& e) {
      rec.fail(std::string("exception: ") + e.what(), inst);
    }
    rec.done_instance();
  }
  return rec.finish();
}

SuiteResult suite_pushforward(const VerifyOptions& opt) {
  Recorder rec("pushforward");
  SeededRng rng = suite_rng(opt, 11);
  for (int it = 0; it < opt.count; ++it) {
    json inst;
    try {
      const MorphismInstance mi = random_morphism(rng);
      std::vector<Matrix> blocks;
      for (int d : mi.source.block_dims) {
        blocks.push_back(rng.random_hermitian(d, opt.cfg).matrix());
      }
      const AlgebraElement s(mi.source, std::move(blocks));

      std::vector<double> values;
      for (int i = 0; i < s.block_count(); ++i) {
        for (double v :
             spectrum(HermitianOperator(s.block(i), opt.cfg), opt.cfg)) {
          values.push_back(v);
        }
      }
      std::sort(values.begin(), values.end());
      double t = 0.0;
      bool clear = false;
      for (int attempt = 0; attempt < 30 && !clear; ++attempt) {
        t = rng.uniform(values.front() - 0.5, values.back() + 0.5);
        clear = true;
        for (double v : values) {
          if (std::abs(v - t) < 1e-4) clear = false;
        }
      }
      inst = morphism_instance_json(mi);
      inst["s"] = io::element_to_json(s);
      inst["t"] = t;
      if (!clear) {
        rec.fail("no cutoff clear of the spectrum", inst);
        rec.done_instance();
        continue;
      }

      AlgebraElement p = AlgebraElement::zero(mi.source);
      if (it % 2 == 0) {
        p = random_subprojection_element(
            rng, element_spectral_family(s, t, FamilySide::closed, opt.cfg),
            opt.cfg);
      } else {
        const AlgebraElement lower =
            element_spectral_family(s, t, FamilySide::open_below, opt.cfg);
        std::vector<Matrix> up;
        for (int i = 0; i < lower.block_count(); ++i) {
          const Projection b = Projection::from_matrix(lower.block(i), opt.cfg);
          const int extra = rng.uniform_int(0, b.dim() - b.rank());
          if (extra == 0) {
            up.push_back(b.matrix());
            continue;
          }
          Matrix cols(b.dim(), b.rank() + extra);
          if (b.rank() > 0) cols.leftCols(b.rank()) = b.range_basis();
          cols.rightCols(extra) = rng.gaussian_matrix(b.dim(), extra);
          up.push_back(
              Projection::from_basis(cols, b.dim(), opt.cfg).matrix());
        }
        p = AlgebraElement(mi.source, std::move(up));
      }
      inst["p"] = io::element_to_json(p);

      rec.check(pushforward_spectral_bound_check(mi.m, p, s, t, opt.cfg),
                "spectral bounds survive the quotient map", inst);
    } catch (const Error& e) {
      rec.fail(std::string("exception: ") + e.what(), inst);
    }
    rec.done_instance();
  }
  return rec.finish();
}

SuiteResult suite_calkin(const VerifyOptions& opt) {
  Recorder rec("calkin_model");
  const json inst = json{{"family", "badpq/pomega"}, {"N", 200}};
  try {
    const std::size_t n_trunc = 200;
    const auto [p, q] = badpq_family(n_trunc);

    const BlockSequenceOperator diff = BlockSequenceOperator::map2(
        p, q, [](Matrix a, Matrix b) -> Matrix { return a - b; });
    const EssentialReport ess = essential_norm_estimate(diff);
    rec.observe(ess.estimate);
    rec.check(ess.estimate <= 2.0 / static_cast<double>(n_trunc),
              "essential distance shrinks like 2/N", inst);
    rec.done_instance();

    double overlap_err = 0.0;
    for (std::size_t n : {std::size_t{0}, std::size_t{1}, std::size_t{2},
                          std::size_t{3}, std::size_t{9}, std::size_t{99},
                          std::size_t{199}}) {
      const double got = operator_norm(p.block(n) * q.block(n));
      const double k = static_cast<double>(n + 1);
      const double expected = k * k / (k * k + 1.0);
      overlap_err = std::max(overlap_err, std::abs(got * got - expected));
    }
    rec.observe(overlap_err);
    rec.check(overlap_err <= 1e-12, "block overlaps match the closed form",
              inst);
    rec.done_instance();

    const double window_scale = 2.0 / static_cast<double>(n_trunc);
    rec.check(essential_leq(p, q, window_scale) &&
                  essential_leq(q, p, window_scale),
              "the pair is essentially equal at the window scale", inst);
    rec.done_instance();

    const BlockSequenceOperator e00(
        [](std::size_t) { return Matrix{{Complex(1, 0), Complex(0, 0)},
                                        {Complex(0, 0), Complex(0, 0)}}; },
        n_trunc);
    const BlockSequenceOperator e11(
        [](std::size_t) { return Matrix{{Complex(0, 0), Complex(0, 0)},
                                        {Complex(0, 0), Complex(1, 0)}}; },
        n_trunc);
    rec.check(!essential_leq(e00, e11) && !essential_leq(e11, e00),
              "orthogonal constants are essentially incomparable", inst);
    rec.done_instance();

    bool meets_vanish = true;
    for (std::size_t cut : {std::size_t{8}, std::size_t{32}, std::size_t{64}}) {
      const Projection pd =
          Projection::from_matrix(p.assemble(cut), opt.cfg);
      const Projection qd =
          Projection::from_matrix(q.assemble(cut), opt.cfg);
      if (meet_nullspace({pd, qd}, opt.cfg).rank() != 0) meets_vanish = false;
    }
    rec.check(meets_vanish, "every truncated meet vanishes", inst);
    rec.done_instance();

    const auto [pw, qw] = pomega_family(n_trunc);
    const BlockSequenceOperator sandwich = BlockSequenceOperator::map2(
        pw, qw, [](Matrix a, Matrix b) -> Matrix { return a * b * a; });
    const std::vector<double> persistent =
        essential_spectrum_estimate(sandwich, opt.cfg);
    bool has_all = true;
    double spec_err = 0.0;
    for (double target : {0.5, 0.8, 0.9}) {
      double best = 1.0;
      for (double v : persistent) best = std::min(best, std::abs(v - target));
      spec_err = std::max(spec_err, best);
      if (best > 1e-9) has_all = false;
    }
    rec.observe(spec_err);
    rec.check(has_all, "persistent spectrum contains the displayed overlaps",
              inst);
    rec.done_instance();

    double prev_sup = 0.0;
    bool climbing = true;
    for (std::size_t cut : {std::size_t{64}, std::size_t{128}, std::size_t{200}}) {
      const auto [pc, qc] = badpq_family(cut);
      const BlockSequenceOperator prod = BlockSequenceOperator::map2(
          pc, qc, [](Matrix a, Matrix b) -> Matrix { return a * b; });
      const double sup = essential_norm_estimate(prod).estimate;
      if (!(sup > prev_sup) || !(sup < 1.0)) climbing = false;
      prev_sup = sup;
    }
    rec.check(climbing, "tail overlap suprema climb toward one", inst);
    rec.done_instance();

    const BlockSequenceOperator ident = BlockSequenceOperator::map2(
        e00, e11, [](Matrix a, Matrix b) -> Matrix { return a + b; });
    const ClosedSumReport orth =
        closed_sum_diagnostic({e00, e11}, ident, opt.cfg);
    rec.check(orth.consistent_with_closed && orth.heuristic,
              "orthogonal decomposition reads as closed", inst);
    rec.done_instance();

    const ClosedSumReport dense =
        closed_sum_diagnostic({p, q}, ident, opt.cfg);
    rec.check(!dense.consistent_with_closed,
              "essentially equal pair reads as non-closed", inst);
    rec.done_instance();

    const ClosedSumReport single = closed_sum_diagnostic({p}, p, opt.cfg);
    rec.check(single.consistent_with_closed,
              "singleton family reads as closed", inst);
    rec.done_instance();
  } catch (const Error& e) {
    rec.fail(std::string("exception: ") + e.what(), inst);
    rec.done_instance();
  }
  return rec.finish();
}

std::vector<SuiteResult> run_all(const VerifyOptions& opt) {
  opt.cfg.validate();
  if (opt.count <= 0) throw ConfigError("instance count must be positive");
  if (opt.max_dim < 2 || opt.max_dim > 64) {
    throw ConfigError("max dimension must lie in [2, 64]");
  }
  std::vector<SuiteResult> out;
  out.push_back(suite_spectral_families(opt));
  out.push_back(suite_meet_oracle(opt));
  out.push_back(suite_lattice_laws(opt));
  out.push_back(suite_spectrum_identities(opt));
  out.push_back(suite_glb_norm(opt));
  out.push_back(suite_separativity(opt));
  out.push_back(suite_equalizers(opt));
  out.push_back(suite_ee_inequality(opt));
  out.push_back(suite_gap(opt));
  out.push_back(suite_pullback(opt));
  out.push_back(suite_pushforward(opt));
  out.push_back(suite_calkin(opt));
  return out;
}

}  // namespace projlat::verify
