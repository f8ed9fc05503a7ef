#include "projlat/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "projlat/algebra.hpp"
#include "projlat/calkin.hpp"
#include "projlat/io.hpp"
#include "projlat/projection.hpp"
#include "projlat/projorder.hpp"
#include "projlat/sequences.hpp"
#include "projlat/spectra.hpp"
#include "projlat/types.hpp"
#include "projlat/verify.hpp"

namespace projlat::cli {
namespace {

using nlohmann::json;

constexpr int kHardDimCap = 64;

struct CommonOpts {
  std::string in_path;
  std::string out_path;
  std::string format = "json";
  double tol_eig = ToleranceConfig{}.eig_cluster;
  double tol_order = ToleranceConfig{}.order_tol;
  int max_dim = kHardDimCap;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_input,
                bool with_max_dim = true) {
  auto* in = cmd->add_option("--in", o.in_path, "input JSON file");
  if (needs_input) in->required();
  cmd->add_option("--out", o.out_path, "write the report here instead of stdout");
  cmd->add_option("--tol-eig", o.tol_eig, "eigenvalue clustering radius");
  cmd->add_option("--tol-order", o.tol_order, "order comparison threshold");
  if (with_max_dim) {
    cmd->add_option("--max-dim", o.max_dim, "input dimension cap")
        ->check(CLI::Range(1, kHardDimCap));
  }
  cmd->add_option("--format", o.format, "report format")
      ->check(CLI::IsMember({"json", "text"}));
}

ToleranceConfig config_of(const CommonOpts& o) {
  ToleranceConfig cfg;
  cfg.eig_cluster = o.tol_eig;
  cfg.order_tol = o.tol_order;
  cfg.validate();
  return cfg;
}

json load_json(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open input file: " + path);
  return json::parse(f);  // parse_error carries the byte position
}

void render_text(const json& report, std::ostream& os) {
  for (const auto& [key, value] : report.items()) {
    if (value.is_string()) {
      os << key << ": " << value.get<std::string>() << "\n";
    } else {
      os << key << ": " << value.dump() << "\n";
    }
  }
}

int emit(json report, int code, const CommonOpts& o, std::ostream& out,
         std::ostream& err) {
  std::string body;
  if (o.format == "text") {
    std::ostringstream ss;
    render_text(report, ss);
    body = ss.str();
  } else {
    body = report.dump(2) + "\n";
  }
  if (!o.out_path.empty()) {
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f) {
      err << "error: cannot open output file: " << o.out_path << "\n";
      return 2;
    }
    f << body;
  } else {
    out << body;
  }
  return code;
}

// Marks the report as a violation of `invariant` with the offending input
// echoed, so the instance can be re-run standalone.
void mark_violation(json& report, const std::string& invariant,
                    const json& instance) {
  report["violated"] = invariant;
  report["instance"] = instance;
}

std::vector<Projection> read_family(const json& in, const ToleranceConfig& cfg,
                                    int max_dim) {
  if (!in.contains("ps") || !in["ps"].is_array() || in["ps"].empty()) {
    throw ArgumentError("input needs a nonempty \"ps\" array of projections");
  }
  std::vector<Projection> ps;
  for (const auto& jp : in["ps"]) {
    ps.push_back(io::projection_from_json(jp, cfg, max_dim));
  }
  for (const auto& p : ps) {
    if (p.dim() != ps.front().dim()) {
      throw ArgumentError("projections must share one dimension");
    }
  }
  return ps;
}

Projection read_one(const json& in, const char* key, const ToleranceConfig& cfg,
                    int max_dim) {
  if (!in.contains(key)) {
    throw ArgumentError(std::string("input needs \"") + key + "\"");
  }
  return io::projection_from_json(in[key], cfg, max_dim);
}

// Independent route for the lattice operations: spans and stacked-complement
// null spaces, no shared code with the spectral route.
Projection span_oracle(const std::vector<Projection>& ps,
                       const ToleranceConfig& cfg) {
  const int d = ps.front().dim();
  int cols = 0;
  for (const auto& p : ps) cols += p.rank();
  Matrix stacked(d, std::max(cols, 1));
  stacked.setZero();
  int at = 0;
  for (const auto& p : ps) {
    stacked.block(0, at, d, p.rank()) = p.range_basis();
    at += p.rank();
  }
  return Projection::from_basis(stacked, d, cfg);
}

int cmd_meet(const json& in, const CommonOpts& o, std::ostream& out,
             std::ostream& err, bool is_join) {
  const ToleranceConfig cfg = config_of(o);
  const auto ps = read_family(in, cfg, o.max_dim);
  Projection result = Projection::zero(1);
  Projection oracle = Projection::zero(1);
  if (is_join) {
    result = join(ps, cfg);
    oracle = span_oracle(ps, cfg);
  } else {
    result = meet_spectral(ps, cfg);
    oracle = meet_nullspace(ps, cfg);
  }
  const double gap = frobenius(result.matrix() - oracle.matrix());
  json report{{"result", io::projection_to_json(result)},
              {"rank", result.rank()},
              {"route_gap", gap}};
  if (gap > cfg.order_tol) {
    mark_violation(report, is_join ? "join route agreement" : "meet route agreement",
                   in);
    return emit(report, 1, o, out, err);
  }
  return emit(report, 0, o, out, err);
}

int cmd_glb_check(const json& in, const CommonOpts& o, std::ostream& out,
                  std::ostream& err) {
  const ToleranceConfig cfg = config_of(o);
  const auto ps = read_family(in, cfg, o.max_dim);
  const GlbReport r = glb_criterion(ps, cfg);
  json report = io::glb_report_to_json(r);
  if (!r.criterion_holds) {
    mark_violation(report, "greatest lower bound criterion", in);
    return emit(report, 1, o, out, err);
  }
  return emit(report, 0, o, out, err);
}

int cmd_norm_check(const json& in, const CommonOpts& o, std::ostream& out,
                   std::ostream& err) {
  const ToleranceConfig cfg = config_of(o);
  const auto ps = read_family(in, cfg, o.max_dim);
  const Projection r = read_one(in, "r", cfg, o.max_dim);
  const GlbNormReport nr = glb_norm_check(ps, r, cfg);
  json report = io::glb_norm_report_to_json(nr);
  if (!nr.is_glb) {
    mark_violation(report, "greatest lower bound norm test", in);
    return emit(report, 1, o, out, err);
  }
  return emit(report, 0, o, out, err);
}

int cmd_sep_witness(const json& in, const CommonOpts& o, std::ostream& out,
                    std::ostream& err) {
  const ToleranceConfig cfg = config_of(o);
  const Projection p = read_one(in, "p", cfg, o.max_dim);
  const Projection q = read_one(in, "q", cfg, o.max_dim);
  const Projection w = separativity_witness(p, q, cfg);
  const double s =
      std::pow(operator_norm(complement(q, cfg).matrix() * p.matrix()), 2) / 2.0;
  const double qr = operator_norm(q.matrix() * w.matrix());
  json report{{"witness", io::projection_to_json(w)},
              {"witness_rank", w.rank()},
              {"cut", s},
              {"qr_norm", qr},
              {"qr_bound", std::sqrt(1.0 - s)}};
  return emit(report, 0, o, out, err);
}

int cmd_gap(const json& in, const CommonOpts& o, std::ostream& out,
            std::ostream& err) {
  const ToleranceConfig cfg = config_of(o);
  const Projection p = read_one(in, "p", cfg, o.max_dim);
  const Projection q = read_one(in, "q", cfg, o.max_dim);
  const GapCertificate cert = gap_element(p, q, cfg);
  return emit(io::gap_certificate_to_json(cert), 0, o, out, err);
}

int cmd_decreasing(const json& in, const CommonOpts& o, std::ostream& out,
                   std::ostream& err) {
  const ToleranceConfig cfg = config_of(o);
  const auto ps = read_family(in, cfg, o.max_dim);
  const auto sched = ScheduleConfig::make();
  const auto recursive = decreasing_equalizer_recursive(ps, cfg);
  const auto spectral = decreasing_equalizer_spectral(ps, sched, cfg);
  const Projection oracle = meet_nullspace(ps, cfg);

  auto monotone_down = [&](const std::vector<Projection>& qs) {
    for (std::size_t i = 0; i + 1 < qs.size(); ++i) {
      if (!leq(qs[i + 1], qs[i], cfg)) return false;
    }
    return true;
  };
  auto to_json_seq = [](const std::vector<Projection>& qs) {
    json arr = json::array();
    for (const auto& q : qs) arr.push_back(io::projection_to_json(q));
    return arr;
  };

  const bool rec_mono = monotone_down(recursive);
  const bool spec_mono = monotone_down(spectral);
  const double rec_gap =
      frobenius(recursive.back().matrix() - oracle.matrix());
  const double spec_gap =
      frobenius(spectral.back().matrix() - oracle.matrix());
  json report{{"recursive", to_json_seq(recursive)},
              {"spectral", to_json_seq(spectral)},
              {"recursive_monotone", rec_mono},
              {"spectral_monotone", spec_mono},
              {"recursive_meet_gap", rec_gap},
              {"spectral_meet_gap", spec_gap}};
  if (!rec_mono || !spec_mono || rec_gap > cfg.order_tol ||
      spec_gap > cfg.order_tol) {
    mark_violation(report, "decreasing approximation of the meet", in);
    return emit(report, 1, o, out, err);
  }
  return emit(report, 0, o, out, err);
}

int cmd_increasing(const json& in, const CommonOpts& o, std::ostream& out,
                   std::ostream& err) {
  const ToleranceConfig cfg = config_of(o);
  const auto ps = read_family(in, cfg, o.max_dim);
  const auto seq = increasing_equalizer(ps, cfg);
  const Projection oracle = span_oracle(ps, cfg);

  bool mono = true;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    if (!leq(seq[i], seq[i + 1], cfg)) mono = false;
  }
  const double gap = frobenius(seq.back().matrix() - oracle.matrix());
  json arr = json::array();
  for (const auto& q : seq) arr.push_back(io::projection_to_json(q));
  json report{{"sequence", arr},
              {"monotone", mono},
              {"join_gap", gap}};
  if (!mono || gap > cfg.order_tol) {
    mark_violation(report, "increasing approximation of the join", in);
    return emit(report, 1, o, out, err);
  }
  return emit(report, 0, o, out, err);
}

int cmd_ee_check(const json& in, const CommonOpts& o, std::ostream& out,
                 std::ostream& err) {
  const ToleranceConfig cfg = config_of(o);
  if (!in.contains("s") || !in.contains("p") || !in.contains("cut_s") ||
      !in.contains("cut_t")) {
    throw ArgumentError("input needs \"s\", \"p\", \"cut_s\", \"cut_t\"");
  }
  const HermitianOperator s(io::matrix_from_json(in["s"], o.max_dim), cfg);
  const Projection p = io::projection_from_json(in["p"], cfg, o.max_dim);
  const double cut_s = in["cut_s"].get<double>();
  const double cut_t = in["cut_t"].get<double>();
  const EeReport r = ee_inequality_check(s, p, cut_s, cut_t, cfg);
  json report = io::ee_report_to_json(r);
  if (!r.holds) {
    mark_violation(report, "spectral family compression bound", in);
    return emit(report, 1, o, out, err);
  }
  return emit(report, 0, o, out, err);
}

BlockAlgebra read_source_algebra(const json& in) {
  if (!in.contains("source_block_dims")) {
    throw ArgumentError("input needs \"source_block_dims\"");
  }
  BlockAlgebra a{in["source_block_dims"].get<std::vector<int>>()};
  a.validate();
  if (a.total_dim() > kHardDimCap) {
    throw ConfigError("source algebra exceeds the dimension cap");
  }
  return a;
}

AlgebraElement read_element(const json& in, const char* key,
                            const BlockAlgebra& expected,
                            const ToleranceConfig& cfg, int max_dim,
                            const char* what) {
  if (!in.contains(key)) {
    throw ArgumentError(std::string("input needs \"") + key + "\"");
  }
  AlgebraElement x = io::element_from_json(in[key], cfg, max_dim);
  if (!(x.algebra() == expected)) {
    throw ArgumentError(std::string(what) + " lives in the wrong algebra");
  }
  return x;
}

double element_gap(const AlgebraElement& a, const AlgebraElement& b) {
  double g = 0.0;
  for (int i = 0; i < a.block_count(); ++i) {
    g = std::max(g, (a.block(i) - b.block(i)).norm());
  }
  return g;
}

int cmd_pullback(const json& in, const CommonOpts& o, std::ostream& out,
                 std::ostream& err) {
  const ToleranceConfig cfg = config_of(o);
  const BlockAlgebra source = read_source_algebra(in);
  if (!in.contains("morphism")) throw ArgumentError("input needs \"morphism\"");
  const Morphism m = io::morphism_from_json(in["morphism"], source, o.max_dim);
  const AlgebraElement p =
      read_element(in, "p", source, cfg, o.max_dim, "\"p\"");
  const AlgebraElement q =
      read_element(in, "q", m.target(), cfg, o.max_dim, "\"q\"");

  AlgebraElement result = AlgebraElement::zero(source);
  json report;
  if (in.contains("r")) {
    const AlgebraElement r =
        read_element(in, "r", source, cfg, o.max_dim, "\"r\"");
    result = sandwich_pullback(m, q, r, p, cfg);
    report["above_r"] = element_leq(r, result, cfg);
  } else {
    result = pullback_projection(m, q, p, cfg);
  }
  const AlgebraElement image = apply(m, result);
  report["result"] = io::element_to_json(result);
  report["image"] = io::element_to_json(image);
  report["image_gap"] = element_gap(image, q);
  report["below_p"] = element_leq(result, p, cfg);
  return emit(report, 0, o, out, err);
}

int cmd_interpolate(const json& in, const CommonOpts& o, std::ostream& out,
                    std::ostream& err) {
  const ToleranceConfig cfg = config_of(o);
  const BlockAlgebra source = read_source_algebra(in);
  if (!in.contains("morphism")) throw ArgumentError("input needs \"morphism\"");
  const Morphism m = io::morphism_from_json(in["morphism"], source, o.max_dim);

  auto read_chain = [&](const char* key) {
    std::vector<AlgebraElement> chain;
    if (!in.contains(key)) return chain;
    for (const auto& jx : in[key]) {
      AlgebraElement x = io::element_from_json(jx, cfg, o.max_dim);
      if (!(x.algebra() == m.target())) {
        throw ArgumentError(std::string("\"") + key +
                            "\" chain lives in the wrong algebra");
      }
      chain.push_back(std::move(x));
    }
    return chain;
  };
  const auto lower = read_chain("lower");
  const auto upper = read_chain("upper");

  const AlgebraElement result = interpolate_pregap(m, lower, upper, cfg);
  const AlgebraElement image = apply(m, result);
  const AlgebraElement top =
      lower.empty() ? AlgebraElement::zero(m.target()) : lower.back();
  const AlgebraElement bottom =
      upper.empty() ? AlgebraElement::identity(m.target()) : upper.back();
  int gap_rank = 0;
  const AlgebraElement gap = bottom - top;
  for (int i = 0; i < gap.block_count(); ++i) {
    gap_rank += static_cast<int>(std::llround(gap.block(i).trace().real()));
  }
  const bool degenerate = gap_rank < 2;
  const bool strict_above =
      element_leq(top, image, cfg) && !element_leq(image, top, cfg);
  const bool strict_below =
      element_leq(image, bottom, cfg) && !element_leq(bottom, image, cfg);
  json report{{"result", io::element_to_json(result)},
              {"image", io::element_to_json(image)},
              {"degenerate", degenerate},
              {"strictly_above_lower", strict_above},
              {"strictly_below_upper", strict_below}};
  if (!degenerate && (!strict_above || !strict_below)) {
    mark_violation(report, "strict pregap interpolation", in);
    return emit(report, 1, o, out, err);
  }
  return emit(report, 0, o, out, err);
}

struct CalkinOpts {
  std::string family = "badpq";
  std::uint64_t truncation = 200;
};

BlockSequenceOperator custom_family(const std::string& path,
                                    std::size_t truncation) {
  const json spec = load_json(path);
  if (!spec.contains("blocks") || !spec["blocks"].is_array() ||
      spec["blocks"].empty()) {
    throw ArgumentError("custom family file needs a nonempty \"blocks\" array");
  }
  std::vector<Matrix> blocks;
  for (const auto& jb : spec["blocks"]) {
    blocks.push_back(io::matrix_from_json(jb, kHardDimCap));
  }
  return BlockSequenceOperator(
      [blocks](std::size_t i) { return blocks[i % blocks.size()]; }, truncation);
}

json spectrum_json(const std::vector<double>& values) {
  json arr = json::array();
  for (double v : values) arr.push_back(v);
  return arr;
}

int cmd_calkin_demo(const CalkinOpts& co, const CommonOpts& o, std::ostream& out,
                    std::ostream& err) {
  const ToleranceConfig cfg = config_of(o);
  std::string family = co.family;
  std::size_t n = co.truncation;
  std::string custom_path;
  if (!o.in_path.empty()) {
    const json spec = load_json(o.in_path);
    if (spec.contains("family")) family = spec["family"].get<std::string>();
    if (spec.contains("N")) n = spec["N"].get<std::uint64_t>();
    if (spec.contains("custom_blocks_path")) {
      custom_path = spec["custom_blocks_path"].get<std::string>();
    }
  }
  if (n < 8 || n > (std::size_t{1} << 24)) {
    throw ConfigError("truncation must lie in [8, 2^24]");
  }

  if (family == "custom") {
    if (custom_path.empty()) {
      throw ArgumentError(
          "custom family needs custom_blocks_path in the family file");
    }
    const BlockSequenceOperator op = custom_family(custom_path, n);
    const EssentialReport r = essential_norm_estimate(op);
    json report{{"family", "custom"},
                {"N", n},
                {"essential_norm", io::essential_report_to_json(r)},
                {"persistent_spectrum",
                 spectrum_json(essential_spectrum_estimate(op, cfg))}};
    return emit(report, 0, o, out, err);
  }

  if (family == "badpq") {
    const auto [p, q] = badpq_family(n);
    const auto diff =
        BlockSequenceOperator::map2(p, q, [](Matrix a, Matrix b) -> Matrix { return a - b; });
    const EssentialReport norm_pq = essential_norm_estimate(diff);
    const auto prod =
        BlockSequenceOperator::map2(p, q, [](Matrix a, Matrix b) -> Matrix { return a * b; });
    json overlaps = json::array();
    for (std::size_t i = 0; i < std::min<std::size_t>(n, 6); ++i) {
      overlaps.push_back(std::pow(operator_norm(prod.block(i)), 2));
    }
    json meet_ranks = json::array();
    for (std::size_t cut : {std::size_t{8}, std::size_t{32}, std::size_t{64}}) {
      const std::size_t c = std::min(cut, n);
      const Projection tp = Projection::from_matrix(p.assemble(c), cfg);
      const Projection tq = Projection::from_matrix(q.assemble(c), cfg);
      meet_ranks.push_back(meet_nullspace({tp, tq}, cfg).rank());
    }
    // Essential comparisons of the pair resolve only at the tail window scale.
    const double window_scale = 2.0 / static_cast<double>(n);
    const bool ess_pq = essential_leq(p, q, window_scale);
    const bool ess_qp = essential_leq(q, p, window_scale);
    json report{{"family", "badpq"},
                {"N", n},
                {"essential_norm_p_minus_q", io::essential_report_to_json(norm_pq)},
                {"essential_leq_pq", ess_pq},
                {"essential_leq_qp", ess_qp},
                {"block_overlap_sq", overlaps},
                {"truncated_meet_ranks", meet_ranks}};
    if (!ess_pq || !ess_qp) {
      mark_violation(report, "essential equality of the pair",
                     json{{"family", "badpq"}, {"N", n}});
      return emit(report, 1, o, out, err);
    }
    return emit(report, 0, o, out, err);
  }

  if (family == "pomega") {
    const auto [p, q] = pomega_family(n);
    const auto sandwich = BlockSequenceOperator::map2(
        p, q, [](Matrix a, Matrix b) -> Matrix { return a * b * a; });
    const std::vector<double> persistent =
        essential_spectrum_estimate(sandwich, cfg);
    auto contains = [&](double v) {
      return std::any_of(persistent.begin(), persistent.end(),
                         [&](double x) { return std::abs(x - v) <= 1e-9; });
    };
    const bool displayed =
        contains(0.5) && contains(0.8) && contains(0.9);
    json report{{"family", "pomega"},
                {"N", n},
                {"persistent_spectrum", spectrum_json(persistent)},
                {"contains_displayed_values", displayed}};
    if (!displayed) {
      mark_violation(report, "persistent overlap spectrum",
                     json{{"family", "pomega"}, {"N", n}});
      return emit(report, 1, o, out, err);
    }
    return emit(report, 0, o, out, err);
  }

  throw ConfigError("unknown family: " + family);
}

struct VerifyCliOpts {
  std::uint64_t seed = 0;
  int count = 100;
  int max_dim = 12;
};

int cmd_verify(const VerifyCliOpts& vo, const CommonOpts& o, std::ostream& out,
               std::ostream& err) {
  verify::VerifyOptions opt;
  opt.seed = vo.seed;
  opt.count = vo.count;
  opt.max_dim = vo.max_dim;
  opt.cfg = config_of(o);
  const std::vector<verify::SuiteResult> results = verify::run_all(opt);

  bool all_passed = true;
  json suites = json::array();
  json first_failure;
  std::string first_name;
  for (const auto& r : results) {
    json row{{"name", r.name},
             {"instances", r.instances},
             {"failures", r.failures},
             {"passed", r.passed},
             {"max_discrepancy", r.max_discrepancy}};
    if (!r.detail.empty()) row["detail"] = r.detail;
    if (!r.counterexample.empty()) {
      row["counterexample"] = json::parse(r.counterexample);
    }
    if (!r.passed && all_passed) {
      first_name = r.name;
      if (!r.counterexample.empty()) {
        first_failure = json::parse(r.counterexample);
      }
    }
    all_passed = all_passed && r.passed;
    suites.push_back(std::move(row));
  }
  json report{{"seed", vo.seed},
              {"count", vo.count},
              {"max_dim", vo.max_dim},
              {"suites", suites},
              {"passed", all_passed}};
  if (!all_passed) {
    mark_violation(report, "suite " + first_name, first_failure);
    return emit(report, 1, o, out, err);
  }
  return emit(report, 0, o, out, err);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"projection order toolkit"};
  app.name("projlat");
  app.require_subcommand(1);

  struct Cmd {
    CLI::App* sub = nullptr;
    CommonOpts opts;
  };
  auto make = [&](const char* name, const char* desc, bool needs_input,
                  bool with_max_dim = true) {
    auto cmd = std::make_shared<Cmd>();
    cmd->sub = app.add_subcommand(name, desc);
    add_common(cmd->sub, cmd->opts, needs_input, with_max_dim);
    return cmd;
  };

  auto meet_cmd = make("meet", "intersection of ranges, both routes", true);
  auto join_cmd = make("join", "span of ranges, both routes", true);
  auto glb_cmd = make("glb-check", "product-norm criterion for the meet", true);
  auto norm_cmd = make("norm-check", "norm test of a greatest lower bound", true);
  auto sep_cmd = make("sep-witness", "subordinate witness for a non-comparable pair", true);
  auto gap_cmd = make("gap", "order gap element for a non-commuting pair", true);
  auto dec_cmd = make("decreasing", "decreasing approximations of the meet", true);
  auto inc_cmd = make("increasing", "increasing approximation of the join", true);
  auto ee_cmd = make("ee-check", "spectral family compression bound", true);
  auto pull_cmd = make("pullback", "projection pullback through a morphism", true);
  auto interp_cmd = make("interpolate", "interpolant for a finite pregap", true);

  auto calkin_cmd = make("calkin-demo", "block sequence family diagnostics", false);
  CalkinOpts calkin_opts;
  calkin_cmd->sub->add_option("--family", calkin_opts.family, "family name")
      ->check(CLI::IsMember({"badpq", "pomega", "custom"}));
  calkin_cmd->sub->add_option("--N", calkin_opts.truncation, "truncation bound");

  auto verify_cmd = make("verify", "full randomized property run", false, false);
  VerifyCliOpts verify_opts;
  verify_cmd->sub->add_option("--seed", verify_opts.seed, "PRNG seed")->required();
  verify_cmd->sub->add_option("--count", verify_opts.count, "instances per suite")
      ->check(CLI::Range(1, 1000000));
  verify_cmd->sub
      ->add_option("--max-dim", verify_opts.max_dim, "largest instance dimension")
      ->check(CLI::Range(2, kHardDimCap));

  std::vector<const char*> argv;
  argv.push_back("projlat");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  auto run = [&]() -> int {
    if (meet_cmd->sub->parsed()) {
      return cmd_meet(load_json(meet_cmd->opts.in_path), meet_cmd->opts, out, err,
                      false);
    }
    if (join_cmd->sub->parsed()) {
      return cmd_meet(load_json(join_cmd->opts.in_path), join_cmd->opts, out, err,
                      true);
    }
    if (glb_cmd->sub->parsed()) {
      return cmd_glb_check(load_json(glb_cmd->opts.in_path), glb_cmd->opts, out, err);
    }
    if (norm_cmd->sub->parsed()) {
      return cmd_norm_check(load_json(norm_cmd->opts.in_path), norm_cmd->opts, out,
                            err);
    }
    if (sep_cmd->sub->parsed()) {
      return cmd_sep_witness(load_json(sep_cmd->opts.in_path), sep_cmd->opts, out,
                             err);
    }
    if (gap_cmd->sub->parsed()) {
      return cmd_gap(load_json(gap_cmd->opts.in_path), gap_cmd->opts, out, err);
    }
    if (dec_cmd->sub->parsed()) {
      return cmd_decreasing(load_json(dec_cmd->opts.in_path), dec_cmd->opts, out,
                            err);
    }
    if (inc_cmd->sub->parsed()) {
      return cmd_increasing(load_json(inc_cmd->opts.in_path), inc_cmd->opts, out,
                            err);
    }
    if (ee_cmd->sub->parsed()) {
      return cmd_ee_check(load_json(ee_cmd->opts.in_path), ee_cmd->opts, out, err);
    }
    if (pull_cmd->sub->parsed()) {
      return cmd_pullback(load_json(pull_cmd->opts.in_path), pull_cmd->opts, out,
                          err);
    }
    if (interp_cmd->sub->parsed()) {
      return cmd_interpolate(load_json(interp_cmd->opts.in_path), interp_cmd->opts,
                             out, err);
    }
    if (calkin_cmd->sub->parsed()) {
      return cmd_calkin_demo(calkin_opts, calkin_cmd->opts, out, err);
    }
    if (verify_cmd->sub->parsed()) {
      return cmd_verify(verify_opts, verify_cmd->opts, out, err);
    }
    err << "error: no subcommand\n";
    return 2;
  };

  try {
    return run();
  } catch (const json::parse_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ToleranceError& e) {
    err << "violation: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace projlat::cli
