#include "projlat/io.hpp"

namespace projlat::io {

namespace {

int checked_dim(const json& j, const char* key, int max_dim) {
  if (!j.contains(key) || !j[key].is_number_integer()) {
    throw ArgumentError(std::string("missing integer field \"") + key + "\"");
  }
  const int dim = j[key].get<int>();
  if (dim <= 0) throw ArgumentError("dimension must be positive");
  if (max_dim > 0 && dim > max_dim) {
    throw ConfigError("dimension exceeds the configured cap of " +
                      std::to_string(max_dim));
  }
  return dim;
}

Complex entry_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number()) {
    throw ArgumentError("complex entries must be [re, im] number pairs");
  }
  return Complex(j[0].get<double>(), j[1].get<double>());
}

json entry_to_json(const Complex& c) {
  return json::array({c.real(), c.imag()});
}

}  // namespace

json matrix_to_json(const Matrix& m) {
  json entries = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      entries.push_back(entry_to_json(m(i, j)));
    }
  }
  return json{{"dim", m.rows()}, {"entries", std::move(entries)}};
}

Matrix matrix_from_json(const json& j, int max_dim) {
  if (!j.is_object()) throw ArgumentError("matrix must be a JSON object");
  const int dim = checked_dim(j, "dim", max_dim);
  if (!j.contains("entries") || !j["entries"].is_array() ||
      j["entries"].size() !=
          static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim)) {
    throw ArgumentError("matrix needs dim^2 entries in row-major order");
  }
  Matrix m(dim, dim);
  std::size_t at = 0;
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      m(r, c) = entry_from_json(j["entries"][at++]);
    }
  }
  return m;
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(entry_to_json(v(i)));
  return out;
}

Vector vector_from_json(const json& j) {
  if (!j.is_array() || j.empty()) {
    throw ArgumentError("vector must be a non-empty array of [re, im] pairs");
  }
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = entry_from_json(j[i]);
  }
  return v;
}

json projection_to_json(const Projection& p) { return matrix_to_json(p.matrix()); }

Projection projection_from_json(const json& j, const ToleranceConfig& cfg,
                                int max_dim) {
  if (!j.is_object()) throw ArgumentError("projection must be a JSON object");
  if (j.contains("range_basis")) {
    const int dim = checked_dim(j, "dim", max_dim);
    const json& basis = j["range_basis"];
    if (!basis.is_array()) {
      throw ArgumentError("range_basis must be an array of vectors");
    }
    if (basis.empty()) return Projection::zero(dim);
    Matrix cols(dim, static_cast<Eigen::Index>(basis.size()));
    for (std::size_t c = 0; c < basis.size(); ++c) {
      const Vector v = vector_from_json(basis[c]);
      if (v.size() != dim) {
        throw ArgumentError("range_basis vector length does not match dim");
      }
      cols.col(static_cast<Eigen::Index>(c)) = v;
    }
    return Projection::from_basis(cols, dim, cfg);
  }
  return Projection::from_matrix(matrix_from_json(j, max_dim), cfg);
}

json element_to_json(const AlgebraElement& x) {
  json dims = json::array();
  json blocks = json::array();
  for (int i = 0; i < x.block_count(); ++i) {
    dims.push_back(x.algebra().block_dims[static_cast<std::size_t>(i)]);
    blocks.push_back(matrix_to_json(x.block(i)));
  }
  return json{{"block_dims", std::move(dims)}, {"blocks", std::move(blocks)}};
}

AlgebraElement element_from_json(const json& j, const ToleranceConfig& cfg,
                                 int max_dim) {
  (void)cfg;
  if (!j.is_object() || !j.contains("block_dims") || !j.contains("blocks") ||
      !j["block_dims"].is_array() || !j["blocks"].is_array() ||
      j["block_dims"].size() != j["blocks"].size()) {
    throw ArgumentError(
        "algebra element needs aligned \"block_dims\" and \"blocks\"");
  }
  BlockAlgebra algebra;
  std::vector<Matrix> blocks;
  for (std::size_t i = 0; i < j["block_dims"].size(); ++i) {
    if (!j["block_dims"][i].is_number_integer()) {
      throw ArgumentError("block_dims must be integers");
    }
    algebra.block_dims.push_back(j["block_dims"][i].get<int>());
    blocks.push_back(matrix_from_json(j["blocks"][i], max_dim));
    if (blocks.back().rows() != algebra.block_dims.back()) {
      throw ArgumentError("block matrix does not match its declared dimension");
    }
  }
  return AlgebraElement(std::move(algebra), std::move(blocks));
}

json morphism_to_json(const Morphism& m) {
  json assignment = json::array();
  for (const auto& a : m.assignment()) {
    assignment.push_back(json{{"source_block", a.source_block},
                              {"unitary", matrix_to_json(a.unitary)}});
  }
  return json{{"assignment", std::move(assignment)}};
}

Morphism morphism_from_json(const json& j, const BlockAlgebra& source,
                            int max_dim) {
  if (!j.is_object() || !j.contains("assignment") ||
      !j["assignment"].is_array() || j["assignment"].empty()) {
    throw ArgumentError("morphism needs a non-empty \"assignment\" array");
  }
  std::vector<Morphism::BlockAssignment> assignment;
  for (const json& a : j["assignment"]) {
    if (!a.is_object() || !a.contains("source_block") ||
        !a["source_block"].is_number_integer() || !a.contains("unitary")) {
      throw ArgumentError(
          "assignment entries need \"source_block\" and \"unitary\"");
    }
    assignment.push_back(Morphism::BlockAssignment{
        a["source_block"].get<int>(), matrix_from_json(a["unitary"], max_dim)});
  }
  return Morphism::from_assignment(source, std::move(assignment));
}

json glb_report_to_json(const GlbReport& r) {
  return json{{"sup_sigma_excl_one", r.sup_sigma_excl_one},
              {"criterion_holds", r.criterion_holds},
              {"meet", projection_to_json(r.meet)},
              {"norm_gap", r.norm_gap}};
}

json glb_norm_report_to_json(const GlbNormReport& r) {
  return json{{"is_glb", r.is_glb}, {"norm", r.norm}};
}

json nonzero_meet_report_to_json(const NonzeroMeetReport& r) {
  return json{{"meet_nonzero", r.meet_nonzero}, {"pq_norm", r.pq_norm}};
}

json spectrum_identity_report_to_json(const SpectrumIdentityReport& r) {
  static const char* kNames[] = {"pqp", "ppq", "pq", "qp", "qqp", "qpq"};
  json spectra = json::object();
  for (std::size_t i = 0; i < r.product_spectra.size(); ++i) {
    json list = json::array();
    for (const Complex& v : r.product_spectra[i]) {
      list.push_back(json::array({v.real(), v.imag()}));
    }
    spectra[kNames[i]] = std::move(list);
  }
  return json{{"product_spectra", std::move(spectra)},
              {"product_max_discrepancy", r.product_max_discrepancy},
              {"window_lhs", r.window_lhs},
              {"window_rhs", r.window_rhs},
              {"window_max_discrepancy", r.window_max_discrepancy},
              {"norm_squared", r.norm_squared},
              {"top_eigenvalue", r.top_eigenvalue},
              {"norm_discrepancy", r.norm_discrepancy},
              {"max_discrepancy", r.max_discrepancy}};
}

json ee_report_to_json(const EeReport& r) {
  return json{{"lhs", r.lhs}, {"rhs", r.rhs}, {"holds", r.holds}};
}

json techcon_report_to_json(const TechconReport& r) {
  return json{{"partial_sums", r.partial_sums},
              {"decreasing_tail", r.decreasing_tail}};
}

json gap_certificate_to_json(const GapCertificate& c) {
  return json{{"S", matrix_to_json(c.s.matrix())},
              {"r", c.r},
              {"witness_pos", vector_to_json(c.witness_pos)},
              {"witness_neg", vector_to_json(c.witness_neg)}};
}

json essential_report_to_json(const EssentialReport& r) {
  return json{{"estimate", r.estimate},
              {"window_max_sequence", r.window_max_sequence},
              {"converged", r.converged}};
}

json closed_sum_report_to_json(const ClosedSumReport& r) {
  return json{{"candidate_is_upper_bound", r.candidate_is_upper_bound},
              {"join_below_candidate", r.join_below_candidate},
              {"candidate_below_join", r.candidate_below_join},
              {"overshooting_members", r.overshooting_members},
              {"consistent_with_closed", r.consistent_with_closed},
              {"heuristic", r.heuristic}};
}

}  // namespace projlat::io
