#pragma once

#include <json.hpp>

#include "projlat/algebra.hpp"
#include "projlat/calkin.hpp"
#include "projlat/projection.hpp"
#include "projlat/projorder.hpp"
#include "projlat/sequences.hpp"
#include "projlat/types.hpp"

namespace projlat::io {

using json = nlohmann::json;

// {"dim": n, "entries": [[re, im], ...]} row-major, n^2 entries.
json matrix_to_json(const Matrix& m);
// max_dim = 0 disables the cap.
Matrix matrix_from_json(const json& j, int max_dim = 0);

// [[re, im], ...]
json vector_to_json(const Vector& v);
Vector vector_from_json(const json& j);

json projection_to_json(const Projection& p);
// Either the matrix form or {"dim": n, "range_basis": [vector, ...]}.
Projection projection_from_json(const json& j,
                                const ToleranceConfig& cfg = ToleranceConfig{},
                                int max_dim = 0);

// {"block_dims": [...], "blocks": [matrix, ...]}
json element_to_json(const AlgebraElement& x);
AlgebraElement element_from_json(const json& j,
                                 const ToleranceConfig& cfg = ToleranceConfig{},
                                 int max_dim = 0);

// {"assignment": [{"source_block": i, "unitary": matrix}, ...]}; the target
// algebra is derived from the unitary shapes.
json morphism_to_json(const Morphism& m);
Morphism morphism_from_json(const json& j, const BlockAlgebra& source,
                            int max_dim = 0);

json glb_report_to_json(const GlbReport& r);
json glb_norm_report_to_json(const GlbNormReport& r);
json nonzero_meet_report_to_json(const NonzeroMeetReport& r);
json spectrum_identity_report_to_json(const SpectrumIdentityReport& r);
json ee_report_to_json(const EeReport& r);
json techcon_report_to_json(const TechconReport& r);
json gap_certificate_to_json(const GapCertificate& c);
json essential_report_to_json(const EssentialReport& r);
json closed_sum_report_to_json(const ClosedSumReport& r);

}  // namespace projlat::io
