#include "projlat/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "projlat/projection.hpp"

namespace projlat {

namespace {

constexpr double kUnitaryTol = 1e-9;
constexpr double kImageTol = 1e-8;

void require_member(const AlgebraElement& x, const BlockAlgebra& algebra,
                    const char* what) {
  if (!(x.algebra() == algebra)) {
    throw ArgumentError(std::string(what) + " lives in the wrong algebra");
  }
}

void require_projection(const AlgebraElement& x, const char* what) {
  if (!x.is_projection()) {
    throw ArgumentError(std::string(what) + " is not a projection element");
  }
}

}  // namespace

void BlockAlgebra::validate() const {
  if (block_dims.empty()) {
    throw ArgumentError("block algebra needs at least one block");
  }
  for (int d : block_dims) {
    if (d <= 0) throw ArgumentError("block dimensions must be positive");
  }
}

int BlockAlgebra::total_dim() const {
  int total = 0;
  for (int d : block_dims) total += d;
  return total;
}

AlgebraElement::AlgebraElement(BlockAlgebra algebra, std::vector<Matrix> blocks)
    : algebra_(std::move(algebra)), blocks_(std::move(blocks)) {
  algebra_.validate();
  if (blocks_.size() != algebra_.block_dims.size()) {
    throw ArgumentError("block count does not match the algebra");
  }
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const int d = algebra_.block_dims[i];
    if (blocks_[i].rows() != d || blocks_[i].cols() != d) {
      throw ArgumentError("block shape does not match the algebra");
    }
    if (!blocks_[i].allFinite()) {
      throw NumericInputError("block has non-finite entries");
    }
  }
}

AlgebraElement AlgebraElement::zero(const BlockAlgebra& algebra) {
  std::vector<Matrix> blocks;
  for (int d : algebra.block_dims) blocks.push_back(Matrix::Zero(d, d));
  return AlgebraElement(algebra, std::move(blocks));
}

AlgebraElement AlgebraElement::identity(const BlockAlgebra& algebra) {
  std::vector<Matrix> blocks;
  for (int d : algebra.block_dims) blocks.push_back(Matrix::Identity(d, d));
  return AlgebraElement(algebra, std::move(blocks));
}

bool AlgebraElement::is_hermitian(double tol) const {
  for (const Matrix& b : blocks_) {
    if ((b - b.adjoint()).norm() > tol) return false;
  }
  return true;
}

bool AlgebraElement::is_projection(double tol) const {
  for (const Matrix& b : blocks_) {
    if ((b - b.adjoint()).norm() > tol) return false;
    if ((b * b - b).norm() > tol) return false;
  }
  return true;
}

AlgebraElement AlgebraElement::adjoint() const {
  std::vector<Matrix> blocks;
  blocks.reserve(blocks_.size());
  for (const Matrix& b : blocks_) blocks.push_back(b.adjoint());
  return AlgebraElement(algebra_, std::move(blocks));
}

Matrix AlgebraElement::assemble() const {
  const int total = algebra_.total_dim();
  Matrix out = Matrix::Zero(total, total);
  int at = 0;
  for (const Matrix& b : blocks_) {
    out.block(at, at, b.rows(), b.cols()) = b;
    at += static_cast<int>(b.rows());
  }
  return out;
}

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
  require_member(b, a.algebra_, "operand");
  std::vector<Matrix> blocks;
  blocks.reserve(a.blocks_.size());
  for (std::size_t i = 0; i < a.blocks_.size(); ++i) {
    blocks.push_back(a.blocks_[i] + b.blocks_[i]);
  }
  return AlgebraElement(a.algebra_, std::move(blocks));
}

AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
  require_member(b, a.algebra_, "operand");
  std::vector<Matrix> blocks;
  blocks.reserve(a.blocks_.size());
  for (std::size_t i = 0; i < a.blocks_.size(); ++i) {
    blocks.push_back(a.blocks_[i] - b.blocks_[i]);
  }
  return AlgebraElement(a.algebra_, std::move(blocks));
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  require_member(b, a.algebra_, "operand");
  std::vector<Matrix> blocks;
  blocks.reserve(a.blocks_.size());
  for (std::size_t i = 0; i < a.blocks_.size(); ++i) {
    blocks.push_back(a.blocks_[i] * b.blocks_[i]);
  }
  return AlgebraElement(a.algebra_, std::move(blocks));
}

AlgebraElement operator*(double c, const AlgebraElement& a) {
  std::vector<Matrix> blocks;
  blocks.reserve(a.blocks_.size());
  for (const Matrix& b : a.blocks_) blocks.push_back(c * b);
  return AlgebraElement(a.algebra_, std::move(blocks));
}

Morphism::Morphism(BlockAlgebra source, BlockAlgebra target,
                   std::vector<BlockAssignment> assignment)
    : source_(std::move(source)),
      target_(std::move(target)),
      assignment_(std::move(assignment)) {
  source_.validate();
  target_.validate();
  if (assignment_.size() != target_.block_dims.size()) {
    throw ArgumentError("assignment must cover every target block");
  }
  for (std::size_t j = 0; j < assignment_.size(); ++j) {
    const auto& a = assignment_[j];
    if (a.source_block < 0 ||
        a.source_block >= static_cast<int>(source_.block_dims.size())) {
      throw ArgumentError("assignment references a missing source block");
    }
    const int d = target_.block_dims[j];
    if (source_.block_dims[static_cast<std::size_t>(a.source_block)] != d) {
      throw ArgumentError("selected source block dimension does not match");
    }
    if (a.unitary.rows() != d || a.unitary.cols() != d) {
      throw ArgumentError("unitary shape does not match its block");
    }
    if ((a.unitary.adjoint() * a.unitary - Matrix::Identity(d, d)).norm() >
        kUnitaryTol) {
      throw ArgumentError("assignment matrix is not unitary");
    }
  }
}

Morphism Morphism::from_assignment(BlockAlgebra source,
                                   std::vector<BlockAssignment> assignment) {
  BlockAlgebra target;
  for (const auto& a : assignment) {
    target.block_dims.push_back(static_cast<int>(a.unitary.rows()));
  }
  return Morphism(std::move(source), std::move(target), std::move(assignment));
}

bool Morphism::surjective() const {
  std::set<int> seen;
  for (const auto& a : assignment_) {
    if (!seen.insert(a.source_block).second) return false;
  }
  return true;
}

AlgebraElement Morphism::apply(const AlgebraElement& x) const {
  require_member(x, source_, "argument");
  std::vector<Matrix> blocks;
  blocks.reserve(assignment_.size());
  for (const auto& a : assignment_) {
    blocks.push_back(a.unitary * x.block(a.source_block) * a.unitary.adjoint());
  }
  return AlgebraElement(target_, std::move(blocks));
}

AlgebraElement apply(const Morphism& m, const AlgebraElement& x) {
  return m.apply(x);
}

bool element_leq(const AlgebraElement& p, const AlgebraElement& q,
                 const ToleranceConfig& cfg) {
  cfg.validate();
  require_member(q, p.algebra(), "comparand");
  for (int i = 0; i < p.block_count(); ++i) {
    if (operator_norm(p.block(i) - q.block(i) * p.block(i)) > cfg.order_tol) {
      return false;
    }
  }
  return true;
}

AlgebraElement element_spectral_family(const AlgebraElement& s, double t,
                                       FamilySide side,
                                       const ToleranceConfig& cfg) {
  if (!s.is_hermitian()) {
    throw ArgumentError("spectral family requires a self-adjoint element");
  }
  std::vector<Matrix> blocks;
  blocks.reserve(static_cast<std::size_t>(s.block_count()));
  for (int i = 0; i < s.block_count(); ++i) {
    blocks.push_back(
        spectral_family_at(HermitianOperator(s.block(i), cfg), t, side, cfg)
            .matrix());
  }
  return AlgebraElement(s.algebra(), std::move(blocks));
}

AlgebraElement pullback_projection(const Morphism& m, const AlgebraElement& q,
                                   const AlgebraElement& p,
                                   const ToleranceConfig& cfg) {
  cfg.validate();
  if (!m.surjective()) {
    throw ArgumentError("pullback requires a surjective morphism");
  }
  require_member(q, m.target(), "target projection");
  require_member(p, m.source(), "source projection");
  require_projection(q, "target element");
  require_projection(p, "source element");
  const AlgebraElement image = m.apply(p);
  if (!element_leq(q, image, cfg)) {
    throw OrderError("target projection is not below the image of P");
  }

  // Canonical section: conjugate each selected target block back, leave the
  // kernel blocks at zero.
  AlgebraElement lift = AlgebraElement::zero(m.source());
  for (std::size_t j = 0; j < m.assignment().size(); ++j) {
    const auto& a = m.assignment()[j];
    lift.block(a.source_block) =
        a.unitary.adjoint() * q.block(static_cast<int>(j)) * a.unitary;
  }
  const AlgebraElement sym = 0.5 * (lift + lift.adjoint());

  std::vector<Matrix> blocks;
  blocks.reserve(static_cast<std::size_t>(p.block_count()));
  for (int i = 0; i < p.block_count(); ++i) {
    const Matrix window = p.block(i) * sym.block(i) * p.block(i);
    blocks.push_back(
        spectral_window_projection(HermitianOperator(window, cfg), 0.75, 0.25,
                                   cfg)
            .matrix());
  }
  AlgebraElement out(m.source(), std::move(blocks));

  const AlgebraElement check = m.apply(out);
  for (int j = 0; j < q.block_count(); ++j) {
    if ((check.block(j) - q.block(j)).norm() > kImageTol) {
      throw ToleranceError("pullback image drifted from the target");
    }
  }
  if (!element_leq(out, p, cfg)) {
    throw ToleranceError("pullback escaped the given upper bound");
  }
  return out;
}

AlgebraElement sandwich_pullback(const Morphism& m, const AlgebraElement& q,
                                 const AlgebraElement& r, const AlgebraElement& p,
                                 const ToleranceConfig& cfg) {
  cfg.validate();
  require_member(r, m.source(), "lower bound");
  require_member(p, m.source(), "upper bound");
  require_projection(r, "lower bound");
  require_projection(p, "upper bound");
  if (!element_leq(r, p, cfg)) {
    throw OrderError("sandwich requires R below P");
  }
  if (!element_leq(m.apply(r), q, cfg) || !element_leq(q, m.apply(p), cfg)) {
    throw OrderError("target projection must sit between the images");
  }

  const AlgebraElement upper_part = pullback_projection(m, q, p, cfg);
  const AlgebraElement residual_image = m.apply(p - upper_part);
  const AlgebraElement residual =
      pullback_projection(m, residual_image, p - r, cfg);
  AlgebraElement out = p - residual;

  if (!element_leq(r, out, cfg) || !element_leq(out, p, cfg)) {
    throw ToleranceError("sandwich pullback left its order interval");
  }
  const AlgebraElement check = m.apply(out);
  for (int j = 0; j < q.block_count(); ++j) {
    if ((check.block(j) - q.block(j)).norm() > kImageTol) {
      throw ToleranceError("sandwich pullback image drifted from the target");
    }
  }
  return out;
}

AlgebraElement interpolate_pregap(const Morphism& m,
                                  const std::vector<AlgebraElement>& ps,
                                  const std::vector<AlgebraElement>& qs,
                                  const ToleranceConfig& cfg) {
  cfg.validate();
  if (!m.surjective()) {
    throw ArgumentError("interpolation requires a surjective morphism");
  }
  if (ps.empty() && qs.empty()) {
    throw ArgumentError("pregap needs at least one side");
  }
  for (const auto& p : ps) {
    require_member(p, m.target(), "lower chain element");
    require_projection(p, "lower chain element");
  }
  for (const auto& q : qs) {
    require_member(q, m.target(), "upper chain element");
    require_projection(q, "upper chain element");
  }
  for (std::size_t i = 0; i + 1 < ps.size(); ++i) {
    if (!element_leq(ps[i], ps[i + 1], cfg)) {
      throw OrderError("lower chain is not increasing");
    }
  }
  for (std::size_t i = 0; i + 1 < qs.size(); ++i) {
    if (!element_leq(qs[i + 1], qs[i], cfg)) {
      throw OrderError("upper chain is not decreasing");
    }
  }
  for (const auto& p : ps) {
    for (const auto& q : qs) {
      if (!element_leq(p, q, cfg) || element_leq(q, p, cfg)) {
        throw OrderError("chains do not form a strict pregap");
      }
    }
  }

  AlgebraElement lower = AlgebraElement::zero(m.source());
  AlgebraElement upper = AlgebraElement::identity(m.source());
  const std::size_t rounds = std::max(ps.size(), qs.size());
  for (std::size_t k = 0; k < rounds; ++k) {
    if (k < ps.size()) lower = sandwich_pullback(m, ps[k], lower, upper, cfg);
    if (k < qs.size()) upper = sandwich_pullback(m, qs[k], lower, upper, cfg);
  }

  const AlgebraElement top =
      ps.empty() ? AlgebraElement::zero(m.target()) : ps.back();
  const AlgebraElement bottom =
      qs.empty() ? AlgebraElement::identity(m.target()) : qs.back();
  const AlgebraElement gap = bottom - top;
  int gap_rank = 0;
  for (int i = 0; i < gap.block_count(); ++i) {
    gap_rank += static_cast<int>(std::llround(gap.block(i).trace().real()));
  }
  if (gap_rank < 2) {
    // No projection fits strictly inside a rank-1 (or empty) gap; hand back
    // the lower endpoint's pullback.
    return lower;
  }

  // Split the gap: keep the first half of its canonical basis vectors,
  // walking blocks in order.
  const int keep = (gap_rank + 1) / 2;
  AlgebraElement middle = top;
  int taken = 0;
  for (int i = 0; i < gap.block_count() && taken < keep; ++i) {
    const Projection block_gap = Projection::from_matrix(gap.block(i), cfg);
    for (int c = 0; c < block_gap.rank() && taken < keep; ++c, ++taken) {
      const Vector v = block_gap.range_basis().col(c);
      middle.block(i) += v * v.adjoint();
    }
  }
  return sandwich_pullback(m, middle, lower, upper, cfg);
}

bool pushforward_spectral_bound_check(const Morphism& m, const AlgebraElement& p,
                                      const AlgebraElement& s, double t,
                                      const ToleranceConfig& cfg) {
  cfg.validate();
  require_member(p, m.source(), "projection");
  require_member(s, m.source(), "operator");
  require_projection(p, "projection");
  if (!std::isfinite(t)) throw ArgumentError("cutoff must be finite");

  const AlgebraElement image_p = m.apply(p);
  const AlgebraElement image_s = m.apply(s);

  bool forward = true;
  if (element_leq(p, element_spectral_family(s, t, FamilySide::closed, cfg),
                  cfg)) {
    forward = element_leq(
        image_p, element_spectral_family(image_s, t, FamilySide::closed, cfg),
        cfg);
  }
  bool backward = true;
  if (element_leq(element_spectral_family(s, t, FamilySide::open_below, cfg), p,
                  cfg)) {
    backward = element_leq(
        element_spectral_family(image_s, t, FamilySide::open_below, cfg),
        image_p, cfg);
  }
  return forward && backward;
}

}  // namespace projlat
