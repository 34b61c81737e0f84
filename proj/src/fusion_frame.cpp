#include "cfw/fusion_frame.hpp"

#include <cmath>

namespace cfw {

namespace {

void require_same_space(const MeasureSpace& a, const MeasureSpace& b) {
  if (!(a == b)) throw InputError("field lives on a different measure space");
}

}  // namespace

CFrame::CFrame(MeasureSpace space, std::vector<Vector> vectors)
    : space_(std::move(space)), vectors_(std::move(vectors)) {
  if (vectors_.size() != space_.size())
    throw InputError("c-frame needs one vector per node");
  const Index d = vectors_.front().size();
  if (d <= 0) throw InputError("c-frame vectors must have positive dimension");
  for (const auto& v : vectors_)
    if (v.size() != d) throw InputError("c-frame vectors have mixed dimensions");
}

Operator cframe_operator(const CFrame& frame) {
  const Index d = frame.dim();
  Operator S = Operator::Zero(d, d);
  for (std::size_t j = 0; j < frame.node_count(); ++j) {
    const Vector& f = frame.vectors()[j];
    S.noalias() += frame.space().weight(j) * (f * f.adjoint());
  }
  return S;
}

FrameBounds cframe_bounds(const CFrame& frame) {
  const auto e = extreme_eigs(cframe_operator(frame));
  return {e.min, e.max};
}

CFusionFrame::CFusionFrame(MeasureSpace space, std::vector<Subspace> subspaces,
                           std::vector<double> weights)
    : space_(std::move(space)),
      subspaces_(std::move(subspaces)),
      weights_(std::move(weights)) {
  if (subspaces_.size() != space_.size() || weights_.size() != space_.size())
    throw InputError("c-fusion frame needs one subspace and weight per node");
  const Index d = subspaces_.front().ambient_dim();
  for (const auto& s : subspaces_)
    if (s.ambient_dim() != d)
      throw InputError("subspaces have mixed ambient dimensions");
  for (double v : weights_)
    if (!(v > 0.0) || !std::isfinite(v))
      throw InputError("fusion weights must be finite and strictly positive");
}

CFusionFrame CFusionFrame::restricted(
    std::span<const std::size_t> nodes) const {
  std::vector<Subspace> s;
  std::vector<double> v;
  for (std::size_t j : nodes) {
    if (j >= node_count()) throw InputError("node index out of range");
    s.push_back(subspaces_[j]);
    v.push_back(weights_[j]);
  }
  return CFusionFrame(space_.restricted(nodes), std::move(s), std::move(v));
}

Field zero_field(const MeasureSpace& space, Index dim) {
  return Field{space, std::vector<Vector>(space.size(), Vector::Zero(dim))};
}

Scalar field_inner(const Field& f, const Field& g) {
  require_same_space(f.space, g.space);
  Scalar s = 0.0;
  for (std::size_t j = 0; j < f.values.size(); ++j)
    s += f.space.weight(j) * g.values[j].dot(f.values[j]);
  return s;
}

Operator fusion_frame_operator(const CFusionFrame& frame) {
  const Index d = frame.ambient_dim();
  Operator S = Operator::Zero(d, d);
  for (std::size_t j = 0; j < frame.node_count(); ++j) {
    const double v = frame.weight(j);
    S.noalias() += (frame.space().weight(j) * v * v) *
                   projector(frame.subspace(j));
  }
  return S;
}

FrameBounds fusion_bounds(const CFusionFrame& frame) {
  const auto e = extreme_eigs(fusion_frame_operator(frame));
  return {e.min, e.max};
}

Vector synthesis(const CFusionFrame& frame, const Field& f) {
  require_same_space(frame.space(), f.space);
  const Index d = frame.ambient_dim();
  Vector out = Vector::Zero(d);
  for (std::size_t j = 0; j < frame.node_count(); ++j) {
    const Vector& fj = f.values[j];
    if (fj.size() != d) throw InputError("field value has wrong dimension");
    const Operator& B = frame.subspace(j).basis();
    const double off = (fj - B * (B.adjoint() * fj)).norm();
    if (off > 1e-9 * fj.norm() + 1e-300)
      throw InputError("field value at node " + std::to_string(j) +
                       " is not in the frame subspace");
    out += (frame.space().weight(j) * frame.weight(j)) * fj;
  }
  return out;
}

Field analysis(const CFusionFrame& frame, const Vector& h) {
  if (h.size() != frame.ambient_dim())
    throw InputError("vector dimension differs from frame dimension");
  Field f{frame.space(), {}};
  f.values.reserve(frame.node_count());
  for (std::size_t j = 0; j < frame.node_count(); ++j) {
    const Operator& B = frame.subspace(j).basis();
    f.values.push_back(frame.weight(j) * (B * (B.adjoint() * h)));
  }
  return f;
}

Operator synthesis_matrix(const CFusionFrame& frame) {
  const Index d = frame.ambient_dim();
  const Index n = static_cast<Index>(frame.node_count());
  Operator T(d, n * d);
  for (Index j = 0; j < n; ++j) {
    const auto jj = static_cast<std::size_t>(j);
    const double c = std::sqrt(frame.space().weight(jj)) * frame.weight(jj);
    T.middleCols(j * d, d) = c * projector(frame.subspace(jj));
  }
  return T;
}

CFusionFrame cfusion_from_cframe(const CFrame& frame, double rank_tol) {
  std::vector<Subspace> s;
  std::vector<double> v;
  for (std::size_t j = 0; j < frame.node_count(); ++j) {
    const Vector& f = frame.vectors()[j];
    const double n = f.norm();
    if (n == 0.0)
      throw InputError("c-frame has a zero vector at node " +
                       std::to_string(j));
    s.push_back(subspace_from_spanning(std::span(&f, 1), rank_tol));
    v.push_back(n);
  }
  return CFusionFrame(frame.space(), std::move(s), std::move(v));
}

}  // namespace cfw
