#pragma once

// Continuous frames and continuous fusion frames over a discretized measure
// space: synthesis, analysis, frame operators and optimal frame bounds.

#include <vector>

#include "cfw/hilbert.hpp"
#include "cfw/measure.hpp"

namespace cfw {

/// Optimal constants A <= B of a frame inequality.
struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// x -> F(x) in C^d, one vector per node.
class CFrame {
 public:
  CFrame(MeasureSpace space, std::vector<Vector> vectors);

  const MeasureSpace& space() const { return space_; }
  const std::vector<Vector>& vectors() const { return vectors_; }
  Index dim() const { return vectors_.front().size(); }
  std::size_t node_count() const { return vectors_.size(); }

 private:
  MeasureSpace space_;
  std::vector<Vector> vectors_;
};

/// sum_j w_j F_j F_j^H.
Operator cframe_operator(const CFrame& frame);
FrameBounds cframe_bounds(const CFrame& frame);

/// (F, v): a subspace and a strictly positive weight per node.
class CFusionFrame {
 public:
  CFusionFrame(MeasureSpace space, std::vector<Subspace> subspaces,
               std::vector<double> weights);

  const MeasureSpace& space() const { return space_; }
  const std::vector<Subspace>& subspaces() const { return subspaces_; }
  const Subspace& subspace(std::size_t j) const { return subspaces_[j]; }
  const std::vector<double>& weights() const { return weights_; }
  double weight(std::size_t j) const { return weights_[j]; }
  Index ambient_dim() const { return subspaces_.front().ambient_dim(); }
  std::size_t node_count() const { return subspaces_.size(); }

  /// The frame on the listed nodes only.
  CFusionFrame restricted(std::span<const std::size_t> nodes) const;

 private:
  MeasureSpace space_;
  std::vector<Subspace> subspaces_;
  std::vector<double> weights_;
};

/// Element of L^2(X, C^d): one vector per node. Inner product carries the
/// node masses.
struct Field {
  MeasureSpace space;
  std::vector<Vector> values;
};

Field zero_field(const MeasureSpace& space, Index dim);
Scalar field_inner(const Field& f, const Field& g);

/// S_F = sum_j w_j v_j^2 P_j.
Operator fusion_frame_operator(const CFusionFrame& frame);
FrameBounds fusion_bounds(const CFusionFrame& frame);

/// T_F f = sum_j w_j v_j f_j. Requires P_j f_j = f_j (within 1e-9 ||f_j||).
Vector synthesis(const CFusionFrame& frame, const Field& f);
/// T_F^* h = (v_j P_j h)_j.
Field analysis(const CFusionFrame& frame, const Vector& h);

/// Block row [sqrt(w_j) v_j P_j]_j of shape d x (n d): the matrix of T_F in
/// coordinates where the weighted field inner product is Euclidean.
Operator synthesis_matrix(const CFusionFrame& frame);

/// v_j = ||F_j||, subspace span{F_j}. Zero vectors are rejected.
CFusionFrame cfusion_from_cframe(const CFrame& frame,
                                 double rank_tol = kRankTol);

}  // namespace cfw
