#pragma once

// Weavings of m c-fusion frames on a shared measure space: per-partition
// weaving operators and universal bounds over all (or sampled) partitions.
//
// The exhaustive kernel runs over partition indices with OpenMP; a serial
// reference with the same reduction contract lives alongside it so the two
// can be compared bit for bit.

#include <cstdint>
#include <vector>

#include "cfw/fusion_frame.hpp"
#include "cfw/measure.hpp"

namespace cfw {

/// m >= 2 c-fusion frames sharing one measure space and one ambient C^d.
class WovenFamily {
 public:
  explicit WovenFamily(std::vector<CFusionFrame> members);

  std::size_t member_count() const { return members_.size(); }
  std::size_t node_count() const { return members_.front().node_count(); }
  Index ambient_dim() const { return members_.front().ambient_dim(); }
  const MeasureSpace& space() const { return members_.front().space(); }
  const CFusionFrame& member(std::size_t i) const { return members_[i]; }
  const std::vector<CFusionFrame>& members() const { return members_; }

  /// The family on the listed nodes only.
  WovenFamily restricted(std::span<const std::size_t> nodes) const;

 private:
  std::vector<CFusionFrame> members_;
};

/// Per-(member, node) PSD contributions whose partition-selected sum is the
/// weaving operator. Optionally compressed to a subspace (Q^H C Q).
class WeavingTerms {
 public:
  WeavingTerms(std::size_t members, std::size_t nodes, Index dim);

  std::size_t member_count() const { return members_; }
  std::size_t node_count() const { return nodes_; }
  Index dim() const { return dim_; }

  Operator& term(std::size_t member, std::size_t node) {
    return terms_[member * nodes_ + node];
  }
  const Operator& term(std::size_t member, std::size_t node) const {
    return terms_[member * nodes_ + node];
  }

  /// sum_j term(p(j), j).
  Operator assemble(const Partition& p) const;
  /// Same, writing into `out` (resized as needed).
  void assemble_into(const std::vector<std::uint32_t>& assignment,
                     Operator& out) const;

  /// Q^H term Q for every term, Q an orthonormal basis of `range`.
  WeavingTerms compressed(const Subspace& range) const;

 private:
  std::size_t members_;
  std::size_t nodes_;
  Index dim_;
  std::vector<Operator> terms_;
};

/// term(i, j) = w_j v_{i,j}^2 P_{i,j}.
WeavingTerms weaving_terms(const WovenFamily& family);

/// S_p = sum_i sum_{j in sigma_i} w_j v_{i,j}^2 P_{i,j}.
Operator weaving_operator(const WovenFamily& family, const Partition& p);
FrameBounds weaving_bounds(const WovenFamily& family, const Partition& p);
/// Extreme eigenvalues of the terms' operator at p.
FrameBounds weaving_bounds(const WeavingTerms& terms, const Partition& p);

struct SearchStrategy {
  enum class Kind { exhaustive, sampled, descent };

  Kind kind = Kind::exhaustive;
  std::uint64_t budget = kDefaultEnumerationBudget;
  std::size_t samples = 0;
  std::size_t restarts = 0;
  std::uint64_t seed = 0;

  static SearchStrategy exhaustive(
      std::uint64_t budget = kDefaultEnumerationBudget) {
    return {Kind::exhaustive, budget, 0, 0, 0};
  }
  static SearchStrategy sampled(std::size_t samples, std::uint64_t seed) {
    return {Kind::sampled, kDefaultEnumerationBudget, samples, 0, seed};
  }
  static SearchStrategy descent(std::size_t restarts, std::uint64_t seed) {
    return {Kind::descent, kDefaultEnumerationBudget, 0, restarts, seed};
  }
};

/// inf/sup of the weaving bounds over partitions, with attaining partitions.
/// `certified` is true only for exhaustive enumeration. Ties go to the
/// lexicographically smallest assignment.
struct UniversalBounds {
  double lower = 0.0;
  double upper = 0.0;
  Partition lower_witness;
  Partition upper_witness;
  bool certified = false;
  std::uint64_t evaluated = 0;
};

UniversalBounds universal_bounds(const WeavingTerms& terms,
                                 const SearchStrategy& strategy);
UniversalBounds universal_bounds(const WovenFamily& family,
                                 const SearchStrategy& strategy =
                                     SearchStrategy::exhaustive());

/// Single-threaded exhaustive enumeration; reference for the parallel kernel.
UniversalBounds universal_bounds_serial(
    const WeavingTerms& terms,
    std::uint64_t budget = kDefaultEnumerationBudget);

/// Output of lift_product: the fusion family on the outer space and, per
/// member, the weighted product c-frame on outer x inner nodes.
struct LiftedProduct {
  WovenFamily fusion;
  std::vector<CFrame> product;
  /// Inner frames as given.
  std::vector<CFrame> inner;
  /// weights[i][x] = v_i(x).
  std::vector<std::vector<double>> weights;
  MeasureSpace outer;
};

/// Fusion member i: span{F_i(y)} with weight v_i(x) at every outer node x.
/// Product member i: vector v_i(x) F_i(y) at node (x, y), mass w_x w_y, laid
/// out x-major.
LiftedProduct lift_product(const std::vector<CFrame>& inner,
                           const MeasureSpace& outer,
                           const std::vector<std::vector<double>>& weights,
                           double rank_tol = kRankTol);

/// Weaving terms of the product c-frames over outer partitions: each outer
/// node carries its whole inner fiber, term(i, x) = w_x v_i(x)^2 S_{F_i}.
WeavingTerms product_weaving_terms(const LiftedProduct& lifted);

}  // namespace cfw
