#include "cfw/weaving.hpp"

#include <cmath>

namespace cfw {

WovenFamily::WovenFamily(std::vector<CFusionFrame> members)
    : members_(std::move(members)) {
  if (members_.size() < 2)
    throw InputError("a woven family needs at least two members");
  const auto& first = members_.front();
  for (const auto& m : members_) {
    if (!(m.space() == first.space()))
      throw InputError("woven family members must share one measure space");
    if (m.ambient_dim() != first.ambient_dim())
      throw InputError("woven family members must share one ambient space");
  }
}

WovenFamily WovenFamily::restricted(std::span<const std::size_t> nodes) const {
  std::vector<CFusionFrame> out;
  out.reserve(members_.size());
  for (const auto& m : members_) out.push_back(m.restricted(nodes));
  return WovenFamily(std::move(out));
}

WeavingTerms::WeavingTerms(std::size_t members, std::size_t nodes, Index dim)
    : members_(members),
      nodes_(nodes),
      dim_(dim),
      terms_(members * nodes, Operator::Zero(dim, dim)) {}

Operator WeavingTerms::assemble(const Partition& p) const {
  if (p.node_count() != nodes_ || p.block_count() != members_)
    throw InputError("partition shape does not match the family (" +
                     std::to_string(p.node_count()) + " nodes, " +
                     std::to_string(p.block_count()) + " blocks)");
  Operator S;
  assemble_into(p.assignment(), S);
  return S;
}

void WeavingTerms::assemble_into(const std::vector<std::uint32_t>& assignment,
                                 Operator& out) const {
  out.setZero(dim_, dim_);
  for (std::size_t j = 0; j < nodes_; ++j) out += term(assignment[j], j);
}

WeavingTerms WeavingTerms::compressed(const Subspace& range) const {
  if (range.ambient_dim() != dim_)
    throw InputError("compression subspace has the wrong ambient dimension");
  const Operator& Q = range.basis();
  WeavingTerms out(members_, nodes_, Q.cols());
  for (std::size_t k = 0; k < terms_.size(); ++k)
    out.terms_[k] = Q.adjoint() * terms_[k] * Q;
  return out;
}

WeavingTerms weaving_terms(const WovenFamily& family) {
  WeavingTerms t(family.member_count(), family.node_count(),
                 family.ambient_dim());
  for (std::size_t i = 0; i < family.member_count(); ++i) {
    const CFusionFrame& f = family.member(i);
    for (std::size_t j = 0; j < f.node_count(); ++j) {
      const double v = f.weight(j);
      t.term(i, j) = (f.space().weight(j) * v * v) * projector(f.subspace(j));
    }
  }
  return t;
}

Operator weaving_operator(const WovenFamily& family, const Partition& p) {
  return weaving_terms(family).assemble(p);
}

FrameBounds weaving_bounds(const WeavingTerms& terms, const Partition& p) {
  const auto e = extreme_eigs(terms.assemble(p));
  return {e.min, e.max};
}

FrameBounds weaving_bounds(const WovenFamily& family, const Partition& p) {
  return weaving_bounds(weaving_terms(family), p);
}

UniversalBounds universal_bounds(const WovenFamily& family,
                                 const SearchStrategy& strategy) {
  return universal_bounds(weaving_terms(family), strategy);
}

LiftedProduct lift_product(const std::vector<CFrame>& inner,
                           const MeasureSpace& outer,
                           const std::vector<std::vector<double>>& weights,
                           double rank_tol) {
  if (inner.size() < 2) throw InputError("lift needs at least two c-frames");
  if (weights.size() != inner.size())
    throw InputError("need one weight row per c-frame");
  const Index d = inner.front().dim();
  std::vector<CFusionFrame> fusion;
  std::vector<CFrame> product;
  for (std::size_t i = 0; i < inner.size(); ++i) {
    const CFrame& F = inner[i];
    if (F.dim() != d) throw InputError("inner c-frames have mixed dimensions");
    if (weights[i].size() != outer.size())
      throw InputError("weight row length differs from outer node count");
    const Subspace span = subspace_from_spanning(F.vectors(), rank_tol);
    if (span.dim() == 0)
      throw InputError("inner c-frame " + std::to_string(i) + " is all zero");
    fusion.emplace_back(outer, std::vector<Subspace>(outer.size(), span),
                        weights[i]);

    std::vector<double> mass;
    std::vector<Vector> vecs;
    for (std::size_t x = 0; x < outer.size(); ++x) {
      for (std::size_t y = 0; y < F.node_count(); ++y) {
        mass.push_back(outer.weight(x) * F.space().weight(y));
        vecs.push_back(weights[i][x] * F.vectors()[y]);
      }
    }
    product.emplace_back(MeasureSpace(std::move(mass)), std::move(vecs));
  }
  return LiftedProduct{WovenFamily(std::move(fusion)), std::move(product),
                       inner, weights, outer};
}

WeavingTerms product_weaving_terms(const LiftedProduct& lifted) {
  const std::size_t m = lifted.inner.size();
  const std::size_t n = lifted.outer.size();
  WeavingTerms t(m, n, lifted.fusion.ambient_dim());
  for (std::size_t i = 0; i < m; ++i) {
    const Operator S = cframe_operator(lifted.inner[i]);
    for (std::size_t x = 0; x < n; ++x) {
      const double v = lifted.weights[i][x];
      t.term(i, x) = (lifted.outer.weight(x) * v * v) * S;
    }
  }
  return t;
}

}  // namespace cfw
