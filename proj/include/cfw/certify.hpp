#pragma once

// Certifiers for the weaving theorems. Each computes the theorem's
// hypothesis constants, the bounds the theorem claims, and the true
// universal bounds by partition search, then compares them.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cfw/weaving.hpp"

namespace cfw {

enum class Verdict { pass, fail, inapplicable };

std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

/// One theorem check. A pass means claimed.lower <= truth.lower + tol and
/// claimed.upper >= truth.upper - tol.
struct Certificate {
  std::string theorem;
  std::vector<std::pair<std::string, double>> hypotheses;
  FrameBounds claimed;
  std::optional<UniversalBounds> truth;
  Verdict verdict = Verdict::inapplicable;
  std::string notes;

  std::optional<double> hypothesis(const std::string& name) const;
};

struct CertifyOptions {
  SearchStrategy strategy = SearchStrategy::exhaustive();
  /// When exhaustive enumeration is over budget, fall back to this search
  /// instead of failing. Results are then uncertified.
  bool allow_fallback = false;
  SearchStrategy fallback = SearchStrategy::descent(8, 0);
  /// Bracketing tolerance for claimed vs true bounds.
  double tol = 1e-8;
  double rank_tol = kRankTol;
  /// A lower bound at or below this counts as "not a frame".
  double frame_floor = 1e-9;
  /// Commutator norm allowed by the intersection gate.
  double commute_tol = 1e-8;
};

/// Universal bounds by the configured strategy (and fallback).
UniversalBounds search_bounds(const WeavingTerms& terms,
                              const CertifyOptions& opts);

/// Sets the verdict from claimed vs truth (pass or fail).
void bracket(Certificate& cert, double tol);

/// Upper bound sum_i B_i for every weaving; holds unconditionally.
Certificate certify_bessel_sum(const WovenFamily& family,
                               const CertifyOptions& opts = {});

/// Image family (U F_i(x), v_i(x)) on range(U) against the claimed
/// A ||U^+||^-2 ||U||^-2 and B ||U^+||^2 ||U||^2. `assumed` defaults to the
/// family's own universal bounds.
Certificate certify_operator_image(const WovenFamily& family,
                                   const Operator& U,
                                   std::optional<FrameBounds> assumed = {},
                                   const CertifyOptions& opts = {});

/// (F_i(x) cap W, v_i(x)) on W inherits the family's universal bounds.
/// Inapplicable unless every P_{F_i(x)} commutes with P_W.
Certificate certify_subspace_intersection(const WovenFamily& family,
                                          const Subspace& W,
                                          const CertifyOptions& opts = {});

/// If the family restricted to Y is woven with lower bound A_Y, the whole
/// family is woven with bounds (A_Y, sum_i B_i).
Certificate certify_subset_extension(const WovenFamily& family,
                                     const std::vector<std::size_t>& Y,
                                     const CertifyOptions& opts = {});

/// lambda_max of sum_{i != n} sum_{j not in Y} w_j v_{i,j}^2 P_{i,j}.
double removal_constant(const WovenFamily& family,
                        const std::vector<std::size_t>& Y, std::size_t n);

/// Removing X \ Y keeps a weaving with bounds (A - D, B) when D < A.
/// A user D is clamped up to the optimal constant.
Certificate certify_removal(const WovenFamily& family,
                            const std::vector<std::size_t>& Y, std::size_t n,
                            std::optional<double> user_D = {},
                            const CertifyOptions& opts = {});

/// Least N with (v_i P_i - v_k P_k)^2 <= N v_i^2 P_i and <= N v_k^2 P_k at
/// every node for every pair i != k; +inf when no finite N exists.
double compute_min_closeness_N(const WovenFamily& family,
                               double rank_tol = kRankTol);

/// Claimed lower sum_i A_i / ((m-1)(N+1)+1), upper sum_i B_i.
Certificate certify_closeness_woven(const WovenFamily& family,
                                    std::optional<double> user_N = {},
                                    const CertifyOptions& opts = {});

/// Universal upper strictly below B_1 + B_2 by more than
/// margin_rel * (B_1 + B_2); gaps under the margin are reported, not failed.
Certificate certify_upper_not_optimal(const WovenFamily& family,
                                      double margin_rel = 1e-6,
                                      const CertifyOptions& opts = {});

/// Frame-sequence bounds of a c-frame on its own span: smallest nonzero and
/// largest eigenvalue of its frame operator.
FrameBounds frame_sequence_bounds(const CFrame& frame,
                                  double rank_tol = kRankTol);

/// Compares universal bounds of the lifted fusion family (C', D') with those
/// of the product c-frames (C, D): C' >= C/B, D' <= D/A, C >= A C',
/// D <= B D', and woven-ness of either side matches the other.
Certificate certify_product_equivalence(const LiftedProduct& lifted,
                                        const CertifyOptions& opts = {});

}  // namespace cfw
