#pragma once

// Perturbation certifiers: distances between synthesis maps and the lower
// bound they imply for every weaving.
//
// Each member's synthesis map is extended to unconstrained weighted fields,
// T_i f = sum_j w_j v_{i,j} P_{i,j} f_j, so that all members share a domain.
// It agrees with T_F on fields with f_j in F_i(x_j).

#include <vector>

#include "cfw/certify.hpp"

namespace cfw {

/// Per-member scalars for a fixed reference member. Entries at `reference`
/// are ignored.
struct PerturbationScalars {
  std::size_t reference = 0;
  std::vector<double> lambda;
  std::vector<double> eta;
  std::vector<double> gamma;
};

/// Scalars for consecutive pairs (i, i+1), each of length m - 1.
struct ChainScalars {
  std::vector<double> lambda;
  std::vector<double> eta;
  std::vector<double> gamma;
};

/// ||T_i - T_k||.
double synthesis_distance(const WovenFamily& family, std::size_t i,
                          std::size_t k);

/// lambda_i = ||T_n - T_i||, eta = gamma = 0.
PerturbationScalars default_scalars(const WovenFamily& family, std::size_t n);
/// lambda_i = ||T_i - T_{i+1}||, eta = gamma = 0.
ChainScalars default_chain_scalars(const WovenFamily& family);

/// A_n - sum_{i != n} (lambda_i + eta_i sqrt(B_n) + gamma_i sqrt(B_i))
///               * (sqrt(B_n) + sqrt(B_i)). May be <= 0.
double perturbation_lower_bound(const WovenFamily& family,
                                const PerturbationScalars& s);

/// A_1 - sum_{i < m} (lambda_i + eta_i sqrt(B_i) + gamma_i sqrt(B_{i+1}))
///               * (sqrt(B_i) + sqrt(B_{i+1})).
double chain_lower_bound(const WovenFamily& family, const ChainScalars& s);

Certificate certify_perturbation(const WovenFamily& family,
                                 const PerturbationScalars& s,
                                 const CertifyOptions& opts = {});

Certificate certify_perturbation_chain(const WovenFamily& family,
                                       const ChainScalars& s,
                                       const CertifyOptions& opts = {});

}  // namespace cfw
