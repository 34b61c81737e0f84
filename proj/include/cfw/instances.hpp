#pragma once

// Reproducible instances: the R^2 Parseval weaving pair, a finite Gabor
// system on C^d and random fusion families.

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "cfw/weaving.hpp"

namespace cfw {

/// With delta = (1 + eps^2)^(-1/2), on four unit-mass nodes:
///   Phi = {delta e1, delta eps e1, delta e2, delta eps e2}
///   Psi = {delta eps e1, delta e1, delta eps e2, delta e2}.
std::pair<CFrame, CFrame> paper_weaving_example(double epsilon);

/// Both frames of paper_weaving_example as a two-member fusion family.
WovenFamily paper_weaving_family(double epsilon);

struct GaborParams {
  Index dim = 0;
  Vector window;
  /// (a, b) pairs in Z_d x Z_d; modulation a, translation b.
  std::vector<std::pair<int, int>> lattice;
  /// Scale of the second window; needs |alpha|^2 > 1.
  Scalar alpha = 2.0;

  /// All d^2 pairs, a-major.
  static std::vector<std::pair<int, int>> full_lattice(Index d);
};

/// (E_a T_b g)[t] = exp(2 pi i a t / d) g[(t - b) mod d].
Vector gabor_atom(const Vector& window, int a, int b);

/// F = {E_a T_b g}, G = {E_a T_b (alpha g)} on a counting space with one node
/// per lattice pair.
std::pair<CFrame, CFrame> discrete_gabor(const GaborParams& params);

struct RandomFamilyParams {
  Index dim = 3;
  std::size_t nodes = 4;
  std::size_t members = 2;
  Index dim_min = 1;
  Index dim_max = 1;
  double weight_min = 0.5;
  double weight_max = 2.0;
  /// Node masses, uniform in [mass_min, mass_max]; 1 = counting measure.
  double mass_min = 1.0;
  double mass_max = 1.0;
  std::uint64_t seed = 0;
};

/// Members drawn with orthonormalized complex Gaussian subspaces and uniform
/// weights; members with lambda_min(S_F) < 1e-6 are redrawn.
WovenFamily random_fusion_family(const RandomFamilyParams& params);

/// Entries i.i.d. standard complex Gaussian.
Operator random_gaussian(Index rows, Index cols, std::mt19937_64& rng);
/// Orthonormal basis of a random k-dimensional subspace of C^d.
Subspace random_subspace(Index d, Index k, std::mt19937_64& rng);
/// Haar-distributed unitary.
Operator random_unitary(Index d, std::mt19937_64& rng);

}  // namespace cfw
