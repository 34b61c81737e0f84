#pragma once

// Finite-dimensional Hilbert-space numerics on C^d: subspaces held as
// orthonormal bases, projections, pseudo-inverses, Douglas factorization
// and extreme eigenvalues of self-adjoint operators.

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cfw {

using Scalar = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Operator = Eigen::MatrixXcd;
using Index = Eigen::Index;

/// Relative singular-value cutoff used when deciding numerical rank.
inline constexpr double kRankTol = 1e-10;

/// Raised for malformed or inconsistent inputs (dimension, length, domain).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Closed subspace of C^d stored as a d x k matrix with orthonormal columns.
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(Index ambient_dim);
  static Subspace full(Index ambient_dim);
  /// Wraps a basis that is already orthonormal; throws if it is not.
  static Subspace from_orthonormal(Operator basis, double tol = 1e-9);

  Index ambient_dim() const { return basis_.rows(); }
  Index dim() const { return basis_.cols(); }
  const Operator& basis() const { return basis_; }

 private:
  explicit Subspace(Operator basis) : basis_(std::move(basis)) {}

  Operator basis_;
};

/// Orthonormal basis of the column span of M (SVD, relative cutoff).
Subspace column_span(const Operator& M, double rank_tol = kRankTol);

/// Orthonormal basis of the span of the given vectors. An empty list yields a
/// zero subspace of dimension `ambient_dim` (which must then be given).
Subspace subspace_from_spanning(std::span<const Vector> vectors,
                                double rank_tol = kRankTol,
                                Index ambient_dim = -1);

/// Orthogonal projection basis * basis^H.
Operator projector(const Subspace& V);

/// Moore-Penrose pseudo-inverse via SVD.
Operator pseudo_inverse(const Operator& U, double rank_tol = kRankTol);

/// Largest singular value.
double operator_norm(const Operator& U);

struct EigenExtremes {
  double min = 0.0;
  double max = 0.0;
};

/// Smallest and largest eigenvalue of a self-adjoint operator. The input is
/// symmetrized when its asymmetry is at most 1e-9 * ||S||; larger asymmetry
/// is an InputError.
EigenExtremes extreme_eigs(const Operator& S);

/// Eigenvalues of the self-adjoint S in ascending order (same symmetry rule).
Eigen::VectorXd hermitian_eigenvalues(const Operator& S);

/// Outcome of solving L1 = L2 * U. `alpha` is ||U||^2, the least constant
/// with L1 L1^H <= alpha L2 L2^H. Infeasible range inclusion is a value.
struct DouglasResult {
  bool feasible = false;
  Operator factor;
  double alpha = 0.0;
  double residual = 0.0;
};

DouglasResult douglas_factor(const Operator& L1, const Operator& L2,
                             double rank_tol = kRankTol);

/// Closure of U V, for U with as many columns as V's ambient dimension.
Subspace image_subspace(const Operator& U, const Subspace& V,
                        double rank_tol = kRankTol);

/// V intersect W from the eigenvectors of P_V P_W P_V whose eigenvalue is 1
/// within 1e-8.
Subspace intersect_subspaces(const Subspace& V, const Subspace& W,
                             double rank_tol = kRankTol);

/// Smallest eigenvalue of A - B (negative when A <= B fails).
double psd_margin(const Operator& A, const Operator& B);

}  // namespace cfw
