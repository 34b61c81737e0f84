#include "cfw/hilbert.hpp"

#include <algorithm>
#include <cmath>

namespace cfw {

namespace {

double max_abs(const Operator& M) {
  return M.size() == 0 ? 0.0 : M.cwiseAbs().maxCoeff();
}

// Number of singular values above rank_tol * sigma_max.
Index numerical_rank(const Eigen::VectorXd& sv, double rank_tol) {
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double cutoff = rank_tol * sv(0);
  Index r = 0;
  while (r < sv.size() && sv(r) > cutoff) ++r;
  return r;
}

Operator symmetrized(const Operator& S) {
  if (S.rows() != S.cols()) throw InputError("operator is not square");
  const double scale = S.size() == 0 ? 0.0 : S.norm();
  const double asym = (S - S.adjoint()).norm();
  if (asym > 1e-9 * scale)
    throw InputError("operator is not self-adjoint (asymmetry " +
                     std::to_string(asym) + ")");
  return (S + S.adjoint()) * 0.5;
}

}  // namespace

Subspace Subspace::zero(Index ambient_dim) {
  if (ambient_dim <= 0) throw InputError("ambient dimension must be positive");
  return Subspace(Operator(ambient_dim, 0));
}

Subspace Subspace::full(Index ambient_dim) {
  if (ambient_dim <= 0) throw InputError("ambient dimension must be positive");
  return Subspace(Operator::Identity(ambient_dim, ambient_dim));
}

Subspace Subspace::from_orthonormal(Operator basis, double tol) {
  if (basis.rows() <= 0) throw InputError("ambient dimension must be positive");
  if (basis.cols() > basis.rows())
    throw InputError("more basis vectors than the ambient dimension");
  const Operator gram = basis.adjoint() * basis;
  const Operator eye = Operator::Identity(basis.cols(), basis.cols());
  if (max_abs(gram - eye) > tol)
    throw InputError("basis is not orthonormal");
  return Subspace(std::move(basis));
}

Subspace column_span(const Operator& M, double rank_tol) {
  if (M.rows() <= 0) throw InputError("ambient dimension must be positive");
  if (M.cols() == 0) return Subspace::zero(M.rows());
  Eigen::JacobiSVD<Operator> svd(M, Eigen::ComputeThinU);
  const Index r = numerical_rank(svd.singularValues(), rank_tol);
  return Subspace::from_orthonormal(svd.matrixU().leftCols(r), 1e-8);
}

Subspace subspace_from_spanning(std::span<const Vector> vectors,
                                double rank_tol, Index ambient_dim) {
  if (vectors.empty()) return Subspace::zero(ambient_dim);
  const Index d = vectors.front().size();
  if (ambient_dim >= 0 && ambient_dim != d)
    throw InputError("vector dimension differs from ambient dimension");
  Operator M(d, static_cast<Index>(vectors.size()));
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    if (vectors[j].size() != d)
      throw InputError("spanning vectors have mixed dimensions");
    M.col(static_cast<Index>(j)) = vectors[j];
  }
  return column_span(M, rank_tol);
}

Operator projector(const Subspace& V) {
  return V.basis() * V.basis().adjoint();
}

Operator pseudo_inverse(const Operator& U, double rank_tol) {
  if (U.size() == 0) return Operator::Zero(U.cols(), U.rows());
  Eigen::JacobiSVD<Operator> svd(U, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const Index r = numerical_rank(sv, rank_tol);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
  for (Index i = 0; i < r; ++i) inv(i) = 1.0 / sv(i);
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

double operator_norm(const Operator& U) {
  if (U.size() == 0) return 0.0;
  Eigen::JacobiSVD<Operator> svd(U);
  return svd.singularValues()(0);
}

Eigen::VectorXd hermitian_eigenvalues(const Operator& S) {
  const Operator H = symmetrized(S);
  if (H.size() == 0) return Eigen::VectorXd();
  Eigen::SelfAdjointEigenSolver<Operator> es(H, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

EigenExtremes extreme_eigs(const Operator& S) {
  const Eigen::VectorXd ev = hermitian_eigenvalues(S);
  if (ev.size() == 0) return {};
  return {ev(0), ev(ev.size() - 1)};
}

DouglasResult douglas_factor(const Operator& L1, const Operator& L2,
                             double rank_tol) {
  if (L1.rows() != L2.rows())
    throw InputError("Douglas factorization needs a common codomain");
  DouglasResult out;
  out.factor = pseudo_inverse(L2, rank_tol) * L1;
  out.residual = operator_norm(L1 - L2 * out.factor);
  out.feasible = out.residual <= 1e-9 * (1.0 + operator_norm(L1));
  if (out.feasible) {
    const double n = operator_norm(out.factor);
    out.alpha = n * n;
  } else {
    out.factor.resize(0, 0);
  }
  return out;
}

Subspace image_subspace(const Operator& U, const Subspace& V,
                        double rank_tol) {
  if (U.cols() != V.ambient_dim())
    throw InputError("operator columns differ from subspace ambient dimension");
  if (V.dim() == 0) return Subspace::zero(U.rows());
  return column_span(U * V.basis(), rank_tol);
}

Subspace intersect_subspaces(const Subspace& V, const Subspace& W,
                             double /*rank_tol*/) {
  if (V.ambient_dim() != W.ambient_dim())
    throw InputError("subspaces live in different ambient spaces");
  const Index d = V.ambient_dim();
  if (V.dim() == 0 || W.dim() == 0) return Subspace::zero(d);
  // Restricted to V, P_V P_W P_V is B^H P_W B; its unit eigenvalues are the
  // directions of V lying in W.
  const Operator& B = V.basis();
  const Operator C = B.adjoint() * projector(W) * B;
  Eigen::SelfAdjointEigenSolver<Operator> es((C + C.adjoint()) * 0.5);
  const Eigen::VectorXd& ev = es.eigenvalues();
  Index k = 0;
  for (Index i = 0; i < ev.size(); ++i)
    if (ev(i) >= 1.0 - 1e-8) ++k;
  if (k == 0) return Subspace::zero(d);
  return Subspace::from_orthonormal(B * es.eigenvectors().rightCols(k), 1e-8);
}

double psd_margin(const Operator& A, const Operator& B) {
  return extreme_eigs(A - B).min;
}

}  // namespace cfw
