#include "cfw/instances.hpp"

#include <cmath>
#include <numbers>

namespace cfw {

std::pair<CFrame, CFrame> paper_weaving_example(double epsilon) {
  if (!(epsilon > 0.0)) throw InputError("epsilon must be positive");
  const double delta = 1.0 / std::sqrt(1.0 + epsilon * epsilon);
  const Vector e1 = Vector::Unit(2, 0), e2 = Vector::Unit(2, 1);
  const auto space = MeasureSpace::counting(4);
  CFrame phi(space, {delta * e1, delta * epsilon * e1, delta * e2,
                     delta * epsilon * e2});
  CFrame psi(space, {delta * epsilon * e1, delta * e1, delta * epsilon * e2,
                     delta * e2});
  return {std::move(phi), std::move(psi)};
}

WovenFamily paper_weaving_family(double epsilon) {
  auto [phi, psi] = paper_weaving_example(epsilon);
  return WovenFamily({cfusion_from_cframe(phi), cfusion_from_cframe(psi)});
}

std::vector<std::pair<int, int>> GaborParams::full_lattice(Index d) {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) out.emplace_back(a, b);
  return out;
}

Vector gabor_atom(const Vector& window, int a, int b) {
  const Index d = window.size();
  Vector out(d);
  for (Index t = 0; t < d; ++t) {
    const Index src = ((t - b) % d + d) % d;
    const double phase = 2.0 * std::numbers::pi * static_cast<double>(a) *
                         static_cast<double>(t) / static_cast<double>(d);
    out(t) = std::polar(1.0, phase) * window(src);
  }
  return out;
}

std::pair<CFrame, CFrame> discrete_gabor(const GaborParams& params) {
  const Index d = params.dim;
  if (d <= 0 || params.window.size() != d)
    throw InputError("window length must equal the dimension");
  if (params.window.norm() == 0.0) throw InputError("window must be nonzero");
  if (params.lattice.empty()) throw InputError("lattice is empty");
  if (!(std::norm(params.alpha) > 1.0))
    throw InputError("scale alpha needs |alpha|^2 > 1");
  std::vector<Vector> f, g;
  const Vector scaled = params.alpha * params.window;
  for (auto [a, b] : params.lattice) {
    if (a < 0 || a >= d || b < 0 || b >= d)
      throw InputError("lattice pair outside Z_d x Z_d");
    f.push_back(gabor_atom(params.window, a, b));
    g.push_back(gabor_atom(scaled, a, b));
  }
  const auto space = MeasureSpace::counting(params.lattice.size());
  return {CFrame(space, std::move(f)), CFrame(space, std::move(g))};
}

Operator random_gaussian(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Operator M(rows, cols);
  for (Index c = 0; c < cols; ++c)
    for (Index r = 0; r < rows; ++r) {
      const double re = n(rng);
      const double im = n(rng);
      M(r, c) = Scalar(re, im);
    }
  return M;
}

Subspace random_subspace(Index d, Index k, std::mt19937_64& rng) {
  if (k < 0 || k > d) throw InputError("subspace dimension out of range");
  if (k == 0) return Subspace::zero(d);
  const Operator G = random_gaussian(d, k, rng);
  Eigen::HouseholderQR<Operator> qr(G);
  const Operator Q = qr.householderQ() * Operator::Identity(d, k);
  return Subspace::from_orthonormal(Q, 1e-8);
}

Operator random_unitary(Index d, std::mt19937_64& rng) {
  const Operator G = random_gaussian(d, d, rng);
  Eigen::HouseholderQR<Operator> qr(G);
  Operator Q = qr.householderQ();
  // Fix column phases so Q is Haar distributed.
  const Operator R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < d; ++i) {
    const double r = std::abs(R(i, i));
    if (r > 0.0) Q.col(i) *= R(i, i) / r;
  }
  return Q;
}

WovenFamily random_fusion_family(const RandomFamilyParams& p) {
  if (p.dim <= 0) throw InputError("dimension must be positive");
  if (p.nodes == 0) throw InputError("need at least one node");
  if (p.members < 2) throw InputError("need at least two members");
  if (p.dim_min < 1 || p.dim_max > p.dim || p.dim_min > p.dim_max)
    throw InputError("subspace dimension range must lie in [1, d]");
  if (!(p.weight_min > 0.0) || p.weight_min > p.weight_max)
    throw InputError("weight range must be positive and ordered");
  if (!(p.mass_min > 0.0) || p.mass_min > p.mass_max)
    throw InputError("mass range must be positive and ordered");
  if (static_cast<Index>(p.nodes) * p.dim_max < p.dim)
    throw InputError("nodes * max subspace dimension is below d; no member "
                     "can be a frame");

  std::mt19937_64 rng(p.seed);
  std::uniform_real_distribution<double> mass(p.mass_min, p.mass_max);
  std::uniform_real_distribution<double> weight(p.weight_min, p.weight_max);
  std::uniform_int_distribution<Index> subdim(p.dim_min, p.dim_max);

  std::vector<double> masses(p.nodes);
  for (auto& w : masses) w = p.mass_min == p.mass_max ? p.mass_min : mass(rng);
  const MeasureSpace space(masses);

  constexpr int kMaxAttempts = 1000;
  std::vector<CFusionFrame> members;
  for (std::size_t i = 0; i < p.members; ++i) {
    for (int attempt = 0;; ++attempt) {
      if (attempt == kMaxAttempts)
        throw InputError("could not draw a frame member within " +
                         std::to_string(kMaxAttempts) + " attempts");
      std::vector<Subspace> subs;
      std::vector<double> v;
      for (std::size_t j = 0; j < p.nodes; ++j) {
        subs.push_back(random_subspace(p.dim, subdim(rng), rng));
        v.push_back(weight(rng));
      }
      CFusionFrame f(space, std::move(subs), std::move(v));
      if (fusion_bounds(f).lower >= 1e-6) {
        members.push_back(std::move(f));
        break;
      }
    }
  }
  return WovenFamily(std::move(members));
}

}  // namespace cfw
