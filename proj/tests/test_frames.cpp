#include "doctest.h"

#include <set>

#include "oracles.hpp"

using namespace cfw;

namespace {

const Vector e1 = Vector::Unit(2, 0);
const Vector e2 = Vector::Unit(2, 1);

Subspace span_of(std::initializer_list<Vector> vs) {
  std::vector<Vector> v(vs);
  return subspace_from_spanning(v);
}

Field random_field(const CFusionFrame& F, std::mt19937_64& rng) {
  Field f = zero_field(F.space(), F.ambient_dim());
  for (std::size_t j = 0; j < F.node_count(); ++j) {
    const Operator& B = F.subspace(j).basis();
    f.values[j] = B * random_gaussian(B.cols(), 1, rng).col(0);
  }
  return f;
}

CFusionFrame random_frame(std::mt19937_64& rng, Index d, std::size_t n) {
  std::uniform_real_distribution<double> u(0.5, 2.0);
  std::uniform_int_distribution<Index> k(1, d);
  std::vector<double> mass(n), v(n);
  std::vector<Subspace> subs;
  for (std::size_t j = 0; j < n; ++j) {
    mass[j] = u(rng);
    v[j] = u(rng);
    subs.push_back(random_subspace(d, k(rng), rng));
  }
  return CFusionFrame(MeasureSpace(mass), std::move(subs), std::move(v));
}

}  // namespace

TEST_CASE("MeasureSpace validation and quadrature") {
  CHECK_THROWS_AS(MeasureSpace(std::vector<double>{}), InputError);
  CHECK_THROWS_AS(MeasureSpace({1.0, 0.0}), InputError);
  CHECK_THROWS_AS(MeasureSpace({1.0, -2.0}), InputError);
  CHECK_THROWS_AS(MeasureSpace({1.0, std::nan("")}), InputError);
  const MeasureSpace s({0.5, 2.0, 1.5});
  CHECK(s.total_mass() == doctest::Approx(4.0));
  const std::vector<double> vals{2.0, 1.0, -1.0};
  CHECK(integrate(s, vals) == doctest::Approx(0.5 * 2.0 + 2.0 - 1.5));
  const std::vector<double> short_vals{1.0};
  CHECK_THROWS_AS(integrate(s, short_vals), InputError);
  const std::vector<std::size_t> keep{2, 0};
  const auto r = s.restricted(keep);
  CHECK(r.size() == 2);
  CHECK(r.weight(0) == 1.5);
  CHECK(r.weight(1) == 0.5);
}

TEST_CASE("partition enumeration covers m^n distinct assignments in order") {
  for (std::size_t n : {1u, 3u, 5u})
    for (std::size_t m : {2u, 3u}) {
      const auto all = partitions_exhaustive(n, m);
      std::uint64_t expect = 1;
      for (std::size_t i = 0; i < n; ++i) expect *= m;
      CHECK(all.size() == expect);
      std::set<std::vector<std::uint32_t>> seen;
      for (const auto& p : all) seen.insert(p.assignment());
      CHECK(seen.size() == expect);
      CHECK(std::is_sorted(all.begin(), all.end()));
      for (std::uint64_t i = 0; i < expect; i += 7)
        CHECK(partition_at(i, n, m) == all[i]);
    }
  CHECK_THROWS_AS(partitions_exhaustive(17, 2), BudgetExceeded);
  CHECK_THROWS_AS(checked_partition_count(40, 3, kDefaultEnumerationBudget),
                  BudgetExceeded);
  CHECK(checked_partition_count(16, 2, kDefaultEnumerationBudget) == 65536);
  CHECK(random_partition(9, 3, 4) == random_partition(9, 3, 4));
  CHECK_THROWS_AS(Partition(2, {0, 2}), InputError);
}

TEST_CASE("cframe_bounds examples") {
  const auto [phi, psi] = paper_weaving_example(0.5);
  auto b = cframe_bounds(phi);
  CHECK(b.lower == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(b.upper == doctest::Approx(1.0).epsilon(1e-12));

  b = cframe_bounds(CFrame(MeasureSpace::counting(1), {e1}));
  CHECK(std::abs(b.lower) <= 1e-15);
  CHECK(b.upper == doctest::Approx(1.0));

  b = cframe_bounds(CFrame(MeasureSpace::counting(3), {e1, e1, e2}));
  CHECK(b.lower == doctest::Approx(1.0));
  CHECK(b.upper == doctest::Approx(2.0));
}

TEST_CASE("fusion_frame_operator examples") {
  const CFusionFrame full(MeasureSpace::counting(1), {Subspace::full(2)}, {1.0});
  CHECK((fusion_frame_operator(full) - Operator::Identity(2, 2)).norm() <= 1e-15);

  const CFusionFrame parseval(MeasureSpace::counting(2),
                              {span_of({e1}), span_of({e2})}, {1.0, 1.0});
  CHECK((fusion_frame_operator(parseval) - Operator::Identity(2, 2)).norm() <= 1e-15);
  auto b = fusion_bounds(parseval);
  CHECK(b.lower == doctest::Approx(1.0));
  CHECK(b.upper == doctest::Approx(1.0));

  const CFusionFrame diag(MeasureSpace::counting(2),
                          {span_of({e1}), Subspace::full(2)}, {1.0, 1.0});
  Operator expect = Operator::Zero(2, 2);
  expect(0, 0) = 2.0;
  expect(1, 1) = 1.0;
  CHECK((fusion_frame_operator(diag) - expect).norm() <= 1e-15);
  b = fusion_bounds(diag);
  CHECK(b.lower == doctest::Approx(1.0));
  CHECK(b.upper == doctest::Approx(2.0));
}

TEST_CASE("CFusionFrame validation") {
  CHECK_THROWS_AS(CFusionFrame(MeasureSpace::counting(1), {Subspace::full(2)}, {0.0}),
                  InputError);
  CHECK_THROWS_AS(CFusionFrame(MeasureSpace::counting(2), {Subspace::full(2)}, {1.0}),
                  InputError);
  CHECK_THROWS_AS(CFusionFrame(MeasureSpace::counting(2),
                               {Subspace::full(2), Subspace::full(3)}, {1.0, 1.0}),
                  InputError);
}

TEST_CASE("fusion_bounds against direct quadrature") {
  std::mt19937_64 rng(41);
  const CFusionFrame F = random_frame(rng, 5, 12);
  const auto b = fusion_bounds(F);
  for (int t = 0; t < 100; ++t) {
    const Vector h = oracle::random_unit(5, rng);
    const double q = oracle::quadrature(F, h);
    CHECK(q >= b.lower - 1e-9);
    CHECK(q <= b.upper + 1e-9);
  }
  const Operator S = oracle::frame_operator(F);
  CHECK(b.lower == doctest::Approx(oracle::lambda_min(S)).epsilon(1e-10));
  CHECK(b.upper == doctest::Approx(oracle::lambda_max(S)).epsilon(1e-10));
}

TEST_CASE("bounds are attained at extreme eigenvectors") {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 20; ++t) {
    const CFusionFrame F = random_frame(rng, 4, 6);
    const auto b = fusion_bounds(F);
    Eigen::SelfAdjointEigenSolver<Operator> es(fusion_frame_operator(F));
    const Vector lo = es.eigenvectors().col(0);
    const Vector hi = es.eigenvectors().col(3);
    CHECK(oracle::quadrature(F, lo) == doctest::Approx(b.lower).epsilon(1e-6));
    CHECK(oracle::quadrature(F, hi) == doctest::Approx(b.upper).epsilon(1e-6));
  }
}

TEST_CASE("synthesis and analysis") {
  const CFusionFrame one(MeasureSpace::counting(1), {span_of({e1})}, {2.0});
  Field f = zero_field(one.space(), 2);
  CHECK(synthesis(one, f).norm() == 0.0);
  f.values[0] = e1;
  CHECK((synthesis(one, f) - 2.0 * e1).norm() <= 1e-15);
  f.values[0] = e2;
  CHECK_THROWS_AS(synthesis(one, f), InputError);
  Field other = zero_field(MeasureSpace::counting(2), 2);
  CHECK_THROWS_AS(synthesis(one, other), InputError);

  const CFusionFrame full(MeasureSpace::counting(1), {Subspace::full(2)}, {3.0});
  const Field a = analysis(full, e1);
  CHECK((a.values[0] - 3.0 * e1).norm() <= 1e-15);
  CHECK(analysis(full, Vector::Zero(2)).values[0].norm() == 0.0);
  CHECK_THROWS_AS(analysis(full, Vector::Zero(3)), InputError);

  std::mt19937_64 rng(47);
  for (int t = 0; t < 30; ++t) {
    const CFusionFrame F = random_frame(rng, 4, 5);
    const Field g = random_field(F, rng);
    const Vector h = random_gaussian(4, 1, rng).col(0);
    // weak form: <T f, h> = sum_j w_j v_j <f_j, h>
    Scalar weak = 0.0;
    for (std::size_t j = 0; j < F.node_count(); ++j)
      weak += F.space().weight(j) * F.weight(j) * h.dot(g.values[j]);
    const Vector Tg = synthesis(F, g);
    CHECK(std::abs(h.dot(Tg) - weak) <= 1e-10 * (1.0 + std::abs(weak)));
    // adjointness in the weighted field inner product
    const Scalar lhs = h.dot(Tg);
    const Scalar rhs = field_inner(g, analysis(F, h));
    CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(lhs)));
    // analysis output lies in the subspaces
    const Field a2 = analysis(F, h);
    for (std::size_t j = 0; j < F.node_count(); ++j) {
      const Operator P = projector(F.subspace(j));
      CHECK((P * a2.values[j] - a2.values[j]).norm() <= 1e-10);
    }
  }
}

TEST_CASE("synthesis_matrix reproduces the frame operator") {
  const CFusionFrame one(MeasureSpace({4.0}), {Subspace::full(1)}, {1.0});
  const Operator T1 = synthesis_matrix(one);
  REQUIRE(T1.rows() == 1);
  CHECK(std::abs(T1(0, 0) - Scalar(2.0)) <= 1e-15);

  std::mt19937_64 rng(53);
  for (int t = 0; t < 30; ++t) {
    const CFusionFrame F = random_frame(rng, 3, 4);
    const Operator T = synthesis_matrix(F);
    CHECK(T.cols() == 12);
    CHECK((T * T.adjoint() - fusion_frame_operator(F)).norm() <= 1e-10);
    CHECK(operator_norm(T) == doctest::Approx(std::sqrt(fusion_bounds(F).upper)).epsilon(1e-8));
  }
}

TEST_CASE("cfusion_from_cframe preserves bounds") {
  const auto par = cfusion_from_cframe(CFrame(MeasureSpace::counting(2), {e1, e2}));
  CHECK(fusion_bounds(par).lower == doctest::Approx(1.0));
  CHECK(fusion_bounds(par).upper == doctest::Approx(1.0));

  const auto two = cfusion_from_cframe(CFrame(MeasureSpace::counting(1), {2.0 * e1}));
  CHECK(two.weight(0) == doctest::Approx(2.0));
  CHECK(std::abs(fusion_bounds(two).lower) <= 1e-15);
  CHECK(fusion_bounds(two).upper == doctest::Approx(4.0));

  CHECK_THROWS_AS(cfusion_from_cframe(CFrame(MeasureSpace::counting(1), {Vector::Zero(2)})),
                  InputError);

  std::mt19937_64 rng(59);
  for (int t = 0; t < 30; ++t) {
    const Operator V = random_gaussian(3, 5, rng);
    std::vector<Vector> vs;
    for (Index c = 0; c < 5; ++c) vs.push_back(V.col(c));
    const CFrame phi(MeasureSpace({1.0, 0.5, 2.0, 1.5, 0.25}), vs);
    const auto fb = fusion_bounds(cfusion_from_cframe(phi));
    const auto cb = cframe_bounds(phi);
    CHECK(fb.lower == doctest::Approx(cb.lower).epsilon(1e-9));
    CHECK(fb.upper == doctest::Approx(cb.upper).epsilon(1e-9));
    // pointwise: v^2 ||P h||^2 = |<h, F>|^2
    const auto F = cfusion_from_cframe(phi);
    const Vector h = random_gaussian(3, 1, rng).col(0);
    for (std::size_t j = 0; j < 5; ++j) {
      const double lhs = F.weight(j) * F.weight(j) *
                         (projector(F.subspace(j)) * h).squaredNorm();
      CHECK(lhs == doctest::Approx(std::norm(vs[j].dot(h))).epsilon(1e-10));
    }
  }
}

TEST_CASE("Parseval detection") {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 30; ++t) {
    const bool make_parseval = t % 2 == 0;
    CFusionFrame F = random_frame(rng, 3, 4);
    if (make_parseval) {
      const Operator Q = random_unitary(3, rng);
      std::vector<Subspace> subs;
      for (Index c = 0; c < 3; ++c) subs.push_back(column_span(Q.col(c)));
      F = CFusionFrame(MeasureSpace::counting(3), subs, {1.0, 1.0, 1.0});
    }
    const auto b = fusion_bounds(F);
    const bool bounds_one = std::abs(b.lower - 1.0) <= 1e-9 && std::abs(b.upper - 1.0) <= 1e-9;
    const bool identity =
        (fusion_frame_operator(F) - Operator::Identity(3, 3)).norm() <= 1e-8;
    CHECK(bounds_one == identity);
    CHECK(identity == make_parseval);
  }
}
