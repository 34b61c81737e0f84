// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "oracles.hpp"

#include "cfw/certify.hpp"
#include "cfw/perturbation.hpp"
#include "cfw/scenario.hpp"

using namespace cfw;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(3);
  s << x;
  return s.str();
}

bool near(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

WovenFamily family(std::uint64_t seed, Index d, std::size_t n, std::size_t m,
                   Index kmax, double mass_min = 1.0, double mass_max = 1.0) {
  RandomFamilyParams p;
  p.dim = d;
  p.nodes = n;
  p.members = m;
  p.dim_min = 1;
  p.dim_max = kmax;
  p.mass_min = mass_min;
  p.mass_max = mass_max;
  p.seed = seed;
  return random_fusion_family(p);
}

/// Members sharing subspaces with weights scaled by (1 + t_i).
WovenFamily scaled_copies(const CFusionFrame& F, const std::vector<double>& t) {
  std::vector<CFusionFrame> out;
  for (double s : t) {
    std::vector<double> v = F.weights();
    for (auto& x : v) x *= 1.0 + s;
    out.emplace_back(F.space(), F.subspaces(), v);
  }
  return WovenFamily(out);
}

/// Truth of a certificate agrees with the brute-force oracle.
bool truth_matches(const Certificate& c, const oracle::Extremes& o) {
  return c.truth && near(c.truth->lower, o.lower, 1e-9) &&
         near(c.truth->upper, o.upper, 1e-9);
}

bool brackets(const Certificate& c) {
  return c.verdict == Verdict::pass && c.truth &&
         c.claimed.lower <= c.truth->lower + 1e-8 &&
         c.claimed.upper >= c.truth->upper - 1e-8;
}

Outcome c1_parseval_pair() {
  const auto t0 = Clock::now();
  Outcome out;
  for (double eps : {0.1, 0.5, 1.0, 2.0}) {
    const auto [phi, psi] = paper_weaving_example(eps);
    for (const CFrame* f : {&phi, &psi}) {
      const auto b = cframe_bounds(*f);
      const auto ev = oracle::spectrum(cframe_operator(*f));
      out.ok &= std::abs(b.lower - 1.0) <= 1e-12 && std::abs(b.upper - 1.0) <= 1e-12;
      out.ok &= std::abs(ev.front() - 1.0) <= 1e-12 && std::abs(ev.back() - 1.0) <= 1e-12;
    }
  }
  const double eps = 0.5;
  const auto u = universal_bounds(paper_weaving_family(eps));
  const double lo = 2.0 * eps * eps / (1.0 + eps * eps);
  const double hi = 2.0 / (1.0 + eps * eps);
  const auto o = oracle::universal(paper_weaving_family(eps));
  out.ok &= u.certified && std::abs(u.lower - lo) <= 1e-9 && std::abs(u.upper - hi) <= 1e-9;
  out.ok &= std::abs(o.lower - lo) <= 1e-9 && std::abs(o.upper - hi) <= 1e-9;
  const double t = seconds_since(t0);
  out.ok &= t < 1.0;
  out.detail = "universal (" + fmt(u.lower) + ", " + fmt(u.upper) + ") in " + fmt(t) + " s";
  return out;
}

Outcome c2_operator_lemmas() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(2002);
  int bad_proj = 0, bad_douglas = 0, bad_pinv = 0, infeasible_seen = 0;
  for (int t = 0; t < 200; ++t) {
    const Index d = 2 + t % 7;
    // pi_V U^H = pi_V U^H pi_{UV}; unitary U also gives pi_{UV} U = U pi_V
    const Operator U = random_gaussian(d, d, rng);
    const Subspace V = random_subspace(d, 1 + static_cast<Index>(rng() % d), rng);
    const Operator PV = oracle::projector_of(V.basis());
    const Operator PUV = oracle::projector_of(U * V.basis());
    const Operator Q = random_unitary(d, rng);
    const Operator PQV = oracle::projector_of(Q * V.basis());
    if ((PV * U.adjoint() - PV * U.adjoint() * PUV).norm() > 1e-9) ++bad_proj;
    if ((PQV * Q - Q * PV).norm() > 1e-9) ++bad_proj;
    const Subspace UV = image_subspace(U, V);
    if ((projector(UV) - PUV).norm() > 1e-9) ++bad_proj;

    // L1 = L2 X is feasible; alpha is the least PSD constant
    const bool square = t % 2 == 0;
    const Index k = square ? d : 1 + static_cast<Index>(rng() % d);
    const Operator L2 = random_gaussian(d, k, rng);
    const Operator L1 = L2 * random_gaussian(k, 1 + t % 4, rng);
    const auto r = douglas_factor(L1, L2);
    const Operator A = L1 * L1.adjoint();
    const Operator B = L2 * L2.adjoint();
    if (!r.feasible || (L1 - L2 * r.factor).norm() > 1e-9 * (1.0 + L1.norm()) ||
        oracle::lambda_min((r.alpha + 1e-8) * B - A) < -1e-9 * A.norm())
      ++bad_douglas;
    if (square && oracle::lambda_min(r.alpha * (1.0 - 1e-6) * B - A) >= 0.0) ++bad_douglas;
    if (square && !near(r.alpha, oracle::alpha_scan(L1, L2), 1e-6)) ++bad_douglas;
    if (k < d) {
      const Operator off = random_gaussian(d, 1, rng);
      if (!douglas_factor(off, L2).feasible) ++infeasible_seen;
      else ++bad_douglas;
    }

    // U U^+ and U^+ U project onto range(U) and range(U^+)
    const Index rank = 1 + static_cast<Index>(rng() % d);
    const Operator R = random_gaussian(d, rank, rng) * random_gaussian(rank, d, rng);
    const Operator Rp = pseudo_inverse(R);
    if ((R * Rp - oracle::projector_of(R)).norm() > 1e-9) ++bad_pinv;
    if ((Rp * R - oracle::projector_of(R.adjoint())).norm() > 1e-9) ++bad_pinv;
    if (oracle::lu_rank(Rp) != rank) ++bad_pinv;
  }
  const double t = seconds_since(t0);
  Outcome out;
  out.ok = bad_proj == 0 && bad_douglas == 0 && bad_pinv == 0 && infeasible_seen > 0 && t < 10.0;
  out.detail = "projection identity failures " + std::to_string(bad_proj) + ", Douglas failures " +
               std::to_string(bad_douglas) + ", pseudo-inverse failures " + std::to_string(bad_pinv) +
               " on 200 instances each, " + std::to_string(infeasible_seen) +
               " infeasible inclusions detected, " + fmt(t) + " s";
  return out;
}

Outcome c3_bessel_sum() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(3003);
  int failures = 0, mismatches = 0;
  std::uint64_t partitions = 0;
  for (int t = 0; t < 200; ++t) {
    const Index d = 2 + static_cast<Index>(rng() % 4);
    const std::size_t m = 2 + rng() % 2;
    const Index kmax = 1 + static_cast<Index>(rng() % std::min<Index>(d, 3));
    const std::size_t nmin = static_cast<std::size_t>((d + kmax - 1) / kmax);
    const std::size_t n = std::max<std::size_t>(nmin, 2 + rng() % 7);
    const auto fam = family(rng(), d, n, m, kmax);
    const auto u = universal_bounds(fam);
    partitions += u.evaluated;
    double sum_b = 0.0;
    for (const auto& F : fam.members()) sum_b += oracle::lambda_max(oracle::frame_operator(F));
    if (!u.certified || u.upper > sum_b + 1e-8) ++failures;
    const auto o = oracle::universal(fam);
    if (!near(u.lower, o.lower, 1e-9) || !near(u.upper, o.upper, 1e-9)) ++mismatches;
    if (certify_bessel_sum(fam).verdict != Verdict::pass) ++failures;
  }
  const double t = seconds_since(t0);
  Outcome out;
  out.ok = failures == 0 && mismatches == 0 && t < 120.0;
  out.detail = std::to_string(failures) + " failures, " + std::to_string(mismatches) +
               " oracle mismatches over 200 families (" + std::to_string(partitions) +
               " partitions), " + fmt(t) + " s";
  return out;
}

struct Tally {
  std::string name;
  int gated = 0;
  int failed = 0;
  int tried = 0;
};

/// Draws instances until `target` pass the gate or the attempt cap is hit.
Tally run_gated(const std::string& name, int target, int cap,
                const std::function<std::optional<bool>(std::uint64_t)>& one) {
  Tally t{name};
  for (std::uint64_t s = 0; t.gated < target && t.tried < cap; ++s) {
    ++t.tried;
    const auto r = one(s);
    if (!r) continue;
    ++t.gated;
    if (!*r) ++t.failed;
  }
  return t;
}

/// Image family with bases from Gram-Schmidt of U V.
WovenFamily image_oracle(const WovenFamily& fam, const Operator& U) {
  std::vector<CFusionFrame> out;
  for (const auto& F : fam.members()) {
    std::vector<Subspace> s;
    for (const auto& V : F.subspaces())
      s.push_back(Subspace::from_orthonormal(oracle::gram_schmidt(U * V.basis())));
    out.emplace_back(F.space(), s, F.weights());
  }
  return WovenFamily(out);
}

Outcome c4_conditional() {
  const auto t0 = Clock::now();
  std::vector<Tally> tallies;

  tallies.push_back(run_gated("operator_image", 50, 400, [](std::uint64_t s) -> std::optional<bool> {
    std::mt19937_64 rng(4000 + s);
    const Index d = 2 + static_cast<Index>(s % 3);
    const auto fam = family(4100 + s, d, 3 + s % 4, 2, 2);
    const Operator U = random_gaussian(d, d, rng);
    const auto c = certify_operator_image(fam, U);
    if (c.hypothesis("rank_U").value() < static_cast<double>(d)) return std::nullopt;
    return brackets(c) && truth_matches(c, oracle::universal(image_oracle(fam, U)));
  }));

  tallies.push_back(run_gated("subset_extension", 50, 400, [](std::uint64_t s) -> std::optional<bool> {
    std::mt19937_64 rng(4200 + s);
    const auto fam = family(4300 + s, 2 + static_cast<Index>(s % 2), 6, 2 + s % 2, 2);
    std::vector<std::size_t> Y;
    for (std::size_t j = 0; j < 6; ++j)
      if (rng() % 3 != 0) Y.push_back(j);
    if (Y.empty()) return std::nullopt;
    const auto c = certify_subset_extension(fam, Y);
    if (c.verdict == Verdict::inapplicable) return std::nullopt;
    return brackets(c) && truth_matches(c, oracle::universal(fam));
  }));

  tallies.push_back(run_gated("removal", 50, 2000, [](std::uint64_t s) -> std::optional<bool> {
    std::mt19937_64 rng(4400 + s);
    const std::size_t n = 5;
    const auto fam = family(4500 + s, 2, n, 2, 2, 0.02, 1.0);
    const std::size_t drop = rng() % n;
    std::vector<std::size_t> Y;
    for (std::size_t j = 0; j < n; ++j)
      if (j != drop) Y.push_back(j);
    const auto c = certify_removal(fam, Y, rng() % 2);
    if (c.verdict == Verdict::inapplicable) return std::nullopt;
    return brackets(c) && truth_matches(c, oracle::universal(fam.restricted(Y)));
  }));

  tallies.push_back(run_gated("closeness_woven", 50, 400, [](std::uint64_t s) -> std::optional<bool> {
    std::mt19937_64 rng(4600 + s);
    std::uniform_real_distribution<double> w(0.5, 2.0);
    const std::size_t m = 2 + s % 2;
    const auto base = family(4700 + s, 3, 4, 2, 2);
    std::vector<CFusionFrame> members{base.member(0)};
    for (std::size_t i = 1; i < m; ++i) {
      std::vector<double> v;
      for (std::size_t j = 0; j < 4; ++j) v.push_back(w(rng));
      members.emplace_back(base.space(), base.member(0).subspaces(), v);
    }
    const WovenFamily fam(members);
    const auto c = certify_closeness_woven(fam);
    if (c.verdict == Verdict::inapplicable) return std::nullopt;
    return brackets(c) && truth_matches(c, oracle::universal(fam));
  }));

  tallies.push_back(run_gated("perturbation", 50, 400, [](std::uint64_t s) -> std::optional<bool> {
    const auto base = family(4800 + s, 3, 4, 2, 2).member(0);
    const double t = 0.01 + 0.01 * static_cast<double>(s % 5);
    const auto fam = s % 3 == 0 ? scaled_copies(base, {0.0, t, -t})
                                : scaled_copies(base, {0.0, t});
    const auto c = certify_perturbation(fam, default_scalars(fam, s % fam.member_count()));
    if (c.verdict == Verdict::inapplicable) return std::nullopt;
    return brackets(c) && truth_matches(c, oracle::universal(fam));
  }));

  tallies.push_back(run_gated("perturbation_chain", 50, 400, [](std::uint64_t s) -> std::optional<bool> {
    const auto base = family(4900 + s, 3, 4, 2, 2).member(0);
    const double t = 0.01 + 0.005 * static_cast<double>(s % 4);
    const auto fam = scaled_copies(base, {0.0, t, 2.0 * t});
    const auto c = certify_perturbation_chain(fam, default_chain_scalars(fam));
    if (c.verdict == Verdict::inapplicable) return std::nullopt;
    return brackets(c) && truth_matches(c, oracle::universal(fam));
  }));

  // Rank-deficient U lies outside the invertible gate; reported separately.
  int deficient = 0, deficient_fail = 0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    std::mt19937_64 rng(5000 + s);
    const Index d = 2 + static_cast<Index>(s % 3);
    const auto fam = family(5100 + s, d, 3 + s % 4, 2, 2);
    const Operator U = random_gaussian(d, d - 1, rng) * random_gaussian(d - 1, d, rng);
    ++deficient;
    if (certify_operator_image(fam, U).verdict == Verdict::fail) ++deficient_fail;
  }

  const double t = seconds_since(t0);
  Outcome out;
  out.ok = t < 300.0;
  for (const auto& tl : tallies) {
    out.ok &= tl.gated >= 50 && tl.failed == 0;
    out.detail += tl.name + " " + std::to_string(tl.gated - tl.failed) + "/" +
                  std::to_string(tl.gated) + " (" + std::to_string(tl.tried) + " drawn); ";
  }
  out.detail += "rank-deficient operator_image " + std::to_string(deficient_fail) + "/" +
                std::to_string(deficient) + " fail (outside gate); " + fmt(t) + " s";
  return out;
}

/// Coordinate-subspace members: every projector commutes with coordinate
/// projectors.
WovenFamily axis_family(std::uint64_t seed, Index d, std::size_t n) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> w(0.5, 2.0);
  std::vector<CFusionFrame> members;
  for (int i = 0; i < 2; ++i) {
    std::vector<Subspace> subs;
    std::vector<double> v;
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Index> cols;
      for (Index c = 0; c < d; ++c)
        if (rng() % 2 == 0 || c == static_cast<Index>(j % d)) cols.push_back(c);
      Operator B = Operator::Zero(d, static_cast<Index>(cols.size()));
      for (std::size_t c = 0; c < cols.size(); ++c) B(cols[c], static_cast<Index>(c)) = 1.0;
      subs.push_back(Subspace::from_orthonormal(B));
      v.push_back(w(rng));
    }
    members.emplace_back(MeasureSpace::counting(n), subs, v);
  }
  return WovenFamily(members);
}

Outcome c5_intersection() {
  int axis_pass = 0, axis_total = 0, generic_inapp = 0, generic_total = 0,
      false_pass = 0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    const Index d = 2 + static_cast<Index>(s % 3);
    const auto fam = axis_family(6000 + s, d, 3 + s % 3);
    std::mt19937_64 rng(6100 + s);
    std::vector<Index> keep;
    for (Index c = 0; c < d; ++c)
      if (rng() % 2 == 0) keep.push_back(c);
    if (keep.empty()) keep.push_back(0);
    Operator B = Operator::Zero(d, static_cast<Index>(keep.size()));
    for (std::size_t c = 0; c < keep.size(); ++c) B(keep[c], static_cast<Index>(c)) = 1.0;
    const auto c = certify_subspace_intersection(fam, Subspace::from_orthonormal(B));
    ++axis_total;
    if (brackets(c)) ++axis_pass;
  }
  for (std::uint64_t s = 0; s < 20; ++s) {
    std::mt19937_64 rng(6200 + s);
    const Index d = 3 + static_cast<Index>(s % 2);
    const auto fam = family(6300 + s, d, 4, 2, 2);
    const auto c = certify_subspace_intersection(fam, random_subspace(d, 1 + s % 2, rng));
    ++generic_total;
    if (c.verdict == Verdict::inapplicable) ++generic_inapp;
    if (c.verdict == Verdict::pass) ++false_pass;
  }
  Outcome out;
  out.ok = axis_pass == axis_total && axis_total >= 50 && generic_inapp == generic_total &&
           generic_total >= 20 && false_pass == 0;
  out.detail = "axis-aligned " + std::to_string(axis_pass) + "/" + std::to_string(axis_total) +
               " pass, generic " + std::to_string(generic_inapp) + "/" +
               std::to_string(generic_total) + " inapplicable, " +
               std::to_string(false_pass) + " false passes";
  return out;
}

Outcome c6_product() {
  std::mt19937_64 rng(7007);
  std::uniform_real_distribution<double> w(0.5, 2.0);
  int good = 0, total = 0, degenerate = 0;
  for (int t = 0; t < 30; ++t) {
    const Index d = 2 + t % 2;
    const std::size_t outer_n = 1 + t % 2;
    const Index count = std::max<Index>(1, d - 1 + static_cast<Index>(rng() % 4));
    std::vector<CFrame> inner;
    std::vector<std::vector<double>> weights;
    for (int i = 0; i < 2; ++i) {
      const Operator V = random_gaussian(d, count, rng);
      std::vector<Vector> vs;
      for (Index k = 0; k < count; ++k) vs.push_back(V.col(k));
      inner.emplace_back(MeasureSpace::counting(static_cast<std::size_t>(count)), vs);
      std::vector<double> v;
      for (std::size_t x = 0; x < outer_n; ++x) v.push_back(w(rng));
      weights.push_back(v);
    }
    std::vector<double> mass;
    for (std::size_t x = 0; x < outer_n; ++x) mass.push_back(w(rng));
    const MeasureSpace outer(mass);
    const auto lifted = lift_product(inner, outer, weights);
    const auto c = certify_product_equivalence(lifted);
    ++total;
    if (count < d) ++degenerate;

    std::vector<CFrame> prods;
    for (int i = 0; i < 2; ++i) prods.push_back(oracle::product_frame(inner[i], outer, weights[i]));
    const auto po = oracle::product_universal(prods, outer_n);
    const auto fo = oracle::universal(lifted.fusion);
    const double A = c.hypothesis("A").value(), B = c.hypothesis("B").value();
    const double C = c.hypothesis("product_lower").value();
    const double D = c.hypothesis("product_upper").value();
    const double Cf = c.hypothesis("fusion_lower").value();
    const double Df = c.hypothesis("fusion_upper").value();
    bool ok = c.verdict == Verdict::pass;
    ok &= near(C, po.lower, 1e-8) && near(D, po.upper, 1e-8);
    ok &= near(Cf, fo.lower, 1e-8) && near(Df, fo.upper, 1e-8);
    ok &= Cf >= C / B - 1e-8 && Df <= D / A + 1e-8;
    ok &= C >= A * Cf - 1e-8 && D <= B * Df + 1e-8;
    ok &= (C > 1e-9) == (Cf > 1e-9);
    if (ok) ++good;
  }
  Outcome out;
  out.ok = good == total && total >= 25;
  out.detail = std::to_string(good) + "/" + std::to_string(total) + " instances (" +
               std::to_string(degenerate) + " non-spanning, neither side woven)";
  return out;
}

Outcome c7_gabor() {
  std::mt19937_64 rng(8008);
  int good = 0, total = 0;
  for (Index d = 2; d <= 4; ++d)
    for (int t = 0; t < 10; ++t) {
      GaborParams p;
      p.dim = d;
      p.window = random_gaussian(d, 1, rng).col(0);
      p.lattice = GaborParams::full_lattice(d);
      p.alpha = Scalar(1.0 + 0.2 * t, 0.3);
      const auto [F, G] = discrete_gabor(p);
      const double expect = static_cast<double>(d) * p.window.squaredNorm();
      const auto ev = oracle::spectrum(cframe_operator(F));
      const auto bf = cframe_bounds(F);
      const auto bg = cframe_bounds(G);
      const double a2 = std::norm(p.alpha);
      ++total;
      if (std::abs(ev.front() - expect) <= 1e-10 && std::abs(ev.back() - expect) <= 1e-10 &&
          std::abs(bf.lower - expect) <= 1e-10 && std::abs(bf.upper - expect) <= 1e-10 &&
          std::abs(bg.lower - a2 * bf.lower) <= 1e-10 * std::max(1.0, a2 * expect) &&
          std::abs(bg.upper - a2 * bf.upper) <= 1e-10 * std::max(1.0, a2 * expect))
        ++good;
    }
  Outcome out;
  out.ok = good == total;
  out.detail = std::to_string(good) + "/" + std::to_string(total) + " windows";
  return out;
}

Outcome c8_self_consistency() {
  std::mt19937_64 rng(9009);
  int bad_tt = 0, bad_adj = 0, bad_attain = 0;
  for (int t = 0; t < 100; ++t) {
    const Index d = 2 + t % 5;
    const std::size_t n = static_cast<std::size_t>(d) + 1 + t % 3;
    const auto F = family(9100 + t, d, n, 2, std::min<Index>(d, 3), 0.25, 2.0).member(0);
    const Operator S = oracle::frame_operator(F);
    const Operator T = synthesis_matrix(F);
    if ((T * T.adjoint() - S).norm() > 1e-10 * std::max(1.0, S.norm())) ++bad_tt;

    Field f = zero_field(F.space(), d);
    for (std::size_t j = 0; j < n; ++j)
      f.values[j] = projector(F.subspace(j)) * random_gaussian(d, 1, rng).col(0);
    const Vector h = random_gaussian(d, 1, rng).col(0);
    const Scalar lhs = h.dot(synthesis(F, f));
    const Scalar rhs = field_inner(f, analysis(F, h));
    if (std::abs(lhs - rhs) > 1e-10 * std::max(1.0, std::abs(lhs))) ++bad_adj;

    Eigen::SelfAdjointEigenSolver<Operator> es(S);
    const auto b = fusion_bounds(F);
    const Vector lo = es.eigenvectors().col(0);
    const Vector hi = es.eigenvectors().col(d - 1);
    if (std::abs(oracle::quadrature(F, lo) - b.lower) > 1e-6 ||
        std::abs(oracle::quadrature(F, hi) - b.upper) > 1e-6)
      ++bad_attain;
    for (int k = 0; k < 5; ++k) {
      const Vector u = oracle::random_unit(d, rng);
      const double q = oracle::quadrature(F, u);
      if (q < b.lower - 1e-9 || q > b.upper + 1e-9) ++bad_attain;
    }
  }
  Outcome out;
  out.ok = bad_tt == 0 && bad_adj == 0 && bad_attain == 0;
  out.detail = "T T* = S failures " + std::to_string(bad_tt) + ", adjointness failures " +
               std::to_string(bad_adj) + ", attainment failures " +
               std::to_string(bad_attain) + " on 100 frames";
  return out;
}

std::string report_text(const json& scenario) {
  json r = report_to_json(run_scenario(parse_scenario(scenario)));
  r.erase("timings");
  return r.dump(2);
}

Outcome c9_determinism() {
  const std::vector<json> scenarios = {
      json::parse(R"({"instance": {"generator": "random_fusion_family",
                       "params": {"d": 3, "n": 6, "m": 3, "dim_max": 2, "seed": 11}},
                      "checks": ["bessel_sum", "closeness",
                                 {"type": "operator_image", "operator": "random_invertible"},
                                 {"type": "subset", "Y": [0, 2, 4]},
                                 {"type": "removal", "Y": [0, 1, 2, 3, 4], "n": 1},
                                 {"type": "perturbation", "n": 0}, "perturbation_chain"],
                      "seed": 21})"),
      json::parse(R"({"instance": {"generator": "random_fusion_family",
                       "params": {"d": 3, "n": 12, "m": 3, "dim_max": 2, "seed": 5}},
                      "checks": ["bessel_sum"], "strategy": {"budget": 1000,
                      "fallback": "descent", "restarts": 4}, "seed": 33})"),
      json::parse(R"({"instance": {"generator": "random_product",
                       "params": {"d": 2, "inner_nodes": 3, "outer_nodes": 2, "m": 2, "seed": 3}},
                      "checks": ["product_equivalence", "upper_not_optimal"], "seed": 7})"),
      json::parse(R"({"instance": {"generator": "paper_weaving_example",
                       "params": {"epsilon": 0.5}},
                      "checks": ["bessel_sum", "upper_not_optimal", "closeness"], "seed": 1})")};
  int same = 0;
  for (const auto& s : scenarios) {
    const std::string a = report_text(s);
    const std::string b = report_text(s);
    const std::string c = report_text(json::parse(s.dump()));
    if (a == b && a == c) ++same;
  }
  Outcome out;
  out.ok = same == static_cast<int>(scenarios.size());
  out.detail = std::to_string(same) + "/" + std::to_string(scenarios.size()) +
               " scenarios reproduce byte for byte";
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"C1 Parseval weaving pair", c1_parseval_pair},
      {"C2 operator lemma suite", c2_operator_lemmas},
      {"C3 unconditional upper bound", c3_bessel_sum},
      {"C4 conditional certifier soundness", c4_conditional},
      {"C5 intersection gate", c5_intersection},
      {"C6 product equivalence", c6_product},
      {"C7 Gabor tightness", c7_gabor},
      {"C8 numerical self-consistency", c8_self_consistency},
      {"C9 determinism", c9_determinism}};
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.ok) ++failed;
    std::cout << (o.ok ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
