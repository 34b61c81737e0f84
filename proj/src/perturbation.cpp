#include "cfw/perturbation.hpp"

#include <cmath>
#include <sstream>

namespace cfw {

namespace {

constexpr double kHypothesisSlack = 1e-10;

struct MemberBounds {
  std::vector<double> A, B;
};

MemberBounds member_bounds(const WovenFamily& family) {
  MemberBounds mb;
  for (const auto& m : family.members()) {
    const auto b = fusion_bounds(m);
    mb.A.push_back(b.lower);
    mb.B.push_back(b.upper);
  }
  return mb;
}

void check_scalar_lengths(std::size_t expected, const std::vector<double>& l,
                          const std::vector<double>& e,
                          const std::vector<double>& g) {
  if (l.size() != expected || e.size() != expected || g.size() != expected)
    throw InputError("perturbation scalars need " + std::to_string(expected) +
                     " entries each");
  for (const auto* v : {&l, &e, &g})
    for (double x : *v)
      if (!(x >= 0.0)) throw InputError("perturbation scalars must be >= 0");
}

double sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

}  // namespace

double synthesis_distance(const WovenFamily& family, std::size_t i,
                          std::size_t k) {
  if (i >= family.member_count() || k >= family.member_count())
    throw InputError("member index out of range");
  if (i == k) return 0.0;
  return operator_norm(synthesis_matrix(family.member(i)) -
                       synthesis_matrix(family.member(k)));
}

PerturbationScalars default_scalars(const WovenFamily& family, std::size_t n) {
  const std::size_t m = family.member_count();
  if (n >= m) throw InputError("reference member out of range");
  PerturbationScalars s{n, std::vector<double>(m, 0.0),
                        std::vector<double>(m, 0.0),
                        std::vector<double>(m, 0.0)};
  for (std::size_t i = 0; i < m; ++i)
    if (i != n) s.lambda[i] = synthesis_distance(family, n, i);
  return s;
}

ChainScalars default_chain_scalars(const WovenFamily& family) {
  const std::size_t m = family.member_count();
  ChainScalars s{std::vector<double>(m - 1, 0.0),
                 std::vector<double>(m - 1, 0.0),
                 std::vector<double>(m - 1, 0.0)};
  for (std::size_t i = 0; i + 1 < m; ++i)
    s.lambda[i] = synthesis_distance(family, i, i + 1);
  return s;
}

double perturbation_lower_bound(const WovenFamily& family,
                                const PerturbationScalars& s) {
  const std::size_t m = family.member_count();
  if (s.reference >= m) throw InputError("reference member out of range");
  check_scalar_lengths(m, s.lambda, s.eta, s.gamma);
  const auto mb = member_bounds(family);
  const std::size_t n = s.reference;
  const double rn = std::sqrt(mb.B[n]);
  double A = mb.A[n];
  for (std::size_t i = 0; i < m; ++i) {
    if (i == n) continue;
    const double ri = std::sqrt(mb.B[i]);
    A -= (s.lambda[i] + s.eta[i] * rn + s.gamma[i] * ri) * (rn + ri);
  }
  return A;
}

double chain_lower_bound(const WovenFamily& family, const ChainScalars& s) {
  const std::size_t m = family.member_count();
  check_scalar_lengths(m - 1, s.lambda, s.eta, s.gamma);
  const auto mb = member_bounds(family);
  double A = mb.A[0];
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const double a = std::sqrt(mb.B[i]), b = std::sqrt(mb.B[i + 1]);
    A -= (s.lambda[i] + s.eta[i] * a + s.gamma[i] * b) * (a + b);
  }
  return A;
}

Certificate certify_perturbation(const WovenFamily& family,
                                 const PerturbationScalars& s,
                                 const CertifyOptions& opts) {
  Certificate c;
  c.theorem = "perturbation";
  const double A = perturbation_lower_bound(family, s);
  const auto mb = member_bounds(family);
  const std::size_t n = s.reference;
  c.hypotheses = {{"n", static_cast<double>(n + 1)}, {"A", A}};
  double worst = -1e300;
  for (std::size_t i = 0; i < family.member_count(); ++i) {
    if (i == n) continue;
    const std::string k = std::to_string(i + 1);
    const double dist = synthesis_distance(family, n, i);
    const double allowed = s.eta[i] * std::sqrt(mb.B[n]) +
                           s.gamma[i] * std::sqrt(mb.B[i]) + s.lambda[i];
    c.hypotheses.emplace_back("lambda_" + k, s.lambda[i]);
    c.hypotheses.emplace_back("eta_" + k, s.eta[i]);
    c.hypotheses.emplace_back("gamma_" + k, s.gamma[i]);
    c.hypotheses.emplace_back("distance_" + k, dist);
    worst = std::max(worst, dist - allowed);
  }
  c.hypotheses.emplace_back("hypothesis_excess", worst);
  c.hypotheses.emplace_back("sum_B", sum(mb.B));
  if (worst > kHypothesisSlack) {
    c.notes = "hypothesis violated: synthesis distance exceeds its allowance by " +
              fmt(worst);
    return c;
  }
  if (A <= 0.0) {
    c.notes = "inconclusive: A = " + fmt(A) + " is not positive";
    return c;
  }
  c.claimed = {A, sum(mb.B)};
  c.truth = search_bounds(weaving_terms(family), opts);
  bracket(c, opts.tol);
  if (!c.truth->certified) c.notes = "non-exhaustive search (uncertified)";
  return c;
}

Certificate certify_perturbation_chain(const WovenFamily& family,
                                       const ChainScalars& s,
                                       const CertifyOptions& opts) {
  Certificate c;
  c.theorem = "perturbation_chain";
  const double A = chain_lower_bound(family, s);
  const auto mb = member_bounds(family);
  c.hypotheses = {{"A", A}};
  double worst = -1e300;
  for (std::size_t i = 0; i + 1 < family.member_count(); ++i) {
    const std::string k = std::to_string(i + 1);
    const double dist = synthesis_distance(family, i, i + 1);
    const double allowed = s.eta[i] * std::sqrt(mb.B[i]) +
                           s.gamma[i] * std::sqrt(mb.B[i + 1]) + s.lambda[i];
    c.hypotheses.emplace_back("lambda_" + k, s.lambda[i]);
    c.hypotheses.emplace_back("eta_" + k, s.eta[i]);
    c.hypotheses.emplace_back("gamma_" + k, s.gamma[i]);
    c.hypotheses.emplace_back("distance_" + k, dist);
    worst = std::max(worst, dist - allowed);
  }
  c.hypotheses.emplace_back("hypothesis_excess", worst);
  c.hypotheses.emplace_back("sum_B", sum(mb.B));
  if (worst > kHypothesisSlack) {
    c.notes = "hypothesis violated: synthesis distance exceeds its allowance by " +
              fmt(worst);
    return c;
  }
  if (A <= 0.0) {
    c.notes = "inconclusive: A = " + fmt(A) + " is not positive";
    return c;
  }
  c.claimed = {A, sum(mb.B)};
  c.truth = search_bounds(weaving_terms(family), opts);
  bracket(c, opts.tol);
  if (!c.truth->certified) c.notes = "non-exhaustive search (uncertified)";
  return c;
}

}  // namespace cfw
