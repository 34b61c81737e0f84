#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

#include "cfw/weaving.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cfw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Running extreme with a witness. Ties keep the lexicographically smaller
// assignment so the reduction is independent of evaluation order.
struct Extreme {
  double value;
  std::vector<std::uint32_t> witness;

  bool beats_low(double v, const std::vector<std::uint32_t>& a) const {
    return v < value || (v == value && (witness.empty() || a < witness));
  }
  bool beats_high(double v, const std::vector<std::uint32_t>& a) const {
    return v > value || (v == value && (witness.empty() || a < witness));
  }
};

// Exhaustive variant keyed by partition index (index order is lexicographic).
struct IndexedExtreme {
  double value;
  std::uint64_t index = std::numeric_limits<std::uint64_t>::max();
};

void decode(std::uint64_t index, std::size_t m,
            std::vector<std::uint32_t>& out) {
  for (std::size_t j = out.size(); j-- > 0;) {
    out[j] = static_cast<std::uint32_t>(index % m);
    index /= m;
  }
}

class Evaluator {
 public:
  explicit Evaluator(const WeavingTerms& terms)
      : terms_(terms), solver_(terms.dim()) {}

  std::pair<double, double> operator()(const std::vector<std::uint32_t>& a) {
    if (terms_.dim() == 0) return {0.0, 0.0};
    terms_.assemble_into(a, S_);
    // Same symmetrization as extreme_eigs, so results match the serial path.
    H_ = (S_ + S_.adjoint()) * 0.5;
    solver_.compute(H_, Eigen::EigenvaluesOnly);
    const auto& ev = solver_.eigenvalues();
    return {ev(0), ev(ev.size() - 1)};
  }

 private:
  const WeavingTerms& terms_;
  Operator S_;
  Operator H_;
  Eigen::SelfAdjointEigenSolver<Operator> solver_;
};

UniversalBounds exhaustive(const WeavingTerms& terms, std::uint64_t budget) {
  const std::size_t m = terms.member_count();
  const std::size_t n = terms.node_count();
  const std::uint64_t total = checked_partition_count(n, m, budget);

  IndexedExtreme lo{kInf}, hi{-kInf};
#pragma omp parallel
  {
    IndexedExtreme my_lo{kInf}, my_hi{-kInf};
    Evaluator eval(terms);
    std::vector<std::uint32_t> a(n);
#pragma omp for schedule(static)
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(total); ++k) {
      const auto idx = static_cast<std::uint64_t>(k);
      decode(idx, m, a);
      const auto [mn, mx] = eval(a);
      // Indices ascend within a thread, so strict comparison keeps the
      // smallest index among ties.
      if (mn < my_lo.value) my_lo = {mn, idx};
      if (mx > my_hi.value) my_hi = {mx, idx};
    }
#pragma omp critical(cfw_universal_reduce)
    {
      if (my_lo.value < lo.value ||
          (my_lo.value == lo.value && my_lo.index < lo.index))
        lo = my_lo;
      if (my_hi.value > hi.value ||
          (my_hi.value == hi.value && my_hi.index < hi.index))
        hi = my_hi;
    }
  }
  UniversalBounds out;
  out.lower = lo.value;
  out.upper = hi.value;
  out.lower_witness = partition_at(lo.index, n, m);
  out.upper_witness = partition_at(hi.index, n, m);
  out.certified = true;
  out.evaluated = total;
  return out;
}

UniversalBounds sampled(const WeavingTerms& terms, std::size_t samples,
                        std::uint64_t seed) {
  const std::size_t m = terms.member_count();
  const std::size_t n = terms.node_count();
  if (samples == 0) throw InputError("sampled search needs at least one sample");
  std::vector<std::vector<std::uint32_t>> draws(samples);
  for (std::size_t s = 0; s < samples; ++s)
    draws[s] = random_partition(n, m, seed + s).assignment();

  Extreme lo{kInf, {}}, hi{-kInf, {}};
#pragma omp parallel
  {
    Extreme my_lo{kInf, {}}, my_hi{-kInf, {}};
    Evaluator eval(terms);
#pragma omp for schedule(static)
    for (std::int64_t s = 0; s < static_cast<std::int64_t>(samples); ++s) {
      const auto& a = draws[static_cast<std::size_t>(s)];
      const auto [mn, mx] = eval(a);
      if (my_lo.beats_low(mn, a)) my_lo = {mn, a};
      if (my_hi.beats_high(mx, a)) my_hi = {mx, a};
    }
#pragma omp critical(cfw_universal_reduce)
    {
      if (lo.beats_low(my_lo.value, my_lo.witness)) lo = my_lo;
      if (hi.beats_high(my_hi.value, my_hi.witness)) hi = my_hi;
    }
  }
  UniversalBounds out;
  out.lower = lo.value;
  out.upper = hi.value;
  out.lower_witness = Partition(m, lo.witness);
  out.upper_witness = Partition(m, hi.witness);
  out.certified = false;
  out.evaluated = samples;
  return out;
}

// First-improvement single-node flips. `sign` = +1 descends lambda_min,
// -1 ascends lambda_max.
std::pair<double, std::uint64_t> local_search(
    Evaluator& eval, std::vector<std::uint32_t>& a,
    const std::vector<std::size_t>& order, std::size_t m, bool lower) {
  auto score = [&](const std::vector<std::uint32_t>& x) {
    const auto [mn, mx] = eval(x);
    return lower ? mn : -mx;
  };
  double current = score(a);
  std::uint64_t evaluated = 1;
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t node : order) {
      const std::uint32_t keep = a[node];
      for (std::uint32_t b = 0; b < m; ++b) {
        if (b == keep) continue;
        a[node] = b;
        const double s = score(a);
        ++evaluated;
        if (s < current) {
          current = s;
          improved = true;
          break;
        }
        a[node] = keep;
      }
    }
  }
  return {lower ? current : -current, evaluated};
}

UniversalBounds descent(const WeavingTerms& terms, std::size_t restarts,
                        std::uint64_t seed) {
  const std::size_t m = terms.member_count();
  const std::size_t n = terms.node_count();
  if (restarts == 0) throw InputError("descent search needs at least one restart");

  std::vector<Extreme> lows(restarts, Extreme{kInf, {}});
  std::vector<Extreme> highs(restarts, Extreme{-kInf, {}});
  std::vector<std::uint64_t> counts(restarts, 0);
#pragma omp parallel
  {
    Evaluator eval(terms);
#pragma omp for schedule(dynamic)
    for (std::int64_t r = 0; r < static_cast<std::int64_t>(restarts); ++r) {
      const auto rr = static_cast<std::size_t>(r);
      std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ULL * (rr + 1)));
      std::uniform_int_distribution<std::uint32_t> pick(
          0, static_cast<std::uint32_t>(m - 1));
      std::vector<std::uint32_t> start(n);
      for (auto& b : start) b = pick(rng);
      std::vector<std::size_t> order(n);
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::shuffle(order.begin(), order.end(), rng);

      auto a = start;
      auto [lo, c1] = local_search(eval, a, order, m, true);
      lows[rr] = {lo, a};
      a = start;
      auto [hi, c2] = local_search(eval, a, order, m, false);
      highs[rr] = {hi, a};
      counts[rr] = c1 + c2;
    }
  }
  Extreme lo{kInf, {}}, hi{-kInf, {}};
  std::uint64_t evaluated = 0;
  for (std::size_t r = 0; r < restarts; ++r) {
    if (lo.beats_low(lows[r].value, lows[r].witness)) lo = lows[r];
    if (hi.beats_high(highs[r].value, highs[r].witness)) hi = highs[r];
    evaluated += counts[r];
  }
  UniversalBounds out;
  out.lower = lo.value;
  out.upper = hi.value;
  out.lower_witness = Partition(m, lo.witness);
  out.upper_witness = Partition(m, hi.witness);
  out.certified = false;
  out.evaluated = evaluated;
  return out;
}

}  // namespace

UniversalBounds universal_bounds(const WeavingTerms& terms,
                                 const SearchStrategy& strategy) {
  switch (strategy.kind) {
    case SearchStrategy::Kind::exhaustive:
      return exhaustive(terms, strategy.budget);
    case SearchStrategy::Kind::sampled:
      return sampled(terms, strategy.samples, strategy.seed);
    case SearchStrategy::Kind::descent:
      return descent(terms, strategy.restarts, strategy.seed);
  }
  throw InputError("unknown search strategy");
}

}  // namespace cfw
