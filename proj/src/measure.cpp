#include "cfw/measure.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace cfw {

MeasureSpace::MeasureSpace(std::vector<double> weights,
                           std::vector<std::string> labels)
    : weights_(std::move(weights)), labels_(std::move(labels)) {
  if (weights_.empty()) throw InputError("measure space has no nodes");
  for (double w : weights_)
    if (!(w > 0.0) || !std::isfinite(w))
      throw InputError("node weights must be finite and strictly positive");
  if (!labels_.empty() && labels_.size() != weights_.size())
    throw InputError("label count differs from node count");
}

MeasureSpace MeasureSpace::counting(std::size_t n) {
  return MeasureSpace(std::vector<double>(n, 1.0));
}

double MeasureSpace::total_mass() const {
  return std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

MeasureSpace MeasureSpace::restricted(
    std::span<const std::size_t> nodes) const {
  std::vector<double> w;
  std::vector<std::string> l;
  w.reserve(nodes.size());
  for (std::size_t j : nodes) {
    if (j >= size()) throw InputError("node index out of range");
    w.push_back(weights_[j]);
    if (!labels_.empty()) l.push_back(labels_[j]);
  }
  return MeasureSpace(std::move(w), std::move(l));
}

double integrate(const MeasureSpace& space, std::span<const double> values) {
  if (values.size() != space.size())
    throw InputError("integrand has " + std::to_string(values.size()) +
                     " values for " + std::to_string(space.size()) + " nodes");
  double sum = 0.0;
  for (std::size_t j = 0; j < values.size(); ++j)
    sum += space.weight(j) * values[j];
  return sum;
}

Partition::Partition(std::size_t block_count,
                     std::vector<std::uint32_t> assignment)
    : block_count_(block_count), assignment_(std::move(assignment)) {
  if (block_count_ == 0) throw InputError("partition needs at least one block");
  for (auto b : assignment_)
    if (b >= block_count_) throw InputError("block index out of range");
}

Partition Partition::constant(std::size_t node_count, std::size_t block_count,
                              std::uint32_t block) {
  return Partition(block_count,
                   std::vector<std::uint32_t>(node_count, block));
}

std::uint64_t checked_partition_count(std::size_t node_count,
                                      std::size_t block_count,
                                      std::uint64_t budget) {
  if (block_count == 0) throw InputError("partition needs at least one block");
  std::uint64_t count = 1;
  for (std::size_t j = 0; j < node_count; ++j) {
    if (count > budget / block_count) {
      throw BudgetExceeded(
          std::to_string(block_count) + "^" + std::to_string(node_count) +
          " partitions exceed the enumeration budget of " +
          std::to_string(budget) +
          "; raise the budget or use sampled/descent search");
    }
    count *= block_count;
  }
  return count;
}

Partition partition_at(std::uint64_t index, std::size_t node_count,
                       std::size_t block_count) {
  std::vector<std::uint32_t> a(node_count);
  for (std::size_t j = node_count; j-- > 0;) {
    a[j] = static_cast<std::uint32_t>(index % block_count);
    index /= block_count;
  }
  return Partition(block_count, std::move(a));
}

std::vector<Partition> partitions_exhaustive(std::size_t node_count,
                                             std::size_t block_count,
                                             std::uint64_t budget) {
  const std::uint64_t total =
      checked_partition_count(node_count, block_count, budget);
  std::vector<Partition> out;
  out.reserve(total);
  for (std::uint64_t k = 0; k < total; ++k)
    out.push_back(partition_at(k, node_count, block_count));
  return out;
}

Partition random_partition(std::size_t node_count, std::size_t block_count,
                           std::uint64_t seed) {
  if (block_count == 0) throw InputError("partition needs at least one block");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> pick(
      0, static_cast<std::uint32_t>(block_count - 1));
  std::vector<std::uint32_t> a(node_count);
  for (auto& b : a) b = pick(rng);
  return Partition(block_count, std::move(a));
}

}  // namespace cfw
