#pragma once

// Discretized measure spaces (finite node sets with positive masses) and
// partitions of their nodes into m blocks.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cfw/hilbert.hpp"

namespace cfw {

class MeasureSpace {
 public:
  MeasureSpace() = default;
  explicit MeasureSpace(std::vector<double> weights,
                        std::vector<std::string> labels = {});

  /// n nodes of unit mass.
  static MeasureSpace counting(std::size_t n);

  std::size_t size() const { return weights_.size(); }
  double weight(std::size_t j) const { return weights_[j]; }
  std::span<const double> weights() const { return weights_; }
  const std::vector<std::string>& labels() const { return labels_; }
  double total_mass() const;

  /// Sub-space on the listed nodes, in the listed order.
  MeasureSpace restricted(std::span<const std::size_t> nodes) const;

  bool operator==(const MeasureSpace& other) const {
    return weights_ == other.weights_;
  }

 private:
  std::vector<double> weights_;
  std::vector<std::string> labels_;
};

/// Quadrature sum_j w_j * values_j.
double integrate(const MeasureSpace& space, std::span<const double> values);

/// Assignment of every node to one of `block_count` blocks.
class Partition {
 public:
  Partition() = default;
  Partition(std::size_t block_count, std::vector<std::uint32_t> assignment);

  std::size_t block_count() const { return block_count_; }
  std::size_t node_count() const { return assignment_.size(); }
  std::uint32_t block(std::size_t node) const { return assignment_[node]; }
  const std::vector<std::uint32_t>& assignment() const { return assignment_; }

  /// All nodes to one block.
  static Partition constant(std::size_t node_count, std::size_t block_count,
                            std::uint32_t block);

  auto operator<=>(const Partition&) const = default;

 private:
  std::size_t block_count_ = 1;
  std::vector<std::uint32_t> assignment_;
};

inline constexpr std::uint64_t kDefaultEnumerationBudget = 65536;

/// Raised when m^n exceeds the enumeration budget.
class BudgetExceeded : public InputError {
 public:
  using InputError::InputError;
};

/// m^n, or throws BudgetExceeded when it exceeds `budget`.
std::uint64_t checked_partition_count(std::size_t node_count,
                                      std::size_t block_count,
                                      std::uint64_t budget);

/// The partition with lexicographic rank `index`: node 0 is the most
/// significant base-m digit, so index order equals lexicographic order.
Partition partition_at(std::uint64_t index, std::size_t node_count,
                       std::size_t block_count);

/// Every one of the m^n assignments exactly once, in lexicographic order.
std::vector<Partition> partitions_exhaustive(
    std::size_t node_count, std::size_t block_count,
    std::uint64_t budget = kDefaultEnumerationBudget);

/// Each node uniform over the blocks; deterministic for a fixed seed.
Partition random_partition(std::size_t node_count, std::size_t block_count,
                           std::uint64_t seed);

}  // namespace cfw
