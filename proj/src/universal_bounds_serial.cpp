// Reference enumeration: one partition at a time, straight from the
// definition, no threading. The parallel kernel must agree with it exactly.

#include <limits>

#include "cfw/weaving.hpp"

namespace cfw {

UniversalBounds universal_bounds_serial(const WeavingTerms& terms,
                                        std::uint64_t budget) {
  const std::size_t m = terms.member_count();
  const std::size_t n = terms.node_count();
  const std::uint64_t total = checked_partition_count(n, m, budget);

  UniversalBounds out;
  out.lower = std::numeric_limits<double>::infinity();
  out.upper = -std::numeric_limits<double>::infinity();
  for (std::uint64_t k = 0; k < total; ++k) {
    const Partition p = partition_at(k, n, m);
    const FrameBounds b = terms.dim() == 0
                              ? FrameBounds{}
                              : weaving_bounds(terms, p);
    if (b.lower < out.lower) {
      out.lower = b.lower;
      out.lower_witness = p;
    }
    if (b.upper > out.upper) {
      out.upper = b.upper;
      out.upper_witness = p;
    }
  }
  out.certified = true;
  out.evaluated = total;
  return out;
}

}  // namespace cfw
