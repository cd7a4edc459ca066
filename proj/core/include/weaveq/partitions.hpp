#ifndef WEAVEQ_PARTITIONS_HPP
#define WEAVEQ_PARTITIONS_HPP

#include <functional>
#include <vector>

#include "weaveq/qcore.hpp"

namespace weaveq::correlations {

/// Multiset of block sizes: parts sorted descending, sum = N.
struct PartitionShape {
  std::vector<int> parts;

  int total() const;
  int max_part() const { return parts.empty() ? 0 : parts.front(); }
};

/// Grouping of sites 1..N into disjoint blocks covering all of them.
/// Canonical form: blocks ordered by smallest element.
struct SetPartition {
  std::vector<qcore::SiteSubset> blocks;

  int max_block_size() const;
};

/// Throws DomainError unless blocks are pairwise disjoint and cover 1..N.
void validate_set_partition(const SetPartition& partition, int n_sites);

/// All integer partitions of N with parts <= kmax, each exactly once,
/// in lexicographically decreasing order of the descending part lists.
std::vector<PartitionShape> enumerate_partition_shapes(int n, int kmax);

/// Streams every set partition of {1..N} whose blocks all have <= kmax
/// elements, exactly once, in lexicographic order of the restricted-growth
/// string. Return false from the visitor to stop early.
void for_each_set_partition(int n, int kmax,
                            const std::function<bool(const SetPartition&)>& visit);

/// Materialized convenience wrapper around for_each_set_partition.
std::vector<SetPartition> enumerate_set_partitions(int n, int kmax);

} // namespace weaveq::correlations

#endif
