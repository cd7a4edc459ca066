#include "weaveq/partitions.hpp"

#include <algorithm>
#include <numeric>

#include "weaveq/config.hpp"
#include "weaveq/errors.hpp"

namespace weaveq::correlations {

int PartitionShape::total() const {
  return std::accumulate(parts.begin(), parts.end(), 0);
}

int SetPartition::max_block_size() const {
  int m = 0;
  for (const auto& b : blocks) m = std::max(m, b.size());
  return m;
}

void validate_set_partition(const SetPartition& partition, int n_sites) {
  std::vector<bool> seen(n_sites, false);
  int covered = 0;
  for (const auto& b : partition.blocks) {
    for (int s : b.indices) {
      if (s < 1 || s > n_sites)
        throw DomainError("SetPartition: site label out of range");
      if (seen[s - 1]) throw DomainError("SetPartition: blocks overlap");
      seen[s - 1] = true;
      ++covered;
    }
  }
  if (covered != n_sites)
    throw DomainError("SetPartition: blocks do not cover 1..N");
}

namespace {

void shapes_rec(int remaining, int max_next, std::vector<int>& acc,
                std::vector<PartitionShape>& out) {
  if (remaining == 0) {
    out.push_back(PartitionShape{acc});
    return;
  }
  for (int part = std::min(remaining, max_next); part >= 1; --part) {
    acc.push_back(part);
    shapes_rec(remaining - part, part, acc, out);
    acc.pop_back();
  }
}

} // namespace

std::vector<PartitionShape> enumerate_partition_shapes(int n, int kmax) {
  if (n < 1) throw DomainError("enumerate_partition_shapes: N must be >= 1");
  if (kmax < 1 || kmax > n)
    throw DomainError("enumerate_partition_shapes: kmax must lie in 1..N");
  std::vector<PartitionShape> out;
  std::vector<int> acc;
  shapes_rec(n, kmax, acc, out);
  return out;
}

namespace {

// Restricted-growth-string recursion with a per-block size cap. Element i
// joins block a[i] where a[i] <= (blocks used so far); sizes tracked along
// the way so capped branches are pruned, not filtered.
struct RgsEnumerator {
  int n;
  int kmax;
  const std::function<bool(const SetPartition&)>& visit;
  std::vector<int> assignment;
  std::vector<int> block_sizes;
  bool stopped = false;

  RgsEnumerator(int n_, int kmax_,
                const std::function<bool(const SetPartition&)>& v)
      : n(n_), kmax(kmax_), visit(v), assignment(n_, 0) {}

  void run() {
    block_sizes.clear();
    recurse(0);
  }

  void recurse(int i) {
    if (stopped) return;
    if (i == n) {
      emit();
      return;
    }
    const int used = static_cast<int>(block_sizes.size());
    for (int b = 0; b <= used && !stopped; ++b) {
      const bool fresh = (b == used);
      if (!fresh && block_sizes[b] == kmax) continue;
      assignment[i] = b;
      if (fresh)
        block_sizes.push_back(1);
      else
        ++block_sizes[b];
      recurse(i + 1);
      if (fresh)
        block_sizes.pop_back();
      else
        --block_sizes[b];
    }
  }

  void emit() {
    SetPartition p;
    p.blocks.resize(block_sizes.size());
    for (int i = 0; i < n; ++i)
      p.blocks[assignment[i]].indices.push_back(i + 1);
    if (!visit(p)) stopped = true;
  }
};

} // namespace

void for_each_set_partition(
    int n, int kmax, const std::function<bool(const SetPartition&)>& visit) {
  if (n < 1) throw DomainError("for_each_set_partition: N must be >= 1");
  if (kmax < 1 || kmax > n)
    throw DomainError("for_each_set_partition: kmax must lie in 1..N");
  if (n > config::dense_cap())
    throw CapacityError("for_each_set_partition: N exceeds dense cap");
  RgsEnumerator(n, kmax, visit).run();
}

std::vector<SetPartition> enumerate_set_partitions(int n, int kmax) {
  std::vector<SetPartition> out;
  for_each_set_partition(n, kmax, [&](const SetPartition& p) {
    out.push_back(p);
    return true;
  });
  return out;
}

} // namespace weaveq::correlations
