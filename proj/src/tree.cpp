#include "frogsim/tree.hpp"

#include <limits>
#include <stdexcept>

namespace frogsim {

namespace {
constexpr std::uint64_t kIdLimit = std::uint64_t{1} << 63;
constexpr std::uint64_t kDenseCap = std::uint64_t{1} << 22;
}  // namespace

std::uint64_t vertices_up_to(int d, int depth) {
  if (d < 2 || depth < 0) throw std::invalid_argument("bad tree size query");
  std::uint64_t total = 0;
  std::uint64_t level = 1;
  for (int k = 0; k <= depth; ++k) {
    if (total > kIdLimit - level) return std::numeric_limits<std::uint64_t>::max();
    total += level;
    if (k < depth) {
      if (level > kIdLimit / static_cast<std::uint64_t>(d)) {
        return std::numeric_limits<std::uint64_t>::max();
      }
      level *= static_cast<std::uint64_t>(d);
    }
  }
  return total;
}

int max_indexable_depth(int d) {
  int depth = 0;
  while (vertices_up_to(d, depth + 1) <= kIdLimit) ++depth;
  return depth;
}

VisitedSet::VisitedSet(std::uint64_t dense_limit)
    : dense_(dense_limit < kDenseCap ? dense_limit : 0, 0) {}

bool VisitedSet::insert(VertexId v) {
  if (v < dense_.size()) {
    if (dense_[v]) return false;
    dense_[v] = 1;
  } else if (!sparse_.insert(v).second) {
    return false;
  }
  ++count_;
  return true;
}

}  // namespace frogsim
