#pragma once

// Heap-indexed vertices of the rooted d-ary tree: root 0, children of v are
// d v + 1 .. d v + d, parent of v > 0 is (v - 1) / d.

#include <cstdint>
#include <unordered_set>
#include <vector>

namespace frogsim {

using VertexId = std::uint64_t;

inline constexpr VertexId kRoot = 0;

constexpr VertexId child_of(VertexId v, int d, std::uint64_t index) {
  return static_cast<VertexId>(d) * v + 1 + index;
}

constexpr VertexId parent_of(VertexId v, int d) {
  return (v - 1) / static_cast<VertexId>(d);
}

constexpr std::uint64_t child_index(VertexId v, int d) {
  return (v - 1) % static_cast<VertexId>(d);
}

// Largest depth whose vertices all have ids below 2^63.
int max_indexable_depth(int d);

// Number of vertices at depth <= depth: (d^(depth+1) - 1) / (d - 1).
std::uint64_t vertices_up_to(int d, int depth);

// Visited flags: a flat byte array for ids below `dense_limit`, a hash set
// for anything beyond.
class VisitedSet {
 public:
  explicit VisitedSet(std::uint64_t dense_limit);

  bool contains(VertexId v) const {
    return v < dense_.size() ? dense_[v] != 0 : sparse_.count(v) != 0;
  }
  // Returns true when v was not yet present.
  bool insert(VertexId v);
  std::size_t size() const { return count_; }

 private:
  std::vector<std::uint8_t> dense_;
  std::unordered_set<VertexId> sparse_;
  std::size_t count_ = 0;
};

}  // namespace frogsim
