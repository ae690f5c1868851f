// stallings.hpp
//
// Folded core graphs for finitely generated subgroups of F_N, with
// membership, index detection, and the carried-ray/carried-leaf tests
// used against lamination leaves.

#pragma once

#include <vector>

#include "lamina/ray.hpp"
#include "lamina/word.hpp"

namespace lamina {

class SubgroupGraph {
 public:
  // Wedge of generator loops at the basepoint, folded to a fixpoint and
  // core-trimmed (the basepoint is kept even at degree <= 1).
  static SubgroupGraph build(int rank, const std::vector<ReducedWord>& generators);

  int rank() const { return rank_; }
  int vertices() const { return static_cast<int>(next_.size()) / (2 * rank_); }
  int basepoint() const { return 0; }
  // Target of the edge labelled by `l` at `v`, or -1.
  int step(int v, Letter l) const { return next_[static_cast<std::size_t>(v) * 2 * rank_ + l.code()]; }

  // Membership: w traces a basepoint loop.
  bool accepts(const ReducedWord& w) const;

  struct IndexKind {
    bool finite = false;
    int index = 0;  // vertex count when finite
  };
  // Finite index iff the folded core is N-regular complete.
  IndexKind index_kind() const;

  // Isomorphism as based labelled graphs; folding confluence means any
  // generator order produces the same graph up to this equivalence.
  bool isomorphic(const SubgroupGraph& other) const;

 private:
  SubgroupGraph() = default;
  int rank_ = 0;
  std::vector<int> next_;  // vertices x letter codes, -1 = absent
};

enum class CarryKind { carried, not_carried, undecided };

struct CarryVerdict {
  CarryKind kind = CarryKind::undecided;
  int witness_depth = 0;  // depth by which every start vertex has exited
  std::string note;
};

// X is carried at depth iff some vertex of the core reads
// X.prefix(depth) entirely inside the graph.
CarryVerdict carries_ray(const SubgroupGraph& h, const Ray& x, int depth);

// A leaf is carried when a single start configuration reads both rays:
// scan junction positions of the biinfinite word and test two-sided
// readability for `depth` letters each way.
CarryVerdict carries_leaf(const SubgroupGraph& h, const Ray& x, const Ray& y, int depth,
                          int probe_cap = 4096);

}  // namespace lamina
