#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "lrdraw/layout.hpp"
#include "lrdraw/tree.hpp"

namespace lrdraw {

/// Nondominated (maxLeftWidth, maxRightWidth) pairs over spines from a node,
/// kept sorted by maxLeft ascending (hence maxRight strictly descending).
class ParetoSet {
 public:
  using Pair = std::pair<int, int>;

  /// Inserts unless dominated; removes pairs the new one dominates.
  /// First-encountered pair wins exact ties.
  void insert(Pair p);

  const std::vector<Pair>& pairs() const { return pairs_; }
  bool empty() const { return pairs_.empty(); }

  /// min over pairs of maxLeft + maxRight + 1.
  int bestWidth() const;

 private:
  std::vector<Pair> pairs_;
};

/// Literal evaluation of the width recurrence by path enumeration; guarded at
/// subtree size <= 24.
int wstarBruteforce(const BinaryTree& tree, int root = kNoNode);

/// Pareto-frontier dynamic program; agrees with wstarBruteforce everywhere.
int wstar(const BinaryTree& tree, int root = kNoNode);

/// A decomposition attaining wstar. Ties broken by preferring the left child,
/// then the lexicographically smallest (maxLeft, maxRight) pair.
Decomposition optimalDecomposition(const BinaryTree& tree, int root = kNoNode);

struct WorstCase {
  int width = 0;
  BinaryTree witness;
};

/// Exhaustive max of wstar over all n-node trees, n <= 13; the witness is the
/// first maximizer in enumeration order.
WorstCase worstCaseWidth(int n);

}  // namespace lrdraw
