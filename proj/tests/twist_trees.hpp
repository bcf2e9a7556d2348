#pragma once

// Tree builders shared by the construct tests and the acceptance runner:
// hand-shaped trees that drive the spine walk into its twist cases.

#include <cmath>
#include <random>
#include <vector>

#include "lrdraw/tree.hpp"

namespace twist_trees {

inline int appendSubtree(std::vector<lrdraw::BinaryTree::Node>& nodes,
                         const lrdraw::BinaryTree& t, int root) {
  int id = static_cast<int>(nodes.size());
  nodes.push_back({});
  int l = t.left(root), r = t.right(root);
  if (l != lrdraw::kNoNode) nodes[id].left = appendSubtree(nodes, t, l);
  if (r != lrdraw::kNoNode) nodes[id].right = appendSubtree(nodes, t, r);
  return id;
}

// Escalating left hangings (~0.002n, 0.02n, 0.2n), one ~0.2n right hanging,
// then a near-balanced terminal branch. Proportions and subtree shapes are
// jittered per seed; about half the seeds make the top-level walk twist.
inline lrdraw::BinaryTree cascadeTree(int n, std::uint64_t seed) {
  using lrdraw::BinaryTree;
  std::mt19937_64 rng(seed);
  auto frac = [&](double f) {
    std::uniform_real_distribution<double> d(0.85, 1.15);
    return std::max(1, static_cast<int>(std::lround(f * n * d(rng))));
  };
  int a0 = frac(0.002), a1 = frac(0.02), a2 = frac(0.2), b0 = frac(0.2);
  int rem = n - 5 - a0 - a1 - a2 - b0;
  std::uniform_real_distribution<double> split(0.42, 0.58);
  int left = std::max(1, static_cast<int>(std::lround(rem * split(rng))));
  int right = std::max(1, rem - left);
  std::vector<BinaryTree::Node> nodes;
  auto hang = [&](int parent, bool onLeft, int sz) {
    auto t = lrdraw::generateTree(lrdraw::TreeKind::BstShape, sz, rng());
    int id = appendSubtree(nodes, t, t.root());
    if (onLeft) nodes[parent].left = id; else nodes[parent].right = id;
  };
  int r0 = static_cast<int>(nodes.size()); nodes.push_back({});
  hang(r0, true, a0);
  int r1 = static_cast<int>(nodes.size()); nodes.push_back({});
  nodes[r0].right = r1; hang(r1, true, a1);
  int r2 = static_cast<int>(nodes.size()); nodes.push_back({});
  nodes[r1].right = r2; hang(r2, true, a2);
  int r3 = static_cast<int>(nodes.size()); nodes.push_back({});
  nodes[r2].right = r3; hang(r3, false, b0);
  int tt = static_cast<int>(nodes.size()); nodes.push_back({});
  nodes[r3].left = tt;
  hang(tt, true, left);
  hang(tt, false, right);
  return BinaryTree::fromNodes(std::move(nodes), r0);
}

// Drives the walk into the level-1 right-label twist at slack delta = 0.35:
// one dominant left hanging (level-0 left label), a tiny right hanging whose
// level-1 right segments are empty, a second left hanging that blocks the
// level-1 left condition, then a terminal branch failing both walk cases.
// Proportions are fixed (the conditions are size-driven); the seed only
// varies the hanging subtree shapes.
inline lrdraw::BinaryTree rightTwistTree(int n, std::uint64_t seed) {
  using lrdraw::BinaryTree;
  std::mt19937_64 rng(seed);
  auto frac = [&](double f) {
    return std::max(1, static_cast<int>(std::lround(f * n)));
  };
  int a1 = frac(0.30), b = frac(0.001), a2 = frac(0.01), lSize = frac(0.33);
  int rSize = n - 4 - a1 - b - a2 - lSize;
  std::vector<BinaryTree::Node> nodes;
  auto hang = [&](int parent, bool onLeft, int sz) {
    auto t = lrdraw::generateTree(lrdraw::TreeKind::BstShape, sz, rng());
    int id = appendSubtree(nodes, t, t.root());
    if (onLeft) nodes[parent].left = id; else nodes[parent].right = id;
  };
  int r0 = static_cast<int>(nodes.size()); nodes.push_back({});
  hang(r0, true, a1);
  int r1 = static_cast<int>(nodes.size()); nodes.push_back({});
  nodes[r0].right = r1; hang(r1, false, b);
  int r2 = static_cast<int>(nodes.size()); nodes.push_back({});
  nodes[r1].left = r2; hang(r2, true, a2);
  int tt = static_cast<int>(nodes.size()); nodes.push_back({});
  nodes[r2].right = tt;
  hang(tt, true, lSize);
  hang(tt, false, rSize);
  return BinaryTree::fromNodes(std::move(nodes), r0);
}

inline lrdraw::BinaryTree mirrorTree(const lrdraw::BinaryTree& t) {
  std::vector<lrdraw::BinaryTree::Node> nodes;
  auto rec = [&](auto&& self, int v) -> int {
    int id = static_cast<int>(nodes.size());
    nodes.push_back({});
    if (t.right(v) != lrdraw::kNoNode) nodes[id].left = self(self, t.right(v));
    if (t.left(v) != lrdraw::kNoNode) nodes[id].right = self(self, t.left(v));
    return id;
  };
  int root = rec(rec, t.root());
  return lrdraw::BinaryTree::fromNodes(std::move(nodes), root);
}

// Deterministic 3999-node tree sitting on the boundary between the plain and
// refined twist conditions at slack delta = 0.35: two large right hangings
// first, then two near-equal small left hangings, then a terminal branch with
// |L| slightly above |R|. The level-1 left condition fails in the plain form
// (the max-term sees all of |L|) but holds in the refined form (|L| minus the
// last level-1 label drops to ~|R|), so the refined walk twists at level 1
// while the plain walk escalates to level 2.
inline lrdraw::BinaryTree boundaryTree() {
  using lrdraw::BinaryTree;
  const int n = 4000;
  const int b1 = 720, b0 = 1060, a2 = 15, a3 = 14, rSize = 1086;
  const int lSize = n - 6 - b1 - b0 - a2 - a3 - rSize;
  std::mt19937_64 rng(3);
  std::vector<BinaryTree::Node> nodes;
  auto hang = [&](int parent, bool onLeft, int sz) {
    auto t = lrdraw::generateTree(lrdraw::TreeKind::BstShape, sz, rng());
    int id = appendSubtree(nodes, t, t.root());
    if (onLeft) nodes[parent].left = id; else nodes[parent].right = id;
  };
  int r0 = static_cast<int>(nodes.size()); nodes.push_back({});
  hang(r0, false, b1);
  int r1 = static_cast<int>(nodes.size()); nodes.push_back({});
  nodes[r0].left = r1; hang(r1, false, b0);
  int r2 = static_cast<int>(nodes.size()); nodes.push_back({});
  nodes[r1].left = r2; hang(r2, true, a2);
  int r3 = static_cast<int>(nodes.size()); nodes.push_back({});
  nodes[r2].right = r3; hang(r3, true, a3);
  int tt = static_cast<int>(nodes.size()); nodes.push_back({});
  nodes[r3].right = tt;
  hang(tt, true, lSize);
  hang(tt, false, rSize);
  return BinaryTree::fromNodes(std::move(nodes), r0);
}

}  // namespace twist_trees
