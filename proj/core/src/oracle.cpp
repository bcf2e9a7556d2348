#include "lrdraw/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace lrdraw {

void ParetoSet::insert(Pair p) {
  auto it = std::lower_bound(
      pairs_.begin(), pairs_.end(), p,
      [](const Pair& a, const Pair& b) { return a.first < b.first; });
  if (it != pairs_.begin() && std::prev(it)->second <= p.second)
    return;  // dominated by a pair with smaller maxLeft
  if (it != pairs_.end() && it->first == p.first && it->second <= p.second)
    return;  // dominated (or tied) at equal maxLeft
  auto last = it;
  while (last != pairs_.end() && last->second >= p.second) ++last;
  it = pairs_.erase(it, last);
  pairs_.insert(it, p);
}

int ParetoSet::bestWidth() const {
  int best = std::numeric_limits<int>::max();
  for (const auto& [a, b] : pairs_) best = std::min(best, a + b + 1);
  return best;
}

namespace {

// Bottom-up Pareto sets over the subtree at `root`. Fills sets and the
// per-node optimum for every node of the subtree.
void computePareto(const BinaryTree& t, int root, std::vector<ParetoSet>& sets,
                   std::vector<int>& w) {
  std::vector<std::pair<int, bool>> stack{{root, false}};
  while (!stack.empty()) {
    auto [v, expanded] = stack.back();
    stack.pop_back();
    if (!expanded) {
      stack.push_back({v, true});
      if (t.left(v) != kNoNode) stack.push_back({t.left(v), false});
      if (t.right(v) != kNoNode) stack.push_back({t.right(v), false});
      continue;
    }
    ParetoSet s;
    if (t.isLeaf(v)) {
      s.insert({0, 0});
    } else {
      int l = t.left(v), r = t.right(v);
      int wl = l == kNoNode ? 0 : w[l];
      int wr = r == kNoNode ? 0 : w[r];
      if (l != kNoNode)
        for (const auto& [a, b] : sets[l].pairs())
          s.insert({a, std::max(b, wr)});
      if (r != kNoNode)
        for (const auto& [a, b] : sets[r].pairs())
          s.insert({std::max(a, wl), b});
    }
    w[v] = s.bestWidth();
    // Antichain bounded by the width range.
    assert(static_cast<int>(s.pairs().size()) <= w[v] + 1);
    sets[v] = std::move(s);
  }
}

// Reused across calls so that repeated queries on small subtrees of a large
// tree (the construct base case) cost O(subtree), not O(tree). Only subtree
// entries are written and they are written before being read, so stale
// contents are harmless.
struct ParetoScratch {
  std::vector<ParetoSet> sets;
  std::vector<int> w;
};

// Small subtree queries share a retained buffer (indexed by node id, so it
// spans the whole tree but only pays the header cost once); large queries get
// a one-shot local allocation — their DP is O(n) anyway, and not routing them
// through the scratch keeps its retained pair storage small.
constexpr int kScratchLimit = 1 << 16;

ParetoScratch& paretoScratch(int n) {
  thread_local ParetoScratch s;
  if (static_cast<int>(s.sets.size()) < n) {
    s.sets.resize(n);
    s.w.resize(n);
  }
  return s;
}

}  // namespace

int wstar(const BinaryTree& tree, int root) {
  if (root == kNoNode) root = tree.root();
  if (tree.subtreeSize(root) <= kScratchLimit) {
    auto& s = paretoScratch(tree.size());
    computePareto(tree, root, s.sets, s.w);
    return s.w[root];
  }
  std::vector<ParetoSet> sets(tree.size());
  std::vector<int> w(tree.size());
  computePareto(tree, root, sets, w);
  return w[root];
}

namespace {

struct BruteForcer {
  const BinaryTree& t;
  std::unordered_map<int, int> memo;
  int best = 0;

  int eval(int v) {
    if (v == kNoNode) return 0;
    auto it = memo.find(v);
    if (it != memo.end()) return it->second;
    int saved = best;
    best = std::numeric_limits<int>::max();
    dfs(v, 0, 0);
    int res = best;
    best = saved;
    memo[v] = res;
    return res;
  }

  void dfs(int u, int maxL, int maxR) {
    if (maxL + maxR + 1 >= best) return;
    int l = t.left(u), r = t.right(u);
    if (l == kNoNode && r == kNoNode) {
      best = maxL + maxR + 1;
      return;
    }
    if (l != kNoNode) dfs(l, maxL, std::max(maxR, eval(r)));
    if (r != kNoNode) dfs(r, std::max(maxL, eval(l)), maxR);
  }
};

}  // namespace

int wstarBruteforce(const BinaryTree& tree, int root) {
  if (root == kNoNode) root = tree.root();
  if (tree.subtreeSize(root) > 24)
    throw std::invalid_argument("wstarBruteforce: guarded at n <= 24");
  BruteForcer bf{tree};
  return bf.eval(root);
}

namespace {

ParetoSet::Pair bestPair(const ParetoSet& s) {
  int bestSum = std::numeric_limits<int>::max();
  ParetoSet::Pair best{0, 0};
  for (const auto& p : s.pairs()) {
    int sum = p.first + p.second;
    if (sum < bestSum) {  // sorted by maxLeft, so first hit is lex-smallest
      bestSum = sum;
      best = p;
    }
  }
  return best;
}

Decomposition extract(const BinaryTree& t, int v, ParetoSet::Pair target,
                      const std::vector<ParetoSet>& sets,
                      const std::vector<int>& w);

Decomposition extractBest(const BinaryTree& t, int v,
                          const std::vector<ParetoSet>& sets,
                          const std::vector<int>& w) {
  return extract(t, v, bestPair(sets[v]), sets, w);
}

Decomposition extract(const BinaryTree& t, int v, ParetoSet::Pair target,
                      const std::vector<ParetoSet>& sets,
                      const std::vector<int>& w) {
  Decomposition d;
  while (!t.isLeaf(v)) {
    int l = t.left(v), r = t.right(v);
    int wl = l == kNoNode ? 0 : w[l];
    int wr = r == kNoNode ? 0 : w[r];
    int pos = static_cast<int>(d.spine.size());
    bool went = false;
    if (l != kNoNode) {
      // Antichain: at most one pair with this maxLeft.
      for (const auto& p : sets[l].pairs()) {
        if (p.first == target.first &&
            std::max(p.second, wr) == target.second) {
          d.spine.push_back(Dir::Left);
          if (r != kNoNode)
            d.hanging.push_back({pos, Side::Right, extractBest(t, r, sets, w)});
          v = l;
          target = p;
          went = true;
          break;
        }
      }
    }
    if (!went && r != kNoNode) {
      for (const auto& p : sets[r].pairs()) {
        if (p.second == target.second &&
            std::max(p.first, wl) == target.first) {
          d.spine.push_back(Dir::Right);
          if (l != kNoNode)
            d.hanging.push_back({pos, Side::Left, extractBest(t, l, sets, w)});
          v = r;
          target = p;
          went = true;
          break;
        }
      }
    }
    if (!went)
      throw std::logic_error("optimalDecomposition: no originating pair");
  }
  return d;
}

}  // namespace

Decomposition optimalDecomposition(const BinaryTree& tree, int root) {
  if (root == kNoNode) root = tree.root();
  if (tree.subtreeSize(root) <= kScratchLimit) {
    auto& s = paretoScratch(tree.size());
    computePareto(tree, root, s.sets, s.w);
    return extractBest(tree, root, s.sets, s.w);
  }
  std::vector<ParetoSet> sets(tree.size());
  std::vector<int> w(tree.size());
  computePareto(tree, root, sets, w);
  return extractBest(tree, root, sets, w);
}

WorstCase worstCaseWidth(int n) {
  if (n < 1 || n > 13)
    throw std::invalid_argument("worstCaseWidth: n must be in [1, 13]");
  int best = 0;
  BinaryTree witness = generateTree(TreeKind::LeftPath, n, 0);
  enumerateTrees(n, [&](const BinaryTree& t) {
    int w = wstar(t);
    if (w > best) {
      best = w;
      witness = t;
    }
  });
  return WorstCase{best, std::move(witness)};
}

}  // namespace lrdraw
