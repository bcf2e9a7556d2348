#include "lrdraw/construct.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

#include "lrdraw/oracle.hpp"

namespace lrdraw {

namespace {

double powp(int s, double p) {
  return s <= 0 ? 0.0 : std::pow(static_cast<double>(s), p);
}

int stepChild(const BinaryTree& t, int v, Dir d) {
  return d == Dir::Left ? t.left(v) : t.right(v);
}

int siblingChild(const BinaryTree& t, int v, Dir d) {
  return d == Dir::Left ? t.right(v) : t.left(v);
}

}  // namespace

RulerLabels rulerLabels(const BinaryTree& tree,
                        const std::vector<int>& spineNodes,
                        const std::vector<Dir>& dirs, Side side, int h) {
  RulerLabels labels;
  labels.side = side;
  // Same-side hangings, by spine position (ascending).
  std::vector<RulerEntry> hang;
  for (int j = 0; j < static_cast<int>(dirs.size()); ++j) {
    int sib = siblingChild(tree, spineNodes[j], dirs[j]);
    if (sib == kNoNode || hangingSide(dirs[j]) != side) continue;
    hang.push_back({j, sib, tree.subtreeSize(sib)});
  }

  struct Segment {
    int lo = 1, hi = 0;  // position range; lo > hi means empty
  };
  auto largestIn = [&](const Segment& seg) {
    RulerEntry best;
    auto first = std::lower_bound(
        hang.begin(), hang.end(), seg.lo,
        [](const RulerEntry& e, int lo) { return e.pos < lo; });
    for (auto it = first; it != hang.end() && it->pos <= seg.hi; ++it)
      if (!best.present() || it->size > best.size) best = *it;  // topmost wins ties
    return best;
  };

  std::vector<Segment> segs{
      {0, static_cast<int>(dirs.size()) - 1}};
  for (int i = 0; i <= h; ++i) {
    std::vector<RulerEntry> level;
    std::vector<Segment> next;
    level.reserve(segs.size());
    next.reserve(segs.size() * 2);
    for (const Segment& seg : segs) {
      RulerEntry e = largestIn(seg);
      level.push_back(e);
      if (e.present()) {
        next.push_back({seg.lo, e.pos - 1});
        next.push_back({e.pos + 1, seg.hi});
      } else {
        next.push_back({1, 0});
        next.push_back({1, 0});
      }
    }
    labels.levels.push_back(std::move(level));
    segs = std::move(next);
  }
  return labels;
}

bool twistCondition(const RulerLabels& labels, int i, int lSize, int rSize,
                    const ConstructParams& params, int n) {
  const auto& level = labels.levels[i];
  double lhs = 0;
  for (const RulerEntry& e : level) lhs += powp(e.size, params.p);
  if (!params.refined) {
    lhs += powp(std::max(lSize, rSize), params.p);
  } else {
    int last = level.back().size;
    if (labels.side == Side::Left)
      lhs += powp(std::max(lSize - last, rSize), params.p);
    else
      lhs += powp(std::max(lSize, rSize - last), params.p);
  }
  return lhs <= (1.0 - params.delta) * powp(n, params.p);
}

GrowResult growSpine(const BinaryTree& tree, int root,
                     const ConstructParams& params,
                     ConstructDiagnostics* diag) {
  ConstructDiagnostics local;
  if (!diag) diag = &local;
  const int n = tree.subtreeSize(root);
  const double thresh = (1.0 - params.delta) * powp(n, params.p);

  GrowResult g;
  g.spineNodes.push_back(root);
  int alpha = 0, beta = 0;  // largest left/right hanging subtree so far
  for (;;) {
    int v = g.spineNodes.back();
    if (tree.isLeaf(v)) {
      g.action = TerminalAction::PlainSpine;
      ++diag->plainSpine;
      return g;
    }
    int l = tree.left(v), r = tree.right(v);
    int ls = tree.subtreeSize(l), rs = tree.subtreeSize(r);

    auto stepLeft = [&] {
      g.dirs.push_back(Dir::Left);
      g.spineNodes.push_back(l);
      beta = std::max(beta, rs);
    };
    auto stepRight = [&] {
      g.dirs.push_back(Dir::Right);
      g.spineNodes.push_back(r);
      alpha = std::max(alpha, ls);
    };

    double lhs1 = powp(alpha, params.p) + powp(rs, params.p);
    double lhs2 = powp(beta, params.p) + powp(ls, params.p);
    if (l != kNoNode && lhs1 <= thresh) {
      ++diag->case1;
      stepLeft();
      continue;
    }
    if (r != kNoNode && lhs2 <= thresh) {
      ++diag->case2;
      stepRight();
      continue;
    }

    if (l == kNoNode || r == kNoNode) {
      // Reachable only once the invariant is already broken (after an earlier
      // fallback); keep the spine growing through the only child.
      ++diag->fallback;
      g.fallbackUsed = true;
      if (l != kNoNode)
        stepLeft();
      else
        stepRight();
      continue;
    }

    RulerLabels labL = rulerLabels(tree, g.spineNodes, g.dirs, Side::Left,
                                   params.h);
    RulerLabels labR = rulerLabels(tree, g.spineNodes, g.dirs, Side::Right,
                                   params.h);
    bool twisted = false;
    for (int i = 1; i <= params.h && !twisted; ++i) {
      if (twistCondition(labL, i, ls, rs, params, n)) {
        g.action = TerminalAction::Twist;
        g.twistLevel = i;
        g.twistSide = Side::Left;
        ++diag->case3;
        twisted = true;
      } else if (twistCondition(labR, i, ls, rs, params, n)) {
        g.action = TerminalAction::Twist;
        g.twistLevel = i;
        g.twistSide = Side::Right;
        ++diag->case4;
        twisted = true;
      }
    }
    if (twisted) return g;

    // No case holds (below the lemma's asymptotic regime): apply the action
    // with the smallest left-hand side and keep going.
    ++diag->fallback;
    g.fallbackUsed = true;
    auto caseLhs = [&](const RulerLabels& lab, int i) {
      const auto& level = lab.levels[i];
      double s = 0;
      for (const RulerEntry& e : level) s += powp(e.size, params.p);
      if (!params.refined) return s + powp(std::max(ls, rs), params.p);
      int last = level.back().size;
      return lab.side == Side::Left
                 ? s + powp(std::max(ls - last, rs), params.p)
                 : s + powp(std::max(ls, rs - last), params.p);
    };
    double best = std::numeric_limits<double>::infinity();
    int bestAction = 0;  // 1/2 = step, 3/4 = twist
    int bestLevel = 1;
    if (l != kNoNode && lhs1 < best) best = lhs1, bestAction = 1;
    if (r != kNoNode && lhs2 < best) best = lhs2, bestAction = 2;
    for (int i = 1; i <= params.h; ++i) {
      double c3 = caseLhs(labL, i);
      if (c3 < best) best = c3, bestAction = 3, bestLevel = i;
      double c4 = caseLhs(labR, i);
      if (c4 < best) best = c4, bestAction = 4, bestLevel = i;
    }
    switch (bestAction) {
      case 1:
        stepLeft();
        continue;
      case 2:
        stepRight();
        continue;
      case 3:
      case 4:
        g.action = TerminalAction::Twist;
        g.twistLevel = bestLevel;
        g.twistSide = bestAction == 3 ? Side::Left : Side::Right;
        return g;
      default:
        // Unreachable: a non-leaf always has at least one child.
        assert(false);
        g.action = TerminalAction::PlainSpine;
        return g;
    }
  }
}

namespace {

std::vector<int> alignedPath(const BinaryTree& t, int root, Dir preferred) {
  std::vector<int> path{root};
  int v = root;
  while (!t.isLeaf(v)) {
    int next = stepChild(t, v, preferred);
    if (next == kNoNode)
      next = stepChild(t, v, preferred == Dir::Left ? Dir::Right : Dir::Left);
    path.push_back(next);
    v = next;
  }
  return path;
}

std::vector<int> refinedPath(const BinaryTree& t, int root, int cap,
                             Side side) {
  // side == Left: this is pi' inside L; small left subtrees step right.
  std::vector<int> path{root};
  int v = root;
  while (!t.isLeaf(v)) {
    int small = side == Side::Left ? t.left(v) : t.right(v);
    int next;
    if (t.subtreeSize(small) <= cap) {
      next = side == Side::Left ? t.right(v) : t.left(v);
      if (next == kNoNode) next = small;
    } else {
      next = small;  // size > cap >= 0, so it exists
    }
    path.push_back(next);
    v = next;
  }
  return path;
}

Decomposition constructAt(const BinaryTree& tree, int root,
                          const ConstructParams& params,
                          ConstructDiagnostics* diag);

// Appends the steps of a root-to-leaf path (path[0] must already be the next
// spine node of d), hanging every sibling subtree via construct.
void appendPath(Decomposition& d, const BinaryTree& tree,
                const std::vector<int>& path, const ConstructParams& params,
                ConstructDiagnostics* diag) {
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    int v = path[k];
    Dir dir = path[k + 1] == tree.left(v) ? Dir::Left : Dir::Right;
    int pos = static_cast<int>(d.spine.size());
    d.spine.push_back(dir);
    int sib = siblingChild(tree, v, dir);
    if (sib != kNoNode)
      d.hanging.push_back(
          {pos, hangingSide(dir), constructAt(tree, sib, params, diag)});
  }
}

struct TwistContext {
  const BinaryTree& tree;
  const std::vector<int>& spineNodes;
  const std::vector<Dir>& dirs;
  std::vector<int> pulled;  // spine positions of levels < i entries, ascending
  Side side;                // labels side; Left => i-right-twist
  int cap;                  // refined cap, or -1
  const ConstructParams& params;
  ConstructDiagnostics* diag;
};

// Decomposition of the subtree rooted at spineNodes[start]; pulled[sIdx..]
// are the divert points still ahead.
Decomposition buildTwisted(const TwistContext& cx, int start,
                           std::size_t sIdx) {
  const BinaryTree& t = cx.tree;
  Decomposition d;
  const int last = static_cast<int>(cx.dirs.size());  // index of v_t
  const int stop =
      sIdx < cx.pulled.size() ? cx.pulled[sIdx] : last;
  for (int j = start; j < stop; ++j) {
    int v = cx.spineNodes[j];
    Dir dir = cx.dirs[j];
    int pos = static_cast<int>(d.spine.size());
    d.spine.push_back(dir);
    int sib = siblingChild(t, v, dir);
    if (sib != kNoNode)
      d.hanging.push_back({pos, hangingSide(dir),
                           constructAt(t, sib, cx.params, cx.diag)});
  }

  const Dir divert = cx.side == Side::Left ? Dir::Left : Dir::Right;
  if (sIdx < cx.pulled.size()) {
    // Bend into the pulled subtree; the rest of the original spine hangs on
    // the opposite side and is decomposed by the same rule.
    int v = cx.spineNodes[stop];
    int pulledRoot = stepChild(t, v, divert);
    assert(pulledRoot != kNoNode && cx.dirs[stop] != divert);
    int pos = static_cast<int>(d.spine.size());
    d.spine.push_back(divert);
    d.hanging.push_back(
        {pos, hangingSide(divert), buildTwisted(cx, stop + 1, sIdx + 1)});
    appendPath(d, t, alignedPath(t, pulledRoot, divert), cx.params, cx.diag);
    return d;
  }

  // Past the last divert point: step from v_t into the kept child and align a
  // path inside it; the other child hangs, recursively constructed.
  int vt = cx.spineNodes[last];
  int kept = stepChild(t, vt, divert);
  int other = siblingChild(t, vt, divert);
  assert(kept != kNoNode && other != kNoNode);
  int pos = static_cast<int>(d.spine.size());
  d.spine.push_back(divert);
  d.hanging.push_back(
      {pos, hangingSide(divert), constructAt(t, other, cx.params, cx.diag)});
  std::vector<int> path = cx.cap >= 0
                              ? refinedPath(t, kept, cx.cap, cx.side)
                              : alignedPath(t, kept, divert);
  appendPath(d, t, path, cx.params, cx.diag);
  return d;
}

std::vector<int> pulledPositions(const RulerLabels& labels, int level) {
  std::vector<int> pulled;
  for (int l = 0; l < level; ++l)
    for (const RulerEntry& e : labels.levels[l])
      if (e.present()) pulled.push_back(e.pos);
  std::sort(pulled.begin(), pulled.end());
  return pulled;
}

Decomposition constructAt(const BinaryTree& tree, int root,
                          const ConstructParams& params,
                          ConstructDiagnostics* diag) {
  if (tree.subtreeSize(root) <= params.n0) {
    if (diag) ++diag->baseCase;
    return optimalDecomposition(tree, root);
  }
  GrowResult g = growSpine(tree, root, params, diag);
  if (g.action == TerminalAction::PlainSpine) {
    Decomposition d;
    d.spine = g.dirs;
    for (int j = 0; j < static_cast<int>(g.dirs.size()); ++j) {
      int sib = siblingChild(tree, g.spineNodes[j], g.dirs[j]);
      if (sib != kNoNode)
        d.hanging.push_back({j, hangingSide(g.dirs[j]),
                             constructAt(tree, sib, params, diag)});
    }
    return d;
  }
  RulerLabels labels =
      rulerLabels(tree, g.spineNodes, g.dirs, g.twistSide, params.h);
  int cap = params.refined
                ? labels.levels[g.twistLevel].back().size
                : -1;
  TwistContext cx{tree,        g.spineNodes,
                  g.dirs,      pulledPositions(labels, g.twistLevel),
                  g.twistSide, cap,
                  params,      diag};
  return buildTwisted(cx, 0, 0);
}

}  // namespace

std::vector<int> refinedLeftPath(const BinaryTree& tree, int root, int cap) {
  return refinedPath(tree, root, cap, Side::Left);
}

std::vector<int> refinedRightPath(const BinaryTree& tree, int root, int cap) {
  return refinedPath(tree, root, cap, Side::Right);
}

Decomposition construct(const BinaryTree& tree, const ConstructParams& params,
                        ConstructDiagnostics* diag) {
  return constructAt(tree, tree.root(), params, diag);
}

Decomposition constructSubtree(const BinaryTree& tree, int root,
                               const ConstructParams& params,
                               ConstructDiagnostics* diag) {
  return constructAt(tree, root, params, diag);
}

namespace {

Decomposition baselineAt(const BinaryTree& t, int root) {
  Decomposition d;
  int v = root;
  while (!t.isLeaf(v)) {
    int l = t.left(v), r = t.right(v);
    Dir dir = t.subtreeSize(l) >= t.subtreeSize(r) && l != kNoNode
                  ? Dir::Left
                  : Dir::Right;
    int pos = static_cast<int>(d.spine.size());
    d.spine.push_back(dir);
    int sib = siblingChild(t, v, dir);
    if (sib != kNoNode)
      d.hanging.push_back({pos, hangingSide(dir), baselineAt(t, sib)});
    v = stepChild(t, v, dir);
  }
  return d;
}

}  // namespace

Decomposition baselineConstruct(const BinaryTree& tree) {
  return baselineAt(tree, tree.root());
}

std::optional<TwistCertificate> twistWidthCertificate(
    const BinaryTree& tree, const ConstructParams& params) {
  if (tree.size() <= params.n0) return std::nullopt;
  GrowResult g = growSpine(tree, tree.root(), params, nullptr);
  if (g.action != TerminalAction::Twist || g.fallbackUsed) return std::nullopt;

  RulerLabels labels =
      rulerLabels(tree, g.spineNodes, g.dirs, g.twistSide, params.h);
  const int i = g.twistLevel;
  const std::vector<int> pulled = pulledPositions(labels, i);
  const Dir divert = g.twistSide == Side::Left ? Dir::Left : Dir::Right;
  const int last = static_cast<int>(g.dirs.size());

  auto widthOf = [&](int root) {
    Decomposition sub = constructSubtree(tree, root, params);
    return decompositionWidth(tree, sub, root);
  };

  // The twisted drawing nests one piece per segment: piece j contributes its
  // own spine column plus its widest same-side hanging, while opposite-side
  // hangings only max across pieces. Hence
  //   width <= sum_j (1 + maxSame_j) + max_j maxOpp_j,
  // with piece j covering the segment's path hangings, the next pulled
  // subtree's aligned-path hangings, and (for the final piece) the kept
  // child's path and the recursively drawn other child.
  int sumSame = 0, maxOpp = 0;
  int start = 0;
  for (std::size_t sIdx = 0; sIdx <= pulled.size(); ++sIdx) {
    const bool lastPiece = sIdx == pulled.size();
    const int stop = lastPiece ? last : pulled[sIdx];
    int pieceSame = 0, pieceOpp = 0;
    auto addHang = [&](Side side, int w) {
      (side == g.twistSide ? pieceSame : pieceOpp) =
          std::max(side == g.twistSide ? pieceSame : pieceOpp, w);
    };
    for (int j = start; j < stop; ++j) {
      int sib = siblingChild(tree, g.spineNodes[j], g.dirs[j]);
      if (sib != kNoNode) addHang(hangingSide(g.dirs[j]), widthOf(sib));
    }
    std::vector<int> path;
    if (!lastPiece) {
      int pulledRoot = stepChild(tree, g.spineNodes[stop], divert);
      path = alignedPath(tree, pulledRoot, divert);
    } else {
      const int vt = g.spineNodes[last];
      int kept = stepChild(tree, vt, divert);
      int other = siblingChild(tree, vt, divert);
      addHang(hangingSide(divert), widthOf(other));
      int cap = params.refined ? labels.levels[i].back().size : -1;
      path = cap >= 0 ? refinedPath(tree, kept, cap, g.twistSide)
                      : alignedPath(tree, kept, divert);
    }
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
      int v = path[k];
      Dir dir = path[k + 1] == tree.left(v) ? Dir::Left : Dir::Right;
      int sib = siblingChild(tree, v, dir);
      if (sib != kNoNode) addHang(hangingSide(dir), widthOf(sib));
    }
    sumSame += 1 + pieceSame;
    maxOpp = std::max(maxOpp, pieceOpp);
    start = stop + 1;
  }
  return TwistCertificate{i, g.twistSide, sumSame + maxOpp};
}

}  // namespace lrdraw
