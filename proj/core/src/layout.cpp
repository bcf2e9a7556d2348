#include "lrdraw/layout.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace lrdraw {

Decomposition::Decomposition() = default;
Decomposition::Decomposition(const Decomposition&) = default;
Decomposition::Decomposition(Decomposition&&) noexcept = default;
Decomposition& Decomposition::operator=(const Decomposition&) = default;
Decomposition& Decomposition::operator=(Decomposition&&) noexcept = default;
Decomposition::~Decomposition() = default;

namespace {

int stepChild(const BinaryTree& t, int v, Dir d) {
  return d == Dir::Left ? t.left(v) : t.right(v);
}

int siblingChild(const BinaryTree& t, int v, Dir d) {
  return d == Dir::Left ? t.right(v) : t.left(v);
}

// Box metrics per decomposition node, parallel to the recursion.
struct Measured {
  int width = 1;
  int height = 0;
  int maxL = 0;
  int maxR = 0;
  std::vector<int> child;  // arena indices, parallel to d.hanging
};

int measure(const BinaryTree& t, int root, const Decomposition& d,
            std::vector<Measured>& arena) {
  int idx = static_cast<int>(arena.size());
  arena.push_back({});
  const int spineNodes = static_cast<int>(d.spine.size()) + 1;
  int height = spineNodes;
  int maxL = 0, maxR = 0;
  std::vector<int> children;
  children.reserve(d.hanging.size());

  int v = root;
  std::size_t hi = 0;
  for (int j = 0; j < static_cast<int>(d.spine.size()); ++j) {
    Dir dir = d.spine[j];
    int next = stepChild(t, v, dir);
    if (next == kNoNode)
      throw DecompositionError("spine leaves the tree", j);
    int sib = siblingChild(t, v, dir);
    bool haveHanging =
        hi < d.hanging.size() && d.hanging[hi].pos == j;
    if (sib == kNoNode) {
      if (haveHanging)
        throw DecompositionError("hanging subtree without a sibling", j);
    } else {
      if (!haveHanging)
        throw DecompositionError("sibling subtree not covered", j);
      if (d.hanging[hi].side != hangingSide(dir))
        throw DecompositionError("hanging subtree on the wrong side", j);
      int ci = measure(t, sib, d.hanging[hi].child, arena);
      children.push_back(ci);
      // The hanging box shares its bottom row with the next spine node, so
      // it adds height-1 extra rows beyond the spine's own row.
      height += arena[ci].height - 1;
      if (d.hanging[hi].side == Side::Left)
        maxL = std::max(maxL, arena[ci].width);
      else
        maxR = std::max(maxR, arena[ci].width);
      ++hi;
    }
    v = next;
  }
  if (hi != d.hanging.size())
    throw DecompositionError("hanging entry beyond spine end",
                             d.hanging[hi].pos);
  if (!t.isLeaf(v))
    throw DecompositionError("spine does not end at a leaf",
                             static_cast<int>(d.spine.size()));

  arena[idx].width = maxL + 1 + maxR;
  arena[idx].height = height;
  arena[idx].maxL = maxL;
  arena[idx].maxR = maxR;
  arena[idx].child = std::move(children);
  return idx;
}

void place(const BinaryTree& t, int root, const Decomposition& d,
           const std::vector<Measured>& arena, int idx, int col0, int row0,
           std::vector<std::array<int, 2>>& pos) {
  const Measured& m = arena[idx];
  const int spineCol = col0 + m.maxL;
  int v = root;
  int row = row0;
  std::size_t hi = 0;
  std::size_t ci = 0;
  for (int j = 0; j <= static_cast<int>(d.spine.size()); ++j) {
    pos[v] = {spineCol, row};
    if (j == static_cast<int>(d.spine.size())) break;
    Dir dir = d.spine[j];
    int sib = siblingChild(t, v, dir);
    int boxHeight = 0;
    if (sib != kNoNode) {
      const Decomposition::Hanging& hg = d.hanging[hi];
      const Measured& cm = arena[m.child[ci]];
      int x0 = hg.side == Side::Left ? col0 + m.maxL - cm.width
                                     : spineCol + 1;
      place(t, sib, hg.child, arena, m.child[ci], x0, row + 1, pos);
      boxHeight = cm.height;
      ++hi;
      ++ci;
    }
    row += std::max(1, boxHeight);
    v = stepChild(t, v, dir);
  }
}

}  // namespace

void checkDecomposition(const BinaryTree& tree, const Decomposition& d,
                        int root) {
  if (root == kNoNode) root = tree.root();
  std::vector<Measured> arena;
  measure(tree, root, d, arena);  // throws on any structural violation
}

Layout assemble(const BinaryTree& tree, const Decomposition& d, int root) {
  if (root == kNoNode) root = tree.root();
  std::vector<Measured> arena;
  int top = measure(tree, root, d, arena);
  Layout layout;
  layout.width = arena[top].width;
  layout.height = arena[top].height;
  layout.pos.assign(tree.size(), {-1, -1});
  place(tree, root, d, arena, top, 0, 0, layout.pos);
  return layout;
}

int decompositionWidth(const BinaryTree& tree, const Decomposition& d,
                       int root) {
  if (root == kNoNode) root = tree.root();
  std::vector<Measured> arena;
  int top = measure(tree, root, d, arena);
  return arena[top].width;
}

namespace {

using I64 = std::int64_t;

I64 cross(I64 ox, I64 oy, I64 ax, I64 ay, I64 bx, I64 by) {
  return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox);
}

bool onSegment(I64 px, I64 py, I64 ax, I64 ay, I64 bx, I64 by) {
  if (cross(ax, ay, bx, by, px, py) != 0) return false;
  return std::min(ax, bx) <= px && px <= std::max(ax, bx) &&
         std::min(ay, by) <= py && py <= std::max(ay, by);
}

struct Seg {
  int ax, ay, bx, by;  // a = parent endpoint, b = child endpoint
};

// Proper crossing, or collinear overlap beyond a shared endpoint, or an
// endpoint in the other segment's interior.
bool segmentsConflict(const Seg& s, const Seg& t) {
  I64 d1 = cross(s.ax, s.ay, s.bx, s.by, t.ax, t.ay);
  I64 d2 = cross(s.ax, s.ay, s.bx, s.by, t.bx, t.by);
  I64 d3 = cross(t.ax, t.ay, t.bx, t.by, s.ax, s.ay);
  I64 d4 = cross(t.ax, t.ay, t.bx, t.by, s.bx, s.by);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  // Count shared endpoints; touching at a common node is legal.
  auto same = [](int x1, int y1, int x2, int y2) {
    return x1 == x2 && y1 == y2;
  };
  int shared = 0;
  shared += same(s.ax, s.ay, t.ax, t.ay);
  shared += same(s.ax, s.ay, t.bx, t.by);
  shared += same(s.bx, s.by, t.ax, t.ay);
  shared += same(s.bx, s.by, t.bx, t.by);
  if (shared > 1) return true;  // identical segment
  auto interior = [&](I64 px, I64 py, const Seg& g) {
    if (!onSegment(px, py, g.ax, g.ay, g.bx, g.by)) return false;
    return !same(static_cast<int>(px), static_cast<int>(py), g.ax, g.ay) &&
           !same(static_cast<int>(px), static_cast<int>(py), g.bx, g.by);
  };
  if (interior(t.ax, t.ay, s) || interior(t.bx, t.by, s) ||
      interior(s.ax, s.ay, t) || interior(s.bx, s.by, t))
    return true;
  if (d1 == 0 && d2 == 0 && d3 == 0 && d4 == 0 && shared == 1) {
    // Collinear with one shared endpoint: overlap iff the free endpoints lie
    // on the same side, already covered by the interior checks above.
    return false;
  }
  return false;
}

// All edges in an assembled drawing are vertical or span exactly one row;
// that structure admits an exact near-linear planarity check.
bool planarStructured(const std::vector<Seg>& segs,
                      const std::vector<std::array<int, 2>>& pos) {
  // Vertical segments and node rows, per column.
  std::unordered_map<int, std::vector<std::pair<int, int>>> verticals;
  std::unordered_map<int, std::vector<int>> nodeRows;
  for (const auto& p : pos) nodeRows[p[0]].push_back(p[1]);
  for (auto& [c, rows] : nodeRows) std::sort(rows.begin(), rows.end());

  std::unordered_map<int, std::vector<std::pair<int, int>>> bands;
  for (const Seg& s : segs) {
    if (s.ax == s.bx) {
      int r1 = std::min(s.ay, s.by), r2 = std::max(s.ay, s.by);
      verticals[s.ax].push_back({r1, r2});
      for (int r = r1; r < r2; ++r) bands[r].push_back({s.ax, s.ax});
    } else {
      int top = std::min(s.ay, s.by);
      int xt = s.ay < s.by ? s.ax : s.bx;
      int xb = s.ay < s.by ? s.bx : s.ax;
      bands[top].push_back({xt, xb});
    }
  }

  for (auto& [col, ivals] : verticals) {
    std::sort(ivals.begin(), ivals.end());
    for (std::size_t i = 0; i + 1 < ivals.size(); ++i)
      if (ivals[i + 1].first < ivals[i].second) return false;
    const auto& rows = nodeRows[col];
    for (const auto& [r1, r2] : ivals) {
      auto it = std::upper_bound(rows.begin(), rows.end(), r1);
      if (it != rows.end() && *it < r2) return false;  // node inside segment
    }
  }

  for (auto& [row, xs] : bands) {
    std::sort(xs.begin(), xs.end());
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      if (xs[i + 1].second < xs[i].second) return false;  // order inversion
      if (xs[i + 1] == xs[i]) return false;               // identical segment
    }
  }
  return true;
}

}  // namespace

ValidationReport validate(const BinaryTree& tree, const Layout& layout) {
  ValidationReport rep;
  const int n = tree.size();
  const auto& pos = layout.pos;
  if (static_cast<int>(pos.size()) < n) return rep;

  // (a) grid integrity and distinctness, bounding box attained.
  bool gridOk = layout.width >= 1 && layout.height >= 1 &&
                layout.width <= n && layout.height <= n;
  bool col0 = false, colMax = false, row0 = false, rowMax = false;
  std::unordered_set<std::int64_t> seen;
  seen.reserve(static_cast<std::size_t>(n) * 2);
  for (int v = 0; v < n && gridOk; ++v) {
    auto [c, r] = pos[v];
    if (c < 0 || c >= layout.width || r < 0 || r >= layout.height) {
      gridOk = false;
      break;
    }
    col0 |= c == 0;
    colMax |= c == layout.width - 1;
    row0 |= r == 0;
    rowMax |= r == layout.height - 1;
    std::int64_t key = static_cast<std::int64_t>(c) * 4000037 + r;
    if (!seen.insert(key).second) gridOk = false;
  }
  rep.gridOk = gridOk && col0 && colMax && row0 && rowMax;
  if (!rep.gridOk) return rep;

  rep.rootTopOk = pos[tree.root()][1] == 0;

  // (b) strictly upward.
  rep.upwardOk = true;
  std::vector<Seg> segs;
  segs.reserve(n);
  for (int v = 0; v < n; ++v) {
    for (int c : {tree.left(v), tree.right(v)}) {
      if (c == kNoNode) continue;
      if (pos[v][1] >= pos[c][1]) rep.upwardOk = false;
      segs.push_back({pos[v][0], pos[v][1], pos[c][0], pos[c][1]});
    }
  }

  // (c) order-preserving.
  rep.orderOk = true;
  for (int v = 0; v < n; ++v) {
    int l = tree.left(v), r = tree.right(v);
    if (l == kNoNode || r == kNoNode) continue;
    I64 dxL = pos[l][0] - pos[v][0], dyL = pos[l][1] - pos[v][1];
    I64 dxR = pos[r][0] - pos[v][0], dyR = pos[r][1] - pos[v][1];
    if (!(dxL * dyR < dxR * dyL)) rep.orderOk = false;
  }

  // (d) planarity, exact integer arithmetic throughout.
  bool structured = true;
  for (const Seg& s : segs)
    if (s.ax != s.bx && std::abs(s.ay - s.by) != 1) structured = false;
  if (structured && rep.upwardOk) {
    rep.planarOk = planarStructured(segs, pos);
  } else {
    rep.planarOk = true;
    for (std::size_t i = 0; i < segs.size() && rep.planarOk; ++i)
      for (std::size_t j = i + 1; j < segs.size(); ++j)
        if (segmentsConflict(segs[i], segs[j])) {
          rep.planarOk = false;
          break;
        }
    for (int v = 0; v < n && rep.planarOk; ++v)
      for (const Seg& s : segs) {
        auto [c, r] = pos[v];
        if ((c == s.ax && r == s.ay) || (c == s.bx && r == s.by)) continue;
        if (onSegment(c, r, s.ax, s.ay, s.bx, s.by)) {
          rep.planarOk = false;
          break;
        }
      }
  }
  return rep;
}

std::string emit(const Layout& layout, const BinaryTree& tree,
                 EmitFormat format) {
  std::ostringstream out;
  if (format == EmitFormat::Tsv) {
    out << "node\tcol\trow\n";
    for (int v = 0; v < tree.size(); ++v)
      out << v << '\t' << layout.pos[v][0] << '\t' << layout.pos[v][1] << '\n';
    return out.str();
  }
  constexpr int U = 24;
  constexpr int margin = 12;
  int w = (layout.width - 1) * U + 2 * margin;
  int h = (layout.height - 1) * U + 2 * margin;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << -margin
      << ' ' << -margin << ' ' << w << ' ' << h << "\">\n";
  for (int v = 0; v < tree.size(); ++v)
    for (int c : {tree.left(v), tree.right(v)}) {
      if (c == kNoNode) continue;
      out << "  <line x1=\"" << layout.pos[v][0] * U << "\" y1=\""
          << layout.pos[v][1] * U << "\" x2=\"" << layout.pos[c][0] * U
          << "\" y2=\"" << layout.pos[c][1] * U
          << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    }
  for (int v = 0; v < tree.size(); ++v)
    out << "  <circle cx=\"" << layout.pos[v][0] * U << "\" cy=\""
        << layout.pos[v][1] * U << "\" r=\"5\" fill=\"#336699\"/>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace lrdraw
