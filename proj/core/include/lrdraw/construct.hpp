#pragma once

#include <optional>
#include <vector>

#include "lrdraw/layout.hpp"
#include "lrdraw/tree.hpp"

namespace lrdraw {

struct ConstructParams {
  double p = 0.438;
  double delta = 0.001;
  int h = 7;
  int n0 = 32;
  bool refined = false;

  static ConstructParams twist438() { return {}; }
  static ConstructParams twist437() {
    ConstructParams c;
    c.p = 0.437;
    c.refined = true;
    return c;
  }
};

struct ConstructDiagnostics {
  long long case1 = 0;
  long long case2 = 0;
  long long case3 = 0;
  long long case4 = 0;
  long long plainSpine = 0;
  long long baseCase = 0;
  long long fallback = 0;
};

/// One per-segment largest hanging subtree; absent when the segment has no
/// same-side subtree.
struct RulerEntry {
  int pos = -1;   // spine index of the parent, -1 if absent
  int root = kNoNode;
  int size = 0;
  bool present() const { return pos >= 0; }
};

/// levels[i] holds the 2^i per-segment entries, top-down; segments are cut at
/// the parents of all entries of levels < i.
struct RulerLabels {
  Side side = Side::Left;
  std::vector<std::vector<RulerEntry>> levels;
};

enum class TerminalAction { PlainSpine, Twist };

struct GrowResult {
  std::vector<int> spineNodes;   // v_0 .. v_t
  std::vector<Dir> dirs;         // one per accepted step
  TerminalAction action = TerminalAction::PlainSpine;
  int twistLevel = 0;            // i, when action == Twist
  Side twistSide = Side::Left;   // labels side: Left => i-right-twist
  bool fallbackUsed = false;
};

/// Spine growth under the size-power invariant (Cases 1/2) until a leaf or a
/// twist condition fires.
GrowResult growSpine(const BinaryTree& tree, int root,
                     const ConstructParams& params,
                     ConstructDiagnostics* diag = nullptr);

RulerLabels rulerLabels(const BinaryTree& tree,
                        const std::vector<int>& spineNodes,
                        const std::vector<Dir>& dirs, Side side, int h);

/// The Case-3/4 inequality at level i, refined variant when params.refined.
/// n is the subtree size the condition is scaled against.
bool twistCondition(const RulerLabels& labels, int i, int lSize, int rSize,
                    const ConstructParams& params, int n);

/// Path in the subtree at `root` that steps right while the left subtree has
/// size at most `cap`, left otherwise; absent designated children fall back to
/// the existing child.
std::vector<int> refinedLeftPath(const BinaryTree& tree, int root, int cap);

/// Mirror rule for the i-left-twist: steps left while the right subtree has
/// size at most `cap`.
std::vector<int> refinedRightPath(const BinaryTree& tree, int root, int cap);

/// Full algorithm; always returns a valid decomposition of the subtree.
Decomposition construct(const BinaryTree& tree, const ConstructParams& params,
                        ConstructDiagnostics* diag = nullptr);
Decomposition constructSubtree(const BinaryTree& tree, int root,
                               const ConstructParams& params,
                               ConstructDiagnostics* diag = nullptr);

/// Comparison heuristic: the spine greedily follows the larger child.
Decomposition baselineConstruct(const BinaryTree& tree);

/// Right-hand side of the measured Case-3/4 width inequality for the
/// top-level action, when it is a genuine (non-fallback) twist. The twisted
/// drawing nests one piece per spine segment, so its width is at most
/// sum over pieces (1 + widest same-side hanging) + max opposite-side
/// hanging; rhs is that bound, computed piece by piece.
struct TwistCertificate {
  int level = 0;
  Side side = Side::Left;
  int rhs = 0;
};
std::optional<TwistCertificate> twistWidthCertificate(
    const BinaryTree& tree, const ConstructParams& params);

}  // namespace lrdraw
