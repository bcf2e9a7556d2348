#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "lrdraw/tree.hpp"

namespace lrdraw {

enum class Dir { Left, Right };
enum class Side { Left, Right };

inline Side hangingSide(Dir d) {
  return d == Dir::Left ? Side::Right : Side::Left;
}

/// Recursive spine decomposition of a (sub)tree: the spine is a root-to-leaf
/// direction sequence; every subtree hanging off the spine carries its own
/// decomposition. A single-node subtree has an empty spine.
struct Decomposition {
  struct Hanging;
  std::vector<Dir> spine;
  std::vector<Hanging> hanging;  // sorted by pos; at most one per pos

  Decomposition();
  Decomposition(const Decomposition&);
  Decomposition(Decomposition&&) noexcept;
  Decomposition& operator=(const Decomposition&);
  Decomposition& operator=(Decomposition&&) noexcept;
  ~Decomposition();
};

struct Decomposition::Hanging {
  int pos = 0;  // spine index of the parent node
  Side side = Side::Left;
  Decomposition child;
};

struct DecompositionError : std::runtime_error {
  DecompositionError(const std::string& msg, int spineIndex)
      : std::runtime_error(msg + " (spine index " +
                           std::to_string(spineIndex) + ")"),
        spineIndex(spineIndex) {}
  int spineIndex;
};

/// Integer grid placement; rows grow downward, root in row 0.
struct Layout {
  std::vector<std::array<int, 2>> pos;  // node id -> {column, row}
  int width = 0;
  int height = 0;
};

/// Checks spine legality and exact coverage; throws DecompositionError.
void checkDecomposition(const BinaryTree& tree, const Decomposition& d,
                        int root = kNoNode);

/// Builds the drawing: spine on one column, left boxes right-aligned one unit
/// left, right boxes left-aligned one unit right. The hanging box at spine
/// index j starts one row below spine node j and shares its bottom row with
/// spine node j+1, so node j+1 sits max(1, box height) rows below node j.
Layout assemble(const BinaryTree& tree, const Decomposition& d,
                int root = kNoNode);

/// Width of the assembled drawing without building it:
/// max left sub-width + 1 + max right sub-width, recursively.
int decompositionWidth(const BinaryTree& tree, const Decomposition& d,
                       int root = kNoNode);

struct ValidationReport {
  bool gridOk = false;        // distinct positions inside the bounding box
  bool upwardOk = false;      // row(parent) < row(child)
  bool orderOk = false;       // left edge leaves before right edge
  bool planarOk = false;      // no proper crossings, no node on a segment
  bool rootTopOk = false;     // root in row 0
  bool allOk() const {
    return gridOk && upwardOk && orderOk && planarOk && rootTopOk;
  }
};

/// Exact integer checks; never throws, failures are report entries.
ValidationReport validate(const BinaryTree& tree, const Layout& layout);

enum class EmitFormat { Svg, Tsv };

std::string emit(const Layout& layout, const BinaryTree& tree,
                 EmitFormat format);

}  // namespace lrdraw
