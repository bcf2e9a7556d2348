#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lrdraw {

inline constexpr int kNoNode = -1;

/// Rooted ordered binary tree over dense integer node ids, immutable after
/// construction. Subtree sizes are cached at build time.
class BinaryTree {
 public:
  struct Node {
    int left = kNoNode;
    int right = kNoNode;
  };

  /// Validates the parent/cycle structure and caches subtree sizes.
  /// Throws std::invalid_argument on malformed input.
  static BinaryTree fromNodes(std::vector<Node> nodes, int root);

  int root() const { return root_; }
  int size() const { return static_cast<int>(nodes_.size()); }
  int left(int v) const { return nodes_[v].left; }
  int right(int v) const { return nodes_[v].right; }
  bool isLeaf(int v) const {
    return nodes_[v].left == kNoNode && nodes_[v].right == kNoNode;
  }

  /// size_of(v); kNoNode counts as the empty subtree of size 0.
  int subtreeSize(int v) const { return v == kNoNode ? 0 : sizes_[v]; }

  bool structurallyEquals(const BinaryTree& other) const;

 private:
  BinaryTree() = default;
  std::vector<Node> nodes_;
  std::vector<int> sizes_;
  int root_ = 0;
};

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t offset)
      : std::runtime_error(msg + " at byte " + std::to_string(offset)),
        offset(offset) {}
  std::size_t offset;
};

/// Grammar: tree := "(" [tree] "," [tree] ")", whitespace ignored.
BinaryTree parseTree(std::string_view text);

/// Canonical text (no whitespace); parseTree(serializeTree(t)) == t.
std::string serializeTree(const BinaryTree& tree);

enum class TreeKind { LeftPath, RightPath, Complete, Uniform, BstShape };

/// Deterministic in (kind, n, seed). Uniform is Catalan-exact and capped at
/// n = 500; BstShape is the shape of a BST over a random permutation.
BinaryTree generateTree(TreeKind kind, int n, std::uint64_t seed);

/// Calls visit for every ordered binary tree shape with n nodes (1 <= n <= 13)
/// exactly once, in a fixed order.
void enumerateTrees(int n, const std::function<void(const BinaryTree&)>& visit);

/// Catalan numbers C(0..35) fit in 64 bits; used by tests and guards.
std::uint64_t catalanNumber(int n);

}  // namespace lrdraw
