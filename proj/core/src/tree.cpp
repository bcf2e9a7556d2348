#include "lrdraw/tree.hpp"

#include <algorithm>
#include <cctype>
#include <random>

#include <boost/multiprecision/cpp_int.hpp>

namespace lrdraw {

using BigInt = boost::multiprecision::cpp_int;

BinaryTree BinaryTree::fromNodes(std::vector<Node> nodes, int root) {
  const int n = static_cast<int>(nodes.size());
  if (n == 0) throw std::invalid_argument("tree must have at least one node");
  if (root < 0 || root >= n) throw std::invalid_argument("root out of range");

  std::vector<int> parent(n, kNoNode);
  for (int v = 0; v < n; ++v) {
    for (int c : {nodes[v].left, nodes[v].right}) {
      if (c == kNoNode) continue;
      if (c < 0 || c >= n) throw std::invalid_argument("child id out of range");
      if (parent[c] != kNoNode)
        throw std::invalid_argument("node has two parents");
      parent[c] = v;
    }
  }
  if (parent[root] != kNoNode)
    throw std::invalid_argument("root must not have a parent");
  for (int v = 0; v < n; ++v)
    if (v != root && parent[v] == kNoNode)
      throw std::invalid_argument("disconnected node");

  // Iterative post-order to compute sizes; also detects cycles (a cycle would
  // leave some node unvisited given the single-parent check above).
  std::vector<int> sizes(n, 0);
  std::vector<int> stack{root};
  std::vector<int> order;
  order.reserve(n);
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    if (nodes[v].left != kNoNode) stack.push_back(nodes[v].left);
    if (nodes[v].right != kNoNode) stack.push_back(nodes[v].right);
  }
  if (static_cast<int>(order.size()) != n)
    throw std::invalid_argument("graph is not a tree");
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int v = *it;
    sizes[v] = 1;
    if (nodes[v].left != kNoNode) sizes[v] += sizes[nodes[v].left];
    if (nodes[v].right != kNoNode) sizes[v] += sizes[nodes[v].right];
  }

  BinaryTree t;
  t.nodes_ = std::move(nodes);
  t.sizes_ = std::move(sizes);
  t.root_ = root;
  return t;
}

bool BinaryTree::structurallyEquals(const BinaryTree& other) const {
  if (size() != other.size()) return false;
  // Compare by parallel traversal; node ids may differ.
  std::vector<std::pair<int, int>> stack{{root_, other.root_}};
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    if ((a == kNoNode) != (b == kNoNode)) return false;
    if (a == kNoNode) continue;
    stack.push_back({left(a), other.left(b)});
    stack.push_back({right(a), other.right(b)});
  }
  return true;
}

namespace {

struct Parser {
  std::string_view text;
  std::size_t pos = 0;

  void skipWs() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  char peek() {
    skipWs();
    return pos < text.size() ? text[pos] : '\0';
  }

  void expect(char c) {
    skipWs();
    if (pos >= text.size())
      throw ParseError(std::string("expected '") + c + "', got end of input", pos);
    if (text[pos] != c)
      throw ParseError(std::string("expected '") + c + "'", pos);
    ++pos;
  }

  // Returns the new node's id, or kNoNode for an absent child.
  int parseTree(std::vector<BinaryTree::Node>& nodes, bool optional) {
    if (optional && peek() != '(') return kNoNode;
    expect('(');
    int id = static_cast<int>(nodes.size());
    nodes.push_back({});
    int l = parseTree(nodes, true);
    expect(',');
    int r = parseTree(nodes, true);
    expect(')');
    nodes[id].left = l;
    nodes[id].right = r;
    return id;
  }
};

}  // namespace

BinaryTree parseTree(std::string_view text) {
  Parser p{text};
  p.skipWs();
  if (p.pos == text.size()) throw ParseError("empty input", 0);
  std::vector<BinaryTree::Node> nodes;
  int root = p.parseTree(nodes, false);
  p.skipWs();
  if (p.pos != text.size()) throw ParseError("trailing garbage", p.pos);
  return BinaryTree::fromNodes(std::move(nodes), root);
}

namespace {

void serializeRec(const BinaryTree& t, int v, std::string& out) {
  if (v == kNoNode) return;
  out.push_back('(');
  serializeRec(t, t.left(v), out);
  out.push_back(',');
  serializeRec(t, t.right(v), out);
  out.push_back(')');
}

}  // namespace

std::string serializeTree(const BinaryTree& tree) {
  std::string out;
  out.reserve(static_cast<std::size_t>(tree.size()) * 3);
  serializeRec(tree, tree.root(), out);
  return out;
}

std::uint64_t catalanNumber(int n) {
  if (n < 0 || n > 35) throw std::invalid_argument("catalanNumber: n out of range");
  static const auto table = [] {
    std::vector<std::uint64_t> c(36, 0);
    c[0] = 1;
    for (int k = 1; k <= 35; ++k)
      for (int i = 0; i < k; ++i) c[k] += c[i] * c[k - 1 - i];
    return c;
  }();
  return table[n];
}

namespace {

const std::vector<BigInt>& catalanBig() {
  static const auto table = [] {
    std::vector<BigInt> c(501);
    c[0] = 1;
    for (int k = 1; k <= 500; ++k) {
      BigInt s = 0;
      for (int i = 0; i < k; ++i) s += c[i] * c[k - 1 - i];
      c[k] = s;
    }
    return c;
  }();
  return table;
}

BigInt uniformBig(std::mt19937_64& rng, const BigInt& bound) {
  // Rejection sampling over fixed-width draws.
  const unsigned bits = boost::multiprecision::msb(bound) + 1;
  const unsigned words = (bits + 63) / 64;
  for (;;) {
    BigInt x = 0;
    for (unsigned i = 0; i < words; ++i) {
      x <<= 64;
      x += rng();
    }
    x >>= (words * 64 - bits);
    if (x < bound) return x;
  }
}

int buildUniform(int n, std::mt19937_64& rng, std::vector<BinaryTree::Node>& nodes) {
  if (n == 0) return kNoNode;
  const auto& cat = catalanBig();
  // Left size i with probability C(i)*C(n-1-i)/C(n).
  BigInt r = uniformBig(rng, cat[n]);
  int leftSize = 0;
  for (; leftSize < n; ++leftSize) {
    BigInt w = cat[leftSize] * cat[n - 1 - leftSize];
    if (r < w) break;
    r -= w;
  }
  int id = static_cast<int>(nodes.size());
  nodes.push_back({});
  int l = buildUniform(leftSize, rng, nodes);
  int rr = buildUniform(n - 1 - leftSize, rng, nodes);
  nodes[id].left = l;
  nodes[id].right = rr;
  return id;
}

}  // namespace

BinaryTree generateTree(TreeKind kind, int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("generateTree: n must be >= 1");
  std::vector<BinaryTree::Node> nodes;
  switch (kind) {
    case TreeKind::LeftPath: {
      nodes.resize(n);
      for (int i = 0; i + 1 < n; ++i) nodes[i].left = i + 1;
      return BinaryTree::fromNodes(std::move(nodes), 0);
    }
    case TreeKind::RightPath: {
      nodes.resize(n);
      for (int i = 0; i + 1 < n; ++i) nodes[i].right = i + 1;
      return BinaryTree::fromNodes(std::move(nodes), 0);
    }
    case TreeKind::Complete: {
      nodes.resize(n);
      for (int i = 0; i < n; ++i) {
        if (2 * i + 1 < n) nodes[i].left = 2 * i + 1;
        if (2 * i + 2 < n) nodes[i].right = 2 * i + 2;
      }
      return BinaryTree::fromNodes(std::move(nodes), 0);
    }
    case TreeKind::Uniform: {
      if (n > 500)
        throw std::invalid_argument(
            "generateTree: uniform capped at n = 500; use bst_shape for larger n");
      std::mt19937_64 rng(seed);
      int root = buildUniform(n, rng, nodes);
      return BinaryTree::fromNodes(std::move(nodes), root);
    }
    case TreeKind::BstShape: {
      std::mt19937_64 rng(seed);
      std::vector<int> perm(n);
      for (int i = 0; i < n; ++i) perm[i] = i;
      std::shuffle(perm.begin(), perm.end(), rng);
      nodes.resize(n);
      std::vector<int> key(n);  // key[v] = permutation value at node v
      int root = 0;
      key[0] = perm[0];
      for (int i = 1; i < n; ++i) {
        int v = root;
        for (;;) {
          if (perm[i] < key[v]) {
            if (nodes[v].left == kNoNode) {
              nodes[v].left = i;
              break;
            }
            v = nodes[v].left;
          } else {
            if (nodes[v].right == kNoNode) {
              nodes[v].right = i;
              break;
            }
            v = nodes[v].right;
          }
        }
        key[i] = perm[i];
      }
      return BinaryTree::fromNodes(std::move(nodes), root);
    }
  }
  throw std::invalid_argument("generateTree: unknown kind");
}

namespace {

// Enumerates every shape of size n as a fresh child of `parent`, calling
// `done` once per complete shape while its nodes are in place. The node
// vector is used as a stack: each call removes exactly what it added.
void enumerateRec(int n, std::vector<BinaryTree::Node>& nodes,
                  int parent, bool asLeft,
                  const std::function<void()>& done) {
  if (n == 0) {
    done();
    return;
  }
  int id = static_cast<int>(nodes.size());
  nodes.push_back({});
  if (parent != kNoNode) {
    if (asLeft)
      nodes[parent].left = id;
    else
      nodes[parent].right = id;
  }
  for (int leftSize = 0; leftSize < n; ++leftSize) {
    enumerateRec(leftSize, nodes, id, true, [&] {
      enumerateRec(n - 1 - leftSize, nodes, id, false, done);
    });
  }
  nodes.pop_back();
  if (parent != kNoNode) {
    if (asLeft)
      nodes[parent].left = kNoNode;
    else
      nodes[parent].right = kNoNode;
  }
}

}  // namespace

void enumerateTrees(int n, const std::function<void(const BinaryTree&)>& visit) {
  if (n < 1 || n > 13)
    throw std::invalid_argument("enumerateTrees: n must be in [1, 13]");
  std::vector<BinaryTree::Node> nodes;
  enumerateRec(n, nodes, kNoNode, false, [&] {
    visit(BinaryTree::fromNodes(nodes, 0));
  });
}

}  // namespace lrdraw
