#include "lrdraw/family.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace lrdraw {

namespace {

double decayBase(double p) { return std::exp2(-(1.0 - p) / p); }

}  // namespace

FamilyParams FamilyParams::defaults() { return withP(0.429, 0.122); }

FamilyParams FamilyParams::withP(double p, double mu, int c0) {
  FamilyParams f;
  f.p = p;
  f.mu = mu;
  f.phi = 0.5 - mu / (1.0 - decayBase(p));
  f.c0 = c0;
  return f;
}

double FamilyParams::linearResidual() const {
  return phi + mu / (1.0 - decayBase(p)) - 0.5;
}

double FamilyParams::powerSlack() const {
  return std::pow(phi, p) + std::pow(mu, p) - 1.0;
}

void FamilyParams::check() const {
  if (!(p > 0 && p < 1) || !(mu > 0) || !(phi > 0) || c0 < 1)
    throw std::invalid_argument("family params out of range");
  if (std::abs(linearResidual()) > 1e-9)
    throw std::invalid_argument("family params violate the linear constraint");
  if (powerSlack() < -1e-9)
    throw std::invalid_argument("family params violate the power constraint");
}

int FamilySkeleton::levelOf(long long j) const {
  // j = odd * 2^t with 2^t = k / 2^{i+1}  =>  i = h - 1 - t.
  int t = std::countr_zero(static_cast<unsigned long long>(j));
  return h - 1 - t;
}

FamilySkeleton familySkeleton(long long n, const FamilyParams& params) {
  FamilySkeleton s;
  s.n = n;
  if (n < params.smallNThreshold) return s;
  double arg = params.mu * static_cast<double>(n) / params.c0;
  if (arg <= 1.0) return s;
  int h = static_cast<int>(std::floor(params.p * std::log2(arg)));

  for (; h >= 1; --h) {
    long long k = 1LL << h;
    long long lr = static_cast<long long>(
        std::ceil(params.phi * static_cast<double>(n)));
    std::vector<long long> alpha(k, 0), beta(k, 0);
    long long total = 2 * k - 1 + 2 * lr;
    for (long long j = 1; j < k; ++j) {
      int t = std::countr_zero(static_cast<unsigned long long>(j));
      int level = h - 1 - t;
      long long sz = static_cast<long long>(std::ceil(
          std::pow(std::exp2(-1.0 / params.p), level) * params.mu *
          static_cast<double>(n)));
      sz = std::max<long long>(sz, 1);
      alpha[j] = beta[j] = sz;
      total += 2 * sz;
    }
    long long deficit = n - total;

    // Pad (or trim) the last-level subtrees round-robin, one node at a time.
    bool ok = true;
    while (deficit != 0) {
      bool progress = false;
      for (long long j = 1; j < k && deficit != 0; j += 2) {
        for (auto* side : {&alpha, &beta}) {
          if (deficit > 0) {
            ++(*side)[j];
            --deficit;
            progress = true;
          } else if (deficit < 0 && (*side)[j] > 1) {
            --(*side)[j];
            ++deficit;
            progress = true;
          }
          if (deficit == 0) break;
        }
      }
      if (!progress) {
        ok = false;  // cannot absorb the (negative) deficit at this h
        break;
      }
    }
    if (!ok) continue;

    s.h = h;
    s.k = k;
    s.lrSize = lr;
    s.alphaSize = std::move(alpha);
    s.betaSize = std::move(beta);
    return s;
  }
  return s;  // h == 0: caller falls back to the small-n tree
}

namespace {

int buildRightPath(long long n, std::vector<BinaryTree::Node>& nodes) {
  int root = static_cast<int>(nodes.size());
  nodes.push_back({});
  int v = root;
  for (long long i = 1; i < n; ++i) {
    int c = static_cast<int>(nodes.size());
    nodes.push_back({});
    nodes[v].right = c;
    v = c;
  }
  return root;
}

int buildRec(long long n, const FamilyParams& params,
             std::vector<BinaryTree::Node>& nodes) {
  FamilySkeleton s = familySkeleton(n, params);
  if (s.h == 0) return buildRightPath(n, nodes);

  int root = kNoNode;
  int prev = kNoNode;  // trailing v_{j-1}, whose left child is the next u_j
  for (long long j = 1; j < s.k; ++j) {
    int u = static_cast<int>(nodes.size());
    nodes.push_back({});
    if (j == 1)
      root = u;
    else
      nodes[prev].left = u;
    nodes[u].left = buildRec(s.alphaSize[j], params, nodes);
    int v = static_cast<int>(nodes.size());
    nodes.push_back({});
    nodes[u].right = v;
    nodes[v].right = buildRec(s.betaSize[j], params, nodes);
    prev = v;
  }
  int uk = static_cast<int>(nodes.size());
  nodes.push_back({});
  if (prev == kNoNode)
    root = uk;
  else
    nodes[prev].left = uk;
  nodes[uk].left = buildRec(s.lrSize, params, nodes);
  nodes[uk].right = buildRec(s.lrSize, params, nodes);
  return root;
}

}  // namespace

BinaryTree buildFamily(long long n, const FamilyParams& params) {
  if (n < 1) throw std::invalid_argument("buildFamily: n must be >= 1");
  params.check();
  std::vector<BinaryTree::Node> nodes;
  nodes.reserve(static_cast<std::size_t>(n));
  int root = buildRec(n, params, nodes);
  return BinaryTree::fromNodes(std::move(nodes), root);
}

bool checkRulerProperty(const FamilySkeleton& skeleton,
                        const FamilyParams& params, long long jlo,
                        long long jhi) {
  if (jlo < 1 || jhi >= skeleton.k || jlo > jhi)
    throw std::invalid_argument("checkRulerProperty: bad interval");
  long long lenMinus1 = jhi - jlo;  // |J| - 1
  if (lenMinus1 == 0) return true;
  double bound = std::pow(static_cast<double>(lenMinus1) /
                              static_cast<double>(skeleton.k),
                          1.0 / params.p) *
                 params.mu * static_cast<double>(skeleton.n);
  long long maxAlpha = 0, maxBeta = 0;
  for (long long j = jlo; j <= jhi; ++j) {
    maxAlpha = std::max(maxAlpha, skeleton.alphaSize[j]);
    maxBeta = std::max(maxBeta, skeleton.betaSize[j]);
  }
  return static_cast<double>(maxAlpha) >= bound &&
         static_cast<double>(maxBeta) >= bound;
}

}  // namespace lrdraw
