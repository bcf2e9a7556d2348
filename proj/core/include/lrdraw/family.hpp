#pragma once

#include <vector>

#include "lrdraw/tree.hpp"

namespace lrdraw {

struct FamilyParams {
  double p = 0.429;
  double mu = 0.122;
  double phi = 0.0;  // tied to mu by the linear constraint
  int c0 = 4;
  int smallNThreshold = 16;

  /// phi derived from (p, mu) so the linear constraint holds exactly.
  static FamilyParams defaults();
  static FamilyParams withP(double p, double mu, int c0 = 4);

  /// Residual of phi + mu/(1 - 2^{-(1-p)/p}) - 1/2.
  double linearResidual() const;
  /// phi^p + mu^p - 1.
  double powerSlack() const;
  /// Throws std::invalid_argument when either constraint fails.
  void check() const;
};

/// Top-level skeleton of one recursion step of the family tree: the path, the
/// per-index subtree sizes after padding, and the level structure.
struct FamilySkeleton {
  int h = 0;
  long long k = 0;  // 2^h
  long long n = 0;
  long long lrSize = 0;                 // |L| = |R| = ceil(phi*n)
  std::vector<long long> alphaSize;     // index 1..k-1 (index 0 unused)
  std::vector<long long> betaSize;

  int levelOf(long long j) const;  // j in [1, k-1]
};

/// Skeleton only, no recursion; empty (h = 0) when n falls back to the
/// small-n tree.
FamilySkeleton familySkeleton(long long n, const FamilyParams& params);

/// The recursive lower-bound tree; |result| == n exactly, deterministic.
BinaryTree buildFamily(long long n, const FamilyParams& params);

/// Ruler property over a consecutive index interval [jlo, jhi]: the largest
/// subtree on each side must reach ((|J|-1)/k)^{1/p} * mu * n.
bool checkRulerProperty(const FamilySkeleton& skeleton,
                        const FamilyParams& params, long long jlo,
                        long long jhi);

}  // namespace lrdraw
