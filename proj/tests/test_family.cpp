#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "lrdraw/family.hpp"
#include "lrdraw/tree.hpp"

using namespace lrdraw;

TEST_CASE("default params satisfy both constraints") {
  auto f = FamilyParams::defaults();
  CHECK_NOTHROW(f.check());
  CHECK(f.p == doctest::Approx(0.429));
  CHECK(f.mu == doctest::Approx(0.122));
  CHECK(std::abs(f.linearResidual()) < 1e-12);
  CHECK(f.powerSlack() >= 0.0);
  CHECK(f.phi == doctest::Approx(0.297513).epsilon(1e-4));
}

TEST_CASE("power constraint rejects p = 0.437") {
  auto f = FamilyParams::withP(0.437, 0.122);
  CHECK(std::abs(f.linearResidual()) < 1e-12);
  CHECK(f.powerSlack() < 0.0);
  CHECK_THROWS_AS(f.check(), std::invalid_argument);
}

TEST_CASE("skeleton of 10^4 nodes") {
  auto f = FamilyParams::defaults();
  auto s = familySkeleton(10000, f);
  CHECK(s.h == 3);
  CHECK(s.k == 8);
  CHECK(s.lrSize == 2976);  // ceil(phi * n)
  // level 0 at j = k/2 keeps the unpadded ceil(mu * n)
  CHECK(s.alphaSize[4] == 1220);
  CHECK(s.betaSize[4] == 1220);
  CHECK(s.alphaSize[2] == 243);
  CHECK(s.alphaSize[6] == 243);
  // only the last level absorbs the rounding deficit
  for (long long j = 1; j < s.k; j += 2) {
    CHECK(s.alphaSize[j] >= 49);
    CHECK(s.alphaSize[j] <= 80);
    CHECK(std::abs(s.alphaSize[j] - s.betaSize[j]) <= 1);
  }
  long long total = 2 * s.k - 1 + 2 * s.lrSize;
  for (long long j = 1; j < s.k; ++j) total += s.alphaSize[j] + s.betaSize[j];
  CHECK(total == 10000);
}

TEST_CASE("levelOf maps index to ruler level") {
  auto s = familySkeleton(10000, FamilyParams::defaults());
  CHECK(s.levelOf(4) == 0);
  CHECK(s.levelOf(2) == 1);
  CHECK(s.levelOf(6) == 1);
  for (long long j = 1; j < 8; j += 2) CHECK(s.levelOf(j) == 2);
}

TEST_CASE("family trees hit the requested size exactly") {
  auto f = FamilyParams::defaults();
  for (long long n : {17LL, 100LL, 999LL, 1000LL, 9999LL, 10000LL, 54321LL,
                      100000LL}) {
    auto t = buildFamily(n, f);
    CHECK(t.size() == n);
  }
}

TEST_CASE("family build is deterministic") {
  auto f = FamilyParams::defaults();
  auto a = buildFamily(4321, f);
  auto b = buildFamily(4321, f);
  CHECK(a.structurallyEquals(b));
}

TEST_CASE("small n falls back to a right path") {
  auto f = FamilyParams::defaults();
  for (long long n : {1LL, 2LL, 15LL, 16LL, 30LL}) {
    auto t = buildFamily(n, f);
    REQUIRE(t.size() == n);
    CHECK(t.structurallyEquals(
        generateTree(TreeKind::RightPath, static_cast<int>(n), 0)));
  }
}

TEST_CASE("top-level path realizes the skeleton sizes") {
  auto f = FamilyParams::defaults();
  auto s = familySkeleton(10000, f);
  auto t = buildFamily(10000, f);
  int u = t.root();
  for (long long j = 1; j < s.k; ++j) {
    REQUIRE(u != kNoNode);
    CHECK(t.subtreeSize(t.left(u)) == s.alphaSize[j]);
    int v = t.right(u);
    REQUIRE(v != kNoNode);
    CHECK(t.subtreeSize(t.right(v)) == s.betaSize[j]);
    u = t.left(v);
  }
  REQUIRE(u != kNoNode);
  CHECK(t.subtreeSize(t.left(u)) == s.lrSize);
  CHECK(t.subtreeSize(t.right(u)) == s.lrSize);
}

TEST_CASE("ruler property holds on every index interval") {
  auto f = FamilyParams::defaults();
  auto s = familySkeleton(10000, f);
  for (long long jlo = 1; jlo < s.k; ++jlo)
    for (long long jhi = jlo; jhi < s.k; ++jhi)
      CHECK(checkRulerProperty(s, f, jlo, jhi));
  // one recursion level down: the L/R subtrees build the same family
  auto s2 = familySkeleton(s.lrSize, f);
  REQUIRE(s2.h >= 1);
  for (long long jlo = 1; jlo < s2.k; ++jlo)
    for (long long jhi = jlo; jhi < s2.k; ++jhi)
      CHECK(checkRulerProperty(s2, f, jlo, jhi));
}

TEST_CASE("ruler property rejects bad intervals") {
  auto f = FamilyParams::defaults();
  auto s = familySkeleton(10000, f);
  CHECK_THROWS_AS(checkRulerProperty(s, f, 0, 3), std::invalid_argument);
  CHECK_THROWS_AS(checkRulerProperty(s, f, 3, 8), std::invalid_argument);
  CHECK_THROWS_AS(checkRulerProperty(s, f, 5, 4), std::invalid_argument);
}
