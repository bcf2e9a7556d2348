#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "lrdraw/numerics.hpp"

using namespace lrdraw;

TEST_CASE("base lemma at the published operating point") {
  auto r = lambdaBase(0.438, 0.247, 64);
  CHECK(r.rho == doctest::Approx(2.3950680).epsilon(1e-6));
  CHECK(r.lambda == doctest::Approx(0.9983654).epsilon(1e-6));
  CHECK(r.boundOk);
  CHECK(static_cast<int>(r.a.size()) == 65);
  CHECK(static_cast<int>(r.b.size()) == 65);
}

TEST_CASE("general and simplified lambda agree across a grid") {
  for (double p : {0.41, 0.438, 0.46})
    for (double a0 : {0.18, 0.247, 0.30})
      for (int h : {1, 8, 32}) CHECK_NOTHROW(lambdaBase(p, a0, h));
}

TEST_CASE("weights are a normalized geometric family") {
  auto r = lambdaBase(0.438, 0.247, 40);
  double q = std::exp2(-(1.0 - r.p) / r.p);
  double sum = r.a[0] + r.b[0];
  for (int i = 1; i <= r.h; ++i) {
    CHECK(r.a[i] == doctest::Approx(r.a[i - 1] * q).epsilon(1e-12));
    sum += 2 * r.a[i];
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("oversized a0 is rejected") {
  CHECK_THROWS_AS(lambdaBase(0.438, 0.43, 8), std::invalid_argument);
  CHECK_THROWS_AS(lambdaBase(0.0, 0.2, 8), std::invalid_argument);
  CHECK_THROWS_AS(lambdaBase(0.438, -0.1, 8), std::invalid_argument);
}

TEST_CASE("lambda is minimized near a0 = 0.246") {
  double bestA = 0, bestL = 1e9;
  for (double a0 = 0.20; a0 <= 0.30; a0 += 1e-4) {
    double l = lambdaBase(0.438, a0, 64).lambda;
    if (l < bestL) { bestL = l; bestA = a0; }
  }
  CHECK(bestA == doctest::Approx(0.246).epsilon(5e-3));
  CHECK(bestL < 0.99837);
}

TEST_CASE("refined lemma stays below one for every split point") {
  for (int istar = 1; istar <= 8; ++istar) {
    auto r = lambdaRefined(0.437, 0.1, 7, 0.247, istar);
    CHECK(r.lambda < 1.0);
    CHECK(r.boundOk);
  }
  CHECK(lambdaRefined(0.437, 0.1, 7, 0.247, 1).lambda ==
        doctest::Approx(0.999998).epsilon(1e-5));
  CHECK_THROWS_AS(lambdaRefined(0.437, 0.1, 7, 0.247, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(lambdaRefined(0.437, 0.1, 7, 0.247, 9),
                  std::invalid_argument);
}

TEST_CASE("gamma dependence of the refined lambda") {
  // istar = h+1: the gamma step never applies, lambda is constant in gamma
  double base = lambdaRefined(0.437, 0.0, 7, 0.247, 8).lambda;
  for (double g : {0.05, 0.1, 0.2, 0.4})
    CHECK(lambdaRefined(0.437, g, 7, 0.247, 8).lambda ==
          doctest::Approx(base).epsilon(1e-12));
  // istar in the interior: lambda is nondecreasing in gamma
  double prev = 0.0;
  for (double g : {0.0, 0.05, 0.1, 0.2, 0.4}) {
    double l = lambdaRefined(0.437, g, 7, 0.247, 4).lambda;
    CHECK(l >= prev - 1e-12);
    prev = l;
  }
  // continuity in gamma
  double l1 = lambdaRefined(0.437, 0.1, 7, 0.247, 4).lambda;
  double l2 = lambdaRefined(0.437, 0.1 + 1e-7, 7, 0.247, 4).lambda;
  CHECK(std::abs(l1 - l2) < 1e-5);
}

TEST_CASE("power-mean inequality fuzz") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int it = 0; it < 2000; ++it) {
    double p = 0.05 + 0.9 * u(rng);
    int m = 2 + static_cast<int>(rng() % 5);
    std::vector<double> c(m), x(m);
    for (int i = 0; i < m; ++i) {
      c[i] = 0.01 + u(rng);
      x[i] = u(rng) * 100.0;
    }
    CHECK(holderCheck(c, x, p));
  }
}

TEST_CASE("power-mean inequality is tight at proportional values") {
  double p = 0.438;
  std::vector<double> c = {0.3, 0.5, 0.2};
  std::vector<double> x(3);
  for (int i = 0; i < 3; ++i) x[i] = std::pow(c[i], 1.0 / (1.0 - p)) * 7.0;
  CHECK(holderCheck(c, x, p));
  CHECK_THROWS_AS(holderCheck({0.5}, {1.0, 2.0}, p), std::invalid_argument);
  CHECK_THROWS_AS(holderCheck(c, x, 1.5), std::invalid_argument);
}

TEST_CASE("lower-bound exponent solves its fixed-point equation") {
  auto [x, p] = lowerBoundExponent();
  CHECK(x == doctest::Approx(1.330921426746).epsilon(1e-9));
  CHECK(p == doctest::Approx(0.429014890217).epsilon(1e-9));
  double lhs = 1.0 - std::exp2(-x);
  double rhs = std::pow(std::exp2(1.0 / x) - 1.0, x);
  CHECK(std::abs(lhs - rhs) < 1e-10);
  CHECK(p == doctest::Approx(1.0 / (1.0 + x)).epsilon(1e-12));
}

TEST_CASE("family parameter search") {
  auto [mu429, phi429] = familyParamsFor(0.429);
  CHECK(mu429 == doctest::Approx(0.1223).epsilon(2e-3));
  CHECK(phi429 == doctest::Approx(0.297016).epsilon(1e-3));
  CHECK(std::pow(phi429, 0.429) + std::pow(mu429, 0.429) >= 1.0);
  // the linear constraint is honored by construction
  double decay = std::exp2(-(1.0 - 0.429) / 0.429);
  CHECK(phi429 + mu429 / (1.0 - decay) == doctest::Approx(0.5).epsilon(1e-9));

  auto [mu437, phi437] = familyParamsFor(0.437);
  CHECK(std::pow(phi437, 0.437) + std::pow(mu437, 0.437) <
        1.0);  // 0.437 is out of the family's reach
  CHECK_THROWS_AS(familyParamsFor(1.5), std::invalid_argument);
}

TEST_CASE("power fit recovers an exact law") {
  std::vector<std::pair<double, double>> pts;
  for (double n : {1.0, 4.0, 9.0, 16.0, 25.0, 100.0})
    pts.push_back({n, 2.0 * std::sqrt(n)});
  auto f = powerFit(pts);
  CHECK(f.b == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(f.a == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(std::abs(f.c) < 1e-6);
}

TEST_CASE("power fit on rounded synthetic data") {
  std::vector<std::pair<double, double>> pts;
  for (int n = 4; n <= 455; n += 7)
    pts.push_back({static_cast<double>(n),
                   std::round(1.54 * std::pow(n, 0.443) - 0.55)});
  auto f = powerFit(pts);
  CHECK(f.b == doctest::Approx(0.443).epsilon(0.05));
}

TEST_CASE("power fit rejects degenerate input") {
  CHECK_THROWS_AS(powerFit({{1.0, 1.0}, {2.0, 2.0}}), std::invalid_argument);
  CHECK_THROWS_AS(powerFit({{3.0, 1.0}, {3.0, 2.0}, {3.0, 3.0}, {3.0, 4.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(powerFit({{-1.0, 1.0}, {2.0, 2.0}, {3.0, 3.0}, {4.0, 4.0}}),
                  std::invalid_argument);
}
