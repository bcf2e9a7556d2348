#pragma once

#include <utility>
#include <vector>

namespace lrdraw {

/// Inputs and outputs of one case-coverage lemma evaluation.
struct LambdaReport {
  double p = 0;
  double gamma = 0;
  int h = 0;
  int istar = 0;  // 0 when not refined
  double a0 = 0;
  std::vector<double> a;  // a_0..a_h
  std::vector<double> b;  // b_0..b_h
  double rho = 0;
  double lambda = 0;
  bool boundOk = false;
};

/// Base lemma: geometric weights, rho = 1 + 2*sum q^i, b0 = 1 - rho*a0.
/// Computes both the 5-term and the simplified 3-term lambda and requires
/// them to agree to 1e-12. boundOk means lambda^{1-p} < 1.
LambdaReport lambdaBase(double p, double a0, int h);

/// Refined lemma with the i* split and the gamma Hoelder step; istar in
/// [1, h+1]. boundOk means lambda < 1.
LambdaReport lambdaRefined(double p, double gamma, int h, double a0, int istar);

/// sum c_i X_i^p <= (sum c_i^{1/(1-p)})^{1-p} (sum X_i)^p, within relative
/// tolerance 1e-9.
bool holderCheck(const std::vector<double>& coeffs,
                 const std::vector<double>& values, double p);

/// Solves 1 - 2^{-x} = (2^{1/x} - 1)^x by bisection; returns (x, 1/(1+x)).
std::pair<double, double> lowerBoundExponent();

/// For a given p, the mu maximizing phi^p + mu^p under the linear constraint,
/// with the corresponding phi.
std::pair<double, double> familyParamsFor(double p);

/// Least-squares fit of width = a*n^b - c; b by golden section on [0.2, 0.8],
/// (a, c) by linear least squares for each b. Returns (a, b, c).
struct PowerFit {
  double a = 0, b = 0, c = 0;
};
PowerFit powerFit(const std::vector<std::pair<double, double>>& points);

}  // namespace lrdraw
