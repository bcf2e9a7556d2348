#include "lrdraw/numerics.hpp"

#include <cmath>
#include <stdexcept>
#include <tuple>

namespace lrdraw {

namespace {

// Geometric weights shared by both lemmas: a_i = b_i = q^i a0 for i >= 1,
// q = 2^{-(1-p)/p}; b0 closes the sum to 1.
struct Weights {
  std::vector<double> a, b;
  double rho;
};

Weights geometricWeights(double p, double a0, int h) {
  if (!(p > 0 && p < 1) || !(a0 > 0))
    throw std::invalid_argument("lambda: need 0 < p < 1 and a0 > 0");
  double q = std::exp2(-(1.0 - p) / p);
  Weights w;
  w.a.assign(h + 1, 0);
  w.b.assign(h + 1, 0);
  w.a[0] = a0;
  double rho = 1;
  double qi = 1;
  for (int i = 1; i <= h; ++i) {
    qi *= q;
    w.a[i] = w.b[i] = qi * a0;
    rho += 2 * qi;
  }
  w.rho = rho;
  if (rho * a0 >= 1)
    throw std::invalid_argument("lambda: rho * a0 must be < 1");
  w.b[0] = 1 - rho * a0;
  return w;
}

}  // namespace

LambdaReport lambdaBase(double p, double a0, int h) {
  Weights w = geometricWeights(p, a0, h);
  const double e = 1.0 / (1.0 - p);

  double general = std::pow(w.a[0], e) + 2 * std::pow(w.b[0], e) +
                   std::pow(1 - w.b[0], e);
  for (int i = 1; i <= h; ++i)
    general += std::exp2(i) * (std::pow(w.a[i], e) + std::pow(w.b[i], e));

  double simplified = w.rho * std::pow(a0, e) +
                      2 * std::pow(1 - w.rho * a0, e) +
                      std::pow(w.rho * a0, e);
  if (std::abs(general - simplified) > 1e-12)
    throw std::logic_error("lambdaBase: general and simplified forms differ");

  LambdaReport r;
  r.p = p;
  r.h = h;
  r.a0 = a0;
  r.a = std::move(w.a);
  r.b = std::move(w.b);
  r.rho = w.rho;
  r.lambda = simplified;
  r.boundOk = r.lambda < 1;
  return r;
}

LambdaReport lambdaRefined(double p, double gamma, int h, double a0,
                           int istar) {
  if (istar < 1 || istar > h + 1)
    throw std::invalid_argument("lambdaRefined: istar must be in [1, h+1]");
  Weights w = geometricWeights(p, a0, h);
  const double e = 1.0 / (1.0 - p);

  double lambda = 0;
  double sumA = 0, sumBLow = 0, sumBHigh = 0;
  for (int i = 0; i <= h; ++i) {
    lambda += std::exp2(i) * std::pow(w.a[i], e);
    sumA += w.a[i];
  }
  for (int i = 0; i < istar; ++i) {
    lambda += std::exp2(i) * std::pow(w.b[i], e);
    sumBLow += w.b[i];
  }
  lambda += std::pow(sumBLow, e);
  for (int i = istar; i <= h; ++i) {
    lambda += (std::exp2(i) - 1 + std::pow(1 - gamma, e)) * std::pow(w.b[i], e);
    sumBHigh += w.b[i];
  }
  lambda += std::pow(
      sumA + std::pow(1 + std::pow(gamma, e), 1 - p) * sumBHigh, e);

  LambdaReport r;
  r.p = p;
  r.gamma = gamma;
  r.h = h;
  r.istar = istar;
  r.a0 = a0;
  r.a = std::move(w.a);
  r.b = std::move(w.b);
  r.rho = w.rho;
  r.lambda = lambda;
  r.boundOk = lambda < 1;
  return r;
}

bool holderCheck(const std::vector<double>& coeffs,
                 const std::vector<double>& values, double p) {
  if (!(p > 0 && p < 1))
    throw std::invalid_argument("holderCheck: need 0 < p < 1");
  if (coeffs.size() != values.size())
    throw std::invalid_argument("holderCheck: size mismatch");
  double lhs = 0, cSum = 0, xSum = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    lhs += coeffs[i] * std::pow(values[i], p);
    cSum += std::pow(coeffs[i], 1.0 / (1.0 - p));
    xSum += values[i];
  }
  double rhs = std::pow(cSum, 1.0 - p) * std::pow(xSum, p);
  return lhs <= rhs * (1 + 1e-9) + 1e-300;
}

std::pair<double, double> lowerBoundExponent() {
  auto f = [](double x) {
    return (1 - std::exp2(-x)) - std::pow(std::exp2(1.0 / x) - 1, x);
  };
  double lo = 0.8, hi = 2.0;
  double flo = f(lo), fhi = f(hi);
  if (!(flo < 0 && fhi > 0))
    throw std::logic_error("lowerBoundExponent: no sign change in bracket");
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if (std::abs(fm) < 1e-13) {
      lo = hi = mid;
      break;
    }
    (fm < 0 ? lo : hi) = mid;
  }
  double x = 0.5 * (lo + hi);
  return {x, 1.0 / (1.0 + x)};
}

std::pair<double, double> familyParamsFor(double p) {
  if (!(p > 0 && p < 1))
    throw std::invalid_argument("familyParamsFor: need 0 < p < 1");
  double q = std::exp2(-(1.0 - p) / p);
  auto phiOf = [&](double mu) { return 0.5 - mu / (1.0 - q); };
  auto goal = [&](double mu) {
    return std::pow(phiOf(mu), p) + std::pow(mu, p);
  };
  // Golden-section maximization over the range keeping phi > 0.
  const double gr = (std::sqrt(5.0) - 1) / 2;
  double lo = 1e-12, hi = 0.5 * (1 - q) - 1e-12;
  double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
  double fc = goal(c), fd = goal(d);
  while (hi - lo > 1e-9) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - gr * (hi - lo);
      fc = goal(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + gr * (hi - lo);
      fd = goal(d);
    }
  }
  double mu = 0.5 * (lo + hi);
  return {mu, phiOf(mu)};
}

PowerFit powerFit(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 4)
    throw std::invalid_argument("powerFit: need at least 4 points");
  bool distinct = false;
  for (const auto& [n, _] : points) {
    if (!(n > 0)) throw std::invalid_argument("powerFit: n must be positive");
    if (n != points.front().first) distinct = true;
  }
  if (!distinct) throw std::invalid_argument("powerFit: degenerate points");

  // For fixed b, (a, c) solve the 2x2 normal equations of a*n^b - c.
  auto solve = [&](double b) {
    double sxx = 0, sx = 0, sxw = 0, sw = 0;
    double N = static_cast<double>(points.size());
    for (const auto& [n, w] : points) {
      double x = std::pow(n, b);
      sxx += x * x;
      sx += x;
      sxw += x * w;
      sw += w;
    }
    double det = sxx * N - sx * sx;
    double a = (sxw * N - sx * sw) / det;
    double c = (a * sx - sw) / N;
    double sse = 0;
    for (const auto& [n, w] : points) {
      double r = a * std::pow(n, b) - c - w;
      sse += r * r;
    }
    return std::make_tuple(a, c, sse);
  };

  const double gr = (std::sqrt(5.0) - 1) / 2;
  double lo = 0.2, hi = 0.8;
  double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
  double fc = std::get<2>(solve(c)), fd = std::get<2>(solve(d));
  while (hi - lo > 1e-10) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - gr * (hi - lo);
      fc = std::get<2>(solve(c));
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + gr * (hi - lo);
      fd = std::get<2>(solve(d));
    }
  }
  double b = 0.5 * (lo + hi);
  auto [a, cc, sse] = solve(b);
  (void)sse;
  return PowerFit{a, b, cc};
}

}  // namespace lrdraw
