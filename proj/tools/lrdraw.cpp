#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "lrdraw/construct.hpp"
#include "lrdraw/family.hpp"
#include "lrdraw/numerics.hpp"
#include "lrdraw/oracle.hpp"
#include "lrdraw/tree.hpp"

using namespace lrdraw;

namespace {

std::string readInput(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void writeOutput(const std::string& path, const std::string& data) {
  if (path.empty()) {
    std::cout << data;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  f << data;
}

BinaryTree makeTree(const std::string& family, long long n, std::uint64_t seed,
                    double p, double mu, int c0) {
  if (family == "lower-bound") {
    auto params = FamilyParams::withP(p, mu, c0);
    return buildFamily(n, params);
  }
  TreeKind kind;
  if (family == "random") kind = TreeKind::Uniform;
  else if (family == "bst") kind = TreeKind::BstShape;
  else if (family == "complete") kind = TreeKind::Complete;
  else if (family == "left-path") kind = TreeKind::LeftPath;
  else if (family == "right-path") kind = TreeKind::RightPath;
  else throw CLI::ValidationError("--family", "unknown family " + family);
  return generateTree(kind, static_cast<int>(n), seed);
}

ConstructParams paramsFor(const std::string& algo, double delta, int h,
                          int n0) {
  ConstructParams p = algo == "twist437" ? ConstructParams::twist437()
                                         : ConstructParams::twist438();
  if (delta > 0) p.delta = delta;
  if (h > 0) p.h = h;
  if (n0 > 0) p.n0 = n0;
  return p;
}

Decomposition decomposeWith(const BinaryTree& t, const std::string& algo,
                            double delta, int h, int n0) {
  if (algo == "baseline") return baselineConstruct(t);
  if (algo == "optimal") return optimalDecomposition(t);
  return construct(t, paramsFor(algo, delta, h, n0));
}

int jobsFromEnv(int jobs) {
  if (jobs > 0) return jobs;
  if (const char* env = std::getenv("LRDRAW_JOBS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

struct GridSpec {
  std::vector<long long> values;
};

GridSpec parseGrid(const std::string& text) {
  // "a:b:step" walks additively; "a:b:xF" multiplies by F each step.
  GridSpec g;
  auto c1 = text.find(':');
  auto c2 = text.find(':', c1 == std::string::npos ? 0 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw CLI::ValidationError("--n-grid", "expected a:b:step");
  long long a = std::stoll(text.substr(0, c1));
  long long b = std::stoll(text.substr(c1 + 1, c2 - c1 - 1));
  std::string step = text.substr(c2 + 1);
  if (a < 1 || b < a) throw CLI::ValidationError("--n-grid", "bad range");
  if (!step.empty() && step[0] == 'x') {
    double f = std::stod(step.substr(1));
    if (f <= 1.0) throw CLI::ValidationError("--n-grid", "factor must be > 1");
    for (double v = static_cast<double>(a); v <= static_cast<double>(b);
         v *= f)
      g.values.push_back(static_cast<long long>(std::llround(v)));
  } else {
    long long s = std::stoll(step);
    if (s < 1) throw CLI::ValidationError("--n-grid", "step must be >= 1");
    for (long long v = a; v <= b; v += s) g.values.push_back(v);
  }
  return g;
}

int runVerifyLemma(const std::string& which) {
  std::ostringstream out;
  bool ok = true;
  auto flag = [&](bool b) { ok = ok && b; return b ? "ok" : "FAIL"; };
  if (which == "base") {
    auto r = lambdaBase(0.438, 0.247, 64);
    out << "p\ta0\th\trho\tlambda\tstatus\n";
    out << r.p << '\t' << r.a0 << '\t' << r.h << '\t' << r.rho << '\t'
        << r.lambda << '\t' << flag(r.boundOk && r.lambda < 0.9984) << '\n';
  } else if (which == "refined") {
    out << "p\tgamma\th\ta0\tistar\tlambda\tstatus\n";
    for (int istar = 1; istar <= 8; ++istar) {
      auto r = lambdaRefined(0.437, 0.1, 7, 0.247, istar);
      out << r.p << '\t' << r.gamma << '\t' << r.h << '\t' << r.a0 << '\t'
          << istar << '\t' << r.lambda << '\t' << flag(r.lambda < 1.0)
          << '\n';
    }
  } else if (which == "exponent") {
    auto [x, p] = lowerBoundExponent();
    double residual =
        std::abs((1.0 - std::exp2(-x)) - std::pow(std::exp2(1.0 / x) - 1.0, x));
    out << "x\tp\tresidual\tstatus\n";
    out << x << '\t' << p << '\t' << residual << '\t'
        << flag(residual < 1e-12 && p >= 0.429 && p < 0.430) << '\n';
  } else if (which == "family-params") {
    double p = 0.429;
    auto [mu, phi] = familyParamsFor(p);
    auto fixed = FamilyParams::withP(p, 0.122);
    double goal = std::pow(phi, p) + std::pow(mu, p);
    out << "p\tmu\tphi\tgoal\tphi_at_mu_0.122\tstatus\n";
    out << p << '\t' << mu << '\t' << phi << '\t' << goal << '\t' << fixed.phi
        << '\t'
        << flag(goal >= 1.0 && std::abs(fixed.phi - 0.297513) < 1e-6 &&
                std::abs(fixed.linearResidual()) < 1e-9)
        << '\n';
  } else if (which == "holder") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    long long violations = 0;
    const long long total = 100000;
    for (long long it = 0; it < total; ++it) {
      double p = 0.05 + 0.9 * u(rng);
      int m = 2 + static_cast<int>(rng() % 5);
      std::vector<double> c(m), x(m);
      for (int i = 0; i < m; ++i) {
        c[i] = 0.01 + u(rng);
        x[i] = u(rng) * 100.0;
      }
      if (!holderCheck(c, x, p)) ++violations;
    }
    out << "instances\tviolations\tstatus\n";
    out << total << '\t' << violations << '\t' << flag(violations == 0)
        << '\n';
  } else {
    throw CLI::ValidationError("--which", "unknown lemma " + which);
  }
  std::cout << out.str();
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LR drawings of binary trees: generate, draw, measure, verify"};
  app.require_subcommand(1);
  std::cout.precision(12);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a tree");
  std::string genFamily = "random", genOut;
  long long genN = 100;
  std::uint64_t genSeed = 0;
  double genP = 0.429, genMu = 0.122;
  int genC0 = 4;
  gen->add_option("--family", genFamily)
      ->check(CLI::IsMember({"lower-bound", "random", "bst", "complete",
                             "left-path", "right-path"}));
  gen->add_option("--n", genN)->required()->check(CLI::PositiveNumber);
  gen->add_option("--seed", genSeed);
  gen->add_option("--p", genP);
  gen->add_option("--mu", genMu);
  gen->add_option("--c0", genC0);
  gen->add_option("--out", genOut);

  // draw
  auto* draw = app.add_subcommand("draw", "lay out a tree and emit it");
  draw->set_help_flag("--help", "print help");  // frees --h for the level cap
  std::string drawAlgo = "twist438", drawIn, drawOut, drawFormat = "tsv";
  double drawDelta = 0;
  int drawH = 0, drawN0 = 0;
  draw->add_option("--algo", drawAlgo)
      ->check(CLI::IsMember({"twist438", "twist437", "baseline", "optimal"}));
  draw->add_option("--in", drawIn)->required();
  draw->add_option("--out", drawOut);
  draw->add_option("--format", drawFormat)
      ->check(CLI::IsMember({"svg", "tsv"}));
  draw->add_option("--delta", drawDelta);
  draw->add_option("--h", drawH);
  draw->add_option("--n0", drawN0);

  // width
  auto* width = app.add_subcommand("width", "drawing width of a tree");
  std::string widthAlgo = "twist438", widthIn;
  width->add_option("--algo", widthAlgo)
      ->check(CLI::IsMember({"twist438", "twist437", "baseline", "optimal"}));
  width->add_option("--in", widthIn)->required();

  // oracle
  auto* oracle = app.add_subcommand("oracle", "exact-width oracle checks");
  long long oracleN = 8;
  bool oracleExhaustive = false;
  std::uint64_t oracleSeed = 0;
  long long oracleCount = 200;
  oracle->add_option("--n", oracleN)->required()->check(CLI::PositiveNumber);
  oracle->add_flag("--exhaustive", oracleExhaustive);
  oracle->add_option("--seed", oracleSeed);
  oracle->add_option("--count", oracleCount);

  // verify-lemma
  auto* verify = app.add_subcommand("verify-lemma", "numerical lemma checks");
  std::string which;
  verify->add_option("--which", which)
      ->required()
      ->check(CLI::IsMember(
          {"base", "refined", "exponent", "family-params", "holder"}));

  // bench
  auto* bench = app.add_subcommand("bench", "width sweep over a size grid");
  std::string benchFamily = "lower-bound", benchAlgo = "twist437",
              benchGrid = "1024:65536:x2", benchOut;
  std::uint64_t benchSeed = 0;
  int benchJobs = 0;
  bench->add_option("--family", benchFamily)
      ->check(CLI::IsMember({"lower-bound", "random", "bst", "complete",
                             "left-path", "right-path"}));
  bench->add_option("--algo", benchAlgo)
      ->check(CLI::IsMember({"twist438", "twist437", "baseline", "optimal"}));
  bench->add_option("--n-grid", benchGrid);
  bench->add_option("--seed", benchSeed);
  bench->add_option("--jobs", benchJobs);
  bench->add_option("--out", benchOut);

  // fit
  auto* fit = app.add_subcommand("fit", "power-law fit of width points");
  std::string fitIn;
  fit->add_option("--in", fitIn)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (*gen) {
      auto t = makeTree(genFamily, genN, genSeed, genP, genMu, genC0);
      writeOutput(genOut, serializeTree(t) + "\n");
      return 0;
    }
    if (*draw) {
      auto t = parseTree(readInput(drawIn));
      auto dec = decomposeWith(t, drawAlgo, drawDelta, drawH, drawN0);
      auto lay = assemble(t, dec);
      if (!validate(t, lay).allOk()) {
        std::cerr << "draw: layout failed validation\n";
        return 1;
      }
      writeOutput(drawOut, emit(lay, t,
                                drawFormat == "svg" ? EmitFormat::Svg
                                                    : EmitFormat::Tsv));
      return 0;
    }
    if (*width) {
      auto t = parseTree(readInput(widthIn));
      int w = widthAlgo == "optimal"
                  ? wstar(t)
                  : decompositionWidth(t, decomposeWith(t, widthAlgo, 0, 0, 0));
      std::cout << w << "\n";
      return 0;
    }
    if (*oracle) {
      if (oracleExhaustive) {
        if (oracleN > 13)
          throw CLI::ValidationError("--n", "exhaustive sweep needs n <= 13");
        std::cout << "n\tworst_width\twitness\n";
        for (int n = 1; n <= static_cast<int>(oracleN); ++n) {
          auto wc = worstCaseWidth(n);
          std::cout << n << '\t' << wc.width << '\t'
                    << serializeTree(wc.witness) << '\n';
        }
        return 0;
      }
      if (oracleN > 24)
        throw CLI::ValidationError("--n", "bruteforce cross-check needs n <= 24");
      std::mt19937_64 rng(oracleSeed);
      long long mismatches = 0;
      for (long long i = 0; i < oracleCount; ++i) {
        int n = 1 + static_cast<int>(rng() % oracleN);
        auto t = generateTree(TreeKind::Uniform, n, rng());
        if (wstar(t) != wstarBruteforce(t)) ++mismatches;
      }
      std::cout << "checked\t" << oracleCount << "\nmismatches\t" << mismatches
                << "\n";
      return mismatches == 0 ? 0 : 1;
    }
    if (*verify) return runVerifyLemma(which);
    if (*bench) {
      auto grid = parseGrid(benchGrid);
      int jobs = jobsFromEnv(benchJobs);
      struct Row {
        long long n = 0;
        int width = 0;
        double millis = 0;
      };
      std::vector<Row> rows(grid.values.size());
      std::atomic<std::size_t> next{0};
      auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < grid.values.size();
             i = next.fetch_add(1)) {
          long long n = grid.values[i];
          auto t = makeTree(benchFamily, n, benchSeed + i, 0.429, 0.122, 4);
          auto t0 = std::chrono::steady_clock::now();
          int w = benchAlgo == "optimal"
                      ? wstar(t)
                      : decompositionWidth(
                            t, decomposeWith(t, benchAlgo, 0, 0, 0));
          auto t1 = std::chrono::steady_clock::now();
          rows[i] = {n, w,
                     std::chrono::duration<double, std::milli>(t1 - t0)
                         .count()};
        }
      };
      std::vector<std::thread> pool;
      for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
      worker();
      for (auto& th : pool) th.join();
      std::ostringstream out;
      out.precision(6);
      out << "n\twidth\tmillis\n";
      for (const auto& r : rows)
        out << r.n << '\t' << r.width << '\t' << r.millis << '\n';
      writeOutput(benchOut, out.str());
      return 0;
    }
    if (*fit) {
      std::istringstream in(readInput(fitIn));
      std::vector<std::pair<double, double>> pts;
      std::string line;
      while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        double n, w;
        if (ls >> n >> w) pts.push_back({n, w});
      }
      auto f = powerFit(pts);
      std::cout << f.a << '\t' << f.b << '\t' << f.c << "\n";
      return 0;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "tree parse error at offset " << e.offset << ": " << e.what()
              << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 2;
}
