#include <catch2/catch_amalgamated.hpp>

#include <limits>
#include <random>

#include "skbound/grid.hpp"
#include "skbound/lp.hpp"

using namespace skb;

TEST_CASE("simplex grid enumeration") {
  SimplexGrid g2(2, 2);
  REQUIRE(g2.size() == 3);
  CHECK(g2.atom(0) == std::vector<double>{0.0, 1.0});
  CHECK(g2.atom(1) == std::vector<double>{0.5, 0.5});
  CHECK(g2.atom(2) == std::vector<double>{1.0, 0.0});

  SimplexGrid g3(3, 2);
  CHECK(g3.size() == 6);  // C(4,2)
  for (std::int64_t j = 0; j < g3.size(); ++j) {
    int s = 0;
    for (int i = 0; i < 3; ++i) s += g3.atom_counts(j)[i];
    CHECK(s == 2);  // exact rational normalization
  }

  SimplexGrid g1(1, 7);
  REQUIRE(g1.size() == 1);
  CHECK(g1.atom(0)[0] == 1.0);

  CHECK_THROWS_AS(SimplexGrid(10, 100), CapacityError);
  CHECK(binomial(83, 3) == 91881);
}

TEST_CASE("lp tiny cases") {
  // one variable: min w s.t. w = 1
  LinearProgram lp1{1, 1, {1.0}, {1.0}, {1.0}};
  auto r1 = lp_minimize(lp1);
  REQUIRE(r1.status == LpStatus::Optimal);
  CHECK(r1.value == Catch::Approx(1.0).margin(1e-12));
  REQUIRE(r1.weights.size() == 1);
  CHECK(r1.weights[0].second == Catch::Approx(1.0).margin(1e-12));

  // two atoms at 0 and 1, barycenter 0.3 -> weights (0.7, 0.3)
  LinearProgram lp2{2, 2, {0.0, 0.0}, {0.0, 1.0, 1.0, 1.0}, {0.3, 1.0}};
  auto r2 = lp_minimize(lp2);
  REQUIRE(r2.status == LpStatus::Optimal);
  double w0 = 0, w1 = 0;
  for (auto [j, w] : r2.weights) (j == 0 ? w0 : w1) = w;
  CHECK(w0 == Catch::Approx(0.7).margin(1e-10));
  CHECK(w1 == Catch::Approx(0.3).margin(1e-10));

  // barycenter outside conv{0, 0.5} -> infeasible
  LinearProgram lp3{2, 2, {0.0, 0.0}, {0.0, 0.5, 1.0, 1.0}, {0.9, 1.0}};
  auto r3 = lp_minimize(lp3);
  CHECK(r3.status == LpStatus::Infeasible);
  CHECK_FALSE(r3.farkas.empty());

  // unbounded: min -w, single row 0*w = 0
  LinearProgram lp4{1, 1, {-1.0}, {0.0}, {0.0}};
  auto r4 = lp_minimize(lp4);
  CHECK(r4.status == LpStatus::Unbounded);
}

TEST_CASE("lp redundant rows") {
  // duplicated constraint row; solvable despite rank deficiency
  LinearProgram lp{3, 3,
                   {3.0, 1.0, 2.0},
                   {1.0, 1.0, 1.0,
                    1.0, 1.0, 1.0,
                    0.0, 1.0, 2.0},
                   {1.0, 1.0, 0.5}};
  auto r = lp_minimize(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  // optimum is w = (0.5, 0.5, 0): value 3*0.5 + 1*0.5 = 2
  CHECK(r.value == Catch::Approx(2.0).margin(1e-9));
}

TEST_CASE("lp randomized 1-D envelope structure") {
  // with a convex cost over a 1-D grid the LP value must equal the
  // piecewise-linear interpolation between the two bracketing grid points
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    const int n = 21;
    std::vector<double> xs(n), cost(n);
    for (int j = 0; j < n; ++j) {
      xs[static_cast<size_t>(j)] = static_cast<double>(j) / (n - 1);
      double x = xs[static_cast<size_t>(j)];
      cost[static_cast<size_t>(j)] = x * x - x;
    }
    double target = 0.05 + 0.9 * U(rng);
    LinearProgram lp;
    lp.m = 2;
    lp.n = n;
    lp.c = cost;
    lp.b = {target, 1.0};
    lp.a.resize(2 * n);
    for (int j = 0; j < n; ++j) {
      lp.a[static_cast<size_t>(j)] = xs[static_cast<size_t>(j)];
      lp.a[static_cast<size_t>(n + j)] = 1.0;
    }
    auto r = lp_minimize(lp);
    REQUIRE(r.status == LpStatus::Optimal);
    double lo = std::floor(target * (n - 1)) / (n - 1);
    double hi = lo + 1.0 / (n - 1);
    double th = (target - lo) / (hi - lo);
    double expect = (1 - th) * (lo * lo - lo) + th * (hi * hi - hi);
    CHECK(r.value == Catch::Approx(expect).margin(1e-9));
    CHECK(r.weights.size() <= 3);
  }
}
