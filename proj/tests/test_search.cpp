#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "skbound/search.hpp"

using namespace skb;

namespace {

JointPmf dirichlet_matrix(std::mt19937_64& rng, int nx, int ny) {
  std::gamma_distribution<double> g(1.0, 1.0);
  std::vector<double> m(static_cast<size_t>(nx) * ny);
  double tot = 0.0;
  for (auto& v : m) tot += (v = g(rng));
  for (auto& v : m) v /= tot;
  return JointPmf(AlphabetSpec({{"X", nx}, {"Y", ny}}), std::move(m));
}

JointPmf dirichlet_joint(std::mt19937_64& rng, std::vector<Axis> axes) {
  AlphabetSpec spec(std::move(axes));
  std::gamma_distribution<double> g(1.0, 1.0);
  std::vector<double> m(static_cast<size_t>(spec.cells()));
  double tot = 0.0;
  for (auto& v : m) tot += (v = g(rng));
  for (auto& v : m) v /= tot;
  return JointPmf(std::move(spec), std::move(m));
}

SearchConfig quick_cfg(std::uint64_t seed = 5, int restarts = 5, int iters = 250) {
  SearchConfig cfg;
  cfg.seed = seed;
  cfg.restarts = restarts;
  cfg.max_iters = iters;
  return cfg;
}

}  // namespace

TEST_CASE("psi-hat search anchors") {
  JointPmf p = JointPmf::from_matrix("X", "Y", {{0.4, 0.1}, {0.1, 0.4}});
  double ixy = p.mutual_information({"X"}, {"Y"});

  // |J| = 1 collapses to constant J: exactly I(X;Y)
  {
    JointPmf pz = p.apply_function("X", "Y", FunctionTable::xor2(), "Z");
    SearchConfig cfg = quick_cfg();
    cfg.j_card = 1;
    cfg.restarts = 2;
    BoundReport r = psi_hat_search(pz, cfg);
    CHECK(r.value == Catch::Approx(ixy).margin(1e-12));
  }

  // AND, Cov > 0: the alpha-split seed certifies <= 1e-6
  {
    JointPmf pz = p.apply_function("X", "Y", FunctionTable::and2(), "Z");
    BoundReport r = psi_hat_search(pz, quick_cfg());
    CHECK(r.value <= 1e-6);
    CHECK(r.value >= -1e-12);
  }

  // random binary XOR laws: agree with the envelope within 2e-3 and obey
  // the seeded-baseline dominance
  std::mt19937_64 rng(77);
  for (int t = 0; t < 20; ++t) {
    JointPmf q = dirichlet_matrix(rng, 2, 2);
    JointPmf qz = q.apply_function("X", "Y", FunctionTable::xor2(), "Z");
    BoundReport rs = psi_hat_search(qz, quick_cfg(t));
    BoundReport re = psi_hat_envelope(qz, 40);
    CHECK(rs.value == Catch::Approx(re.value).margin(2e-3));
    double cap = std::min(qz.mutual_information({"X"}, {"Y"}),
                          qz.conditional_mutual_information({"X"}, {"Y"}, {"Z"}));
    CHECK(rs.value <= cap + 1e-9);
  }

  // reproducible bit-for-bit from (seed, config)
  {
    JointPmf pz = p.apply_function("X", "Y", FunctionTable::xor2(), "Z");
    BoundReport a = psi_hat_search(pz, quick_cfg(42));
    BoundReport b = psi_hat_search(pz, quick_cfg(42));
    CHECK(a.value == b.value);
    REQUIRE(a.trace.size() == b.trace.size());
    for (size_t i = 0; i < a.trace.size(); ++i) CHECK(a.trace[i] == b.trace[i]);
  }
}

TEST_CASE("grid oracle") {
  JointPmf p = JointPmf::from_matrix("X", "Y", {{0.4, 0.1}, {0.1, 0.4}});

  // j_card = 1: exactly I(X;Y)
  JointPmf pxor = p.apply_function("X", "Y", FunctionTable::xor2(), "Z");
  CHECK(grid_oracle(pxor, 1, 4) ==
        Catch::Approx(p.mutual_information({"X"}, {"Y"})).margin(1e-12));

  // uniform independent XOR: constant row reaches 0
  JointPmf u = JointPmf::from_matrix("X", "Y", {{0.25, 0.25}, {0.25, 0.25}});
  JointPmf uz = u.apply_function("X", "Y", FunctionTable::xor2(), "Z");
  CHECK(grid_oracle(uz, 2, 10) <= 1e-12);

  // AND Cov>0 at k=50: within 1e-3 of 0 (alpha split near a grid point)
  JointPmf pand = p.apply_function("X", "Y", FunctionTable::and2(), "Z");
  double oracle = grid_oracle(pand, 2, 50);
  CHECK(oracle <= 1e-3);
  CHECK(oracle >= 0.0);

  // oracle sandwich against search on 4-cell instances
  std::mt19937_64 rng(3);
  for (int t = 0; t < 3; ++t) {
    JointPmf q = dirichlet_matrix(rng, 2, 2);
    JointPmf qz = q.apply_function("X", "Y", t % 2 ? FunctionTable::xor2() : FunctionTable::and2(), "Z");
    SearchConfig cfg = quick_cfg(t);
    cfg.j_card = 2;
    double s = psi_hat_search(qz, cfg).value;
    double o = grid_oracle(qz, 2, 50);
    CHECK(o >= s - 1e-9);
    CHECK(o <= s + 5e-3);
  }

  CHECK_THROWS_AS(grid_oracle(pxor, 6, 60), CapacityError);
}

TEST_CASE("intrinsic information") {
  // Z = (X,Y) jointly: J = Z makes I(X;Y|J) = 0
  JointPmf p = JointPmf::from_matrix("X", "Y", {{0.4, 0.1}, {0.1, 0.4}});
  JointPmf rev = p.apply_function("X", "Y", FunctionTable(2, 2, 4, {0, 1, 2, 3}), "Z");
  BoundReport r1 = intrinsic_information(rev, quick_cfg());
  CHECK(r1.value <= 1e-9);

  // Z independent of (X,Y): value <= both baselines (= I(X;Y))
  JointPmf pz(AlphabetSpec({{"X", 2}, {"Y", 2}, {"Z", 2}}),
              {0.2, 0.05, 0.05, 0.2, 0.2, 0.05, 0.05, 0.2});
  BoundReport r2 = intrinsic_information(pz, quick_cfg());
  double ixy = pz.mutual_information({"X"}, {"Y"});
  CHECK(r2.value <= ixy + 1e-9);
  CHECK(r2.value <= pz.conditional_mutual_information({"X"}, {"Y"}, {"Z"}) + 1e-9);

  // XOR of independent uniform bits: I(X;Y) = 0 via constant J
  JointPmf u = JointPmf::from_matrix("X", "Y", {{0.25, 0.25}, {0.25, 0.25}});
  JointPmf uz = u.apply_function("X", "Y", FunctionTable::xor2(), "Z");
  CHECK(intrinsic_information(uz, quick_cfg()).value <= 1e-9);
}

TEST_CASE("one-way secrecy rate") {
  // Z constant: U = X, V constant gives I(X;Y)
  JointPmf p = JointPmf::from_matrix("X", "Y", {{0.4, 0.1}, {0.1, 0.4}});
  JointPmf pz = p.apply_function("X", "Y", FunctionTable::constant(2, 2, 1), "Z");
  BoundReport r1 = sow_evaluate(pz, Direction::XtoY, quick_cfg());
  CHECK(r1.value >= p.mutual_information({"X"}, {"Y"}) - 1e-9);

  // Y = X, Z independent of X: H(X)
  JointPmf eq(AlphabetSpec({{"X", 2}, {"Y", 2}, {"Z", 2}}),
              {0.3, 0.0, 0.0, 0.0, 0.2, 0.0, 0.0, 0.5});
  // X=Y always; Z independent: P(x,y,z) = P(x) 1[y=x] P(z)... build directly
  JointPmf eq2(AlphabetSpec({{"X", 2}, {"Y", 2}, {"Z", 2}}),
               {0.6 * 0.3, 0.6 * 0.7, 0.0, 0.0, 0.0, 0.0, 0.4 * 0.3, 0.4 * 0.7});
  // reorder: mass(x,y,z): x=0: (y=0: z ..), need y==x; wrote z inline above
  BoundReport r2 = sow_evaluate(eq2, Direction::XtoY, quick_cfg());
  CHECK(r2.value >= binary_entropy(0.4) - 1e-6);
  (void)eq;

  // erasure source: reaches (1 - eps) H(X|Z) via the FRL seed
  JointPmf ej = erasure_joint({0.4, 0.3, 0.2, 0.1}, {0, 1, 0, 1}, 0.3);
  double target = erasure_capacity({0.4, 0.3, 0.2, 0.1}, {0, 1, 0, 1}, 0.3);
  SearchConfig cfg = quick_cfg();
  cfg.u_card = 4;
  cfg.v_card = 2;
  BoundReport r3 = sow_evaluate(ej, Direction::XtoY, cfg);
  CHECK(r3.value >= target - 1e-3);
  CHECK(r3.value <= ej.conditional_mutual_information({"X"}, {"Y"}, {"Z"}) + 1e-6);
}

TEST_CASE("ribbon margin") {
  JointPmf p = JointPmf::from_matrix("X", "Y", {{0.4, 0.1}, {0.1, 0.4}});
  JointPmf pz = p.apply_function("X", "Y", FunctionTable::xor2(), "Z");

  // lambda = 0: minimum 0 at constant J
  BoundReport r0 = ribbon_margin(pz, {0.0, 0.0, 0.0}, quick_cfg());
  CHECK(std::abs(r0.value) <= 1e-9);

  // lambda = (1/2,1/2,1/2) on binary XOR laws: margin >= -1e-3
  std::mt19937_64 rng(9);
  for (int t = 0; t < 6; ++t) {
    JointPmf q = dirichlet_matrix(rng, 2, 2);
    JointPmf qz = q.apply_function("X", "Y", FunctionTable::xor2(), "Z");
    BoundReport r = ribbon_margin(qz, {0.5, 0.5, 0.5}, quick_cfg(t, 4, 150));
    CHECK(r.value >= -1e-3);
  }

  CHECK_THROWS_AS(ribbon_margin(pz, {1.5, 0.0, 0.0}, quick_cfg()), ValidationError);
}

TEST_CASE("interactive lower bound") {
  JointPmf p = JointPmf::from_matrix("X", "Y", {{0.35, 0.15}, {0.1, 0.4}});
  JointPmf pz = p.apply_function("X", "Y", FunctionTable::xor2(), "Z");

  // k = m = 1 coincides with one-way V-constant search bit for bit
  SearchConfig cfg = quick_cfg(11, 4, 200);
  cfg.u1_card = 2;
  BoundReport ri = interactive_lower_bound(pz, 1, 1, cfg);
  SearchConfig scfg = cfg;
  scfg.u_card = 2;
  scfg.v_card = 1;
  BoundReport rs = sow_evaluate(pz, Direction::XtoY, scfg);
  CHECK(ri.value == Catch::Approx(rs.value).margin(1e-9));

  // depth 2 never loses against depth 1
  BoundReport r2 = interactive_lower_bound(pz, 2, 1, cfg);
  CHECK(r2.value >= ri.value - 1e-6);

  // m = 2 keeps only the even-round terms
  BoundReport rm2 = interactive_lower_bound(pz, 2, 2, cfg);
  CHECK(rm2.value >= -1e-9);

  CHECK_THROWS_AS(interactive_lower_bound(pz, 3, 1, cfg), UnsupportedDepthError);

  // U1 = X with Z independent: I(X;Y) is reachable when Z is constant
  JointPmf pc = p.apply_function("X", "Y", FunctionTable::constant(2, 2, 1), "Z");
  BoundReport rc = interactive_lower_bound(pc, 1, 1, cfg);
  CHECK(rc.value >= p.mutual_information({"X"}, {"Y"}) - 1e-9);
}

TEST_CASE("psi-delta") {
  JointPmf p = JointPmf::from_matrix("X", "Y", {{0.4, 0.1}, {0.1, 0.4}});
  JointPmf pz = p.apply_function("X", "Y", FunctionTable::xor2(), "Z");
  SearchConfig cfg = quick_cfg(13, 4, 200);

  // Delta = 0 coincides with psi-hat search within 5e-3
  PsiDeltaReport r0 = psi_delta_evaluate(pz, 0.0, cfg);
  BoundReport ph = psi_hat_search(pz, cfg);
  CHECK(r0.report.value == Catch::Approx(ph.value).margin(5e-3));

  // nonincreasing sweep
  auto sweep = psi_delta_sweep(pz, {0.0, 0.1, 0.2}, cfg);
  CHECK(sweep[0].report.value >= sweep[1].report.value - 1e-9);
  CHECK(sweep[1].report.value >= sweep[2].report.value - 1e-9);

  // infeasible Delta
  CHECK_THROWS_AS(psi_delta_evaluate(pz, pz.entropy({"Z"}) + 0.1, cfg), InfeasibleError);
}

TEST_CASE("analytic gradients match finite differences") {
  std::mt19937_64 rng(23);
  double worst = 0.0;
  for (int t = 0; t < 12; ++t) {
    JointPmf q = dirichlet_joint(rng, {{"X", 2}, {"Y", 2}, {"Z", 2}});
    auto b = detail::CellBase::build(q);

    // interior kernels: Dirichlet mixed toward uniform
    auto interior = [&](int rows, int cols) {
      auto k = detail::dirichlet_rows(rng, rows, cols);
      for (auto& v : k) v = 0.8 * v;
      for (int r = 0; r < rows; ++r) {
        double tot = 0.0;
        for (int c = 0; c < cols; ++c)
          tot += (k[static_cast<size_t>(r * cols + c)] += 0.2 / cols);
        for (int c = 0; c < cols; ++c) k[static_cast<size_t>(r * cols + c)] /= tot;
      }
      return k;
    };

    {
      auto m = detail::psi_hat_model(b, 3);
      worst = std::max(worst, gradient_check(m, interior(m.nr1, m.na1), {}));
    }
    {
      auto m = detail::one_way_model(b, 2, 2);
      worst = std::max(worst, gradient_check(m, interior(m.nr1, m.na1), {}));
    }
  }
  CHECK(worst <= 1e-6);

  // two-kernel chain (interactive depth 2)
  {
    JointPmf q = dirichlet_joint(rng, {{"X", 2}, {"Y", 2}, {"Z", 2}});
    auto b = detail::CellBase::build(q);
    detail::EntropyModel m;
    m.ncells = b.size();
    m.base = b.mass;
    m.na1 = 2;
    m.nr1 = b.nx;
    m.r1 = b.xs;
    m.na2 = 2;
    m.nr2 = b.ny * 2;
    m.r2.resize(static_cast<size_t>(b.size()) * 2);
    for (int c = 0; c < b.size(); ++c)
      for (int a1 = 0; a1 < 2; ++a1)
        m.r2[static_cast<size_t>(c * 2 + a1)] = b.ys[static_cast<size_t>(c)] * 2 + a1;
    detail::AxisView Y{b.ny, &b.ys, 0}, Z{b.nz, &b.zs, 0}, X{b.nx, &b.xs, 0},
        U1{2, nullptr, 1}, U2{2, nullptr, 2};
    m.terms.push_back(detail::make_term(+1, {Y}, m.ncells, m.na1, m.na2));
    m.terms.push_back(detail::make_term(-1, {U1, Y}, m.ncells, m.na1, m.na2));
    m.terms.push_back(detail::make_term(-1, {Z}, m.ncells, m.na1, m.na2));
    m.terms.push_back(detail::make_term(+1, {U1, Z}, m.ncells, m.na1, m.na2));
    m.terms.push_back(detail::make_term(+1, {X, U1}, m.ncells, m.na1, m.na2));
    m.terms.push_back(detail::make_term(-1, {U2, X, U1}, m.ncells, m.na1, m.na2));
    m.terms.push_back(detail::make_term(-1, {Z, U1}, m.ncells, m.na1, m.na2));
    m.terms.push_back(detail::make_term(+1, {U2, Z, U1}, m.ncells, m.na1, m.na2));
    std::mt19937_64 r2(99);
    auto k1 = detail::dirichlet_rows(r2, m.nr1, m.na1);
    auto k2 = detail::dirichlet_rows(r2, m.nr2, m.na2);
    CHECK(gradient_check(m, k1, k2) <= 1e-6);
  }
}
