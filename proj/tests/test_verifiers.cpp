#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "skbound/verifiers.hpp"

using namespace skb;

TEST_CASE("coupling identity for the witness criterion") {
  // constant T: reduces to plain Shannon cancellations
  JointPmf base(AlphabetSpec({{"X", 2}, {"Y", 2}, {"Z", 2}}),
                {0.1, 0.15, 0.2, 0.05, 0.05, 0.2, 0.1, 0.15});
  CHECK(witness_identity_gap_constant_t(base, 3) <= 1e-12);

  // constant J: both sides cancel to zero
  {
    std::mt19937_64 rng(4);
    JointPmf with_t = base.attach_channel(
        detail::dirichlet_kernel(rng, base.alphabet(), AlphabetSpec({{"T", 2}})));
    JointPmf joint = with_t.attach_channel(
        ConditionalPmf::constant(base.alphabet(), AlphabetSpec({{"J", 2}})));
    CHECK(witness_identity_gap(joint) <= 1e-12);
  }

  // random couplings: exact algebra, discrepancy at fp noise level
  FuzzSpec fuzz;
  fuzz.seed = 7;
  fuzz.trials = 120;
  fuzz.sizes = {2, 2, 2, 2, 2};
  auto rep = witness_identity_check(fuzz);
  CHECK(rep.trials == 120);
  CHECK(rep.max_discrepancy <= 1e-9);

  FuzzSpec big;
  big.seed = 8;
  big.trials = 40;
  big.sizes = {3, 2, 3, 2, 3};
  CHECK(witness_identity_check(big).max_discrepancy <= 1e-9);

  FuzzSpec bad;
  bad.sizes = {4, 2, 2, 2, 2};
  CHECK_THROWS_AS(witness_identity_check(bad), ValidationError);
}

TEST_CASE("change-of-source inequality") {
  // identical primed variables: LHS = 0 and RHS = 0, no violation
  {
    std::mt19937_64 rng(11);
    JointPmf pxyz = detail::dirichlet_pmf(rng, AlphabetSpec({{"X", 2}, {"Y", 2}, {"Z", 2}}));
    // duplicate (X,Y,Z) as (X',Y',Z') through a diagonal coupling
    std::vector<double> mass(64, 0.0);
    for (int c = 0; c < 8; ++c) mass[static_cast<size_t>(c * 8 + c)] = pxyz.mass()[static_cast<size_t>(c)];
    JointPmf joint(AlphabetSpec({{"X", 2}, {"Y", 2}, {"Z", 2}, {"Xp", 2}, {"Yp", 2}, {"Zp", 2}}),
                   mass);
    double rhs = joint.conditional_mutual_information({"X", "Y"}, {"Zp"}, {"Z"}) +
                 joint.conditional_mutual_information({"Yp", "Zp"}, {"X"}, {"Xp"}) +
                 joint.conditional_mutual_information({"Xp", "Zp"}, {"Y"}, {"Yp"}) +
                 joint.conditional_mutual_information({"X"}, {"Y"}, {"Xp", "Yp", "Zp"});
    CHECK(rhs <= 1e-10);
  }

  // primed triple independent of the unprimed with I(X';Y') = 0:
  // the cross term I(X;Y|X',Y',Z') makes RHS at least I(X;Y)
  {
    std::mt19937_64 rng(13);
    JointPmf pxyz = detail::dirichlet_pmf(rng, AlphabetSpec({{"X", 2}, {"Y", 2}, {"Z", 2}}));
    JointPmf prim = detail::dirichlet_pmf(rng, AlphabetSpec({{"Xp", 2}}))
                        .attach_channel(ConditionalPmf::deterministic(
                            AlphabetSpec({{"Xp", 2}}), AlphabetSpec({{"Yp", 2}}), {0, 0}))
                        .attach_channel(ConditionalPmf::deterministic(
                            AlphabetSpec({{"Xp", 2}}), AlphabetSpec({{"Zp", 2}}), {0, 1}));
    std::vector<double> mass;
    for (double a : pxyz.mass())
      for (double b : prim.mass()) mass.push_back(a * b);
    JointPmf joint(AlphabetSpec({{"X", 2}, {"Y", 2}, {"Z", 2}, {"Xp", 2}, {"Yp", 2}, {"Zp", 2}}),
                   mass);
    double rhs = joint.conditional_mutual_information({"X", "Y"}, {"Zp"}, {"Z"}) +
                 joint.conditional_mutual_information({"Yp", "Zp"}, {"X"}, {"Xp"}) +
                 joint.conditional_mutual_information({"Xp", "Zp"}, {"Y"}, {"Yp"}) +
                 joint.conditional_mutual_information({"X"}, {"Y"}, {"Xp", "Yp", "Zp"});
    CHECK(rhs >= joint.mutual_information({"X"}, {"Y"}) - 1e-9);
  }

  // fuzz: zero violations beyond the published tolerance
  FuzzSpec fuzz;
  fuzz.seed = 12;
  fuzz.trials = 25;
  auto rep = change_of_source_check(fuzz, 12);
  CHECK(rep.trials == 25);
  CHECK(rep.violations == 0);
}

TEST_CASE("tensorization at n = 2") {
  SearchConfig cfg;
  cfg.seed = 5;
  cfg.restarts = 4;
  cfg.max_iters = 250;

  // independent uniform XOR: both sides vanish
  JointPmf u = JointPmf::from_matrix("X", "Y", {{0.25, 0.25}, {0.25, 0.25}});
  auto r1 = tensorization_check(u, FunctionTable::xor2(), cfg);
  CHECK(std::abs(r1.psi1) <= 1e-12);
  CHECK(r1.witness_residual <= 1e-12);
  CHECK(r1.search_gap <= 1e-3);

  // AND with Cov > 0: the split tensorizes, both sides zero
  JointPmf p = JointPmf::from_matrix("X", "Y", {{0.4, 0.1}, {0.1, 0.4}});
  auto r2 = tensorization_check(p, FunctionTable::and2(), cfg);
  CHECK(std::abs(r2.psi1) <= 1e-12);
  CHECK(r2.witness_residual <= 1e-12);
  CHECK(r2.search_gap <= 1e-3);

  // XOR on the correlated law: i.i.d. witness achieves 2 I(X;Y)
  auto r3 = tensorization_check(p, FunctionTable::xor2(), cfg);
  CHECK(r3.psi1 == Catch::Approx(1 - binary_entropy(0.2)).margin(1e-12));
  CHECK(r3.witness_residual <= 1e-12);
  CHECK(r3.search_gap <= 1e-3);
}

TEST_CASE("rectangle property") {
  JointPmf p = JointPmf::from_matrix("X", "Y", {{0.3, 0.2}, {0.2, 0.3}});

  // identity maps pin everything: property holds
  ProtocolMaps ident{1, {0, 1}, {0, 1}};
  CHECK(rectangle_property_holds(ident, 2, 2));

  // constant maps leave H(Z|F) > 0: vacuously fine
  ProtocolMaps consts{1, {0, 0}, {0, 0}};
  CHECK(rectangle_property_holds(consts, 2, 2));

  // exhaustive n = 1 sweep finds no counterexample
  auto rep = rectangle_check(p, 1, 4);
  CHECK(rep.pairs_checked == 256);
  CHECK(rep.counterexamples.empty());
  CHECK(rep.pinned_pairs >= 1);

  // sampled n = 2 sweep
  auto rep2 = rectangle_check(p, 2, 4, 3000, 9);
  CHECK(rep2.counterexamples.empty());

  JointPmf gap = JointPmf::from_matrix("X", "Y", {{0.5, 0.0}, {0.2, 0.3}});
  CHECK_THROWS_AS(rectangle_check(gap, 1), PreconditionError);
}

TEST_CASE("km bound") {
  // independent uniform: delta-bar = 0
  JointPmf u = JointPmf::from_matrix("X", "Y", {{0.25, 0.25}, {0.25, 0.25}});

  // both identity maps: slack = -delta_bar = 0
  auto r1 = km_bound_check(u, ProtocolMaps{1, {0, 1}, {0, 1}});
  CHECK(r1.delta_bar == Catch::Approx(0.0).margin(1e-9));
  CHECK(r1.slack == Catch::Approx(0.0).margin(1e-9));

  // constant maps: LHS = 2 H(Z), RHS = H(X,Y); uniform slack = 0
  auto r2 = km_bound_check(u, ProtocolMaps{1, {0, 0}, {0, 0}});
  CHECK(r2.lhs == Catch::Approx(2.0).margin(1e-12));
  CHECK(r2.slack == Catch::Approx(0.0).margin(1e-9));

  // g1 = identity, g2 constant: slack = 1
  auto r3 = km_bound_check(u, ProtocolMaps{1, {0, 1}, {0, 0}});
  CHECK(r3.slack == Catch::Approx(1.0).margin(1e-9));

  // c = d = 0.9 law: random deterministic pairs never dip below the floor
  JointPmf p = JointPmf::from_matrix("X", "Y", {{0.45, 0.05}, {0.05, 0.45}});
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> dist(0, 3);
  double min_slack = 1e300;
  for (int t = 0; t < 60; ++t) {
    ProtocolMaps maps{1, {dist(rng), dist(rng)}, {dist(rng), dist(rng)}};
    auto r = km_bound_check(p, maps);
    min_slack = std::min(min_slack, r.slack);
  }
  CHECK(min_slack >= -1e-9);
}
