#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "skbound/constructions.hpp"

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

double worst(const std::map<std::string, double>& res) {
  double w = 0.0;
  for (const auto& [k, v] : res) w = std::max(w, std::abs(v));
  return w;
}

}  // namespace

TEST_CASE("xor witness") {
  // uniform independent bits: double root at 1/4
  JointPmf u = JointPmf::from_matrix("X", "Y", {{0.25, 0.25}, {0.25, 0.25}});
  DecompositionWitness wu = xor_witness(u);
  CHECK(wu.params.at("x0") == Catch::Approx(0.25).margin(1e-12));
  CHECK(wu.params.at("x1") == Catch::Approx(0.25).margin(1e-12));

  // quadratic x^2 - 0.8 x + 0.01 for the negatively correlated law
  JointPmf p = JointPmf::from_matrix("X", "Y", {{0.1, 0.4}, {0.4, 0.1}});
  DecompositionWitness wp = xor_witness(p);
  double disc = std::sqrt(0.8 * 0.8 - 4 * 0.01);
  CHECK(wp.params.at("x1") == Catch::Approx((0.8 + disc) / 2).margin(1e-12));
  CHECK(wp.params.at("x0") == Catch::Approx((0.8 - disc) / 2).margin(1e-12));
  CHECK(wp.params.at("lambda") == Catch::Approx(0.5).margin(1e-12));

  // biased independent law collapses to a single component
  JointPmf bi = JointPmf::from_matrix("X", "Y", {{0.49, 0.21}, {0.21, 0.09}});
  DecompositionWitness wb = xor_witness(bi);
  CHECK(wb.weights.size() == 1);

  // residuals at 1e-12 on random laws
  std::mt19937_64 rng(21);
  for (int t = 0; t < 200; ++t) {
    JointPmf q = dirichlet_matrix(rng, 2, 2);
    JointPmf qz = q.apply_function("X", "Y", FunctionTable::xor2(), "Z");
    auto res = verify_witness(qz, xor_witness(q), WitnessKind::TWitness);
    CHECK(worst(res) <= 1e-12);
  }

  CHECK_THROWS_AS(xor_witness(JointPmf::uniform(AlphabetSpec({{"X", 3}, {"Y", 2}}))),
                  ShapeError);
}

TEST_CASE("monotone split") {
  // Cov > 0: alpha split, numbers straight from the construction
  JointPmf p = JointPmf::from_matrix("X", "Y", {{0.4, 0.1}, {0.1, 0.4}});
  auto sp = monotone_split(p, MonotoneOp::And);
  REQUIRE(sp.kind == WitnessKind::JSplit);
  CHECK(sp.witness.params.at("alpha") == Catch::Approx(1.6).margin(1e-12));
  CHECK(sp.witness.weights[1] == Catch::Approx(0.625).margin(1e-12));
  const auto& comp = sp.witness.components[1];
  CHECK(comp.mass()[0] == Catch::Approx(0.64).margin(1e-12));
  CHECK(comp.mass()[1] == Catch::Approx(0.16).margin(1e-12));
  CHECK(comp.mass()[3] == Catch::Approx(0.04).margin(1e-12));
  // rank-1 check 0.64*0.04 == 0.16^2
  CHECK(comp.mass()[0] * comp.mass()[3] ==
        Catch::Approx(comp.mass()[1] * comp.mass()[2]).margin(1e-14));
  JointPmf pz = p.apply_function("X", "Y", FunctionTable::and2(), "Z");
  CHECK(worst(verify_witness(pz, sp.witness, WitnessKind::JSplit)) <= 1e-12);

  // same law under SUM keeps the split
  JointPmf psum = p.apply_function("X", "Y", FunctionTable::sum2(), "Z");
  auto sp2 = monotone_split(p, MonotoneOp::Sum);
  CHECK(worst(verify_witness(psum, sp2.witness, WitnessKind::JSplit)) <= 1e-12);

  // OR via relabeling
  JointPmf por = p.apply_function("X", "Y", FunctionTable::or2(), "Z");
  auto sp3 = monotone_split(p, MonotoneOp::Or);
  REQUIRE(sp3.kind == WitnessKind::JSplit);
  CHECK(worst(verify_witness(por, sp3.witness, WitnessKind::JSplit)) <= 1e-12);

  // independent law routes to the T path (Cov = 0)
  JointPmf ind = JointPmf::from_matrix("X", "Y", {{0.25, 0.25}, {0.25, 0.25}});
  auto sp4 = monotone_split(ind, MonotoneOp::And);
  CHECK(sp4.kind == WitnessKind::TWitness);

  // Cov < 0: T-witness with the stated quadratic, valid for SUM
  JointPmf pneg = JointPmf::from_matrix("X", "Y", {{0.1, 0.4}, {0.4, 0.1}});
  auto sp5 = monotone_split(pneg, MonotoneOp::Sum);
  REQUIRE(sp5.kind == WitnessKind::TWitness);
  JointPmf pnegz = pneg.apply_function("X", "Y", FunctionTable::sum2(), "Z");
  CHECK(worst(verify_witness(pnegz, sp5.witness, WitnessKind::TWitness)) <= 1e-12);

  // dispatch consistency on random laws
  std::mt19937_64 rng(31);
  for (int t = 0; t < 100; ++t) {
    JointPmf q = dirichlet_matrix(rng, 2, 2);
    double cov = q.mass()[0] * q.mass()[3] - q.mass()[1] * q.mass()[2];
    auto s = monotone_split(q, MonotoneOp::And);
    CHECK((s.kind == WitnessKind::TWitness) == (cov <= 0.0));
    JointPmf qz = q.apply_function("X", "Y", FunctionTable::and2(), "Z");
    CHECK(worst(verify_witness(qz, s.witness, s.kind)) <= 1e-12);
  }
}

TEST_CASE("ternary witness") {
  FunctionTable mod2 = FunctionTable::mod2_2x3();

  // uniform on six cells: both conditions read 1/3 + 1/3 <= 1
  JointPmf u = JointPmf::uniform(AlphabetSpec({{"X", 2}, {"Y", 3}}));
  auto r = ternary_witness(u);
  REQUIRE(std::holds_alternative<DecompositionWitness>(r));
  JointPmf uz = u.apply_function("X", "Y", mod2, "Z");
  CHECK(worst(verify_witness(uz, std::get<DecompositionWitness>(r), WitnessKind::TWitness)) <=
        1e-12);

  // violating law: p00 = 0.5, p12 = 0.4 pushes condition 1 over 1
  JointPmf v = JointPmf::from_matrix("X", "Y",
                                     {{0.5, 0.025, 0.025}, {0.025, 0.025, 0.4}});
  auto rv = ternary_witness(v);
  REQUIRE(std::holds_alternative<ConditionNotMet>(rv));
  CHECK(std::get<ConditionNotMet>(rv).inequality.find("P(0,0)") != std::string::npos);

  // binary XOR embedding: P_Y(2) = 0 must always admit a witness
  std::mt19937_64 rng(41);
  std::gamma_distribution<double> g(1.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> m(6, 0.0);
    double tot = 0.0;
    for (int i : {0, 1, 3, 4}) tot += (m[static_cast<size_t>(i)] = g(rng));
    for (int i : {0, 1, 3, 4}) m[static_cast<size_t>(i)] /= tot;
    JointPmf q(AlphabetSpec({{"X", 2}, {"Y", 3}}), m);
    auto rq = ternary_witness(q);
    REQUIRE(std::holds_alternative<DecompositionWitness>(rq));
    JointPmf qz = q.apply_function("X", "Y", mod2, "Z");
    CHECK(worst(verify_witness(qz, std::get<DecompositionWitness>(rq), WitnessKind::TWitness)) <=
          1e-12);
  }

  // random satisfying laws: parameters in [0,1], residuals at 1e-12
  int found = 0;
  for (int t = 0; t < 400 && found < 60; ++t) {
    JointPmf q = dirichlet_matrix(rng, 2, 3);
    auto rq = ternary_witness(q);
    if (!std::holds_alternative<DecompositionWitness>(rq)) continue;
    ++found;
    const auto& w = std::get<DecompositionWitness>(rq);
    for (const char* key : {"r", "t", "s", "ell", "omega"}) {
      CHECK(w.params.at(key) >= 0.0);
      CHECK(w.params.at(key) <= 1.0);
    }
    JointPmf qz = q.apply_function("X", "Y", mod2, "Z");
    CHECK(worst(verify_witness(qz, w, WitnessKind::TWitness)) <= 1e-12);
  }
  CHECK(found >= 60);
}

TEST_CASE("verify_witness flags perturbations") {
  JointPmf p = JointPmf::from_matrix("X", "Y", {{0.4, 0.1}, {0.1, 0.4}});
  JointPmf pz = p.apply_function("X", "Y", FunctionTable::xor2(), "Z");
  DecompositionWitness w = xor_witness(p);
  REQUIRE(w.weights.size() == 2);
  w.weights[0] += 1e-3;
  w.weights[1] -= 1e-3;
  auto res = verify_witness(pz, w, WitnessKind::TWitness);
  CHECK(res.at("barycenter") >= 1e-4);
  CHECK(res.at("barycenter") <= 2e-3);
}

TEST_CASE("hull membership") {
  // binary XOR: always IN via the closed form
  JointPmf p = JointPmf::from_matrix("X", "Y", {{0.4, 0.1}, {0.1, 0.4}});
  auto d1 = hull_membership(p, FunctionTable::xor2(), 20);
  CHECK(d1.in);
  REQUIRE(d1.witness.has_value());

  // AND with Cov > 0: OUT at k = 40
  auto d2 = hull_membership(p, FunctionTable::and2(), 40);
  CHECK_FALSE(d2.in);
  CHECK(d2.detail.find("40") != std::string::npos);

  // product law: IN with a single atom
  JointPmf prod = JointPmf::from_matrix("X", "Y", {{0.28, 0.42}, {0.12, 0.18}});
  auto d3 = hull_membership(prod, FunctionTable::and2(), 10);
  CHECK(d3.in);
  CHECK(d3.witness->weights.size() == 1);
}

TEST_CASE("erasure capacity") {
  // eps = 1: everything erased
  CHECK(erasure_capacity({0.25, 0.25, 0.25, 0.25}, {0, 1, 0, 1}, 1.0) == 0.0);

  // eps = 0, constant g: full H(X)
  CHECK(erasure_capacity({0.5, 0.5}, {0, 0}, 0.0) == Catch::Approx(1.0).margin(1e-12));

  // uniform 4-ary X, parity classes, eps = 1/2 -> 0.5 bits
  CHECK(erasure_capacity({0.25, 0.25, 0.25, 0.25}, {0, 1, 0, 1}, 0.5) ==
        Catch::Approx(0.5).margin(1e-12));

  CHECK_THROWS_AS(erasure_capacity({0.5, 0.5}, {0, 0}, 1.5), ValidationError);

  // joint carries the erasure letter and reproduces I(X;Y|Z)
  JointPmf j = erasure_joint({0.4, 0.3, 0.2, 0.1}, {0, 1, 0, 1}, 0.3);
  double ixyz = j.conditional_mutual_information({"X"}, {"Y"}, {"Z"});
  CHECK(ixyz == Catch::Approx(erasure_capacity({0.4, 0.3, 0.2, 0.1}, {0, 1, 0, 1}, 0.3))
                    .margin(1e-12));
}

TEST_CASE("functional representation kernel") {
  std::vector<std::pair<std::vector<double>, std::vector<int>>> cases = {
      {{0.25, 0.25, 0.25, 0.25}, {0, 1, 0, 1}},
      {{0.4, 0.3, 0.2, 0.1}, {0, 1, 0, 1}},
      {{0.5, 0.2, 0.3}, {0, 0, 1}},
      {{0.35, 0.65}, {0, 0}},
  };
  for (const auto& [px, g] : cases) {
    ConditionalPmf k = frl_kernel(px, g);
    CHECK(k.output().cells() <= static_cast<std::int64_t>(px.size()));
    JointPmf j = erasure_joint(px, g, 0.3).attach_channel(k);
    CHECK(j.mutual_information({"U"}, {"Z"}) <= 1e-12);
    CHECK(j.conditional_entropy({"X"}, {"U", "Z"}) <= 1e-12);
  }
}
