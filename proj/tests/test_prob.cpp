#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "skbound/prob.hpp"

using namespace skb;

namespace {

JointPmf random_joint(std::mt19937_64& rng, std::vector<Axis> axes) {
  AlphabetSpec spec(std::move(axes));
  std::gamma_distribution<double> g(1.0, 1.0);
  std::vector<double> m(static_cast<size_t>(spec.cells()));
  double total = 0.0;
  for (auto& v : m) {
    v = g(rng);
    total += v;
  }
  for (auto& v : m) v /= total;
  return JointPmf(std::move(spec), std::move(m));
}

}  // namespace

TEST_CASE("entropy basics") {
  JointPmf u = JointPmf::from_matrix("X", "Y", {{0.25, 0.25}, {0.25, 0.25}});
  CHECK(u.entropy({"X"}) == Catch::Approx(1.0).margin(1e-12));
  CHECK(u.entropy() == Catch::Approx(2.0).margin(1e-12));

  JointPmf point(AlphabetSpec({{"X", 3}}), {1.0, 0.0, 0.0});
  CHECK(point.entropy({"X"}) == Catch::Approx(0.0).margin(1e-15));

  // direct evaluation of -sum p log2 p for (0.9, 0.1)
  JointPmf biased(AlphabetSpec({{"X", 2}}), {0.9, 0.1});
  CHECK(biased.entropy({"X"}) == Catch::Approx(0.46899559358928122).epsilon(1e-12));

  CHECK_THROWS_AS(u.entropy({"Q"}), AxisError);
}

TEST_CASE("conditional mutual information") {
  JointPmf prod = JointPmf::from_matrix("X", "Y", {{0.28, 0.42}, {0.12, 0.18}});
  CHECK(prod.mutual_information({"X"}, {"Y"}) == Catch::Approx(0.0).margin(1e-12));

  // perfectly correlated uniform bits
  JointPmf corr = JointPmf::from_matrix("X", "Y", {{0.5, 0.0}, {0.0, 0.5}});
  CHECK(corr.mutual_information({"X"}, {"Y"}) == Catch::Approx(1.0).margin(1e-12));

  // X,Y independent uniform, Z = XOR: I(X;Y|Z) = 1
  JointPmf xy = JointPmf::from_matrix("X", "Y", {{0.25, 0.25}, {0.25, 0.25}});
  JointPmf xyz = xy.apply_function("X", "Y", FunctionTable::xor2(), "Z");
  CHECK(xyz.conditional_mutual_information({"X"}, {"Y"}, {"Z"}) ==
        Catch::Approx(1.0).margin(1e-12));
  CHECK(xyz.conditional_entropy({"Z"}, {"X", "Y"}) == Catch::Approx(0.0).margin(1e-15));

  CHECK_THROWS_AS(xyz.conditional_mutual_information({"X"}, {"X"}, {"Z"}), AxisError);
}

TEST_CASE("marginalize") {
  JointPmf prod = JointPmf::from_matrix("X", "Y", {{0.28, 0.42}, {0.12, 0.18}});
  JointPmf mx = prod.marginalize({"X"});
  CHECK(mx.mass()[0] == Catch::Approx(0.70).margin(1e-15));

  JointPmf same = prod.marginalize({"X", "Y"});
  for (size_t i = 0; i < same.mass().size(); ++i)
    CHECK(same.mass()[i] == Catch::Approx(prod.mass()[i]).margin(1e-15));

  // XOR triple marginalized back to (X,Y)
  JointPmf p = JointPmf::from_matrix("X", "Y", {{0.4, 0.1}, {0.1, 0.4}});
  JointPmf xyz = p.apply_function("X", "Y", FunctionTable::xor2(), "Z");
  JointPmf back = xyz.marginalize({"X", "Y"});
  for (size_t i = 0; i < 4; ++i)
    CHECK(back.mass()[i] == Catch::Approx(p.mass()[i]).margin(1e-15));

  CHECK_THROWS_AS(prod.marginalize({}), AxisError);
}

TEST_CASE("apply_function") {
  JointPmf u = JointPmf::from_matrix("X", "Y", {{0.25, 0.25}, {0.25, 0.25}});
  JointPmf xyz = u.apply_function("X", "Y", FunctionTable::xor2(), "Z");
  CHECK(xyz.entropy({"Z"}) == Catch::Approx(1.0).margin(1e-12));
  CHECK(xyz.mutual_information({"X", "Y"}, {"Z"}) == Catch::Approx(1.0).margin(1e-12));

  JointPmf c = u.apply_function("X", "Y", FunctionTable::constant(2, 2, 2), "Z");
  CHECK(c.entropy({"Z"}) == Catch::Approx(0.0).margin(1e-15));

  JointPmf p = JointPmf::from_matrix("X", "Y", {{0.4, 0.1}, {0.1, 0.4}});
  JointPmf pz = p.apply_function("X", "Y", FunctionTable::and2(), "Z");
  CHECK(pz.marginalize({"Z"}).mass()[1] == Catch::Approx(0.4).margin(1e-15));

  FunctionTable bad(3, 2, 2, {0, 0, 0, 0, 0, 0});
  CHECK_THROWS_AS(u.apply_function("X", "Y", bad, "Z"), ShapeError);
}

TEST_CASE("attach_channel") {
  JointPmf p = JointPmf::from_matrix("X", "Y", {{0.4, 0.1}, {0.1, 0.4}});
  AlphabetSpec xin({{"X", 2}});
  AlphabetSpec jout({{"J", 2}});

  // identity channel J = X
  JointPmf pj = p.attach_channel(ConditionalPmf::deterministic(xin, jout, {0, 1}));
  CHECK(pj.mutual_information({"J"}, {"X"}) ==
        Catch::Approx(p.entropy({"X"})).margin(1e-12));

  // constant channel
  JointPmf pc = p.attach_channel(ConditionalPmf::constant(xin, jout));
  CHECK(pc.entropy({"J"}) == Catch::Approx(0.0).margin(1e-15));
  CHECK(pc.mutual_information({"J"}, {"X", "Y"}) == Catch::Approx(0.0).margin(1e-12));

  // marginal on the original axes is unchanged
  std::mt19937_64 rng(5);
  JointPmf q = random_joint(rng, {{"X", 2}, {"Y", 3}});
  std::gamma_distribution<double> g(1.0, 1.0);
  std::vector<double> rows(2 * 3 * 4);
  for (int r = 0; r < 6; ++r) {
    double tot = 0.0;
    for (int o = 0; o < 4; ++o) tot += (rows[static_cast<size_t>(r * 4 + o)] = g(rng));
    for (int o = 0; o < 4; ++o) rows[static_cast<size_t>(r * 4 + o)] /= tot;
  }
  ConditionalPmf k(AlphabetSpec({{"X", 2}, {"Y", 3}}), AlphabetSpec({{"T", 4}}), rows);
  JointPmf qt = q.attach_channel(k);
  JointPmf back = qt.marginalize({"X", "Y"});
  for (size_t i = 0; i < q.mass().size(); ++i)
    CHECK(back.mass()[i] == Catch::Approx(q.mass()[i]).margin(1e-12));

  // two independently attached channels are conditionally independent
  JointPmf qtj = qt.attach_channel(ConditionalPmf(
      AlphabetSpec({{"X", 2}, {"Y", 3}}), AlphabetSpec({{"J", 2}}),
      std::vector<double>{0.3, 0.7, 0.6, 0.4, 0.2, 0.8, 0.5, 0.5, 0.9, 0.1, 0.25, 0.75}));
  CHECK(qtj.conditional_mutual_information({"T"}, {"J"}, {"X", "Y"}) ==
        Catch::Approx(0.0).margin(1e-12));

  CHECK_THROWS_AS(p.attach_channel(ConditionalPmf::deterministic(
                      AlphabetSpec({{"W", 2}}), jout, {0, 1})),
                  AxisError);
}

TEST_CASE("tensor_power") {
  JointPmf b(AlphabetSpec({{"X", 2}}), {0.5, 0.5});
  JointPmf b1 = b.tensor_power(1);
  CHECK(b1.cells() == 2);

  JointPmf b2 = b.tensor_power(2);
  CHECK(b2.cells() == 4);
  CHECK(b2.entropy() == Catch::Approx(2.0).margin(1e-12));

  JointPmf biased(AlphabetSpec({{"X", 2}}), {0.9, 0.1});
  JointPmf biased2 = biased.tensor_power(2);
  CHECK(biased2.entropy() == Catch::Approx(2 * binary_entropy(0.1)).margin(1e-12));

  CHECK_THROWS_AS(biased.tensor_power(40), CapacityError);
}

TEST_CASE("pmf validation") {
  CHECK_THROWS_AS(JointPmf(AlphabetSpec({{"X", 2}}), {0.7, 0.2}), ValidationError);
  CHECK_THROWS_AS(JointPmf(AlphabetSpec({{"X", 2}}), {1.1, -0.1}), ValidationError);
  JointPmf drift(AlphabetSpec({{"X", 2}}), {0.5, 0.5 + 1e-10});
  CHECK(drift.was_renormalized());
  double s = drift.mass()[0] + drift.mass()[1];
  CHECK(s == Catch::Approx(1.0).margin(1e-15));
  CHECK_THROWS_AS(AlphabetSpec({{"X", 2}, {"X", 3}}), AxisError);
}

TEST_CASE("information identities on random laws") {
  std::mt19937_64 rng(17);
  double worst_chain = 0.0, worst_cmi = 0.0, worst_bound = 0.0;
  for (int t = 0; t < 10000; ++t) {
    JointPmf p = random_joint(rng, {{"A", 2}, {"B", 3}, {"C", 2}});
    worst_chain = std::max(worst_chain,
                           std::abs(p.entropy({"A", "B"}) - p.entropy({"A"}) -
                                    p.conditional_entropy({"B"}, {"A"})));
    worst_cmi = std::min(worst_cmi, p.conditional_mutual_information({"A"}, {"B"}, {"C"}));
    worst_bound = std::max(worst_bound, p.entropy({"B"}) - std::log2(3.0));
  }
  CHECK(worst_chain <= 1e-12);   // chain rule
  CHECK(worst_cmi >= -1e-12);    // nonnegativity of conditional MI
  CHECK(worst_bound <= 1e-12);   // entropy bounded by log2 alphabet size
}
