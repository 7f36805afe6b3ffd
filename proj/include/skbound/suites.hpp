#ifndef SKBOUND_SUITES_HPP
#define SKBOUND_SUITES_HPP

#include <chrono>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "skbound/constructions.hpp"
#include "skbound/envelope.hpp"
#include "skbound/io.hpp"
#include "skbound/search.hpp"
#include "skbound/tables.hpp"
#include "skbound/verifiers.hpp"

// Reproduction suites: every tolerance below is pinned in code. Exit-status
// contract: all criteria of a suite must pass.

namespace skb {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  std::vector<ReportRow> rows;
  double runtime_s = 0.0;
};

namespace detail {

inline JointPmf random_matrix(std::mt19937_64& rng, int nx, int ny) {
  std::gamma_distribution<double> g(1.0, 1.0);
  std::vector<double> m(static_cast<size_t>(nx) * ny);
  double tot = 0.0;
  for (auto& v : m) tot += (v = g(rng) + 1e-12);
  for (auto& v : m) v /= tot;
  return JointPmf(AlphabetSpec({{"X", nx}, {"Y", ny}}), std::move(m));
}

inline double cov2(const JointPmf& p) {
  return p.mass()[0] * p.mass()[3] - p.mass()[1] * p.mass()[2];
}

inline JointPmf law_from_cd(double c, double d, double w) {
  return JointPmf::from_matrix(
      "X", "Y", {{w * c, (1 - w) * (1 - d)}, {w * (1 - c), (1 - w) * d}});
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

inline bool rule_valid_table(const FunctionTable& t) {
  bool constant = true;
  for (int v : t.cells)
    if (v != t.cells[0]) constant = false;
  if (constant) return true;
  if (t.nx != 2 || t.ny != 2) return false;
  return t(0, 0) == t(1, 1) && t(0, 1) == t(1, 0) && t(0, 0) != t(0, 1);
}

}  // namespace detail

// 1. XOR sources: envelope pins psi-hat to I(X;Y); witness residuals exact.
inline CriterionResult criterion_1(std::uint64_t seed) {
  detail::Timer timer;
  CriterionResult res{1, "XOR: envelope = I(X;Y), witness residuals", false, "", {}, 0};
  std::mt19937_64 rng(seed ^ 0x101);
  double worst_low = 0.0, worst_high = 0.0, worst_res = 0.0;
  bool ok = true;
  for (int t = 0; t < 100; ++t) {
    JointPmf p = detail::random_matrix(rng, 2, 2);
    JointPmf pz = p.apply_function("X", "Y", FunctionTable::xor2(), "Z");
    double ixy = pz.mutual_information({"X"}, {"Y"});
    BoundReport rep = psi_hat_envelope(pz, 80);
    worst_low = std::max(worst_low, ixy - rep.value);
    worst_high = std::max(worst_high, rep.value - ixy);
    if (rep.value < ixy - 2e-3 || rep.value > ixy + 1e-9) ok = false;
    auto wres = verify_witness(pz, xor_witness(p), WitnessKind::TWitness);
    for (const auto& [k, v] : wres) worst_res = std::max(worst_res, std::abs(v));
    if (worst_res > 1e-12) ok = false;
  }
  res.pass = ok;
  res.detail = "max I(X;Y)-value " + format_bits(worst_low) + ", max value-I(X;Y) " +
               format_bits(worst_high) + ", max witness residual " + std::to_string(worst_res);
  res.rows.push_back({"xor-fuzz-100", "psi_hat_envelope_gap", worst_low, "envelope", worst_res, 0});
  res.runtime_s = timer.seconds();
  return res;
}

// 2. AND & SUM with positive covariance: split certifies zero; search agrees.
inline CriterionResult criterion_2(std::uint64_t seed) {
  detail::Timer timer;
  CriterionResult res{2, "AND/SUM Cov>0: split residuals, search <= 1e-4", false, "", {}, 0};
  std::mt19937_64 rng(seed ^ 0x202);
  SearchConfig cfg;
  cfg.seed = seed;
  cfg.restarts = 4;
  cfg.max_iters = 200;
  double worst_res = 0.0, worst_search = 0.0;
  bool ok = true;
  int found = 0;
  while (found < 50) {
    JointPmf p = detail::random_matrix(rng, 2, 2);
    if (detail::cov2(p) <= 0.01) continue;
    ++found;
    for (MonotoneOp op : {MonotoneOp::And, MonotoneOp::Sum}) {
      auto split = monotone_split(p, op);
      if (split.kind != WitnessKind::JSplit) ok = false;
      FunctionTable f = op == MonotoneOp::And ? FunctionTable::and2() : FunctionTable::sum2();
      JointPmf pz = p.apply_function("X", "Y", f, "Z");
      auto wres = verify_witness(pz, split.witness, WitnessKind::JSplit);
      for (const auto& [k, v] : wres) worst_res = std::max(worst_res, std::abs(v));
      double s = psi_hat_search(pz, cfg).value;
      worst_search = std::max(worst_search, s);
    }
  }
  if (worst_res > 1e-12 || worst_search > 1e-4) ok = false;
  res.pass = ok;
  res.detail = "max split residual " + std::to_string(worst_res) + ", max search value " +
               std::to_string(worst_search);
  res.rows.push_back({"cov-pos-50", "psi_hat_search_max", worst_search, "search-best", worst_res, 0});
  res.runtime_s = timer.seconds();
  return res;
}

// 3. Cov <= 0: quadratic-root witness exact; envelope matches I(X;Y).
inline CriterionResult criterion_3(std::uint64_t seed) {
  detail::Timer timer;
  CriterionResult res{3, "Cov<=0: T-witness residuals, envelope = I(X;Y)", false, "", {}, 0};
  std::mt19937_64 rng(seed ^ 0x303);
  double worst_res = 0.0, worst_gap = 0.0;
  bool ok = true;
  int found = 0;
  while (found < 50) {
    JointPmf p = detail::random_matrix(rng, 2, 2);
    if (detail::cov2(p) > 0.0) continue;
    ++found;
    auto split = monotone_split(p, MonotoneOp::Sum);
    if (split.kind != WitnessKind::TWitness) ok = false;
    JointPmf pz = p.apply_function("X", "Y", FunctionTable::sum2(), "Z");
    auto wres = verify_witness(pz, split.witness, WitnessKind::TWitness);
    for (const auto& [k, v] : wres) worst_res = std::max(worst_res, std::abs(v));
    BoundReport rep = psi_hat_envelope(pz, 40);
    double gap = std::abs(rep.value - pz.mutual_information({"X"}, {"Y"}));
    worst_gap = std::max(worst_gap, gap);
  }
  if (worst_res > 1e-12 || worst_gap > 2e-3) ok = false;
  res.pass = ok;
  res.detail = "max witness residual " + std::to_string(worst_res) + ", max |envelope - I(X;Y)| " +
               std::to_string(worst_gap);
  res.rows.push_back({"cov-neg-50", "envelope_vs_ixy", worst_gap, "envelope", worst_res, 0});
  res.runtime_s = timer.seconds();
  return res;
}

// 4. Ternary construction: parameters in range and exact on satisfying laws;
//    violated inequalities named correctly otherwise.
inline CriterionResult criterion_4(std::uint64_t seed) {
  detail::Timer timer;
  CriterionResult res{4, "ternary mod-2 witness / ConditionNotMet", false, "", {}, 0};
  std::mt19937_64 rng(seed ^ 0x404);
  FunctionTable mod2 = FunctionTable::mod2_2x3();
  double worst_res = 0.0;
  bool ok = true;
  int sat = 0, vio = 0;
  while (sat < 50 || vio < 20) {
    JointPmf p = detail::random_matrix(rng, 2, 3);
    double alpha = p.mass()[0] + p.mass()[2] + p.mass()[4];
    double abar = 1 - alpha;
    double lhs1 = p.mass()[0] / alpha + p.mass()[5] / abar;
    double lhs2 = p.mass()[2] / alpha + p.mass()[3] / abar;
    auto r = ternary_witness(p);
    if (lhs1 <= 1.0 && lhs2 <= 1.0) {
      if (sat >= 50) continue;
      ++sat;
      if (!std::holds_alternative<DecompositionWitness>(r)) {
        ok = false;
        continue;
      }
      const auto& w = std::get<DecompositionWitness>(r);
      for (const char* key : {"r", "t", "s", "ell", "omega"}) {
        double v = w.params.at(key);
        if (v < 0.0 || v > 1.0) ok = false;
      }
      JointPmf pz = p.apply_function("X", "Y", mod2, "Z");
      auto wres = verify_witness(pz, w, WitnessKind::TWitness);
      for (const auto& [k, v] : wres) worst_res = std::max(worst_res, std::abs(v));
    } else if (lhs1 > 1.0 + 1e-9 || lhs2 > 1.0 + 1e-9) {
      if (vio >= 20) continue;
      ++vio;
      if (!std::holds_alternative<ConditionNotMet>(r)) {
        ok = false;
        continue;
      }
      const auto& cnm = std::get<ConditionNotMet>(r);
      bool names_first = cnm.inequality.find("P(0,0)") != std::string::npos;
      if (names_first && lhs1 <= 1.0 + 1e-9) ok = false;
      if (!names_first && lhs2 <= 1.0 + 1e-9) ok = false;
    }
  }
  if (worst_res > 1e-12) ok = false;
  res.pass = ok;
  res.detail = "50 satisfying + 20 violating laws, max residual " + std::to_string(worst_res);
  res.rows.push_back({"ternary-70", "witness_residual_max", worst_res, "closed-form", worst_res, 0});
  res.runtime_s = timer.seconds();
  return res;
}

// 5. Function classification: exhaustive agreement with the constant-or-XOR
//    rule up to 3x3 with nz <= 4; sampled Invalid tables falsified.
inline CriterionResult criterion_5(std::uint64_t seed) {
  detail::Timer timer;
  CriterionResult res{5, "table classification + falsification", false, "", {}, 0};
  bool ok = true;
  std::int64_t checked = 0;
  std::int64_t invalid_seen = 0;
  std::vector<FunctionTable> invalid_pool;
  const std::int64_t stride = 997 + static_cast<std::int64_t>(seed % 101);
  for (int nx = 1; nx <= 3; ++nx)
    for (int ny = 1; ny <= 3; ++ny) {
      enumerate_tables(nx, ny, 4, [&](const FunctionTable& t, const TableClassification& c) {
        ++checked;
        bool valid = c.kind != TableClassification::Kind::Invalid;
        if (valid != detail::rule_valid_table(t)) ok = false;
        if (!valid && c.witness && invalid_seen++ % stride == 0 && invalid_pool.size() < 16)
          invalid_pool.push_back(t);
      });
    }
  int falsified = 0;
  for (size_t i = 0; i < invalid_pool.size() && falsified < 10; ++i) {
    auto f = falsify_invalid(invalid_pool[i]);
    if (!f.success || f.gap < 1e-3) {
      ok = false;
      break;
    }
    ++falsified;
  }
  if (falsified < 10) ok = false;
  res.pass = ok;
  res.detail = std::to_string(checked) + " tables checked, " + std::to_string(falsified) +
               " invalid tables falsified";
  res.rows.push_back({"tables", "tables_checked", static_cast<double>(checked), "oracle", 0, 0});
  res.runtime_s = timer.seconds();
  return res;
}

// 6. Add-and-subtract identity: exact algebra over random couplings.
inline CriterionResult criterion_6(std::uint64_t seed) {
  detail::Timer timer;
  CriterionResult res{6, "five-variable identity (1000 couplings)", false, "", {}, 0};
  FuzzSpec f1{seed ^ 0x606, 600, {2, 2, 2, 2, 2}};
  FuzzSpec f2{seed ^ 0x607, 400, {3, 3, 3, 2, 2}};
  double worst = std::max(witness_identity_check(f1).max_discrepancy,
                          witness_identity_check(f2).max_discrepancy);
  res.pass = worst <= 1e-9;
  res.detail = "max |LHS - RHS| = " + std::to_string(worst);
  res.rows.push_back({"identity-1000", "max_discrepancy", worst, "closed-form", worst, 0});
  res.runtime_s = timer.seconds();
  return res;
}

// 7. Additivity at n = 2 on XOR and AND laws.
inline CriterionResult criterion_7(std::uint64_t seed) {
  detail::Timer timer;
  CriterionResult res{7, "tensorization at n = 2 (20 laws)", false, "", {}, 0};
  std::mt19937_64 rng(seed ^ 0x707);
  SearchConfig cfg;
  cfg.seed = seed;
  cfg.restarts = 4;
  cfg.max_iters = 250;
  double worst_res = 0.0, worst_gap = -1e300;
  bool ok = true;
  for (int t = 0; t < 20; ++t) {
    JointPmf p = detail::random_matrix(rng, 2, 2);
    FunctionTable f = t % 2 == 0 ? FunctionTable::xor2() : FunctionTable::and2();
    auto rep = tensorization_check(p, f, cfg);
    worst_res = std::max(worst_res, rep.witness_residual);
    worst_gap = std::max(worst_gap, rep.search_gap);
    if (rep.witness_residual > 1e-12 || rep.search_gap > 1e-3) ok = false;
  }
  res.pass = ok;
  res.detail = "max witness residual " + std::to_string(worst_res) +
               ", max (2 psi1 - search) " + std::to_string(worst_gap);
  res.rows.push_back({"tensorize-20", "witness_residual_max", worst_res, "closed-form", worst_gap, 0});
  res.runtime_s = timer.seconds();
  return res;
}

// 8. Change-of-source inequality over random six-variable laws.
inline CriterionResult criterion_8(std::uint64_t seed) {
  detail::Timer timer;
  CriterionResult res{8, "six-variable inequality (200 trials)", false, "", {}, 0};
  FuzzSpec fuzz{seed ^ 0x808, 200, {}};
  auto rep = change_of_source_check(fuzz, 12);
  res.pass = rep.violations == 0;
  res.detail = std::to_string(rep.trials) + " trials, " + std::to_string(rep.violations) +
               " violations, worst excess " + std::to_string(rep.worst_excess);
  res.rows.push_back({"thm5-200", "violations", static_cast<double>(rep.violations),
                      "search-best", rep.worst_excess, 0});
  res.runtime_s = timer.seconds();
  return res;
}

// 9. Korner-Marton residual envelopes against the published example family.
inline CriterionResult criterion_9(std::uint64_t seed) {
  detail::Timer timer;
  CriterionResult res{9, "delta-bar example family", false, "", {}, 0};
  std::mt19937_64 rng(seed ^ 0x909);
  std::uniform_real_distribution<double> U(0.05, 0.95);
  bool ok = true;
  double worst_zero = 0.0, worst_cd = 0.0;
  // 20 (c,d) pairs with (1-2c)(1-2d) <= 0: delta-bar must vanish
  int found = 0;
  while (found < 20) {
    double c = U(rng), d = U(rng), w = 0.2 + 0.6 * U(rng);
    if ((1 - 2 * c) * (1 - 2 * d) > 0) continue;
    ++found;
    auto db = delta_bar(detail::law_from_cd(c, d, w));
    worst_zero = std::max(worst_zero, std::abs(db.delta_bar));
  }
  if (worst_zero > 1e-9) ok = false;
  // c = d at x = 1/2: delta-bar = 2 H(Z) - H(X,Y)
  for (double c : {0.6, 0.7, 0.8, 0.9, 0.95, 0.55}) {
    JointPmf p = detail::law_from_cd(c, c, 0.5);
    auto db = delta_bar(p);
    double expect = 2 * binary_entropy(p.mass()[1] + p.mass()[2]) - p.entropy();
    worst_cd = std::max(worst_cd, std::abs(db.delta_bar - expect));
  }
  if (worst_cd > 1e-4) ok = false;
  res.pass = ok;
  res.detail = "max |delta-bar| on sign-mixed pairs " + std::to_string(worst_zero) +
               ", max closed-form gap at c=d " + std::to_string(worst_cd);
  res.rows.push_back({"delta-bar", "zero_case_max", worst_zero, "envelope", worst_cd, 0});
  res.runtime_s = timer.seconds();
  return res;
}

// 10. Rectangle property: exhaustive n = 1, sampled n = 2.
inline CriterionResult criterion_10(std::uint64_t seed) {
  detail::Timer timer;
  CriterionResult res{10, "rectangle property sweep", false, "", {}, 0};
  JointPmf p = JointPmf::from_matrix("X", "Y", {{0.3, 0.2}, {0.2, 0.3}});
  auto r1 = rectangle_check(p, 1, 4);
  auto r2 = rectangle_check(p, 2, 4, 4000, seed ^ 0xA0A);
  res.pass = r1.counterexamples.empty() && r2.counterexamples.empty();
  res.detail = "n=1 exhaustive " + std::to_string(r1.pairs_checked) + " pairs (" +
               std::to_string(r1.pinned_pairs) + " pinned), n=2 sampled " +
               std::to_string(r2.pairs_checked) + " pairs; counterexamples " +
               std::to_string(r1.counterexamples.size() + r2.counterexamples.size());
  res.rows.push_back({"rectangle", "counterexamples",
                      static_cast<double>(r1.counterexamples.size() + r2.counterexamples.size()),
                      "oracle", 0, 0});
  res.runtime_s = timer.seconds();
  return res;
}

// 11. Deterministic-erasure capacity reached by the one-way search.
inline CriterionResult criterion_11(std::uint64_t seed) {
  detail::Timer timer;
  CriterionResult res{11, "erasure capacity via one-way search", false, "", {}, 0};
  std::mt19937_64 rng(seed ^ 0xB0B);
  std::uniform_real_distribution<double> U(0.1, 0.9);
  std::gamma_distribution<double> g(1.0, 1.0);
  bool ok = true;
  double worst = 0.0;
  for (int t = 0; t < 5; ++t) {
    int nx = 2 + static_cast<int>(rng() % 3);  // 2..4
    std::vector<double> px(static_cast<size_t>(nx));
    double tot = 0.0;
    for (auto& v : px) tot += (v = g(rng) + 0.05);
    for (auto& v : px) v /= tot;
    std::vector<int> gm(static_cast<size_t>(nx));
    for (int x = 0; x < nx; ++x) gm[static_cast<size_t>(x)] = static_cast<int>(rng() % 2);
    double eps = U(rng);
    double target = erasure_capacity(px, gm, eps);
    JointPmf joint = erasure_joint(px, gm, eps);
    SearchConfig cfg;
    cfg.seed = seed + static_cast<std::uint64_t>(t);
    cfg.restarts = 4;
    cfg.max_iters = 200;
    cfg.u_card = nx;
    cfg.v_card = 2;
    double got = sow_evaluate(joint, Direction::XtoY, cfg).value;
    worst = std::max(worst, target - got);
    if (got < target - 1e-3) ok = false;
  }
  res.pass = ok;
  res.detail = "max shortfall vs (1-eps) H(X|Z): " + std::to_string(worst);
  res.rows.push_back({"erasure-5", "max_shortfall", worst, "search-best", 0, 0});
  res.runtime_s = timer.seconds();
  return res;
}

// 12. Ribbon membership margin at (1/2, 1/2, 1/2) for XOR sources.
inline CriterionResult criterion_12(std::uint64_t seed) {
  detail::Timer timer;
  CriterionResult res{12, "ribbon margin at (1/2,1/2,1/2)", false, "", {}, 0};
  std::mt19937_64 rng(seed ^ 0xC0C);
  SearchConfig cfg;
  cfg.seed = seed;
  cfg.restarts = 4;
  cfg.max_iters = 150;
  double worst = 1e300;
  for (int t = 0; t < 50; ++t) {
    JointPmf p = detail::random_matrix(rng, 2, 2);
    JointPmf pz = p.apply_function("X", "Y", FunctionTable::xor2(), "Z");
    worst = std::min(worst, ribbon_margin(pz, {0.5, 0.5, 0.5}, cfg).value);
  }
  res.pass = worst >= -1e-3;
  res.detail = "min margin over 50 XOR laws: " + std::to_string(worst);
  res.rows.push_back({"ribbon-50", "min_margin", worst, "search-best", 0, 0});
  res.runtime_s = timer.seconds();
  return res;
}

// 13. Delta-constrained bound: Delta = 0 matches psi-hat; sweep monotone.
inline CriterionResult criterion_13(std::uint64_t seed) {
  detail::Timer timer;
  CriterionResult res{13, "psi-delta: Delta=0 anchor + monotone sweep", false, "", {}, 0};
  std::mt19937_64 rng(seed ^ 0xD0D);
  SearchConfig cfg;
  cfg.seed = seed;
  cfg.restarts = 4;
  cfg.max_iters = 200;
  bool ok = true;
  double worst_anchor = 0.0, worst_mono = 0.0;
  for (int t = 0; t < 2; ++t) {
    JointPmf p = detail::random_matrix(rng, 2, 2);
    JointPmf pz = p.apply_function("X", "Y", FunctionTable::xor2(), "Z");
    double ph = psi_hat_search(pz, cfg).value;
    auto sweep = psi_delta_sweep(pz, {0.0, 0.05, 0.1, 0.2}, cfg);
    worst_anchor = std::max(worst_anchor, std::abs(sweep[0].report.value - ph));
    for (size_t i = 0; i + 1 < sweep.size(); ++i)
      worst_mono = std::max(worst_mono, sweep[i + 1].report.value - sweep[i].report.value);
  }
  if (worst_anchor > 5e-3 || worst_mono > 1e-9) ok = false;
  res.pass = ok;
  res.detail = "max |psi_delta(0) - psi_hat| " + std::to_string(worst_anchor) +
               ", max monotonicity violation " + std::to_string(worst_mono);
  res.rows.push_back({"psi-delta", "anchor_gap", worst_anchor, "search-best", worst_mono, 0});
  res.runtime_s = timer.seconds();
  return res;
}

// 14. Numerical hygiene: analytic gradients vs central differences.
inline CriterionResult criterion_14(std::uint64_t seed) {
  detail::Timer timer;
  CriterionResult res{14, "gradient checks (100 interior points)", false, "", {}, 0};
  std::mt19937_64 rng(seed ^ 0xE0E);
  std::gamma_distribution<double> g(1.0, 1.0);
  auto random_xyz = [&](int nx, int ny, int nz) {
    std::vector<double> m(static_cast<size_t>(nx) * ny * nz);
    double tot = 0.0;
    for (auto& v : m) tot += (v = g(rng) + 1e-9);
    for (auto& v : m) v /= tot;
    return JointPmf(AlphabetSpec({{"X", nx}, {"Y", ny}, {"Z", nz}}), std::move(m));
  };
  auto interior = [&](int rows, int cols) {
    auto k = detail::dirichlet_rows(rng, rows, cols);
    for (int r = 0; r < rows; ++r) {
      double tot = 0.0;
      for (int c = 0; c < cols; ++c)
        tot += (k[static_cast<size_t>(r * cols + c)] =
                    0.8 * k[static_cast<size_t>(r * cols + c)] + 0.2 / cols);
      for (int c = 0; c < cols; ++c) k[static_cast<size_t>(r * cols + c)] /= tot;
    }
    return k;
  };
  double worst = 0.0;
  int points = 0;
  while (points < 100) {
    JointPmf q = random_xyz(2, 2, 2);
    auto b = detail::CellBase::build(q);
    switch (points % 6) {
      case 0: {
        auto m = detail::psi_hat_model(b, 3);
        worst = std::max(worst, gradient_check(m, interior(m.nr1, m.na1), {}));
        break;
      }
      case 1: {
        auto m = detail::one_way_model(b, 2, 2);
        worst = std::max(worst, gradient_check(m, interior(m.nr1, m.na1), {}));
        break;
      }
      case 2: {
        auto m = detail::ribbon_model(b, 3, {0.5, 0.5, 0.5});
        worst = std::max(worst, gradient_check(m, interior(m.nr1, m.na1), {}));
        break;
      }
      case 3: {
        auto m = detail::intrinsic_model(b, 2);
        worst = std::max(worst, gradient_check(m, interior(m.nr1, m.na1), {}));
        break;
      }
      case 4: {
        // psi-delta inner payoff and constraint for a random fixed J kernel
        auto kj = interior(b.size(), 2);
        auto inner = detail::psi_delta_inner_model(b, kj, 2, 2, 3, 0.1);
        worst = std::max(worst,
                         gradient_check(inner.payoff, interior(inner.payoff.nr1, inner.payoff.na1), {}));
        worst = std::max(worst, gradient_check(inner.constraint,
                                               interior(inner.constraint.nr1, inner.constraint.na1), {}));
        break;
      }
      default: {
        auto m = detail::interactive_model(b, 2, 1, 2, 2);
        worst = std::max(worst, gradient_check(m, interior(m.nr1, m.na1), interior(m.nr2, m.na2)));
        break;
      }
    }
    ++points;
  }
  res.pass = worst <= 1e-6;
  res.detail = "max relative gradient error " + std::to_string(worst);
  res.rows.push_back({"gradients-100", "max_rel_error", worst, "oracle", 0, 0});
  res.runtime_s = timer.seconds();
  return res;
}

inline CriterionResult run_criterion(int id, std::uint64_t seed) {
  switch (id) {
    case 1: return criterion_1(seed);
    case 2: return criterion_2(seed);
    case 3: return criterion_3(seed);
    case 4: return criterion_4(seed);
    case 5: return criterion_5(seed);
    case 6: return criterion_6(seed);
    case 7: return criterion_7(seed);
    case 8: return criterion_8(seed);
    case 9: return criterion_9(seed);
    case 10: return criterion_10(seed);
    case 11: return criterion_11(seed);
    case 12: return criterion_12(seed);
    case 13: return criterion_13(seed);
    case 14: return criterion_14(seed);
    default: throw ValidationError("unknown criterion id " + std::to_string(id));
  }
}

inline const std::map<std::string, std::vector<int>>& suite_map() {
  static const std::map<std::string, std::vector<int>> m = {
      {"theorem2", {1, 2, 3}}, {"theorem3", {4}},        {"theorem4", {5}},
      {"identity", {6}},       {"tensorize", {7}},       {"thm5", {8}},
      {"delta", {9, 13}},      {"rectangle", {10}},      {"erasure", {11}},
      {"ribbon", {12}},        {"all", {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14}},
  };
  return m;
}

}  // namespace skb

#endif
