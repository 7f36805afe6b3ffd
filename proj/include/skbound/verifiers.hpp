#ifndef SKBOUND_VERIFIERS_HPP
#define SKBOUND_VERIFIERS_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "skbound/constructions.hpp"
#include "skbound/envelope.hpp"
#include "skbound/prob.hpp"
#include "skbound/search.hpp"
#include "skbound/tables.hpp"

// Executable checks of the identities and inequalities behind the bounds.
// These test proven statements: a reported violation is a build bug.

namespace skb {

struct FuzzSpec {
  std::uint64_t seed = 1;
  int trials = 1000;
  std::vector<int> sizes;  // per-variable alphabet sizes
};

namespace detail {

inline JointPmf dirichlet_pmf(std::mt19937_64& rng, AlphabetSpec spec) {
  std::gamma_distribution<double> g(1.0, 1.0);
  std::vector<double> m(static_cast<size_t>(spec.cells()));
  double tot = 0.0;
  for (auto& v : m) tot += (v = g(rng) + 1e-14);
  for (auto& v : m) v /= tot;
  return JointPmf(std::move(spec), std::move(m));
}

inline ConditionalPmf dirichlet_kernel(std::mt19937_64& rng, AlphabetSpec in, AlphabetSpec out) {
  std::int64_t ni = in.cells(), no = out.cells();
  std::gamma_distribution<double> g(1.0, 1.0);
  std::vector<double> rows(static_cast<size_t>(ni * no));
  for (std::int64_t r = 0; r < ni; ++r) {
    double tot = 0.0;
    for (std::int64_t o = 0; o < no; ++o)
      tot += (rows[static_cast<size_t>(r * no + o)] = g(rng) + 1e-14);
    for (std::int64_t o = 0; o < no; ++o) rows[static_cast<size_t>(r * no + o)] /= tot;
  }
  return ConditionalPmf(std::move(in), std::move(out), std::move(rows));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// The add-and-subtract identity behind the T-witness criterion. Both sides
// are evaluated on couplings built from independent kernels for T and J;
// the identity is exact Shannon algebra, so the discrepancy is numeric only.

struct IdentityReport {
  double max_discrepancy = 0.0;
  int trials = 0;
};

inline double witness_identity_gap(const JointPmf& joint) {
  auto I = [&](const std::vector<std::string>& a, const std::vector<std::string>& b,
               const std::vector<std::string>& c) {
    return joint.conditional_mutual_information(a, b, c);
  };
  double lhs = I({"X"}, {"Y"}, {}) - (I({"X"}, {"Y"}, {"J"}) + I({"X", "Y"}, {"J"}, {"Z"}));
  double rhs = I({"T"}, {"Z"}, {}) + I({"X"}, {"Y"}, {"T"}) + I({"T"}, {"Z"}, {"X", "Y"}) +
               2.0 * I({"T"}, {"J"}, {"X", "Y", "Z"}) -
               (I({"X"}, {"Y"}, {"J", "T"}) + I({"X", "Y"}, {"J"}, {"T", "Z"})) -
               I({"J"}, {"T"}, {"X"}) - I({"J"}, {"T"}, {"Y"}) - I({"T"}, {"Z"}, {"J"}) -
               I({"T"}, {"Z"}, {"X", "Y", "J"});
  return std::abs(lhs - rhs);
}

inline IdentityReport witness_identity_check(const FuzzSpec& fuzz) {
  std::vector<int> s = fuzz.sizes;
  if (s.size() != 5) s = {2, 2, 2, 2, 2};
  for (int v : s)
    if (v > 3) throw ValidationError("witness_identity_check: sizes capped at 3 per variable");
  IdentityReport rep;
  std::mt19937_64 rng(fuzz.seed);
  for (int t = 0; t < fuzz.trials; ++t) {
    JointPmf base =
        detail::dirichlet_pmf(rng, AlphabetSpec({{"X", s[0]}, {"Y", s[1]}, {"Z", s[2]}}));
    AlphabetSpec xyz = base.alphabet();
    JointPmf with_t =
        base.attach_channel(detail::dirichlet_kernel(rng, xyz, AlphabetSpec({{"T", s[3]}})));
    JointPmf joint =
        with_t.attach_channel(detail::dirichlet_kernel(rng, xyz, AlphabetSpec({{"J", s[4]}})));
    rep.max_discrepancy = std::max(rep.max_discrepancy, witness_identity_gap(joint));
    ++rep.trials;
  }
  return rep;
}

// Degenerate anchors: constant T (or constant J) collapse the identity to
// plain Shannon cancellations.
inline double witness_identity_gap_constant_t(const JointPmf& base_xyz, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  JointPmf with_t = base_xyz.attach_channel(
      ConditionalPmf::constant(base_xyz.alphabet(), AlphabetSpec({{"T", 2}})));
  JointPmf joint = with_t.attach_channel(
      detail::dirichlet_kernel(rng, base_xyz.alphabet(), AlphabetSpec({{"J", 2}})));
  return witness_identity_gap(joint);
}

// ---------------------------------------------------------------------------
// Change-of-source inequality: psi(X;Y||Z) - psi(X';Y'||Z') is controlled by
// four mutual-information terms. The unprimed side uses a certified witness
// value (search, an upper value); the primed side uses the grid envelope,
// whose rung-to-rung drop serves as the published grid slack.

struct ChangeOfSourceReport {
  int trials = 0;
  int violations = 0;
  double worst_excess = -1e300;  // max over trials of LHS - RHS - tolerance
  double max_slack = 0.0;
};

inline ChangeOfSourceReport change_of_source_check(const FuzzSpec& fuzz, int k = 12) {
  ChangeOfSourceReport rep;
  std::mt19937_64 rng(fuzz.seed);
  SearchConfig cfg;
  cfg.seed = fuzz.seed;
  cfg.restarts = 5;
  cfg.max_iters = 250;
  cfg.j_card = 9;
  for (int t = 0; t < fuzz.trials; ++t) {
    JointPmf joint = detail::dirichlet_pmf(
        rng, AlphabetSpec({{"X", 2}, {"Y", 2}, {"Z", 2}, {"Xp", 2}, {"Yp", 2}, {"Zp", 2}}));
    JointPmf pxyz = joint.marginalize({"X", "Y", "Z"});
    JointPmf primed = joint.regroup({{"X", {"Xp"}},
                                     {"Y", {"Yp"}},
                                     {"Z", {"Zp"}},
                                     {"rest", {"X", "Y", "Z"}}})
                          .marginalize({"X", "Y", "Z"});

    double lhs1 = psi_hat_search(pxyz, cfg).value;
    BoundReport coarse = psi_hat_envelope(primed, k / 2, kDefaultAtomCap, 8);
    BoundReport fine = psi_hat_envelope(primed, k, kDefaultAtomCap, 8);
    double slack = std::max(0.0, coarse.value - fine.value);
    double rhs = joint.conditional_mutual_information({"X", "Y"}, {"Zp"}, {"Z"}) +
                 joint.conditional_mutual_information({"Yp", "Zp"}, {"X"}, {"Xp"}) +
                 joint.conditional_mutual_information({"Xp", "Zp"}, {"Y"}, {"Yp"}) +
                 joint.conditional_mutual_information({"X"}, {"Y"}, {"Xp", "Yp", "Zp"});
    double excess = (lhs1 - fine.value) - rhs - (2.0 * slack + 1e-6);
    rep.worst_excess = std::max(rep.worst_excess, excess);
    rep.max_slack = std::max(rep.max_slack, slack);
    if (excess > 0) ++rep.violations;
    ++rep.trials;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Additivity of psi-hat under i.i.d. repetition, exercised at n = 2 for
// binary sources with a deterministic Z.

struct TensorizationReport {
  double psi1 = 0.0;           // single-letter closed-form value
  double iid_witness = 0.0;    // objective of the product witness at n = 2
  double witness_residual = 0.0;
  double search_best = 0.0;    // search at n = 2 (upper value)
  double search_gap = 0.0;     // 2 psi1 - search_best (positive = search won)
};

inline TensorizationReport tensorization_check(const JointPmf& p_xy, const FunctionTable& f,
                                               const SearchConfig& cfg = {}) {
  const auto& al = p_xy.alphabet();
  if (al.rank() != 2 || al.axis(0).size != 2 || al.axis(1).size != 2)
    throw PreconditionError("tensorization_check: binary (X,Y) law required");

  // closed-form single-letter value and minimizing kernel
  TableClassification cls = classify_table(f);
  double p00 = p_xy.mass()[0], p01 = p_xy.mass()[1], p10 = p_xy.mass()[2], p11 = p_xy.mass()[3];
  double cov = p00 * p11 - p01 * p10;
  JointPmf pxyz = p_xy.apply_function("X", "Y", f, "Z");
  double psi1;
  std::vector<double> kj(static_cast<size_t>(4) * 2, 0.0);  // P(J|x,y), |J| = 2
  if (cls.kind == TableClassification::Kind::ValidXor ||
      cls.kind == TableClassification::Kind::ValidConstant || cov <= 0.0) {
    psi1 = pxyz.mutual_information({"X"}, {"Y"});
    for (int c = 0; c < 4; ++c) kj[static_cast<size_t>(c * 2)] = 1.0;  // constant J
  } else {
    auto split = monotone_split(p_xy, MonotoneOp::And);
    psi1 = 0.0;
    for (int c = 0; c < 4; ++c) {
      double pm = p_xy.mass()[static_cast<size_t>(c)];
      double pj1 = pm > 0 ? split.witness.weights[1] *
                                split.witness.components[1].mass()[static_cast<size_t>(c)] / pm
                          : 1.0;
      kj[static_cast<size_t>(c * 2 + 1)] = std::min(1.0, pj1);
      kj[static_cast<size_t>(c * 2 + 0)] = 1.0 - kj[static_cast<size_t>(c * 2 + 1)];
    }
  }

  // n = 2 product law with the product witness J = (J1, J2)
  JointPmf p2 = pxyz.tensor_power(2);
  ConditionalPmf kj1(AlphabetSpec({{"X1", 2}, {"Y1", 2}}), AlphabetSpec({{"J1", 2}}), kj);
  ConditionalPmf kj2(AlphabetSpec({{"X2", 2}, {"Y2", 2}}), AlphabetSpec({{"J2", 2}}), kj);
  JointPmf with_j = p2.attach_channel(kj1).attach_channel(kj2);
  TensorizationReport rep;
  rep.psi1 = psi1;
  rep.iid_witness =
      with_j.conditional_mutual_information({"X1", "X2"}, {"Y1", "Y2"}, {"J1", "J2"}) +
      with_j.conditional_mutual_information({"X1", "X2", "Y1", "Y2"}, {"J1", "J2"},
                                            {"Z1", "Z2"});
  rep.witness_residual = std::abs(rep.iid_witness - 2.0 * psi1);

  // search on the grouped two-letter law
  JointPmf grouped = p2.regroup({{"X", {"X1", "X2"}}, {"Y", {"Y1", "Y2"}}, {"Z", {"Z1", "Z2"}}});
  SearchConfig scfg = cfg;
  if (scfg.j_card == 0) scfg.j_card = 8;
  rep.search_best = psi_hat_search(grouped, scfg).value;
  rep.search_gap = 2.0 * psi1 - rep.search_best;
  return rep;
}

// ---------------------------------------------------------------------------
// Rectangle property: deterministic non-interactive maps that pin Z^n also
// pin (X^n, Y^n) when the source has full support.

struct ProtocolMaps {
  int n = 1;
  std::vector<int> g1;  // over X^n elements
  std::vector<int> g2;  // over Y^n elements
};

struct RectangleReport {
  std::int64_t pairs_checked = 0;
  std::int64_t pinned_pairs = 0;  // maps with H(Z^n | F1, F2) = 0
  std::vector<ProtocolMaps> counterexamples;
};

namespace detail {

// z-word of (x-word, y-word) under letterwise modular addition
inline int zword(int xw, int yw, int nx, int ny, int n) {
  int m = std::max(std::max(nx, ny), 2);
  int z = 0;
  std::vector<int> xs(static_cast<size_t>(n)), ys(static_cast<size_t>(n));
  for (int i = n - 1; i >= 0; --i) {
    xs[static_cast<size_t>(i)] = xw % nx;
    xw /= nx;
    ys[static_cast<size_t>(i)] = yw % ny;
    yw /= ny;
  }
  for (int i = 0; i < n; ++i) z = z * m + (xs[static_cast<size_t>(i)] + ys[static_cast<size_t>(i)]) % m;
  return z;
}

}  // namespace detail

inline bool rectangle_property_holds(const ProtocolMaps& maps, int nx, int ny) {
  int xn = 1, yn = 1;
  for (int i = 0; i < maps.n; ++i) {
    xn *= nx;
    yn *= ny;
  }
  if (static_cast<int>(maps.g1.size()) != xn || static_cast<int>(maps.g2.size()) != yn)
    throw ShapeError("rectangle check: map domain mismatch");
  // H(Z^n|F1,F2) = 0 <=> every (f1,f2) class is z-constant (full support)
  std::map<std::pair<int, int>, int> zclass;
  bool pinned = true;
  for (int xw = 0; xw < xn && pinned; ++xw)
    for (int yw = 0; yw < yn; ++yw) {
      auto key = std::make_pair(maps.g1[static_cast<size_t>(xw)], maps.g2[static_cast<size_t>(yw)]);
      int z = detail::zword(xw, yw, nx, ny, maps.n);
      auto [it, fresh] = zclass.try_emplace(key, z);
      if (!fresh && it->second != z) {
        pinned = false;
        break;
      }
    }
  if (!pinned) return true;  // antecedent false: vacuously fine
  // conclusion: every class is a single (x^n, y^n) point
  std::map<std::pair<int, int>, int> count;
  for (int xw = 0; xw < xn; ++xw)
    for (int yw = 0; yw < yn; ++yw)
      ++count[{maps.g1[static_cast<size_t>(xw)], maps.g2[static_cast<size_t>(yw)]}];
  for (const auto& [key, c] : count)
    if (c > 1) return false;
  return true;
}

// Exhaustive sweep over deterministic maps with message sets up to
// max_messages; n = 2 domains are sampled when the exhaustive count is large.
inline RectangleReport rectangle_check(const JointPmf& p_xy, int n, int max_messages = 4,
                                       std::int64_t sample_cap = 20000,
                                       std::uint64_t seed = 1) {
  const auto& al = p_xy.alphabet();
  int nx = al.axis(0).size, ny = al.axis(1).size;
  for (double v : p_xy.mass())
    if (v <= 0.0)
      throw PreconditionError("rectangle_check: full-support P_XY required");
  if (n < 1 || n > 2) throw ValidationError("rectangle_check: n must be 1 or 2");

  int xn = n == 1 ? nx : nx * nx;
  int yn = n == 1 ? ny : ny * ny;
  double total1 = std::pow(static_cast<double>(max_messages), xn);
  double total2 = std::pow(static_cast<double>(max_messages), yn);
  double total = total1 * total2;

  RectangleReport rep;
  auto run_pair = [&](const std::vector<int>& g1, const std::vector<int>& g2) {
    ProtocolMaps maps{n, g1, g2};
    ++rep.pairs_checked;
    // count pinned pairs for reporting
    std::map<std::pair<int, int>, int> zclass;
    bool pinned = true;
    for (int xw = 0; xw < xn && pinned; ++xw)
      for (int yw = 0; yw < yn; ++yw) {
        auto key = std::make_pair(g1[static_cast<size_t>(xw)], g2[static_cast<size_t>(yw)]);
        int z = detail::zword(xw, yw, nx, ny, n);
        auto [it, fresh] = zclass.try_emplace(key, z);
        if (!fresh && it->second != z) {
          pinned = false;
          break;
        }
      }
    if (pinned) ++rep.pinned_pairs;
    if (!rectangle_property_holds(maps, nx, ny)) rep.counterexamples.push_back(maps);
  };

  if (total <= static_cast<double>(sample_cap)) {
    std::vector<int> g1(static_cast<size_t>(xn), 0), g2(static_cast<size_t>(yn), 0);
    auto advance = [&](std::vector<int>& g) {
      int pos = static_cast<int>(g.size()) - 1;
      while (pos >= 0 && g[static_cast<size_t>(pos)] == max_messages - 1)
        g[static_cast<size_t>(pos--)] = 0;
      if (pos < 0) return false;
      ++g[static_cast<size_t>(pos)];
      return true;
    };
    do {
      std::fill(g2.begin(), g2.end(), 0);
      do {
        run_pair(g1, g2);
      } while (advance(g2));
    } while (advance(g1));
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(0, max_messages - 1);
    for (std::int64_t t = 0; t < sample_cap; ++t) {
      std::vector<int> g1(static_cast<size_t>(xn)), g2(static_cast<size_t>(yn));
      for (auto& v : g1) v = dist(rng);
      for (auto& v : g2) v = dist(rng);
      run_pair(g1, g2);
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Non-interactive communication floor (the combined two-sided inequality):
//   (1/n) I(F;X^n,Y^n) + (2/n) H(Z^n|F) >= H(X,Y) + delta-bar.

struct KmBoundReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  double delta_bar = 0.0;
};

inline KmBoundReport km_bound_check(const JointPmf& p_xy, const ProtocolMaps& maps) {
  const auto& al = p_xy.alphabet();
  int nx = al.axis(0).size, ny = al.axis(1).size;
  if (nx != 2 || ny != 2)
    throw PreconditionError("km_bound_check: binary XOR source required");
  int n = maps.n;
  int xn = n == 1 ? nx : nx * nx;
  int yn = n == 1 ? ny : ny * ny;
  if (static_cast<int>(maps.g1.size()) != xn || static_cast<int>(maps.g2.size()) != yn)
    throw ShapeError("km_bound_check: map domain mismatch");

  DeltaBarReport db = delta_bar(p_xy);

  std::map<std::pair<int, int>, double> pf;                 // P(F)
  std::map<std::tuple<int, int, int>, double> pfz;          // P(F, Z^n)
  double hxyn = 0.0;
  for (int xw = 0; xw < xn; ++xw)
    for (int yw = 0; yw < yn; ++yw) {
      double m = 1.0;
      int xv = xw, yv = yw;
      for (int i = 0; i < n; ++i) {
        m *= p_xy.mass()[static_cast<size_t>((xv % nx) * ny + (yv % ny))];
        xv /= nx;
        yv /= ny;
      }
      if (m <= 0) continue;
      hxyn -= xlog2x(m);
      int f1 = maps.g1[static_cast<size_t>(xw)], f2 = maps.g2[static_cast<size_t>(yw)];
      int z = detail::zword(xw, yw, nx, ny, n);
      pf[{f1, f2}] += m;
      pfz[{f1, f2, z}] += m;
    }
  double hf = 0.0, hfz = 0.0;
  for (const auto& [k, v] : pf) hf -= xlog2x(v);
  for (const auto& [k, v] : pfz) hfz -= xlog2x(v);

  KmBoundReport rep;
  rep.delta_bar = db.delta_bar;
  // deterministic maps: I(F; X^n Y^n) = H(F)
  rep.lhs = hf / n + 2.0 * (hfz - hf) / n;
  rep.rhs = p_xy.entropy() + db.delta_bar;
  rep.slack = rep.lhs - rep.rhs;
  return rep;
}

}  // namespace skb

#endif
