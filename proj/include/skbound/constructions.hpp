#ifndef SKBOUND_CONSTRUCTIONS_HPP
#define SKBOUND_CONSTRUCTIONS_HPP

#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "skbound/envelope.hpp"
#include "skbound/grid.hpp"
#include "skbound/lp.hpp"
#include "skbound/prob.hpp"
#include "skbound/report.hpp"

// Closed-form witnesses certifying the two ends of the bound:
//   T-witness  (I(T;Z) = I(X;Y|T) = I(T;Z|X,Y) = 0)    => psi-hat = I(X;Y)
//   J*-split   (I(X;Y|J) = I(X,Y;J|Z) = 0)             => psi-hat = 0

namespace skb {

enum class WitnessKind { TWitness, JSplit };

// Builds the coupled law P(aux, x, y, z) = w_j Q_j(x,y) P(z|x,y) and returns
// the defining residuals. Components live on (X,Y); the Z column is inherited
// from the reference law so I(aux;Z|X,Y) = 0 holds by construction whenever
// Z is a function of (X,Y).
inline std::map<std::string, double> verify_witness(const JointPmf& pxyz,
                                                    const DecompositionWitness& w,
                                                    WitnessKind kind) {
  if (w.weights.size() != w.components.size())
    throw ShapeError("verify_witness: weight/component count mismatch");
  int nx = pxyz.alphabet().axis(pxyz.alphabet().index_of("X")).size;
  int ny = pxyz.alphabet().axis(pxyz.alphabet().index_of("Y")).size;
  int nz = pxyz.alphabet().axis(pxyz.alphabet().index_of("Z")).size;
  int nj = static_cast<int>(w.weights.size());

  JointPmf pxy = pxyz.marginalize({"X", "Y"});

  // P(z|x,y) from the reference law; zero cells get an arbitrary column
  std::vector<double> condz(static_cast<size_t>(nx) * ny * nz, 0.0);
  {
    JointPmf full = pxyz.marginalize({"X", "Y", "Z"});
    for (int x = 0; x < nx; ++x)
      for (int y = 0; y < ny; ++y) {
        double rowsum = 0.0;
        for (int z = 0; z < nz; ++z)
          rowsum += full.mass()[static_cast<size_t>((x * ny + y) * nz + z)];
        for (int z = 0; z < nz; ++z)
          condz[static_cast<size_t>((x * ny + y) * nz + z)] =
              rowsum > 0
                  ? full.mass()[static_cast<size_t>((x * ny + y) * nz + z)] / rowsum
                  : (z == 0 ? 1.0 : 0.0);
      }
  }

  double bary = 0.0;
  std::vector<double> mix(static_cast<size_t>(nx) * ny, 0.0);
  std::vector<double> mass(static_cast<size_t>(nj) * nx * ny * nz, 0.0);
  for (int j = 0; j < nj; ++j) {
    const auto& q = w.components[static_cast<size_t>(j)];
    if (q.cells() != static_cast<std::int64_t>(nx) * ny)
      throw ShapeError("verify_witness: component is not an (X,Y) law");
    for (int x = 0; x < nx; ++x)
      for (int y = 0; y < ny; ++y) {
        double v = w.weights[static_cast<size_t>(j)] * q.mass()[static_cast<size_t>(x * ny + y)];
        mix[static_cast<size_t>(x * ny + y)] += v;
        for (int z = 0; z < nz; ++z)
          mass[static_cast<size_t>(((j * nx + x) * ny + y) * nz + z)] =
              v * condz[static_cast<size_t>((x * ny + y) * nz + z)];
      }
  }
  for (int i = 0; i < nx * ny; ++i)
    bary = std::max(bary, std::abs(mix[static_cast<size_t>(i)] - pxy.mass()[static_cast<size_t>(i)]));

  const char* aux = kind == WitnessKind::TWitness ? "T" : "J";
  JointPmf joint(AlphabetSpec({{aux, nj}, {"X", nx}, {"Y", ny}, {"Z", nz}}), std::move(mass));

  std::map<std::string, double> res;
  res["barycenter"] = bary;
  if (kind == WitnessKind::TWitness) {
    res["I(T;Z)"] = joint.mutual_information({"T"}, {"Z"});
    res["I(X;Y|T)"] = joint.conditional_mutual_information({"X"}, {"Y"}, {"T"});
    res["I(T;Z|X,Y)"] = joint.conditional_mutual_information({"T"}, {"Z"}, {"X", "Y"});
  } else {
    res["I(X;Y|J)"] = joint.conditional_mutual_information({"X"}, {"Y"}, {"J"});
    res["I(X,Y;J|Z)"] = joint.conditional_mutual_information({"X", "Y"}, {"J"}, {"Z"});
  }
  return res;
}

namespace detail {

// Split a 2x2 block into two product components that preserve both the
// diagonal and antidiagonal class sums. Returns weights/components as raw
// 2x2 arrays; lambda is the weight of the second component.
struct QuadraticSplit {
  double x0 = 0.0, x1 = 0.0, lambda = 0.5;
  int split_antidiagonal = 1;  // 1: off-diagonal split, 0: diagonal split
  std::array<std::array<double, 4>, 2> comps{};  // row-major 2x2 each
};

inline QuadraticSplit quadratic_split(double p00, double p01, double p10, double p11) {
  QuadraticSplit s;
  auto roots = [](double b, double c, double& lo, double& hi) {
    double disc = std::max(b * b - 4.0 * c, 0.0);
    double sq = std::sqrt(disc);
    hi = (b + sq) / 2.0;
    lo = hi > 0 ? c / hi : 0.0;
  };
  if (p00 * p11 <= p01 * p10) {
    s.split_antidiagonal = 1;
    roots(p01 + p10, p00 * p11, s.x0, s.x1);
    s.lambda = s.x1 > s.x0 ? (s.x1 - p01) / (s.x1 - s.x0) : 0.5;
    s.comps[0] = {p00, s.x1, s.x0, p11};
    s.comps[1] = {p00, s.x0, s.x1, p11};
  } else {
    s.split_antidiagonal = 0;
    roots(p00 + p11, p01 * p10, s.x0, s.x1);
    s.lambda = s.x1 > s.x0 ? (s.x1 - p00) / (s.x1 - s.x0) : 0.5;
    s.comps[0] = {s.x1, p01, p10, s.x0};
    s.comps[1] = {s.x0, p01, p10, s.x1};
  }
  s.lambda = std::min(1.0, std::max(0.0, s.lambda));
  return s;
}

inline JointPmf matrix_pmf(const AlphabetSpec& spec, std::vector<double> m) {
  for (double& v : m) v = std::max(v, 0.0);
  return JointPmf(spec, std::move(m));
}

}  // namespace detail

// T-witness for binary (X,Y) with Z = X xor Y: two product components built
// from the roots of x^2 - (p01+p10) x + p00 p11 (or the symmetric diagonal
// form when the determinant is positive).
inline DecompositionWitness xor_witness(const JointPmf& p_xy) {
  const auto& al = p_xy.alphabet();
  if (al.rank() != 2 || al.axis(0).size != 2 || al.axis(1).size != 2)
    throw ShapeError("xor_witness: binary (X,Y) law required");
  double p00 = p_xy.mass()[0], p01 = p_xy.mass()[1], p10 = p_xy.mass()[2], p11 = p_xy.mass()[3];
  auto s = detail::quadratic_split(p00, p01, p10, p11);

  DecompositionWitness w;
  w.params["x0"] = s.x0;
  w.params["x1"] = s.x1;
  w.params["lambda"] = s.lambda;
  w.params["split_antidiagonal"] = s.split_antidiagonal;
  if (s.x1 - s.x0 <= 1e-15) {
    // double root: both components coincide, T is constant
    w.weights.push_back(1.0);
    w.components.push_back(detail::matrix_pmf(
        al, {s.comps[0][0], s.comps[0][1], s.comps[0][2], s.comps[0][3]}));
    return w;
  }
  if (s.lambda < 1.0) {
    w.weights.push_back(1.0 - s.lambda);
    w.components.push_back(detail::matrix_pmf(al, {s.comps[0][0], s.comps[0][1], s.comps[0][2], s.comps[0][3]}));
  }
  if (s.lambda > 0.0) {
    w.weights.push_back(s.lambda);
    w.components.push_back(detail::matrix_pmf(al, {s.comps[1][0], s.comps[1][1], s.comps[1][2], s.comps[1][3]}));
  }
  return w;
}

enum class MonotoneOp { Sum, And, Or };

struct MonotoneSplitResult {
  WitnessKind kind = WitnessKind::TWitness;
  DecompositionWitness witness;
  double covariance = 0.0;
};

// Covariance dichotomy for Z in {X+Y, AND, OR}: Cov(X,Y) <= 0 yields a
// T-witness certifying psi-hat = I(X;Y); Cov(X,Y) > 0 yields the alpha-split
// J* certifying psi-hat = 0. OR reduces to AND by relabeling both bits.
inline MonotoneSplitResult monotone_split(const JointPmf& p_xy, MonotoneOp op) {
  const auto& al = p_xy.alphabet();
  if (al.rank() != 2 || al.axis(0).size != 2 || al.axis(1).size != 2)
    throw ShapeError("monotone_split: binary (X,Y) law required");
  double p00 = p_xy.mass()[0], p01 = p_xy.mass()[1], p10 = p_xy.mass()[2], p11 = p_xy.mass()[3];
  double cov = p00 * p11 - p01 * p10;

  MonotoneSplitResult out;
  out.covariance = cov;
  if (cov <= 0.0) {
    out.kind = WitnessKind::TWitness;
    out.witness = xor_witness(p_xy);
    out.witness.params["cov"] = cov;
    return out;
  }

  out.kind = WitnessKind::JSplit;
  // relabel so the isolated corner of the function class plays (1,1)
  bool relabel = op == MonotoneOp::Or;
  double a00 = relabel ? p11 : p00;
  double a01 = relabel ? p10 : p01;
  double a10 = relabel ? p01 : p10;
  double a11 = relabel ? p00 : p11;
  if (a00 <= 0.0)
    throw DegenerateCaseError("monotone_split: zero corner with positive covariance");
  double alpha = a00 / (a00 - cov);
  if (alpha < 1.0)
    throw Error("monotone_split: alpha < 1 with positive covariance (internal)");
  std::vector<double> comp0(4, 0.0), comp1(4);
  comp1[0] = alpha * a00;
  comp1[1] = alpha * a01;
  comp1[2] = alpha * a10;
  comp1[3] = 1.0 - alpha * (1.0 - a11);
  comp0[3] = 1.0;
  if (relabel) {
    std::swap(comp0[0], comp0[3]);
    std::swap(comp0[1], comp0[2]);
    std::swap(comp1[0], comp1[3]);
    std::swap(comp1[1], comp1[2]);
  }
  DecompositionWitness w;
  w.weights = {1.0 - 1.0 / alpha, 1.0 / alpha};
  w.components.push_back(detail::matrix_pmf(al, comp0));
  w.components.push_back(detail::matrix_pmf(al, comp1));
  w.params["alpha"] = alpha;
  w.params["cov"] = cov;
  out.witness = std::move(w);
  return out;
}

struct ConditionNotMet {
  std::string inequality;
  double lhs = 0.0;
};

using TernaryResult = std::variant<DecompositionWitness, ConditionNotMet>;

// 2x3 construction for Z = (X + Y) mod 2: mixture of a column-{0,1} block
// and a column-{1,2} block, each further split into product components.
inline TernaryResult ternary_witness(const JointPmf& p_xy) {
  const auto& al = p_xy.alphabet();
  if (al.rank() != 2 || al.axis(0).size != 2 || al.axis(1).size != 3)
    throw ShapeError("ternary_witness: 2x3 (X,Y) law required");
  double p00 = p_xy.mass()[0], p02 = p_xy.mass()[2];
  double p10 = p_xy.mass()[3], p11 = p_xy.mass()[4], p12 = p_xy.mass()[5];
  double alpha = p00 + p02 + p11;
  double abar = 1.0 - alpha;

  auto frac = [](double num, double den) {
    if (num <= 0.0) return 0.0;
    if (den <= 0.0) return std::numeric_limits<double>::infinity();
    return num / den;
  };
  double lhs1 = frac(p00, alpha) + frac(p12, abar);
  double lhs2 = frac(p02, alpha) + frac(p10, abar);
  const double tol = 1e-12;
  if (lhs1 > 1.0 + tol)
    return ConditionNotMet{"P(0,0)/P_Z(0) + P(1,2)/P_Z(1) <= 1", lhs1};
  if (lhs2 > 1.0 + tol)
    return ConditionNotMet{"P(0,2)/P_Z(0) + P(1,0)/P_Z(1) <= 1", lhs2};

  // parameters r, t, omega for the B block and s, ell for the C block
  double r, t, omega;
  if (alpha <= 0.0) {
    // all class-0 cells empty: degenerate column blocks
    r = 0.0;
    omega = 1.0 - p12;
    t = omega > 0 ? p10 / omega : 0.0;
  } else if (abar <= 0.0) {
    r = 1.0;
    omega = p00;
    t = 0.0;
  } else if (p00 <= 0.0) {
    r = 0.0;
    omega = p10 / abar;
    t = p10 > 0 ? 1.0 : 0.0;
  } else {
    r = p10 > 0 ? std::min(1.0, abar * p00 / (alpha * p10)) : 1.0;
    omega = p00 / (alpha * r);
    t = p10 > 0 ? alpha * p10 * r / (abar * p00) : 0.0;
  }
  double ombar = 1.0 - omega;
  double s, ell;
  if (ombar <= 1e-15) {
    if (p12 > 1e-12 || p02 > 1e-12)
      throw DegenerateCaseError(
          "ternary_witness: B block exhausts the mass but column-2 cells remain");
    s = 0.0;
    ell = 0.0;
    ombar = 0.0;
    omega = 1.0;
  } else {
    s = abar > 0 ? p12 / (abar * ombar) : 0.0;
    ell = alpha > 0 ? p02 / (alpha * ombar) : (alpha <= 0.0 ? 0.0 : 0.0);
    if (abar <= 0.0) {
      // only diagonal-class mass: C carries (0,2) and (1,1)
      s = 0.0;
      ell = p02 / ombar;  // here C = [[0,0,ell],[0,1-ell,0]] with alpha = 1
    }
  }
  for (double* v : {&r, &t, &s, &ell, &omega}) {
    if (*v < -1e-12 || *v > 1.0 + 1e-12)
      throw Error("ternary_witness: parameter outside [0,1] (internal)");
    *v = std::min(1.0, std::max(0.0, *v));
  }

  // B over columns {0,1}, C over columns {1,2}
  double B[4] = {alpha * r, abar * (1.0 - t), abar * t, alpha * (1.0 - r)};
  double C[4] = {abar * (1.0 - s), alpha * ell, alpha * (1.0 - ell), abar * s};

  DecompositionWitness w;
  w.params = {{"alpha", alpha}, {"r", r}, {"t", t}, {"s", s}, {"ell", ell}, {"omega", omega}};
  auto push_block = [&](double wt, const double* blk, int col0, int col1) {
    if (wt <= 0.0) return;
    auto sp = detail::quadratic_split(blk[0], blk[1], blk[2], blk[3]);
    for (int ci = 0; ci < 2; ++ci) {
      double cw = wt * (ci == 0 ? 1.0 - sp.lambda : sp.lambda);
      if (cw <= 0.0) continue;
      std::vector<double> m(6, 0.0);
      m[static_cast<size_t>(col0)] = sp.comps[ci][0];
      m[static_cast<size_t>(col1)] = sp.comps[ci][1];
      m[static_cast<size_t>(3 + col0)] = sp.comps[ci][2];
      m[static_cast<size_t>(3 + col1)] = sp.comps[ci][3];
      w.weights.push_back(cw);
      w.components.push_back(detail::matrix_pmf(al, m));
    }
  };
  push_block(omega, B, 0, 1);
  push_block(ombar, C, 1, 2);
  return w;
}

// ---------------------------------------------------------------------------
// Convex-hull membership in A(P_Z) = { Q : I_Q(X;Y) = 0, Q_Z = P_Z }.

struct HullDecision {
  bool in = false;
  std::string detail;
  std::optional<DecompositionWitness> witness;
  int resolution = 0;
};

namespace detail {

inline bool is_product_law(const std::vector<double>& m, int nx, int ny, double tol = 1e-13) {
  for (int x1 = 0; x1 < nx; ++x1)
    for (int x2 = x1 + 1; x2 < nx; ++x2)
      for (int y1 = 0; y1 < ny; ++y1)
        for (int y2 = y1 + 1; y2 < ny; ++y2) {
          double det = m[static_cast<size_t>(x1 * ny + y1)] * m[static_cast<size_t>(x2 * ny + y2)] -
                       m[static_cast<size_t>(x1 * ny + y2)] * m[static_cast<size_t>(x2 * ny + y1)];
          if (std::abs(det) > tol) return false;
        }
  return true;
}

// 2x2 function classes {diagonal} vs {antidiagonal}?
inline bool is_xor_pattern(const FunctionTable& f) {
  return f.nx == 2 && f.ny == 2 && f(0, 0) == f(1, 1) && f(0, 1) == f(1, 0) &&
         f(0, 0) != f(0, 1);
}

// 2x3 pattern equivalent to (x+y) mod 2 up to Z relabeling
inline bool is_mod2_2x3_pattern(const FunctionTable& f) {
  if (f.nx != 2 || f.ny != 3) return false;
  return f(0, 0) == f(1, 1) && f(0, 0) == f(0, 2) && f(0, 1) == f(1, 0) &&
         f(0, 1) == f(1, 2) && f(0, 0) != f(0, 1);
}

}  // namespace detail

// Grid feasibility over product atoms {u (x) v} whose Z-marginal matches P_Z
// within 1/k per cell, with exact closed-form routes tried first. IN verdicts
// always carry a witness whose residuals verify at 1e-9; OUT verdicts are
// resolution-qualified, never a certificate of non-membership.
inline HullDecision hull_membership(const JointPmf& p_xy, const FunctionTable& f, int k) {
  const auto& al = p_xy.alphabet();
  int nx = al.axis(0).size, ny = al.axis(1).size;
  if (nx != f.nx || ny != f.ny) throw ShapeError("hull_membership: table shape mismatch");
  JointPmf pxyz = p_xy.apply_function(al.axis(0).name, al.axis(1).name, f, "Z");

  HullDecision dec;
  dec.resolution = k;
  auto accept = [&](DecompositionWitness w, const std::string& how) {
    auto res = verify_witness(pxyz, w, WitnessKind::TWitness);
    double worst = 0.0;
    for (const auto& [k2, v] : res) worst = std::max(worst, v);
    if (worst <= 1e-9) {
      dec.in = true;
      dec.detail = how;
      dec.witness = std::move(w);
      return true;
    }
    return false;
  };

  if (detail::is_product_law(p_xy.mass(), nx, ny)) {
    DecompositionWitness w;
    w.weights = {1.0};
    w.components.push_back(p_xy);
    if (accept(std::move(w), "product law: single-atom decomposition")) return dec;
  }
  if (detail::is_xor_pattern(f)) {
    if (accept(xor_witness(p_xy), "binary XOR construction")) return dec;
  }
  if (detail::is_mod2_2x3_pattern(f)) {
    auto t = ternary_witness(p_xy);
    if (auto* w = std::get_if<DecompositionWitness>(&t)) {
      if (accept(std::move(*w), "ternary mod-2 construction")) return dec;
    }
  }

  // discretized LP over product atoms filtered by the Z-marginal
  SimplexGrid gu(nx, k), gv(ny, k);
  std::vector<double> pz(static_cast<size_t>(f.nz), 0.0);
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y)
      pz[static_cast<size_t>(f(x, y))] += p_xy.mass()[static_cast<size_t>(x * ny + y)];

  std::vector<double> atoms;  // packed nx*ny blocks
  std::vector<double> ub(static_cast<size_t>(nx)), vb(static_cast<size_t>(ny));
  std::vector<double> qz(static_cast<size_t>(f.nz));
  const double slack = 1.0 / k;
  for (std::int64_t iu = 0; iu < gu.size(); ++iu) {
    gu.atom(iu, ub.data());
    for (std::int64_t iv = 0; iv < gv.size(); ++iv) {
      gv.atom(iv, vb.data());
      std::fill(qz.begin(), qz.end(), 0.0);
      for (int x = 0; x < nx; ++x)
        for (int y = 0; y < ny; ++y)
          qz[static_cast<size_t>(f(x, y))] += ub[static_cast<size_t>(x)] * vb[static_cast<size_t>(y)];
      bool ok = true;
      for (int z = 0; z < f.nz; ++z)
        if (std::abs(qz[static_cast<size_t>(z)] - pz[static_cast<size_t>(z)]) > slack) ok = false;
      if (!ok) continue;
      for (int x = 0; x < nx; ++x)
        for (int y = 0; y < ny; ++y)
          atoms.push_back(ub[static_cast<size_t>(x)] * vb[static_cast<size_t>(y)]);
    }
  }
  const int d = nx * ny;
  const std::int64_t natoms = static_cast<std::int64_t>(atoms.size()) / d;
  if (natoms == 0) {
    dec.detail = "not found at resolution k=" + std::to_string(k) + " (no admissible atoms)";
    return dec;
  }
  SimplexSolver solver(
      d, static_cast<int>(natoms),
      [&](int j, double* out) {
        for (int i = 0; i < d; ++i) out[i] = atoms[static_cast<size_t>(j) * d + i];
      },
      std::vector<double>(static_cast<size_t>(natoms), 0.0),
      std::vector<double>(p_xy.mass().begin(), p_xy.mass().end()));
  LpResult lp = solver.solve();
  if (lp.status != LpStatus::Optimal) {
    dec.detail = "not found at resolution k=" + std::to_string(k);
    return dec;
  }

  // exactification: EM mixture fit of product components from the LP point
  {
    int na = static_cast<int>(lp.weights.size());
    std::vector<double> wts(static_cast<size_t>(na));
    std::vector<double> us(static_cast<size_t>(na) * nx), vs(static_cast<size_t>(na) * ny);
    for (int a = 0; a < na; ++a) {
      auto [j, wv] = lp.weights[static_cast<size_t>(a)];
      wts[static_cast<size_t>(a)] = wv;
      const double* blk = &atoms[static_cast<size_t>(j) * d];
      for (int x = 0; x < nx; ++x) {
        double rs = 0.0;
        for (int y = 0; y < ny; ++y) rs += blk[x * ny + y];
        us[static_cast<size_t>(a * nx + x)] = rs;
      }
      for (int y = 0; y < ny; ++y) {
        double cs = 0.0;
        for (int x = 0; x < nx; ++x) cs += blk[x * ny + y];
        vs[static_cast<size_t>(a * ny + y)] = cs;
      }
    }
    double wtot = 0.0;
    for (double v : wts) wtot += v;
    for (double& v : wts) v /= wtot;
    for (int it = 0; it < 2000; ++it) {
      // EM step for the mixture of product laws
      std::vector<double> nw(static_cast<size_t>(na), 0.0);
      std::vector<double> nu(static_cast<size_t>(na) * nx, 0.0), nv(static_cast<size_t>(na) * ny, 0.0);
      for (int x = 0; x < nx; ++x)
        for (int y = 0; y < ny; ++y) {
          double pm = p_xy.mass()[static_cast<size_t>(x * ny + y)];
          if (pm <= 0) continue;
          double tot = 0.0;
          for (int a = 0; a < na; ++a)
            tot += wts[static_cast<size_t>(a)] * us[static_cast<size_t>(a * nx + x)] *
                   vs[static_cast<size_t>(a * ny + y)];
          if (tot <= 0) continue;
          for (int a = 0; a < na; ++a) {
            double resp = pm * wts[static_cast<size_t>(a)] * us[static_cast<size_t>(a * nx + x)] *
                          vs[static_cast<size_t>(a * ny + y)] / tot;
            nw[static_cast<size_t>(a)] += resp;
            nu[static_cast<size_t>(a * nx + x)] += resp;
            nv[static_cast<size_t>(a * ny + y)] += resp;
          }
        }
      for (int a = 0; a < na; ++a) {
        double z = nw[static_cast<size_t>(a)];
        wts[static_cast<size_t>(a)] = z;
        for (int x = 0; x < nx; ++x)
          us[static_cast<size_t>(a * nx + x)] = z > 0 ? nu[static_cast<size_t>(a * nx + x)] / z : 0.0;
        for (int y = 0; y < ny; ++y)
          vs[static_cast<size_t>(a * ny + y)] = z > 0 ? nv[static_cast<size_t>(a * ny + y)] / z : 0.0;
      }
    }
    DecompositionWitness w;
    for (int a = 0; a < na; ++a) {
      if (wts[static_cast<size_t>(a)] <= 1e-12) continue;
      std::vector<double> m(static_cast<size_t>(d));
      for (int x = 0; x < nx; ++x)
        for (int y = 0; y < ny; ++y)
          m[static_cast<size_t>(x * ny + y)] =
              us[static_cast<size_t>(a * nx + x)] * vs[static_cast<size_t>(a * ny + y)];
      w.weights.push_back(wts[static_cast<size_t>(a)]);
      w.components.push_back(detail::matrix_pmf(al, m));
    }
    if (!w.weights.empty() && accept(std::move(w), "grid LP + EM exactification")) return dec;
  }

  dec.detail = "feasible at resolution k=" + std::to_string(k) +
               " but no exact witness recovered (not certified)";
  return dec;
}

// ---------------------------------------------------------------------------
// Deterministic-erasure sources: Z = g(X), Y erases X with probability eps.

inline double erasure_capacity(const std::vector<double>& p_x, const std::vector<int>& g,
                               double eps) {
  if (eps < 0.0 || eps > 1.0) throw ValidationError("erasure: eps must lie in [0,1]");
  if (g.size() != p_x.size()) throw ShapeError("erasure: map size mismatch");
  int nz = 0;
  for (int z : g) nz = std::max(nz, z + 1);
  std::vector<double> pz(static_cast<size_t>(nz), 0.0);
  double hxz = 0.0;
  for (size_t x = 0; x < p_x.size(); ++x) {
    pz[static_cast<size_t>(g[x])] += p_x[x];
    hxz -= xlog2x(p_x[x]);
  }
  // H(X|Z) = H(X,Z) - H(Z) = H(X) - H(Z) since Z = g(X)
  return (1.0 - eps) * (hxz - entropy_of(pz));
}

// Full joint over (X, Y, Z) with Y = X-alphabet plus an erasure letter.
inline JointPmf erasure_joint(const std::vector<double>& p_x, const std::vector<int>& g,
                              double eps) {
  if (g.size() != p_x.size()) throw ShapeError("erasure: map size mismatch");
  int nx = static_cast<int>(p_x.size());
  int nz = 0;
  for (int z : g) nz = std::max(nz, z + 1);
  std::vector<double> mass(static_cast<size_t>(nx) * (nx + 1) * nz, 0.0);
  for (int x = 0; x < nx; ++x) {
    int z = g[static_cast<size_t>(x)];
    mass[static_cast<size_t>((x * (nx + 1) + x) * nz + z)] = p_x[static_cast<size_t>(x)] * (1.0 - eps);
    mass[static_cast<size_t>((x * (nx + 1) + nx) * nz + z)] = p_x[static_cast<size_t>(x)] * eps;
  }
  return JointPmf(AlphabetSpec({{"X", nx}, {"Y", nx + 1}, {"Z", nz}}), std::move(mass));
}

// Functional-representation kernel P(U|X) for Z = g(X): U is independent of Z
// and (U,Z) determine X. Built from the common refinement of the per-class
// inverse-cdf interval partitions; |U| <= |X| - |Z| + 1.
inline ConditionalPmf frl_kernel(const std::vector<double>& p_x, const std::vector<int>& g) {
  int nx = static_cast<int>(p_x.size());
  int nz = 0;
  for (int z : g) nz = std::max(nz, z + 1);
  std::vector<double> pz(static_cast<size_t>(nz), 0.0);
  for (int x = 0; x < nx; ++x) pz[static_cast<size_t>(g[static_cast<size_t>(x)])] += p_x[static_cast<size_t>(x)];

  // per-class interval endpoints in [0,1]
  std::vector<double> cuts{0.0, 1.0};
  std::vector<std::vector<std::pair<int, std::pair<double, double>>>> intervals(
      static_cast<size_t>(nz));
  for (int z = 0; z < nz; ++z) {
    if (pz[static_cast<size_t>(z)] <= 0) continue;
    double acc = 0.0;
    for (int x = 0; x < nx; ++x) {
      if (g[static_cast<size_t>(x)] != z || p_x[static_cast<size_t>(x)] <= 0) continue;
      double a = acc, b = acc + p_x[static_cast<size_t>(x)] / pz[static_cast<size_t>(z)];
      intervals[static_cast<size_t>(z)].push_back({x, {a, b}});
      acc = b;
      cuts.push_back(b);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-14; }),
             cuts.end());
  int nu = static_cast<int>(cuts.size()) - 1;

  std::vector<double> rows(static_cast<size_t>(nx) * nu, 0.0);
  for (int z = 0; z < nz; ++z)
    for (const auto& [x, ab] : intervals[static_cast<size_t>(z)]) {
      double len = ab.second - ab.first;
      if (len <= 0) continue;
      for (int u = 0; u < nu; ++u) {
        double ov = std::min(ab.second, cuts[static_cast<size_t>(u + 1)]) -
                    std::max(ab.first, cuts[static_cast<size_t>(u)]);
        if (ov > 0) rows[static_cast<size_t>(x * nu + u)] = ov / len;
      }
    }
  return ConditionalPmf(AlphabetSpec({{"X", nx}}), AlphabetSpec({{"U", nu}}), rows);
}

}  // namespace skb

#endif
