#ifndef SKBOUND_SEARCH_HPP
#define SKBOUND_SEARCH_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "skbound/constructions.hpp"
#include "skbound/envelope.hpp"
#include "skbound/prob.hpp"
#include "skbound/report.hpp"

// Nonconvex searches over conditional-distribution parameter spaces.
// Every objective is a signed combination of joint entropies over the law
//   mu(cell, a1, a2) = P(cell) K1(a1 | r1(cell)) K2(a2 | r2(cell, a1)),
// so values and analytic gradients share one evaluation path. Optimization
// is exponentiated-gradient (mirror) steps on each kernel row with seeded
// restarts; all draws are deterministic in (seed, restart index).

namespace skb {

struct SearchConfig {
  int restarts = 8;
  int max_iters = 400;
  double step0 = 1.0;        // initial mirror step
  double step_decay = 0.01;  // eta_t = step0 / (1 + decay t)
  double tol = 1e-9;         // bits
  std::uint64_t seed = 1;
  int j_card = 0;  // 0 = operation default
  int u_card = 0;
  int v_card = 0;
  int u1_card = 0;
  int u2_card = 0;
};

namespace detail {

struct EntropyTerm {
  double coef = 0.0;
  std::vector<std::int32_t> bucket;  // joint index -> bucket
  int nbuckets = 0;
};

// Joint model over (cell, a1, a2) with per-cell kernel-row maps.
struct EntropyModel {
  int ncells = 0;
  std::vector<double> base;  // P(cell)
  int na1 = 1, nr1 = 1;
  std::vector<int> r1;  // per cell
  int na2 = 1, nr2 = 1;
  std::vector<int> r2;  // per (cell, a1); empty when na2 == 1
  std::vector<EntropyTerm> terms;

  std::int64_t joint_size() const {
    return static_cast<std::int64_t>(ncells) * na1 * na2;
  }

  void fill_mu(const double* k1, const double* k2, std::vector<double>& mu) const {
    mu.assign(static_cast<size_t>(joint_size()), 0.0);
    for (int c = 0; c < ncells; ++c) {
      double pc = base[static_cast<size_t>(c)];
      if (pc == 0.0) continue;
      for (int a1 = 0; a1 < na1; ++a1) {
        double w1 = pc * k1[static_cast<size_t>(r1[static_cast<size_t>(c)] * na1 + a1)];
        if (na2 == 1) {
          mu[static_cast<size_t>(c * na1 + a1)] = w1;
        } else {
          int row2 = r2[static_cast<size_t>(c * na1 + a1)];
          for (int a2 = 0; a2 < na2; ++a2)
            mu[static_cast<size_t>((c * na1 + a1) * na2 + a2)] =
                w1 * k2[static_cast<size_t>(row2 * na2 + a2)];
        }
      }
    }
  }

  double value_mu(const std::vector<double>& mu, std::vector<double>& scratch) const {
    double total = 0.0;
    for (const auto& t : terms) {
      scratch.assign(static_cast<size_t>(t.nbuckets), 0.0);
      for (std::int64_t i = 0; i < joint_size(); ++i)
        scratch[static_cast<size_t>(t.bucket[static_cast<size_t>(i)])] += mu[static_cast<size_t>(i)];
      double h = 0.0;
      for (double v : scratch) h -= xlog2x(v);
      total += t.coef * h;
    }
    return total;
  }

  double value(const double* k1, const double* k2) const {
    std::vector<double> mu, scratch;
    fill_mu(k1, k2, mu);
    return value_mu(mu, scratch);
  }

  // dvalue/dmu, then chain onto kernel entries
  double grad(const double* k1, const double* k2, std::vector<double>& g1,
              std::vector<double>& g2) const {
    std::vector<double> mu, scratch;
    fill_mu(k1, k2, mu);
    const double inv_ln2 = 1.0 / std::log(2.0);
    std::vector<double> gmu(static_cast<size_t>(joint_size()), 0.0);
    double total = 0.0;
    for (const auto& t : terms) {
      scratch.assign(static_cast<size_t>(t.nbuckets), 0.0);
      for (std::int64_t i = 0; i < joint_size(); ++i)
        scratch[static_cast<size_t>(t.bucket[static_cast<size_t>(i)])] += mu[static_cast<size_t>(i)];
      double h = 0.0;
      for (double v : scratch) h -= xlog2x(v);
      total += t.coef * h;
      // d(-x log2 x)/dx = -(log2 x + 1/ln 2)
      for (std::int64_t i = 0; i < joint_size(); ++i) {
        double m = scratch[static_cast<size_t>(t.bucket[static_cast<size_t>(i)])];
        if (m > 0.0)
          gmu[static_cast<size_t>(i)] += t.coef * (-(std::log2(m) + inv_ln2));
      }
    }
    g1.assign(static_cast<size_t>(nr1 * na1), 0.0);
    g2.assign(static_cast<size_t>(std::max(1, nr2 * na2)), 0.0);
    for (int c = 0; c < ncells; ++c) {
      double pc = base[static_cast<size_t>(c)];
      if (pc == 0.0) continue;
      for (int a1 = 0; a1 < na1; ++a1) {
        double k1v = k1[static_cast<size_t>(r1[static_cast<size_t>(c)] * na1 + a1)];
        if (na2 == 1) {
          g1[static_cast<size_t>(r1[static_cast<size_t>(c)] * na1 + a1)] +=
              pc * gmu[static_cast<size_t>(c * na1 + a1)];
        } else {
          int row2 = r2[static_cast<size_t>(c * na1 + a1)];
          for (int a2 = 0; a2 < na2; ++a2) {
            double g = gmu[static_cast<size_t>((c * na1 + a1) * na2 + a2)];
            double k2v = k2[static_cast<size_t>(row2 * na2 + a2)];
            g1[static_cast<size_t>(r1[static_cast<size_t>(c)] * na1 + a1)] += pc * k2v * g;
            g2[static_cast<size_t>(row2 * na2 + a2)] += pc * k1v * g;
          }
        }
      }
    }
    return total;
  }
};

// Bucket construction: the joint index enumerates (cell, a1, a2); an axis is
// either a per-cell symbol array or one of the aux coordinates.
struct AxisView {
  int size = 1;
  const std::vector<int>* cell_symbol = nullptr;  // per-cell values
  int aux = 0;                                    // 0: cell axis, 1: a1, 2: a2
};

inline EntropyTerm make_term(double coef, const std::vector<AxisView>& axes, int ncells,
                             int na1, int na2) {
  EntropyTerm t;
  t.coef = coef;
  t.nbuckets = 1;
  for (const auto& a : axes) t.nbuckets *= a.size;
  t.bucket.resize(static_cast<size_t>(ncells) * na1 * na2);
  for (int c = 0; c < ncells; ++c)
    for (int a1 = 0; a1 < na1; ++a1)
      for (int a2 = 0; a2 < na2; ++a2) {
        int b = 0;
        for (const auto& a : axes) {
          int sym = a.aux == 1 ? a1 : (a.aux == 2 ? a2 : (*a.cell_symbol)[static_cast<size_t>(c)]);
          b = b * a.size + sym;
        }
        t.bucket[static_cast<size_t>((c * na1 + a1) * na2 + a2)] = b;
      }
  return t;
}

inline std::vector<double> dirichlet_rows(std::mt19937_64& rng, int rows, int cols) {
  std::gamma_distribution<double> g(1.0, 1.0);
  std::vector<double> k(static_cast<size_t>(rows) * cols);
  for (int r = 0; r < rows; ++r) {
    double tot = 0.0;
    for (int c = 0; c < cols; ++c) tot += (k[static_cast<size_t>(r * cols + c)] = g(rng) + 1e-12);
    for (int c = 0; c < cols; ++c) k[static_cast<size_t>(r * cols + c)] /= tot;
  }
  return k;
}

inline std::vector<double> point_rows(int rows, int cols, const std::vector<int>& target) {
  std::vector<double> k(static_cast<size_t>(rows) * cols, 0.0);
  for (int r = 0; r < rows; ++r) k[static_cast<size_t>(r * cols + target[static_cast<size_t>(r)])] = 1.0;
  return k;
}

// Soften a deterministic seed slightly so mirror steps can move it.
inline void soften(std::vector<double>& k, int cols, double eps = 1e-6) {
  int rows = static_cast<int>(k.size()) / cols;
  for (int r = 0; r < rows; ++r) {
    double tot = 0.0;
    for (int c = 0; c < cols; ++c)
      tot += (k[static_cast<size_t>(r * cols + c)] =
                  k[static_cast<size_t>(r * cols + c)] * (1.0 - eps) + eps / cols);
    for (int c = 0; c < cols; ++c) k[static_cast<size_t>(r * cols + c)] /= tot;
  }
}

struct MirrorResult {
  double value = 0.0;
  std::vector<double> k1, k2;
  int iters = 0;
};

// Mirror ascent/descent with a held best-seen iterate. `sign` is +1 to
// maximize, -1 to minimize. An optional extra objective (penalty) is added
// with its own gradient; the reported best uses `score` (defaults to the
// model value) evaluated exactly.
inline MirrorResult mirror_optimize(
    const EntropyModel& model, int sign, std::vector<double> k1, std::vector<double> k2,
    const SearchConfig& cfg,
    const std::function<double(const double*, const double*, double*, double*)>& extra = {},
    const std::function<double(const double*, const double*)>& score = {}) {
  std::vector<double> g1, g2, e1, e2;
  MirrorResult best;
  best.k1 = k1;
  best.k2 = k2;
  auto eval_score = [&](const std::vector<double>& a, const std::vector<double>& b) {
    return score ? score(a.data(), b.data()) : model.value(a.data(), b.data());
  };
  best.value = eval_score(k1, k2);

  double last = best.value;
  int flat = 0;
  for (int it = 0; it < cfg.max_iters; ++it) {
    model.grad(k1.data(), k2.data(), g1, g2);
    if (extra) {
      e1.assign(g1.size(), 0.0);
      e2.assign(g2.size(), 0.0);
      extra(k1.data(), k2.data(), e1.data(), e2.data());
      for (size_t i = 0; i < g1.size(); ++i) g1[i] += e1[i];
      for (size_t i = 0; i < g2.size(); ++i) g2[i] += e2[i];
    }
    double eta = sign * cfg.step0 / (1.0 + cfg.step_decay * it);
    auto step_rows = [&](std::vector<double>& k, const std::vector<double>& g, int cols) {
      int rows = static_cast<int>(k.size()) / cols;
      for (int r = 0; r < rows; ++r) {
        double mx = -1e300;
        for (int c = 0; c < cols; ++c)
          mx = std::max(mx, eta * g[static_cast<size_t>(r * cols + c)]);
        double tot = 0.0;
        for (int c = 0; c < cols; ++c) {
          double& v = k[static_cast<size_t>(r * cols + c)];
          double arg = eta * g[static_cast<size_t>(r * cols + c)] - mx;
          v = std::max(v, 1e-300) * std::exp(std::max(arg, -700.0));
          tot += v;
        }
        for (int c = 0; c < cols; ++c) k[static_cast<size_t>(r * cols + c)] /= tot;
      }
    };
    step_rows(k1, g1, model.na1);
    if (model.na2 > 1) step_rows(k2, g2, model.na2);

    double cur = eval_score(k1, k2);
    if (sign * (cur - best.value) > 0) {
      best.value = cur;
      best.k1 = k1;
      best.k2 = k2;
    }
    if (std::abs(cur - last) < cfg.tol) {
      if (++flat > 8) {
        best.iters = it + 1;
        return best;
      }
    } else {
      flat = 0;
    }
    last = cur;
  }
  best.iters = cfg.max_iters;
  return best;
}

// Support-cell frame of a 3-axis law with symbol arrays reused as AxisViews.
struct CellBase {
  std::vector<double> mass;
  std::vector<int> xs, ys, zs, xys;
  int nx = 0, ny = 0, nz = 0;
  std::vector<std::int64_t> flat_cells;

  static CellBase build(const JointPmf& pxyz) {
    CellBase b;
    const auto& al = pxyz.alphabet();
    int xi = al.index_of("X"), yi = al.index_of("Y"), zi = al.index_of("Z");
    b.nx = al.axis(xi).size;
    b.ny = al.axis(yi).size;
    b.nz = al.axis(zi).size;
    std::vector<int> multi;
    for (std::int64_t c : pxyz.support()) {
      al.unflat(c, multi);
      b.flat_cells.push_back(c);
      b.mass.push_back(pxyz.mass()[static_cast<size_t>(c)]);
      b.xs.push_back(multi[static_cast<size_t>(xi)]);
      b.ys.push_back(multi[static_cast<size_t>(yi)]);
      b.zs.push_back(multi[static_cast<size_t>(zi)]);
      b.xys.push_back(multi[static_cast<size_t>(xi)] * b.ny + multi[static_cast<size_t>(yi)]);
    }
    return b;
  }

  int size() const { return static_cast<int>(mass.size()); }
};

}  // namespace detail

// Analytic-gradient check hook: relative error of the model gradient against
// central finite differences at the supplied kernels.
inline double gradient_check(const detail::EntropyModel& model, std::vector<double> k1,
                             std::vector<double> k2, double h = 1e-5) {
  std::vector<double> g1, g2;
  model.grad(k1.data(), k2.data(), g1, g2);
  double worst = 0.0, scale = 1.0;
  auto probe = [&](std::vector<double>& k, std::vector<double>& g) {
    for (size_t i = 0; i < k.size(); ++i) {
      double keep = k[i];
      k[i] = keep + h;
      double up = model.value(k1.data(), k2.data());
      k[i] = keep - h;
      double dn = model.value(k1.data(), k2.data());
      k[i] = keep;
      double fd = (up - dn) / (2 * h);
      worst = std::max(worst, std::abs(fd - g[i]));
      scale = std::max(scale, std::abs(fd));
    }
  };
  probe(k1, g1);
  if (model.na2 > 1) probe(k2, g2);
  return worst / scale;
}

// ---------------------------------------------------------------------------
// psi-hat search: min over P(J|X,Y,Z) of I(X;Y|J) + I(X,Y;J|Z).

namespace detail {

inline EntropyModel psi_hat_model(const CellBase& b, int nj) {
  EntropyModel m;
  m.ncells = b.size();
  m.base = b.mass;
  m.na1 = nj;
  m.nr1 = b.size();
  m.r1.resize(static_cast<size_t>(b.size()));
  for (int c = 0; c < b.size(); ++c) m.r1[static_cast<size_t>(c)] = c;
  AxisView X{b.nx, &b.xs, 0}, Y{b.ny, &b.ys, 0}, Z{b.nz, &b.zs, 0}, XY{b.nx * b.ny, &b.xys, 0},
      J{nj, nullptr, 1};
  auto T = [&](double coef, std::vector<AxisView> axes) {
    m.terms.push_back(make_term(coef, axes, m.ncells, m.na1, m.na2));
  };
  // I(X;Y|J) = H(XJ) + H(YJ) - H(XYJ) - H(J)
  T(+1, {X, J});
  T(+1, {Y, J});
  T(-1, {XY, J});
  T(-1, {J});
  // I(X,Y;J|Z) = H(XYZ) - H(Z) - H(XYZJ) + H(ZJ); cells are distinct (x,y,z)
  T(+1, {XY, Z});
  T(-1, {Z});
  T(-1, {XY, Z, J});
  T(+1, {Z, J});
  return m;
}

inline BoundReport run_single_kernel(const detail::EntropyModel& model, int sign,
                                     std::vector<std::vector<double>> seeds,
                                     const SearchConfig& cfg) {
  BoundReport rep;
  rep.kind = CertificateKind::SearchBest;
  std::vector<double> none;
  double best = sign > 0 ? -1e300 : 1e300;
  std::vector<double> bestk;
  int total = std::max<int>(cfg.restarts, static_cast<int>(seeds.size()));
  for (int r = 0; r < total; ++r) {
    std::vector<double> k1;
    if (r < static_cast<int>(seeds.size())) {
      k1 = seeds[static_cast<size_t>(r)];
      // the raw seed value participates exactly; structured seeds are often
      // the closed-form optimum and must not be blurred by softening
      double raw = model.value(k1.data(), nullptr);
      if (sign * (raw - best) > 0) {
        best = raw;
        bestk = k1;
      }
      detail::soften(k1, model.na1);
    } else {
      std::mt19937_64 rng(cfg.seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(r + 1)));
      k1 = detail::dirichlet_rows(rng, model.nr1, model.na1);
    }
    auto res = detail::mirror_optimize(model, sign, std::move(k1), none, cfg);
    rep.trace.push_back(res.value);
    if (sign * (res.value - best) > 0) {
      best = res.value;
      bestk = res.k1;
    }
  }
  rep.value = best;
  rep.residuals["restart_spread"] =
      rep.trace.empty() ? 0.0
                        : std::abs(*std::max_element(rep.trace.begin(), rep.trace.end()) -
                                   *std::min_element(rep.trace.begin(), rep.trace.end()));
  rep.notes.push_back("deterministic given (seed, config)");
  if (!bestk.empty()) {
    // rows indexed by kernel row (support cell or conditioning symbol)
    rep.kernel_witness = ConditionalPmf(AlphabetSpec({{"row", model.nr1}}),
                                        AlphabetSpec({{"A", model.na1}}), bestk);
  }
  return rep;
}

}  // namespace detail

inline BoundReport psi_hat_search(const JointPmf& pxyz, const SearchConfig& cfg = {}) {
  auto b = detail::CellBase::build(pxyz);
  int nj = cfg.j_card > 0 ? cfg.j_card : b.nx * b.ny;
  auto model = detail::psi_hat_model(b, nj);

  std::vector<std::vector<double>> seeds;
  // constant J achieves I(X;Y)
  seeds.push_back(detail::point_rows(b.size(), nj, std::vector<int>(static_cast<size_t>(b.size()), 0)));
  // J = Z achieves I(X;Y|Z)
  {
    std::vector<int> t(static_cast<size_t>(b.size()));
    for (int c = 0; c < b.size(); ++c) t[static_cast<size_t>(c)] = b.zs[static_cast<size_t>(c)] % nj;
    seeds.push_back(detail::point_rows(b.size(), nj, t));
  }
  // closed-form corner split when the pattern admits one
  if (nj >= 2 && b.nx == 2 && b.ny == 2 && b.size() <= 4) {
    JointPmf pxy = pxyz.marginalize({"X", "Y"});
    double p00 = pxy.mass()[0], p01 = pxy.mass()[1], p10 = pxy.mass()[2], p11 = pxy.mass()[3];
    double cov = p00 * p11 - p01 * p10;
    if (cov > 0 && pxyz.conditional_entropy({"Z"}, {"X", "Y"}) <= 1e-12) {
      // P(J*=1 | x,y) from the alpha split, valid whenever the (1,1) class
      // is isolated by f; harmless as a seed otherwise
      double alpha = p00 / (p00 - cov);
      std::vector<double> k(static_cast<size_t>(b.size()) * nj, 0.0);
      for (int c = 0; c < b.size(); ++c) {
        double px = pxy.mass()[static_cast<size_t>(b.xys[static_cast<size_t>(c)])];
        double comp1 = b.xys[static_cast<size_t>(c)] == 3 ? 1.0 - alpha * (1.0 - p11)
                                                          : alpha * px;
        double pj1 = px > 0 ? std::min(1.0, comp1 / alpha / px) : 0.0;
        k[static_cast<size_t>(c * nj + 1)] = pj1;
        k[static_cast<size_t>(c * nj + 0)] = 1.0 - pj1;
      }
      seeds.push_back(std::move(k));
    }
  }

  BoundReport rep = detail::run_single_kernel(model, -1, std::move(seeds), cfg);
  double ixy = pxyz.mutual_information({"X"}, {"Y"});
  double ixy_z = pxyz.conditional_mutual_information({"X"}, {"Y"}, {"Z"});
  rep.residuals["excess_over_I(X;Y)"] = std::max(0.0, rep.value - ixy);
  rep.residuals["excess_over_I(X;Y|Z)"] = std::max(0.0, rep.value - ixy_z);
  rep.notes.push_back("no cardinality bound on J is known for the inf-max bound; |J|=" +
                      std::to_string(nj) + " is a configuration choice");
  return rep;
}

// Exhaustive minimum of the psi-hat objective over grid-quantized kernels;
// an independent brute-force oracle for tiny instances.
inline double grid_oracle(const JointPmf& pxyz, int j_card, int k,
                          std::int64_t enumeration_cap = 100'000'000) {
  auto b = detail::CellBase::build(pxyz);
  auto model = detail::psi_hat_model(b, j_card);
  SimplexGrid rowgrid(j_card, k);
  double combos = std::pow(static_cast<double>(rowgrid.size()), b.size());
  if (combos > static_cast<double>(enumeration_cap))
    throw CapacityError("grid_oracle: enumeration exceeds cap");

  std::vector<double> kern(static_cast<size_t>(b.size()) * j_card);
  std::vector<std::int64_t> idx(static_cast<size_t>(b.size()), 0);
  std::vector<double> atom(static_cast<size_t>(j_card));
  for (int c = 0; c < b.size(); ++c) {
    rowgrid.atom(0, atom.data());
    std::copy(atom.begin(), atom.end(), kern.begin() + static_cast<std::ptrdiff_t>(c) * j_card);
  }
  double best = 1e300;
  std::vector<double> mu, scratch;
  while (true) {
    model.fill_mu(kern.data(), nullptr, mu);
    best = std::min(best, model.value_mu(mu, scratch));
    int pos = b.size() - 1;
    while (pos >= 0 && idx[static_cast<size_t>(pos)] == rowgrid.size() - 1) {
      idx[static_cast<size_t>(pos)] = 0;
      rowgrid.atom(0, atom.data());
      std::copy(atom.begin(), atom.end(),
                kern.begin() + static_cast<std::ptrdiff_t>(pos) * j_card);
      --pos;
    }
    if (pos < 0) break;
    ++idx[static_cast<size_t>(pos)];
    rowgrid.atom(idx[static_cast<size_t>(pos)], atom.data());
    std::copy(atom.begin(), atom.end(), kern.begin() + static_cast<std::ptrdiff_t>(pos) * j_card);
  }
  return best;
}

namespace detail {

// min over P(J|Z) of I(X;Y|J): the Markov chain J - Z - (X,Y) is enforced
// structurally by keying kernel rows on z alone.
inline EntropyModel intrinsic_model(const CellBase& b, int nj) {
  EntropyModel m;
  m.ncells = b.size();
  m.base = b.mass;
  m.na1 = nj;
  m.nr1 = b.nz;
  m.r1 = b.zs;
  AxisView X{b.nx, &b.xs, 0}, Y{b.ny, &b.ys, 0}, XY{b.nx * b.ny, &b.xys, 0}, J{nj, nullptr, 1};
  m.terms.push_back(make_term(+1, {X, J}, m.ncells, m.na1, m.na2));
  m.terms.push_back(make_term(+1, {Y, J}, m.ncells, m.na1, m.na2));
  m.terms.push_back(make_term(-1, {XY, J}, m.ncells, m.na1, m.na2));
  m.terms.push_back(make_term(-1, {J}, m.ncells, m.na1, m.na2));
  return m;
}

}  // namespace detail

// Intrinsic information: min over P(J|Z) of I(X;Y|J).
inline BoundReport intrinsic_information(const JointPmf& pxyz, const SearchConfig& cfg = {}) {
  auto b = detail::CellBase::build(pxyz);
  int nj = cfg.j_card > 0 ? cfg.j_card : b.nz;
  detail::EntropyModel m = detail::intrinsic_model(b, nj);

  std::vector<std::vector<double>> seeds;
  seeds.push_back(detail::point_rows(b.nz, nj, std::vector<int>(static_cast<size_t>(b.nz), 0)));
  {
    std::vector<int> ident(static_cast<size_t>(b.nz));
    for (int z = 0; z < b.nz; ++z) ident[static_cast<size_t>(z)] = z % nj;
    seeds.push_back(detail::point_rows(b.nz, nj, ident));
  }
  BoundReport rep = detail::run_single_kernel(m, -1, std::move(seeds), cfg);
  rep.notes.push_back("minimization over degradations P(J|Z)");
  return rep;
}

// ---------------------------------------------------------------------------
// One-way secrecy rate from X: max over P(U,V|X) of I(U;Y|V) - I(U;Z|V).

namespace detail {

inline EntropyModel one_way_model(const CellBase& b, int nu, int nv) {
  EntropyModel m;
  m.ncells = b.size();
  m.base = b.mass;
  m.na1 = nu * nv;
  m.nr1 = b.nx;
  m.r1 = b.xs;
  // I(U;Y|V) - I(U;Z|V) = H(YV) - H(UYV) - H(ZV) + H(UZV).
  // U = a1 / nv and V = a1 % nv are projections of the packed aux axis, so
  // buckets are assembled by hand rather than through AxisView.
  auto manual_term = [&](double coef, bool with_u, int cell_axis_size,
                         const std::vector<int>* cell_sym) {
    EntropyTerm t;
    t.coef = coef;
    t.nbuckets = (with_u ? nu : 1) * nv * cell_axis_size;
    t.bucket.resize(static_cast<size_t>(m.ncells) * m.na1);
    for (int c = 0; c < m.ncells; ++c)
      for (int a1 = 0; a1 < m.na1; ++a1) {
        int u = a1 / nv, v = a1 % nv;
        int bkt = with_u ? u : 0;
        bkt = bkt * nv + v;
        bkt = bkt * cell_axis_size + (*cell_sym)[static_cast<size_t>(c)];
        t.bucket[static_cast<size_t>(c * m.na1 + a1)] = bkt;
      }
    m.terms.push_back(std::move(t));
  };
  manual_term(+1, false, b.ny, &b.ys);  // H(Y,V)
  manual_term(-1, true, b.ny, &b.ys);   // H(U,Y,V)
  manual_term(-1, false, b.nz, &b.zs);  // H(Z,V)
  manual_term(+1, true, b.nz, &b.zs);   // H(U,Z,V)
  return m;
}

}  // namespace detail

enum class Direction { XtoY, YtoX };

inline BoundReport sow_evaluate(const JointPmf& pxyz, Direction dir = Direction::XtoY,
                                const SearchConfig& cfg = {}) {
  // swap roles by relabeling axes
  JointPmf p = pxyz;
  if (dir == Direction::YtoX) {
    std::vector<Axis> axes;
    for (const auto& a : pxyz.alphabet().axes()) {
      Axis na = a;
      if (a.name == "X") na.name = "Y";
      else if (a.name == "Y") na.name = "X";
      axes.push_back(na);
    }
    p = JointPmf(AlphabetSpec(axes), pxyz.mass());
  }
  auto b = detail::CellBase::build(p);
  int nu = cfg.u_card > 0 ? cfg.u_card : b.nx;
  int nv = cfg.v_card > 0 ? cfg.v_card : b.nx;
  auto model = detail::one_way_model(b, nu, nv);

  std::vector<std::vector<double>> seeds;
  // U = X, V constant
  {
    std::vector<int> t(static_cast<size_t>(b.nx));
    for (int x = 0; x < b.nx; ++x) t[static_cast<size_t>(x)] = (x % nu) * nv;
    seeds.push_back(detail::point_rows(b.nx, nu * nv, t));
  }
  // functional-representation seed when Z = g(X): exact optimizer for
  // deterministic-erasure sources
  if (p.conditional_entropy({"Z"}, {"X"}) <= 1e-12) {
    std::vector<double> px(static_cast<size_t>(b.nx), 0.0);
    std::vector<int> g(static_cast<size_t>(b.nx), 0);
    for (int c = 0; c < b.size(); ++c) {
      px[static_cast<size_t>(b.xs[static_cast<size_t>(c)])] += b.mass[static_cast<size_t>(c)];
      g[static_cast<size_t>(b.xs[static_cast<size_t>(c)])] = b.zs[static_cast<size_t>(c)];
    }
    ConditionalPmf fr = frl_kernel(px, g);
    int nfr = static_cast<int>(fr.output().cells());
    if (nfr <= nu) {
      std::vector<double> k(static_cast<size_t>(b.nx) * nu * nv, 0.0);
      for (int x = 0; x < b.nx; ++x)
        for (int u = 0; u < nfr; ++u)
          k[static_cast<size_t>(x * nu * nv + u * nv + 0)] = fr.row_entry(x, u);
      seeds.push_back(std::move(k));
    }
  }
  BoundReport rep = detail::run_single_kernel(model, +1, std::move(seeds), cfg);
  rep.notes.push_back("one-way secrecy lower bound; any kernel value is achievable");
  return rep;
}

// ---------------------------------------------------------------------------
// Hypercontractivity-ribbon margin at coefficients lambda.

namespace detail {

inline EntropyModel ribbon_model(const CellBase& b, int nj, const std::array<double, 3>& lambda) {
  EntropyModel m;
  m.ncells = b.size();
  m.base = b.mass;
  m.na1 = nj;
  m.nr1 = b.size();
  m.r1.resize(static_cast<size_t>(b.size()));
  for (int c = 0; c < b.size(); ++c) m.r1[static_cast<size_t>(c)] = c;
  std::vector<int> all(static_cast<size_t>(b.size()));
  for (int c = 0; c < b.size(); ++c) all[static_cast<size_t>(c)] = c;
  AxisView X{b.nx, &b.xs, 0}, Y{b.ny, &b.ys, 0}, Z{b.nz, &b.zs, 0}, W{b.size(), &all, 0},
      J{nj, nullptr, 1};
  auto T = [&](double coef, std::vector<AxisView> axes) {
    if (coef != 0.0) m.terms.push_back(make_term(coef, axes, m.ncells, m.na1, m.na2));
  };
  // I(J;X,Y,Z) = H(J) + H(XYZ) - H(XYZJ)
  T(+1, {J});
  T(+1, {W});
  T(-1, {W, J});
  // -lambda_i I(J;W_i) = -lambda_i (H(J) + H(W_i) - H(W_i J))
  T(-lambda[0], {J});
  T(-lambda[0], {X});
  T(+lambda[0], {X, J});
  T(-lambda[1], {J});
  T(-lambda[1], {Y});
  T(+lambda[1], {Y, J});
  T(-lambda[2], {J});
  T(-lambda[2], {Z});
  T(+lambda[2], {Z, J});
  return m;
}

}  // namespace detail

inline BoundReport ribbon_margin(const JointPmf& pxyz, const std::array<double, 3>& lambda,
                                 const SearchConfig& cfg = {}) {
  for (double l : lambda)
    if (l < 0.0 || l > 1.0) throw ValidationError("ribbon_margin: lambda entries must be in [0,1]");
  auto b = detail::CellBase::build(pxyz);
  int nj = cfg.j_card > 0 ? cfg.j_card : b.nx * b.ny;
  detail::EntropyModel m = detail::ribbon_model(b, nj, lambda);

  std::vector<std::vector<double>> seeds;
  seeds.push_back(detail::point_rows(b.size(), nj, std::vector<int>(static_cast<size_t>(b.size()), 0)));
  {
    std::vector<int> t(static_cast<size_t>(b.size()));
    for (int c = 0; c < b.size(); ++c) t[static_cast<size_t>(c)] = b.zs[static_cast<size_t>(c)] % nj;
    seeds.push_back(detail::point_rows(b.size(), nj, t));
  }
  BoundReport rep = detail::run_single_kernel(m, -1, std::move(seeds), cfg);
  rep.notes.push_back("nonnegative margin certifies ribbon membership heuristically");
  return rep;
}

// ---------------------------------------------------------------------------
// Interactive lower bound at depth k <= 2 (alternating Markov structure).

namespace detail {

// Depth-k alternating chain: U1 from the X side, U2 from the (Y, U1) side.
inline EntropyModel interactive_model(const CellBase& b, int k, int m_start, int nu1, int nu2) {
  EntropyModel m;
  m.ncells = b.size();
  m.base = b.mass;
  m.na1 = nu1;
  m.nr1 = b.nx;
  m.r1 = b.xs;
  AxisView Y{b.ny, &b.ys, 0}, Z{b.nz, &b.zs, 0}, X{b.nx, &b.xs, 0}, U1{nu1, nullptr, 1};
  auto T = [&](double coef, std::vector<AxisView> axes) {
    m.terms.push_back(make_term(coef, axes, m.ncells, m.na1, m.na2));
  };

  if (k == 2) {
    m.na2 = nu2;
    m.nr2 = b.ny * nu1;
    m.r2.resize(static_cast<size_t>(b.size()) * nu1);
    for (int c = 0; c < b.size(); ++c)
      for (int a1 = 0; a1 < nu1; ++a1)
        m.r2[static_cast<size_t>(c * nu1 + a1)] = b.ys[static_cast<size_t>(c)] * nu1 + a1;
  }
  AxisView U2{m.na2, nullptr, 2};

  if (m_start == 1) {
    // I(U1;Y) - I(U1;Z) = H(Y) - H(U1 Y) - H(Z) + H(U1 Z)
    T(+1, {Y});
    T(-1, {U1, Y});
    T(-1, {Z});
    T(+1, {U1, Z});
  }
  if (k == 2) {
    // I(U2;X|U1) - I(U2;Z|U1) = H(X U1) - H(U2 X U1) - H(Z U1) + H(U2 Z U1)
    T(+1, {X, U1});
    T(-1, {U2, X, U1});
    T(-1, {Z, U1});
    T(+1, {U2, Z, U1});
  }
  return m;
}

}  // namespace detail

inline BoundReport interactive_lower_bound(const JointPmf& pxyz, int k, int m_start,
                                           const SearchConfig& cfg = {}) {
  if (k < 1 || k > 2) throw UnsupportedDepthError("interactive_lower_bound: depth k must be 1 or 2");
  if (m_start < 1 || m_start > k)
    throw ValidationError("interactive_lower_bound: need 1 <= m <= k");
  auto b = detail::CellBase::build(pxyz);
  int nu1 = cfg.u1_card > 0 ? cfg.u1_card : b.nx;
  int nu2 = cfg.u2_card > 0 ? cfg.u2_card : b.ny;
  detail::EntropyModel m = detail::interactive_model(b, k, m_start, nu1, nu2);

  std::vector<std::pair<std::vector<double>, std::vector<double>>> seeds;
  std::vector<double> none;
  {
    std::vector<int> t1(static_cast<size_t>(b.nx));
    for (int x = 0; x < b.nx; ++x) t1[static_cast<size_t>(x)] = x % nu1;
    std::vector<double> k1 = detail::point_rows(b.nx, nu1, t1);
    if (k == 1) {
      seeds.push_back({k1, none});
    } else {
      // U2 constant recovers the depth-1 value; U2 = Y as a second seed
      seeds.push_back({k1, detail::point_rows(b.ny * nu1, nu2,
                                              std::vector<int>(static_cast<size_t>(b.ny * nu1), 0))});
      std::vector<int> t2(static_cast<size_t>(b.ny * nu1));
      for (int r = 0; r < b.ny * nu1; ++r) t2[static_cast<size_t>(r)] = (r / nu1) % nu2;
      seeds.push_back({k1, detail::point_rows(b.ny * nu1, nu2, t2)});
    }
  }

  BoundReport rep;
  rep.kind = CertificateKind::SearchBest;
  double best = -1e300;
  int total = std::max<int>(cfg.restarts, static_cast<int>(seeds.size()));
  for (int r = 0; r < total; ++r) {
    std::vector<double> k1, k2;
    if (r < static_cast<int>(seeds.size())) {
      k1 = seeds[static_cast<size_t>(r)].first;
      k2 = seeds[static_cast<size_t>(r)].second;
      double raw = m.value(k1.data(), k2.empty() ? nullptr : k2.data());
      if (raw > best) best = raw;
      detail::soften(k1, m.na1);
      if (!k2.empty()) detail::soften(k2, m.na2);
    } else {
      std::mt19937_64 rng(cfg.seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(r + 1)));
      k1 = detail::dirichlet_rows(rng, m.nr1, m.na1);
      if (k == 2) k2 = detail::dirichlet_rows(rng, m.nr2, m.na2);
    }
    auto res = detail::mirror_optimize(m, +1, std::move(k1), std::move(k2), cfg);
    rep.trace.push_back(res.value);
    if (res.value > best) best = res.value;
  }
  rep.value = best;
  rep.notes.push_back("interactive lower bound, depth k=" + std::to_string(k) +
                      ", terms from m=" + std::to_string(m_start));
  return rep;
}

// ---------------------------------------------------------------------------
// Delta-constrained bound: heuristic estimate of the inf-max with the
// communication-floor constraint I(V;Z) <= I(V;J) + H(Z) - Delta.

struct PsiDeltaOptions {
  int outer_proposals = 6;
  int inner_restarts = 4;
  double penalty0 = 10.0;
  int penalty_rounds = 4;
  double feasibility_tol = 1e-6;
};

namespace detail {

struct PsiDeltaInner {
  EntropyModel payoff;      // I(X;Y|J) + I(U;J|V) - I(U;Z|V)
  EntropyModel constraint;  // I(V;Z) - I(V;J): c = constraint + Delta - H(Z) <= 0 rewritten
  double const_shift = 0.0; // Delta (pre-shifted constant)
  int nu = 0, nv = 0;
};

// Inner problem for a fixed J-kernel: base cells enumerate (support cell, j).
inline PsiDeltaInner psi_delta_inner_model(const CellBase& b, const std::vector<double>& kj,
                                           int nj, int nu, int nv, double delta) {
  PsiDeltaInner inner;
  inner.nu = nu;
  inner.nv = nv;
  int n = b.size() * nj;
  EntropyModel m;
  m.ncells = n;
  m.base.resize(static_cast<size_t>(n));
  std::vector<int> xs(static_cast<size_t>(n)), ys(static_cast<size_t>(n)), zs(static_cast<size_t>(n)),
      xys(static_cast<size_t>(n)), js(static_cast<size_t>(n));
  for (int c = 0; c < b.size(); ++c)
    for (int j = 0; j < nj; ++j) {
      int i = c * nj + j;
      m.base[static_cast<size_t>(i)] =
          b.mass[static_cast<size_t>(c)] * kj[static_cast<size_t>(c * nj + j)];
      xs[static_cast<size_t>(i)] = b.xs[static_cast<size_t>(c)];
      ys[static_cast<size_t>(i)] = b.ys[static_cast<size_t>(c)];
      zs[static_cast<size_t>(i)] = b.zs[static_cast<size_t>(c)];
      xys[static_cast<size_t>(i)] = b.xys[static_cast<size_t>(c)];
      js[static_cast<size_t>(i)] = j;
    }
  m.na1 = nu * nv;
  m.nr1 = b.nx * b.ny;
  m.r1 = xys;

  auto manual_term = [&](EntropyModel& target, double coef, bool with_u, bool with_v,
                         int cell_axis_size, const std::vector<int>* cell_sym) {
    EntropyTerm t;
    t.coef = coef;
    t.nbuckets = (with_u ? nu : 1) * (with_v ? nv : 1) * std::max(cell_axis_size, 1);
    t.bucket.resize(static_cast<size_t>(target.ncells) * target.na1);
    for (int c = 0; c < target.ncells; ++c)
      for (int a1 = 0; a1 < target.na1; ++a1) {
        int u = a1 / nv, v = a1 % nv;
        int bkt = with_u ? u : 0;
        if (with_v) bkt = bkt * nv + v;
        if (cell_sym) bkt = bkt * cell_axis_size + (*cell_sym)[static_cast<size_t>(c)];
        t.bucket[static_cast<size_t>(c * target.na1 + a1)] = bkt;
      }
    target.terms.push_back(std::move(t));
  };

  // payoff: I(X;Y|J) + I(U;J|V) - I(U;Z|V)
  // I(X;Y|J) = H(XJ) + H(YJ) - H(XYJ) - H(J); J is a cell axis here
  {
    std::vector<int> xj(static_cast<size_t>(n)), yj(static_cast<size_t>(n)), xyj(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      xj[static_cast<size_t>(i)] = xs[static_cast<size_t>(i)] * nj + js[static_cast<size_t>(i)];
      yj[static_cast<size_t>(i)] = ys[static_cast<size_t>(i)] * nj + js[static_cast<size_t>(i)];
      xyj[static_cast<size_t>(i)] = xys[static_cast<size_t>(i)] * nj + js[static_cast<size_t>(i)];
    }
    // store symbol arrays inside the model via static copies owned by terms:
    // make_term copies buckets, so locals suffice
    m.terms.push_back(make_term(+1, {AxisView{b.nx * nj, &xj, 0}}, m.ncells, m.na1, 1));
    m.terms.push_back(make_term(+1, {AxisView{b.ny * nj, &yj, 0}}, m.ncells, m.na1, 1));
    m.terms.push_back(make_term(-1, {AxisView{b.nx * b.ny * nj, &xyj, 0}}, m.ncells, m.na1, 1));
    m.terms.push_back(make_term(-1, {AxisView{nj, &js, 0}}, m.ncells, m.na1, 1));
    // I(U;J|V) = H(UV) + H(JV) - H(UJV) - H(V)
    manual_term(m, +1, true, true, 1, nullptr);
    manual_term(m, +1, false, true, nj, &js);
    manual_term(m, -1, true, true, nj, &js);
    manual_term(m, -1, false, true, 1, nullptr);
    // -I(U;Z|V) = -H(UV) - H(ZV) + H(UZV) + H(V)
    manual_term(m, -1, true, true, 1, nullptr);
    manual_term(m, -1, false, true, b.nz, &zs);
    manual_term(m, +1, true, true, b.nz, &zs);
    manual_term(m, +1, false, true, 1, nullptr);
  }
  inner.payoff = m;

  // constraint value I(V;Z) - I(V;J) = H(VZ) - H(Z) - H(VJ) + H(J) wait:
  // I(V;Z) - I(V;J) = [H(V)+H(Z)-H(VZ)] - [H(V)+H(J)-H(VJ)]
  //                 = H(Z) - H(VZ) - H(J) + H(VJ)
  EntropyModel cm;
  cm.ncells = m.ncells;
  cm.base = m.base;
  cm.na1 = m.na1;
  cm.nr1 = m.nr1;
  cm.r1 = m.r1;
  manual_term(cm, +1, false, false, b.nz, &zs);
  manual_term(cm, -1, false, true, b.nz, &zs);
  manual_term(cm, -1, false, false, nj, &js);
  manual_term(cm, +1, false, true, nj, &js);
  inner.constraint = cm;
  inner.const_shift = delta;  // c(K) = constraint_value - H(Z) + Delta, H(Z) folded at call site
  return inner;
}

}  // namespace detail

struct PsiDeltaReport {
  BoundReport report;
  double delta = 0.0;
  bool heuristic = true;
};

inline PsiDeltaReport psi_delta_evaluate(const JointPmf& pxyz, double delta,
                                         const SearchConfig& cfg = {},
                                         const PsiDeltaOptions& opt = {},
                                         const std::vector<double>* carried_inner = nullptr,
                                         std::vector<double>* out_inner = nullptr) {
  if (delta < 0.0) throw ValidationError("psi_delta: Delta must be nonnegative");
  double hz = pxyz.entropy({"Z"});
  if (delta > hz + 1e-12)
    throw InfeasibleError("psi_delta: Delta exceeds H(Z), no protocol can satisfy the floor");

  auto b = detail::CellBase::build(pxyz);
  int nj = cfg.j_card > 0 ? cfg.j_card : b.nx * b.ny;
  int nu = cfg.u_card > 0 ? cfg.u_card : b.nx * b.ny;
  int nv = cfg.v_card > 0 ? cfg.v_card : b.nx * b.ny + 1;

  // outer proposals for P(J|X,Y,Z)
  std::vector<std::vector<double>> jprops;
  jprops.push_back(detail::point_rows(b.size(), nj, std::vector<int>(static_cast<size_t>(b.size()), 0)));
  {
    std::vector<int> t(static_cast<size_t>(b.size()));
    for (int c = 0; c < b.size(); ++c) t[static_cast<size_t>(c)] = b.zs[static_cast<size_t>(c)] % nj;
    jprops.push_back(detail::point_rows(b.size(), nj, t));
  }
  {
    SearchConfig scfg = cfg;
    scfg.j_card = nj;
    BoundReport ps = psi_hat_search(pxyz, scfg);
    if (ps.kernel_witness) jprops.push_back(ps.kernel_witness->rows());
  }
  for (int r = static_cast<int>(jprops.size()); r < opt.outer_proposals; ++r) {
    std::mt19937_64 rng(cfg.seed ^ (0xd1342543de82ef95ULL * static_cast<std::uint64_t>(r + 1)));
    jprops.push_back(detail::dirichlet_rows(rng, b.size(), nj));
  }

  double best_outer = 1e300;
  std::vector<double> best_inner_kernel;
  std::vector<double> trace;
  for (size_t jp = 0; jp < jprops.size(); ++jp) {
    auto& kj = jprops[jp];
    detail::soften(kj, nj, 1e-9);
    auto inner = detail::psi_delta_inner_model(b, kj, nj, nu, nv, delta);
    const auto& pay = inner.payoff;
    const auto& con = inner.constraint;
    auto cval = [&](const double* k1) {
      return con.value(k1, nullptr) - hz + delta;
    };

    // inner seeds
    std::vector<std::vector<double>> seeds;
    {
      // U = (X,Y), V = Z-ish: deterministic kernels with H(X,Y|U,V,Z) = 0
      std::vector<int> t(static_cast<size_t>(b.nx * b.ny));
      for (int xy = 0; xy < b.nx * b.ny; ++xy) {
        int u = xy % nu;
        // v tags the function class of the cell when possible
        int zsym = 0;
        for (int c = 0; c < b.size(); ++c)
          if (b.xys[static_cast<size_t>(c)] == xy) zsym = b.zs[static_cast<size_t>(c)];
        t[static_cast<size_t>(xy)] = u * nv + (zsym % nv);
      }
      seeds.push_back(detail::point_rows(b.nx * b.ny, nu * nv, t));
    }
    {
      // U = (X,Y), V constant
      std::vector<int> t(static_cast<size_t>(b.nx * b.ny));
      for (int xy = 0; xy < b.nx * b.ny; ++xy) t[static_cast<size_t>(xy)] = (xy % nu) * nv;
      seeds.push_back(detail::point_rows(b.nx * b.ny, nu * nv, t));
    }
    if (carried_inner && !carried_inner->empty() &&
        carried_inner->size() == static_cast<size_t>(b.nx * b.ny * nu * nv))
      seeds.push_back(*carried_inner);

    double inner_best = -1e300;
    std::vector<double> inner_best_k;
    int total = std::max<int>(opt.inner_restarts, static_cast<int>(seeds.size()));
    for (int r = 0; r < total; ++r) {
      std::vector<double> k1;
      if (r < static_cast<int>(seeds.size())) {
        k1 = seeds[static_cast<size_t>(r)];
        if (cval(k1.data()) <= opt.feasibility_tol) {
          double raw = pay.value(k1.data(), nullptr);
          if (raw > inner_best) {
            inner_best = raw;
            inner_best_k = k1;
          }
        }
        detail::soften(k1, nu * nv);
      } else {
        std::mt19937_64 rng(cfg.seed ^ (0xa0761d6478bd642fULL *
                                        static_cast<std::uint64_t>((jp + 1) * 131 + r)));
        k1 = detail::dirichlet_rows(rng, b.nx * b.ny, nu * nv);
      }
      // penalty ascent with escalating weight
      double rho = opt.penalty0;
      std::vector<double> none;
      for (int round = 0; round < opt.penalty_rounds; ++round) {
        auto extra = [&](const double* kk1, const double* kk2, double* g1, double* g2) {
          (void)kk2;
          (void)g2;
          std::vector<double> cg1, cg2;
          double c = con.grad(kk1, nullptr, cg1, cg2) - hz + delta;
          if (c > 0) {
            for (size_t i = 0; i < cg1.size(); ++i) g1[i] += -2.0 * rho * c * cg1[i];
          }
          return 0.0;
        };
        auto score = [&](const double* kk1, const double* kk2) {
          (void)kk2;
          double c = std::max(0.0, cval(kk1));
          return pay.value(kk1, nullptr) - rho * c * c;
        };
        auto res = detail::mirror_optimize(pay, +1, k1, none, cfg, extra, score);
        k1 = res.k1;
        if (cval(k1.data()) <= opt.feasibility_tol) break;
        rho *= 10.0;
      }
      // exact feasibility filter: infeasible witnesses are rejected
      if (cval(k1.data()) > opt.feasibility_tol) continue;
      double v = pay.value(k1.data(), nullptr);
      if (v > inner_best) {
        inner_best = v;
        inner_best_k = k1;
      }
    }
    if (inner_best <= -1e299) continue;  // no feasible inner point found
    trace.push_back(inner_best);
    if (inner_best < best_outer) {
      best_outer = inner_best;
      best_inner_kernel = inner_best_k;
    }
  }

  PsiDeltaReport out;
  out.delta = delta;
  out.report.kind = CertificateKind::SearchBest;
  out.report.value = best_outer;
  out.report.trace = std::move(trace);
  out.report.notes.push_back(
      "heuristic estimate of an inf-max; not a certified bound");
  if (out_inner) *out_inner = best_inner_kernel;
  return out;
}

// Monotonicity-preserving sweep: descending Delta order with the feasible
// inner argmax carried down, so reported values are nonincreasing in Delta
// by construction whenever the estimates are exact.
inline std::vector<PsiDeltaReport> psi_delta_sweep(const JointPmf& pxyz,
                                                   std::vector<double> deltas,
                                                   const SearchConfig& cfg = {},
                                                   const PsiDeltaOptions& opt = {}) {
  std::vector<size_t> order(deltas.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return deltas[a] > deltas[b]; });
  std::vector<PsiDeltaReport> out(deltas.size());
  std::vector<double> carried;
  for (size_t oi : order) {
    std::vector<double> next;
    out[oi] = psi_delta_evaluate(pxyz, deltas[oi], cfg, opt,
                                 carried.empty() ? nullptr : &carried, &next);
    if (!next.empty()) carried = std::move(next);
  }
  return out;
}

}  // namespace skb

#endif
