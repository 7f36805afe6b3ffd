#ifndef SKBOUND_LP_HPP
#define SKBOUND_LP_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "skbound/errors.hpp"

// Dense two-phase revised simplex for equality-form problems
//     min c.w   s.t.  A w = b,  w >= 0.
// Row counts here are tiny (a simplex-barycenter constraint block) while
// column counts can reach a million grid atoms, so pricing is column-wise
// against a callback and the basis inverse is refactored densely each pivot.

namespace skb {

struct LinearProgram {
  int m = 0;  // rows
  int n = 0;  // columns
  std::vector<double> c;  // n
  std::vector<double> a;  // row-major m x n
  std::vector<double> b;  // m
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Optimal;
  double value = 0.0;
  // nonzero weights of the optimal basic feasible solution
  std::vector<std::pair<int, double>> weights;
  // Farkas-style dual certificate (phase-1 duals) when infeasible
  std::vector<double> farkas;
  int iterations = 0;
};

class SimplexSolver {
 public:
  using ColumnFn = std::function<void(int j, double* out)>;  // writes m entries

  SimplexSolver(int m, int n, ColumnFn col, std::vector<double> cost,
                std::vector<double> rhs)
      : m_(m), n_(n), col_(std::move(col)), cost_(std::move(cost)), b_(std::move(rhs)) {}

  LpResult solve() {
    // Phase 1 with sign-normalized rows and one artificial per row.
    rowsign_.assign(static_cast<size_t>(m_), 1.0);
    for (int i = 0; i < m_; ++i)
      if (b_[static_cast<size_t>(i)] < 0.0) rowsign_[static_cast<size_t>(i)] = -1.0;

    basis_.resize(static_cast<size_t>(m_));
    for (int i = 0; i < m_; ++i) basis_[static_cast<size_t>(i)] = n_ + i;  // artificials

    // deterministic RHS perturbation during pivoting breaks the massive
    // degeneracy of barycenter systems; exact values are recomputed from the
    // final basis afterwards
    b_work_ = b_;
    for (int i = 0; i < m_; ++i)
      b_work_[static_cast<size_t>(i)] +=
          rowsign_[static_cast<size_t>(i)] * 1e-10 * static_cast<double>(i + 1);

    LpResult res;
    int iters1 = run_phase(/*phase1=*/true);
    res.iterations = iters1;
    double art = 0.0;
    std::vector<double> xb = basic_values(b_work_);
    for (int i = 0; i < m_; ++i)
      if (basis_[static_cast<size_t>(i)] >= n_) art += xb[static_cast<size_t>(i)];
    if (art > 1e-7) {
      res.status = LpStatus::Infeasible;
      res.farkas = duals(/*phase1=*/true);
      return res;
    }

    drive_out_artificials();

    int iters2 = run_phase(/*phase1=*/false);
    res.iterations += iters2;
    if (unbounded_) {
      res.status = LpStatus::Unbounded;
      return res;
    }

    xb = basic_values(b_);
    res.value = 0.0;
    for (int i = 0; i < m_; ++i) {
      int j = basis_[static_cast<size_t>(i)];
      double w = xb[static_cast<size_t>(i)];
      if (j < n_ && w > 1e-12) {
        res.weights.emplace_back(j, w);
        res.value += cost_[static_cast<size_t>(j)] * w;
      }
    }
    return res;
  }

 private:
  // Column j of the sign-normalized system; artificials are unit columns.
  void column(int j, std::vector<double>& out) const {
    if (j >= n_) {
      std::fill(out.begin(), out.end(), 0.0);
      out[static_cast<size_t>(j - n_)] = 1.0;
      return;
    }
    col_(j, out.data());
    for (int i = 0; i < m_; ++i) out[static_cast<size_t>(i)] *= rowsign_[static_cast<size_t>(i)];
  }

  double phase_cost(int j, bool phase1) const {
    if (phase1) return j >= n_ ? 1.0 : 0.0;
    return j >= n_ ? 0.0 : cost_[static_cast<size_t>(j)];
  }

  // Dense LU-free inverse via Gauss-Jordan; m is tiny so this is cheap.
  void refactor(std::vector<double>& binv) const {
    int m = m_;
    std::vector<double> a(static_cast<size_t>(m) * m), col(static_cast<size_t>(m));
    for (int k = 0; k < m; ++k) {
      column(basis_[static_cast<size_t>(k)], col);
      for (int i = 0; i < m; ++i) a[static_cast<size_t>(i * m + k)] = col[static_cast<size_t>(i)];
    }
    binv.assign(static_cast<size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i) binv[static_cast<size_t>(i * m + i)] = 1.0;
    for (int p = 0; p < m; ++p) {
      int piv = p;
      for (int i = p + 1; i < m; ++i)
        if (std::abs(a[static_cast<size_t>(i * m + p)]) > std::abs(a[static_cast<size_t>(piv * m + p)])) piv = i;
      if (std::abs(a[static_cast<size_t>(piv * m + p)]) < 1e-13)
        throw Error("lp: singular basis");
      if (piv != p)
        for (int jj = 0; jj < m; ++jj) {
          std::swap(a[static_cast<size_t>(p * m + jj)], a[static_cast<size_t>(piv * m + jj)]);
          std::swap(binv[static_cast<size_t>(p * m + jj)], binv[static_cast<size_t>(piv * m + jj)]);
        }
      double d = a[static_cast<size_t>(p * m + p)];
      for (int jj = 0; jj < m; ++jj) {
        a[static_cast<size_t>(p * m + jj)] /= d;
        binv[static_cast<size_t>(p * m + jj)] /= d;
      }
      for (int i = 0; i < m; ++i) {
        if (i == p) continue;
        double f = a[static_cast<size_t>(i * m + p)];
        if (f == 0.0) continue;
        for (int jj = 0; jj < m; ++jj) {
          a[static_cast<size_t>(i * m + jj)] -= f * a[static_cast<size_t>(p * m + jj)];
          binv[static_cast<size_t>(i * m + jj)] -= f * binv[static_cast<size_t>(p * m + jj)];
        }
      }
    }
  }

  std::vector<double> basic_values(const std::vector<double>& rhs) const {
    std::vector<double> binv;
    refactor(binv);
    std::vector<double> xb(static_cast<size_t>(m_), 0.0);
    for (int i = 0; i < m_; ++i)
      for (int k = 0; k < m_; ++k)
        xb[static_cast<size_t>(i)] += binv[static_cast<size_t>(i * m_ + k)] *
                                      rowsign_[static_cast<size_t>(k)] * rhs[static_cast<size_t>(k)];
    for (auto& v : xb)
      if (v < 0.0 && v > -1e-9) v = 0.0;
    return xb;
  }

  std::vector<double> duals(bool phase1) const {
    std::vector<double> binv;
    refactor(binv);
    std::vector<double> y(static_cast<size_t>(m_), 0.0);
    for (int k = 0; k < m_; ++k) {
      double cb = phase_cost(basis_[static_cast<size_t>(k)], phase1);
      if (cb == 0.0) continue;
      for (int i = 0; i < m_; ++i)
        y[static_cast<size_t>(i)] += cb * binv[static_cast<size_t>(k * m_ + i)];
    }
    return y;
  }

  // Replace basic artificials (at value 0 after phase 1) by real columns via
  // degenerate pivots; rows no real column can serve are redundant.
  void drive_out_artificials() {
    std::vector<double> binv, colbuf(static_cast<size_t>(m_));
    for (int i = 0; i < m_; ++i) {
      if (basis_[static_cast<size_t>(i)] < n_) continue;
      refactor(binv);
      bool found = false;
      for (int j = 0; j < n_ && !found; ++j) {
        bool in_basis = false;
        for (int k = 0; k < m_; ++k)
          if (basis_[static_cast<size_t>(k)] == j) in_basis = true;
        if (in_basis) continue;
        column(j, colbuf);
        double u = 0.0;
        for (int k = 0; k < m_; ++k)
          u += binv[static_cast<size_t>(i * m_ + k)] * colbuf[static_cast<size_t>(k)];
        if (std::abs(u) > 1e-7) {
          basis_[static_cast<size_t>(i)] = j;
          found = true;
        }
      }
      // not found: the row is redundant; the artificial stays basic at zero
      // and the phase-2 ratio guard pins it there
    }
  }

  // Returns iteration count. Dantzig pricing with a Bland fallback kicks in
  // after a degenerate stall, which guarantees termination.
  int run_phase(bool phase1) {
    unbounded_ = false;
    const double rc_tol = 1e-10;
    const int max_iters = 20000;
    std::vector<double> colbuf(static_cast<size_t>(m_));
    int stall = 0;
    bool bland = false;  // sticky once engaged
    double last_obj = std::numeric_limits<double>::infinity();
    int it = 0;
    for (; it < max_iters; ++it) {
      std::vector<double> y = duals(phase1);
      std::vector<double> xb = basic_values(b_work_);

      double obj = 0.0;
      for (int i = 0; i < m_; ++i)
        obj += phase_cost(basis_[static_cast<size_t>(i)], phase1) * xb[static_cast<size_t>(i)];
      if (obj < last_obj - 1e-13) {
        stall = 0;
        last_obj = obj;
      } else {
        ++stall;
      }
      if (stall > 12) bland = true;

      int total = phase1 ? n_ + m_ : n_;
      int enter = -1;
      double best_rc = -rc_tol;
      for (int j = 0; j < total; ++j) {
        if (!phase1 && j >= n_) break;
        bool in_basis = false;
        for (int i = 0; i < m_; ++i)
          if (basis_[static_cast<size_t>(i)] == j) {
            in_basis = true;
            break;
          }
        if (in_basis) continue;
        column(j, colbuf);
        double rc = phase_cost(j, phase1);
        for (int i = 0; i < m_; ++i) rc -= y[static_cast<size_t>(i)] * colbuf[static_cast<size_t>(i)];
        if (rc < (bland ? -rc_tol : best_rc)) {
          enter = j;
          best_rc = rc;
          if (bland) break;  // first improving column
        }
      }
      if (enter < 0) return it;  // optimal for this phase

      // direction u = B^-1 a_enter
      std::vector<double> binv;
      refactor(binv);
      column(enter, colbuf);
      std::vector<double> u(static_cast<size_t>(m_), 0.0);
      for (int i = 0; i < m_; ++i)
        for (int k = 0; k < m_; ++k)
          u[static_cast<size_t>(i)] += binv[static_cast<size_t>(i * m_ + k)] * colbuf[static_cast<size_t>(k)];

      int leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      // a basic artificial must stay at zero: any real movement forces it out
      // first (threshold above the redundant-row noise floor)
      if (!phase1) {
        for (int i = 0; i < m_; ++i)
          if (basis_[static_cast<size_t>(i)] >= n_ &&
              std::abs(u[static_cast<size_t>(i)]) > 1e-7) {
            leave = i;
            best_ratio = 0.0;
            break;
          }
      }
      if (leave < 0)
      for (int i = 0; i < m_; ++i) {
        if (u[static_cast<size_t>(i)] > 1e-11) {
          double ratio = xb[static_cast<size_t>(i)] / u[static_cast<size_t>(i)];
          bool tie = leave >= 0 && ratio < best_ratio + 1e-12;
          bool better;
          if (bland)
            // Bland: smallest basis index among the tied minimizers
            better = ratio < best_ratio - 1e-12 ||
                     (tie && basis_[static_cast<size_t>(i)] < basis_[static_cast<size_t>(leave)]);
          else
            // prefer kicking artificials out on ties
            better = ratio < best_ratio - 1e-12 ||
                     (tie && basis_[static_cast<size_t>(i)] > basis_[static_cast<size_t>(leave)]);
          if (leave < 0 || better) {
            best_ratio = std::min(best_ratio, ratio);
            leave = i;
          }
        }
      }
      if (leave < 0) {
        if (phase1) throw Error("lp: phase-1 unbounded (internal)");
        unbounded_ = true;
        return it;
      }
      basis_[static_cast<size_t>(leave)] = enter;
    }
    throw Error("lp: iteration limit exceeded");
  }

  int m_;
  int n_;
  ColumnFn col_;
  std::vector<double> cost_;
  std::vector<double> b_;
  std::vector<double> b_work_;  // perturbed copy used during pivoting
  std::vector<double> rowsign_;
  std::vector<int> basis_;
  bool unbounded_ = false;
};

inline LpResult lp_minimize(const LinearProgram& lp) {
  if (static_cast<int>(lp.c.size()) != lp.n || static_cast<int>(lp.b.size()) != lp.m ||
      static_cast<int>(lp.a.size()) != lp.m * lp.n)
    throw ShapeError("lp: inconsistent dimensions");
  SimplexSolver s(
      lp.m, lp.n,
      [&lp](int j, double* out) {
        for (int i = 0; i < lp.m; ++i) out[i] = lp.a[static_cast<size_t>(i) * lp.n + j];
      },
      lp.c, lp.b);
  return s.solve();
}

}  // namespace skb

#endif
