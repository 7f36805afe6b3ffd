#ifndef SKBOUND_PROB_HPP
#define SKBOUND_PROB_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "skbound/errors.hpp"
#include "skbound/function_table.hpp"

// Exact finite-alphabet probability and information-measure arithmetic.
// All entropies are base-2 (bits); 0*log 0 is treated as 0 and conditioning
// on zero-probability cells contributes nothing.

namespace skb {

inline constexpr double kMassTolerance = 1e-9;
inline constexpr std::int64_t kDefaultCellCap = 1'000'000;

inline double xlog2x(double p) {
  return p > 0.0 ? p * std::log2(p) : 0.0;
}

// Shannon entropy of a raw (possibly unnormalized) nonnegative vector.
inline double entropy_of(const std::vector<double>& p) {
  double h = 0.0;
  for (double v : p) h -= xlog2x(v);
  return h;
}

inline double binary_entropy(double p) {
  return -xlog2x(p) - xlog2x(1.0 - p);
}

struct Axis {
  std::string name;
  int size = 0;
};

class AlphabetSpec {
 public:
  AlphabetSpec() = default;

  explicit AlphabetSpec(std::vector<Axis> axes) : axes_(std::move(axes)) {
    for (size_t i = 0; i < axes_.size(); ++i) {
      if (axes_[i].size < 1)
        throw ValidationError("alphabet: axis '" + axes_[i].name + "' has size < 1");
      for (size_t j = i + 1; j < axes_.size(); ++j)
        if (axes_[i].name == axes_[j].name)
          throw AxisError("alphabet: duplicate axis name '" + axes_[i].name + "'");
    }
  }

  int rank() const { return static_cast<int>(axes_.size()); }

  std::int64_t cells() const {
    std::int64_t n = 1;
    for (const auto& a : axes_) n *= a.size;
    return n;
  }

  const Axis& axis(int i) const { return axes_[static_cast<size_t>(i)]; }
  const std::vector<Axis>& axes() const { return axes_; }

  bool has(const std::string& name) const {
    for (const auto& a : axes_)
      if (a.name == name) return true;
    return false;
  }

  int index_of(const std::string& name) const {
    for (size_t i = 0; i < axes_.size(); ++i)
      if (axes_[i].name == name) return static_cast<int>(i);
    throw AxisError("unknown axis '" + name + "'");
  }

  std::vector<int> indices_of(const std::vector<std::string>& names) const {
    std::vector<int> out;
    out.reserve(names.size());
    for (const auto& n : names) out.push_back(index_of(n));
    return out;
  }

  // Row-major strides, axis 0 outermost.
  std::vector<std::int64_t> strides() const {
    std::vector<std::int64_t> s(axes_.size(), 1);
    for (int i = rank() - 2; i >= 0; --i)
      s[static_cast<size_t>(i)] = s[static_cast<size_t>(i + 1)] * axes_[static_cast<size_t>(i + 1)].size;
    return s;
  }

  std::int64_t flat(const std::vector<int>& multi) const {
    auto s = strides();
    std::int64_t f = 0;
    for (size_t i = 0; i < axes_.size(); ++i) f += s[i] * multi[i];
    return f;
  }

  void unflat(std::int64_t f, std::vector<int>& out) const {
    out.resize(axes_.size());
    for (int i = rank() - 1; i >= 0; --i) {
      int sz = axes_[static_cast<size_t>(i)].size;
      out[static_cast<size_t>(i)] = static_cast<int>(f % sz);
      f /= sz;
    }
  }

  bool operator==(const AlphabetSpec& o) const {
    if (axes_.size() != o.axes_.size()) return false;
    for (size_t i = 0; i < axes_.size(); ++i)
      if (axes_[i].name != o.axes_[i].name || axes_[i].size != o.axes_[i].size)
        return false;
    return true;
  }

 private:
  std::vector<Axis> axes_;
};

namespace detail {

// Checks pairwise disjointness of already-resolved axis index sets.
inline void require_disjoint(const std::vector<int>& a, const std::vector<int>& b,
                             const char* what) {
  for (int i : a)
    for (int j : b)
      if (i == j) throw AxisError(std::string("overlapping axis subsets in ") + what);
}

inline std::vector<int> sorted_union(std::vector<int> a, const std::vector<int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

}  // namespace detail

class ConditionalPmf;

// Dense joint pmf over named finite axes. Immutable after construction;
// safe to share across threads.
class JointPmf {
 public:
  JointPmf() = default;

  JointPmf(AlphabetSpec alphabet, std::vector<double> mass)
      : alphabet_(std::move(alphabet)), mass_(std::move(mass)) {
    if (static_cast<std::int64_t>(mass_.size()) != alphabet_.cells())
      throw ShapeError("joint pmf: mass size does not match alphabet cells");
    double total = 0.0;
    for (double v : mass_) {
      if (v < 0.0) {
        if (v < -1e-15) throw ValidationError("joint pmf: negative mass entry");
        v = 0.0;
      }
      total += v;
    }
    if (std::abs(total - 1.0) > kMassTolerance)
      throw ValidationError("joint pmf: total mass " + std::to_string(total) +
                            " deviates from 1 beyond tolerance");
    // drift at rounding-noise scale is left untouched so that parse/serialize
    // round trips are bit-exact; anything larger is renormalized and flagged
    if (std::abs(total - 1.0) > 1e-13) {
      renormalized_ = true;
      for (double& v : mass_) {
        if (v < 0.0) v = 0.0;
        v /= total;
      }
    } else {
      for (double& v : mass_)
        if (v < 0.0) v = 0.0;
    }
  }

  static JointPmf uniform(AlphabetSpec alphabet) {
    std::int64_t n = alphabet.cells();
    return JointPmf(std::move(alphabet),
                    std::vector<double>(static_cast<size_t>(n), 1.0 / static_cast<double>(n)));
  }

  // 2-D convenience: rows indexed by the first axis.
  static JointPmf from_matrix(const std::string& xname, const std::string& yname,
                              const std::vector<std::vector<double>>& m) {
    int nx = static_cast<int>(m.size());
    int ny = nx > 0 ? static_cast<int>(m[0].size()) : 0;
    std::vector<double> mass;
    mass.reserve(static_cast<size_t>(nx) * ny);
    for (const auto& row : m) {
      if (static_cast<int>(row.size()) != ny) throw ShapeError("from_matrix: ragged rows");
      mass.insert(mass.end(), row.begin(), row.end());
    }
    return JointPmf(AlphabetSpec({{xname, nx}, {yname, ny}}), std::move(mass));
  }

  const AlphabetSpec& alphabet() const { return alphabet_; }
  const std::vector<double>& mass() const { return mass_; }
  bool was_renormalized() const { return renormalized_; }
  std::int64_t cells() const { return static_cast<std::int64_t>(mass_.size()); }

  double at(const std::vector<int>& multi) const { return mass_[static_cast<size_t>(alphabet_.flat(multi))]; }

  // Marginal mass vector on an axis subset (resolved indices, any order;
  // bucket layout is row-major in the given order).
  std::vector<double> marginal(const std::vector<int>& keep_idx) const {
    std::vector<std::int64_t> strides = alphabet_.strides();
    std::vector<int> sizes;
    sizes.reserve(keep_idx.size());
    std::int64_t bcells = 1;
    for (int i : keep_idx) {
      sizes.push_back(alphabet_.axis(i).size);
      bcells *= alphabet_.axis(i).size;
    }
    std::vector<double> out(static_cast<size_t>(bcells), 0.0);
    std::vector<int> multi;
    for (std::int64_t f = 0; f < cells(); ++f) {
      double v = mass_[static_cast<size_t>(f)];
      if (v == 0.0) continue;
      alphabet_.unflat(f, multi);
      std::int64_t b = 0;
      for (size_t k = 0; k < keep_idx.size(); ++k)
        b = b * sizes[k] + multi[static_cast<size_t>(keep_idx[k])];
      out[static_cast<size_t>(b)] += v;
    }
    return out;
  }

  double entropy(const std::vector<std::string>& axes) const {
    return entropy_of(marginal(alphabet_.indices_of(axes)));
  }

  double entropy() const { return entropy_of(mass_); }

  // H(A|C) = H(A,C) - H(C)
  double conditional_entropy(const std::vector<std::string>& a,
                             const std::vector<std::string>& c) const {
    auto ai = alphabet_.indices_of(a);
    auto ci = alphabet_.indices_of(c);
    detail::require_disjoint(ai, ci, "conditional_entropy");
    double hac = entropy_of(marginal(detail::sorted_union(ai, ci)));
    double hc = c.empty() ? 0.0 : entropy_of(marginal(ci));
    return hac - hc;
  }

  // I(A;B|C) = H(A,C) + H(B,C) - H(A,B,C) - H(C). C may be empty.
  double conditional_mutual_information(const std::vector<std::string>& a,
                                        const std::vector<std::string>& b,
                                        const std::vector<std::string>& c = {}) const {
    auto ai = alphabet_.indices_of(a);
    auto bi = alphabet_.indices_of(b);
    auto ci = alphabet_.indices_of(c);
    detail::require_disjoint(ai, bi, "conditional_mutual_information");
    detail::require_disjoint(ai, ci, "conditional_mutual_information");
    detail::require_disjoint(bi, ci, "conditional_mutual_information");
    double hac = entropy_of(marginal(detail::sorted_union(ai, ci)));
    double hbc = entropy_of(marginal(detail::sorted_union(bi, ci)));
    double habc = entropy_of(marginal(detail::sorted_union(detail::sorted_union(ai, bi), ci)));
    double hc = ci.empty() ? 0.0 : entropy_of(marginal(ci));
    return hac + hbc - habc - hc;
  }

  double mutual_information(const std::vector<std::string>& a,
                            const std::vector<std::string>& b) const {
    return conditional_mutual_information(a, b, {});
  }

  JointPmf marginalize(const std::vector<std::string>& keep) const {
    if (keep.empty()) throw AxisError("marginalize: empty keep-set");
    auto idx = alphabet_.indices_of(keep);
    std::vector<Axis> axes;
    axes.reserve(idx.size());
    for (int i : idx) axes.push_back(alphabet_.axis(i));
    return JointPmf(AlphabetSpec(std::move(axes)), marginal(idx));
  }

  // mass(x, y, z) = p(x, y) * [z == f(x, y)], appending a fresh Z axis.
  JointPmf apply_function(const std::string& xaxis, const std::string& yaxis,
                          const FunctionTable& f, const std::string& zaxis) const {
    int xi = alphabet_.index_of(xaxis);
    int yi = alphabet_.index_of(yaxis);
    if (alphabet_.has(zaxis)) throw AxisError("apply_function: axis '" + zaxis + "' already exists");
    if (alphabet_.axis(xi).size != f.nx || alphabet_.axis(yi).size != f.ny)
      throw ShapeError("apply_function: table shape does not match axes");
    std::vector<Axis> axes = alphabet_.axes();
    axes.push_back({zaxis, f.nz});
    std::vector<double> out(static_cast<size_t>(cells()) * f.nz, 0.0);
    std::vector<int> multi;
    for (std::int64_t c = 0; c < cells(); ++c) {
      double v = mass_[static_cast<size_t>(c)];
      alphabet_.unflat(c, multi);
      int z = f(multi[static_cast<size_t>(xi)], multi[static_cast<size_t>(yi)]);
      out[static_cast<size_t>(c * f.nz + z)] = v;
    }
    return JointPmf(AlphabetSpec(std::move(axes)), std::move(out));
  }

  JointPmf attach_channel(const ConditionalPmf& k) const;

  // i.i.d. product of n copies; axis names get suffixes "1".."n".
  JointPmf tensor_power(int n, std::int64_t cell_cap = kDefaultCellCap) const {
    if (n < 1) throw ValidationError("tensor_power: n must be >= 1");
    double projected = 1.0;
    for (int i = 0; i < n; ++i) projected *= static_cast<double>(cells());
    if (projected > static_cast<double>(cell_cap))
      throw CapacityError("tensor_power: result exceeds cell cap");
    std::vector<Axis> axes;
    for (int rep = 1; rep <= n; ++rep)
      for (const auto& a : alphabet_.axes())
        axes.push_back({a.name + std::to_string(rep), a.size});
    std::int64_t total = static_cast<std::int64_t>(projected);
    std::vector<double> out(static_cast<size_t>(total));
    std::int64_t base = cells();
    for (std::int64_t f = 0; f < total; ++f) {
      double v = 1.0;
      std::int64_t rest = f;
      for (int rep = n - 1; rep >= 0; --rep) {
        v *= mass_[static_cast<size_t>(rest % base)];
        rest /= base;
      }
      out[static_cast<size_t>(f)] = v;
    }
    return JointPmf(AlphabetSpec(std::move(axes)), std::move(out));
  }

  // Support cells as flat indices (mass > threshold).
  std::vector<std::int64_t> support(double threshold = 0.0) const {
    std::vector<std::int64_t> s;
    for (std::int64_t f = 0; f < cells(); ++f)
      if (mass_[static_cast<size_t>(f)] > threshold) s.push_back(f);
    return s;
  }

  // Fuse groups of existing axes into single named axes (row-major within
  // each group); every original axis must appear in exactly one group.
  JointPmf regroup(const std::vector<std::pair<std::string, std::vector<std::string>>>& groups) const {
    std::vector<Axis> axes;
    std::vector<std::vector<int>> group_idx;
    size_t used = 0;
    for (const auto& [name, members] : groups) {
      std::vector<int> idx = alphabet_.indices_of(members);
      int sz = 1;
      for (int i : idx) sz *= alphabet_.axis(i).size;
      axes.push_back({name, sz});
      group_idx.push_back(idx);
      used += idx.size();
    }
    if (used != static_cast<size_t>(alphabet_.rank()))
      throw AxisError("regroup: every axis must appear in exactly one group");
    AlphabetSpec spec(axes);
    std::vector<double> out(static_cast<size_t>(spec.cells()), 0.0);
    std::vector<int> multi, nmulti(groups.size());
    for (std::int64_t c = 0; c < cells(); ++c) {
      double v = mass_[static_cast<size_t>(c)];
      if (v == 0.0) continue;
      alphabet_.unflat(c, multi);
      for (size_t gi = 0; gi < group_idx.size(); ++gi) {
        int key = 0;
        for (int i : group_idx[gi])
          key = key * alphabet_.axis(i).size + multi[static_cast<size_t>(i)];
        nmulti[gi] = key;
      }
      out[static_cast<size_t>(spec.flat(nmulti))] += v;
    }
    return JointPmf(std::move(spec), std::move(out));
  }

 private:
  AlphabetSpec alphabet_;
  std::vector<double> mass_;
  bool renormalized_ = false;
};

// Row-stochastic kernel from input-axis cells to output-axis cells.
class ConditionalPmf {
 public:
  ConditionalPmf() = default;

  ConditionalPmf(AlphabetSpec input, AlphabetSpec output, std::vector<double> rows)
      : input_(std::move(input)), output_(std::move(output)), rows_(std::move(rows)) {
    std::int64_t ni = input_.cells(), no = output_.cells();
    if (static_cast<std::int64_t>(rows_.size()) != ni * no)
      throw ShapeError("conditional pmf: row storage does not match alphabets");
    for (std::int64_t r = 0; r < ni; ++r) {
      double total = 0.0;
      for (std::int64_t o = 0; o < no; ++o) {
        double v = rows_[static_cast<size_t>(r * no + o)];
        if (v < -1e-15) throw ValidationError("conditional pmf: negative entry");
        total += std::max(v, 0.0);
      }
      if (std::abs(total - 1.0) > kMassTolerance)
        throw ValidationError("conditional pmf: row " + std::to_string(r) +
                              " sums to " + std::to_string(total));
      for (std::int64_t o = 0; o < no; ++o) {
        double& v = rows_[static_cast<size_t>(r * no + o)];
        v = std::max(v, 0.0) / total;
      }
    }
  }

  const AlphabetSpec& input() const { return input_; }
  const AlphabetSpec& output() const { return output_; }
  double row_entry(std::int64_t in_cell, std::int64_t out_cell) const {
    return rows_[static_cast<size_t>(in_cell * output_.cells() + out_cell)];
  }
  const std::vector<double>& rows() const { return rows_; }

  // Deterministic kernel out = g(in), g given per input cell.
  static ConditionalPmf deterministic(AlphabetSpec input, AlphabetSpec output,
                                      const std::vector<std::int64_t>& g) {
    std::int64_t ni = input.cells(), no = output.cells();
    if (static_cast<std::int64_t>(g.size()) != ni)
      throw ShapeError("deterministic kernel: map size mismatch");
    std::vector<double> rows(static_cast<size_t>(ni * no), 0.0);
    for (std::int64_t r = 0; r < ni; ++r) {
      if (g[static_cast<size_t>(r)] < 0 || g[static_cast<size_t>(r)] >= no)
        throw ValidationError("deterministic kernel: value outside output alphabet");
      rows[static_cast<size_t>(r * no + g[static_cast<size_t>(r)])] = 1.0;
    }
    return ConditionalPmf(std::move(input), std::move(output), std::move(rows));
  }

  static ConditionalPmf constant(AlphabetSpec input, AlphabetSpec output,
                                 std::int64_t out_cell = 0) {
    std::int64_t ni = input.cells();
    return deterministic(std::move(input), std::move(output),
                         std::vector<std::int64_t>(static_cast<size_t>(ni), out_cell));
  }

 private:
  AlphabetSpec input_;
  AlphabetSpec output_;
  std::vector<double> rows_;
};

inline JointPmf JointPmf::attach_channel(const ConditionalPmf& k) const {
  // Kernel input axes must all be present with matching sizes.
  std::vector<int> in_idx;
  in_idx.reserve(static_cast<size_t>(k.input().rank()));
  for (const auto& a : k.input().axes()) {
    int i = alphabet_.index_of(a.name);
    if (alphabet_.axis(i).size != a.size)
      throw ShapeError("attach_channel: size mismatch on axis '" + a.name + "'");
    in_idx.push_back(i);
  }
  for (const auto& a : k.output().axes())
    if (alphabet_.has(a.name))
      throw AxisError("attach_channel: output axis '" + a.name + "' already exists");

  std::vector<Axis> axes = alphabet_.axes();
  for (const auto& a : k.output().axes()) axes.push_back(a);
  std::int64_t no = k.output().cells();
  std::vector<double> out(static_cast<size_t>(cells() * no), 0.0);
  std::vector<int> multi;
  std::vector<int> in_multi(in_idx.size());
  for (std::int64_t c = 0; c < cells(); ++c) {
    double v = mass_[static_cast<size_t>(c)];
    alphabet_.unflat(c, multi);
    for (size_t j = 0; j < in_idx.size(); ++j)
      in_multi[j] = multi[static_cast<size_t>(in_idx[j])];
    std::int64_t r = k.input().flat(in_multi);
    for (std::int64_t o = 0; o < no; ++o)
      out[static_cast<size_t>(c * no + o)] = v * k.row_entry(r, o);
  }
  return JointPmf(AlphabetSpec(std::move(axes)), std::move(out));
}

}  // namespace skb

#endif
