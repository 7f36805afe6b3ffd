#ifndef SKBOUND_GRID_HPP
#define SKBOUND_GRID_HPP

#include <cstdint>
#include <vector>

#include "skbound/errors.hpp"

namespace skb {

inline constexpr std::int64_t kDefaultAtomCap = 1'000'000;

inline std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r < 0) return std::numeric_limits<std::int64_t>::max();
  }
  return r;
}

// All compositions of k into d nonnegative parts, scaled by 1/k.
// Atoms are kept as integer count vectors so grid points are exact rationals;
// enumeration order is lexicographic in the counts.
class SimplexGrid {
 public:
  SimplexGrid(int d, int k, std::int64_t atom_cap = kDefaultAtomCap) : d_(d), k_(k) {
    if (d < 1 || k < 1) throw ValidationError("simplex grid: d and k must be >= 1");
    std::int64_t count = binomial(k + d - 1, d - 1);
    if (count > atom_cap)
      throw CapacityError("simplex grid: atom count " + std::to_string(count) +
                          " exceeds cap " + std::to_string(atom_cap));
    counts_.reserve(static_cast<size_t>(count) * d);
    std::vector<int> cur(static_cast<size_t>(d), 0);
    emit(cur, 0, k);
  }

  int dimension() const { return d_; }
  int resolution() const { return k_; }
  std::int64_t size() const { return static_cast<std::int64_t>(counts_.size()) / d_; }

  // Probability coordinates of atom j into out[0..d).
  void atom(std::int64_t j, double* out) const {
    const int* c = &counts_[static_cast<size_t>(j) * d_];
    for (int i = 0; i < d_; ++i) out[i] = static_cast<double>(c[i]) / k_;
  }

  std::vector<double> atom(std::int64_t j) const {
    std::vector<double> v(static_cast<size_t>(d_));
    atom(j, v.data());
    return v;
  }

  const int* atom_counts(std::int64_t j) const { return &counts_[static_cast<size_t>(j) * d_]; }

 private:
  void emit(std::vector<int>& cur, int pos, int remaining) {
    if (pos == d_ - 1) {
      cur[static_cast<size_t>(pos)] = remaining;
      counts_.insert(counts_.end(), cur.begin(), cur.end());
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      cur[static_cast<size_t>(pos)] = v;
      emit(cur, pos + 1, remaining - v);
    }
  }

  int d_;
  int k_;
  std::vector<int> counts_;
};

}  // namespace skb

#endif
