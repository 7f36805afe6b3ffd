#ifndef SKBOUND_TABLES_HPP
#define SKBOUND_TABLES_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "skbound/envelope.hpp"
#include "skbound/function_table.hpp"
#include "skbound/prob.hpp"

// Classification of functions f : X x Y -> Z by whether psi-hat = I(X;Y)
// holds for every source law: only constants and the 2x2 XOR pattern do.

namespace skb {

struct TableClassification {
  enum class Kind { ValidConstant, ValidXor, Invalid };
  Kind kind = Kind::Invalid;
  // first offending 2x2 subtable in lexicographic (row pair, column pair)
  // order; absent for degenerate single-row/column tables
  std::optional<std::array<int, 4>> witness;  // {i1, i2, j1, j2}
};

namespace detail {

inline bool subtable_valid(int a, int b, int c, int d) {
  // a b / c d: valid iff all equal or XOR pattern a==d != b==c
  if (a == b && a == c && a == d) return true;
  return a == d && b == c && a != b;
}

}  // namespace detail

inline TableClassification classify_table(const FunctionTable& t) {
  TableClassification out;
  bool constant = true;
  for (int v : t.cells)
    if (v != t.cells[0]) constant = false;
  if (constant) {
    out.kind = TableClassification::Kind::ValidConstant;
    return out;
  }
  if (t.nx == 2 && t.ny == 2 && t(0, 0) == t(1, 1) && t(0, 1) == t(1, 0) &&
      t(0, 0) != t(0, 1)) {
    out.kind = TableClassification::Kind::ValidXor;
    return out;
  }
  out.kind = TableClassification::Kind::Invalid;
  for (int i1 = 0; i1 < t.nx; ++i1)
    for (int i2 = i1 + 1; i2 < t.nx; ++i2)
      for (int j1 = 0; j1 < t.ny; ++j1)
        for (int j2 = j1 + 1; j2 < t.ny; ++j2)
          if (!detail::subtable_valid(t(i1, j1), t(i1, j2), t(i2, j1), t(i2, j2))) {
            out.witness = std::array<int, 4>{i1, i2, j1, j2};
            return out;
          }
  // non-constant with every 2x2 subtable valid only happens for single-row or
  // single-column tables, which carry no witness
  return out;
}

struct EnumerationCounts {
  std::int64_t total = 0;
  std::int64_t valid = 0;
  std::int64_t invalid = 0;
};

// Exhaustive classification of all nz^(nx*ny) tables; the optional callback
// sees every table with its classification.
inline EnumerationCounts enumerate_tables(
    int nx, int ny, int nz,
    const std::function<void(const FunctionTable&, const TableClassification&)>& visit = {},
    std::int64_t cap = 10'000'000) {
  if (nx < 1 || ny < 1 || nz < 1) throw ValidationError("enumerate_tables: sizes must be >= 1");
  double projected = std::pow(static_cast<double>(nz), nx * ny);
  if (projected > static_cast<double>(cap))
    throw CapacityError("enumerate_tables: table count exceeds cap");
  EnumerationCounts counts;
  int cells = nx * ny;
  std::vector<int> digits(static_cast<size_t>(cells), 0);
  FunctionTable t(nx, ny, nz, digits);
  while (true) {
    t.cells = digits;
    TableClassification c = classify_table(t);
    ++counts.total;
    if (c.kind == TableClassification::Kind::Invalid)
      ++counts.invalid;
    else
      ++counts.valid;
    if (visit) visit(t, c);
    int pos = cells - 1;
    while (pos >= 0 && digits[static_cast<size_t>(pos)] == nz - 1)
      digits[static_cast<size_t>(pos--)] = 0;
    if (pos < 0) break;
    ++digits[static_cast<size_t>(pos)];
  }
  return counts;
}

struct Falsification {
  bool success = false;
  JointPmf law;           // full-table law realizing the gap
  double psi_hat = 0.0;
  double ixy = 0.0;
  double gap = 0.0;
  std::string note;
};

// Produces a source law on which psi-hat falls short of I(X;Y) by at least
// 1e-3 for an Invalid table. The counterexample family is fixed, not
// searched: the two correlation signs of the 4-cell law cover every invalid
// 2x2 pattern. Failure is reported as an open case, never silently passed.
inline Falsification falsify_invalid(const FunctionTable& t, int grid_k = 40) {
  TableClassification c = classify_table(t);
  if (c.kind != TableClassification::Kind::Invalid)
    throw PreconditionError("falsify_invalid: table is not Invalid");
  Falsification out;
  if (!c.witness) {
    out.note = "degenerate table (single row or column): I(X;Y) = 0 for every law, no gap exists";
    return out;
  }
  auto [i1, i2, j1, j2] = *c.witness;
  const std::array<std::array<double, 4>, 2> candidates = {
      std::array<double, 4>{0.4, 0.1, 0.1, 0.4},    // Cov > 0
      std::array<double, 4>{0.1, 0.4, 0.4, 0.1}};   // Cov < 0
  for (const auto& cells4 : candidates) {
    std::vector<double> mass(static_cast<size_t>(t.nx) * t.ny, 0.0);
    mass[static_cast<size_t>(i1 * t.ny + j1)] = cells4[0];
    mass[static_cast<size_t>(i1 * t.ny + j2)] = cells4[1];
    mass[static_cast<size_t>(i2 * t.ny + j1)] = cells4[2];
    mass[static_cast<size_t>(i2 * t.ny + j2)] = cells4[3];
    JointPmf law(AlphabetSpec({{"X", t.nx}, {"Y", t.ny}}), mass);
    JointPmf lawz = law.apply_function("X", "Y", t, "Z");
    BoundReport rep = psi_hat_envelope(lawz, grid_k);
    double ixy = lawz.mutual_information({"X"}, {"Y"});
    if (ixy - rep.value >= 1e-3) {
      out.success = true;
      out.law = std::move(law);
      out.psi_hat = rep.value;
      out.ixy = ixy;
      out.gap = ixy - rep.value;
      return out;
    }
  }
  out.note = "open case: neither fixed counterexample law produced a gap >= 1e-3";
  return out;
}

}  // namespace skb

#endif
