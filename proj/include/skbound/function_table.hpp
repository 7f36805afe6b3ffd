#ifndef SKBOUND_FUNCTION_TABLE_HPP
#define SKBOUND_FUNCTION_TABLE_HPP

#include <initializer_list>
#include <vector>

#include "skbound/errors.hpp"

namespace skb {

// A total map f : {0..nx-1} x {0..ny-1} -> {0..nz-1} stored row-major.
struct FunctionTable {
  int nx = 0;
  int ny = 0;
  int nz = 0;
  std::vector<int> cells;  // cells[x*ny + y]

  FunctionTable() = default;

  FunctionTable(int nx_, int ny_, int nz_, std::vector<int> cells_)
      : nx(nx_), ny(ny_), nz(nz_), cells(std::move(cells_)) {
    if (nx < 1 || ny < 1 || nz < 1)
      throw ShapeError("function table: all dimensions must be >= 1");
    if (static_cast<int>(cells.size()) != nx * ny)
      throw ShapeError("function table: cell count does not match nx*ny");
    for (int v : cells)
      if (v < 0 || v >= nz)
        throw ValidationError("function table: cell value outside Z alphabet");
  }

  int operator()(int x, int y) const { return cells[x * ny + y]; }

  static FunctionTable xor2() { return {2, 2, 2, {0, 1, 1, 0}}; }
  static FunctionTable and2() { return {2, 2, 2, {0, 0, 0, 1}}; }
  static FunctionTable or2() { return {2, 2, 2, {0, 1, 1, 1}}; }
  static FunctionTable sum2() { return {2, 2, 3, {0, 1, 1, 2}}; }
  // (x + y) mod 2 on a 2x3 domain
  static FunctionTable mod2_2x3() { return {2, 3, 2, {0, 1, 0, 1, 0, 1}}; }
  static FunctionTable constant(int nx, int ny, int nz, int z = 0) {
    return {nx, ny, nz, std::vector<int>(static_cast<size_t>(nx) * ny, z)};
  }
};

}  // namespace skb

#endif
