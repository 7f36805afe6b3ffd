#ifndef SKBOUND_ERRORS_HPP
#define SKBOUND_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace skb {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Unknown axis name, overlapping axis subsets, empty keep-set.
struct AxisError : Error {
  using Error::Error;
};

// Dimension mismatches between tensors, tables and channels.
struct ShapeError : Error {
  using Error::Error;
};

// Negative mass, normalization drift beyond tolerance, bad file contents.
struct ValidationError : Error {
  using Error::Error;
};

// Size caps: tensor cells, grid atoms, enumeration counts.
struct CapacityError : Error {
  using Error::Error;
};

// Operation-specific preconditions (e.g. Z is not an XOR column).
struct PreconditionError : Error {
  using Error::Error;
};

// Closed-form construction hit a 0/0 corner it cannot resolve.
struct DegenerateCaseError : Error {
  using Error::Error;
};

struct InfeasibleError : Error {
  using Error::Error;
};

struct UnboundedError : Error {
  using Error::Error;
};

struct UnsupportedDepthError : Error {
  using Error::Error;
};

struct ParseError : Error {
  int line = 0;
  int column = 0;
  ParseError(const std::string& msg, int line_, int col_)
      : Error(msg + " (line " + std::to_string(line_) + ", column " +
              std::to_string(col_) + ")"),
        line(line_),
        column(col_) {}
};

}  // namespace skb

#endif
