#ifndef SKBOUND_IO_HPP
#define SKBOUND_IO_HPP

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "skbound/function_table.hpp"
#include "skbound/prob.hpp"

// Distribution files: one JSON record with ordered "alphabets" (name ->
// symbol list), "pmf" (nested arrays, outermost axis first), an optional
// "function" block mapping the first two axes to Z symbols, and optional
// name/notes metadata.

namespace skb {

using ordered_json = nlohmann::ordered_json;

struct DistributionFile {
  std::string name;
  std::string notes;
  std::vector<std::vector<std::string>> symbol_labels;  // per axis
  JointPmf pmf;
  std::optional<FunctionTable> function;
  std::vector<std::string> z_symbols;
  bool renormalized = false;
};

namespace detail {

inline std::pair<int, int> line_col(const std::string& text, size_t byte) {
  int line = 1, col = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

inline void flatten_pmf(const ordered_json& node, const std::vector<int>& sizes, size_t depth,
                        std::vector<double>& out) {
  if (depth == sizes.size()) {
    if (!node.is_number())
      throw ValidationError("pmf: expected a number at depth " + std::to_string(depth));
    out.push_back(node.get<double>());
    return;
  }
  if (!node.is_array() || static_cast<int>(node.size()) != sizes[depth])
    throw ValidationError("pmf: axis " + std::to_string(depth) + " expects " +
                          std::to_string(sizes[depth]) + " entries");
  for (const auto& child : node) flatten_pmf(child, sizes, depth + 1, out);
}

}  // namespace detail

inline DistributionFile parse_distribution_text(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, col] = detail::line_col(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError(std::string("malformed distribution file: ") + e.what(), line, col);
  }
  if (!doc.is_object() || !doc.contains("alphabets") || !doc.contains("pmf"))
    throw ValidationError("distribution file: need 'alphabets' and 'pmf' fields");

  DistributionFile out;
  if (doc.contains("name")) out.name = doc["name"].get<std::string>();
  if (doc.contains("notes")) out.notes = doc["notes"].get<std::string>();

  std::vector<Axis> axes;
  std::vector<int> sizes;
  for (auto it = doc["alphabets"].begin(); it != doc["alphabets"].end(); ++it) {
    std::vector<std::string> symbols;
    for (const auto& s : it.value()) symbols.push_back(s.get<std::string>());
    if (symbols.empty())
      throw ValidationError("alphabet '" + it.key() + "' has no symbols");
    axes.push_back({it.key(), static_cast<int>(symbols.size())});
    sizes.push_back(static_cast<int>(symbols.size()));
    out.symbol_labels.push_back(std::move(symbols));
  }

  std::vector<double> mass;
  detail::flatten_pmf(doc["pmf"], sizes, 0, mass);
  for (double v : mass)
    if (v < 0.0) throw ValidationError("pmf: negative cell");
  double total = 0.0;
  for (double v : mass) total += v;
  if (std::abs(total - 1.0) > kMassTolerance)
    throw ValidationError("pmf: total mass " + std::to_string(total) +
                          " drifts beyond 1e-9 from 1");
  out.pmf = JointPmf(AlphabetSpec(std::move(axes)), std::move(mass));
  out.renormalized = out.pmf.was_renormalized();

  if (doc.contains("function")) {
    const auto& fn = doc["function"];
    if (!fn.contains("symbols") || !fn.contains("cells"))
      throw ValidationError("function block: need 'symbols' and 'cells'");
    for (const auto& s : fn["symbols"]) out.z_symbols.push_back(s.get<std::string>());
    if (sizes.empty()) throw ValidationError("function block: requires at least one pmf axis");
    int nx = sizes[0], ny = sizes.size() >= 2 ? sizes[1] : 1;
    auto index_of = [&](const std::string& sym) {
      for (size_t i = 0; i < out.z_symbols.size(); ++i)
        if (out.z_symbols[i] == sym) return static_cast<int>(i);
      throw ValidationError("function block: unknown Z symbol '" + sym + "'");
    };
    std::vector<int> cells;
    if (!fn["cells"].is_array() || static_cast<int>(fn["cells"].size()) != nx)
      throw ValidationError("function block: cells must have one row per X symbol");
    for (const auto& row : fn["cells"]) {
      if (!row.is_array() || static_cast<int>(row.size()) != ny)
        throw ValidationError("function block: each row needs one cell per Y symbol");
      for (const auto& c : row) cells.push_back(index_of(c.get<std::string>()));
    }
    out.function = FunctionTable(nx, ny, static_cast<int>(out.z_symbols.size()), cells);
  }
  return out;
}

inline DistributionFile parse_distribution(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_distribution_text(ss.str());
}

inline std::string serialize_distribution(const DistributionFile& d) {
  ordered_json doc;
  if (!d.name.empty()) doc["name"] = d.name;
  if (!d.notes.empty()) doc["notes"] = d.notes;
  ordered_json alpha = ordered_json::object();
  const auto& spec = d.pmf.alphabet();
  for (int i = 0; i < spec.rank(); ++i) {
    ordered_json syms = ordered_json::array();
    for (int s = 0; s < spec.axis(i).size; ++s)
      syms.push_back(i < static_cast<int>(d.symbol_labels.size()) &&
                             s < static_cast<int>(d.symbol_labels[static_cast<size_t>(i)].size())
                         ? d.symbol_labels[static_cast<size_t>(i)][static_cast<size_t>(s)]
                         : std::to_string(s));
    alpha[spec.axis(i).name] = syms;
  }
  doc["alphabets"] = alpha;

  // nested arrays, outermost axis first
  std::function<ordered_json(int, std::int64_t&)> emit = [&](int depth,
                                                             std::int64_t& cursor) -> ordered_json {
    if (depth == spec.rank()) return d.pmf.mass()[static_cast<size_t>(cursor++)];
    ordered_json arr = ordered_json::array();
    for (int i = 0; i < spec.axis(depth).size; ++i) arr.push_back(emit(depth + 1, cursor));
    return arr;
  };
  std::int64_t cursor = 0;
  doc["pmf"] = emit(0, cursor);

  if (d.function) {
    ordered_json fn;
    ordered_json syms = ordered_json::array();
    for (int z = 0; z < d.function->nz; ++z)
      syms.push_back(z < static_cast<int>(d.z_symbols.size()) ? d.z_symbols[static_cast<size_t>(z)]
                                                              : std::to_string(z));
    fn["symbols"] = syms;
    ordered_json rows = ordered_json::array();
    for (int x = 0; x < d.function->nx; ++x) {
      ordered_json row = ordered_json::array();
      for (int y = 0; y < d.function->ny; ++y) row.push_back(fn["symbols"][( *d.function)(x, y)]);
      rows.push_back(row);
    }
    fn["cells"] = rows;
    doc["function"] = fn;
  }
  return doc.dump(2) + "\n";
}

// The three-axis law a computation needs: either the file carries (X,Y,Z)
// directly or a function block induces Z on a two-axis law.
inline JointPmf resolve_xyz(const DistributionFile& d) {
  const auto& spec = d.pmf.alphabet();
  if (spec.has("X") && spec.has("Y") && spec.has("Z")) return d.pmf;
  if (spec.rank() == 2 && d.function)
    return d.pmf.apply_function(spec.axis(0).name, spec.axis(1).name, *d.function, "Z");
  throw ValidationError(
      "distribution needs either (X,Y,Z) axes or a two-axis pmf with a function block");
}

// ---------------------------------------------------------------------------
// Report rows and emitters.

struct ReportRow {
  std::string instance;
  std::string quantity;
  double value = 0.0;
  std::string method;
  double residual = 0.0;
  double runtime_s = 0.0;
};

inline std::string format_bits(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9f", v);
  return buf;
}

inline std::string to_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream os;
  os << "instance,quantity,value_bits,method,residual,runtime_s\n";
  for (const auto& r : rows)
    os << r.instance << ',' << r.quantity << ',' << format_bits(r.value) << ',' << r.method
       << ',' << format_bits(r.residual) << ',' << format_bits(r.runtime_s) << '\n';
  return os.str();
}

inline std::string to_markdown(const std::vector<ReportRow>& rows) {
  std::ostringstream os;
  os << "| instance | quantity | value (bits) | method | residual | runtime (s) |\n";
  os << "|---|---|---|---|---|---|\n";
  for (const auto& r : rows)
    os << "| " << r.instance << " | " << r.quantity << " | " << format_bits(r.value) << " | "
       << r.method << " | " << format_bits(r.residual) << " | " << format_bits(r.runtime_s)
       << " |\n";
  return os.str();
}

}  // namespace skb

#endif
