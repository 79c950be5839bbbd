#pragma once

#include <charconv>
#include <cstddef>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "kendall/ordinal.hpp"
#include "kendall/sequence.hpp"
#include "kendall/transform.hpp"

// Delimited text formats.
//
// Original tables: a header row of feature names, then one row per object.
// Comma or tab separated (detected from the header); `NA` or an empty cell
// is missing.
//
// Transformed tables: a metadata line `#kendall n=<n> scheme=rowmajor-v1`,
// the header row, then n(n-1) rows of A, D, T or NA in pair-scheme order.
//
// Weight tables: `#kendall-weights n=<n> scheme=rowmajor-v1`, a header of
// `<feature>:A,<feature>:D,<feature>:T` triples, then n(n-1) rows of
// non-negative weights; NA or empty is zero.

namespace kendall::io {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TextTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  char delimiter = ',';

  std::size_t column_index(const std::string& name) const {
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (header[c] == name) return c;
    }
    throw FormatError("no column named '" + name + "'");
  }
};

namespace detail {

inline std::vector<std::string> split(std::string_view line, char delimiter) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = line.find(delimiter, start);
    cells.emplace_back(line.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  for (auto& c : cells) {
    while (!c.empty() && (c.back() == ' ' || c.back() == '\r')) c.pop_back();
    std::size_t lead = 0;
    while (lead < c.size() && c[lead] == ' ') ++lead;
    c.erase(0, lead);
    if (c.size() >= 2 && c.front() == '"' && c.back() == '"') c = c.substr(1, c.size() - 2);
  }
  return cells;
}

inline bool is_na(std::string_view cell) { return cell.empty() || cell == "NA" || cell == "NaN" || cell == "nan"; }

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot read '" + path + "'");
  return in;
}

inline std::string trim_eol(std::string line) {
  while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
  return line;
}

}  // namespace detail

inline char detect_delimiter(std::string_view header_line) {
  return header_line.find(',') == std::string_view::npos && header_line.find('\t') != std::string_view::npos ? '\t'
                                                                                                            : ',';
}

/// Reads header and rows; every row must have as many cells as the header.
/// `first_row_line` is the 1-based file line of the header, for messages.
inline TextTable read_text_table(std::istream& in, std::size_t first_row_line = 1) {
  TextTable table;
  std::string line;
  if (!std::getline(in, line)) throw FormatError("empty input: missing header row");
  line = detail::trim_eol(line);
  table.delimiter = detect_delimiter(line);
  table.header = detail::split(line, table.delimiter);
  std::size_t line_no = first_row_line;
  while (std::getline(in, line)) {
    ++line_no;
    line = detail::trim_eol(line);
    if (line.empty()) continue;
    auto cells = detail::split(line, table.delimiter);
    if (cells.size() != table.header.size()) {
      throw FormatError("line " + std::to_string(line_no) + ": expected " + std::to_string(table.header.size()) +
                        " cells, found " + std::to_string(cells.size()));
    }
    table.rows.push_back(std::move(cells));
  }
  return table;
}

inline bool parse_number(std::string_view cell, double& out) {
  if (detail::is_na(cell)) {
    out = kMissing;
    return true;
  }
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

/// Column as numbers, or throws naming the column and data row (1-based).
inline OrdinalVector numeric_column(const TextTable& t, std::size_t c) {
  OrdinalVector out{t.header[c], std::vector<double>(t.rows.size())};
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    if (!parse_number(t.rows[r][c], out.values[r])) {
      throw FormatError("column '" + t.header[c] + "', row " + std::to_string(r + 1) + ": '" + t.rows[r][c] +
                        "' is not numeric");
    }
  }
  return out;
}

inline bool is_numeric_column(const TextTable& t, std::size_t c) {
  double v;
  for (const auto& row : t.rows) {
    if (!parse_number(row[c], v)) return false;
  }
  return true;
}

inline CategoricalColumn categorical_column(const TextTable& t, std::size_t c) {
  CategoricalColumn out{t.header[c], {}};
  for (const auto& row : t.rows) out.labels.push_back(detail::is_na(row[c]) ? std::string() : row[c]);
  return out;
}

/// Shortest round-trip decimal form.
inline std::string format_number(double v) {
  if (is_missing(v)) return "NA";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("NA");
}

inline const char* symbol_code(Symbol s) noexcept {
  switch (s) {
    case Symbol::Asc:
      return "A";
    case Symbol::Desc:
      return "D";
    case Symbol::Tie:
      return "T";
    default:
      return "NA";
  }
}

inline Symbol parse_symbol(std::string_view cell) {
  if (cell == "A") return Symbol::Asc;
  if (cell == "D") return Symbol::Desc;
  if (cell == "T") return Symbol::Tie;
  if (cell == "NA") return Symbol::Missing;
  throw FormatError("malformed symbol '" + std::string(cell) + "'");
}

/// Transformed system: equal-length sequences over a shared pair scheme.
struct TransformedSystem {
  std::size_t n = 0;
  std::vector<NamedSequence> columns;
};

inline std::string metadata_line(const char* kind, std::size_t n) {
  return std::string("#") + kind + " n=" + std::to_string(n) + " scheme=" + PairScheme::kTag;
}

/// Parses `#<kind> n=<n> scheme=<tag>`, returning n.
inline std::size_t parse_metadata(const std::string& line, const char* kind) {
  std::istringstream ss(line);
  std::string tag, n_field, scheme_field;
  ss >> tag >> n_field >> scheme_field;
  if (tag != std::string("#") + kind) throw FormatError("expected a '#" + std::string(kind) + "' metadata line");
  if (scheme_field != std::string("scheme=") + PairScheme::kTag) {
    throw FormatError("unsupported pair scheme '" + scheme_field + "' (expected scheme=" + PairScheme::kTag + ")");
  }
  std::size_t n = 0;
  if (n_field.rfind("n=", 0) != 0) throw FormatError("metadata line lacks n=<count>");
  const auto [ptr, ec] = std::from_chars(n_field.data() + 2, n_field.data() + n_field.size(), n);
  if (ec != std::errc() || ptr != n_field.data() + n_field.size() || n < 2) {
    throw FormatError("invalid object count '" + n_field + "'");
  }
  return n;
}

inline void write_transformed(std::ostream& out, const TransformedSystem& sys) {
  out << metadata_line("kendall", sys.n) << '\n';
  for (std::size_t c = 0; c < sys.columns.size(); ++c) out << (c ? "," : "") << sys.columns[c].name;
  out << '\n';
  const std::size_t m = pair_count(sys.n);
  std::string row;
  for (std::size_t j = 0; j < m; ++j) {
    row.clear();
    for (std::size_t c = 0; c < sys.columns.size(); ++c) {
      if (c) row += ',';
      row += symbol_code(sys.columns[c].sequence[j]);
    }
    row += '\n';
    out << row;
  }
}

inline TransformedSystem read_transformed(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("empty input: missing metadata line");
  TransformedSystem sys;
  sys.n = parse_metadata(detail::trim_eol(line), "kendall");
  const auto table = read_text_table(in, 2);
  const std::size_t m = pair_count(sys.n);
  if (table.rows.size() != m) {
    throw FormatError("expected " + std::to_string(m) + " pair rows for n=" + std::to_string(sys.n) + ", found " +
                      std::to_string(table.rows.size()));
  }
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    KendallSequence seq(sys.n);
    for (std::size_t j = 0; j < m; ++j) {
      try {
        seq.set(j, parse_symbol(table.rows[j][c]));
      } catch (const FormatError& e) {
        throw FormatError("column '" + table.header[c] + "', pair row " + std::to_string(j + 1) + ": " + e.what());
      }
    }
    sys.columns.push_back({table.header[c], std::move(seq)});
  }
  return sys;
}

/// Per-feature pair votes read from a weight table.
struct WeightedSystem {
  std::size_t n = 0;
  std::vector<std::string> names;
  std::vector<std::vector<PairVotes>> votes;
};

inline WeightedSystem read_weights(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("empty input: missing metadata line");
  WeightedSystem sys;
  sys.n = parse_metadata(detail::trim_eol(line), "kendall-weights");
  const auto table = read_text_table(in, 2);
  const std::size_t m = pair_count(sys.n);
  if (table.rows.size() != m) {
    throw FormatError("expected " + std::to_string(m) + " pair rows for n=" + std::to_string(sys.n) + ", found " +
                      std::to_string(table.rows.size()));
  }
  if (table.header.size() % 3 != 0) throw FormatError("weight header must list <feature>:A,:D,:T triples");
  for (std::size_t c = 0; c < table.header.size(); c += 3) {
    const std::string& h = table.header[c];
    if (h.size() < 2 || h.substr(h.size() - 2) != ":A") throw FormatError("weight column '" + h + "' is not <feature>:A");
    const std::string name = h.substr(0, h.size() - 2);
    if (table.header[c + 1] != name + ":D" || table.header[c + 2] != name + ":T") {
      throw FormatError("weight columns for '" + name + "' must be " + name + ":A," + name + ":D," + name + ":T");
    }
    std::vector<PairVotes> votes(m);
    for (std::size_t j = 0; j < m; ++j) {
      double w[3];
      for (std::size_t k = 0; k < 3; ++k) {
        const auto& cell = table.rows[j][c + k];
        if (!parse_number(cell, w[k]) || (!is_missing(w[k]) && w[k] < 0.0)) {
          throw FormatError("column '" + table.header[c + k] + "', pair row " + std::to_string(j + 1) + ": '" + cell +
                            "' is not a non-negative weight");
        }
        if (is_missing(w[k])) w[k] = 0.0;
      }
      votes[j] = {w[0], w[1], w[2]};
    }
    sys.names.push_back(name);
    sys.votes.push_back(std::move(votes));
  }
  return sys;
}

/// Per-object values of several named columns, one row per object.
inline void write_columns(std::ostream& out, const std::vector<std::string>& names,
                          const std::vector<std::vector<double>>& columns) {
  for (std::size_t c = 0; c < names.size(); ++c) out << (c ? "," : "") << names[c];
  out << '\n';
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << format_number(columns[c][r]);
    out << '\n';
  }
}

inline bool looks_transformed(const std::string& path) {
  auto in = detail::open_input(path);
  std::string first;
  std::getline(in, first);
  return first.rfind("#kendall ", 0) == 0;
}

}  // namespace kendall::io
