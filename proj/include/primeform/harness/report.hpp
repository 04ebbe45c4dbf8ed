#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace primeform::harness {

/// Empty, integer, real, or preformatted text (rationals travel as "p/q" text).
using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

/// Shortest text that parses back to the same double.
std::string format_double(double value);
std::string cell_text(const Cell& cell);

struct ReportRow {
  std::string source;
  std::uint64_t n = 0;
  std::optional<std::uint64_t> p_n;
  std::vector<std::pair<std::string, Cell>> values;
  std::optional<double> residual;
  std::optional<double> rel_error;

  ReportRow& set(std::string column, Cell value);
};

/// Ordered rows with a schema of
///   source, n, p_n, <value columns in first-seen order>, residual, rel_error.
class Report {
 public:
  void add(ReportRow row);
  const std::vector<ReportRow>& rows() const noexcept { return rows_; }
  std::vector<std::string> columns() const;
  /// Text of `column` in `row`; empty when the row has no such value.
  std::string text(const ReportRow& row, const std::string& column) const;

 private:
  std::vector<ReportRow> rows_;
  std::vector<std::string> value_columns_;
};

/// Header plus rows of cell text, as read back from a serialized report.
struct ParsedTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

/// Text view of a report, i.e. what a faithful reader must recover.
ParsedTable tabulate(const Report& report);

/// RFC 4180 style: header row, CRLF-free "\n" line ends, quoting fields that
/// contain a comma, quote or line break.
void write_csv(const Report& report, std::ostream& out);
/// Array of flat objects with keys in column order. Integers and reals are
/// JSON numbers, rationals are strings, empty cells are null.
void write_json(const Report& report, std::ostream& out);

/// Throws std::invalid_argument on malformed input.
ParsedTable read_csv(std::istream& in);
ParsedTable read_json(std::istream& in);

}  // namespace primeform::harness
