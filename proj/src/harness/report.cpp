#include "primeform/harness/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace primeform::harness {

namespace {

bool needs_quoting(const std::string& field) {
  return field.find_first_of(",\"\r\n") != std::string::npos;
}

void write_csv_field(std::ostream& out, const std::string& field) {
  if (!needs_quoting(field)) {
    out << field;
    return;
  }
  out << '"';
  for (char c : field) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

std::vector<std::vector<std::string>> parse_csv_records(std::istream& in) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  char c = 0;
  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  while (in.get(c)) {
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    if (c == '"') {
      if (!field.empty()) throw std::invalid_argument("read_csv: quote inside unquoted field");
      in_quotes = true;
      field_started = true;
    } else if (c == ',') {
      end_field();
      field_started = true;
    } else if (c == '\r') {
      // tolerated before \n
    } else if (c == '\n') {
      end_field();
      records.push_back(std::move(record));
      record.clear();
    } else {
      field.push_back(c);
      field_started = true;
    }
  }
  if (in_quotes) throw std::invalid_argument("read_csv: unterminated quoted field");
  if (field_started || !field.empty() || !record.empty()) {
    end_field();
    records.push_back(std::move(record));
  }
  return records;
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buffer, ptr);
}

std::string cell_text(const Cell& cell) {
  struct Visitor {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, cell);
}

ReportRow& ReportRow::set(std::string column, Cell value) {
  for (auto& [name, cell] : values) {
    if (name == column) {
      cell = std::move(value);
      return *this;
    }
  }
  values.emplace_back(std::move(column), std::move(value));
  return *this;
}

void Report::add(ReportRow row) {
  for (const auto& [name, cell] : row.values) {
    if (std::find(value_columns_.begin(), value_columns_.end(), name) == value_columns_.end()) {
      value_columns_.push_back(name);
    }
  }
  rows_.push_back(std::move(row));
}

std::vector<std::string> Report::columns() const {
  std::vector<std::string> out{"source", "n", "p_n"};
  out.insert(out.end(), value_columns_.begin(), value_columns_.end());
  out.emplace_back("residual");
  out.emplace_back("rel_error");
  return out;
}

std::string Report::text(const ReportRow& row, const std::string& column) const {
  if (column == "source") return row.source;
  if (column == "n") return std::to_string(row.n);
  if (column == "p_n") return row.p_n ? std::to_string(*row.p_n) : std::string();
  if (column == "residual") return row.residual ? format_double(*row.residual) : std::string();
  if (column == "rel_error") return row.rel_error ? format_double(*row.rel_error) : std::string();
  for (const auto& [name, cell] : row.values) {
    if (name == column) return cell_text(cell);
  }
  return {};
}

ParsedTable tabulate(const Report& report) {
  ParsedTable table;
  table.columns = report.columns();
  for (const auto& row : report.rows()) {
    std::vector<std::string> cells;
    cells.reserve(table.columns.size());
    for (const auto& column : table.columns) cells.push_back(report.text(row, column));
    table.rows.push_back(std::move(cells));
  }
  return table;
}

void write_csv(const Report& report, std::ostream& out) {
  const ParsedTable table = tabulate(report);
  auto write_record = [&out](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i > 0) out << ',';
      write_csv_field(out, fields[i]);
    }
    out << '\n';
  };
  write_record(table.columns);
  for (const auto& row : table.rows) write_record(row);
}

void write_json(const Report& report, std::ostream& out) {
  using nlohmann::ordered_json;
  const auto columns = report.columns();
  auto real = [](double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(format_double(v)); };
  ordered_json array = ordered_json::array();
  for (const auto& row : report.rows()) {
    ordered_json object = ordered_json::object();
    for (const auto& column : columns) {
      ordered_json& slot = object[column];
      if (column == "source") {
        slot = row.source;
      } else if (column == "n") {
        slot = row.n;
      } else if (column == "p_n") {
        if (row.p_n) slot = *row.p_n;
      } else if (column == "residual") {
        if (row.residual) slot = real(*row.residual);
      } else if (column == "rel_error") {
        if (row.rel_error) slot = real(*row.rel_error);
      } else {
        auto it = std::find_if(row.values.begin(), row.values.end(),
                               [&](const auto& kv) { return kv.first == column; });
        if (it == row.values.end()) continue;
        const Cell& cell = it->second;
        if (const auto* i = std::get_if<std::int64_t>(&cell)) {
          slot = *i;
        } else if (const auto* d = std::get_if<double>(&cell)) {
          slot = real(*d);
        } else if (const auto* text = std::get_if<std::string>(&cell)) {
          slot = *text;
        }
      }
    }
    array.push_back(std::move(object));
  }
  out << array.dump(1) << '\n';
}

ParsedTable read_csv(std::istream& in) {
  auto records = parse_csv_records(in);
  if (records.empty()) throw std::invalid_argument("read_csv: missing header");
  ParsedTable table;
  table.columns = std::move(records.front());
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].size() != table.columns.size()) {
      throw std::invalid_argument("read_csv: record " + std::to_string(i) + " has " +
                                  std::to_string(records[i].size()) + " fields, header has " +
                                  std::to_string(table.columns.size()));
    }
    table.rows.push_back(std::move(records[i]));
  }
  return table;
}

ParsedTable read_json(std::istream& in) {
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("read_json: ") + e.what());
  }
  if (!doc.is_array()) throw std::invalid_argument("read_json: top level must be an array");
  ParsedTable table;
  for (const auto& object : doc) {
    if (!object.is_object()) throw std::invalid_argument("read_json: rows must be objects");
    std::vector<std::string> keys;
    for (const auto& item : object.items()) keys.push_back(item.key());
    if (table.columns.empty()) {
      table.columns = std::move(keys);
    } else if (keys != table.columns) {
      throw std::invalid_argument("read_json: rows disagree on the column set");
    }
  }
  for (const auto& object : doc) {
    std::vector<std::string> cells;
    for (const auto& column : table.columns) {
      auto it = object.find(column);
      if (it == object.end() || it->is_null()) {
        cells.emplace_back();
      } else if (it->is_string()) {
        cells.push_back(it->get<std::string>());
      } else if (it->is_number_unsigned()) {
        cells.push_back(std::to_string(it->get<std::uint64_t>()));
      } else if (it->is_number_integer()) {
        cells.push_back(std::to_string(it->get<std::int64_t>()));
      } else if (it->is_number_float()) {
        cells.push_back(format_double(it->get<double>()));
      } else {
        throw std::invalid_argument("read_json: unsupported value in column " + column);
      }
    }
    table.rows.push_back(std::move(cells));
  }
  return table;
}

}  // namespace primeform::harness
