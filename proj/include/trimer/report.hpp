#pragma once

#include <charconv>
#include <cmath>
#include <ostream>
#include <string>
#include <system_error>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "trimer/errors.hpp"

namespace trimer {

inline constexpr int kSchemaVersion = 1;
inline constexpr int kSignificantDigits = 12;

using Cell = std::variant<double, std::string>;

// A rectangular result set with named columns and free-form metadata.
struct Table {
  std::string schema;  // e.g. "trimer-sweep"
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, Cell>> meta;

  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
      if (columns[i] == name) return i;
    throw ConfigError("Table: no column named " + name);
  }
  double number(std::size_t row, const std::string& name) const { return std::get<double>(rows.at(row).at(column(name))); }
};

// %.12g-style text, locale independent.
inline std::string format_number(double v) {
  if (!std::isfinite(v)) throw NumericalError("format_number: non-finite value");
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, kSignificantDigits);
  if (res.ec != std::errc{}) throw NumericalError("format_number: conversion failed");
  std::string s(buf, res.ptr);
  if (s == "-0") s = "0";
  return s;
}

// The double that format_number's text parses back to.
inline double round_to_emitted(double v) {
  const std::string s = format_number(v);
  double out = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), out);
  return out;
}

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

inline std::string cell_text(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return format_number(*d);
  return std::get<std::string>(c);
}

inline void write_comment_header(std::ostream& os, const Table& t) {
  os << "# " << t.schema << " schema_version=" << kSchemaVersion << '\n';
  for (const auto& [k, v] : t.meta) os << "# " << k << '=' << cell_text(v) << '\n';
}

}  // namespace detail

inline void write_csv(std::ostream& os, const Table& t) {
  detail::write_comment_header(os, t);
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << detail::csv_field(t.columns[i]);
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << detail::csv_field(detail::cell_text(row[i]));
    os << '\n';
  }
}

// Whitespace-separated columns; strings are double-quoted, blank line between
// blocks of the slowest-varying column so `splot` can draw surfaces.
inline void write_gnuplot(std::ostream& os, const Table& t) {
  detail::write_comment_header(os, t);
  os << '#';
  for (const auto& c : t.columns) os << ' ' << c;
  os << '\n';
  const Cell* previous = nullptr;
  for (const auto& row : t.rows) {
    if (previous && !row.empty() && *previous != row.front()) os << '\n';
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << (i ? " " : "");
      if (std::holds_alternative<std::string>(row[i])) os << '"' << std::get<std::string>(row[i]) << '"';
      else os << detail::cell_text(row[i]);
    }
    os << '\n';
    if (!row.empty()) previous = &row.front();
  }
}

inline nlohmann::ordered_json to_json(const Table& t) {
  auto cell = [](const Cell& c) -> nlohmann::ordered_json {
    if (const double* d = std::get_if<double>(&c)) return round_to_emitted(*d);
    return std::get<std::string>(c);
  };
  nlohmann::ordered_json j;
  j["schema"] = t.schema;
  j["schema_version"] = kSchemaVersion;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [k, v] : t.meta) meta[k] = cell(v);
  j["meta"] = meta;
  j["columns"] = t.columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (const auto& c : row) r.push_back(cell(c));
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j;
}

inline void write_json(std::ostream& os, const Table& t) { os << to_json(t).dump(1) << '\n'; }

enum class OutputFormat { Csv, Json, Gnuplot };

inline OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::Csv;
  if (s == "json") return OutputFormat::Json;
  if (s == "gnuplot") return OutputFormat::Gnuplot;
  throw ConfigError("unknown output format: " + s);
}

inline void write_table(std::ostream& os, const Table& t, OutputFormat f) {
  switch (f) {
    case OutputFormat::Csv: write_csv(os, t); break;
    case OutputFormat::Json: write_json(os, t); break;
    case OutputFormat::Gnuplot: write_gnuplot(os, t); break;
  }
}

}  // namespace trimer
