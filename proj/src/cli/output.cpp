#include "output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "flagexp/cli.hpp"

namespace flagexp::cli {

Format parse_format(const std::string& text) {
  if (text == "json") return Format::Json;
  if (text == "csv") return Format::Csv;
  if (text == "table") return Format::Table;
  throw UsageError("--format: expected json, csv or table, got \"" + text + "\"");
}

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

Json num(double x) {
  if (!std::isfinite(x)) return fmt(x);
  return std::stod(fmt(x));
}

Json exact(const Rational& q) { return to_string(q); }

Json exact(const RatVec& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

namespace {

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& e) { return e.is_primitive(); })) {
    std::string out;
    for (const auto& e : v) out += (out.empty() ? "" : " ") + scalar_text(e);
    return out;
  }
  return v.dump();
}

Table key_values(const Json& doc) {
  Table t{{"key", "value"}, {}};
  for (const auto& [key, value] : doc.items()) t.rows.push_back({key, scalar_text(value)});
  return t;
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

}  // namespace

void render(std::ostream& out, const Output& output, Format format) {
  if (format == Format::Json) {
    out << output.doc.dump(2) << "\n";
    return;
  }
  const Table t = output.table.header.empty() ? key_values(output.doc) : output.table;
  if (format == Format::Csv) {
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << csv_cell(cells[i]);
      out << "\n";
    };
    line(t.header);
    for (const auto& row : t.rows) line(row);
    return;
  }
  std::vector<std::size_t> width(t.header.size(), 0);
  auto widen = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size() && i < width.size(); ++i) width[i] = std::max(width[i], cells[i].size());
  };
  widen(t.header);
  for (const auto& row : t.rows) widen(row);
  auto line = [&](const std::vector<std::string>& cells) {
    std::string text;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      text += cells[i];
      if (i + 1 < cells.size()) text += std::string(width[i] - cells[i].size() + 2, ' ');
    }
    out << text << "\n";
  };
  line(t.header);
  for (const auto& row : t.rows) line(row);
}

}  // namespace flagexp::cli
