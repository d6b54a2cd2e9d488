#pragma once

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

#include "flagexp/rational.hpp"

namespace flagexp::cli {

using Json = nlohmann::ordered_json;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// doc is the JSON result; table is its row view for csv and table output. An empty
// table falls back to key/value rows built from doc.
struct Output {
  Json doc = Json::object();
  Table table;
};

enum class Format { Json, Csv, Table };
Format parse_format(const std::string& text);

// Doubles carry 12 significant digits; non-finite values become "inf", "-inf", "nan".
std::string fmt(double x);
Json num(double x);
Json exact(const Rational& q);
Json exact(const RatVec& v);

void render(std::ostream& out, const Output& output, Format format);

}  // namespace flagexp::cli
