#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace nhdtc {

/// Shortest-safe 17-significant-digit rendering; parses back to the same double.
std::string format_double(double value);
double parse_double(std::string_view text);

using Cell = std::variant<double, long long, std::string>;

/// Named-column table serialized as RFC 4180 CSV.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  explicit Table(std::vector<std::string> names) : columns(std::move(names)) {}
  void add_row(std::vector<Cell> row);
  std::string to_csv() const;
};

struct ParsedCsv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

ParsedCsv parse_csv(std::string_view text);

}  // namespace nhdtc
