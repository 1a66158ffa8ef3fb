#ifndef ROBINFLOW_IO_HPP
#define ROBINFLOW_IO_HPP

#include <string>
#include <vector>

#include "robinflow/robin_symbol.hpp"

namespace robinflow::io {

// locale-independent shortest-round-trip / 17-significant-digit formatting
std::string format_double(double v);

struct Csv {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  void add_row(std::vector<std::string> cells) { rows.push_back(std::move(cells)); }
  // LF line endings, comma separated; an optional leading comment line
  std::string serialize(const std::string& comment = "") const;
};

RobinSymbol robin_symbol_from_json(const std::string& text);
std::string robin_symbol_to_json(const RobinSymbol& tau);

void write_file(const std::string& path, const std::string& content);

} // namespace robinflow::io

#endif
