#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace agency::csv {

// Nine significant digits, '.' decimal point, locale independent.
std::string number(double v);
std::string integer(std::uint64_t v);

class Table {
 public:
  explicit Table(std::vector<std::string> header);

  Table& add_row(std::vector<std::string> cells);
  const std::vector<std::string>& header() const noexcept { return header_; }
  std::size_t rows() const noexcept { return rows_.size(); }
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

struct Parsed {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Index of a header column, or npos.
  std::size_t column(std::string_view name) const;
};

// Plain comma splitting; the files this tool writes never quote fields.
Parsed parse(std::string_view text);

}  // namespace agency::csv
