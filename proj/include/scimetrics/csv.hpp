#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace scimetrics::csv {

// RFC 4180 reader: quoted fields, doubled quotes, embedded newlines, CRLF.
class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  // Reads the next record into `row`. Returns false at end of input.
  // Throws std::runtime_error on an unterminated quoted field.
  bool next(std::vector<std::string>& row);

  // 1-based line on which the most recently returned record started.
  std::size_t line() const { return record_line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 1;
  std::size_t record_line_ = 0;
};

std::string escape(std::string_view field);

void write_row(std::ostream& out, const std::vector<std::string>& fields);

std::vector<std::string> split(std::string_view cell, char delim);

}  // namespace scimetrics::csv
