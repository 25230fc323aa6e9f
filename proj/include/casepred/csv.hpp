#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace casepred {

/// Minimal RFC-4180 style CSV reader: quoted fields, embedded commas and
/// newlines inside quotes, doubled-quote escapes, LF or CRLF endings.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  /// Reads the next record into `out`; returns false at end of input.
  bool next_row(std::vector<std::string>& out);

 private:
  std::istream& in_;
};

/// Writes one record, quoting fields that need it, terminated with '\n'.
void write_csv_row(std::ostream& out, std::span<const std::string> fields);

}  // namespace casepred
