#include "casepred/csv.hpp"

#include <istream>
#include <ostream>

namespace casepred {

bool CsvReader::next_row(std::vector<std::string>& out) {
  out.clear();
  std::string field;
  bool in_quotes = false;
  bool saw_any = false;
  int c;
  while ((c = in_.get()) != std::char_traits<char>::eof()) {
    saw_any = true;
    const char ch = static_cast<char>(c);
    if (in_quotes) {
      if (ch == '"') {
        if (in_.peek() == '"') {
          in_.get();
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(ch);
      }
      continue;
    }
    switch (ch) {
      case '"':
        in_quotes = true;
        break;
      case ',':
        out.push_back(std::move(field));
        field.clear();
        break;
      case '\r':
        break;
      case '\n':
        out.push_back(std::move(field));
        return true;
      default:
        field.push_back(ch);
    }
  }
  if (!saw_any) return false;
  out.push_back(std::move(field));
  // A lone trailing newline already returned; ignore a final empty record.
  if (out.size() == 1 && out[0].empty()) return false;
  return true;
}

namespace {
bool needs_quoting(const std::string& s) {
  for (char c : s) {
    if (c == ',' || c == '"' || c == '\n' || c == '\r') return true;
  }
  return false;
}
}  // namespace

void write_csv_row(std::ostream& out, std::span<const std::string> fields) {
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    const std::string& f = fields[i];
    if (needs_quoting(f)) {
      out << '"';
      for (char c : f) {
        if (c == '"') out << "\"\"";
        else out << c;
      }
      out << '"';
    } else {
      out << f;
    }
  }
  out << '\n';
}

}  // namespace casepred
