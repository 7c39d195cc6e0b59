#include "bnsaga/csv.hpp"

#include <cstdio>

namespace bnsaga::csv {

std::string format_real(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_header(std::ostream& out, std::initializer_list<std::string_view> columns) {
  bool first = true;
  for (auto c : columns) {
    if (!first) out << ',';
    out << c;
    first = false;
  }
  out << '\n';
}

void write_meta(std::ostream& out, std::string_view key, std::string_view value) {
  out << "# " << key << '=' << value << '\n';
}

void write_meta(std::ostream& out, std::string_view key, double value) {
  write_meta(out, key, format_real(value));
}

}  // namespace bnsaga::csv
