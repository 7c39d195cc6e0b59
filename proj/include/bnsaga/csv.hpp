#pragma once

#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace bnsaga::csv {

/// 17 significant digits, round-trippable.
std::string format_real(double value);

/// Writes one comma-separated row. Empty optionals become blank cells.
class RowWriter {
 public:
  explicit RowWriter(std::ostream& out) : out_(out) {}
  ~RowWriter() { out_ << '\n'; }

  RowWriter& operator<<(double v) { return cell(format_real(v)); }
  RowWriter& operator<<(long long v) { return cell(std::to_string(v)); }
  RowWriter& operator<<(long v) { return cell(std::to_string(v)); }
  RowWriter& operator<<(int v) { return cell(std::to_string(v)); }
  RowWriter& operator<<(std::string_view v) { return cell(v); }
  RowWriter& operator<<(const char* v) { return cell(v); }
  RowWriter& operator<<(const std::optional<double>& v) {
    return cell(v ? format_real(*v) : std::string{});
  }

 private:
  RowWriter& cell(std::string_view text) {
    if (!first_) out_ << ',';
    out_ << text;
    first_ = false;
    return *this;
  }

  std::ostream& out_;
  bool first_ = true;
};

void write_header(std::ostream& out, std::initializer_list<std::string_view> columns);

/// `# key=value` metadata line.
void write_meta(std::ostream& out, std::string_view key, std::string_view value);
void write_meta(std::ostream& out, std::string_view key, double value);

}  // namespace bnsaga::csv
