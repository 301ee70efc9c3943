#pragma once

// Line-delimited key=value records: one record per line, pairs separated by
// single spaces. Values containing spaces, quotes, '=' or backslashes (or
// empty values) are double-quoted with backslash escapes.

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fpme {

// 11 significant digits in shortest form ("1.1283791671", "0.5", "1e-20").
std::string format_number(double v);

class Record {
 public:
  Record& add(std::string key, std::string value);
  Record& add(std::string key, const char* value) { return add(std::move(key), std::string(value)); }
  Record& add(std::string key, double value);
  Record& add(std::string key, long long value);
  Record& add(std::string key, int value) { return add(std::move(key), static_cast<long long>(value)); }
  Record& add(std::string key, std::size_t value) {
    return add(std::move(key), static_cast<long long>(value));
  }

  std::optional<std::string> get(std::string_view key) const;
  const std::vector<std::pair<std::string, std::string>>& entries() const noexcept { return entries_; }

  std::string to_line() const;
  // Inverse of to_line; throws std::invalid_argument on malformed input.
  static Record parse(std::string_view line);

  bool operator==(const Record&) const = default;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

enum class OutputFormat { records, table };

void write_records(std::ostream& os, const std::vector<Record>& records, OutputFormat format);

}  // namespace fpme
