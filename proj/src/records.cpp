#include "fpme/records.hpp"

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>

namespace fpme {

namespace {

bool needs_quotes(std::string_view v) {
  if (v.empty()) return true;
  return v.find_first_of(" \t\"=\\") != std::string_view::npos;
}

std::string quote(std::string_view v) {
  std::string out = "\"";
  for (char c : v) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string format_number(double v) {
  if (v == 0.0) return "0";
  return fmt::format("{:.11g}", v);
}

Record& Record::add(std::string key, std::string value) {
  entries_.emplace_back(std::move(key), std::move(value));
  return *this;
}

Record& Record::add(std::string key, double value) { return add(std::move(key), format_number(value)); }

Record& Record::add(std::string key, long long value) {
  return add(std::move(key), fmt::format("{}", value));
}

std::optional<std::string> Record::get(std::string_view key) const {
  for (const auto& [k, v] : entries_)
    if (k == key) return v;
  return std::nullopt;
}

std::string Record::to_line() const {
  std::string line;
  for (const auto& [k, v] : entries_) {
    if (!line.empty()) line += ' ';
    line += k;
    line += '=';
    line += needs_quotes(v) ? quote(v) : v;
  }
  return line;
}

Record Record::parse(std::string_view line) {
  Record rec;
  std::size_t i = 0;
  const auto n = line.size();
  while (i < n) {
    while (i < n && line[i] == ' ') ++i;
    if (i >= n) break;
    const auto eq = line.find('=', i);
    if (eq == std::string_view::npos) throw std::invalid_argument("record pair without '='");
    std::string key(line.substr(i, eq - i));
    if (key.empty() || key.find(' ') != std::string::npos)
      throw std::invalid_argument("malformed record key");
    i = eq + 1;
    std::string value;
    if (i < n && line[i] == '"') {
      ++i;
      bool closed = false;
      while (i < n) {
        char c = line[i++];
        if (c == '\\') {
          if (i >= n) throw std::invalid_argument("dangling escape in record value");
          value += line[i++];
        } else if (c == '"') {
          closed = true;
          break;
        } else {
          value += c;
        }
      }
      if (!closed) throw std::invalid_argument("unterminated quoted record value");
      if (i < n && line[i] != ' ') throw std::invalid_argument("junk after quoted value");
    } else {
      const auto end = line.find(' ', i);
      value = std::string(line.substr(i, end == std::string_view::npos ? n - i : end - i));
      i = end == std::string_view::npos ? n : end;
    }
    rec.add(std::move(key), std::move(value));
  }
  return rec;
}

void write_records(std::ostream& os, const std::vector<Record>& records, OutputFormat format) {
  if (format == OutputFormat::records) {
    for (const auto& r : records) os << r.to_line() << '\n';
    return;
  }
  // Aligned table; consecutive records sharing a key set form one block.
  std::size_t start = 0;
  while (start < records.size()) {
    std::vector<std::string> keys;
    for (const auto& [k, v] : records[start].entries()) keys.push_back(k);
    std::size_t stop = start + 1;
    const auto same_keys = [&](const Record& r) {
      if (r.entries().size() != keys.size()) return false;
      for (std::size_t j = 0; j < keys.size(); ++j)
        if (r.entries()[j].first != keys[j]) return false;
      return true;
    };
    while (stop < records.size() && same_keys(records[stop])) ++stop;

    std::vector<std::size_t> width(keys.size());
    for (std::size_t j = 0; j < keys.size(); ++j) {
      width[j] = keys[j].size();
      for (std::size_t i = start; i < stop; ++i)
        width[j] = std::max(width[j], records[i].entries()[j].second.size());
    }
    for (std::size_t j = 0; j < keys.size(); ++j)
      os << fmt::format("{:<{}}", keys[j], width[j] + 2);
    os << '\n';
    for (std::size_t i = start; i < stop; ++i) {
      for (std::size_t j = 0; j < keys.size(); ++j)
        os << fmt::format("{:<{}}", records[i].entries()[j].second, width[j] + 2);
      os << '\n';
    }
    start = stop;
  }
}

}  // namespace fpme
