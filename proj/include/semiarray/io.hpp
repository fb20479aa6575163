#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "semiarray/assoc_array.hpp"
#include "semiarray/key.hpp"

namespace semiarray {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline std::vector<std::string> split_tab(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

inline std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace detail

// One `row<TAB>col<TAB>value` triple per line, no header; blank lines are
// skipped. Malformed lines raise ParseError carrying the 1-based line number.
template <Semiring S>
std::vector<Triple<S>> read_triples_tsv(std::istream& in, const S& s) {
  std::vector<Triple<S>> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = detail::strip_cr(line);
    if (line.empty()) continue;
    auto fields = detail::split_tab(line);
    if (fields.size() != 3) {
      throw ParseError(lineno, "expected 3 tab-separated fields, got " +
                                   std::to_string(fields.size()));
    }
    typename S::value_type v;
    try {
      v = s.parse(fields[2]);
    } catch (const std::exception& e) {
      throw ParseError(lineno, "bad value '" + fields[2] + "': " + e.what());
    }
    out.push_back({parse_key(fields[0]), parse_key(fields[1]), v});
  }
  return out;
}

template <Semiring S>
void write_triples_tsv(const AssocArray<S>& a, std::ostream& os) {
  for (const auto& [kp, v] : a.entries()) {
    os << key_to_string(kp.first) << '\t' << key_to_string(kp.second) << '\t'
       << a.semiring().to_string(v) << '\n';
  }
}

struct StreamEvent {
  Key src;
  Key dst;
  std::uint64_t count = 0;
  double timestamp = 0.0;
};

// One `src<TAB>dst<TAB>count<TAB>timestamp_seconds` event per line.
inline std::vector<StreamEvent> read_events_tsv(std::istream& in) {
  std::vector<StreamEvent> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = detail::strip_cr(line);
    if (line.empty()) continue;
    auto fields = detail::split_tab(line);
    if (fields.size() != 4) {
      throw ParseError(lineno, "expected 4 tab-separated fields, got " +
                                   std::to_string(fields.size()));
    }
    StreamEvent e;
    e.src = parse_key(fields[0]);
    e.dst = parse_key(fields[1]);
    try {
      std::size_t pos = 0;
      e.count = std::stoull(fields[2], &pos);
      if (pos != fields[2].size()) throw std::invalid_argument(fields[2]);
    } catch (const std::exception&) {
      throw ParseError(lineno, "bad count '" + fields[2] + "'");
    }
    try {
      std::size_t pos = 0;
      e.timestamp = std::stod(fields[3], &pos);
      if (pos != fields[3].size()) throw std::invalid_argument(fields[3]);
    } catch (const std::exception&) {
      throw ParseError(lineno, "bad timestamp '" + fields[3] + "'");
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace semiarray
