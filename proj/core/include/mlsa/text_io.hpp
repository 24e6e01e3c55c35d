#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mlsa {

// Error raised while reading one of the line-oriented text formats.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Shortest decimal that reads back to the same double; "inf"/"-inf" for infinities.
std::string format_double(double value);

std::optional<double> parse_double(std::string_view token);
std::optional<long long> parse_integer(std::string_view token);

// Splits on ASCII whitespace.
std::vector<std::string_view> split_whitespace(std::string_view line);

// True for blank lines and '#' comment lines.
bool is_skippable(std::string_view line);

}  // namespace mlsa
