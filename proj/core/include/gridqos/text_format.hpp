#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gridqos {

/// Malformed input text. `line()` is 1-based; 0 means no specific line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Shortest decimal text that parses back to exactly `value`.
std::string format_shortest(double value);

/// printf-style %.<digits>g.
std::string format_significant(double value, int digits);

std::optional<double> parse_double(std::string_view text);
std::optional<long long> parse_integer(std::string_view text);

/// Whitespace-separated tokens of one line.
std::vector<std::string_view> split_whitespace(std::string_view line);

/// Lines of `text`, without terminators. A trailing newline does not start
/// an extra line.
std::vector<std::string_view> split_lines(std::string_view text);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace gridqos
