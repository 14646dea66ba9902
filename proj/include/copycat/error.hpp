#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace copycat {

/// Raised by every text-format reader (tokens, tables, terms, processes,
/// formulas, states). `offset()` is the byte offset of the offending input.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " (at offset " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

}  // namespace copycat
