#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace irtt {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed concrete syntax. `offset` is a byte offset into the input.
class SyntaxError : public Error {
public:
  SyntaxError(const std::string& message, std::size_t offset)
      : Error(message + " (at offset " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

enum class SortErrorKind { IllSorted, LevelViolation, UnboundVariable };

inline const char* to_string(SortErrorKind kind) {
  switch (kind) {
  case SortErrorKind::IllSorted:
    return "IllSorted";
  case SortErrorKind::LevelViolation:
    return "LevelViolation";
  case SortErrorKind::UnboundVariable:
    return "UnboundVariable";
  }
  return "?";
}

class SortError : public Error {
public:
  SortError(SortErrorKind kind, const std::string& message)
      : Error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  SortErrorKind kind() const noexcept { return kind_; }

private:
  SortErrorKind kind_;
};

} // namespace irtt
