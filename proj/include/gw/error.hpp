#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gw {

class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// A precondition or domain violation (non-bijective image list, element not
/// in group, zero series, ...).
class DomainError : public Error
{
public:
  using Error::Error;
};

/// A configured size limit would be exceeded.
class GuardError : public Error
{
public:
  GuardError(std::string guard, std::string const &what)
    : Error("guard '" + guard + "' exceeded: " + what), guard_(std::move(guard))
  {}

  std::string const &guard() const { return guard_; }

private:
  std::string guard_;
};

class ParseError : public Error
{
public:
  ParseError(std::string const &message, std::size_t line, std::size_t column,
             std::vector<std::string> expected = {})
    : Error(format(message, line, column, expected)),
      line_(line), column_(column), expected_(std::move(expected))
  {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  std::vector<std::string> const &expected() const { return expected_; }

private:
  static std::string format(std::string const &message, std::size_t line,
                            std::size_t column,
                            std::vector<std::string> const &expected)
  {
    std::string out = std::to_string(line) + ":" + std::to_string(column) +
                      ": " + message;
    if (!expected.empty()) {
      out += " (expected one of:";
      for (auto const &e : expected)
        out += " " + e;
      out += ")";
    }
    return out;
  }

  std::size_t line_;
  std::size_t column_;
  std::vector<std::string> expected_;
};

} // namespace gw
