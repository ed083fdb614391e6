#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace agency {

// Invalid numeric argument (out-of-range rate, bad weights, empty candidate list...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Inputs whose shapes do not line up (goal ids, agent sets, option counts).
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Config document errors carry the 1-based line they were found on (0 = whole document).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A simulation produced a state that breaks a numeric invariant.
class InvariantError : public std::runtime_error {
 public:
  InvariantError(std::size_t step, const std::string& what)
      : std::runtime_error("step " + std::to_string(step) + ": " + what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

}  // namespace agency
