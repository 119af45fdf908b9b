#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace aclm {

/// A model or configuration parameter is outside its admissible range.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input data (signal samples, scenario keys, units) failed validation.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A text file could not be parsed; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& path, std::size_t line, const std::string& what)
      : std::runtime_error(path + ":" + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A signal has no sample at a simulation time that needs one.
class SignalGap : public std::runtime_error {
 public:
  SignalGap(const std::string& signal, std::int64_t time_s)
      : std::runtime_error("signal '" + signal + "' has no sample at t=" +
                           std::to_string(time_s) + " s"),
        time_s_(time_s) {}

  std::int64_t time_s() const noexcept { return time_s_; }

 private:
  std::int64_t time_s_;
};

}  // namespace aclm
