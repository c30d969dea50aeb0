#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace levelscreen {

// Base for everything this library throws. The CLI maps ConfigError to exit
// code 2 and every other Error to exit code 1.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t byte_offset)
      : Error(msg + " (byte " + std::to_string(byte_offset) + ")"),
        byte_offset_(byte_offset) {}
  std::size_t byte_offset() const { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

class VersionError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class DataError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& msg, int iterations, double residual)
      : Error(msg + " after " + std::to_string(iterations) +
              " iterations (residual " + std::to_string(residual) + ")"),
        iterations_(iterations),
        residual_(residual) {}
  int iterations() const { return iterations_; }
  double residual() const { return residual_; }

 private:
  int iterations_;
  double residual_;
};

class GenerationError : public Error {
 public:
  using Error::Error;
};

class UndefinedMetricError : public Error {
 public:
  using Error::Error;
};

class StateError : public Error {
 public:
  using Error::Error;
};

class IntegrityError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace levelscreen
