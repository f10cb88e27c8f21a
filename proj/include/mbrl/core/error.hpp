#pragma once

#include <stdexcept>
#include <string>

namespace mbrl {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Broken precondition or misuse of an API (shape mismatch, step after done).
class ContractError : public Error {
 public:
  using Error::Error;
};

// Numerical failure: non-finite values, rank deficiency, failed fits.
class NumericError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Configuration errors carry the offending key path ("env.kind", ...).
class ConfigError : public Error {
 public:
  ConfigError(std::string path, const std::string& message)
      : Error(path.empty() ? message : path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

class ConfigSyntaxError : public ConfigError {
 public:
  ConfigSyntaxError(int line, int col, const std::string& message)
      : ConfigError("line " + std::to_string(line) + ", col " + std::to_string(col), message),
        line_(line),
        col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_, col_;
};

class ConfigUnknownKeyError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class ConfigUnresolvedRefError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class ConfigIncompatibleError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

}  // namespace mbrl
