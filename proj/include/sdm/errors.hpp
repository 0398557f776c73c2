#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sdm {

// Base for everything thrown on purpose. Exit codes: ConfigError -> 2,
// DataError -> 3, InternalError (and anything unexpected) -> 4.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class DataError : public Error {
 public:
  using Error::Error;
  DataError(std::size_t row, const std::string& what)
      : Error("row " + std::to_string(row) + ": " + what), row_(row) {}
  // 1-based data row index (header excluded); 0 when not tied to a row.
  std::size_t row() const { return row_; }

 private:
  std::size_t row_ = 0;
};

class SchemaError : public DataError {
 public:
  explicit SchemaError(const std::string& what) : DataError(what) {}
};

class InternalError : public Error {
 public:
  using Error::Error;
};

int exit_code_for(const std::exception& e);

}  // namespace sdm
