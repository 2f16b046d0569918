#pragma once

#include <stdexcept>
#include <string>

namespace advt {

/// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad function arguments or configuration values.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Malformed input data (TSV corpora, vocab files, parameter files).
/// Messages carry the file name and line number where that makes sense.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// File system problems (missing files, short reads, failed writes).
class IoError : public Error {
 public:
  using Error::Error;
};

/// Training produced a non-finite loss or non-finite parameters.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& msg, int epoch, int batch)
      : Error(msg), epoch(epoch), batch(batch) {}
  int epoch;
  int batch;
};

}  // namespace advt
