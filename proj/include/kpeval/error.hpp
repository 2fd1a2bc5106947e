#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kpeval {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed UTF-8 input. `offset()` is the byte offset of the first bad byte.
class Utf8Error : public Error {
 public:
  explicit Utf8Error(std::size_t offset);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Problem reading or parsing a lexicon file. `line()` is 1-based, 0 when the
/// error is not tied to a line (e.g. the file is missing).
class LexiconError : public Error {
 public:
  LexiconError(const std::string& path, std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Correlation requested over a vector with zero variance.
class UndefinedCorrelation : public Error {
 public:
  using Error::Error;
};

}  // namespace kpeval
