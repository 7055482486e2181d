#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace premodtag {

// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// File could not be opened / read / written.
class IoError : public Error {
public:
  using Error::Error;
};

// Malformed input data. Carries a 1-based line number when known (0 = unknown).
class FormatError : public Error {
public:
  explicit FormatError(const std::string& msg, std::size_t line = 0)
      : Error(line ? msg + " (line " + std::to_string(line) + ")" : msg), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

// Input contains no usable material.
class EmptyCorpusError : public Error {
public:
  using Error::Error;
};

// Invalid configuration (ratios, probabilities, flags).
class ConfigError : public Error {
public:
  using Error::Error;
};

// Authority-list loading problems (empty effective list, bad entry).
class ValidationError : public Error {
public:
  using Error::Error;
};

// Training preconditions violated (unannotated tokens, empty corpus).
class TrainingError : public Error {
public:
  using Error::Error;
};

// Gold/predicted corpora are not token-aligned.
class AlignmentError : public Error {
public:
  using Error::Error;
};

// Corpus cannot be serialized (field with tab/newline, broken invariant).
class SerializationError : public Error {
public:
  using Error::Error;
};

// Stratified sampling cannot be satisfied.
class StratumError : public Error {
public:
  using Error::Error;
};

}  // namespace premodtag
