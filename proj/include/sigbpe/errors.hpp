#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace sigbpe {

// Base class for all toolkit errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid UTF-8 in input text; carries the byte offset of the offending byte.
class Utf8Error : public Error {
 public:
  Utf8Error(const std::string& msg, std::size_t byte_offset)
      : Error(msg + " at byte offset " + std::to_string(byte_offset)),
        byte_offset_(byte_offset) {}

  std::size_t byte_offset() const { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

// Filesystem / stream failures.
class IoError : public Error {
 public:
  using Error::Error;
};

// Strict-mode encoding hit a character outside the base vocabulary.
class OovError : public Error {
 public:
  OovError(const std::string& msg, std::uint64_t char_offset)
      : Error(msg + " at offset " + std::to_string(char_offset)),
        char_offset_(char_offset) {}

  std::uint64_t char_offset() const { return char_offset_; }

 private:
  std::uint64_t char_offset_;
};

// Invalid parameters or parameter/data combinations.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Model file problems, reported distinctly per failure kind.
class ModelFormatError : public Error {
 public:
  using Error::Error;
};

class ModelVersionError : public ModelFormatError {
 public:
  using ModelFormatError::ModelFormatError;
};

class ModelChecksumError : public ModelFormatError {
 public:
  using ModelFormatError::ModelFormatError;
};

}  // namespace sigbpe
