#pragma once

#include <stdexcept>
#include <string>

namespace bprt {

enum class ErrorKind {
  RankDeficient,
  DimensionMismatch,
  NotOrthonormal,
  BadRange,
  BadLevel,
  SingularOperator,
  BadSpec,
  Parse,
};

const char* to_string(ErrorKind kind) noexcept;

/// Base of every error thrown by the library. `kind()` is stable for
/// programmatic dispatch; `what()` carries a human message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define BPRT_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                     \
   public:                                                        \
    explicit Name(const std::string& message)                     \
        : Error(ErrorKind::Name, message) {}                      \
  };

BPRT_DEFINE_ERROR(RankDeficient)
BPRT_DEFINE_ERROR(DimensionMismatch)
BPRT_DEFINE_ERROR(NotOrthonormal)
BPRT_DEFINE_ERROR(BadRange)
BPRT_DEFINE_ERROR(BadLevel)
BPRT_DEFINE_ERROR(SingularOperator)
BPRT_DEFINE_ERROR(BadSpec)

#undef BPRT_DEFINE_ERROR

/// Input could not be parsed. `byte_offset` is 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(std::string file, std::size_t byte_offset, const std::string& message)
      : Error(ErrorKind::Parse, file + ":" + std::to_string(byte_offset) + ": " + message),
        file_(std::move(file)),
        byte_offset_(byte_offset) {}

  const std::string& file() const noexcept { return file_; }
  std::size_t byte_offset() const noexcept { return byte_offset_; }

 private:
  std::string file_;
  std::size_t byte_offset_;
};

}  // namespace bprt
