#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace oran {

// Every error raised by the library derives from Error so callers (the CLI in
// particular) can report them uniformly.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define ORAN_DEFINE_ERROR(Name)                  \
  class Name : public Error {                    \
   public:                                       \
    explicit Name(const std::string& what_arg)   \
        : Error(std::string(#Name ": ") + what_arg) {} \
  }

ORAN_DEFINE_ERROR(InvalidPartition);
ORAN_DEFINE_ERROR(InvalidProfile);
ORAN_DEFINE_ERROR(OutOfOrderSample);
ORAN_DEFINE_ERROR(DegenerateRange);
ORAN_DEFINE_ERROR(EmptyDataset);
ORAN_DEFINE_ERROR(MissingColumn);
ORAN_DEFINE_ERROR(NonPositiveReference);
ORAN_DEFINE_ERROR(EmptyBatch);
ORAN_DEFINE_ERROR(DuplicateXapp);
ORAN_DEFINE_ERROR(InvalidPeriod);
ORAN_DEFINE_ERROR(PolicyNotLoaded);
ORAN_DEFINE_ERROR(ConflictError);
ORAN_DEFINE_ERROR(ProtocolViolation);
ORAN_DEFINE_ERROR(MissingCheckpoint);
ORAN_DEFINE_ERROR(InvalidConfig);
ORAN_DEFINE_ERROR(EmptySamples);
ORAN_DEFINE_ERROR(FormatError);

#undef ORAN_DEFINE_ERROR

/// Malformed input row; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what_arg)
      : Error("ParseError: line " + std::to_string(line) + ": " + what_arg), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace oran
