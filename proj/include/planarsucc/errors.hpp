#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace planarsucc {

enum class ErrorKind {
  NotAnEdge,
  UnknownVertex,
  DeletedVertex,
  ParseError,
  OutOfUniverse,
  IndexOutOfRange,
  CapExceeded,
  NonplanarResult,
  TooLarge,
  EdgeExists,
  SameVertex,
  NotConnected,
  NotBoundary,
  NotManaged,
  HashingRequired,
  InvalidArgument,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

// Process-wide instrumentation. `work` counts elementary structure steps,
// `probes` counts reads issued while answering queries.
struct Counters {
  std::uint64_t work = 0;
  std::uint64_t probes = 0;
  std::uint64_t micro_fallback_scans = 0;
  void reset() { *this = Counters{}; }
};

Counters& counters();

}  // namespace planarsucc
