#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace trafficstl {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A time argument fell outside the sampled domain of a signal.
class DomainError : public Error {
 public:
  DomainError(double t, double lo, double hi);
  double t;
  double lo;
  double hi;
};

/// Not enough samples for the requested operation.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

/// A numeric parameter violates its documented range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Formula text could not be parsed. `position` is 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position);
  std::size_t position;
};

/// Evaluation requested outside the interval on which a formula is defined,
/// or the trace is too short to define the formula anywhere.
class HorizonError : public Error {
 public:
  using Error::Error;
};

/// A predicate refers to a channel the trace does not carry.
class MissingChannelError : public Error {
 public:
  explicit MissingChannelError(const std::string& channel);
  std::string channel;
};

/// Two vehicles overlapped (non-positive bumper-to-bumper gap).
class CollisionError : public Error {
 public:
  CollisionError(double time, const std::string& follower, const std::string& leader, double gap);
  double time;
  std::string follower;
  std::string leader;
};

/// Malformed scenario config file. `line` is 1-based, 0 when not line specific.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, std::size_t line);
  std::size_t line;
};

/// Trajectory CSV schema violation.
class CsvError : public Error {
 public:
  CsvError(const std::string& file, std::size_t line, const std::string& what);
  std::string file;
  std::size_t line;
};

/// A conformance report was requested over an empty population.
class EmptyReportError : public Error {
 public:
  using Error::Error;
};

}  // namespace trafficstl
