#pragma once

#include <stdexcept>
#include <string>

namespace smx {

/// Base class for all library errors so callers can catch the whole family.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value lies outside the domain an operation is defined on
/// (e.g. a negative reliability, or an or-and entry that is not 0/1).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Operand dimensions are inconsistent with the requested operation.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// An iterative closure hit its iteration cap while values were still
/// changing. Carries the number of iterations that were executed.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, long iterations)
      : Error(what), iterations_(iterations) {}
  long iterations() const noexcept { return iterations_; }

 private:
  long iterations_;
};

/// The requested solver is only defined on acyclic digraphs.
class DagRequired : public Error {
 public:
  using Error::Error;
};

/// Spanning-forest edge recovery needs pairwise distinct edge weights.
class DistinctWeightsRequired : public Error {
 public:
  using Error::Error;
};

/// Malformed input text. Carries the 1-based line number when known.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what, long line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  long line() const noexcept { return line_; }

 private:
  long line_;
};

/// A vertex index refers outside the declared vertex range.
class IndexError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration (bad density, empty size list, unknown kind, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace smx
