#ifndef QCB_ERRORS_HPP
#define QCB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qcb {

// Invalid input values (dimension mismatches, out-of-range arguments,
// malformed matrices).
class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// A mathematical precondition of a bound does not hold for the given inputs
// (e.g. partial majorization, operator domination, commutation).
class PreconditionError : public std::runtime_error {
public:
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

// Requested energy outside the attainable range of a spectrum.
class RangeError : public std::runtime_error {
public:
  explicit RangeError(const std::string& what) : std::runtime_error(what) {}
};

// Truncation too short for the requested tolerance.
class TruncationError : public std::runtime_error {
public:
  explicit TruncationError(const std::string& what) : std::runtime_error(what) {}
};

// jordan_split called on an (almost) identical pair of states.
class DegenerateSplitError : public std::runtime_error {
public:
  explicit DegenerateSplitError(const std::string& what) : std::runtime_error(what) {}
};

// A sampler failed to produce a valid instance within its retry budget.
class GenerationError : public std::runtime_error {
public:
  explicit GenerationError(const std::string& what) : std::runtime_error(what) {}
};

// Campaign configuration problems (unknown bound id, incompatible sampler).
class ConfigurationError : public std::runtime_error {
public:
  explicit ConfigurationError(const std::string& what) : std::runtime_error(what) {}
};

// File I/O problems; carries path and cause.
class IoError : public std::runtime_error {
public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qcb

#endif  // QCB_ERRORS_HPP
