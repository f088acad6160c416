#pragma once

#include <stdexcept>
#include <string>

namespace hst {

// Base for every library error. Each subclass maps to one failure family so
// callers (and the CLI exit-code logic) can dispatch on type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error { public: using Error::Error; };
class RangeError : public Error { public: using Error::Error; };
class PreconditionError : public Error { public: using Error::Error; };
class AdmissibilityError : public Error { public: using Error::Error; };
class FormatError : public Error { public: using Error::Error; };
class ResourceError : public Error { public: using Error::Error; };
class DegenerateError : public Error { public: using Error::Error; };
class ConvergenceError : public Error { public: using Error::Error; };
class NotFoundError : public Error { public: using Error::Error; };
class KindError : public Error { public: using Error::Error; };
class InsufficientSignal : public Error { public: using Error::Error; };
class EmptyDataError : public Error { public: using Error::Error; };
class ConfigError : public Error { public: using Error::Error; };

class EscapeError : public Error {
 public:
  EscapeError(const std::string& what, long index) : Error(what), index_(index) {}
  // Signed iterate index at which the orbit left R0 u R1 (negative = backward).
  long index() const noexcept { return index_; }

 private:
  long index_;
};

}  // namespace hst
