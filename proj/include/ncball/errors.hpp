#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ncball {

/// Broad failure classes. The CLI maps these onto exit codes 2, 3 and 4.
enum class ErrorKind { Input, Precondition, Numerical };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }
  virtual const char* name() const noexcept { return "Error"; }

 private:
  ErrorKind kind_;
};

#define NCBALL_DEFINE_ERROR(Type, Kind)                                              \
  class Type : public Error {                                                         \
   public:                                                                            \
    explicit Type(const std::string& what) : Error(ErrorKind::Kind, what) {}          \
    const char* name() const noexcept override { return #Type; }                      \
  }

NCBALL_DEFINE_ERROR(InputError, Input);
NCBALL_DEFINE_ERROR(DimensionMismatch, Input);
NCBALL_DEFINE_ERROR(CapExceeded, Precondition);
NCBALL_DEFINE_ERROR(InvalidArgument, Precondition);
NCBALL_DEFINE_ERROR(NotPure, Precondition);
NCBALL_DEFINE_ERROR(NotIrreducible, Precondition);
NCBALL_DEFINE_ERROR(NotUnitRadius, Precondition);
NCBALL_DEFINE_ERROR(NonHomogeneousSpec, Precondition);
NCBALL_DEFINE_ERROR(NotRootOfUnity, Precondition);
NCBALL_DEFINE_ERROR(SingularMatrix, Numerical);
NCBALL_DEFINE_ERROR(PerronFailure, Numerical);
NCBALL_DEFINE_ERROR(DecompositionFailure, Numerical);

#undef NCBALL_DEFINE_ERROR

/// Polynomial syntax error; `position` is the byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(ErrorKind::Input, what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }
  const char* name() const noexcept override { return "ParseError"; }

 private:
  std::size_t position_;
};

}  // namespace ncball
