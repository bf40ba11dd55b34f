#pragma once

#include <stdexcept>
#include <string>

namespace comlim {

/// Base class for every error this library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A payoff that was assumed strictly concave in the own action is not.
class NonConcaveError : public Error {
 public:
  using Error::Error;
};

/// An operation requiring the regularity conditions RC1-RC3 was called on a
/// game where at least one of them fails.
class RcViolatedError : public Error {
 public:
  using Error::Error;
};

class BadParamsError : public Error {
 public:
  using Error::Error;
};

class EmptySetError : public Error {
 public:
  using Error::Error;
};

/// A commitment structure that must be a partition into intervals is not.
class NotSimpleError : public Error {
 public:
  using Error::Error;
};

class UnknownFamilyError : public Error {
 public:
  using Error::Error;
};

/// The elements of a commitment structure fail to cover the action grid.
class CoverError : public Error {
 public:
  using Error::Error;
};

class UnsupportedClassError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace comlim
