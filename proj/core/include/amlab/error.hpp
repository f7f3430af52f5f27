#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace amlab {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Grid geometry or field-shape inconsistency.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A NaN or Inf was found where finite data is required.
class NonFiniteError : public Error {
 public:
  NonFiniteError(const std::string& what, std::array<int, 3> node, int component)
      : Error(what), node_(node), component_(component) {}

  std::array<int, 3> node() const { return node_; }
  int component() const { return component_; }

 private:
  std::array<int, 3> node_;
  int component_;
};

/// The input violates a physical precondition (non-solenoidal B, non-transverse A,
/// non-localized gauge function, wrong gauge tag, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A requested work buffer exceeds the configured memory budget.
class ResourceError : public Error {
 public:
  ResourceError(const std::string& what, std::size_t required_bytes)
      : Error(what), required_bytes_(required_bytes) {}
  std::size_t required_bytes() const { return required_bytes_; }

 private:
  std::size_t required_bytes_;
};

/// Unknown scenario name or invalid scenario parameters.
class ScenarioError : public Error {
 public:
  using Error::Error;
};

}  // namespace amlab
