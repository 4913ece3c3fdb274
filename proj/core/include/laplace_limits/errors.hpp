#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace laplace_limits {

//! Base of every exception thrown by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

//! A precondition on an argument was violated (bad h, length mismatch, ...).
class InvalidArgument : public Error
{
public:
  using Error::Error;
};

//! The data itself cannot support the requested computation.
class DataError : public Error
{
public:
  using Error::Error;
};

class IsolatedVertexError : public DataError
{
public:
  explicit IsolatedVertexError(std::size_t index)
    : DataError("isolated vertex: point " + std::to_string(index) +
                " has no neighbor inside the kernel support")
    , index_(index)
  {}

  std::size_t index() const noexcept { return index_; }

private:
  std::size_t index_;
};

class EmptyNeighborhoodError : public DataError
{
public:
  using DataError::DataError;
};

//! A finite-difference stencil or query left the domain of a chart.
class ChartDomainError : public DataError
{
public:
  using DataError::DataError;
};

class OffManifoldError : public DataError
{
public:
  using DataError::DataError;
};

} // namespace laplace_limits
