// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace scsa {

/// Base class for every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied parameter violates a documented precondition.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Input data is malformed (bad CSV, non-uniform sampling, non-finite values).
class DataError : public Error {
 public:
  using Error::Error;
};

/// A numerical post-condition did not hold (convergence failure, residual too large).
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace scsa
