// Copyright 2026 The ellfq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace ellfq {

// Raised when an input violates the documented preconditions of an operation.
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

// Raised when an internal cross-check fails (guard coefficients, exact division).
class ConsistencyError : public std::runtime_error {
 public:
  explicit ConsistencyError(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw PreconditionError(msg);
}

inline void ensure(bool cond, const std::string& msg) {
  if (!cond) throw ConsistencyError(msg);
}

}  // namespace ellfq
