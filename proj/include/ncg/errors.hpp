// SPDX-License-Identifier: MIT
// Copyright (c) 2026 The ncg-forge authors

#pragma once

#include <stdexcept>
#include <string>

namespace ncg {

// Malformed or inconsistent caller input.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// A structural invariant of a domain object is violated.
class InvariantError : public std::logic_error {
 public:
  explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

// Fourier support or Grassmann generators exhausted.
class CapacityError : public std::length_error {
 public:
  explicit CapacityError(const std::string& what) : std::length_error(what) {}
};

class DimensionError : public std::domain_error {
 public:
  explicit DimensionError(const std::string& what) : std::domain_error(what) {}
};

// Dirac operator cannot be split into Delta + J Delta J^-1.
class DecompositionError : public std::runtime_error {
 public:
  explicit DecompositionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ncg
