// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace graphforge {

/// Base class for all graphforge errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Model parameters that can never produce the requested output
/// (invalid probability, m over capacity, odd degree sum, ...).
class InfeasibleError : public Error {
public:
    using Error::Error;
};

/// Input of the wrong kind for an operation (directed graph passed to an
/// undirected-only statistic, out-of-range node id, malformed file).
class InvalidInputError : public Error {
public:
    using Error::Error;
};

/// A retry budget was exhausted (rejection sampling, connectivity retries).
class BudgetExceededError : public Error {
public:
    using Error::Error;
};

}  // namespace graphforge
