// Copyright 2026 The ctnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>

namespace ctnn {

// Base type for everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidArgumentError : Error { using Error::Error; };
struct InvalidSignalError : Error { using Error::Error; };
struct InvalidGridError : Error { using Error::Error; };
struct OutOfRangeError : Error { using Error::Error; };

struct CyclicNetworkError : Error { using Error::Error; };
struct ArityMismatchError : Error { using Error::Error; };
struct InvalidNetworkError : Error { using Error::Error; };

struct InvalidSpecError : Error { using Error::Error; };
struct NonBooleanInputError : Error { using Error::Error; };

struct DivergedError : Error { using Error::Error; };

struct UnknownVariableError : Error { using Error::Error; };
struct BlockedError : Error { using Error::Error; };
struct NondeterministicChoiceError : Error { using Error::Error; };

struct ParseError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace ctnn
