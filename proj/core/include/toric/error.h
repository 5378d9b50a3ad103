// Copyright 2026 The Toric Mismatch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace toric {

/// Argument outside the mathematical domain of a formula (log of a
/// nonpositive number, rate outside (0, 1/2), ...).
class DomainError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// A coupling would be infinite because one of the channel probabilities is
/// exactly zero. Kept separate from DomainError so callers can tell the two
/// apart.
class InfiniteCouplingError : public DomainError {
   public:
    using DomainError::DomainError;
};

/// Malformed input: odd node counts, out-of-range indices, bad file format.
class StructuralError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// No perfect matching exists on the supplied graph.
class InfeasibleError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Exhaustive oracles refuse inputs larger than they can enumerate.
class SizeLimitError : public std::length_error {
   public:
    using std::length_error::length_error;
};

/// An operation was called on input that violates its documented precondition.
class PreconditionError : public std::logic_error {
   public:
    using std::logic_error::logic_error;
};

/// Monte Carlo curves do not bracket the transition.
class InsufficientDataError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

}  // namespace toric
