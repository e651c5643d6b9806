// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace oppenheim {

// Error taxonomy. Exit-code mapping for the CLI lives in cli.hpp:
// parse errors -> 2, domain errors -> 3, budget exhaustion -> 4.

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IndexError : DomainError {
    using DomainError::DomainError;
};

struct InvalidProfile : DomainError {
    using DomainError::DomainError;
};

struct NotUnimodular : DomainError {
    using DomainError::DomainError;
};

struct BadGenerator : DomainError {
    using DomainError::DomainError;
};

// A decimal oracle returned digits disagreeing with an earlier, shorter call.
struct OracleContradiction : DomainError {
    using DomainError::DomainError;
};

// Budget-class errors: the computation is sound but ran out of precision or
// iterations. Never a wrong answer, only a refusal.
struct PrecisionExhausted : std::runtime_error {
    std::int64_t reached;  // last index (or precision) that was certified
    explicit PrecisionExhausted(const std::string& what, std::int64_t reached_ = -1)
        : std::runtime_error(what), reached(reached_) {}
};

struct DiscriminantUndecided : PrecisionExhausted {
    using PrecisionExhausted::PrecisionExhausted;
};

struct NoSolutionWithinHorizon : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace oppenheim
