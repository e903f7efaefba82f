// Copyright 2026 The symdisc Authors
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
#include <string_view>

namespace symdisc {

enum class ErrorKind {
    DimensionMismatch,
    DimensionTooLarge,
    NonFinite,
    NonHermitian,
    NoConvergence,
    Unitarity,
    Order,
    Degenerate,
    PhaseInconsistency,
    NegativeEntry,
    NotPositive,
    Trace,
    InvalidPhi0,
    Precondition,
    Normalization,
    Construction,
    Parse,
    Io,
};

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DimensionMismatch: return "dimension mismatch";
        case ErrorKind::DimensionTooLarge: return "dimension too large";
        case ErrorKind::NonFinite: return "non-finite entry";
        case ErrorKind::NonHermitian: return "hermiticity";
        case ErrorKind::NoConvergence: return "no convergence";
        case ErrorKind::Unitarity: return "unitarity";
        case ErrorKind::Order: return "order";
        case ErrorKind::Degenerate: return "degeneracy";
        case ErrorKind::PhaseInconsistency: return "phase inconsistency";
        case ErrorKind::NegativeEntry: return "nonnegativity";
        case ErrorKind::NotPositive: return "positivity";
        case ErrorKind::Trace: return "trace";
        case ErrorKind::InvalidPhi0: return "invalid phi0";
        case ErrorKind::Precondition: return "precondition";
        case ErrorKind::Normalization: return "normalization";
        case ErrorKind::Construction: return "construction";
        case ErrorKind::Parse: return "parse";
        case ErrorKind::Io: return "io";
    }
    return "unknown";
}

/// Every failure raised by the library carries a kind so front ends can map
/// it onto stable exit codes. The message always starts with the kind name.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail)
        : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace symdisc
