/**************************************************************************
 * error.hpp
 *
 * Copyright 2026 The aelcodes Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 **************************************************************************/

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace aelcodes {

enum class ErrorKind {
    NonPrimeCharacteristic,
    FieldTooLarge,
    FieldMismatch,
    DivisionByZero,
    DimensionMismatch,
    RankDeficient,
    EnumerationTooLarge,
    EmptyResidual,
    LengthMismatch,
    EmptySet,
    SubsetEnumerationTooLarge,
    RankFailure,
    SearchExhausted,
    NotAppropriate,
    FieldTooSmall,
    InvalidParameter,
    TargetUnreachable,
    ParallelEdgeExhaustion,
    ConvergenceFailure,
    InvalidGraph,
    NotAnOuterCodeword,
    GraphMismatch,
    InvalidBijection,
    AmplificationViolation,
    RadiusTooLarge,
    PrerequisiteNotVerified,
    DuplicateCodewords,
    SubsetTooSmall,
    ConfigInvalid,
    Io,
};

constexpr std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::NonPrimeCharacteristic: return "NonPrimeCharacteristic";
    case ErrorKind::FieldTooLarge: return "FieldTooLarge";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorKind::EmptyResidual: return "EmptyResidual";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::SubsetEnumerationTooLarge: return "SubsetEnumerationTooLarge";
    case ErrorKind::RankFailure: return "RankFailure";
    case ErrorKind::SearchExhausted: return "SearchExhausted";
    case ErrorKind::NotAppropriate: return "NotAppropriate";
    case ErrorKind::FieldTooSmall: return "FieldTooSmall";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::TargetUnreachable: return "TargetUnreachable";
    case ErrorKind::ParallelEdgeExhaustion: return "ParallelEdgeExhaustion";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::InvalidGraph: return "InvalidGraph";
    case ErrorKind::NotAnOuterCodeword: return "NotAnOuterCodeword";
    case ErrorKind::GraphMismatch: return "GraphMismatch";
    case ErrorKind::InvalidBijection: return "InvalidBijection";
    case ErrorKind::AmplificationViolation: return "AmplificationViolation";
    case ErrorKind::RadiusTooLarge: return "RadiusTooLarge";
    case ErrorKind::PrerequisiteNotVerified: return "PrerequisiteNotVerified";
    case ErrorKind::DuplicateCodewords: return "DuplicateCodewords";
    case ErrorKind::SubsetTooSmall: return "SubsetTooSmall";
    case ErrorKind::ConfigInvalid: return "ConfigInvalid";
    case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

/// Every library failure is reported through this type; `kind()` is stable,
/// the message carries context.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool condition, ErrorKind kind, const std::string& what)
{
    if (!condition) {
        fail(kind, what);
    }
}

} // namespace aelcodes
