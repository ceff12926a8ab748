#pragma once

#include <stdexcept>
#include <string>

namespace evospread {

enum class ErrorKind {
    InvalidParams,
    DuplicateEdge,
    SelfLoop,
    NonPositiveWeight,
    Disconnected,
    RingTooSmall,
    GenerationFailed,
    TooLargeForExhaustive,
    NoClosedForm,
    NoZeroNode,
    PolicyViolatesAssumption2,
    MaxEventsExceeded,
    InvalidOrdering,
    SupportNotSeeded,
    UnsupportedPolicy,
    InsufficientData,
    InvalidBeta,
    TooLarge,
    SupportNotSubset,
    KTooLarge,
    NonHomogeneousPolicy,
    Unreachable,
    IoError,
    ParseError,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace evospread
