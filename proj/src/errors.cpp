#include "evospread/errors.hpp"

namespace evospread {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::DuplicateEdge: return "DuplicateEdge";
    case ErrorKind::SelfLoop: return "SelfLoop";
    case ErrorKind::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::RingTooSmall: return "RingTooSmall";
    case ErrorKind::GenerationFailed: return "GenerationFailed";
    case ErrorKind::TooLargeForExhaustive: return "TooLargeForExhaustive";
    case ErrorKind::NoClosedForm: return "NoClosedForm";
    case ErrorKind::NoZeroNode: return "NoZeroNode";
    case ErrorKind::PolicyViolatesAssumption2: return "PolicyViolatesAssumption2";
    case ErrorKind::MaxEventsExceeded: return "MaxEventsExceeded";
    case ErrorKind::InvalidOrdering: return "InvalidOrdering";
    case ErrorKind::SupportNotSeeded: return "SupportNotSeeded";
    case ErrorKind::UnsupportedPolicy: return "UnsupportedPolicy";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::InvalidBeta: return "InvalidBeta";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::SupportNotSubset: return "SupportNotSubset";
    case ErrorKind::KTooLarge: return "KTooLarge";
    case ErrorKind::NonHomogeneousPolicy: return "NonHomogeneousPolicy";
    case ErrorKind::Unreachable: return "Unreachable";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace evospread
