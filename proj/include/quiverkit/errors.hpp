#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace quiverkit {

enum class ErrorKind {
    InvalidArgument,
    UnknownVertex,
    VertexMismatch,
    CyclicQuiver,
    DisconnectedQuiver,
    PairingNonzero,
    Divisible,
    AssumptionViolated,
    UnsupportedDimensionVector,
    QuiverMismatch,
    BudgetExceeded,
    NotThinAtEndpoints,
};

constexpr std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::UnknownVertex: return "UnknownVertex";
    case ErrorKind::VertexMismatch: return "VertexMismatch";
    case ErrorKind::CyclicQuiver: return "CyclicQuiver";
    case ErrorKind::DisconnectedQuiver: return "DisconnectedQuiver";
    case ErrorKind::PairingNonzero: return "PairingNonzero";
    case ErrorKind::Divisible: return "Divisible";
    case ErrorKind::AssumptionViolated: return "AssumptionViolated";
    case ErrorKind::UnsupportedDimensionVector: return "UnsupportedDimensionVector";
    case ErrorKind::QuiverMismatch: return "QuiverMismatch";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NotThinAtEndpoints: return "NotThinAtEndpoints";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace quiverkit
