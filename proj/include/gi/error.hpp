#pragma once

#include <stdexcept>
#include <string>

namespace gi {

enum class ErrorCode {
    DisconnectedGraph,
    QuotaExceedsColors,
    TooManyColors,
    InfeasibleQuota,
    BackendUnavailable,
    ModelRejected,
    Timeout,
    ParseError,
    InvalidId,
    NegativeWeight,
    KTooLarge,
    NoEmbedding,
    EmptyInitNoFallback,
    LimitExceeded,
    CirculationDetected,
    DegenerateInstance,
    NotEulerian,
    StartOffSupport,
    IoError,
    InvalidConfig,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace gi
