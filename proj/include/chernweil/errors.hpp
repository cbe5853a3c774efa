#pragma once

#include <stdexcept>
#include <string>

namespace chernweil {

/// Base class for every error the engine raises on purpose.
struct EngineError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ChartMismatch : EngineError {
    using EngineError::EngineError;
};

struct RankMismatch : EngineError {
    using EngineError::EngineError;
};

struct GradeMismatch : EngineError {
    using EngineError::EngineError;
};

struct RankNotScalar : EngineError {
    using EngineError::EngineError;
};

/// A wedge product would push a Fourier mode outside the truncation band.
struct FrequencyOverflow : EngineError {
    int k_max;
    explicit FrequencyOverflow(int k)
        : EngineError("Fourier frequency outside the truncation band |k_i| <= " +
                      std::to_string(k)),
          k_max(k) {}
};

struct GradeOverflow : EngineError {
    using EngineError::EngineError;
};

struct NotClosed : EngineError {
    using EngineError::EngineError;
};

/// The input is closed but carries a nonzero harmonic part: it represents a
/// nontrivial cohomology class and has no potential. Carries the measured
/// residual so callers can report it as a finding.
struct HarmonicObstruction : EngineError {
    double residual;
    explicit HarmonicObstruction(double r)
        : EngineError("closed form has a nonzero harmonic part (residual " +
                      std::to_string(r) + ")"),
          residual(r) {}
};

struct TooManyOddArguments : EngineError {
    using EngineError::EngineError;
};

struct EndpointsNotFixed : EngineError {
    using EngineError::EngineError;
};

struct NotFlatFamily : EngineError {
    using EngineError::EngineError;
};

struct NotFlatSheet : EngineError {
    using EngineError::EngineError;
};

/// Scenario file violates the schema; `key` names the offending field.
struct SchemaError : EngineError {
    std::string key;
    SchemaError(std::string k, const std::string& msg)
        : EngineError(msg), key(std::move(k)) {}
};

struct ParseError : EngineError {
    using EngineError::EngineError;
};

}  // namespace chernweil
