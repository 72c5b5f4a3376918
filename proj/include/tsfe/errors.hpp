#pragma once

#include <stdexcept>
#include <string>

namespace tsfe {

struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidBernstein : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ScalingViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RangeError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

struct Unsupported : std::logic_error {
    using std::logic_error::logic_error;
};

struct GridMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct FixtureDrift : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace tsfe
