#pragma once

#include <stdexcept>

namespace optocool {

/// Base class of every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input / configuration errors (CLI exit code 2).
struct NonPositiveParameter : Error { using Error::Error; };
struct MissingField : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

// Classical lag model.
struct UnstableSpring : Error { using Error::Error; };
struct NegativeTotalDamping : Error { using Error::Error; };
struct StepTooLarge : Error { using Error::Error; };

// Quantum-noise rates.
struct NotCooling : Error { using Error::Error; };
struct Unstable : Error { using Error::Error; };

// Truncated Fock chain.
struct NegativeRate : Error { using Error::Error; };
struct CutoffTooSmall : Error { using Error::Error; };

// Linearized dynamics.
struct UnstableSystem : Error { using Error::Error; };
struct QuadratureNotConverged : Error { using Error::Error; };
struct SingularMatrix : Error { using Error::Error; };

} // namespace optocool
