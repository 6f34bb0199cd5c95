#pragma once

#include <optional>

namespace optocool {

/// Physical parameters of the driven cavity + mechanical oscillator, in the
/// internal unit system: hbar = k_B = 1 and every frequency or rate is a
/// multiple of the mechanical frequency, so omega_m == 1 after
/// normalization. Lengths enter only through the dimensionless coupling
/// scale g0_ratio = (omega_R/omega_m)*(x_zpf/L).
///
/// Immutable by convention after construction; safe to share across threads.
struct ModelParams {
    double omega_m = 1.0;  ///< mechanical angular frequency
    double kappa = 0.0;    ///< cavity ring-down (energy decay) rate
    double gamma_m = 0.0;  ///< intrinsic mechanical damping rate
    double n_th = 0.0;     ///< thermal bath occupation
    double n_p = 0.0;      ///< circulating photon number
    double g0_ratio = 0.0; ///< single-photon coupling scale
    double detuning = 0.0; ///< laser minus cavity resonance frequency

    /// Throws NonPositiveParameter when a field is out of its domain
    /// (omega_m, kappa > 0; gamma_m, n_th, n_p, g0_ratio >= 0; quality
    /// factor omega_m/gamma_m >= 1 whenever gamma_m > 0).
    void validate() const;
};

/// Raw inputs as they appear in config files: dimensionless ratios, with
/// exactly one member of each alternative pair set.
struct RawParams {
    std::optional<double> omega_m_over_kappa;
    std::optional<double> kappa_over_omega_m;
    std::optional<double> gamma_m_over_omega_m;
    std::optional<double> quality_factor;
    std::optional<double> n_th;
    std::optional<double> n_p;
    std::optional<double> g0_ratio;
    std::optional<double> detuning_over_omega_m;
};

/// Builds normalized ModelParams (omega_m scaled to 1) from raw ratios.
/// Throws MissingField / ConfigError / NonPositiveParameter.
ModelParams normalize(const RawParams& raw);

/// Rescales an already-assembled parameter set so that omega_m == 1. Fields
/// of an input that is normalized already pass through unchanged, making
/// the operation idempotent.
ModelParams normalize(const ModelParams& p);

/// Effective coupling frequency alpha = g0_ratio * sqrt(n_p) * omega_m set
/// by the circulating power.
double coupling_alpha(const ModelParams& p);

/// Parameters of the classical cantilever + bolometric force model. These
/// carry their own units (k_B = 1); only the intensity profile ties back to
/// ModelParams.
struct ClassicalParams {
    double mass = 1.0;          ///< effective cantilever mass
    double tau = 1.0;           ///< force relaxation time
    double f_max = 0.0;         ///< peak bolometric force
    double i_max = 1.0;         ///< peak intensity (cancels in ratios)
    double x_equilibrium = 0.0; ///< mechanical equilibrium without light
    double temperature = 0.0;   ///< bath temperature

    void validate() const; ///< mass, tau, i_max > 0; temperature >= 0
};

} // namespace optocool
