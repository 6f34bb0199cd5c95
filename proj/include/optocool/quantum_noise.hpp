#pragma once

#include "optocool/params.hpp"

namespace optocool {

/// Radiation-pressure force noise spectrum in rate-normalized form: the
/// zero-point / photon-number prefactors are folded in so that the
/// transition rates are simply gamma_down = s_ff(omega_m) and
/// gamma_up = s_ff(-omega_m). A Lorentzian of width kappa shifted by the
/// detuning, with amplitude alpha^2 = g0_ratio^2 * n_p * omega_m^2:
///
///   s_ff(omega) = alpha^2 * kappa / ((omega + detuning)^2 + (kappa/2)^2)
///
/// Nonnegative everywhere; peak value 4*alpha^2/kappa at omega = -detuning.
double s_ff(double omega, const ModelParams& p);

/// Golden-rule transition rates and the occupations derived from them.
/// gamma_opt == gamma_down - gamma_up always; n_min and n_steady are NaN
/// until filled by evaluate_rates (and stay NaN where undefined).
struct RateSet {
    double gamma_down = 0.0; ///< phonon absorption rate, s_ff(+omega_m)
    double gamma_up = 0.0;   ///< phonon emission rate, s_ff(-omega_m)
    double gamma_opt = 0.0;  ///< optomechanical damping, gamma_down - gamma_up
    double n_min = 0.0;      ///< quantum-limit occupation (cooling side only)
    double n_steady = 0.0;   ///< steady-state occupation (stable side only)
    /// True when gamma_opt < kappa/2; beyond that the weak-coupling rates
    /// stop being quantitative and the linearized dynamics take over.
    bool valid_weak_coupling = true;
};

/// Rates and weak-coupling flag only; n_min / n_steady are left NaN.
RateSet golden_rule_rates(const ModelParams& p);

/// Full evaluation: rates plus n_min (NaN when not cooling) and n_steady
/// (NaN when total damping <= 0).
RateSet evaluate_rates(const ModelParams& p);

/// Quantum limit n_min = gamma_up / gamma_opt on the phonon number.
/// Throws NotCooling when gamma_opt <= 0.
double quantum_limit(const ModelParams& p);

/// Detuning -sqrt(omega_m^2 + (kappa/2)^2) minimizing the quantum limit.
double optimal_detuning(double omega_m, double kappa);

/// Minimum reachable occupation over detuning,
/// (sqrt(1 + (kappa/2 omega_m)^2) - 1)/2, evaluated cancellation-free.
double min_phonon(double omega_m, double kappa);

/// Steady-state phonon number (gamma_m*n_th + gamma_up)/(gamma_m+gamma_opt),
/// the weighted average of thermal and quantum-limit occupations written in
/// the form that stays finite as gamma_opt -> 0. Throws Unstable when the
/// total damping is <= 0.
double steady_state_phonon(const ModelParams& p);

} // namespace optocool
