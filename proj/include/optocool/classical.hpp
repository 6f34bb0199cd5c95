#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "optocool/exec.hpp"
#include "optocool/params.hpp"

namespace optocool {

/// Time-lagged force model: the light-induced force relaxes toward its
/// instantaneous profile value with time constant tau,
///   F'(t) = (profile(x(t)) - F(t)) / tau.
struct LagForceModel {
    std::function<double(double)> force_profile; ///< F(x)
    double tau = 1.0;                            ///< force relaxation time
    double slope_at_working_point = 0.0;         ///< dF/dx at the linearization point
};

/// Cavity intensity at cantilever displacement x (in units of x_zpf):
/// i_max / (1 + (2 Delta(x)/kappa)^2) with Delta(x) = g0_ratio * omega_m * x.
double intensity_profile(double x_in_zpf, const ModelParams& p, double i_max);

/// Bolometric force profile f_max * I(x)/i_max (the peak intensity cancels).
double bolometric_force(double x_in_zpf, const ModelParams& p, double f_max);

/// Displacement x solving the static balance m omega_m^2 (x - x0) = F(x),
/// found by bracketing + bisection over the range the bounded force allows.
double solve_working_point(const std::function<double(double)>& force,
                           const ClassicalParams& cp, double omega_m);

/// Lag-force model for the bolometric profile, linearized about the solved
/// working point (analytic slope).
LagForceModel bolometric_force_model(const ModelParams& p, const ClassicalParams& cp);

/// Optomechanical damping rate of the lagged force,
///   gamma_opt = (slope / (m omega_m)) * omega_m tau / (1 + (omega_m tau)^2).
/// Positive slope (left of the resonance) gives extra damping; the effect
/// peaks at omega_m * tau = 1.
double gamma_opt_classical(double slope, double mass, double omega_m, double tau);

/// Light-shifted mechanical frequency
///   omega_tilde = sqrt(omega_m^2 - slope / (m (1 + (omega_m tau)^2))),
/// with the lag susceptibility evaluated at omega = omega_m. Throws
/// UnstableSpring when the effective spring constant is nonpositive.
double frequency_shift_classical(double slope, double mass, double omega_m, double tau);

/// T_eff = T * gamma_m / (gamma_m + gamma_opt). Throws NegativeTotalDamping
/// when the denominator is <= 0 (heating / instability regime).
double effective_temperature(double t_bath, double gamma_m, double gamma_opt);

struct ClassicalResult {
    double gamma_opt = 0.0;
    double omega_m_tilde = 0.0;
    double t_eff = 0.0;
};

/// Damping, shifted frequency and effective temperature from the model's
/// working-point slope.
ClassicalResult classical_summary(const LagForceModel& model, const ClassicalParams& cp,
                                  const ModelParams& p);

struct LangevinOptions {
    double duration = 0.0;       ///< total integration time
    double step = 0.0;           ///< integrator step; must be << min(1/omega_m, tau)
    std::uint64_t seed = 1;
    double burn_in_fraction = 0.2;
    int record_stride = 1;       ///< 0 disables trajectory recording
};

struct LangevinResult {
    std::vector<double> time;
    std::vector<double> position;
    std::vector<double> force;
    double mean_position = 0.0;
    double position_variance = 0.0;  ///< about the empirical mean, post burn-in
    double variance_std_error = 0.0; ///< batch-means standard error of the variance
};

/// Integrates the cantilever Langevin equation
///   m x'' = -m omega_m^2 (x - x0) - m gamma_m x' + F + xi(t)
/// coupled to the lagged force, with thermal white noise of spectral density
/// 2 m gamma_m k_B T (fluctuation-dissipation). Stochastic Heun scheme,
/// weak second order for this additive-noise system. Identical seeds give
/// bit-identical trajectories. Throws StepTooLarge / UnstableSpring.
LangevinResult simulate_langevin(const LagForceModel& model, const ClassicalParams& cp,
                                 const ModelParams& p, const LangevinOptions& opts);

struct EquipartitionEstimate {
    double variance = 0.0;       ///< ensemble-pooled <(x - xbar)^2>
    double std_error = 0.0;      ///< standard error of the pooled variance
    double t_eff_measured = 0.0; ///< m * omega_tilde^2 * variance
    double t_eff_std_error = 0.0;
};

/// Runs independent replicas (seeded deterministically from opts.seed) and
/// pools their variance estimates; the replica loop is the parallel kernel.
EquipartitionEstimate equipartition_ensemble(const LagForceModel& model,
                                             const ClassicalParams& cp, const ModelParams& p,
                                             const LangevinOptions& opts, int replicas,
                                             Exec exec = Exec::parallel);

} // namespace optocool
