#include "optocool/quantum_noise.hpp"

#include <cmath>
#include <limits>

#include "optocool/errors.hpp"

namespace optocool {

namespace {
constexpr double nan_value = std::numeric_limits<double>::quiet_NaN();
}

double s_ff(double omega, const ModelParams& p) {
    if (!(p.kappa > 0.0))
        throw NonPositiveParameter("s_ff requires kappa > 0");
    const double alpha = coupling_alpha(p);
    const double shifted = omega + p.detuning;
    const double half_kappa = 0.5 * p.kappa;
    return alpha * alpha * p.kappa / (shifted * shifted + half_kappa * half_kappa);
}

RateSet golden_rule_rates(const ModelParams& p) {
    RateSet r;
    r.gamma_down = s_ff(p.omega_m, p);
    r.gamma_up = s_ff(-p.omega_m, p);
    r.gamma_opt = r.gamma_down - r.gamma_up;
    r.valid_weak_coupling = r.gamma_opt < 0.5 * p.kappa;
    r.n_min = nan_value;
    r.n_steady = nan_value;
    return r;
}

RateSet evaluate_rates(const ModelParams& p) {
    RateSet r = golden_rule_rates(p);
    if (r.gamma_opt > 0.0)
        r.n_min = r.gamma_up / r.gamma_opt;
    const double total = p.gamma_m + r.gamma_opt;
    if (total > 0.0)
        r.n_steady = (p.gamma_m * p.n_th + r.gamma_up) / total;
    return r;
}

double quantum_limit(const ModelParams& p) {
    const RateSet r = golden_rule_rates(p);
    if (!(r.gamma_opt > 0.0))
        throw NotCooling("gamma_opt <= 0: the light field does not cool at this detuning");
    return r.gamma_up / r.gamma_opt;
}

double optimal_detuning(double omega_m, double kappa) {
    if (!(omega_m > 0.0) || !(kappa > 0.0))
        throw NonPositiveParameter("optimal_detuning requires omega_m, kappa > 0");
    return -std::sqrt(omega_m * omega_m + 0.25 * kappa * kappa);
}

double min_phonon(double omega_m, double kappa) {
    if (!(omega_m > 0.0) || kappa < 0.0)
        throw NonPositiveParameter("min_phonon requires omega_m > 0 and kappa >= 0");
    // 0.5*(sqrt(1+x)-1) written as x/(2*(sqrt(1+x)+1)) to stay accurate in
    // the resolved-sideband limit x -> 0.
    const double x = 0.25 * (kappa / omega_m) * (kappa / omega_m);
    return 0.5 * x / (std::sqrt(1.0 + x) + 1.0);
}

double steady_state_phonon(const ModelParams& p) {
    const RateSet r = golden_rule_rates(p);
    const double total = p.gamma_m + r.gamma_opt;
    if (!(total > 0.0))
        throw Unstable("total damping gamma_m + gamma_opt <= 0");
    return (p.gamma_m * p.n_th + r.gamma_up) / total;
}

} // namespace optocool
