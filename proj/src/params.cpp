#include "optocool/params.hpp"

#include <cmath>
#include <string>

#include "optocool/errors.hpp"

namespace optocool {

namespace {

void require_finite_positive(double v, const char* name) {
    if (!std::isfinite(v) || v <= 0.0)
        throw NonPositiveParameter(std::string(name) + " must be positive and finite");
}

void require_finite_nonnegative(double v, const char* name) {
    if (!std::isfinite(v) || v < 0.0)
        throw NonPositiveParameter(std::string(name) + " must be nonnegative and finite");
}

} // namespace

void ModelParams::validate() const {
    require_finite_positive(omega_m, "omega_m");
    require_finite_positive(kappa, "kappa");
    require_finite_nonnegative(gamma_m, "gamma_m");
    require_finite_nonnegative(n_th, "n_th");
    require_finite_nonnegative(n_p, "n_p");
    require_finite_nonnegative(g0_ratio, "g0_ratio");
    if (!std::isfinite(detuning))
        throw NonPositiveParameter("detuning must be finite");
    if (gamma_m > 0.0 && omega_m / gamma_m < 1.0)
        throw NonPositiveParameter("quality factor omega_m/gamma_m must be >= 1");
}

void ClassicalParams::validate() const {
    require_finite_positive(mass, "mass");
    require_finite_positive(tau, "tau");
    require_finite_positive(i_max, "i_max");
    require_finite_nonnegative(temperature, "temperature");
    if (!std::isfinite(f_max))
        throw NonPositiveParameter("f_max must be finite");
    if (!std::isfinite(x_equilibrium))
        throw NonPositiveParameter("x_equilibrium must be finite");
}

ModelParams normalize(const RawParams& raw) {
    ModelParams p;
    p.omega_m = 1.0;

    if (raw.omega_m_over_kappa && raw.kappa_over_omega_m)
        throw ConfigError("set omega_m_over_kappa or kappa_over_omega_m, not both");
    if (raw.omega_m_over_kappa) {
        require_finite_positive(*raw.omega_m_over_kappa, "omega_m_over_kappa");
        p.kappa = 1.0 / *raw.omega_m_over_kappa;
    } else if (raw.kappa_over_omega_m) {
        p.kappa = *raw.kappa_over_omega_m;
    } else {
        throw MissingField("one of omega_m_over_kappa / kappa_over_omega_m is required");
    }

    if (raw.gamma_m_over_omega_m && raw.quality_factor)
        throw ConfigError("set gamma_m_over_omega_m or quality_factor, not both");
    if (raw.gamma_m_over_omega_m) {
        p.gamma_m = *raw.gamma_m_over_omega_m;
    } else if (raw.quality_factor) {
        require_finite_positive(*raw.quality_factor, "quality_factor");
        p.gamma_m = 1.0 / *raw.quality_factor;
    } else {
        throw MissingField("one of gamma_m_over_omega_m / quality_factor is required");
    }

    if (!raw.n_th)
        throw MissingField("n_th is required");
    p.n_th = *raw.n_th;

    if (!raw.g0_ratio)
        throw MissingField("g0_ratio is required");
    p.g0_ratio = *raw.g0_ratio;

    p.n_p = raw.n_p.value_or(0.0);
    p.detuning = raw.detuning_over_omega_m.value_or(0.0);

    p.validate();
    return p;
}

ModelParams normalize(const ModelParams& p) {
    require_finite_positive(p.omega_m, "omega_m");
    ModelParams out = p;
    const double scale = p.omega_m;
    out.omega_m = 1.0;
    out.kappa = p.kappa / scale;
    out.gamma_m = p.gamma_m / scale;
    out.detuning = p.detuning / scale;
    out.validate();
    return out;
}

double coupling_alpha(const ModelParams& p) {
    return p.g0_ratio * std::sqrt(p.n_p) * p.omega_m;
}

} // namespace optocool
