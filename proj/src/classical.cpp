#include "optocool/classical.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "optocool/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace optocool {

double intensity_profile(double x_in_zpf, const ModelParams& p, double i_max) {
    if (!(p.kappa > 0.0))
        throw NonPositiveParameter("intensity_profile requires kappa > 0");
    const double detuning_x = p.g0_ratio * p.omega_m * x_in_zpf;
    const double u = 2.0 * detuning_x / p.kappa;
    return i_max / (1.0 + u * u);
}

double bolometric_force(double x_in_zpf, const ModelParams& p, double f_max) {
    return intensity_profile(x_in_zpf, p, f_max);
}

double solve_working_point(const std::function<double(double)>& force,
                           const ClassicalParams& cp, double omega_m) {
    cp.validate();
    const double k_spring = cp.mass * omega_m * omega_m;
    auto g = [&](double x) { return k_spring * (x - cp.x_equilibrium) - force(x); };

    // Any root lies within |x - x0| <= max|F| / k; scan twice that range.
    double f_scale = std::abs(force(cp.x_equilibrium));
    for (double x : {cp.x_equilibrium - 1.0, cp.x_equilibrium + 1.0})
        f_scale = std::max(f_scale, std::abs(force(x)));
    const double reach = 2.0 * (f_scale / k_spring + 1e-12) + 1.0;

    const int scan = 2048;
    double lo = cp.x_equilibrium - reach, hi = lo;
    double g_lo = g(lo);
    bool bracketed = false;
    for (int i = 1; i <= scan; ++i) {
        hi = cp.x_equilibrium - reach + 2.0 * reach * i / scan;
        const double g_hi = g(hi);
        if (g_lo <= 0.0 && g_hi >= 0.0) { bracketed = true; break; }
        lo = hi;
        g_lo = g_hi;
    }
    if (!bracketed)
        throw UnstableSpring("no static working point found in the scanned range");

    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) <= 0.0) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

LagForceModel bolometric_force_model(const ModelParams& p, const ClassicalParams& cp) {
    p.validate();
    cp.validate();
    LagForceModel model;
    model.tau = cp.tau;
    const double f_max = cp.f_max;
    model.force_profile = [p, f_max](double x) { return bolometric_force(x, p, f_max); };

    const double x_bar = solve_working_point(model.force_profile, cp, p.omega_m);
    const double du_dx = 2.0 * p.g0_ratio * p.omega_m / p.kappa;
    const double u = du_dx * x_bar;
    const double denom = 1.0 + u * u;
    model.slope_at_working_point = -f_max * 2.0 * u * du_dx / (denom * denom);
    return model;
}

double gamma_opt_classical(double slope, double mass, double omega_m, double tau) {
    if (!(mass > 0.0) || !(omega_m > 0.0) || !(tau > 0.0))
        throw NonPositiveParameter("gamma_opt_classical requires mass, omega_m, tau > 0");
    const double wt = omega_m * tau;
    return slope / (mass * omega_m) * wt / (1.0 + wt * wt);
}

double frequency_shift_classical(double slope, double mass, double omega_m, double tau) {
    if (!(mass > 0.0) || !(omega_m > 0.0) || !(tau > 0.0))
        throw NonPositiveParameter("frequency_shift_classical requires mass, omega_m, tau > 0");
    const double wt = omega_m * tau;
    const double arg = omega_m * omega_m - slope / (mass * (1.0 + wt * wt));
    if (!(arg > 0.0))
        throw UnstableSpring("light-shifted spring constant is nonpositive");
    return std::sqrt(arg);
}

double effective_temperature(double t_bath, double gamma_m, double gamma_opt) {
    const double total = gamma_m + gamma_opt;
    if (!(total > 0.0))
        throw NegativeTotalDamping("gamma_m + gamma_opt <= 0");
    return t_bath * gamma_m / total;
}

ClassicalResult classical_summary(const LagForceModel& model, const ClassicalParams& cp,
                                  const ModelParams& p) {
    ClassicalResult r;
    r.gamma_opt = gamma_opt_classical(model.slope_at_working_point, cp.mass, p.omega_m, model.tau);
    r.omega_m_tilde =
        frequency_shift_classical(model.slope_at_working_point, cp.mass, p.omega_m, model.tau);
    r.t_eff = effective_temperature(cp.temperature, p.gamma_m, r.gamma_opt);
    return r;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

} // namespace

LangevinResult simulate_langevin(const LagForceModel& model, const ClassicalParams& cp,
                                 const ModelParams& p, const LangevinOptions& opts) {
    cp.validate();
    if (!model.force_profile)
        throw ConfigError("simulate_langevin requires a force profile");
    if (!(model.tau > 0.0))
        throw NonPositiveParameter("simulate_langevin requires tau > 0");
    if (!(opts.duration > 0.0) || !(opts.step > 0.0))
        throw NonPositiveParameter("duration and step must be positive");
    if (!(opts.burn_in_fraction >= 0.0) || !(opts.burn_in_fraction < 1.0))
        throw ConfigError("burn_in_fraction must lie in [0, 1)");
    const double step_limit = 0.25 * std::min(1.0 / p.omega_m, model.tau);
    if (opts.step > step_limit)
        throw StepTooLarge("step " + std::to_string(opts.step) + " exceeds 0.25*min(1/omega_m, tau)");
    // Fail early when the linearized spring is already unstable.
    (void)frequency_shift_classical(model.slope_at_working_point, cp.mass, p.omega_m, model.tau);

    const double x_bar = solve_working_point(model.force_profile, cp, p.omega_m);
    const double w2 = p.omega_m * p.omega_m;
    const double inv_mass = 1.0 / cp.mass;
    const double inv_tau = 1.0 / model.tau;
    const double sigma_v = std::sqrt(2.0 * p.gamma_m * cp.temperature * inv_mass);
    const double h = opts.step;
    const double sqrt_h = std::sqrt(h);
    const long steps = static_cast<long>(std::ceil(opts.duration / h));
    const long burn = static_cast<long>(opts.burn_in_fraction * steps);
    const double blow_up = std::abs(x_bar) + 1e6 * (1.0 + std::abs(cp.x_equilibrium));

    std::mt19937_64 rng(splitmix64(opts.seed));
    std::normal_distribution<double> gauss(0.0, 1.0);

    double x = x_bar, v = 0.0, f = model.force_profile(x_bar);

    auto drift_v = [&](double xx, double vv, double ff) {
        return -w2 * (xx - cp.x_equilibrium) - p.gamma_m * vv + ff * inv_mass;
    };

    LangevinResult res;
    if (opts.record_stride > 0) {
        const std::size_t n_rec = static_cast<std::size_t>(steps / opts.record_stride) + 1;
        res.time.reserve(n_rec);
        res.position.reserve(n_rec);
        res.force.reserve(n_rec);
    }

    // Batch means for the standard error of the variance estimate.
    constexpr int n_batches = 64;
    double batch_sum[n_batches] = {0.0}, batch_sum2[n_batches] = {0.0};
    long batch_count[n_batches] = {0};
    const long kept = steps - burn;
    double sum_u = 0.0, sum_u2 = 0.0;

    for (long k = 0; k < steps; ++k) {
        if (opts.record_stride > 0 && k % opts.record_stride == 0) {
            res.time.push_back(k * h);
            res.position.push_back(x);
            res.force.push_back(f);
        }
        const double dw = sigma_v * sqrt_h * gauss(rng);

        // Stochastic Heun: Euler predictor, trapezoidal corrector, shared
        // noise increment (additive noise).
        const double kx1 = v;
        const double kv1 = drift_v(x, v, f);
        const double kf1 = (model.force_profile(x) - f) * inv_tau;
        const double xp = x + h * kx1;
        const double vp = v + h * kv1 + dw;
        const double fp = f + h * kf1;
        const double kx2 = vp;
        const double kv2 = drift_v(xp, vp, fp);
        const double kf2 = (model.force_profile(xp) - fp) * inv_tau;
        x += 0.5 * h * (kx1 + kx2);
        v += 0.5 * h * (kv1 + kv2) + dw;
        f += 0.5 * h * (kf1 + kf2);

        if (std::abs(x) > blow_up)
            throw UnstableSpring("trajectory diverged; spring destabilized by the light force");

        if (k >= burn) {
            const double u = x - x_bar;
            sum_u += u;
            sum_u2 += u * u;
            const int b = static_cast<int>(((k - burn) * n_batches) / kept);
            batch_sum[b] += u;
            batch_sum2[b] += u * u;
            batch_count[b] += 1;
        }
    }

    const double n = static_cast<double>(kept);
    const double mean_u = sum_u / n;
    res.mean_position = x_bar + mean_u;
    res.position_variance = sum_u2 / n - mean_u * mean_u;

    double se2 = 0.0;
    int used = 0;
    for (int b = 0; b < n_batches; ++b) {
        if (batch_count[b] == 0) continue;
        const double nb = static_cast<double>(batch_count[b]);
        const double var_b = batch_sum2[b] / nb - 2.0 * mean_u * batch_sum[b] / nb + mean_u * mean_u;
        const double d = var_b - res.position_variance;
        se2 += d * d;
        ++used;
    }
    if (used > 1)
        res.variance_std_error = std::sqrt(se2 / (static_cast<double>(used) *
                                                  static_cast<double>(used - 1)));
    return res;
}

EquipartitionEstimate equipartition_ensemble(const LagForceModel& model,
                                             const ClassicalParams& cp, const ModelParams& p,
                                             const LangevinOptions& opts, int replicas,
                                             Exec exec) {
    if (replicas < 2)
        throw ConfigError("equipartition_ensemble requires >= 2 replicas");

    std::vector<double> variances(replicas, 0.0);
    std::vector<std::string> failures(replicas);

    auto run_one = [&](int r) {
        try {
            LangevinOptions o = opts;
            o.seed = splitmix64(opts.seed ^ (0x517CC1B727220A95ull * (r + 1)));
            o.record_stride = 0;
            variances[r] = simulate_langevin(model, cp, p, o).position_variance;
        } catch (const std::exception& e) {
            failures[r] = e.what();
        }
    };

    if (exec == Exec::parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (int r = 0; r < replicas; ++r) run_one(r);
    } else {
        for (int r = 0; r < replicas; ++r) run_one(r);
    }
    for (const std::string& f : failures)
        if (!f.empty()) throw UnstableSpring(f);

    double mean = 0.0;
    for (double v : variances) mean += v;
    mean /= replicas;
    double var_of_var = 0.0;
    for (double v : variances) var_of_var += (v - mean) * (v - mean);
    var_of_var /= (replicas - 1.0);

    EquipartitionEstimate est;
    est.variance = mean;
    est.std_error = std::sqrt(var_of_var / replicas);
    const double w_tilde =
        frequency_shift_classical(model.slope_at_working_point, cp.mass, p.omega_m, model.tau);
    est.t_eff_measured = cp.mass * w_tilde * w_tilde * est.variance;
    est.t_eff_std_error = cp.mass * w_tilde * w_tilde * est.std_error;
    return est;
}

} // namespace optocool
