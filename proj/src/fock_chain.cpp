#include "optocool/fock_chain.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "optocool/errors.hpp"

namespace optocool {

FockChain build_chain(const RateSet& rates, double gamma_m, double n_th, int n_max) {
    if (n_max < 2)
        throw ConfigError("build_chain requires n_max >= 2");
    if (rates.gamma_down < 0.0 || rates.gamma_up < 0.0 || gamma_m < 0.0 || n_th < 0.0)
        throw NegativeRate("chain coefficients must be nonnegative");
    FockChain c;
    c.n_max = n_max;
    c.down_coeff = rates.gamma_down + gamma_m * (n_th + 1.0);
    c.up_coeff = rates.gamma_up + gamma_m * n_th;
    return c;
}

double PopulationState::total() const {
    double s = 0.0;
    for (double p : probabilities) s += p;
    return s;
}

double PopulationState::mean() const {
    double m = 0.0;
    for (std::size_t n = 0; n < probabilities.size(); ++n)
        m += static_cast<double>(n) * probabilities[n];
    return m;
}

PopulationState geometric_state(double mean, int n_max) {
    if (mean < 0.0)
        throw NegativeRate("geometric_state requires mean >= 0");
    PopulationState s;
    s.probabilities.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
    const double r = mean / (1.0 + mean);
    double p = 1.0, sum = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        s.probabilities[n] = p;
        sum += p;
        p *= r;
    }
    for (double& q : s.probabilities) q /= sum;
    return s;
}

PopulationState steady_state(const FockChain& chain, double tail_threshold) {
    if (chain.down_coeff == 0.0 && chain.up_coeff == 0.0)
        throw NegativeRate("steady_state requires at least one nonzero rate");
    if (chain.up_coeff >= chain.down_coeff)
        throw Unstable("no normalizable stationary state: up rate >= down rate");

    const double r = chain.balance_ratio();
    PopulationState s;
    s.probabilities.assign(static_cast<std::size_t>(chain.n_max) + 1, 0.0);
    double p = 1.0, sum = 0.0;
    for (int n = 0; n <= chain.n_max; ++n) {
        s.probabilities[n] = p;
        sum += p;
        p *= r;
    }
    for (double& q : s.probabilities) q /= sum;

    if (s.probabilities.back() > tail_threshold)
        throw CutoffTooSmall("top-level population " + std::to_string(s.probabilities.back()) +
                             " exceeds tail threshold");
    return s;
}

int suggested_cutoff(double expected_mean) {
    return std::max(50, static_cast<int>(std::ceil(20.0 * expected_mean)));
}

PopulationState steady_state_auto(const RateSet& rates, double gamma_m, double n_th,
                                  double tail_threshold, int n_max_cap) {
    FockChain probe = build_chain(rates, gamma_m, n_th, 2);
    if (probe.up_coeff >= probe.down_coeff)
        throw Unstable("no normalizable stationary state: up rate >= down rate");
    const double r = probe.balance_ratio();
    const double expected = r / (1.0 - r);
    int n_max = suggested_cutoff(expected);
    for (;;) {
        try {
            return steady_state(build_chain(rates, gamma_m, n_th, n_max), tail_threshold);
        } catch (const CutoffTooSmall&) {
            if (n_max >= n_max_cap) throw;
            n_max = std::min(n_max_cap, 2 * n_max);
        }
    }
}

double evolve_mean(double n0, const RateSet& rates, double gamma_m, double n_th, double t) {
    const double total = gamma_m + rates.gamma_opt;
    if (!(total > 0.0))
        throw Unstable("total damping gamma_m + gamma_opt <= 0");
    const double n_inf = (gamma_m * n_th + rates.gamma_up) / total;
    return n_inf + (n0 - n_inf) * std::exp(-total * t);
}

namespace {

// Generator application dp/dt = L p. Column sums of L vanish by
// construction, so conservative schemes keep sum(p) = 1 to roundoff.
void apply_generator(const FockChain& c, const std::vector<double>& p, std::vector<double>& out) {
    const int n_max = c.n_max;
    for (int n = 0; n <= n_max; ++n) {
        double v = -(c.down_rate(n) + c.up_rate(n)) * p[n];
        if (n < n_max) v += c.down_rate(n + 1) * p[n + 1];
        if (n > 0) v += c.up_rate(n - 1) * p[n - 1];
        out[n] = v;
    }
}

// Thomas solve of the tridiagonal system (I - h/2 L) x = rhs. The matrix is
// an M-matrix with unit column-dominance excess, so elimination without
// pivoting is stable.
void solve_implicit_half_step(const FockChain& c, double h, std::vector<double>& rhs,
                              std::vector<double>& diag, std::vector<double>& upper) {
    const int n_max = c.n_max;
    const double s = 0.5 * h;
    for (int n = 0; n <= n_max; ++n) {
        diag[n] = 1.0 + s * (c.down_rate(n) + c.up_rate(n));
        if (n < n_max) upper[n] = -s * c.down_rate(n + 1);
    }
    for (int n = 1; n <= n_max; ++n) {
        const double lower = -s * c.up_rate(n - 1);
        const double f = lower / diag[n - 1];
        diag[n] -= f * upper[n - 1];
        rhs[n] -= f * rhs[n - 1];
    }
    rhs[n_max] /= diag[n_max];
    for (int n = n_max - 1; n >= 0; --n)
        rhs[n] = (rhs[n] - upper[n] * rhs[n + 1]) / diag[n];
}

} // namespace

ChainEvolution evolve_chain(const FockChain& chain, PopulationState initial,
                            std::span<const double> times) {
    if (static_cast<int>(initial.probabilities.size()) != chain.n_max + 1)
        throw ConfigError("initial state size does not match chain cutoff");

    ChainEvolution ev;
    ev.times.assign(times.begin(), times.end());
    ev.means.reserve(times.size());

    // Trapezoidal (Crank-Nicolson) stepping: unconditionally stable, so the
    // step follows the observable relaxation scale instead of the stiff
    // per-level exit rates, and 1^T L = 0 makes it conserve sum(p) exactly.
    const double rate_scale = std::max(std::abs(chain.down_coeff - chain.up_coeff),
                                       0.05 * (chain.down_coeff + chain.up_coeff));
    const double dt_max = rate_scale > 0.0 ? 1e-3 / rate_scale : 1.0;

    std::vector<double>& p = initial.probabilities;
    const std::size_t m = p.size();
    std::vector<double> lp(m), diag(m), upper(m);

    double t = 0.0;
    double prev_sample = 0.0;
    for (double t_target : times) {
        if (t_target < prev_sample)
            throw ConfigError("sample times must be ascending");
        prev_sample = t_target;
        while (t < t_target) {
            const double h = std::min(dt_max, t_target - t);
            apply_generator(chain, p, lp);
            for (std::size_t i = 0; i < m; ++i) p[i] += 0.5 * h * lp[i];
            solve_implicit_half_step(chain, h, p, diag, upper);
            t += h;

            double sum = 0.0;
            for (double q : p) sum += q;
            ev.max_total_drift = std::max(ev.max_total_drift, std::abs(sum - 1.0));
        }
        double mean = 0.0;
        for (std::size_t n = 0; n < m; ++n) mean += static_cast<double>(n) * p[n];
        ev.means.push_back(mean);
    }
    ev.final_state.probabilities = std::move(initial.probabilities);
    return ev;
}

} // namespace optocool
