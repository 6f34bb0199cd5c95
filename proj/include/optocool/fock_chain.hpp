#pragma once

#include <span>
#include <vector>

#include "optocool/quantum_noise.hpp"

namespace optocool {

/// Birth-death generator over phonon populations p_n, n = 0..n_max, obtained
/// by restricting the Lindblad master equation to the diagonal of the
/// density matrix. Downward jumps n -> n-1 occur at n*down_coeff, upward
/// jumps n -> n+1 at (n+1)*up_coeff; the upward rate out of n_max is
/// clipped so the truncated generator conserves probability exactly.
struct FockChain {
    int n_max = 0;
    double down_coeff = 0.0; ///< gamma_down + gamma_m*(n_th + 1)
    double up_coeff = 0.0;   ///< gamma_up + gamma_m*n_th

    double down_rate(int n) const { return n * down_coeff; }
    double up_rate(int n) const { return n >= n_max ? 0.0 : (n + 1) * up_coeff; }

    /// Adjacent-level detailed-balance ratio p_{n+1}/p_n, independent of n.
    double balance_ratio() const { return up_coeff / down_coeff; }
};

/// Assembles the chain from golden-rule rates plus the thermal bath.
/// Throws NegativeRate on any negative coefficient, ConfigError for n_max < 2.
FockChain build_chain(const RateSet& rates, double gamma_m, double n_th, int n_max);

/// Populations over Fock levels with helpers for the low moments.
struct PopulationState {
    std::vector<double> probabilities;

    double total() const;
    double mean() const;
};

/// Truncated geometric distribution with the requested mean (useful as an
/// initial state for relaxation runs).
PopulationState geometric_state(double mean, int n_max);

/// Stationary distribution of the chain via the detailed-balance recursion.
/// Throws CutoffTooSmall when the top-level population exceeds
/// tail_threshold, Unstable when no normalizable stationary state exists
/// (up_coeff >= down_coeff).
PopulationState steady_state(const FockChain& chain, double tail_threshold = 1e-8);

/// Cutoff heuristic: max(50, ceil(20 * expected_mean)).
int suggested_cutoff(double expected_mean);

/// steady_state with automatic cutoff selection, doubling n_max until the
/// tail criterion holds or n_max_cap is exceeded.
PopulationState steady_state_auto(const RateSet& rates, double gamma_m, double n_th,
                                  double tail_threshold = 1e-8,
                                  int n_max_cap = (1 << 21));

/// Closed-form relaxation of the mean phonon number,
///   n(t) = n_inf + (n0 - n_inf) * exp(-(gamma_m + gamma_opt) t).
/// Throws Unstable when the total damping is <= 0.
double evolve_mean(double n0, const RateSet& rates, double gamma_m, double n_th, double t);

/// Full-chain RK4 time evolution sampled at the requested times
/// (nonnegative, ascending). max_total_drift records the worst deviation of
/// sum(p) from 1 seen at any integrator step.
struct ChainEvolution {
    std::vector<double> times;
    std::vector<double> means;
    PopulationState final_state;
    double max_total_drift = 0.0;
};

ChainEvolution evolve_chain(const FockChain& chain, PopulationState initial,
                            std::span<const double> times);

} // namespace optocool
