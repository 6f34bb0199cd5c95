#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "optocool/exec.hpp"
#include "optocool/params.hpp"

namespace optocool {

/// Linearized quantum Langevin dynamics of the coupled cavity fluctuation d
/// and cantilever mode c. The fluctuation vector is v = (d, d+, c, c+) and
/// evolves as v' = A v + inputs, with
///
///   d' = ( i*detuning - kappa/2) d + i alpha (c + c+) + sqrt(kappa)   d_in
///   c' = (-i*omega_m  - gamma/2) c + i alpha (d + d+) + sqrt(gamma_m) c_in
///
/// plus the conjugate rows. The counter-rotating coupling terms are kept:
/// they carry the quantum backaction that sets the cooling limit. Input
/// noise is Markovian with the cavity in vacuum and the mechanical bath at
/// occupation n_th.
struct DynamicalSystem {
    std::array<std::complex<double>, 16> drift{}; ///< row-major A, basis (d, d+, c, c+)
    double kappa = 0.0;
    double gamma_m = 0.0;
    double n_th = 0.0;             ///< mechanical input-noise occupation
    double cavity_occupation = 0.0; ///< optical input-noise occupation (vacuum)
};

DynamicalSystem build_system(const ModelParams& p);

std::array<std::complex<double>, 4> drift_eigenvalues(const DynamicalSystem& sys);

/// True when every drift eigenvalue has a negative real part.
bool is_stable(const DynamicalSystem& sys);

/// One hybridized mode: frequency = -Im(lambda), width (FWHM) = -2 Re(lambda).
struct Mode {
    double frequency = 0.0;
    double width = 0.0;
};

/// All four modes, sorted by descending frequency. At alpha = 0 these are
/// the bare cavity (|detuning|, kappa) and mechanical (omega_m, gamma_m)
/// modes and their mirror images; in strong coupling the two
/// positive-frequency modes split by 2*alpha at detuning = -omega_m.
std::array<Mode, 4> normal_modes(const DynamicalSystem& sys);

/// Displacement spectrum samples S_cc(omega) >= 0; the Fourier convention
/// puts the thermal mechanical peak at omega = -omega_m.
struct SpectrumGrid {
    std::vector<double> omegas;
    std::vector<double> values;
    ModelParams params; ///< parameter set the grid was produced from
};

/// Evaluates S_cc on a frequency grid. Throws UnstableSystem when any drift
/// eigenvalue has a nonnegative real part.
SpectrumGrid s_cc(const DynamicalSystem& sys, std::span<const double> omegas,
                  Exec exec = Exec::parallel);

/// Single-point evaluation (no stability check; prefer the grid form).
double s_cc_at(const DynamicalSystem& sys, double omega);

/// Phonon number from the steady-state second-moment (Lyapunov) solve.
double phonon_number_lyapunov(const DynamicalSystem& sys);

/// Phonon number from numerical quadrature of S_cc over the whole frequency
/// axis (integral of S_cc d omega / 2 pi), with panels concentrated around
/// every normal mode and a verification pass at tightened tolerance. Throws
/// QuadratureNotConverged when the refinement does not settle to 1e-5.
double phonon_number_quadrature(const DynamicalSystem& sys);

/// Both routes, cross-checked to 1e-4 relative agreement; returns the
/// Lyapunov value. Throws QuadratureNotConverged when the routes disagree.
double phonon_number(const DynamicalSystem& sys);

} // namespace optocool
