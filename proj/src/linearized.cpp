#include "optocool/linearized.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "linalg.hpp"
#include "optocool/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace optocool {

using linalg::cplx;
using linalg::Mat4;

DynamicalSystem build_system(const ModelParams& p) {
    p.validate();
    const double alpha = coupling_alpha(p);
    const cplx i{0.0, 1.0};

    DynamicalSystem sys;
    sys.kappa = p.kappa;
    sys.gamma_m = p.gamma_m;
    sys.n_th = p.n_th;

    auto& a = sys.drift;
    auto at = [&a](int r, int c) -> cplx& { return a[r * 4 + c]; };

    at(0, 0) = i * p.detuning - 0.5 * p.kappa;
    at(0, 2) = i * alpha;
    at(0, 3) = i * alpha;

    at(1, 1) = -i * p.detuning - 0.5 * p.kappa;
    at(1, 2) = -i * alpha;
    at(1, 3) = -i * alpha;

    at(2, 2) = -i * p.omega_m - 0.5 * p.gamma_m;
    at(2, 0) = i * alpha;
    at(2, 1) = i * alpha;

    at(3, 3) = i * p.omega_m - 0.5 * p.gamma_m;
    at(3, 0) = -i * alpha;
    at(3, 1) = -i * alpha;

    return sys;
}

std::array<cplx, 4> drift_eigenvalues(const DynamicalSystem& sys) {
    return linalg::eigenvalues4(sys.drift);
}

bool is_stable(const DynamicalSystem& sys) {
    for (const cplx& lambda : drift_eigenvalues(sys))
        if (lambda.real() >= 0.0) return false;
    return true;
}

std::array<Mode, 4> normal_modes(const DynamicalSystem& sys) {
    const auto ev = drift_eigenvalues(sys);
    std::array<Mode, 4> modes;
    for (int k = 0; k < 4; ++k)
        modes[k] = Mode{-ev[k].imag(), -2.0 * ev[k].real()};
    std::sort(modes.begin(), modes.end(),
              [](const Mode& x, const Mode& y) { return x.frequency > y.frequency; });
    return modes;
}

namespace {

void require_stable(const DynamicalSystem& sys) {
    if (!is_stable(sys))
        throw UnstableSystem("drift matrix has an eigenvalue with nonnegative real part "
                             "(anti-damped / self-oscillating regime)");
}

// Row (c+) of the Green's function G(omega) = (-i omega I - A)^{-1},
// obtained from the transposed solve (-i omega I - A)^T y = e_3.
std::array<cplx, 4> green_row_cdag(const Mat4& drift, double omega) {
    Mat4 mt{};
    const cplx diag{0.0, -omega};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            mt[r * 4 + c] = -drift[c * 4 + r]; // transpose of (-A)
            if (r == c) mt[r * 4 + c] += diag;
        }
    return linalg::solve4(mt, {cplx{}, cplx{}, cplx{}, cplx{1.0, 0.0}});
}

} // namespace

double s_cc_at(const DynamicalSystem& sys, double omega) {
    // S_cc(omega) = kappa |G_{c+,d}|^2 + gamma (n_th+1) |G_{c+,c}|^2
    //             + gamma n_th |G_{c+,c+}|^2,
    // which is the (c+, c) entry of G(omega) Q G(-omega)^T written in the
    // manifestly nonnegative form using the conjugation symmetry of the
    // drift. The cavity channel enters with its vacuum occupation.
    const auto row = green_row_cdag(sys.drift, omega);
    const double nc = sys.cavity_occupation;
    return sys.kappa * ((nc + 1.0) * std::norm(row[0]) + nc * std::norm(row[1])) +
           sys.gamma_m * (sys.n_th + 1.0) * std::norm(row[2]) +
           sys.gamma_m * sys.n_th * std::norm(row[3]);
}

SpectrumGrid s_cc(const DynamicalSystem& sys, std::span<const double> omegas, Exec exec) {
    require_stable(sys);
    SpectrumGrid grid;
    grid.omegas.assign(omegas.begin(), omegas.end());
    grid.values.assign(omegas.size(), 0.0);
    const long n = static_cast<long>(omegas.size());
    if (exec == Exec::parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (long k = 0; k < n; ++k) grid.values[k] = s_cc_at(sys, grid.omegas[k]);
    } else {
        for (long k = 0; k < n; ++k) grid.values[k] = s_cc_at(sys, grid.omegas[k]);
    }
    return grid;
}

double phonon_number_lyapunov(const DynamicalSystem& sys) {
    require_stable(sys);
    Mat4 q{};
    const double nc = sys.cavity_occupation;
    q[0 * 4 + 1] = sys.kappa * (nc + 1.0);
    q[1 * 4 + 0] = sys.kappa * nc;
    q[2 * 4 + 3] = sys.gamma_m * (sys.n_th + 1.0);
    q[3 * 4 + 2] = sys.gamma_m * sys.n_th;
    const Mat4 c = linalg::lyapunov4(sys.drift, q);
    return c[3 * 4 + 2].real(); // <c+ c>
}

namespace {

// Adaptive Simpson with Richardson extrapolation on [a, b].
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol,
                        int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double err = left + right - whole;
    if (depth <= 0 || std::abs(err) <= 15.0 * tol)
        return left + right + err / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate_panel(const std::function<double(double)>& f, double a, double b,
                       double tol) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

// Integrates S_cc over the whole frequency axis through the compactifying
// substitution omega = tan(theta). Panel boundaries are seeded around every
// normal-mode frequency out to >= 20 linewidths so the adaptive refinement
// starts on the right scale for arbitrarily narrow resonances.
double integrate_spectrum(const DynamicalSystem& sys, double rel_tol) {
    const auto ev = linalg::eigenvalues4(sys.drift);
    const double theta_lim = 0.5 * M_PI - 1e-9;

    std::vector<double> cuts{-theta_lim, 0.0, theta_lim};
    for (const cplx& lambda : ev) {
        const double center = -lambda.imag();
        const double width = std::max(-2.0 * lambda.real(), 1e-12);
        const double theta_c = std::atan(center);
        const double ct = std::cos(theta_c);
        const double theta_w = std::max(width * ct * ct, 1e-14);
        for (double mult : {1.0, 3.0, 10.0, 30.0, 100.0, 1e3, 1e4, 1e5, 1e6}) {
            cuts.push_back(std::clamp(theta_c - mult * theta_w, -theta_lim, theta_lim));
            cuts.push_back(std::clamp(theta_c + mult * theta_w, -theta_lim, theta_lim));
        }
        cuts.push_back(std::clamp(theta_c, -theta_lim, theta_lim));
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    const std::function<double(double)> f = [&sys](double theta) {
        const double c = std::cos(theta);
        return s_cc_at(sys, std::tan(theta)) / (c * c);
    };

    // Rough pass to fix the absolute tolerance, then the adaptive pass.
    double rough = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double a = cuts[k], b = cuts[k + 1];
        rough += (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
    }
    const double tol = rel_tol * std::max(std::abs(rough), 1e-300);

    double total = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
        total += integrate_panel(f, cuts[k], cuts[k + 1], tol / static_cast<double>(cuts.size()));
    return total / (2.0 * M_PI);
}

} // namespace

double phonon_number_quadrature(const DynamicalSystem& sys) {
    require_stable(sys);
    const double coarse = integrate_spectrum(sys, 1e-7);
    const double fine = integrate_spectrum(sys, 1e-9);
    const double scale = std::max(std::abs(fine), 1e-300);
    if (std::abs(fine - coarse) / scale > 1e-5)
        throw QuadratureNotConverged("spectrum quadrature did not settle to 1e-5 relative");
    return fine;
}

double phonon_number(const DynamicalSystem& sys) {
    const double lyap = phonon_number_lyapunov(sys);
    const double quad = phonon_number_quadrature(sys);
    const double scale = std::max(std::abs(lyap), 1e-300);
    if (std::abs(quad - lyap) / scale > 1e-4)
        throw QuadratureNotConverged("quadrature and Lyapunov phonon numbers disagree beyond 1e-4");
    return lyap;
}

} // namespace optocool
