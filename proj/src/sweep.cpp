#include "optocool/sweep.hpp"

#include <cmath>
#include <limits>

#include "optocool/errors.hpp"
#include "optocool/linearized.hpp"
#include "optocool/quantum_noise.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace optocool {

namespace {
constexpr double nan_value = std::numeric_limits<double>::quiet_NaN();

const char* axis_label(AxisName n) {
    return n == AxisName::detuning ? "detuning" : "n_p";
}

const char* observable_label(Observable o) {
    switch (o) {
        case Observable::n_steady: return "n_steady";
        case Observable::gamma_opt: return "gamma_opt";
        case Observable::n_min: return "n_min";
        case Observable::s_cc: return "s_cc";
    }
    return "?";
}

void validate_axis(const AxisSpec& ax) {
    if (ax.count < 1)
        throw ConfigError("axis count must be >= 1");
    if (ax.count > 1 && !(ax.min < ax.max))
        throw ConfigError("axis requires min < max");
    if (ax.scale == AxisScale::log && !(ax.min > 0.0))
        throw ConfigError("log axis requires min > 0");
    if (!std::isfinite(ax.min) || !std::isfinite(ax.max))
        throw ConfigError("axis bounds must be finite");
}

} // namespace

double AxisSpec::value(int i) const {
    if (count == 1) return min;
    const double t = static_cast<double>(i) / (count - 1);
    if (scale == AxisScale::log)
        return std::exp(std::log(min) + t * (std::log(max) - std::log(min)));
    return min + t * (max - min);
}

const char* status_name(CellStatus s) {
    switch (s) {
        case CellStatus::ok: return "ok";
        case CellStatus::unstable: return "unstable";
        case CellStatus::not_cooling: return "not-cooling";
        case CellStatus::weak_coupling_invalid: return "weak-coupling-invalid";
    }
    return "?";
}

void SweepSpec::validate() const {
    base.validate();
    validate_axis(axis1);
    if (axis2) {
        validate_axis(*axis2);
        if (axis2->name == axis1.name)
            throw ConfigError("axis1 and axis2 must sweep different parameters");
    }
    if (observable == Observable::s_cc) {
        if (axis2)
            throw ConfigError("s_cc sweeps use the frequency grid as the second axis");
        if (!omega)
            throw ConfigError("s_cc sweeps require a frequency grid");
        if (omega->count < 2 || !(omega->min < omega->max))
            throw ConfigError("frequency grid requires count >= 2 and min < max");
    }
}

namespace {

ModelParams with_axis(ModelParams p, AxisName name, double v) {
    if (name == AxisName::detuning)
        p.detuning = v;
    else
        p.n_p = v;
    return p;
}

struct Cell {
    double value = nan_value;
    CellStatus status = CellStatus::ok;
};

Cell evaluate_scalar(const ModelParams& p, Observable obs) {
    Cell cell;
    const RateSet r = golden_rule_rates(p);
    const double total = p.gamma_m + r.gamma_opt;
    const bool cooling = r.gamma_opt > 0.0;

    if (!(total > 0.0)) {
        cell.status = CellStatus::unstable;
        if (obs == Observable::gamma_opt) cell.value = r.gamma_opt;
        return cell;
    }
    switch (obs) {
        case Observable::n_steady:
            cell.value = (p.gamma_m * p.n_th + r.gamma_up) / total;
            break;
        case Observable::gamma_opt:
            cell.value = r.gamma_opt;
            break;
        case Observable::n_min:
            if (cooling) cell.value = r.gamma_up / r.gamma_opt;
            break;
        case Observable::s_cc:
            break; // handled on the spectrum path
    }
    if (!cooling)
        cell.status = CellStatus::not_cooling;
    else if (!r.valid_weak_coupling)
        cell.status = CellStatus::weak_coupling_invalid;
    return cell;
}

GridResult run_scalar_sweep(const SweepSpec& spec, Exec exec) {
    GridResult grid;
    grid.n1 = spec.axis1.count;
    grid.n2 = spec.axis2 ? spec.axis2->count : 1;
    grid.axis1_name = axis_label(spec.axis1.name);
    grid.axis2_name = spec.axis2 ? axis_label(spec.axis2->name) : "";
    grid.observable_name = observable_label(spec.observable);
    grid.axis1_values.resize(grid.n1);
    for (int i = 0; i < grid.n1; ++i) grid.axis1_values[i] = spec.axis1.value(i);
    if (spec.axis2) {
        grid.axis2_values.resize(grid.n2);
        for (int j = 0; j < grid.n2; ++j) grid.axis2_values[j] = spec.axis2->value(j);
    }

    const long cells = static_cast<long>(grid.n1) * grid.n2;
    grid.values.assign(cells, nan_value);
    grid.status.assign(cells, CellStatus::ok);

    auto eval = [&](long idx) {
        const int i = static_cast<int>(idx / grid.n2);
        const int j = static_cast<int>(idx % grid.n2);
        ModelParams p = with_axis(spec.base, spec.axis1.name, grid.axis1_values[i]);
        if (spec.axis2) p = with_axis(p, spec.axis2->name, grid.axis2_values[j]);
        const Cell cell = evaluate_scalar(p, spec.observable);
        grid.values[idx] = cell.value;
        grid.status[idx] = cell.status;
    };

    if (exec == Exec::parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (long idx = 0; idx < cells; ++idx) eval(idx);
    } else {
        for (long idx = 0; idx < cells; ++idx) eval(idx);
    }
    return grid;
}

GridResult run_spectrum_sweep(const SweepSpec& spec, Exec exec) {
    GridResult grid;
    grid.n1 = spec.axis1.count;
    grid.n2 = spec.omega->count;
    grid.axis1_name = axis_label(spec.axis1.name);
    grid.axis2_name = "omega";
    grid.observable_name = observable_label(spec.observable);
    grid.axis1_values.resize(grid.n1);
    for (int i = 0; i < grid.n1; ++i) grid.axis1_values[i] = spec.axis1.value(i);
    grid.axis2_values.resize(grid.n2);
    for (int j = 0; j < grid.n2; ++j)
        grid.axis2_values[j] =
            spec.omega->min + (spec.omega->max - spec.omega->min) * j / (grid.n2 - 1);

    grid.values.assign(static_cast<std::size_t>(grid.n1) * grid.n2, nan_value);
    grid.status.assign(grid.values.size(), CellStatus::ok);

    auto eval_row = [&](int i) {
        const ModelParams p = with_axis(spec.base, spec.axis1.name, grid.axis1_values[i]);
        const DynamicalSystem sys = build_system(p);
        const std::size_t off = static_cast<std::size_t>(i) * grid.n2;
        if (!is_stable(sys)) {
            for (int j = 0; j < grid.n2; ++j) grid.status[off + j] = CellStatus::unstable;
            return;
        }
        for (int j = 0; j < grid.n2; ++j)
            grid.values[off + j] = s_cc_at(sys, grid.axis2_values[j]);
    };

    if (exec == Exec::parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (int i = 0; i < grid.n1; ++i) eval_row(i);
    } else {
        for (int i = 0; i < grid.n1; ++i) eval_row(i);
    }
    return grid;
}

} // namespace

GridResult run_sweep(const SweepSpec& spec, Exec exec) {
    spec.validate();
    if (spec.observable == Observable::s_cc)
        return run_spectrum_sweep(spec, exec);
    return run_scalar_sweep(spec, exec);
}

SweepSpec preset_fig2a() {
    // Resolved-sideband caption parameters: kappa = 0.3 omega_m, thermal
    // occupation 1e3, quality factor 1e6, coupling scale 0.012. Swept over
    // detuning (linear) and circulating photon number (log).
    SweepSpec spec;
    spec.base.omega_m = 1.0;
    spec.base.kappa = 0.3;
    spec.base.gamma_m = 1e-6;
    spec.base.n_th = 1e3;
    spec.base.g0_ratio = 0.012;
    spec.base.n_p = 0.0;
    spec.base.detuning = 0.0;
    spec.axis1 = AxisSpec{AxisName::detuning, -2.5, 0.5, 121, AxisScale::linear};
    spec.axis2 = AxisSpec{AxisName::n_p, 0.1, 100.0, 121, AxisScale::log};
    spec.observable = Observable::n_steady;
    return spec;
}

SweepSpec preset_fig3() {
    // Strong-coupling displacement spectrum: kappa = 0.1 omega_m,
    // gamma_m = 1e-5, coupling scale 0.01, 100 circulating photons,
    // thermal occupation 1e3; detuning scan across the avoided crossing.
    SweepSpec spec;
    spec.base.omega_m = 1.0;
    spec.base.kappa = 0.1;
    spec.base.gamma_m = 1e-5;
    spec.base.n_th = 1e3;
    spec.base.g0_ratio = 0.01;
    spec.base.n_p = 100.0;
    spec.base.detuning = -1.0;
    spec.axis1 = AxisSpec{AxisName::detuning, -1.8, -0.4, 200, AxisScale::linear};
    spec.observable = Observable::s_cc;
    spec.omega = FrequencyGrid{-2.0, -0.3, 400};
    return spec;
}

CurveResult min_phonon_curve(double ratio_min, double ratio_max, int count) {
    if (!(ratio_min > 0.0) || !(ratio_min < ratio_max) || count < 2)
        throw ConfigError("min_phonon_curve requires 0 < ratio_min < ratio_max, count >= 2");
    CurveResult curve;
    curve.x.resize(count);
    curve.y.resize(count);
    for (int i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / (count - 1);
        const double ratio =
            std::exp(std::log(ratio_min) + t * (std::log(ratio_max) - std::log(ratio_min)));
        curve.x[i] = ratio;
        curve.y[i] = min_phonon(1.0, 1.0 / ratio);
    }
    return curve;
}

} // namespace optocool
