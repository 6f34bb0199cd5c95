#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "optocool/exec.hpp"
#include "optocool/params.hpp"

namespace optocool {

enum class AxisName { detuning, n_p };
enum class AxisScale { linear, log };

struct AxisSpec {
    AxisName name = AxisName::detuning;
    double min = 0.0;
    double max = 0.0;
    int count = 0;
    AxisScale scale = AxisScale::linear;

    /// i-th grid value; count == 1 degenerates to min.
    double value(int i) const;
};

enum class Observable { n_steady, gamma_opt, n_min, s_cc };

/// Frequency grid for the s_cc observable (plays the role of the second
/// axis of the result grid).
struct FrequencyGrid {
    double min = 0.0;
    double max = 0.0;
    int count = 0;
};

struct SweepSpec {
    ModelParams base;
    AxisSpec axis1;
    std::optional<AxisSpec> axis2;
    Observable observable = Observable::n_steady;
    std::optional<FrequencyGrid> omega; ///< required iff observable == s_cc

    void validate() const; ///< throws ConfigError
};

enum class CellStatus : std::uint8_t {
    ok = 0,
    unstable,              ///< total damping <= 0 / anti-damped dynamics; value NaN
    not_cooling,           ///< gamma_opt <= 0; value NaN for n_min only
    weak_coupling_invalid, ///< gamma_opt >= kappa/2; value kept but weak-coupling theory marginal
};

const char* status_name(CellStatus s);

/// Dense result grid, row-major over (axis1, axis2). A pure 1-D sweep has
/// n2 == 1 and an empty axis2_values.
struct GridResult {
    std::vector<double> axis1_values;
    std::vector<double> axis2_values;
    std::vector<double> values;
    std::vector<CellStatus> status;
    int n1 = 0;
    int n2 = 1;
    std::string axis1_name;
    std::string axis2_name; ///< empty for 1-D grids
    std::string observable_name;

    double value_at(int i, int j) const { return values[static_cast<std::size_t>(i) * n2 + j]; }
    CellStatus status_at(int i, int j) const {
        return status[static_cast<std::size_t>(i) * n2 + j];
    }
};

/// Evaluates the observable over the grid. Per-cell failures (instability,
/// no cooling) become status flags, never exceptions; results are written
/// by index so serial and parallel execution agree bitwise.
GridResult run_sweep(const SweepSpec& spec, Exec exec = Exec::parallel);

struct Polyline {
    std::vector<std::array<double, 2>> points; ///< (axis1, axis2) coordinates
};

struct ContourSet {
    double level = 0.0;
    std::vector<Polyline> polylines;
    bool level_out_of_range = false; ///< level missed the grid's value range entirely
};

/// Marching-squares level sets with linear interpolation, in axis
/// coordinates. Cells touching NaN values are skipped. Throws ConfigError
/// for spectrum (s_cc) grids, whose second axis is a frequency.
std::vector<ContourSet> extract_contours(const GridResult& grid, std::span<const double> levels);

/// Caption parameter sets behind the bundled presets.
SweepSpec preset_fig2a();
SweepSpec preset_fig3();

/// Minimum-phonon curve min_phonon(omega_m/kappa) on a log grid, the
/// content of the fig2b preset.
struct CurveResult {
    std::vector<double> x; ///< omega_m / kappa
    std::vector<double> y; ///< minimum phonon number
};
CurveResult min_phonon_curve(double ratio_min = 0.01, double ratio_max = 100.0, int count = 200);

} // namespace optocool
