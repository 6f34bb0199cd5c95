// optocool: sideband-cooling calculator for a mechanical oscillator coupled
// to a driven optical cavity. Subcommands cover golden-rule cooling rates,
// the classical lagged-force picture, the truncated Fock master equation,
// displacement spectra of the linearized dynamics, and batch parameter
// sweeps with CSV/JSON output.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "optocool/classical.hpp"
#include "optocool/errors.hpp"
#include "optocool/fock_chain.hpp"
#include "optocool/io.hpp"
#include "optocool/linearized.hpp"
#include "optocool/quantum_noise.hpp"
#include "optocool/sweep.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using nlohmann::json;
using optocool::ModelParams;

constexpr int exit_ok = 0;
constexpr int exit_config_error = 2;
constexpr int exit_numerical_error = 3;

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw optocool::ConfigError("cannot open output file: " + path);
    return out;
}

void apply_threads(int threads) {
    if (threads <= 0) {
        if (const char* env = std::getenv("OPTOCOOL_THREADS"))
            threads = std::atoi(env);
    }
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

json require_config(const std::optional<std::string>& path) {
    if (!path)
        throw optocool::ConfigError("--config is required for this subcommand");
    return optocool::io::load_config(*path);
}

ModelParams model_from_config(const json& root) {
    return optocool::normalize(optocool::io::parse_model_config(root));
}

double section_number(const json& root, const char* section, const char* key,
                      double fallback) {
    if (root.contains(section) && root.at(section).contains(key))
        return root.at(section).at(key).get<double>();
    return fallback;
}

int run_rates(const json& root, const std::optional<std::string>& out,
              const std::string& format) {
    const ModelParams p = model_from_config(root);
    const optocool::RateSet r = optocool::evaluate_rates(p);

    if (out) {
        auto os = open_output(*out);
        if (format == "json")
            os << optocool::io::rates_to_json(r, p).dump(2) << "\n";
        else
            optocool::io::write_rates_csv(os, r, p);
    }
    std::cout << "detuning            = " << p.detuning << "\n"
              << "alpha               = " << optocool::coupling_alpha(p) << "\n"
              << "gamma_down          = " << r.gamma_down << "\n"
              << "gamma_up            = " << r.gamma_up << "\n"
              << "gamma_opt           = " << r.gamma_opt << "\n"
              << "n_min               = " << r.n_min << "\n"
              << "n_steady            = " << r.n_steady << "\n"
              << "valid_weak_coupling = " << (r.valid_weak_coupling ? "true" : "false")
              << "\n";
    return exit_ok;
}

int run_classical(const json& root, const std::optional<std::string>& out, double duration,
                  double step, std::uint64_t seed) {
    const ModelParams p = model_from_config(root);
    optocool::ClassicalParams cp;
    cp.mass = section_number(root, "classical", "mass", 1.0);
    cp.tau = section_number(root, "classical", "tau", 1.0 / p.omega_m);
    cp.f_max = section_number(root, "classical", "f_max", 0.01);
    cp.i_max = section_number(root, "classical", "i_max", 1.0);
    cp.x_equilibrium = section_number(root, "classical", "x_equilibrium",
                                      -0.5 * p.kappa / (p.g0_ratio * p.omega_m));
    cp.temperature = section_number(root, "classical", "temperature", 1.0);

    const optocool::LagForceModel model = optocool::bolometric_force_model(p, cp);
    const optocool::ClassicalResult summary = optocool::classical_summary(model, cp, p);
    std::cout << "working-point slope   = " << model.slope_at_working_point << "\n"
              << "gamma_opt (classical) = " << summary.gamma_opt << "\n"
              << "omega_m_tilde         = " << summary.omega_m_tilde << "\n"
              << "t_eff                 = " << summary.t_eff << "\n";

    optocool::LangevinOptions opts;
    opts.duration = duration > 0.0
                        ? duration
                        : section_number(root, "classical", "duration", 2e4 / p.omega_m);
    opts.step =
        step > 0.0 ? step : section_number(root, "classical", "step", 0.02 / p.omega_m);
    opts.seed = seed;
    opts.record_stride = 1;
    const optocool::LangevinResult traj = optocool::simulate_langevin(model, cp, p, opts);
    const double t_measured =
        cp.mass * summary.omega_m_tilde * summary.omega_m_tilde * traj.position_variance;
    std::cout << "<(x-xbar)^2>          = " << traj.position_variance << " +- "
              << traj.variance_std_error << "\n"
              << "m wtilde^2 <dx^2>     = " << t_measured << "\n";

    if (out) {
        auto os = open_output(*out);
        os << "time,x,F\n";
        char buf[96];
        for (std::size_t i = 0; i < traj.time.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.10g\n", traj.time[i],
                          traj.position[i], traj.force[i]);
            os << buf;
        }
    }
    return exit_ok;
}

int run_master_eq(const json& root, const std::optional<std::string>& out) {
    const ModelParams p = model_from_config(root);
    const optocool::RateSet r = optocool::evaluate_rates(p);
    const optocool::PopulationState steady =
        optocool::steady_state_auto(r, p.gamma_m, p.n_th);

    const double n0 = section_number(root, "master_eq", "n0", p.n_th);
    const double total = p.gamma_m + r.gamma_opt;
    const double horizon = section_number(root, "master_eq", "t_max", 6.0 / total);
    const int samples = static_cast<int>(section_number(root, "master_eq", "samples", 200));
    if (samples < 2)
        throw optocool::ConfigError("master_eq.samples must be >= 2");

    const int n_max = static_cast<int>(steady.probabilities.size()) - 1;
    const int n_max_evolve =
        std::max(n_max, optocool::suggested_cutoff(std::max(n0, steady.mean())));
    const optocool::FockChain chain =
        optocool::build_chain(r, p.gamma_m, p.n_th, n_max_evolve);
    std::vector<double> times(samples);
    for (int k = 0; k < samples; ++k) times[k] = horizon * k / (samples - 1);
    const optocool::ChainEvolution ev =
        optocool::evolve_chain(chain, optocool::geometric_state(n0, n_max_evolve), times);

    std::cout << "steady-state mean  = " << steady.mean() << "\n"
              << "rate-equation mean = " << r.n_steady << "\n"
              << "cutoff n_max       = " << n_max << "\n"
              << "relaxation rate    = " << total << "\n";

    if (out) {
        auto pops = open_output(*out + ".populations.csv");
        optocool::io::write_populations_csv(pops, steady);
        auto relax = open_output(*out + ".relaxation.csv");
        optocool::io::write_relaxation_csv(relax, ev.times, ev.means);
        std::cout << "wrote " << *out << ".populations.csv and " << *out
                  << ".relaxation.csv\n";
    }
    return exit_ok;
}

int run_spectrum(const json& root, const std::optional<std::string>& out,
                 const std::string& format) {
    const ModelParams p = model_from_config(root);

    const bool has_delta_axis =
        root.contains("spectrum") && root.at("spectrum").contains("delta_count");
    const double omega_min = section_number(root, "spectrum", "omega_min", -2.0 * p.omega_m);
    const double omega_max = section_number(root, "spectrum", "omega_max", 2.0 * p.omega_m);
    const int omega_count =
        static_cast<int>(section_number(root, "spectrum", "omega_count", 2001));
    if (omega_count < 2 || !(omega_min < omega_max))
        throw optocool::ConfigError("spectrum grid requires omega_min < omega_max, count >= 2");

    if (has_delta_axis) {
        optocool::SweepSpec spec;
        spec.base = p;
        spec.axis1 = optocool::AxisSpec{
            optocool::AxisName::detuning, section_number(root, "spectrum", "delta_min", -1.8),
            section_number(root, "spectrum", "delta_max", -0.4),
            static_cast<int>(section_number(root, "spectrum", "delta_count", 100)),
            optocool::AxisScale::linear};
        spec.observable = optocool::Observable::s_cc;
        spec.omega = optocool::FrequencyGrid{omega_min, omega_max, omega_count};
        const optocool::GridResult grid = optocool::run_sweep(spec);
        if (out) {
            auto os = open_output(*out);
            if (format == "json")
                os << optocool::io::grid_to_json(grid).dump(2) << "\n";
            else
                optocool::io::write_grid_csv(os, grid);
        }
        std::cout << "spectrum sweep: " << grid.n1 << " detunings x " << grid.n2
                  << " frequencies\n";
        return exit_ok;
    }

    const optocool::DynamicalSystem sys = optocool::build_system(p);
    std::vector<double> omegas(omega_count);
    for (int i = 0; i < omega_count; ++i)
        omegas[i] = omega_min + (omega_max - omega_min) * i / (omega_count - 1);
    const optocool::SpectrumGrid grid = optocool::s_cc(sys, omegas);
    const double n_bar = optocool::phonon_number(sys);
    std::cout << "phonon number (spectral weight) = " << n_bar << "\n";
    for (const auto& mode : optocool::normal_modes(sys))
        if (mode.frequency > 0.0)
            std::cout << "mode: frequency = " << mode.frequency << ", width = " << mode.width
                      << "\n";
    if (out) {
        auto os = open_output(*out);
        optocool::io::write_spectrum_csv(os, grid);
    }
    return exit_ok;
}

int run_sweep_cmd(const std::optional<std::string>& config_path, const std::string& preset,
                  const std::optional<std::string>& out, const std::string& format,
                  const std::string& contour_levels) {
    optocool::SweepSpec spec;
    if (preset == "fig2b") {
        const optocool::CurveResult curve = optocool::min_phonon_curve();
        if (out) {
            auto os = open_output(*out);
            if (format == "json")
                os << optocool::io::curve_to_json(curve).dump(2) << "\n";
            else
                optocool::io::write_curve_csv(os, curve);
        }
        std::cout << "minimum phonon number curve: " << curve.x.size() << " points\n";
        return exit_ok;
    } else if (preset == "fig2a") {
        spec = optocool::preset_fig2a();
    } else if (preset == "fig3") {
        spec = optocool::preset_fig3();
    } else {
        const json root = require_config(config_path);
        spec = optocool::io::parse_sweep_config(root, model_from_config(root));
    }

    const optocool::GridResult grid = optocool::run_sweep(spec);
    if (out) {
        auto os = open_output(*out);
        if (format == "json")
            os << optocool::io::grid_to_json(grid).dump(2) << "\n";
        else
            optocool::io::write_grid_csv(os, grid);
    }
    std::cout << "sweep: " << grid.n1 << " x " << grid.n2 << " cells ("
              << grid.observable_name << ")\n";

    if (!contour_levels.empty()) {
        std::vector<double> levels;
        std::string token;
        std::istringstream stream(contour_levels);
        while (std::getline(stream, token, ','))
            levels.push_back(std::stod(token));
        const auto sets = optocool::extract_contours(grid, levels);
        if (out) {
            auto os = open_output(*out + ".contours.csv");
            optocool::io::write_contours_csv(os, sets, grid);
            std::cout << "wrote " << *out << ".contours.csv\n";
        }
        for (const auto& set : sets)
            std::cout << "level " << set.level << ": " << set.polylines.size()
                      << " polylines" << (set.level_out_of_range ? " (out of range)" : "")
                      << "\n";
    }
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"optomechanical sideband-cooling calculator"};
    app.require_subcommand(1);
    app.fallthrough();

    std::optional<std::string> config_path;
    std::optional<std::string> out_path;
    std::string format = "csv";
    int threads = 0;
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--out", out_path, "output file path");
    app.add_option("--format", format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--threads", threads,
                   "worker threads (default: OPTOCOOL_THREADS or all cores)");

    auto* rates = app.add_subcommand("rates", "golden-rule cooling rates and occupations");

    auto* classical =
        app.add_subcommand("classical", "lagged-force damping and Langevin equipartition");
    double duration = 0.0, step = 0.0;
    std::uint64_t seed = 1;
    classical->add_option("--duration", duration, "integration time");
    classical->add_option("--step", step, "integrator step");
    classical->add_option("--seed", seed, "RNG seed");

    auto* master = app.add_subcommand("master-eq", "truncated Fock master equation");

    auto* spectrum = app.add_subcommand("spectrum", "displacement spectrum S_cc");

    auto* sweep = app.add_subcommand("sweep", "1-D/2-D parameter sweeps");
    std::string preset;
    std::string contour_levels;
    sweep->add_option("--preset", preset, "bundled parameter set: fig2a, fig2b or fig3")
        ->check(CLI::IsMember({"fig2a", "fig2b", "fig3"}));
    sweep->add_option("--contours", contour_levels,
                      "comma-separated level values to extract from the grid");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_config_error;
    }

    try {
        apply_threads(threads);
        if (rates->parsed()) return run_rates(require_config(config_path), out_path, format);
        if (classical->parsed())
            return run_classical(require_config(config_path), out_path, duration, step, seed);
        if (master->parsed()) return run_master_eq(require_config(config_path), out_path);
        if (spectrum->parsed())
            return run_spectrum(require_config(config_path), out_path, format);
        if (sweep->parsed())
            return run_sweep_cmd(config_path, preset, out_path, format, contour_levels);
    } catch (const optocool::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config_error;
    } catch (const optocool::MissingField& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config_error;
    } catch (const optocool::NonPositiveParameter& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config_error;
    } catch (const optocool::Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return exit_numerical_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_numerical_error;
    }
    return exit_ok;
}
