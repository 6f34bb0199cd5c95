#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include <json.hpp>

#include "optocool/fock_chain.hpp"
#include "optocool/linearized.hpp"
#include "optocool/params.hpp"
#include "optocool/quantum_noise.hpp"
#include "optocool/sweep.hpp"

namespace optocool::io {

/// Loads and validates a JSON config file. Model ratios live at the top
/// level under exactly the documented key names; the optional sections
/// "sweep", "classical", "master_eq" and "spectrum" configure the
/// corresponding subcommands. Unknown keys are rejected.
nlohmann::json load_config(const std::string& path);

RawParams parse_model_config(const nlohmann::json& root);

/// Parses root["sweep"] into a SweepSpec over the given base parameters.
/// Throws ConfigError when the section is missing or malformed.
SweepSpec parse_sweep_config(const nlohmann::json& root, const ModelParams& base);

// CSV emission. All grids carry a header row naming the axes; frequencies
// and rates are in multiples of omega_m throughout.
void write_grid_csv(std::ostream& os, const GridResult& grid);
void write_contours_csv(std::ostream& os, std::span<const ContourSet> sets,
                        const GridResult& grid);
void write_curve_csv(std::ostream& os, const CurveResult& curve);
void write_spectrum_csv(std::ostream& os, const SpectrumGrid& grid);
void write_rates_csv(std::ostream& os, const RateSet& rates, const ModelParams& p);
void write_populations_csv(std::ostream& os, const PopulationState& state);
void write_relaxation_csv(std::ostream& os, std::span<const double> times,
                          std::span<const double> means);

// JSON mirrors with the same content.
nlohmann::json grid_to_json(const GridResult& grid);
nlohmann::json contours_to_json(std::span<const ContourSet> sets);
nlohmann::json rates_to_json(const RateSet& rates, const ModelParams& p);
nlohmann::json curve_to_json(const CurveResult& curve);

} // namespace optocool::io
