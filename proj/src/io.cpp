#include "optocool/io.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <set>

#include "optocool/errors.hpp"

namespace optocool::io {

using nlohmann::json;

namespace {

double number_at(const json& j, const std::string& key) {
    const auto& v = j.at(key);
    if (!v.is_number())
        throw ConfigError("config key '" + key + "' must be a number");
    return v.get<double>();
}

void set_if_present(const json& j, const char* key, std::optional<double>& field) {
    if (j.contains(key)) field = number_at(j, key);
}

void format_value(std::ostream& os, double v) {
    if (std::isnan(v)) {
        os << "nan";
        return;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf;
}

} // namespace

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file: " + path);
    json root;
    try {
        in >> root;
    } catch (const json::exception& e) {
        throw ConfigError("invalid JSON in " + path + ": " + e.what());
    }
    if (!root.is_object())
        throw ConfigError("config root must be a JSON object");

    static const std::set<std::string> allowed{
        "omega_m_over_kappa", "kappa_over_omega_m", "gamma_m_over_omega_m",
        "quality_factor",     "n_th",               "n_p",
        "g0_ratio",           "detuning_over_omega_m",
        "sweep",              "classical",          "master_eq",
        "spectrum"};
    for (const auto& item : root.items())
        if (!allowed.count(item.key()))
            throw ConfigError("unknown config key: " + item.key());
    return root;
}

RawParams parse_model_config(const json& root) {
    RawParams raw;
    set_if_present(root, "omega_m_over_kappa", raw.omega_m_over_kappa);
    set_if_present(root, "kappa_over_omega_m", raw.kappa_over_omega_m);
    set_if_present(root, "gamma_m_over_omega_m", raw.gamma_m_over_omega_m);
    set_if_present(root, "quality_factor", raw.quality_factor);
    set_if_present(root, "n_th", raw.n_th);
    set_if_present(root, "n_p", raw.n_p);
    set_if_present(root, "g0_ratio", raw.g0_ratio);
    set_if_present(root, "detuning_over_omega_m", raw.detuning_over_omega_m);
    return raw;
}

namespace {

AxisSpec parse_axis(const json& j) {
    AxisSpec ax;
    const std::string name = j.at("name").get<std::string>();
    if (name == "detuning")
        ax.name = AxisName::detuning;
    else if (name == "n_p")
        ax.name = AxisName::n_p;
    else
        throw ConfigError("axis name must be 'detuning' or 'n_p', got '" + name + "'");
    ax.min = number_at(j, "min");
    ax.max = number_at(j, "max");
    ax.count = static_cast<int>(number_at(j, "count"));
    if (j.contains("scale")) {
        const std::string scale = j.at("scale").get<std::string>();
        if (scale == "linear")
            ax.scale = AxisScale::linear;
        else if (scale == "log")
            ax.scale = AxisScale::log;
        else
            throw ConfigError("axis scale must be 'linear' or 'log'");
    }
    return ax;
}

} // namespace

SweepSpec parse_sweep_config(const json& root, const ModelParams& base) {
    if (!root.contains("sweep"))
        throw ConfigError("config has no 'sweep' section and no preset was selected");
    const json& sw = root.at("sweep");

    SweepSpec spec;
    spec.base = base;
    try {
        spec.axis1 = parse_axis(sw.at("axis1"));
        if (sw.contains("axis2")) spec.axis2 = parse_axis(sw.at("axis2"));

        const std::string obs = sw.at("observable").get<std::string>();
        if (obs == "n_steady")
            spec.observable = Observable::n_steady;
        else if (obs == "gamma_opt")
            spec.observable = Observable::gamma_opt;
        else if (obs == "n_min")
            spec.observable = Observable::n_min;
        else if (obs == "s_cc")
            spec.observable = Observable::s_cc;
        else
            throw ConfigError("unknown observable: " + obs);

        if (sw.contains("omega")) {
            FrequencyGrid fg;
            fg.min = number_at(sw.at("omega"), "min");
            fg.max = number_at(sw.at("omega"), "max");
            fg.count = static_cast<int>(number_at(sw.at("omega"), "count"));
            spec.omega = fg;
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed sweep section: ") + e.what());
    }
    spec.validate();
    return spec;
}

void write_grid_csv(std::ostream& os, const GridResult& grid) {
    const bool two_d = grid.n2 > 1;
    os << grid.axis1_name << "[omega_m]";
    if (two_d) os << "," << grid.axis2_name << (grid.axis2_name == "n_p" ? "" : "[omega_m]");
    os << "," << grid.observable_name << ",status\n";
    for (int i = 0; i < grid.n1; ++i)
        for (int j = 0; j < grid.n2; ++j) {
            format_value(os, grid.axis1_values[i]);
            if (two_d) {
                os << ",";
                format_value(os, grid.axis2_values[j]);
            }
            os << ",";
            format_value(os, grid.value_at(i, j));
            os << "," << status_name(grid.status_at(i, j)) << "\n";
        }
}

void write_contours_csv(std::ostream& os, std::span<const ContourSet> sets,
                        const GridResult& grid) {
    os << "level,polyline," << grid.axis1_name << "," << grid.axis2_name << "\n";
    for (const ContourSet& set : sets) {
        std::size_t id = 0;
        for (const Polyline& line : set.polylines) {
            for (const auto& pt : line.points) {
                format_value(os, set.level);
                os << "," << id << ",";
                format_value(os, pt[0]);
                os << ",";
                format_value(os, pt[1]);
                os << "\n";
            }
            ++id;
        }
    }
}

void write_curve_csv(std::ostream& os, const CurveResult& curve) {
    os << "omega_m_over_kappa,min_phonon\n";
    for (std::size_t i = 0; i < curve.x.size(); ++i) {
        format_value(os, curve.x[i]);
        os << ",";
        format_value(os, curve.y[i]);
        os << "\n";
    }
}

void write_spectrum_csv(std::ostream& os, const SpectrumGrid& grid) {
    os << "omega[omega_m],s_cc\n";
    for (std::size_t i = 0; i < grid.omegas.size(); ++i) {
        format_value(os, grid.omegas[i]);
        os << ",";
        format_value(os, grid.values[i]);
        os << "\n";
    }
}

void write_rates_csv(std::ostream& os, const RateSet& rates, const ModelParams& p) {
    os << "detuning[omega_m],alpha[omega_m],gamma_down,gamma_up,gamma_opt,n_min,n_steady,"
          "valid_weak_coupling\n";
    format_value(os, p.detuning);
    os << ",";
    format_value(os, coupling_alpha(p));
    for (double v : {rates.gamma_down, rates.gamma_up, rates.gamma_opt, rates.n_min,
                     rates.n_steady}) {
        os << ",";
        format_value(os, v);
    }
    os << "," << (rates.valid_weak_coupling ? "true" : "false") << "\n";
}

void write_populations_csv(std::ostream& os, const PopulationState& state) {
    os << "n,p_n\n";
    for (std::size_t n = 0; n < state.probabilities.size(); ++n) {
        os << n << ",";
        format_value(os, state.probabilities[n]);
        os << "\n";
    }
}

void write_relaxation_csv(std::ostream& os, std::span<const double> times,
                          std::span<const double> means) {
    os << "t[1/omega_m],n_mean\n";
    for (std::size_t i = 0; i < times.size(); ++i) {
        format_value(os, times[i]);
        os << ",";
        format_value(os, means[i]);
        os << "\n";
    }
}

json grid_to_json(const GridResult& grid) {
    json j;
    j["axis1"] = {{"name", grid.axis1_name}, {"values", grid.axis1_values}};
    if (grid.n2 > 1 && !grid.axis2_values.empty())
        j["axis2"] = {{"name", grid.axis2_name}, {"values", grid.axis2_values}};
    j["observable"] = grid.observable_name;
    json rows = json::array();
    json stat = json::array();
    for (int i = 0; i < grid.n1; ++i) {
        json vrow = json::array();
        json srow = json::array();
        for (int jcol = 0; jcol < grid.n2; ++jcol) {
            const double v = grid.value_at(i, jcol);
            if (std::isnan(v))
                vrow.push_back(nullptr);
            else
                vrow.push_back(v);
            srow.push_back(status_name(grid.status_at(i, jcol)));
        }
        rows.push_back(std::move(vrow));
        stat.push_back(std::move(srow));
    }
    j["values"] = std::move(rows);
    j["status"] = std::move(stat);
    return j;
}

json contours_to_json(std::span<const ContourSet> sets) {
    json j = json::array();
    for (const ContourSet& set : sets) {
        json lines = json::array();
        for (const Polyline& line : set.polylines) {
            json pts = json::array();
            for (const auto& pt : line.points) pts.push_back({pt[0], pt[1]});
            lines.push_back(std::move(pts));
        }
        j.push_back({{"level", set.level},
                     {"out_of_range", set.level_out_of_range},
                     {"polylines", std::move(lines)}});
    }
    return j;
}

json rates_to_json(const RateSet& rates, const ModelParams& p) {
    json j;
    j["detuning"] = p.detuning;
    j["alpha"] = coupling_alpha(p);
    j["gamma_down"] = rates.gamma_down;
    j["gamma_up"] = rates.gamma_up;
    j["gamma_opt"] = rates.gamma_opt;
    j["n_min"] = std::isnan(rates.n_min) ? json(nullptr) : json(rates.n_min);
    j["n_steady"] = std::isnan(rates.n_steady) ? json(nullptr) : json(rates.n_steady);
    j["valid_weak_coupling"] = rates.valid_weak_coupling;
    return j;
}

json curve_to_json(const CurveResult& curve) {
    json j;
    j["omega_m_over_kappa"] = curve.x;
    j["min_phonon"] = curve.y;
    return j;
}

} // namespace optocool::io
