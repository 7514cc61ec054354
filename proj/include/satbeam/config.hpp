#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "satbeam/montecarlo.hpp"

namespace satbeam {

/// Golden-angle step of the default spiral.
inline constexpr double kGoldenAngle = 2.399963229728653;

/// Full run configuration in user units (degrees, dBi). Defaults are the
/// desk preset; the paper preset restores the published system scale.
/// SI-unit domain structs are built by the accessors below.
struct RunConfig {
    // array.*
    int array_rows = 3;
    int array_cols = 3;
    double spacing_x = 0.15;  // [m]
    double spacing_y = 0.15;  // [m]
    double wavelength = 0.3;  // [m]

    // element.*
    double element_gain_dbi = 5.0;
    double element_hpbw_deg = 70.0;

    // layout.*
    std::string layout_source = "spiral";  // "spiral" | "file"
    int satellite_count = 16;
    double angular_step = kGoldenAngle;  // [rad]
    double growth_rate = 0.0;            // [1/rad]; <= 0 selects the self-similar default
    double target_d_min = 1.535;         // [m]
    std::string layout_file;

    // target.*
    double target_theta_deg = 0.0;
    double target_phi_deg = 0.0;

    // perturb.*
    double sigma_x = 0.06, sigma_y = 0.06, sigma_z = 0.06;  // [m]
    double t_max = 0.575;                                   // [m]
    double sigma_roll_deg = 5.0, sigma_pitch_deg = 5.0, sigma_yaw_deg = 5.0;
    double eps_max_deg = 45.0;

    // kpi.*
    KpiThresholds thresholds;

    // sweep.*
    SweepVariable sweep_variable = SweepVariable::translation;
    double sweep_sigma_max_translation = 0.06;  // [m]
    double sweep_sigma_max_rotation_deg = 10.0;
    int sweep_steps = 10;
    int sweep_realizations = 30;

    // grid.* / cut.*
    GridRules grid;
    ThetaCutRules theta_cut;

    std::uint64_t master_seed = 1;
    int workers = 0;
    std::string out_dir = "out";

    ArrayConfig array() const;
    BeamTarget target() const;
    PerturbationSpec perturbation() const;

    void validate() const;
};

RunConfig desk_preset();
RunConfig paper_preset();
RunConfig preset_by_name(const std::string& name);  // throws ConfigError

/// Applies `key = value` lines (flat dotted keys, '#' comments) on top of a
/// config. Unknown keys raise ConfigError.
void apply_config_file(RunConfig& config, const std::string& path);

/// Applies one `key=value` override (same keys as the config file).
void apply_config_entry(RunConfig& config, const std::string& key, const std::string& value);

/// Flat `key = value` echo of every setting, sorted by key.
std::vector<std::pair<std::string, std::string>> flatten_config(const RunConfig& config);

/// Generates the spiral or loads the layout file, per config.
FormationLayout resolve_layout(const RunConfig& config);

/// Growth rate used when the config leaves it auto: keeps the spiral
/// self-similar across satellite counts (outer/inner radius ratio e^1.8).
double effective_growth_rate(const RunConfig& config);

/// Evenly spaced sweep sigmas from 0 to the variable's maximum, SI units.
std::vector<double> sweep_sigmas(const RunConfig& config);

SweepSpec make_sweep_spec(const RunConfig& config, const FormationLayout& layout);

}  // namespace satbeam
