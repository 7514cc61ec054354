#include "satbeam/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "satbeam/io.hpp"

namespace satbeam {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double parsed = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return parsed;
    } catch (const std::exception&) {
        throw ConfigError("config: bad numeric value for " + key + ": '" + value + "'");
    }
}

int parse_int(const std::string& key, const std::string& value) {
    const double d = parse_double(key, value);
    const int i = static_cast<int>(d);
    if (static_cast<double>(i) != d) throw ConfigError("config: " + key + " must be an integer");
    return i;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    std::uint64_t parsed = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), parsed);
    if (ec != std::errc() || ptr != value.data() + value.size())
        throw ConfigError("config: bad unsigned value for " + key + ": '" + value + "'");
    return parsed;
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

ArrayConfig RunConfig::array() const {
    ArrayConfig cfg;
    cfg.rows = array_rows;
    cfg.cols = array_cols;
    cfg.spacing_x = spacing_x;
    cfg.spacing_y = spacing_y;
    cfg.wavelength = wavelength;
    cfg.boresight_gain = std::pow(10.0, element_gain_dbi / 10.0);
    cfg.pattern_exponent = pattern_exponent_for_hpbw(element_hpbw_deg * kDegToRad);
    return cfg;
}

BeamTarget RunConfig::target() const {
    BeamTarget t;
    t.theta0 = target_theta_deg * kDegToRad;
    t.phi0 = target_phi_deg * kDegToRad;
    return t;
}

PerturbationSpec RunConfig::perturbation() const {
    PerturbationSpec spec;
    spec.sigma_t = Vec3(sigma_x, sigma_y, sigma_z);
    spec.t_max = t_max;
    spec.sigma_r = Vec3(sigma_roll_deg, sigma_pitch_deg, sigma_yaw_deg) * kDegToRad;
    spec.eps_max = eps_max_deg * kDegToRad;
    return spec;
}

void RunConfig::validate() const {
    array().validate();
    target().validate();
    perturbation().validate();
    thresholds.validate();
    grid.validate();
    if (layout_source != "spiral" && layout_source != "file")
        throw ConfigError("config: layout.source must be 'spiral' or 'file'");
    if (layout_source == "spiral") {
        if (satellite_count < 1) throw ConfigError("config: layout.count must be >= 1");
        if (target_d_min <= 0.0) throw ConfigError("config: layout.d_min must be > 0");
    } else if (layout_file.empty()) {
        throw ConfigError("config: layout.file required when layout.source = file");
    }
    if (sweep_steps < 1) throw ConfigError("config: sweep.steps must be >= 1");
    if (sweep_realizations < 1) throw ConfigError("config: sweep.realizations must be >= 1");
    if (sweep_sigma_max_translation <= 0.0 || sweep_sigma_max_rotation_deg <= 0.0)
        throw ConfigError("config: sweep maxima must be > 0");
    if (theta_cut.n_samples < 2) throw ConfigError("config: cut.samples must be >= 2");
}

RunConfig desk_preset() { return RunConfig{}; }

RunConfig paper_preset() {
    RunConfig config;
    config.array_rows = 6;
    config.array_cols = 6;
    config.satellite_count = 64;       // 2304 radiating elements
    config.target_d_min = 3.02;
    config.t_max = 1.2;
    config.sweep_steps = 40;
    config.sweep_realizations = 100;
    return config;
}

RunConfig preset_by_name(const std::string& name) {
    if (name == "desk") return desk_preset();
    if (name == "paper") return paper_preset();
    throw ConfigError("unknown preset '" + name + "' (expected desk or paper)");
}

void apply_config_entry(RunConfig& c, const std::string& key, const std::string& value) {
    using Setter = std::function<void(RunConfig&, const std::string&)>;
    static const std::map<std::string, Setter> setters = {
        {"array.rows", [](RunConfig& c, const std::string& v) { c.array_rows = parse_int("array.rows", v); }},
        {"array.cols", [](RunConfig& c, const std::string& v) { c.array_cols = parse_int("array.cols", v); }},
        {"array.spacing_x", [](RunConfig& c, const std::string& v) { c.spacing_x = parse_double("array.spacing_x", v); }},
        {"array.spacing_y", [](RunConfig& c, const std::string& v) { c.spacing_y = parse_double("array.spacing_y", v); }},
        {"array.wavelength", [](RunConfig& c, const std::string& v) { c.wavelength = parse_double("array.wavelength", v); }},
        {"element.gain_dbi", [](RunConfig& c, const std::string& v) { c.element_gain_dbi = parse_double("element.gain_dbi", v); }},
        {"element.hpbw_deg", [](RunConfig& c, const std::string& v) { c.element_hpbw_deg = parse_double("element.hpbw_deg", v); }},
        {"layout.source", [](RunConfig& c, const std::string& v) { c.layout_source = v; }},
        {"layout.count", [](RunConfig& c, const std::string& v) { c.satellite_count = parse_int("layout.count", v); }},
        {"layout.angular_step", [](RunConfig& c, const std::string& v) { c.angular_step = parse_double("layout.angular_step", v); }},
        {"layout.growth_rate", [](RunConfig& c, const std::string& v) { c.growth_rate = parse_double("layout.growth_rate", v); }},
        {"layout.d_min", [](RunConfig& c, const std::string& v) { c.target_d_min = parse_double("layout.d_min", v); }},
        {"layout.file", [](RunConfig& c, const std::string& v) { c.layout_file = v; }},
        {"target.theta_deg", [](RunConfig& c, const std::string& v) { c.target_theta_deg = parse_double("target.theta_deg", v); }},
        {"target.phi_deg", [](RunConfig& c, const std::string& v) { c.target_phi_deg = parse_double("target.phi_deg", v); }},
        {"perturb.sigma_x", [](RunConfig& c, const std::string& v) { c.sigma_x = parse_double("perturb.sigma_x", v); }},
        {"perturb.sigma_y", [](RunConfig& c, const std::string& v) { c.sigma_y = parse_double("perturb.sigma_y", v); }},
        {"perturb.sigma_z", [](RunConfig& c, const std::string& v) { c.sigma_z = parse_double("perturb.sigma_z", v); }},
        {"perturb.t_max", [](RunConfig& c, const std::string& v) { c.t_max = parse_double("perturb.t_max", v); }},
        {"perturb.sigma_roll_deg", [](RunConfig& c, const std::string& v) { c.sigma_roll_deg = parse_double("perturb.sigma_roll_deg", v); }},
        {"perturb.sigma_pitch_deg", [](RunConfig& c, const std::string& v) { c.sigma_pitch_deg = parse_double("perturb.sigma_pitch_deg", v); }},
        {"perturb.sigma_yaw_deg", [](RunConfig& c, const std::string& v) { c.sigma_yaw_deg = parse_double("perturb.sigma_yaw_deg", v); }},
        {"perturb.eps_max_deg", [](RunConfig& c, const std::string& v) { c.eps_max_deg = parse_double("perturb.eps_max_deg", v); }},
        {"kpi.main_delta_db", [](RunConfig& c, const std::string& v) { c.thresholds.main_gain_delta_db = parse_double("kpi.main_delta_db", v); }},
        {"kpi.hpbw_delta_frac", [](RunConfig& c, const std::string& v) { c.thresholds.hpbw_area_delta_frac = parse_double("kpi.hpbw_delta_frac", v); }},
        {"kpi.sll_delta_db", [](RunConfig& c, const std::string& v) { c.thresholds.sll_delta_db = parse_double("kpi.sll_delta_db", v); }},
        {"kpi.requirement_prob", [](RunConfig& c, const std::string& v) { c.thresholds.requirement_prob = parse_double("kpi.requirement_prob", v); }},
        {"sweep.variable",
         [](RunConfig& c, const std::string& v) {
             if (v == "translation") c.sweep_variable = SweepVariable::translation;
             else if (v == "rotation") c.sweep_variable = SweepVariable::rotation;
             else throw ConfigError("config: sweep.variable must be translation or rotation");
         }},
        {"sweep.sigma_max_translation", [](RunConfig& c, const std::string& v) { c.sweep_sigma_max_translation = parse_double("sweep.sigma_max_translation", v); }},
        {"sweep.sigma_max_rotation_deg", [](RunConfig& c, const std::string& v) { c.sweep_sigma_max_rotation_deg = parse_double("sweep.sigma_max_rotation_deg", v); }},
        {"sweep.steps", [](RunConfig& c, const std::string& v) { c.sweep_steps = parse_int("sweep.steps", v); }},
        {"sweep.realizations", [](RunConfig& c, const std::string& v) { c.sweep_realizations = parse_int("sweep.realizations", v); }},
        {"grid.fine_n", [](RunConfig& c, const std::string& v) { c.grid.fine_n = parse_int("grid.fine_n", v); }},
        {"grid.window_hpbw_radii", [](RunConfig& c, const std::string& v) { c.grid.window_hpbw_radii = parse_double("grid.window_hpbw_radii", v); }},
        {"grid.global_oversample", [](RunConfig& c, const std::string& v) { c.grid.global_oversample = parse_double("grid.global_oversample", v); }},
        {"cut.theta_max_deg", [](RunConfig& c, const std::string& v) { c.theta_cut.theta_max_deg = parse_double("cut.theta_max_deg", v); }},
        {"cut.samples", [](RunConfig& c, const std::string& v) { c.theta_cut.n_samples = parse_int("cut.samples", v); }},
        {"seed", [](RunConfig& c, const std::string& v) { c.master_seed = parse_u64("seed", v); }},
        {"workers", [](RunConfig& c, const std::string& v) { c.workers = parse_int("workers", v); }},
        {"out", [](RunConfig& c, const std::string& v) { c.out_dir = v; }},
    };

    const auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError("config: unknown key '" + key + "'");
    it->second(c, value);
}

void apply_config_file(RunConfig& config, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(line_no) + " is not key = value");
        apply_config_entry(config, trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
    }
}

std::vector<std::pair<std::string, std::string>> flatten_config(const RunConfig& c) {
    std::vector<std::pair<std::string, std::string>> kv;
    const auto add = [&kv](const std::string& key, const std::string& value) {
        kv.emplace_back(key, value);
    };
    const auto add_d = [&add](const std::string& key, double value) {
        add(key, format_double(value));
    };
    add("array.rows", std::to_string(c.array_rows));
    add("array.cols", std::to_string(c.array_cols));
    add_d("array.spacing_x", c.spacing_x);
    add_d("array.spacing_y", c.spacing_y);
    add_d("array.wavelength", c.wavelength);
    add_d("element.gain_dbi", c.element_gain_dbi);
    add_d("element.hpbw_deg", c.element_hpbw_deg);
    add("layout.source", c.layout_source);
    add("layout.count", std::to_string(c.satellite_count));
    add_d("layout.angular_step", c.angular_step);
    add_d("layout.growth_rate", c.growth_rate);
    add_d("layout.d_min", c.target_d_min);
    add("layout.file", c.layout_file);
    add_d("target.theta_deg", c.target_theta_deg);
    add_d("target.phi_deg", c.target_phi_deg);
    add_d("perturb.sigma_x", c.sigma_x);
    add_d("perturb.sigma_y", c.sigma_y);
    add_d("perturb.sigma_z", c.sigma_z);
    add_d("perturb.t_max", c.t_max);
    add_d("perturb.sigma_roll_deg", c.sigma_roll_deg);
    add_d("perturb.sigma_pitch_deg", c.sigma_pitch_deg);
    add_d("perturb.sigma_yaw_deg", c.sigma_yaw_deg);
    add_d("perturb.eps_max_deg", c.eps_max_deg);
    add_d("kpi.main_delta_db", c.thresholds.main_gain_delta_db);
    add_d("kpi.hpbw_delta_frac", c.thresholds.hpbw_area_delta_frac);
    add_d("kpi.sll_delta_db", c.thresholds.sll_delta_db);
    add_d("kpi.requirement_prob", c.thresholds.requirement_prob);
    add("sweep.variable", to_string(c.sweep_variable));
    add_d("sweep.sigma_max_translation", c.sweep_sigma_max_translation);
    add_d("sweep.sigma_max_rotation_deg", c.sweep_sigma_max_rotation_deg);
    add("sweep.steps", std::to_string(c.sweep_steps));
    add("sweep.realizations", std::to_string(c.sweep_realizations));
    add("grid.fine_n", std::to_string(c.grid.fine_n));
    add_d("grid.window_hpbw_radii", c.grid.window_hpbw_radii);
    add_d("grid.global_oversample", c.grid.global_oversample);
    add_d("cut.theta_max_deg", c.theta_cut.theta_max_deg);
    add("cut.samples", std::to_string(c.theta_cut.n_samples));
    add("seed", std::to_string(c.master_seed));
    add("workers", std::to_string(c.workers));
    add("out", c.out_dir);
    std::sort(kv.begin(), kv.end());
    return kv;
}

double effective_growth_rate(const RunConfig& config) {
    if (config.growth_rate > 0.0) return config.growth_rate;
    if (config.satellite_count < 2 || config.angular_step == 0.0) return 0.0;
    // outer/inner radius ratio held at e^1.8 across satellite counts
    return 1.8 / ((config.satellite_count - 1) * config.angular_step);
}

FormationLayout resolve_layout(const RunConfig& config) {
    if (config.layout_source == "file") return read_layout_file(config.layout_file);
    return lsa_layout(config.satellite_count, config.angular_step, effective_growth_rate(config),
                      config.target_d_min);
}

std::vector<double> sweep_sigmas(const RunConfig& config) {
    const double sigma_max = config.sweep_variable == SweepVariable::translation
                                 ? config.sweep_sigma_max_translation
                                 : config.sweep_sigma_max_rotation_deg * kDegToRad;
    std::vector<double> sigmas(static_cast<std::size_t>(config.sweep_steps));
    if (config.sweep_steps == 1) {
        sigmas[0] = 0.0;
        return sigmas;
    }
    for (int i = 0; i < config.sweep_steps; ++i)
        sigmas[static_cast<std::size_t>(i)] = sigma_max * i / (config.sweep_steps - 1);
    return sigmas;
}

SweepSpec make_sweep_spec(const RunConfig& config, const FormationLayout& layout) {
    SweepSpec spec;
    spec.variable = config.sweep_variable;
    spec.sigma_values = sweep_sigmas(config);
    spec.realizations_per_value = config.sweep_realizations;
    spec.layout = layout;
    spec.array = config.array();
    spec.target = config.target();
    spec.pert_template = config.perturbation();
    spec.thresholds = config.thresholds;
    spec.grid_rules = config.grid;
    spec.master_seed = config.master_seed;
    spec.workers = config.workers;
    return spec;
}

}  // namespace satbeam
