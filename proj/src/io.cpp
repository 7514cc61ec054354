#include "satbeam/io.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace satbeam {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("io: cannot write '" + path + "'");
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("io: cannot read '" + path + "'");
    return in;
}

double parse_token_double(const std::string& token) {
    if (token == "NaN" || token == "nan") return std::numeric_limits<double>::quiet_NaN();
    try {
        std::size_t used = 0;
        const double v = std::stod(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("io: bad numeric token '" + token + "'");
    }
}

std::vector<std::string> split_ws(const std::string& line) {
    std::istringstream iss(line);
    std::vector<std::string> tokens;
    std::string token;
    while (iss >> token) tokens.push_back(token);
    return tokens;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream iss(line);
    while (std::getline(iss, field, ',')) fields.push_back(field);
    return fields;
}

}  // namespace

std::string format_double(double value) {
    if (std::isnan(value)) return "NaN";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

std::string iso8601_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

void write_header_block(std::ostream& os, const RunConfig& config, const std::string& prefix) {
    os << prefix << kToolName << " " << kToolVersion << "\n";
    os << prefix << "timestamp " << iso8601_timestamp() << "\n";
    os << prefix << "seed " << config.master_seed << "\n";
    for (const auto& [key, value] : flatten_config(config))
        os << prefix << "config " << key << " = " << value << "\n";
}

// --- layout files -------------------------------------------------------------

void write_layout_body(std::ostream& os, const FormationLayout& layout) {
    for (int n = 0; n < layout.count(); ++n) {
        const auto& pose = layout.poses[static_cast<std::size_t>(n)];
        os << n;
        for (int c = 0; c < 3; ++c) os << " " << format_double(pose.translation[c]);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) os << " " << format_double(pose.rotation(r, c));
        os << "\n";
    }
}

void write_layout_file(const std::string& path, const FormationLayout& layout,
                       const RunConfig& config) {
    auto out = open_out(path);
    write_header_block(out, config, "# ");
    out << "# n tx ty tz r11 r12 r13 r21 r22 r23 r31 r32 r33\n";
    write_layout_body(out, layout);
}

FormationLayout read_layout_file(const std::string& path) {
    auto in = open_in(path);
    std::map<int, SatellitePose> by_index;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto tokens = split_ws(line);
        if (tokens.empty()) continue;
        if (tokens.size() != 13)
            throw ConfigError("layout file: expected 13 columns, got " +
                              std::to_string(tokens.size()));
        const int n = static_cast<int>(parse_token_double(tokens[0]));
        SatellitePose pose;
        for (int c = 0; c < 3; ++c) pose.translation[c] = parse_token_double(tokens[1 + c]);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                pose.rotation(r, c) = parse_token_double(tokens[static_cast<std::size_t>(4 + 3 * r + c)]);
        if (!by_index.emplace(n, pose).second)
            throw ConfigError("layout file: duplicate satellite index " + std::to_string(n));
    }
    if (by_index.empty()) throw ConfigError("layout file: no satellites in '" + path + "'");

    FormationLayout layout;
    layout.poses.reserve(by_index.size());
    int expected = 0;
    for (const auto& [n, pose] : by_index) {
        if (n != expected++)
            throw ConfigError("layout file: satellite indices must be 0..Ns-1 without gaps");
        layout.poses.push_back(pose);
    }
    layout.validate();
    return layout;
}

// --- pattern maps ---------------------------------------------------------------

void write_pattern_map(const std::string& path, const PatternMap& map, const RunConfig& config) {
    auto out = open_out(path);
    write_header_block(out, config, "# ");
    out << "# u_min u_max n_u " << format_double(map.grid.u_min) << " "
        << format_double(map.grid.u_max) << " " << map.grid.n_u << "\n";
    out << "# v_min v_max n_v " << format_double(map.grid.v_min) << " "
        << format_double(map.grid.v_max) << " " << map.grid.n_v << "\n";
    out << "# steer theta0 phi0 " << format_double(map.target.theta0) << " "
        << format_double(map.target.phi0) << "\n";
    for (int iv = 0; iv < map.grid.n_v; ++iv) {
        for (int iu = 0; iu < map.grid.n_u; ++iu) {
            if (iu) out << " ";
            out << (map.is_valid(iu, iv) ? format_double(map.at(iu, iv)) : "NaN");
        }
        out << "\n";
    }
}

PatternMap read_pattern_map(const std::string& path) {
    auto in = open_in(path);
    PatternMap map;
    bool have_u = false, have_v = false;
    std::vector<double> values;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.front() == '#') {
            const auto tokens = split_ws(line);
            if (tokens.size() >= 7 && tokens[1] == "u_min" && tokens[2] == "u_max" &&
                tokens[3] == "n_u") {
                map.grid.u_min = parse_token_double(tokens[4]);
                map.grid.u_max = parse_token_double(tokens[5]);
                map.grid.n_u = static_cast<int>(parse_token_double(tokens[6]));
                have_u = true;
            } else if (tokens.size() >= 7 && tokens[1] == "v_min" && tokens[2] == "v_max" &&
                       tokens[3] == "n_v") {
                map.grid.v_min = parse_token_double(tokens[4]);
                map.grid.v_max = parse_token_double(tokens[5]);
                map.grid.n_v = static_cast<int>(parse_token_double(tokens[6]));
                have_v = true;
            } else if (tokens.size() >= 6 && tokens[1] == "steer") {
                map.target.theta0 = parse_token_double(tokens[4]);
                map.target.phi0 = parse_token_double(tokens[5]);
            }
            continue;
        }
        for (const auto& token : split_ws(line)) values.push_back(parse_token_double(token));
    }
    if (!have_u || !have_v) throw ConfigError("pattern file: missing grid header lines");
    if (static_cast<int>(values.size()) != map.grid.node_count())
        throw ConfigError("pattern file: value count does not match the grid");
    map.power_db.resize(values.size());
    map.valid.resize(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const bool ok = !std::isnan(values[i]);
        map.valid[i] = ok ? 1 : 0;
        map.power_db[i] = ok ? values[i] : kPowerFloorDb;
    }
    return map;
}

void write_theta_cut(const std::string& path, const ThetaCut& cut, const RunConfig& config) {
    auto out = open_out(path);
    write_header_block(out, config, "# ");
    out << "theta_deg,power_db\n";
    for (std::size_t i = 0; i < cut.theta_rad.size(); ++i)
        out << format_double(cut.theta_rad[i] * 180.0 / std::numbers::pi) << ","
            << format_double(cut.power_db[i]) << "\n";
}

// --- KPI / sweep exports --------------------------------------------------------

void write_realization_csv(const std::string& path, const SweepResult& result,
                           const RunConfig& config) {
    auto out = open_out(path);
    write_header_block(out, config, "# ");
    out << "sweep_sigma,realization,variant,dG_main_db,dA_hpbw_frac,dG_sll_db,pass_g,pass_a,"
           "pass_sll\n";
    for (const auto& row : result.rows) {
        out << format_double(row.sigma) << "," << row.realization << "," << to_string(row.variant)
            << "," << format_double(row.report.delta_g_main) << ","
            << format_double(row.report.delta_a_hpbw) << ","
            << format_double(row.report.delta_g_sll) << "," << (row.report.pass_g ? 1 : 0) << ","
            << (row.report.pass_a ? 1 : 0) << "," << (row.report.pass_sll ? 1 : 0) << "\n";
    }
}

void write_sweep_csv_body(std::ostream& os, const SweepResult& result) {
    os << "sigma,variant,kpi,probability,n_realizations\n";
    constexpr Variant kVariants[2] = {Variant::perturbed, Variant::calibrated};
    constexpr Kpi kKpis[3] = {Kpi::g_main, Kpi::a_hpbw, Kpi::g_sll};
    for (const auto& point : result.points)
        for (int var = 0; var < 2; ++var)
            for (int kpi = 0; kpi < 3; ++kpi)
                os << format_double(point.sigma) << "," << to_string(kVariants[var]) << ","
                   << to_string(kKpis[kpi]) << ","
                   << format_double(point.probability[static_cast<std::size_t>(var)]
                                                     [static_cast<std::size_t>(kpi)])
                   << "," << point.completed << "\n";
}

void write_sweep_csv(const std::string& path, const SweepResult& result, const RunConfig& config) {
    auto out = open_out(path);
    write_header_block(out, config, "# ");
    write_sweep_csv_body(out, result);
}

void write_sweep_json(const std::string& path, const SweepResult& result,
                      const RunConfig& config) {
    nlohmann::json j;
    j["tool"] = std::string(kToolName) + " " + kToolVersion;
    j["seed"] = config.master_seed;
    j["variable"] = to_string(result.variable);
    // volatile run metadata on a single line so reruns differ in one line only
    j["wall_clock"] =
        "timestamp=" + iso8601_timestamp() + " duration_s=" + format_double(result.wall_seconds);
    nlohmann::json cfg;
    for (const auto& [key, value] : flatten_config(config)) cfg[key] = value;
    j["config"] = cfg;
    j["total_failed"] = result.total_failed;
    int completed = 0;
    nlohmann::json points = nlohmann::json::array();
    for (const auto& point : result.points) {
        completed += point.completed;
        nlohmann::json p;
        p["sigma"] = point.sigma;
        p["completed"] = point.completed;
        p["failed"] = point.failed;
        for (int var = 0; var < 2; ++var) {
            const char* variant = var == 0 ? "perturbed" : "calibrated";
            p[variant] = {{"g_main", point.probability[static_cast<std::size_t>(var)][0]},
                          {"a_hpbw", point.probability[static_cast<std::size_t>(var)][1]},
                          {"g_sll", point.probability[static_cast<std::size_t>(var)][2]}};
        }
        points.push_back(p);
    }
    j["n_realizations"] = completed;
    j["points"] = points;
    auto out = open_out(path);
    out << j.dump(2) << "\n";
}

SweepCurves read_sweep_csv(const std::string& path) {
    auto in = open_in(path);
    SweepCurves curves;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') continue;
        if (!header_seen) {
            if (line != "sigma,variant,kpi,probability,n_realizations")
                throw ConfigError("sweep csv: unexpected column header '" + line + "'");
            header_seen = true;
            continue;
        }
        const auto fields = split_csv(line);
        if (fields.size() != 5) throw ConfigError("sweep csv: expected 5 columns");
        const std::string& variant = fields[1];
        const std::string& kpi = fields[2];
        auto it = std::find_if(curves.series.begin(), curves.series.end(),
                               [&](const SweepSeries& s) {
                                   return s.variant == variant && s.kpi == kpi;
                               });
        if (it == curves.series.end()) {
            curves.series.push_back({variant, kpi, {}});
            it = std::prev(curves.series.end());
        }
        it->points.push_back({parse_token_double(fields[0]), parse_token_double(fields[3]),
                              static_cast<int>(parse_token_double(fields[4]))});
    }
    if (!header_seen) throw ConfigError("sweep csv: no column header found");
    return curves;
}

void write_requirements_csv(const std::string& path, const std::vector<RequirementRow>& rows,
                            double target, const RunConfig& config) {
    auto out = open_out(path);
    write_header_block(out, config, "# ");
    out << "variant,kpi,sigma_star,target_prob\n";
    for (const auto& row : rows)
        out << row.variant << "," << row.kpi << "," << format_double(row.sigma_star) << ","
            << format_double(target) << "\n";
}

void write_metrics_json(const std::string& path, const LayoutMetrics& metrics,
                        const RunConfig& config) {
    nlohmann::json j;
    j["tool"] = std::string(kToolName) + " " + kToolVersion;
    j["timestamp"] = iso8601_timestamp();
    j["seed"] = config.master_seed;
    nlohmann::json cfg;
    for (const auto& [key, value] : flatten_config(config)) cfg[key] = value;
    j["config"] = cfg;
    if (std::isfinite(metrics.d_sat_min))
        j["d_sat_min_m"] = metrics.d_sat_min;
    else
        j["d_sat_min_m"] = nullptr;
    j["a_virtual_m2"] = metrics.a_virtual;
    j["delta_g_main_sll_db"] = metrics.delta_g_main_sll;
    auto out = open_out(path);
    out << j.dump(2) << "\n";
}

}  // namespace satbeam
