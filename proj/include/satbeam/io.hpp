#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "satbeam/config.hpp"

namespace satbeam {

inline constexpr const char* kToolName = "satbeam";
inline constexpr const char* kToolVersion = "0.1.0";

/// Shortest round-trip decimal representation (to_chars).
std::string format_double(double value);

std::string iso8601_timestamp();

/// Header block shared by every output file: tool version, timestamp (the
/// only line allowed to vary between identical runs), master seed, and the
/// flat config echo. `prefix` is the comment leader ("# " for text files).
void write_header_block(std::ostream& os, const RunConfig& config, const std::string& prefix);

// --- layout files -----------------------------------------------------------
// One satellite per line: n tx ty tz r11 r12 r13 r21 r22 r23 r31 r32 r33

void write_layout_file(const std::string& path, const FormationLayout& layout,
                       const RunConfig& config);
void write_layout_body(std::ostream& os, const FormationLayout& layout);
FormationLayout read_layout_file(const std::string& path);

// --- pattern maps ------------------------------------------------------------
// Header carries `# u_min u_max n_u`, `# v_min v_max n_v`, `# seed ...`;
// body is row-major power in dB, NaN for invisible nodes.

void write_pattern_map(const std::string& path, const PatternMap& map, const RunConfig& config);
PatternMap read_pattern_map(const std::string& path);

void write_theta_cut(const std::string& path, const ThetaCut& cut, const RunConfig& config);

// --- KPI / sweep exports ------------------------------------------------------

void write_realization_csv(const std::string& path, const SweepResult& result,
                           const RunConfig& config);
void write_sweep_csv(const std::string& path, const SweepResult& result, const RunConfig& config);
void write_sweep_csv_body(std::ostream& os, const SweepResult& result);
void write_sweep_json(const std::string& path, const SweepResult& result, const RunConfig& config);

struct SweepCurvePoint {
    double sigma = 0.0;
    double probability = 0.0;
    int n_realizations = 0;
};

/// Rows of a sweep CSV grouped by (variant, kpi), sigma order preserved.
struct SweepSeries {
    std::string variant;
    std::string kpi;
    std::vector<SweepCurvePoint> points;
};

struct SweepCurves {
    std::vector<SweepSeries> series;
};

SweepCurves read_sweep_csv(const std::string& path);

struct RequirementRow {
    std::string variant;
    std::string kpi;
    double sigma_star = 0.0;
};

void write_requirements_csv(const std::string& path, const std::vector<RequirementRow>& rows,
                            double target, const RunConfig& config);

void write_metrics_json(const std::string& path, const LayoutMetrics& metrics,
                        const RunConfig& config);

}  // namespace satbeam
