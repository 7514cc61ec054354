#include "satbeam/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>

namespace satbeam {

void KpiThresholds::validate() const {
    if (main_gain_delta_db <= 0.0 || hpbw_area_delta_frac <= 0.0 || sll_delta_db <= 0.0)
        throw ConfigError("kpi: thresholds must be > 0");
    if (requirement_prob <= 0.0 || requirement_prob >= 1.0)
        throw ConfigError("kpi: requirement probability must be in (0, 1)");
}

double main_lobe_gain(const PatternMap& map) {
    const double u0 = std::sin(map.target.theta0) * std::cos(map.target.phi0);
    const double v0 = std::sin(map.target.theta0) * std::sin(map.target.phi0);
    if (u0 < map.grid.u_min || u0 > map.grid.u_max || v0 < map.grid.v_min || v0 > map.grid.v_max)
        throw WindowMiss("main_lobe_gain: steering direction outside the map");
    return map.peak_db();
}

double hpbw_area(const PatternMap& map) {
    const int n_u = map.grid.n_u, n_v = map.grid.n_v;
    // peak node
    int peak_iu = -1, peak_iv = -1;
    double peak = -std::numeric_limits<double>::infinity();
    for (int iv = 0; iv < n_v; ++iv)
        for (int iu = 0; iu < n_u; ++iu)
            if (map.is_valid(iu, iv) && map.at(iu, iv) > peak) {
                peak = map.at(iu, iv);
                peak_iu = iu;
                peak_iv = iv;
            }
    if (peak_iu < 0) throw EmptyRegion("hpbw_area: map has no valid nodes");

    const double level = peak - 3.0;
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(n_u) * n_v, 0);
    std::deque<std::pair<int, int>> frontier{{peak_iu, peak_iv}};
    seen[static_cast<std::size_t>(peak_iv) * n_u + peak_iu] = 1;
    long filled = 0;
    bool touches_edge = false;
    while (!frontier.empty()) {
        const auto [iu, iv] = frontier.front();
        frontier.pop_front();
        ++filled;
        if (iu == 0 || iu == n_u - 1 || iv == 0 || iv == n_v - 1) touches_edge = true;
        constexpr int kSteps[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
        for (const auto& s : kSteps) {
            const int ju = iu + s[0], jv = iv + s[1];
            if (ju < 0 || ju >= n_u || jv < 0 || jv >= n_v) continue;
            auto& mark = seen[static_cast<std::size_t>(jv) * n_u + ju];
            if (mark || !map.is_valid(ju, jv) || map.at(ju, jv) < level) continue;
            mark = 1;
            frontier.emplace_back(ju, jv);
        }
    }
    if (touches_edge)
        throw ResolutionTooCoarse("hpbw_area: -3 dB region touches the window boundary");
    if (filled < 8) throw ResolutionTooCoarse("hpbw_area: fewer than 8 nodes in the -3 dB region");
    return static_cast<double>(filled) * map.grid.du() * map.grid.dv();
}

double max_sll(const PatternMap& map, const SllMask& exclusion) {
    double peak = -std::numeric_limits<double>::infinity();
    bool any = false;
    for (int iv = 0; iv < map.grid.n_v; ++iv) {
        const double v = map.grid.v_at(iv);
        for (int iu = 0; iu < map.grid.n_u; ++iu) {
            if (!map.is_valid(iu, iv) || exclusion.contains(map.grid.u_at(iu), v)) continue;
            any = true;
            peak = std::max(peak, map.at(iu, iv));
        }
    }
    if (!any) throw EmptyRegion("max_sll: exclusion mask covers every valid node");
    return peak;
}

NominalAnalysis analyze_nominal(const PatternSet& nominal) {
    NominalAnalysis out;
    out.g_main_db = main_lobe_gain(nominal.fine);
    out.a_hpbw = hpbw_area(nominal.fine);
    const double r3db = std::sqrt(out.a_hpbw / std::numbers::pi);
    out.mask.u0 = std::sin(nominal.fine.target.theta0) * std::cos(nominal.fine.target.phi0);
    out.mask.v0 = std::sin(nominal.fine.target.theta0) * std::sin(nominal.fine.target.phi0);
    out.mask.radius = kSllMaskRadiusFactor * r3db;
    out.sll_db = max_sll(nominal.global, out.mask);
    return out;
}

KpiReport kpi_compare(const PatternSet& nominal, const NominalAnalysis& nominal_analysis,
                      const PatternSet& other, const KpiThresholds& thr) {
    thr.validate();
    if (!(nominal.fine.grid == other.fine.grid) || !(nominal.global.grid == other.global.grid))
        throw GridMismatch("kpi_compare: grid metadata differs");

    KpiReport report;
    report.delta_g_main = std::abs(nominal_analysis.g_main_db - main_lobe_gain(other.fine));
    report.delta_a_hpbw =
        std::abs(hpbw_area(other.fine) - nominal_analysis.a_hpbw) / nominal_analysis.a_hpbw;
    report.delta_g_sll = max_sll(other.global, nominal_analysis.mask) - nominal_analysis.sll_db;
    report.pass_g = report.delta_g_main < thr.main_gain_delta_db;
    report.pass_a = report.delta_a_hpbw < thr.hpbw_area_delta_frac;
    report.pass_sll = report.delta_g_sll < thr.sll_delta_db;
    return report;
}

KpiReport kpi_compare(const PatternSet& nominal, const PatternSet& other,
                      const KpiThresholds& thr) {
    return kpi_compare(nominal, analyze_nominal(nominal), other, thr);
}

double requirement_threshold(const std::vector<std::pair<double, double>>& curve, double target) {
    if (curve.empty()) throw EmptyCurve("requirement_threshold: no curve points");
    for (std::size_t i = 1; i < curve.size(); ++i)
        if (curve[i].first <= curve[i - 1].first)
            throw ConfigError("requirement_threshold: sigmas must be strictly increasing");

    if (curve.front().second < target) return curve.front().first;
    for (std::size_t i = 1; i < curve.size(); ++i) {
        const auto [s0, p0] = curve[i - 1];
        const auto [s1, p1] = curve[i];
        if (p1 < target) {
            // linear interpolation at the first crossing
            return s0 + (target - p0) * (s1 - s0) / (p1 - p0);
        }
    }
    return curve.back().first;
}

}  // namespace satbeam
