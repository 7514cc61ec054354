#pragma once

#include <utility>
#include <vector>

#include "satbeam/pattern.hpp"

namespace satbeam {

struct KpiThresholds {
    double main_gain_delta_db = 1.0;     // dB
    double hpbw_area_delta_frac = 0.02;  // fraction
    double sll_delta_db = 1.0;           // dB
    double requirement_prob = 0.90;

    void validate() const;
};

struct KpiReport {
    double delta_g_main = 0.0;  // |dB difference| of main-lobe gain
    double delta_a_hpbw = 0.0;  // |relative change| of the -3 dB contour area
    double delta_g_sll = 0.0;   // signed dB change of the max sidelobe level
    bool pass_g = true;
    bool pass_a = true;
    bool pass_sll = true;

    bool all_pass() const { return pass_g && pass_a && pass_sll; }
};

/// Main-lobe exclusion disk in uv, derived once from the nominal map.
struct SllMask {
    double u0 = 0.0;
    double v0 = 0.0;
    double radius = 0.0;

    bool contains(double u, double v) const {
        const double du = u - u0, dv = v - v0;
        return du * du + dv * dv <= radius * radius;
    }
};

/// Maximum power (dB) within the main-lobe window (the fine map). Throws
/// WindowMiss when the steering direction lies outside the map.
double main_lobe_gain(const PatternMap& map);

/// Area of the -3 dB region around the peak: 4-connected flood fill from the
/// peak node over nodes >= peak - 3 dB, times the cell area. Throws
/// ResolutionTooCoarse when the region touches the window edge or holds
/// fewer than 8 nodes.
double hpbw_area(const PatternMap& map);

/// Maximum power (dB) over valid nodes outside the exclusion mask.
double max_sll(const PatternMap& map, const SllMask& exclusion);

/// Factor applied to the nominal -3 dB radius to clear the first null.
inline constexpr double kSllMaskRadiusFactor = 2.5;

/// Nominal-side KPI ingredients, computed once per (layout, target) and
/// reused verbatim for every perturbed/calibrated comparison.
struct NominalAnalysis {
    double g_main_db = 0.0;
    double a_hpbw = 0.0;
    double sll_db = 0.0;
    SllMask mask;
};

NominalAnalysis analyze_nominal(const PatternSet& nominal);

/// KPI deltas of `other` against the nominal reference. Grids must match.
KpiReport kpi_compare(const PatternSet& nominal, const NominalAnalysis& nominal_analysis,
                      const PatternSet& other, const KpiThresholds& thr);

/// Convenience overload that derives the nominal analysis on the fly.
KpiReport kpi_compare(const PatternSet& nominal, const PatternSet& other,
                      const KpiThresholds& thr);

/// Largest sigma* such that every curve point at sigma <= sigma* has
/// probability >= target; linear interpolation at the first crossing, last
/// sigma when the curve never crosses. Curve points are (sigma, probability)
/// with strictly increasing sigma.
double requirement_threshold(const std::vector<std::pair<double, double>>& curve, double target);

}  // namespace satbeam
