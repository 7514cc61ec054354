#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "satbeam/analysis.hpp"
#include "satbeam/perturbation.hpp"

namespace satbeam {

enum class SweepVariable { translation, rotation };
enum class Variant { perturbed, calibrated };
enum class Kpi { g_main, a_hpbw, g_sll };

const char* to_string(SweepVariable v);
const char* to_string(Variant v);
const char* to_string(Kpi k);

/// Rules that derive the evaluation grids from layout, array, and target.
struct GridRules {
    int fine_n = 101;                 // nodes per axis of the fine window
    double window_hpbw_radii = 5.0;   // fine half-width in nominal -3 dB radii
    double global_oversample = 4.0;   // samples per lambda/D lobe width

    void validate() const;
};

struct PatternGrids {
    GridSpec fine;
    GridSpec global;
};

PatternGrids derive_grids(const FormationLayout& layout, const ArrayConfig& cfg,
                          const BeamTarget& target, const GridRules& rules);

/// Everything nominal a sweep needs, computed once per (layout, target).
struct NominalContext {
    RealizationGeometry geometry;
    PrecodingWeights weights;
    PatternGrids grids;
    PatternSet maps;
    NominalAnalysis analysis;
};

NominalContext build_nominal_context(const FormationLayout& layout, const ArrayConfig& cfg,
                                     const BeamTarget& target, const GridRules& rules,
                                     int num_threads = 0);

struct RealizationResult {
    KpiReport perturbed;
    KpiReport calibrated;
    bool failed = false;
    std::string failure;
};

/// One Monte Carlo realization: per-satellite perturbation draws, perturbed
/// geometry, perturbed (nominal weights) and calibrated (perturbed weights)
/// maps, both compared against the cached nominal.
RealizationResult run_realization(const NominalContext& nominal, const FormationLayout& layout,
                                  const ArrayConfig& cfg, const BeamTarget& target,
                                  const PerturbationSpec& spec, const KpiThresholds& thresholds,
                                  std::uint64_t master_seed, std::uint32_t sweep_index,
                                  std::uint32_t realization_index, int num_threads = 1);

struct SweepSpec {
    SweepVariable variable = SweepVariable::translation;
    std::vector<double> sigma_values;  // strictly increasing, starting at 0; [m] or [rad]
    int realizations_per_value = 30;
    FormationLayout layout;
    ArrayConfig array;
    BeamTarget target;
    PerturbationSpec pert_template;  // carries bounds and the non-swept sigmas
    KpiThresholds thresholds;
    GridRules grid_rules;
    std::uint64_t master_seed = 0;
    int workers = 0;  // <= 0: OpenMP default

    void validate() const;
};

/// One raw realization outcome, as exported to the per-realization CSV.
struct RealizationRow {
    double sigma = 0.0;
    int realization = 0;
    Variant variant = Variant::perturbed;
    KpiReport report;
};

struct SweepPoint {
    double sigma = 0.0;
    int completed = 0;
    int failed = 0;
    // probability[variant][kpi]
    std::array<std::array<double, 3>, 2> probability{};
};

struct SweepResult {
    SweepVariable variable = SweepVariable::translation;
    std::vector<SweepPoint> points;
    std::vector<RealizationRow> rows;  // deterministic (sigma, realization) order
    int total_failed = 0;
    double wall_seconds = 0.0;
};

/// Full Monte Carlo sweep; deterministic for a fixed master seed independent
/// of the worker count. Failed realizations are counted and excluded.
SweepResult run_sweep(const SweepSpec& spec);

/// Single seeded realization producing the nominal/perturbed/calibrated maps
/// and theta-cuts through phi = 0.
struct RepresentativeResult {
    PatternSet nominal;
    PatternSet perturbed;
    PatternSet calibrated;
    ThetaCut cut_nominal;
    ThetaCut cut_perturbed;
    ThetaCut cut_calibrated;
    KpiReport report_perturbed;
    KpiReport report_calibrated;
};

struct ThetaCutRules {
    double theta_max_deg = 90.0;
    int n_samples = 721;
};

RepresentativeResult run_representative(const FormationLayout& layout, const ArrayConfig& cfg,
                                        const BeamTarget& target, const PerturbationSpec& spec,
                                        const KpiThresholds& thresholds, const GridRules& rules,
                                        const ThetaCutRules& cut_rules, std::uint64_t master_seed,
                                        int workers = 0);

}  // namespace satbeam
