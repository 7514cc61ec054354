#include "satbeam/montecarlo.hpp"

#include <omp.h>

#include <chrono>
#include <cmath>
#include <numbers>

namespace satbeam {

const char* to_string(SweepVariable v) {
    return v == SweepVariable::translation ? "translation" : "rotation";
}

const char* to_string(Variant v) { return v == Variant::perturbed ? "perturbed" : "calibrated"; }

const char* to_string(Kpi k) {
    switch (k) {
        case Kpi::g_main: return "g_main";
        case Kpi::a_hpbw: return "a_hpbw";
        default: return "g_sll";
    }
}

void GridRules::validate() const {
    if (fine_n < 9) throw ConfigError("grid: fine_n must be >= 9");
    if (window_hpbw_radii <= 1.0) throw ConfigError("grid: window must exceed one -3 dB radius");
    if (global_oversample < 2.0) throw ConfigError("grid: global oversampling must be >= 2");
}

PatternGrids derive_grids(const FormationLayout& layout, const ArrayConfig& cfg,
                          const BeamTarget& target, const GridRules& rules) {
    rules.validate();
    target.validate();

    const auto geom = make_realization_geometry(layout, cfg);
    const double aperture = std::max(max_pairwise_distance_xy(geom.positions), cfg.wavelength);

    // Narrowest lobe feature has uv width ~ lambda / D.
    const double r3db_est = 0.51 * cfg.wavelength / aperture;
    const double half_width = rules.window_hpbw_radii * r3db_est;
    const double u0 = std::sin(target.theta0) * std::cos(target.phi0);
    const double v0 = std::sin(target.theta0) * std::sin(target.phi0);

    PatternGrids grids;
    grids.fine.u_min = u0 - half_width;
    grids.fine.u_max = u0 + half_width;
    grids.fine.v_min = v0 - half_width;
    grids.fine.v_max = v0 + half_width;
    grids.fine.n_u = grids.fine.n_v = rules.fine_n | 1;  // odd: keep the center node exact

    const double du = cfg.wavelength / (rules.global_oversample * aperture);
    const int half_nodes = static_cast<int>(std::ceil(1.0 / du));
    grids.global.u_min = grids.global.v_min = -1.0;
    grids.global.u_max = grids.global.v_max = 1.0;
    grids.global.n_u = grids.global.n_v = 2 * half_nodes + 1;
    return grids;
}

NominalContext build_nominal_context(const FormationLayout& layout, const ArrayConfig& cfg,
                                     const BeamTarget& target, const GridRules& rules,
                                     int num_threads) {
    layout.validate();
    cfg.validate();

    NominalContext ctx;
    ctx.grids = derive_grids(layout, cfg, target, rules);
    ctx.geometry = make_realization_geometry(layout, cfg);
    const Vec3 k0 = wave_vector(target.theta0, target.phi0, cfg.wavelength);
    ctx.weights = mrt_weights(steering_vector(ctx.geometry, k0));
    ctx.maps.fine = evaluate_pattern(ctx.geometry, cfg, ctx.weights, target, ctx.grids.fine,
                                     num_threads);
    ctx.maps.global = evaluate_pattern(ctx.geometry, cfg, ctx.weights, target, ctx.grids.global,
                                       num_threads);
    ctx.analysis = analyze_nominal(ctx.maps);
    return ctx;
}

RealizationResult run_realization(const NominalContext& nominal, const FormationLayout& layout,
                                  const ArrayConfig& cfg, const BeamTarget& target,
                                  const PerturbationSpec& spec, const KpiThresholds& thresholds,
                                  std::uint64_t master_seed, std::uint32_t sweep_index,
                                  std::uint32_t realization_index, int num_threads) {
    RealizationResult result;
    try {
        std::vector<PerturbationSample> samples;
        samples.reserve(layout.poses.size());
        for (std::uint32_t n = 0; n < layout.poses.size(); ++n) {
            RngStream stream(SeedSpec{master_seed, sweep_index, realization_index, n});
            samples.push_back(sample_perturbation(spec, stream));
        }

        const auto geom = make_realization_geometry(layout, cfg, samples);
        const Vec3 k0 = wave_vector(target.theta0, target.phi0, cfg.wavelength);
        PrecodingWeights w_cal = mrt_weights(steering_vector(geom, k0));
        w_cal.provenance = WeightProvenance::perturbed_calibrated;

        PatternSet perturbed;
        perturbed.fine = evaluate_pattern(geom, cfg, nominal.weights, target, nominal.grids.fine,
                                          num_threads);
        perturbed.global = evaluate_pattern(geom, cfg, nominal.weights, target,
                                            nominal.grids.global, num_threads);
        PatternSet calibrated;
        calibrated.fine = evaluate_pattern(geom, cfg, w_cal, target, nominal.grids.fine,
                                           num_threads);
        calibrated.global = evaluate_pattern(geom, cfg, w_cal, target, nominal.grids.global,
                                             num_threads);

        result.perturbed = kpi_compare(nominal.maps, nominal.analysis, perturbed, thresholds);
        result.calibrated = kpi_compare(nominal.maps, nominal.analysis, calibrated, thresholds);
    } catch (const Error& e) {
        result.failed = true;
        result.failure = e.what();
    }
    return result;
}

void SweepSpec::validate() const {
    array.validate();
    layout.validate();
    target.validate();
    thresholds.validate();
    grid_rules.validate();
    if (sigma_values.empty()) throw ConfigError("sweep: sigma_values must not be empty");
    if (sigma_values.front() != 0.0) throw ConfigError("sweep: sigma_values must start at 0");
    for (std::size_t i = 1; i < sigma_values.size(); ++i)
        if (sigma_values[i] <= sigma_values[i - 1])
            throw ConfigError("sweep: sigma_values must be strictly increasing");
    if (realizations_per_value < 1) throw ConfigError("sweep: need >= 1 realization per value");
}

namespace {

PerturbationSpec spec_at_sigma(const PerturbationSpec& tmpl, SweepVariable variable,
                               double sigma) {
    // Swept group gets equal sigmas on all three axes; the other group is off.
    PerturbationSpec spec = tmpl;
    if (variable == SweepVariable::translation) {
        spec.sigma_t = Vec3::Constant(sigma);
        spec.sigma_r = Vec3::Zero();
    } else {
        spec.sigma_t = Vec3::Zero();
        spec.sigma_r = Vec3::Constant(sigma);
    }
    return spec;
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec) {
    spec.validate();
    const auto t_start = std::chrono::steady_clock::now();

    const int n_sigma = static_cast<int>(spec.sigma_values.size());
    const int n_real = spec.realizations_per_value;
    const int total = n_sigma * n_real;
    const int workers = spec.workers > 0 ? spec.workers : omp_get_max_threads();

    const NominalContext nominal =
        build_nominal_context(spec.layout, spec.array, spec.target, spec.grid_rules, workers);

    std::vector<RealizationResult> outcomes(static_cast<std::size_t>(total));

#pragma omp parallel for schedule(dynamic) num_threads(workers)
    for (int idx = 0; idx < total; ++idx) {
        const int is = idx / n_real;
        const int ir = idx % n_real;
        const PerturbationSpec pert =
            spec_at_sigma(spec.pert_template, spec.variable, spec.sigma_values[is]);
        outcomes[static_cast<std::size_t>(idx)] = run_realization(
            nominal, spec.layout, spec.array, spec.target, pert, spec.thresholds,
            spec.master_seed, static_cast<std::uint32_t>(is), static_cast<std::uint32_t>(ir), 1);
    }

    SweepResult result;
    result.variable = spec.variable;
    result.points.resize(static_cast<std::size_t>(n_sigma));
    for (int is = 0; is < n_sigma; ++is) {
        auto& point = result.points[static_cast<std::size_t>(is)];
        point.sigma = spec.sigma_values[is];
        int pass[2][3] = {{0, 0, 0}, {0, 0, 0}};
        for (int ir = 0; ir < n_real; ++ir) {
            const auto& outcome = outcomes[static_cast<std::size_t>(is * n_real + ir)];
            if (outcome.failed) {
                ++point.failed;
                continue;
            }
            ++point.completed;
            const KpiReport* reports[2] = {&outcome.perturbed, &outcome.calibrated};
            for (int var = 0; var < 2; ++var) {
                pass[var][0] += reports[var]->pass_g ? 1 : 0;
                pass[var][1] += reports[var]->pass_a ? 1 : 0;
                pass[var][2] += reports[var]->pass_sll ? 1 : 0;
            }
            result.rows.push_back({point.sigma, ir, Variant::perturbed, outcome.perturbed});
            result.rows.push_back({point.sigma, ir, Variant::calibrated, outcome.calibrated});
        }
        result.total_failed += point.failed;
        for (int var = 0; var < 2; ++var)
            for (int kpi = 0; kpi < 3; ++kpi)
                point.probability[var][kpi] =
                    point.completed > 0
                        ? static_cast<double>(pass[var][kpi]) / point.completed
                        : 0.0;
    }

    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return result;
}

RepresentativeResult run_representative(const FormationLayout& layout, const ArrayConfig& cfg,
                                        const BeamTarget& target, const PerturbationSpec& spec,
                                        const KpiThresholds& thresholds, const GridRules& rules,
                                        const ThetaCutRules& cut_rules, std::uint64_t master_seed,
                                        int workers) {
    const NominalContext nominal = build_nominal_context(layout, cfg, target, rules, workers);

    std::vector<PerturbationSample> samples;
    samples.reserve(layout.poses.size());
    for (std::uint32_t n = 0; n < layout.poses.size(); ++n) {
        RngStream stream(SeedSpec{master_seed, 0, 0, n});
        samples.push_back(sample_perturbation(spec, stream));
    }
    const auto geom = make_realization_geometry(layout, cfg, samples);
    const Vec3 k0 = wave_vector(target.theta0, target.phi0, cfg.wavelength);
    PrecodingWeights w_cal = mrt_weights(steering_vector(geom, k0));
    w_cal.provenance = WeightProvenance::perturbed_calibrated;

    RepresentativeResult rep;
    rep.nominal = nominal.maps;
    rep.perturbed.fine =
        evaluate_pattern(geom, cfg, nominal.weights, target, nominal.grids.fine, workers);
    rep.perturbed.global =
        evaluate_pattern(geom, cfg, nominal.weights, target, nominal.grids.global, workers);
    rep.calibrated.fine = evaluate_pattern(geom, cfg, w_cal, target, nominal.grids.fine, workers);
    rep.calibrated.global =
        evaluate_pattern(geom, cfg, w_cal, target, nominal.grids.global, workers);

    const double theta_max = cut_rules.theta_max_deg * std::numbers::pi / 180.0;
    rep.cut_nominal = evaluate_theta_cut(nominal.geometry, cfg, nominal.weights, theta_max,
                                         cut_rules.n_samples, target.phi0, workers);
    rep.cut_perturbed = evaluate_theta_cut(geom, cfg, nominal.weights, theta_max,
                                           cut_rules.n_samples, target.phi0, workers);
    rep.cut_calibrated = evaluate_theta_cut(geom, cfg, w_cal, theta_max, cut_rules.n_samples,
                                            target.phi0, workers);

    rep.report_perturbed = kpi_compare(nominal.maps, nominal.analysis, rep.perturbed, thresholds);
    rep.report_calibrated = kpi_compare(nominal.maps, nominal.analysis, rep.calibrated, thresholds);
    return rep;
}

}  // namespace satbeam
