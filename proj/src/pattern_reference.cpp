#include <cmath>
#include <numbers>

#include "satbeam/pattern.hpp"

// Serial reference path: the steering vector and composite power written out
// as direct scalar loops over every element position. No factorization, no
// shared kernel code; this is the oracle the optimized kernel is tested
// against and the baseline the benchmark compares with.

namespace satbeam::reference {

namespace {

double power_at_khat(const RealizationGeometry& geom, const ArrayConfig& cfg,
                     const PrecodingWeights& weights, double kx_hat, double ky_hat,
                     double kz_hat) {
    const double k_mag = 2.0 * std::numbers::pi / cfg.wavelength;
    const double kx = k_mag * kx_hat, ky = k_mag * ky_hat, kz = k_mag * kz_hat;

    double af_re = 0.0, af_im = 0.0;
    for (std::size_t idx = 0; idx < geom.positions.size(); ++idx) {
        const double px = geom.positions[idx].x();
        const double py = geom.positions[idx].y();
        const double pz = geom.positions[idx].z();
        const double phase = kx * px + ky * py + kz * pz;
        const double a_re = std::cos(phase), a_im = std::sin(phase);
        const double w_re = weights.entries[idx].real(), w_im = weights.entries[idx].imag();
        af_re += w_re * a_re - w_im * a_im;
        af_im += w_re * a_im + w_im * a_re;
    }

    const int n_sat = geom.satellite_count();
    double gain_sq_sum = 0.0;
    for (int n = 0; n < n_sat; ++n) {
        const auto& z = geom.z_axes[static_cast<std::size_t>(n)];
        double dot = z.x() * kx_hat + z.y() * ky_hat + z.z() * kz_hat;
        if (dot > 1.0) dot = 1.0;
        if (dot < -1.0) dot = -1.0;
        const double theta_eff = std::acos(dot);
        double g = 0.0;
        if (theta_eff <= std::numbers::pi / 2.0) {
            const double c = std::cos(theta_eff);
            if (c > 0.0) g = std::sqrt(cfg.boresight_gain) * std::pow(c, cfg.pattern_exponent);
        }
        gain_sq_sum += g * g;
    }

    return (af_re * af_re + af_im * af_im) * gain_sq_sum / static_cast<double>(n_sat);
}

}  // namespace

PatternMap evaluate_pattern(const RealizationGeometry& geom, const ArrayConfig& cfg,
                            const PrecodingWeights& weights, const BeamTarget& target,
                            const GridSpec& grid) {
    grid.validate();
    if (static_cast<int>(weights.entries.size()) != geom.total_elements())
        throw DimensionMismatch("reference pattern: weight length does not match the geometry");

    PatternMap map;
    map.grid = grid;
    map.target = target;
    map.power_db.assign(static_cast<std::size_t>(grid.node_count()), kPowerFloorDb);
    map.valid.assign(static_cast<std::size_t>(grid.node_count()), 0);

    for (int iv = 0; iv < grid.n_v; ++iv) {
        const double v = grid.v_at(iv);
        for (int iu = 0; iu < grid.n_u; ++iu) {
            const double u = grid.u_at(iu);
            const double rr = u * u + v * v;
            if (rr > 1.0) continue;
            const double kz_hat = std::sqrt(rr < 1.0 ? 1.0 - rr : 0.0);
            const double p = power_at_khat(geom, cfg, weights, u, v, kz_hat);
            const std::size_t idx = static_cast<std::size_t>(iv) * grid.n_u + iu;
            map.power_db[idx] = 10.0 * std::log10(p > 1e-40 ? p : 1e-40);
            map.valid[idx] = 1;
        }
    }
    return map;
}

double composite_power_at(const RealizationGeometry& geom, const ArrayConfig& cfg,
                          const PrecodingWeights& weights, double u, double v) {
    const double rr = u * u + v * v;
    if (rr > 1.0) throw ConfigError("reference pattern: direction outside the visible region");
    const double kz_hat = std::sqrt(rr < 1.0 ? 1.0 - rr : 0.0);
    return power_at_khat(geom, cfg, weights, u, v, kz_hat);
}

}  // namespace satbeam::reference
