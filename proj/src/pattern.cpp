#include "satbeam/pattern.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace satbeam {

namespace {

constexpr double kPowerFloorLinear = 1e-40;  // 10*log10 -> kPowerFloorDb

double to_db(double power) {
    return 10.0 * std::log10(std::max(power, kPowerFloorLinear));
}

// Per-thread scratch for the factorized sums.
struct Scratch {
    std::vector<Complex> row_fac;
    std::vector<Complex> col_fac;
};

// Composite power at one unit direction via per-satellite factorization:
// k.p_{n,e} = k.t'_n + (R'_n^T k) . d_e, and the planar offsets split the
// element sum into row and column phase factors.
double composite_power_at_dir(const RealizationGeometry& geom, const ArrayConfig& cfg,
                              const PrecodingWeights& weights, const Vec3& k_hat,
                              double k_mag, const std::vector<double>& xs,
                              const std::vector<double>& ys, Scratch& scratch) {
    const int n_sat = geom.satellite_count();
    const int n_rows = cfg.rows, n_cols = cfg.cols;
    const Vec3 k = k_mag * k_hat;

    Complex af(0.0, 0.0);
    double gain_sq_sum = 0.0;
    for (int n = 0; n < n_sat; ++n) {
        const auto& frame = geom.frames[static_cast<std::size_t>(n)];
        const Vec3 k_local = frame.rotation.transpose() * k;

        for (int i = 0; i < n_rows; ++i) {
            const double ph = k_local.x() * xs[static_cast<std::size_t>(i)];
            scratch.row_fac[static_cast<std::size_t>(i)] = Complex(std::cos(ph), std::sin(ph));
        }
        for (int j = 0; j < n_cols; ++j) {
            const double ph = k_local.y() * ys[static_cast<std::size_t>(j)];
            scratch.col_fac[static_cast<std::size_t>(j)] = Complex(std::cos(ph), std::sin(ph));
        }

        const Complex* w = weights.entries.data() + static_cast<std::size_t>(n) * n_rows * n_cols;
        Complex local_sum(0.0, 0.0);
        for (int i = 0; i < n_rows; ++i) {
            Complex row_sum(0.0, 0.0);
            for (int j = 0; j < n_cols; ++j)
                row_sum += w[i * n_cols + j] * scratch.col_fac[static_cast<std::size_t>(j)];
            local_sum += scratch.row_fac[static_cast<std::size_t>(i)] * row_sum;
        }

        const double center_phase = k.dot(frame.translation);
        af += Complex(std::cos(center_phase), std::sin(center_phase)) * local_sum;

        const double g = element_gain(
            effective_polar_angle(geom.z_axes[static_cast<std::size_t>(n)], k_hat), cfg);
        gain_sq_sum += g * g;
    }
    return std::norm(af) * gain_sq_sum / static_cast<double>(n_sat);
}

void check_kernel_inputs(const RealizationGeometry& geom, const ArrayConfig& cfg,
                         const PrecodingWeights& weights) {
    if (geom.elements_per_satellite() != cfg.element_count())
        throw DimensionMismatch("pattern: geometry does not match the array config");
    if (static_cast<int>(weights.entries.size()) != geom.total_elements())
        throw DimensionMismatch("pattern: weight length does not match the geometry");
}

// Element coordinates along rows/cols, shared with the flat offsets.
void element_axes(const RealizationGeometry& geom, const ArrayConfig& cfg,
                  std::vector<double>& xs, std::vector<double>& ys) {
    xs.resize(static_cast<std::size_t>(cfg.rows));
    ys.resize(static_cast<std::size_t>(cfg.cols));
    for (int i = 0; i < cfg.rows; ++i)
        xs[static_cast<std::size_t>(i)] = geom.offsets[static_cast<std::size_t>(i) * cfg.cols].x();
    for (int j = 0; j < cfg.cols; ++j) ys[static_cast<std::size_t>(j)] = geom.offsets[static_cast<std::size_t>(j)].y();
}

}  // namespace

void GridSpec::validate() const {
    if (n_u < 1 || n_v < 1) throw ConfigError("grid: node counts must be >= 1");
    if (u_max < u_min || v_max < v_min) throw ConfigError("grid: inverted ranges");
}

double PatternMap::peak_db() const {
    double peak = -std::numeric_limits<double>::infinity();
    bool any = false;
    for (std::size_t i = 0; i < power_db.size(); ++i) {
        if (!valid[i]) continue;
        any = true;
        peak = std::max(peak, power_db[i]);
    }
    if (!any) throw EmptyRegion("pattern map has no valid nodes");
    return peak;
}

PatternMap evaluate_pattern(const RealizationGeometry& geom, const ArrayConfig& cfg,
                            const PrecodingWeights& weights, const BeamTarget& target,
                            const GridSpec& grid, int num_threads) {
    grid.validate();
    check_kernel_inputs(geom, cfg, weights);

    PatternMap map;
    map.grid = grid;
    map.target = target;
    map.power_db.assign(static_cast<std::size_t>(grid.node_count()), kPowerFloorDb);
    map.valid.assign(static_cast<std::size_t>(grid.node_count()), 0);

    std::vector<double> xs, ys;
    element_axes(geom, cfg, xs, ys);
    const double k_mag = 2.0 * std::numbers::pi / cfg.wavelength;
    const int nt = num_threads > 0 ? num_threads : omp_get_max_threads();

#pragma omp parallel num_threads(nt)
    {
        Scratch scratch;
        scratch.row_fac.resize(static_cast<std::size_t>(cfg.rows));
        scratch.col_fac.resize(static_cast<std::size_t>(cfg.cols));
#pragma omp for schedule(static)
        for (int iv = 0; iv < grid.n_v; ++iv) {
            const double v = grid.v_at(iv);
            for (int iu = 0; iu < grid.n_u; ++iu) {
                const double u = grid.u_at(iu);
                const double rr = u * u + v * v;
                if (rr > 1.0) continue;  // outside the visible region
                const Vec3 k_hat(u, v, std::sqrt(std::max(0.0, 1.0 - rr)));
                const double p =
                    composite_power_at_dir(geom, cfg, weights, k_hat, k_mag, xs, ys, scratch);
                const std::size_t idx = static_cast<std::size_t>(iv) * grid.n_u + iu;
                map.power_db[idx] = to_db(p);
                map.valid[idx] = 1;
            }
        }
    }
    return map;
}

ThetaCut evaluate_theta_cut(const RealizationGeometry& geom, const ArrayConfig& cfg,
                            const PrecodingWeights& weights, double theta_max, int n_samples,
                            double phi_cut, int num_threads) {
    if (n_samples < 2) throw ConfigError("theta cut: need at least 2 samples");
    check_kernel_inputs(geom, cfg, weights);

    ThetaCut cut;
    cut.theta_rad.resize(static_cast<std::size_t>(n_samples));
    cut.power_db.resize(static_cast<std::size_t>(n_samples));

    std::vector<double> xs, ys;
    element_axes(geom, cfg, xs, ys);
    const double k_mag = 2.0 * std::numbers::pi / cfg.wavelength;
    const double cp = std::cos(phi_cut), sp = std::sin(phi_cut);
    const int nt = num_threads > 0 ? num_threads : omp_get_max_threads();

#pragma omp parallel num_threads(nt)
    {
        Scratch scratch;
        scratch.row_fac.resize(static_cast<std::size_t>(cfg.rows));
        scratch.col_fac.resize(static_cast<std::size_t>(cfg.cols));
#pragma omp for schedule(static)
        for (int i = 0; i < n_samples; ++i) {
            // signed theta: negative folds onto phi_cut + pi
            const double theta = -theta_max + 2.0 * theta_max * i / (n_samples - 1);
            const double st = std::sin(theta);
            const Vec3 k_hat(st * cp, st * sp, std::cos(theta));
            cut.theta_rad[static_cast<std::size_t>(i)] = theta;
            cut.power_db[static_cast<std::size_t>(i)] =
                to_db(composite_power_at_dir(geom, cfg, weights, k_hat, k_mag, xs, ys, scratch));
        }
    }
    return cut;
}

}  // namespace satbeam
