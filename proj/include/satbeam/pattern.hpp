#pragma once

#include <cstdint>
#include <vector>

#include "satbeam/beamforming.hpp"

namespace satbeam {

/// Regular uv sampling grid. Node (iu, iv) sits at (u_at(iu), v_at(iv)).
struct GridSpec {
    double u_min = -1.0, u_max = 1.0;
    int n_u = 0;
    double v_min = -1.0, v_max = 1.0;
    int n_v = 0;

    double du() const { return n_u > 1 ? (u_max - u_min) / (n_u - 1) : 0.0; }
    double dv() const { return n_v > 1 ? (v_max - v_min) / (n_v - 1) : 0.0; }
    double u_at(int iu) const { return u_min + iu * du(); }
    double v_at(int iv) const { return v_min + iv * dv(); }
    int node_count() const { return n_u * n_v; }

    bool operator==(const GridSpec&) const = default;
    void validate() const;
};

/// Power floor applied before the dB conversion so valid nodes stay finite.
inline constexpr double kPowerFloorDb = -400.0;

/// Sampled composite power pattern. Values are stored in dB, row-major with
/// the u index fastest: index = iv * n_u + iu. Nodes outside u^2 + v^2 <= 1
/// are invalid.
struct PatternMap {
    GridSpec grid;
    BeamTarget target;
    std::vector<double> power_db;
    std::vector<std::uint8_t> valid;

    double at(int iu, int iv) const { return power_db[static_cast<std::size_t>(iv) * grid.n_u + iu]; }
    bool is_valid(int iu, int iv) const { return valid[static_cast<std::size_t>(iv) * grid.n_u + iu] != 0; }
    /// Maximum over valid nodes (throws EmptyRegion when none are valid).
    double peak_db() const;
};

/// Fine window (main-lobe KPIs) plus global visible-region map (SLL).
struct PatternSet {
    PatternMap fine;
    PatternMap global;
};

/// Composite power pattern over a uv grid. OpenMP-parallel over grid nodes;
/// factorizes each satellite into a phase-center term and row/column element
/// sums. num_threads <= 0 uses the OpenMP default, 1 runs serial.
PatternMap evaluate_pattern(const RealizationGeometry& geom, const ArrayConfig& cfg,
                            const PrecodingWeights& weights, const BeamTarget& target,
                            const GridSpec& grid, int num_threads = 0);

/// Pattern cut through phi = phi_cut, theta in [-theta_max, theta_max]
/// (negative theta folds to phi_cut + pi).
struct ThetaCut {
    std::vector<double> theta_rad;
    std::vector<double> power_db;
};

ThetaCut evaluate_theta_cut(const RealizationGeometry& geom, const ArrayConfig& cfg,
                            const PrecodingWeights& weights, double theta_max, int n_samples,
                            double phi_cut, int num_threads = 0);

namespace reference {

/// Serial scalar implementation of the flat steering-vector definition: a
/// direct double loop over all Ns*Ne element positions per node. Oracle for
/// the factorized kernel and baseline for the benchmark; keep this path
/// independent of evaluate_pattern above.
PatternMap evaluate_pattern(const RealizationGeometry& geom, const ArrayConfig& cfg,
                            const PrecodingWeights& weights, const BeamTarget& target,
                            const GridSpec& grid);

/// Single-direction composite power via the same direct summation.
double composite_power_at(const RealizationGeometry& geom, const ArrayConfig& cfg,
                          const PrecodingWeights& weights, double u, double v);

}  // namespace reference

}  // namespace satbeam
