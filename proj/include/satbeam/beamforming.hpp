#pragma once

#include <complex>
#include <vector>

#include "satbeam/geometry.hpp"
#include "satbeam/perturbation.hpp"

namespace satbeam {

using Complex = std::complex<double>;

/// Departure direction of the beam.
struct BeamTarget {
    double theta0 = 0.0;  // polar angle from boresight (+z) [rad], [0, pi/2)
    double phi0 = 0.0;    // azimuth [rad], [0, 2*pi)

    void validate() const;
};

/// Multi-satellite steering vector, satellite-major then element order.
struct SteeringVector {
    std::vector<Complex> entries;  // length Ns*Ne, unit modulus
};

enum class WeightProvenance { nominal, perturbed_calibrated };

/// MRT precoding weights, unit 2-norm. Entries store the conjugated target
/// steering vector, so applying them to a steering vector is the plain
/// (unconjugated) dot product; see array_factor().
struct PrecodingWeights {
    std::vector<Complex> entries;
    WeightProvenance provenance = WeightProvenance::nominal;
};

/// Effective per-satellite frames of one realization plus derived element
/// data shared by the pattern kernels.
struct RealizationGeometry {
    std::vector<SatellitePose> frames;  // effective (t', R') per satellite
    std::vector<Vec3> offsets;          // local element offsets, shared
    std::vector<Vec3> positions;        // flattened Ns*Ne element positions in L0
    std::vector<Vec3> z_axes;           // boresight axis R' * ez per satellite

    int satellite_count() const { return static_cast<int>(frames.size()); }
    int elements_per_satellite() const { return static_cast<int>(offsets.size()); }
    int total_elements() const { return static_cast<int>(positions.size()); }
};

/// Nominal geometry (no perturbations).
RealizationGeometry make_realization_geometry(const FormationLayout& layout,
                                              const ArrayConfig& cfg);

/// Perturbed geometry: one sample per satellite, applied as t' = t + dt,
/// R' = R * dR.
RealizationGeometry make_realization_geometry(const FormationLayout& layout,
                                              const ArrayConfig& cfg,
                                              const std::vector<PerturbationSample>& samples);

/// Unit direction (sin(theta)cos(phi), sin(theta)sin(phi), cos(theta)).
Vec3 unit_direction(double theta, double phi);

/// (2*pi/lambda) times the unit direction.
Vec3 wave_vector(double theta, double phi, double wavelength);

/// Entries exp(j k.p_{n,e}) in satellite-major element-minor order.
SteeringVector steering_vector(const RealizationGeometry& geom, const Vec3& k);

/// Conjugate of the target steering vector over its 2-norm.
PrecodingWeights mrt_weights(const SteeringVector& at_target);

/// Beamformed amplitude: sum of w_i * a_i. The conjugation of the MRT
/// definition is already baked into the stored weights, so the matched
/// direction yields the real positive value ||a||.
Complex array_factor(const PrecodingWeights& weights, const SteeringVector& a);

/// Exponent p with cos^(2p)(hpbw/2) = 1/2.
double pattern_exponent_for_hpbw(double hpbw);

/// Element amplitude gain sqrt(G0) * cos(theta)^p on [0, pi/2], 0 beyond.
double element_gain(double theta_eff, const ArrayConfig& cfg);

/// arccos of the clamped dot product between boresight axis and direction.
double effective_polar_angle(const Vec3& z_axis, const Vec3& k_hat);

/// Per-satellite gains f_el(theta'_n) at one direction.
std::vector<double> satellite_gains(const RealizationGeometry& geom, const ArrayConfig& cfg,
                                    const Vec3& k_hat);

/// |sum w_i a_i|^2 * mean of squared per-satellite gains.
double composite_power(const PrecodingWeights& weights, const SteeringVector& a,
                       const std::vector<double>& gains);

}  // namespace satbeam
