#include "satbeam/beamforming.hpp"

#include <cmath>
#include <numbers>

namespace satbeam {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kUnitDotClamp = 1e-9;  // unit-vector roundoff allowance

}  // namespace

void BeamTarget::validate() const {
    if (theta0 < 0.0 || theta0 >= kPi / 2.0)
        throw ConfigError("target: theta0 must be in [0, pi/2)");
    if (phi0 < 0.0 || phi0 >= 2.0 * kPi) throw ConfigError("target: phi0 must be in [0, 2*pi)");
}

RealizationGeometry make_realization_geometry(const FormationLayout& layout,
                                              const ArrayConfig& cfg) {
    return make_realization_geometry(layout, cfg, {});
}

RealizationGeometry make_realization_geometry(const FormationLayout& layout,
                                              const ArrayConfig& cfg,
                                              const std::vector<PerturbationSample>& samples) {
    if (!samples.empty() && static_cast<int>(samples.size()) != layout.count())
        throw DimensionMismatch("geometry: one perturbation sample per satellite required");

    RealizationGeometry geom;
    geom.offsets = element_offsets(cfg);
    geom.frames.reserve(layout.poses.size());
    geom.z_axes.reserve(layout.poses.size());
    geom.positions.reserve(layout.poses.size() * geom.offsets.size());

    for (std::size_t n = 0; n < layout.poses.size(); ++n) {
        const auto& pose = layout.poses[n];
        const Vec3 dt = samples.empty() ? Vec3::Zero() : samples[n].delta_t;
        const Mat3 dR = samples.empty() ? Mat3::Identity() : samples[n].delta_R;
        SatellitePose eff;
        eff.translation = pose.translation + dt;
        eff.rotation = pose.rotation * dR;
        geom.frames.push_back(eff);
        geom.z_axes.push_back(eff.rotation.col(2));
        for (const auto& d : geom.offsets) geom.positions.emplace_back(eff.translation + eff.rotation * d);
    }
    return geom;
}

Vec3 unit_direction(double theta, double phi) {
    const double st = std::sin(theta);
    return Vec3(st * std::cos(phi), st * std::sin(phi), std::cos(theta));
}

Vec3 wave_vector(double theta, double phi, double wavelength) {
    if (wavelength <= 0.0) throw ConfigError("wave_vector: wavelength must be > 0");
    return (2.0 * kPi / wavelength) * unit_direction(theta, phi);
}

SteeringVector steering_vector(const RealizationGeometry& geom, const Vec3& k) {
    SteeringVector a;
    a.entries.reserve(geom.positions.size());
    for (const auto& p : geom.positions) {
        const double phase = k.dot(p);
        a.entries.emplace_back(std::cos(phase), std::sin(phase));
    }
    return a;
}

PrecodingWeights mrt_weights(const SteeringVector& at_target) {
    if (at_target.entries.empty()) throw DimensionMismatch("mrt_weights: empty steering vector");
    double norm_sq = 0.0;
    for (const auto& e : at_target.entries) norm_sq += std::norm(e);
    const double inv_norm = 1.0 / std::sqrt(norm_sq);
    PrecodingWeights w;
    w.entries.reserve(at_target.entries.size());
    for (const auto& e : at_target.entries) w.entries.emplace_back(std::conj(e) * inv_norm);
    return w;
}

Complex array_factor(const PrecodingWeights& weights, const SteeringVector& a) {
    if (weights.entries.size() != a.entries.size())
        throw DimensionMismatch("array_factor: weight/steering length mismatch");
    Complex acc(0.0, 0.0);
    for (std::size_t i = 0; i < a.entries.size(); ++i) acc += weights.entries[i] * a.entries[i];
    return acc;
}

double pattern_exponent_for_hpbw(double hpbw) {
    if (hpbw <= 0.0 || hpbw >= kPi)
        throw ConfigError("pattern_exponent_for_hpbw: hpbw must be in (0, pi)");
    return std::log(0.5) / (2.0 * std::log(std::cos(hpbw / 2.0)));
}

double element_gain(double theta_eff, const ArrayConfig& cfg) {
    if (theta_eff > kPi / 2.0) return 0.0;  // back hemisphere
    const double c = std::cos(theta_eff);
    if (c <= 0.0) return 0.0;
    return std::sqrt(cfg.boresight_gain) * std::pow(c, cfg.pattern_exponent);
}

double effective_polar_angle(const Vec3& z_axis, const Vec3& k_hat) {
    if (std::abs(z_axis.norm() - 1.0) > kUnitDotClamp || std::abs(k_hat.norm() - 1.0) > kUnitDotClamp)
        throw ConfigError("effective_polar_angle: inputs must be unit vectors");
    double dot = z_axis.dot(k_hat);
    dot = std::clamp(dot, -1.0, 1.0);
    return std::acos(dot);
}

std::vector<double> satellite_gains(const RealizationGeometry& geom, const ArrayConfig& cfg,
                                    const Vec3& k_hat) {
    std::vector<double> gains;
    gains.reserve(geom.z_axes.size());
    for (const auto& z : geom.z_axes) gains.push_back(element_gain(effective_polar_angle(z, k_hat), cfg));
    return gains;
}

double composite_power(const PrecodingWeights& weights, const SteeringVector& a,
                       const std::vector<double>& gains) {
    if (gains.empty()) throw DimensionMismatch("composite_power: no satellite gains");
    if (a.entries.size() % gains.size() != 0)
        throw DimensionMismatch("composite_power: steering length not a multiple of Ns");
    const Complex af = array_factor(weights, a);
    double gain_sq = 0.0;
    for (double g : gains) gain_sq += g * g;
    return std::norm(af) * gain_sq / static_cast<double>(gains.size());
}

}  // namespace satbeam
