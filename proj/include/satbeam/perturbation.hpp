#pragma once

#include "satbeam/geometry.hpp"
#include "satbeam/rng.hpp"

namespace satbeam {

/// Truncated-normal perturbation parameters (zero mean, diagonal covariance,
/// Euclidean-norm truncation).
struct PerturbationSpec {
    Vec3 sigma_t = Vec3::Zero();  // sigma_x, sigma_y, sigma_z [m]
    double t_max = 1.0;           // translation norm bound [m]
    Vec3 sigma_r = Vec3::Zero();  // sigma_roll, sigma_pitch, sigma_yaw [rad]
    double eps_max = 0.0;         // rotation norm bound [rad], (0, pi/4]

    void validate() const;
};

struct PerturbationSample {
    Vec3 delta_t = Vec3::Zero();
    Vec3 delta_eps = Vec3::Zero();       // roll, pitch, yaw [rad]
    Mat3 delta_R = Mat3::Identity();     // euler_zyx(delta_eps)
};

/// Maximum rejection attempts before sampling gives up with RejectionStall.
inline constexpr int kMaxRejections = 10000;

/// Zero-mean normal 3-vector with per-axis sigmas, rejected until its 2-norm
/// is within bound.
Vec3 sample_truncated_vec(const Vec3& sigma, double bound, RngStream& stream);

/// Independent translation and rotation draws from one stream; delta_R is
/// composed from the accepted Euler perturbations.
PerturbationSample sample_perturbation(const PerturbationSpec& spec, RngStream& stream);

}  // namespace satbeam
