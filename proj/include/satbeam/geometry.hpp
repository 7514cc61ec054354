#pragma once

#include <Eigen/Core>
#include <vector>

#include "satbeam/errors.hpp"

namespace satbeam {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Per-satellite planar array geometry and element-pattern parameters.
struct ArrayConfig {
    int rows = 1;                   // Nr
    int cols = 1;                   // Nc
    double spacing_x = 0.15;        // dx [m]
    double spacing_y = 0.15;        // dy [m]
    double wavelength = 0.3;        // lambda [m]
    double boresight_gain = 1.0;    // G0, linear power
    double pattern_exponent = 1.0;  // p

    int element_count() const { return rows * cols; }
    void validate() const;  // throws ConfigError
};

/// Rigid transform from a satellite's local frame into the reference frame L0.
struct SatellitePose {
    Vec3 translation = Vec3::Zero();
    Mat3 rotation = Mat3::Identity();

    void validate() const;  // orthonormality within 1e-12, det +1 within 1e-12
};

/// Nominal formation: satellite 0 defines the reference and phase frame.
struct FormationLayout {
    std::vector<SatellitePose> poses;

    int count() const { return static_cast<int>(poses.size()); }
    void validate() const;
};

struct LayoutMetrics {
    double d_sat_min = 0.0;         // minimum pairwise satellite distance [m]
    double a_virtual = 0.0;         // convex-hull area of the projected aperture [m^2]
    double delta_g_main_sll = 0.0;  // main-lobe peak minus max sidelobe [dB]
};

/// Local element offsets d_e, row-major e = i*Nc + j; centroid is zero.
std::vector<Vec3> element_offsets(const ArrayConfig& cfg);

/// Rz(yaw) * Ry(pitch) * Rx(roll).
Mat3 euler_zyx(double roll, double pitch, double yaw);

/// Single-arm logarithmic spiral layout, satellite 0 moved to the origin and
/// the whole formation scaled so the minimum pairwise distance hits
/// target_d_min exactly (scaling skipped for count == 1). Attitudes identity.
FormationLayout lsa_layout(int count, double angular_step, double growth_rate,
                           double target_d_min);

/// Element positions in L0 for one satellite: (t + dt) + (R * dR) * d_e.
std::vector<Vec3> perturbed_element_positions(const SatellitePose& pose, const Vec3& delta_t,
                                              const Mat3& delta_R,
                                              const std::vector<Vec3>& offsets);

double min_satellite_distance(const FormationLayout& layout);

/// Area of the 2D convex hull of the xy-projected points; 0 when fewer than
/// three non-collinear points exist.
double convex_hull_area_xy(const std::vector<Vec3>& points);

/// Largest pairwise distance between xy-projected points (aperture diameter).
double max_pairwise_distance_xy(const std::vector<Vec3>& points);

struct PatternSet;  // pattern.hpp

/// Layout metrics; nominal must hold the boresight-steered pattern of this
/// layout (main/SLL separation is read from it).
LayoutMetrics layout_metrics(const FormationLayout& layout, const ArrayConfig& cfg,
                             const PatternSet& nominal);

}  // namespace satbeam
