#include "satbeam/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "satbeam/analysis.hpp"
#include "satbeam/pattern.hpp"

namespace satbeam {

namespace {

constexpr double kRotationTol = 1e-12;

}  // namespace

void ArrayConfig::validate() const {
    if (rows < 1 || cols < 1) throw ConfigError("array: rows and cols must be >= 1");
    if (spacing_x <= 0.0 || spacing_y <= 0.0) throw ConfigError("array: spacings must be > 0");
    if (wavelength <= 0.0) throw ConfigError("array: wavelength must be > 0");
    if (boresight_gain <= 0.0) throw ConfigError("array: boresight gain must be > 0");
    if (pattern_exponent <= 0.0) throw ConfigError("array: pattern exponent must be > 0");
}

void SatellitePose::validate() const {
    const Mat3 gram = rotation.transpose() * rotation;
    const double ortho_err = (gram - Mat3::Identity()).cwiseAbs().maxCoeff();
    if (ortho_err > kRotationTol) throw ConfigError("pose: rotation is not orthonormal");
    if (std::abs(rotation.determinant() - 1.0) > kRotationTol)
        throw ConfigError("pose: rotation determinant is not +1");
}

void FormationLayout::validate() const {
    if (poses.empty()) throw ConfigError("layout: no satellites");
    for (const auto& pose : poses) pose.validate();
    const auto& ref = poses.front();
    if (ref.translation.norm() > kRotationTol ||
        (ref.rotation - Mat3::Identity()).cwiseAbs().maxCoeff() > kRotationTol)
        throw ConfigError("layout: satellite 0 must carry the identity pose");
    for (std::size_t a = 0; a + 1 < poses.size(); ++a)
        for (std::size_t b = a + 1; b < poses.size(); ++b)
            if ((poses[a].translation - poses[b].translation).norm() <= 0.0)
                throw ConfigError("layout: coincident satellite centers");
}

std::vector<Vec3> element_offsets(const ArrayConfig& cfg) {
    cfg.validate();
    std::vector<Vec3> offsets;
    offsets.reserve(static_cast<std::size_t>(cfg.element_count()));
    const double x_center = (cfg.rows - 1) / 2.0;
    const double y_center = (cfg.cols - 1) / 2.0;
    for (int i = 0; i < cfg.rows; ++i)
        for (int j = 0; j < cfg.cols; ++j)
            offsets.emplace_back((i - x_center) * cfg.spacing_x, (j - y_center) * cfg.spacing_y,
                                 0.0);
    return offsets;
}

Mat3 euler_zyx(double roll, double pitch, double yaw) {
    const double ca = std::cos(roll), sa = std::sin(roll);
    const double cb = std::cos(pitch), sb = std::sin(pitch);
    const double cg = std::cos(yaw), sg = std::sin(yaw);
    Mat3 rx, ry, rz;
    rx << 1, 0, 0, 0, ca, -sa, 0, sa, ca;
    ry << cb, 0, sb, 0, 1, 0, -sb, 0, cb;
    rz << cg, -sg, 0, sg, cg, 0, 0, 0, 1;
    return rz * ry * rx;
}

FormationLayout lsa_layout(int count, double angular_step, double growth_rate,
                           double target_d_min) {
    if (count < 1) throw ConfigError("lsa_layout: count must be >= 1");
    if (target_d_min <= 0.0) throw ConfigError("lsa_layout: target_d_min must be > 0");
    if (growth_rate < 0.0) throw ConfigError("lsa_layout: growth_rate must be >= 0");

    FormationLayout layout;
    layout.poses.resize(static_cast<std::size_t>(count));
    std::vector<Vec3> centers(static_cast<std::size_t>(count));
    for (int n = 0; n < count; ++n) {
        const double phi = n * angular_step;
        const double r = std::exp(growth_rate * phi);  // r0 = 1
        centers[static_cast<std::size_t>(n)] = Vec3(r * std::cos(phi), r * std::sin(phi), 0.0);
    }
    // Anchor satellite 0 at the origin (reference/phase frame).
    const Vec3 anchor = centers.front();
    for (auto& c : centers) c -= anchor;

    if (count > 1) {
        double d_min = std::numeric_limits<double>::infinity();
        for (int a = 0; a < count; ++a)
            for (int b = a + 1; b < count; ++b)
                d_min = std::min(d_min, (centers[a] - centers[b]).norm());
        if (!(d_min > 0.0)) throw DegenerateLayout("lsa_layout: coincident satellites");
        const double scale = target_d_min / d_min;
        for (auto& c : centers) c *= scale;
    }

    for (int n = 0; n < count; ++n) layout.poses[static_cast<std::size_t>(n)].translation = centers[n];
    return layout;
}

std::vector<Vec3> perturbed_element_positions(const SatellitePose& pose, const Vec3& delta_t,
                                              const Mat3& delta_R,
                                              const std::vector<Vec3>& offsets) {
    const Vec3 t_eff = pose.translation + delta_t;
    const Mat3 r_eff = pose.rotation * delta_R;
    std::vector<Vec3> positions;
    positions.reserve(offsets.size());
    for (const auto& d : offsets) positions.emplace_back(t_eff + r_eff * d);
    return positions;
}

double min_satellite_distance(const FormationLayout& layout) {
    const int n = layout.count();
    double d_min = std::numeric_limits<double>::infinity();
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            d_min = std::min(d_min,
                             (layout.poses[a].translation - layout.poses[b].translation).norm());
    return d_min;
}

namespace {

double cross2(const Eigen::Vector2d& o, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

// Andrew monotone chain; returns the hull in counter-clockwise order.
std::vector<Eigen::Vector2d> convex_hull_xy(const std::vector<Vec3>& points) {
    std::vector<Eigen::Vector2d> pts;
    pts.reserve(points.size());
    for (const auto& p : points) pts.emplace_back(p.x(), p.y());
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
        return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const auto& a, const auto& b) {
                              return a.x() == b.x() && a.y() == b.y();
                          }),
              pts.end());
    const std::size_t n = pts.size();
    if (n < 3) return pts;
    std::vector<Eigen::Vector2d> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross2(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {
        while (k >= lower && cross2(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k > 1 ? k - 1 : k);
    return hull;
}

}  // namespace

double convex_hull_area_xy(const std::vector<Vec3>& points) {
    const auto hull = convex_hull_xy(points);
    if (hull.size() < 3) return 0.0;  // fewer than 3 non-collinear points
    double twice_area = 0.0;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const auto& a = hull[i];
        const auto& b = hull[(i + 1) % hull.size()];
        twice_area += a.x() * b.y() - b.x() * a.y();
    }
    return 0.5 * std::abs(twice_area);
}

double max_pairwise_distance_xy(const std::vector<Vec3>& points) {
    auto hull = convex_hull_xy(points);
    if (hull.size() < 2) {
        // collinear or single point: fall back to the raw set
        hull.clear();
        for (const auto& p : points) hull.emplace_back(p.x(), p.y());
    }
    double d_max = 0.0;
    for (std::size_t a = 0; a + 1 < hull.size(); ++a)
        for (std::size_t b = a + 1; b < hull.size(); ++b)
            d_max = std::max(d_max, (hull[a] - hull[b]).norm());
    return d_max;
}

LayoutMetrics layout_metrics(const FormationLayout& layout, const ArrayConfig& cfg,
                             const PatternSet& nominal) {
    layout.validate();
    const auto offsets = element_offsets(cfg);
    std::vector<Vec3> elements;
    elements.reserve(static_cast<std::size_t>(layout.count()) * offsets.size());
    for (const auto& pose : layout.poses) {
        auto positions = perturbed_element_positions(pose, Vec3::Zero(), Mat3::Identity(), offsets);
        elements.insert(elements.end(), positions.begin(), positions.end());
    }

    LayoutMetrics metrics;
    metrics.d_sat_min = layout.count() > 1 ? min_satellite_distance(layout)
                                           : std::numeric_limits<double>::infinity();
    metrics.a_virtual = convex_hull_area_xy(elements);
    const NominalAnalysis analysis = analyze_nominal(nominal);
    metrics.delta_g_main_sll = analysis.g_main_db - analysis.sll_db;
    return metrics;
}

}  // namespace satbeam
