#include <doctest.h>

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "satbeam/geometry.hpp"

using namespace satbeam;

namespace {

constexpr double kGoldenStepForTest = 2.399963229728653;

using ScalarMat = std::array<std::array<double, 3>, 3>;

// Independent scalar 3x3 products for the Euler oracle.
ScalarMat scalar_mul(const ScalarMat& a, const ScalarMat& b) {
    ScalarMat out{};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            for (int k = 0; k < 3; ++k) out[r][c] += a[r][k] * b[k][c];
    return out;
}

ScalarMat scalar_euler_zyx(double roll, double pitch, double yaw) {
    const double ca = std::cos(roll), sa = std::sin(roll);
    const double cb = std::cos(pitch), sb = std::sin(pitch);
    const double cg = std::cos(yaw), sg = std::sin(yaw);
    const ScalarMat rx{{{1, 0, 0}, {0, ca, -sa}, {0, sa, ca}}};
    const ScalarMat ry{{{cb, 0, sb}, {0, 1, 0}, {-sb, 0, cb}}};
    const ScalarMat rz{{{cg, -sg, 0}, {sg, cg, 0}, {0, 0, 1}}};
    return scalar_mul(rz, scalar_mul(ry, rx));
}

double brute_force_min_distance(const FormationLayout& layout) {
    double d_min = std::numeric_limits<double>::infinity();
    for (int a = 0; a < layout.count(); ++a)
        for (int b = a + 1; b < layout.count(); ++b)
            d_min = std::min(d_min,
                             (layout.poses[a].translation - layout.poses[b].translation).norm());
    return d_min;
}

ArrayConfig square_array(int n, double spacing) {
    ArrayConfig cfg;
    cfg.rows = cfg.cols = n;
    cfg.spacing_x = cfg.spacing_y = spacing;
    return cfg;
}

}  // namespace

TEST_CASE("element offsets: single element at the frame origin") {
    const auto offsets = element_offsets(square_array(1, 0.15));
    REQUIRE(offsets.size() == 1);
    CHECK(offsets[0] == Vec3(0.0, 0.0, 0.0));
}

TEST_CASE("element offsets: 2x2 at lambda/2 spacing") {
    const auto offsets = element_offsets(square_array(2, 0.15));
    REQUIRE(offsets.size() == 4);
    // row-major e = i*Nc + j
    CHECK(offsets[0].isApprox(Vec3(-0.075, -0.075, 0.0), 1e-15));
    CHECK(offsets[1].isApprox(Vec3(-0.075, 0.075, 0.0), 1e-15));
    CHECK(offsets[2].isApprox(Vec3(0.075, -0.075, 0.0), 1e-15));
    CHECK(offsets[3].isApprox(Vec3(0.075, 0.075, 0.0), 1e-15));
}

TEST_CASE("element offsets: 3x3 center element at the origin") {
    const auto offsets = element_offsets(square_array(3, 0.15));
    CHECK(offsets[4] == Vec3(0.0, 0.0, 0.0));
}

TEST_CASE("element offsets: centroid vanishes") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> dim(1, 9);
    std::uniform_real_distribution<double> spacing(0.01, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        ArrayConfig cfg;
        cfg.rows = dim(rng);
        cfg.cols = dim(rng);
        cfg.spacing_x = spacing(rng);
        cfg.spacing_y = spacing(rng);
        const auto offsets = element_offsets(cfg);
        Vec3 sum = Vec3::Zero();
        for (const auto& d : offsets) sum += d;
        const double bound =
            1e-12 * static_cast<double>(cfg.element_count()) * std::max(cfg.spacing_x, cfg.spacing_y);
        CHECK(sum.cwiseAbs().maxCoeff() < bound);
    }
}

TEST_CASE("euler_zyx: zero angles give the identity") {
    CHECK(euler_zyx(0.0, 0.0, 0.0) == Mat3::Identity());
}

TEST_CASE("euler_zyx: quarter-turn yaw maps x to y") {
    const Vec3 mapped = euler_zyx(0.0, 0.0, std::numbers::pi / 2.0) * Vec3::UnitX();
    CHECK(mapped.isApprox(Vec3::UnitY(), 1e-12));
}

TEST_CASE("euler_zyx: matches the independent scalar product") {
    const Mat3 r = euler_zyx(0.1, 0.2, 0.3);
    const ScalarMat expected = scalar_euler_zyx(0.1, 0.2, 0.3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(r(i, j) == doctest::Approx(expected[i][j]).epsilon(0.0).scale(1.0));
}

TEST_CASE("euler_zyx: rotation validity over random angle triples") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    for (int trial = 0; trial < 1000; ++trial) {
        const Mat3 r = euler_zyx(angle(rng), angle(rng), angle(rng));
        CHECK((r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(std::abs(r.determinant() - 1.0) < 1e-12);
    }
}

TEST_CASE("lsa_layout: single satellite is the identity pose") {
    const auto layout = lsa_layout(1, kGoldenStepForTest, 0.05, 1.0);
    REQUIRE(layout.count() == 1);
    CHECK(layout.poses[0].translation == Vec3::Zero());
    CHECK(layout.poses[0].rotation == Mat3::Identity());
}

TEST_CASE("lsa_layout: 64 satellites hit the target minimum spacing exactly") {
    const auto layout = lsa_layout(64, kGoldenStepForTest, 0.0119, 3.02);
    const double d_min = brute_force_min_distance(layout);
    CHECK(std::abs(d_min - 3.02) / 3.02 < 1e-9);
    CHECK(layout.poses[0].translation == Vec3::Zero());
}

TEST_CASE("lsa_layout: 16 satellites, all pairwise distances at or above target") {
    const auto layout = lsa_layout(16, 2.39996, 0.05, 6.14);
    int pairs = 0;
    for (int a = 0; a < 16; ++a)
        for (int b = a + 1; b < 16; ++b) {
            CHECK((layout.poses[a].translation - layout.poses[b].translation).norm() >=
                  6.14 * (1.0 - 1e-9));
            ++pairs;
        }
    CHECK(pairs == 120);
}

TEST_CASE("lsa_layout: scaling exactness for random configurations") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> count(2, 40);
    std::uniform_real_distribution<double> target(0.1, 30.0);
    std::uniform_real_distribution<double> growth(0.0, 0.1);
    for (int trial = 0; trial < 25; ++trial) {
        const int ns = count(rng);
        const double d = target(rng);
        const auto layout = lsa_layout(ns, kGoldenStepForTest, growth(rng), d);
        CHECK(std::abs(brute_force_min_distance(layout) - d) / d < 1e-9);
    }
}

TEST_CASE("lsa_layout: coincident satellites are rejected") {
    // zero step and zero growth stack every satellite on the same point
    CHECK_THROWS_AS(lsa_layout(4, 0.0, 0.0, 1.0), DegenerateLayout);
}

TEST_CASE("perturbed element positions: zero perturbation is bit-identical") {
    SatellitePose pose;
    pose.translation = Vec3(1.0, -2.0, 3.0);
    pose.rotation = euler_zyx(0.2, -0.1, 0.4);
    const auto offsets = element_offsets(square_array(2, 0.15));
    const auto perturbed =
        perturbed_element_positions(pose, Vec3::Zero(), Mat3::Identity(), offsets);
    for (std::size_t e = 0; e < offsets.size(); ++e) {
        const Vec3 nominal = pose.translation + pose.rotation * offsets[e];
        CHECK(perturbed[e] == nominal);
    }
}

TEST_CASE("perturbed element positions: pure translation shifts every element") {
    const auto offsets = element_offsets(square_array(2, 0.15));
    const SatellitePose identity;
    const Vec3 dt(0.0, 0.0, 0.06);
    const auto shifted = perturbed_element_positions(identity, dt, Mat3::Identity(), offsets);
    for (std::size_t e = 0; e < offsets.size(); ++e)
        CHECK((shifted[e] - offsets[e]).isApprox(dt, 1e-15));
}

TEST_CASE("perturbed element positions: quarter-turn pitch maps +x offset to -z") {
    const SatellitePose identity;
    const Mat3 dr = euler_zyx(0.0, std::numbers::pi / 2.0, 0.0);
    const auto moved =
        perturbed_element_positions(identity, Vec3::Zero(), dr, {Vec3(0.075, 0.0, 0.0)});
    CHECK((moved[0] - Vec3(0.0, 0.0, -0.075)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("convex hull area: square 2x2 aperture") {
    const auto offsets = element_offsets(square_array(2, 0.15));
    CHECK(convex_hull_area_xy(offsets) == doctest::Approx(0.0225).epsilon(1e-12));
}

TEST_CASE("convex hull area: degenerate inputs report zero") {
    CHECK(convex_hull_area_xy({Vec3(0, 0, 0)}) == 0.0);
    CHECK(convex_hull_area_xy({Vec3(0, 0, 0), Vec3(1, 1, 0), Vec3(2, 2, 0)}) == 0.0);
}

TEST_CASE("min satellite distance: two satellites") {
    FormationLayout layout;
    layout.poses.resize(2);
    layout.poses[1].translation = Vec3(3.0, 4.0, 0.0);
    CHECK(min_satellite_distance(layout) == doctest::Approx(5.0));
}

TEST_CASE("max pairwise distance: hull-based diameter") {
    std::vector<Vec3> pts = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0.5, 0.2, 0), Vec3(0, 1, 0)};
    CHECK(max_pairwise_distance_xy(pts) == doctest::Approx(std::sqrt(2.0)));
}
