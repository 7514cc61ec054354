#include <doctest.h>

#include <cmath>
#include <numbers>

#include "satbeam/perturbation.hpp"

using namespace satbeam;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

}  // namespace

TEST_CASE("truncated sampling: zero sigmas give the zero vector") {
    RngStream stream(SeedSpec{42, 0, 0, 0});
    CHECK(sample_truncated_vec(Vec3::Zero(), 1.0, stream) == Vec3::Zero());
}

TEST_CASE("truncated sampling: statistical oracle at lambda/5 sigma") {
    // sigma 6 cm per axis, bound 1.2 m: truncation mass is negligible, so the
    // sample mean and variance must match the underlying normal.
    const Vec3 sigma = Vec3::Constant(0.06);
    const int n = 100000;
    RngStream stream(SeedSpec{2024, 0, 0, 0});
    Vec3 sum = Vec3::Zero();
    Vec3 sum_sq = Vec3::Zero();
    for (int i = 0; i < n; ++i) {
        const Vec3 v = sample_truncated_vec(sigma, 1.2, stream);
        CHECK(v.norm() <= 1.2);
        sum += v;
        sum_sq += v.cwiseProduct(v);
    }
    const Vec3 mean = sum / n;
    const double mean_tol = 3.0 * 0.06 / std::sqrt(static_cast<double>(n));
    for (int c = 0; c < 3; ++c) {
        CHECK(std::abs(mean[c]) < mean_tol);
        const double var = sum_sq[c] / n - mean[c] * mean[c];
        CHECK(var == doctest::Approx(0.06 * 0.06).epsilon(0.05));
    }
}

TEST_CASE("truncated sampling: rejection enforces a tight bound") {
    RngStream stream(SeedSpec{7, 0, 0, 0});
    for (int i = 0; i < 10000; ++i)
        CHECK(sample_truncated_vec(Vec3::Constant(1.0), 0.1, stream).norm() <= 0.1);
}

TEST_CASE("truncated sampling: unreachable bound stalls with an error") {
    RngStream stream(SeedSpec{7, 0, 0, 0});
    CHECK_THROWS_AS(sample_truncated_vec(Vec3::Constant(1.0), 1e-4, stream), RejectionStall);
}

TEST_CASE("sample_perturbation: all-zero sigmas give the identity sample") {
    PerturbationSpec spec;
    spec.t_max = 1.2;
    spec.eps_max = 45.0 * kDeg;
    RngStream stream(SeedSpec{1, 0, 0, 0});
    const auto sample = sample_perturbation(spec, stream);
    CHECK(sample.delta_t == Vec3::Zero());
    CHECK(sample.delta_eps == Vec3::Zero());
    CHECK(sample.delta_R == Mat3::Identity());
}

TEST_CASE("sample_perturbation: rotation norms capped at eps_max") {
    PerturbationSpec spec;
    spec.sigma_r = Vec3::Constant(5.0 * kDeg);
    spec.t_max = 1.2;
    spec.eps_max = 45.0 * kDeg;
    RngStream stream(SeedSpec{5, 0, 0, 0});
    for (int i = 0; i < 10000; ++i) {
        const auto sample = sample_perturbation(spec, stream);
        CHECK(sample.delta_eps.norm() <= 45.0 * kDeg);
        // delta_R composed from the accepted Euler angles, bit-exact
        const Mat3 expected =
            euler_zyx(sample.delta_eps.x(), sample.delta_eps.y(), sample.delta_eps.z());
        CHECK(sample.delta_R == expected);
    }
}

TEST_CASE("determinism: identical seed spec reproduces the sample") {
    PerturbationSpec spec;
    spec.sigma_t = Vec3::Constant(0.06);
    spec.sigma_r = Vec3::Constant(5.0 * kDeg);
    spec.t_max = 1.2;
    spec.eps_max = 45.0 * kDeg;
    const SeedSpec seed{99, 3, 17, 5};
    RngStream a(seed);
    RngStream b(seed);
    for (int i = 0; i < 10; ++i) {
        const auto sa = sample_perturbation(spec, a);
        const auto sb = sample_perturbation(spec, b);
        CHECK(sa.delta_t == sb.delta_t);
        CHECK(sa.delta_eps == sb.delta_eps);
    }
}

TEST_CASE("independence: satellite indices map to distinct streams") {
    PerturbationSpec spec;
    spec.sigma_t = Vec3::Constant(0.06);
    spec.t_max = 1.2;
    spec.eps_max = 45.0 * kDeg;
    RngStream a(SeedSpec{99, 0, 0, 0});
    RngStream b(SeedSpec{99, 0, 0, 1});
    CHECK(sample_perturbation(spec, a).delta_t != sample_perturbation(spec, b).delta_t);
}

TEST_CASE("spec validation rejects out-of-range bounds") {
    PerturbationSpec spec;
    spec.t_max = 0.0;
    spec.eps_max = 0.1;
    CHECK_THROWS_AS(spec.validate(), ConfigError);
    spec.t_max = 1.0;
    spec.eps_max = 1.0;  // > pi/4
    CHECK_THROWS_AS(spec.validate(), ConfigError);
}
