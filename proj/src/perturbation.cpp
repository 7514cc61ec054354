#include "satbeam/perturbation.hpp"

#include <cmath>
#include <numbers>

namespace satbeam {

void PerturbationSpec::validate() const {
    if (sigma_t.minCoeff() < 0.0 || sigma_r.minCoeff() < 0.0)
        throw ConfigError("perturbation: sigmas must be >= 0");
    if (t_max <= 0.0) throw ConfigError("perturbation: t_max must be > 0");
    if (eps_max <= 0.0 || eps_max > std::numbers::pi / 4.0 + 1e-12)
        throw ConfigError("perturbation: eps_max must be in (0, pi/4]");
}

Vec3 sample_truncated_vec(const Vec3& sigma, double bound, RngStream& stream) {
    if (bound <= 0.0) throw ConfigError("sample_truncated_vec: bound must be > 0");
    if (sigma.minCoeff() < 0.0) throw ConfigError("sample_truncated_vec: sigma must be >= 0");
    for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
        const Vec3 v(sigma.x() * stream.normal(), sigma.y() * stream.normal(),
                     sigma.z() * stream.normal());
        if (v.norm() <= bound) return v;
    }
    throw RejectionStall("sample_truncated_vec: bound rejected " +
                         std::to_string(kMaxRejections) + " consecutive draws");
}

PerturbationSample sample_perturbation(const PerturbationSpec& spec, RngStream& stream) {
    spec.validate();
    PerturbationSample sample;
    sample.delta_t = sample_truncated_vec(spec.sigma_t, spec.t_max, stream);
    sample.delta_eps = sample_truncated_vec(spec.sigma_r, spec.eps_max, stream);
    sample.delta_R = euler_zyx(sample.delta_eps.x(), sample.delta_eps.y(), sample.delta_eps.z());
    return sample;
}

}  // namespace satbeam
