#pragma once

#include <cstdint>
#include <random>

namespace satbeam {

/// Identifies one logical random stream within a campaign. Distinct index
/// triples map to independent streams regardless of worker scheduling.
struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint32_t sweep_index = 0;
    std::uint32_t realization_index = 0;
    std::uint32_t satellite_index = 0;
};

/// Counter-based seed derivation (splitmix64 finalizer over the indices).
std::uint64_t derive_stream_seed(const SeedSpec& spec);

/// Private per-task RNG stream. Streams may move between workers but are
/// never shared concurrently.
class RngStream {
public:
    explicit RngStream(const SeedSpec& spec) : engine_(derive_stream_seed(spec)) {}

    double normal() { return normal_(engine_); }
    double uniform() { return uniform_(engine_); }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace satbeam
