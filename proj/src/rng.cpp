#include "satbeam/rng.hpp"

namespace satbeam {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// splitmix64 finalizer
std::uint64_t mix(std::uint64_t z) {
    z += kGolden;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_stream_seed(const SeedSpec& spec) {
    std::uint64_t s = mix(spec.master_seed);
    s = mix(s ^ (kGolden * (static_cast<std::uint64_t>(spec.sweep_index) + 1)));
    s = mix(s ^ (kGolden * (static_cast<std::uint64_t>(spec.realization_index) + 1)));
    s = mix(s ^ (kGolden * (static_cast<std::uint64_t>(spec.satellite_index) + 1)));
    return s;
}

}  // namespace satbeam
