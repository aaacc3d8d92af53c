#pragma once

#include <cstdint>

#include "tailvar/special.hpp"

namespace tailvar {

/// SplitMix64: a small, fast, splittable 64-bit generator (Steele, Lea &
/// Flood's construction). State advances by the golden-gamma increment; each
/// output is a strong mix of the state. Used directly as the simulation
/// generator because its streams are bit-reproducible on every platform,
/// unlike the std distribution adapters.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform draw on the open interval (0, 1): 53 high bits, half-offset.
    double next_uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Unit-variance standardized t(4) draw by inverse CDF.
    double next_std_t4() { return std_t4_quantile(next_uniform()); }

    /// Standard normal draw by inverse CDF.
    double next_normal() { return norm_quantile(next_uniform()); }

  private:
    std::uint64_t state_;
};

/// Independent substream for (seed, stream): the pair is hashed through the
/// SplitMix64 output function so replication r always sees the same stream
/// regardless of scheduling. Distinct (seed, stream) pairs map to distinct
/// initial states (the mix is a bijection applied to distinct inputs).
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t stream) {
    SplitMix64 h(seed ^ (0xA0761D6478BD642FULL * (stream + 1)));
    return SplitMix64(h.next_u64());
}

}  // namespace tailvar
