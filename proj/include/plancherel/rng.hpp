#pragma once

#include <cstdint>
#include <string_view>

namespace plancherel {

// Counter-seeded xoshiro256** stream. A (seed, stream_id) pair fully
// determines the draw sequence, independent of platform libm or execution
// order, so experiments can fan out one stream per sample index.
class seeded_rng {
public:
    explicit seeded_rng(std::uint64_t seed, std::uint64_t stream_id = 0);

    std::uint64_t next_u64();
    double next_double();                          // uniform in [0, 1)
    std::uint64_t next_below(std::uint64_t bound); // uniform in [0, bound), unbiased

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

private:
    std::uint64_t s_[4];
    std::uint64_t seed_;
    std::uint64_t stream_id_;
};

// Stable stream derivation from an experiment tag and sample index (FNV-1a
// over the tag, mixed with the index).
std::uint64_t derive_stream(std::string_view experiment_id, std::uint64_t sample_index);

// Poisson draw: cumulative inversion for mean <= 30, Hörmann's PTRD
// transformed rejection above.
std::int64_t poisson_sample(double mean, seeded_rng& rng);

}  // namespace plancherel
