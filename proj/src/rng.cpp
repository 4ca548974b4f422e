#include "plancherel/rng.hpp"

#include <cmath>

#include "plancherel/errors.hpp"
#include "plancherel/numerics.hpp"

namespace plancherel {

namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

seeded_rng::seeded_rng(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
    std::uint64_t st = mix64(seed ^ mix64(stream_id ^ 0x632be59bd9b4e019ULL));
    for (auto& word : s_) {
        st += 0x9e3779b97f4a7c15ULL;
        word = mix64(st);
    }
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

std::uint64_t seeded_rng::next_u64() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double seeded_rng::next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

std::uint64_t seeded_rng::next_below(std::uint64_t bound) {
    if (bound == 0) throw parameter_error("ZeroBound", "next_below: bound must be positive");
    // Lemire's multiply-shift with rejection
    unsigned __int128 m = (unsigned __int128)next_u64() * bound;
    auto low = std::uint64_t(m);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            m = (unsigned __int128)next_u64() * bound;
            low = std::uint64_t(m);
        }
    }
    return std::uint64_t(m >> 64);
}

std::uint64_t derive_stream(std::string_view experiment_id, std::uint64_t sample_index) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : experiment_id) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return mix64(h ^ mix64(sample_index));
}

namespace {

std::int64_t poisson_inversion(double mean, seeded_rng& rng) {
    const double u = rng.next_double();
    double p = std::exp(-mean);
    double cum = p;
    std::int64_t k = 0;
    while (u > cum && k < 400) {
        ++k;
        p *= mean / double(k);
        cum += p;
    }
    return k;
}

// Hörmann's PTRD (transformed rejection with squeeze), valid for mean >= 10.
std::int64_t poisson_ptrd(double mu, seeded_rng& rng) {
    const double smu = std::sqrt(mu);
    const double b = 0.931 + 2.53 * smu;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);

    for (;;) {
        double v = rng.next_double();
        double u;
        if (v <= 0.86 * v_r) {
            u = v / v_r - 0.43;
            return std::int64_t(std::floor((2.0 * a / (0.5 - std::abs(u)) + b) * u + mu + 0.445));
        }
        if (v >= v_r) {
            u = rng.next_double() - 0.5;
        } else {
            u = v / v_r - 0.93;
            u = (u < 0 ? -0.5 : 0.5) - u;
            v = rng.next_double() * v_r;
        }
        const double us = 0.5 - std::abs(u);
        if (us < 0.013 && v > us) continue;
        const double k = std::floor((2.0 * a / us + b) * u + mu + 0.445);
        v = v * inv_alpha / (a / (us * us) + b);
        if (k >= 10.0) {
            if (std::log(v * smu) <= (k + 0.5) * std::log(mu / k) - mu - std::log(std::sqrt(2.0 * 3.14159265358979323846)) + k -
                                         (1.0 / 12.0 - 1.0 / (360.0 * k * k)) / k)
                return std::int64_t(k);
        } else if (k >= 0.0) {
            if (std::log(v) <= k * std::log(mu) - mu - log_factorial(std::int64_t(k)))
                return std::int64_t(k);
        }
    }
}

}  // namespace

std::int64_t poisson_sample(double mean, seeded_rng& rng) {
    if (!(mean >= 0.0)) throw parameter_error("NegativeMean", "poisson_sample: mean must be >= 0");
    if (mean == 0.0) return 0;
    if (mean <= 30.0) return poisson_inversion(mean, rng);
    return poisson_ptrd(mean, rng);
}

}  // namespace plancherel
