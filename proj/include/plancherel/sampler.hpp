#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "plancherel/rng.hpp"
#include "plancherel/young.hpp"

namespace plancherel {

// Shape of the Schensted insertion tableau of a uniform random permutation of
// {1..n}; exactly Plancherel-distributed by the RSK correspondence.
young_diagram sample_plancherel(std::int64_t n, seeded_rng& rng);

// N ~ Poisson(theta^2), then a Plancherel sample of size N (empty for N = 0).
young_diagram sample_poissonized(double theta, seeded_rng& rng);

struct exact_distribution {
    std::int64_t n = 0;
    std::vector<std::pair<young_diagram, double>> entries;  // (λ, dim²λ/n!)
};

// Full enumeration of Y_n with exact probabilities; n <= 12 (NTooLarge above).
exact_distribution plancherel_exact_distribution(std::int64_t n);

// All partitions of n in lexicographically decreasing order.
std::vector<young_diagram> enumerate_partitions(std::int64_t n);

}  // namespace plancherel
