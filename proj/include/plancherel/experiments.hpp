#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plancherel/variational.hpp"
#include "plancherel/young.hpp"

namespace plancherel {

struct stat_record {
    std::string name;
    double estimate = 0.0;
    double stderror = 0.0;
    std::int64_t count = 0;
    std::optional<double> target;  // deterministic reference value, when one exists
    std::optional<double> z;       // (estimate - target)/stderror
};

struct experiment_report {
    std::string experiment;
    double n_or_theta = 0.0;
    std::int64_t count = 0;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, std::string>> params;  // config echo
    std::vector<stat_record> stats;
};

// Deterministic parallel map: results land in sample-index order; reductions
// downstream are pairwise sums, so worker count never changes output bits.
void parallel_for(std::int64_t count, int workers, const std::function<void(std::int64_t)>& body);

// Per n: mean/std of −log Pl(λ)/√n across `count` Plancherel samples.
experiment_report run_entropy_convergence(const std::vector<std::int64_t>& ns, std::int64_t count,
                                          std::uint64_t seed, int workers = 1);

// Per k: mean of h_k(λ)/√n with its standard error, against 32k²/((4k²−1)π²).
experiment_report run_hook_frequencies(const std::vector<std::int64_t>& ks, std::int64_t n,
                                       std::int64_t count, std::uint64_t seed, int workers = 1);

struct pattern_frequency_spec {
    std::vector<std::int64_t> offsets;                 // the pattern m⃗
    std::vector<std::pair<double, double>> f_nodes;    // piecewise-linear f on [−2,2]
};

// Monte-Carlo mean of (1/√n)Σ_k f(k/√n)·c_{k+m⃗}(λ) against the deterministic
// target ∫ f(a)·E_{S(a)}(c_m⃗) da.
experiment_report run_pattern_frequency(const pattern_frequency_spec& spec, std::int64_t n,
                                        std::int64_t count, std::uint64_t seed, int workers = 1);

// Empirical poissonized correlations E[Π c_{x_i}] vs Bessel-kernel
// determinants for singletons, nearest/next-nearest pairs, and consecutive
// blocks up to max_order, on window_lo..window_hi.
experiment_report run_boo_correlations(double theta, std::int64_t window_lo, std::int64_t window_hi,
                                       int max_order, std::int64_t count, std::uint64_t seed,
                                       int workers = 1);

// Empirical |Cov(c_x, c_y)|·(|x−y|+1) per pair.
experiment_report run_correlation_decay(std::int64_t n, std::int64_t count,
                                        const std::vector<std::pair<std::int64_t, std::int64_t>>& pairs,
                                        std::uint64_t seed, int workers = 1);

// All bulk pairs (x, x+sep) with |x|, |x+sep| <= 1.8√n, for sep = 1..max_sep.
std::vector<std::pair<std::int64_t, std::int64_t>> bulk_separation_pairs(std::int64_t n,
                                                                         std::int64_t max_sep,
                                                                         std::int64_t stride = 1);

// Per δ: empirical frequency of λ₁ > 2√n + n^δ or λ′₁ > 2√n + n^δ.
experiment_report run_edge_statistics(std::int64_t n, std::int64_t count,
                                      const std::vector<double>& deltas, std::uint64_t seed,
                                      int workers = 1);

// Per sample: sup over half-integers of |F_λ(t)|/√n; reports mean and max.
experiment_report run_limit_shape(std::int64_t n, std::int64_t count, std::uint64_t seed,
                                  int workers = 1);

// Sampled VK decompositions (one per sample), for the verify-vk record stream
// and the residual acceptance statistics.
std::vector<vk_decomposition> collect_vk_decompositions(std::int64_t n, std::int64_t count,
                                                        std::uint64_t seed, double quad_tol,
                                                        int workers = 1);

}  // namespace plancherel
