#include "plancherel/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "plancherel/errors.hpp"

namespace plancherel {

young_diagram sample_plancherel(std::int64_t n, seeded_rng& rng) {
    if (n < 1) throw parameter_error("NonPositiveN", "sample_plancherel: n must be >= 1");

    std::vector<std::uint32_t> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 1u);
    for (std::size_t i = perm.size() - 1; i > 0; --i)
        std::swap(perm[i], perm[rng.next_below(i + 1)]);

    std::vector<std::vector<std::uint32_t>> tableau;
    tableau.reserve(std::size_t(3.0 * std::sqrt(double(n))) + 4);
    for (std::uint32_t value : perm) {
        std::uint32_t x = value;
        bool placed = false;
        for (auto& row : tableau) {
            if (x > row.back()) {
                row.push_back(x);
                placed = true;
                break;
            }
            auto it = std::upper_bound(row.begin(), row.end(), x);
            std::swap(*it, x);
        }
        if (!placed) tableau.push_back({x});
    }

    std::vector<std::int64_t> rows(tableau.size());
    for (std::size_t i = 0; i < tableau.size(); ++i) rows[i] = std::int64_t(tableau[i].size());
    return young_diagram::from_rows(std::move(rows));
}

young_diagram sample_poissonized(double theta, seeded_rng& rng) {
    if (!(theta > 0.0)) throw parameter_error("NonPositiveTheta", "sample_poissonized: theta must be > 0");
    const std::int64_t n = poisson_sample(theta * theta, rng);
    if (n == 0) return {};
    return sample_plancherel(n, rng);
}

namespace {

void partitions_rec(std::int64_t remaining, std::int64_t max_part,
                    std::vector<std::int64_t>& prefix, std::vector<young_diagram>& out) {
    if (remaining == 0) {
        out.push_back(young_diagram::from_rows(prefix));
        return;
    }
    for (std::int64_t part = std::min(max_part, remaining); part >= 1; --part) {
        prefix.push_back(part);
        partitions_rec(remaining - part, part, prefix, out);
        prefix.pop_back();
    }
}

std::uint64_t factorial_u64(std::int64_t n) {
    std::uint64_t f = 1;
    for (std::int64_t i = 2; i <= n; ++i) f *= std::uint64_t(i);
    return f;
}

std::uint64_t hook_product_u64(const young_diagram& d) {
    const auto rows = d.rows();
    const auto cols = d.conjugate().rows();
    std::uint64_t prod = 1;
    for (std::int64_t i = 0; i < d.row_count(); ++i)
        for (std::int64_t j = 0; j < rows[std::size_t(i)]; ++j)
            prod *= std::uint64_t((rows[std::size_t(i)] - (j + 1)) + (cols[std::size_t(j)] - (i + 1)) + 1);
    return prod;
}

}  // namespace

std::vector<young_diagram> enumerate_partitions(std::int64_t n) {
    if (n < 0) throw parameter_error("NegativeN", "enumerate_partitions: n must be >= 0");
    std::vector<young_diagram> out;
    if (n == 0) {
        out.emplace_back();
        return out;
    }
    std::vector<std::int64_t> prefix;
    partitions_rec(n, n, prefix, out);
    return out;
}

exact_distribution plancherel_exact_distribution(std::int64_t n) {
    if (n < 1) throw parameter_error("NonPositiveN", "exact_distribution: n must be >= 1");
    if (n > 12) throw parameter_error("NTooLarge", "exact_distribution: n must be <= 12");
    exact_distribution dist;
    dist.n = n;
    const std::uint64_t nf = factorial_u64(n);
    for (auto& d : enumerate_partitions(n)) {
        const std::uint64_t dim = nf / hook_product_u64(d);  // exact division (hook formula)
        const double prob = double(dim) * double(dim) / double(nf);
        dist.entries.emplace_back(std::move(d), prob);
    }
    return dist;
}

}  // namespace plancherel
