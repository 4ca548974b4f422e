#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace plancherel {

// A partition of n: weakly decreasing positive row lengths. Immutable after
// construction; all operations on it are pure.
class young_diagram {
public:
    young_diagram() = default;  // empty diagram, n = 0

    // Validates weak decrease and positivity; throws parameter_error with code
    // NonMonotoneRows / NonPositiveRow.
    static young_diagram from_rows(std::vector<std::int64_t> rows);

    std::int64_t cells() const noexcept { return n_; }
    bool empty() const noexcept { return n_ == 0; }
    std::span<const std::int64_t> rows() const noexcept { return rows_; }
    std::int64_t row_count() const noexcept { return std::int64_t(rows_.size()); }
    std::int64_t first_row() const noexcept { return rows_.empty() ? 0 : rows_[0]; }

    young_diagram conjugate() const;

    bool operator==(const young_diagram& other) const noexcept { return rows_ == other.rows_; }

private:
    std::vector<std::int64_t> rows_;
    std::int64_t n_ = 0;
};

// log dim λ (number of standard tableaux) via the hook length formula.
double log_dim(const young_diagram& d);

// log Pl(λ) = 2 log dim λ − log n!
double log_plancherel(const young_diagram& d);

// Multiset of hook lengths: histogram[k] = number of cells with hook length k,
// for k = 0..n (index 0 unused). Sum of entries equals n.
std::vector<std::int64_t> hook_length_histogram(const young_diagram& d);

std::int64_t hook_count(const young_diagram& d, std::int64_t k);

// The {0,1} sequence c_k(λ) = 1 iff k = λ_i − i, materialized on a finite
// window; c_k = 1 for k < lo and c_k = 0 for k > hi by the outside rule.
class profile_window {
public:
    static profile_window of(const young_diagram& d);
    static profile_window of(const young_diagram& d, std::int64_t lo, std::int64_t hi);

    int bit(std::int64_t k) const noexcept {
        if (k < lo_) return 1;
        if (k > hi_) return 0;
        return bits_[std::size_t(k - lo_)];
    }

    std::int64_t lo() const noexcept { return lo_; }
    std::int64_t hi() const noexcept { return hi_; }

private:
    std::int64_t lo_ = -1;
    std::int64_t hi_ = 0;
    std::vector<std::uint8_t> bits_;
};

profile_window profile(const young_diagram& d);

// h_k(λ) = Σ_i (c_i − c_i c_{i−k}); exact for any window honoring the outside
// rule. Throws WindowTooNarrow when no in-window pair exists (k > hi − lo).
std::int64_t hook_count_via_profile(const profile_window& p, std::int64_t k);

// The Vershik–Kerov–Logan–Shepp curve Ω.
double limit_shape(double t);

// Piecewise-linear profile boundary Φ_λ and the deviation F_λ(t) = Φ_λ(t) −
// √n·Ω(t/√n). Holds precomputed integer breakpoints for O(1) evaluation.
class deviation_function {
public:
    explicit deviation_function(const young_diagram& d);

    double phi(double t) const;
    double operator()(double t) const;  // F_λ(t)

    std::int64_t n() const noexcept { return n_; }
    double sqrt_n() const noexcept { return sqrt_n_; }
    // F vanishes outside [support_lo, support_hi].
    double support_lo() const noexcept { return support_lo_; }
    double support_hi() const noexcept { return support_hi_; }

private:
    std::int64_t n_ = 0;
    double sqrt_n_ = 0.0;
    std::int64_t lo_ = 0;  // phi table covers integers lo_..hi_
    std::int64_t hi_ = 0;
    std::vector<double> phi_at_;  // Φ at lo_..hi_
    double support_lo_ = 0.0;
    double support_hi_ = 0.0;
};

double phi(const young_diagram& d, double t);

// Φ_ω for a {0,1} sequence, anchored at Φ_ω(0) = 0.
double phi_profile(const profile_window& p, double t);

double deviation(const young_diagram& d, double t);

}  // namespace plancherel
