#include "plancherel/young.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "plancherel/errors.hpp"
#include "plancherel/numerics.hpp"

namespace plancherel {

young_diagram young_diagram::from_rows(std::vector<std::int64_t> rows) {
    std::int64_t n = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i] <= 0)
            throw parameter_error("NonPositiveRow", "row lengths must be positive");
        if (i > 0 && rows[i] > rows[i - 1])
            throw parameter_error("NonMonotoneRows", "row lengths must be weakly decreasing");
        n += rows[i];
    }
    young_diagram d;
    d.rows_ = std::move(rows);
    d.n_ = n;
    return d;
}

young_diagram young_diagram::conjugate() const {
    if (rows_.empty()) return {};
    std::vector<std::int64_t> conj(std::size_t(rows_[0]), 0);
    for (std::int64_t len : rows_)
        for (std::int64_t j = 0; j < len; ++j) ++conj[std::size_t(j)];
    return from_rows(std::move(conj));
}

namespace {

double log_hook_product(const young_diagram& d) {
    const auto rows = d.rows();
    const young_diagram conj = d.conjugate();
    const auto cols = conj.rows();
    // Kahan accumulation: the sum is later differenced against log n!.
    double sum = 0.0, comp = 0.0;
    for (std::int64_t i = 0; i < d.row_count(); ++i) {
        for (std::int64_t j = 0; j < rows[std::size_t(i)]; ++j) {
            const std::int64_t hook = (rows[std::size_t(i)] - (j + 1)) + (cols[std::size_t(j)] - (i + 1)) + 1;
            const double y = std::log(double(hook)) - comp;
            const double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
    }
    return sum;
}

}  // namespace

double log_dim(const young_diagram& d) {
    if (d.empty()) throw parameter_error("EmptyDiagram", "log_dim: empty diagram");
    return log_factorial(d.cells()) - log_hook_product(d);
}

double log_plancherel(const young_diagram& d) {
    if (d.empty()) throw parameter_error("EmptyDiagram", "log_plancherel: empty diagram");
    return 2.0 * log_dim(d) - log_factorial(d.cells());
}

std::vector<std::int64_t> hook_length_histogram(const young_diagram& d) {
    std::vector<std::int64_t> hist(std::size_t(d.cells()) + 1, 0);
    const auto rows = d.rows();
    const young_diagram conj = d.conjugate();
    const auto cols = conj.rows();
    for (std::int64_t i = 0; i < d.row_count(); ++i)
        for (std::int64_t j = 0; j < rows[std::size_t(i)]; ++j) {
            const std::int64_t hook = (rows[std::size_t(i)] - (j + 1)) + (cols[std::size_t(j)] - (i + 1)) + 1;
            ++hist[std::size_t(hook)];
        }
    return hist;
}

std::int64_t hook_count(const young_diagram& d, std::int64_t k) {
    if (k < 1) throw parameter_error("NonPositiveHook", "hook_count: k must be >= 1");
    if (k > d.cells()) return 0;
    return hook_length_histogram(d)[std::size_t(k)];
}

profile_window profile_window::of(const young_diagram& d) {
    return of(d, -(d.row_count() + 2), d.first_row() + 2);
}

profile_window profile_window::of(const young_diagram& d, std::int64_t lo, std::int64_t hi) {
    if (lo > -(d.row_count() + 1) || hi < d.first_row())
        throw parameter_error("WindowTooNarrow", "profile window must cover all nonconstant positions");
    profile_window p;
    p.lo_ = lo;
    p.hi_ = hi;
    p.bits_.assign(std::size_t(hi - lo + 1), 0);
    // k <= -(rows+1) corresponds to the empty rows lambda_i = 0, i > rows
    for (std::int64_t k = lo; k <= -(d.row_count() + 1); ++k) p.bits_[std::size_t(k - lo)] = 1;
    const auto rows = d.rows();
    for (std::int64_t i = 0; i < d.row_count(); ++i) {
        const std::int64_t k = rows[std::size_t(i)] - (i + 1);
        if (k >= lo && k <= hi) p.bits_[std::size_t(k - lo)] = 1;
    }
    return p;
}

profile_window profile(const young_diagram& d) { return profile_window::of(d); }

std::int64_t hook_count_via_profile(const profile_window& p, std::int64_t k) {
    if (k < 1) throw parameter_error("NonPositiveHook", "hook_count_via_profile: k must be >= 1");
    if (k > p.hi() - p.lo())
        throw parameter_error("WindowTooNarrow", "hook_count_via_profile: window shorter than k");
    std::int64_t count = 0;
    for (std::int64_t i = p.lo(); i <= p.hi(); ++i)
        count += std::int64_t(p.bit(i)) - std::int64_t(p.bit(i)) * std::int64_t(p.bit(i - k));
    return count;
}

double limit_shape(double t) {
    const double a = std::abs(t);
    if (a >= 2.0) return a;
    return (2.0 / std::numbers::pi) * (t * std::asin(0.5 * t) + std::sqrt(4.0 - t * t));
}

deviation_function::deviation_function(const young_diagram& d) {
    n_ = d.cells();
    sqrt_n_ = std::sqrt(double(n_));
    // Phi(t) = |t| outside [-(rows), lambda_1]; pad one cell on each side.
    lo_ = -(d.row_count() + 1);
    hi_ = d.first_row() + 1;
    const profile_window p = profile_window::of(d, lo_, hi_);
    phi_at_.assign(std::size_t(hi_ - lo_ + 1), 0.0);
    phi_at_[0] = double(-lo_);
    for (std::int64_t k = lo_; k < hi_; ++k) {
        const double slope = p.bit(k) ? -1.0 : 1.0;
        phi_at_[std::size_t(k - lo_ + 1)] = phi_at_[std::size_t(k - lo_)] + slope;
    }
    const double edge = 2.0 * sqrt_n_;
    support_lo_ = -std::max(double(d.row_count()), edge);
    support_hi_ = std::max(double(d.first_row()), edge);
}

double deviation_function::phi(double t) const {
    if (t <= double(lo_)) return -t;
    if (t >= double(hi_)) return t;
    const double rel = t - double(lo_);
    const double fl = std::floor(rel);
    const std::size_t idx = std::size_t(fl);
    const double frac = rel - fl;
    return phi_at_[idx] * (1.0 - frac) + phi_at_[idx + 1] * frac;
}

double deviation_function::operator()(double t) const {
    if (t <= support_lo_ || t >= support_hi_) return 0.0;
    return phi(t) - sqrt_n_ * limit_shape(t / sqrt_n_);
}

double phi(const young_diagram& d, double t) { return deviation_function(d).phi(t); }

double phi_profile(const profile_window& p, double t) {
    // Phi_omega(0) = 0; slope 1-2*bit(k) on (k, k+1)
    double value = 0.0;
    if (t >= 0.0) {
        std::int64_t k = 0;
        double pos = 0.0;
        while (pos + 1.0 <= t) {
            value += p.bit(k) ? -1.0 : 1.0;
            pos += 1.0;
            ++k;
        }
        value += (t - pos) * (p.bit(k) ? -1.0 : 1.0);
    } else {
        std::int64_t k = -1;
        double pos = 0.0;
        while (pos - 1.0 >= t) {
            value -= p.bit(k) ? -1.0 : 1.0;
            pos -= 1.0;
            --k;
        }
        value -= (pos - t) * (p.bit(k) ? -1.0 : 1.0);
    }
    return value;
}

double deviation(const young_diagram& d, double t) {
    if (d.empty()) throw parameter_error("EmptyDiagram", "deviation: empty diagram");
    return deviation_function(d)(t);
}

}  // namespace plancherel
