#include "plancherel/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "plancherel/errors.hpp"

namespace plancherel {

namespace {

void validate(const bessel_params& p) {
    if (!(p.theta > 0.0)) throw parameter_error("NonPositiveTheta", "bessel kernel: theta must be > 0");
    if (!(p.tol > 0.0 && p.tol <= 1e-6))
        throw parameter_error("BadTolerance", "bessel kernel: tol must be in (0, 1e-6]");
}

// One backward-recurrence pass from start order M; returns normalized values
// for orders 0..max_order.
std::vector<double> miller_pass(double z, std::int64_t max_order, std::int64_t start) {
    std::vector<double> vals(std::size_t(max_order) + 1, 0.0);
    const double rescale_limit = 1e250;
    double jp1 = 0.0;        // J_{m+1} (unnormalized)
    double jm = 1e-250;      // J_m
    double norm = 0.0;       // accumulates J_0 + 2*sum J_{2k}
    for (std::int64_t m = start; m >= 1; --m) {
        double jm1 = (2.0 * double(m) / z) * jm - jp1;
        jp1 = jm;
        jm = jm1;
        if (m - 1 <= max_order) vals[std::size_t(m - 1)] = jm;
        if ((m - 1) % 2 == 0) norm += (m - 1 == 0) ? jm : 2.0 * jm;
        if (std::abs(jm) > rescale_limit) {
            jm /= rescale_limit;
            jp1 /= rescale_limit;
            norm /= rescale_limit;
            for (auto& v : vals) v /= rescale_limit;
        }
    }
    for (auto& v : vals) v /= norm;
    return vals;
}

double power_series_j(std::int64_t order, double z, double tol) {
    // sum_k (-1)^k (z/2)^{2k+m} / (k! (k+m)!), m >= 0, z <= 4
    const std::int64_t m = order;
    // leading factor (z/2)^m / m! in log space to dodge underflow for huge m
    double log_lead = double(m) * std::log(0.5 * z);
    for (std::int64_t i = 2; i <= m; ++i) log_lead -= std::log(double(i));
    if (z == 0.0) return m == 0 ? 1.0 : 0.0;
    if (log_lead < -745.0) return 0.0;
    const double lead = std::exp(log_lead);
    const double q = 0.25 * z * z;
    double term = 1.0;
    double sum = 1.0;
    for (std::int64_t k = 1; k <= 200; ++k) {
        term *= -q / (double(k) * double(k + m));
        sum += term;
        if (std::abs(term) <= tol * std::abs(sum) && k > 3) break;
    }
    return lead * sum;
}

std::int64_t miller_start_order(double z, std::int64_t max_order) {
    const double base = double(max_order) + 20.0 + 10.0 * std::sqrt(std::max(double(max_order), z));
    std::int64_t start = std::int64_t(base) + 1;
    return start + (start % 2);  // even start keeps the normalization parity simple
}

double checked_theta(const bessel_params& p) {
    validate(p);
    return p.theta;
}

}  // namespace

bessel_table::bessel_table(double z, std::int64_t max_order, double tol) : z_(z) {
    if (z < 0.0) throw parameter_error("NegativeArgument", "bessel_table: z must be >= 0");
    if (max_order < 0) max_order = 0;
    if (z == 0.0) {
        values_.assign(std::size_t(max_order) + 1, 0.0);
        values_[0] = 1.0;
        return;
    }
    std::int64_t start = miller_start_order(z, max_order);
    std::vector<double> current = miller_pass(z, max_order, start);
    for (int attempt = 0; attempt < 4; ++attempt) {
        const std::int64_t longer = start + std::max<std::int64_t>(16, start / 4);
        std::vector<double> check = miller_pass(z, max_order, longer);
        double worst = 0.0;
        for (std::size_t i = 0; i < current.size(); ++i) {
            const double denom = std::max(1.0, std::abs(check[i]));
            worst = std::max(worst, std::abs(current[i] - check[i]) / denom);
        }
        if (worst <= tol) {
            values_ = std::move(check);
            truncation_bound_ = worst;
            return;
        }
        start = longer;
        current = std::move(check);
    }
    throw computation_error("ToleranceUnreachable", "bessel_table: recurrence did not certify requested tolerance");
}

double bessel_table::j(std::int64_t order) const {
    const std::int64_t m = std::abs(order);
    if (m >= std::int64_t(values_.size()))
        throw parameter_error("OrderOutOfRange", "bessel_table: order beyond table");
    const double v = values_[std::size_t(m)];
    return (order < 0 && (m % 2 == 1)) ? -v : v;
}

double bessel_j(std::int64_t order, double arg, double tol) {
    if (arg < 0.0) throw parameter_error("NegativeArgument", "bessel_j: arg must be >= 0");
    if (!(tol > 0.0)) throw parameter_error("BadTolerance", "bessel_j: tol must be > 0");
    const std::int64_t m = std::abs(order);
    double v;
    if (arg <= 4.0) {
        v = power_series_j(m, arg, tol);
    } else {
        v = bessel_table(arg, m, tol).j(m);
    }
    return (order < 0 && (m % 2 == 1)) ? -v : v;
}

discrete_bessel_kernel::discrete_bessel_kernel(const bessel_params& p, std::int64_t max_abs_position)
    : theta_(checked_theta(p)), tol_(p.tol),
      series_cutoff_(std::int64_t(2.0 * p.theta + 12.0 * std::cbrt(p.theta) + 60.0)),
      table_(2.0 * p.theta,
             std::max(max_abs_position + 1,
                      std::int64_t(2.0 * p.theta + 12.0 * std::cbrt(p.theta) + 60.0)),
             std::min(p.tol, 1e-12)) {}

double discrete_bessel_kernel::operator()(std::int64_t x, std::int64_t y) const {
    if (x == y) return diagonal(x);
    return theta_ * (table_.j(x) * table_.j(y + 1) - table_.j(x + 1) * table_.j(y)) / double(x - y);
}

double discrete_bessel_kernel::diagonal(std::int64_t x) const {
    // sum_{s>=1} J_{x+s}^2: orders beyond the table's cutoff are below the
    // stretched-exponential edge decay and contribute < tol.
    if (x >= series_cutoff_) return 0.0;
    if (-x >= series_cutoff_) {
        // complementary form 1 - sum_{m <= x} J_m^2 keeps the sum short deep in the bulk
        double tail = 0.0;
        for (std::int64_t m = x; m >= -series_cutoff_; --m) tail += table_.j(m) * table_.j(m);
        return 1.0 - tail;
    }
    double sum = 0.0;
    for (std::int64_t m = series_cutoff_; m > x; --m) sum += table_.j(m) * table_.j(m);
    return sum;
}

double bessel_kernel(const bessel_params& p, std::int64_t x, std::int64_t y) {
    validate(p);
    if (x == y)
        throw parameter_error("DiagonalRequested", "bessel_kernel: use bessel_kernel_diag for x == y");
    const discrete_bessel_kernel k(p, std::max(std::abs(x), std::abs(y)) + 1);
    return k(x, y);
}

double bessel_kernel_diag(const bessel_params& p, std::int64_t x) {
    validate(p);
    const discrete_bessel_kernel k(p, std::abs(x) + 1);
    return k.diagonal(x);
}

double sine_kernel(const sine_params& p, std::int64_t k) {
    if (!(std::abs(p.a) < 2.0)) throw parameter_error("BulkPositionOutOfRange", "sine_kernel: |a| < 2 required");
    const double phi = std::acos(0.5 * p.a);
    if (k == 0) return phi / std::numbers::pi;
    return std::sin(phi * double(k)) / (std::numbers::pi * double(k));
}

double sine_covariance(const sine_params& p, std::int64_t i, std::int64_t j) {
    const double rho = sine_kernel(p, 0);
    if (i == j) return rho * (1.0 - rho);
    const double s = sine_kernel(p, i - j);
    return -s * s;
}

double det_expectation(const std::function<double(std::int64_t, std::int64_t)>& kernel,
                       const pattern_vector& pattern) {
    const std::size_t r = pattern.offsets.size();
    if (r == 0) return 1.0;
    if (r > 8) throw parameter_error("PatternTooLong", "det_expectation: at most 8 offsets");
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i + 1; j < r; ++j)
            if (pattern.offsets[i] == pattern.offsets[j])
                throw parameter_error("OffsetsNotDistinct", "det_expectation: offsets must be distinct");

    std::array<double, 64> m{};
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            m[i * r + j] = kernel(pattern.base + pattern.offsets[i], pattern.base + pattern.offsets[j]);

    // LU with partial pivoting
    double det = 1.0;
    for (std::size_t col = 0; col < r; ++col) {
        std::size_t piv = col;
        for (std::size_t row = col + 1; row < r; ++row)
            if (std::abs(m[row * r + col]) > std::abs(m[piv * r + col])) piv = row;
        if (piv != col) {
            for (std::size_t j = 0; j < r; ++j) std::swap(m[piv * r + j], m[col * r + j]);
            det = -det;
        }
        const double pivot = m[col * r + col];
        if (pivot == 0.0) return 0.0;
        det *= pivot;
        for (std::size_t row = col + 1; row < r; ++row) {
            const double f = m[row * r + col] / pivot;
            for (std::size_t j = col; j < r; ++j) m[row * r + j] -= f * m[col * r + j];
        }
    }

    constexpr double range_tol = 1e-8;
    if (det < -range_tol || det > 1.0 + range_tol)
        throw computation_error("NotAProbability", "det_expectation: determinant outside [0, 1]");
    return det;
}

double debye_leading(std::int64_t x, double theta) {
    if (!(theta > 0.0)) throw parameter_error("NonPositiveTheta", "debye_leading: theta must be > 0");
    constexpr double margin = 0.05;
    const double ax = double(std::abs(x));
    if (!(ax < 2.0 * theta * (1.0 - margin)))
        throw parameter_error("TooCloseToEdge", "debye_leading: |x| must be below 2*theta*(1-0.05)");
    const double u = std::acos(ax / (2.0 * theta));
    const double value = std::cos(2.0 * theta * (std::sin(u) - u * std::cos(u)) - 0.25 * std::numbers::pi) /
                         std::sqrt(std::numbers::pi * theta * std::sin(u));
    return (x < 0 && (std::abs(x) % 2 == 1)) ? -value : value;
}

double kernel_fixed_point_residual(const bessel_params& p, std::int64_t x, std::int64_t window) {
    validate(p);
    if (window < 1) throw parameter_error("BadWindow", "kernel_fixed_point_residual: window must be >= 1");
    const discrete_bessel_kernel k(p, std::abs(x) + window + 1);
    const double diag = k.diagonal(x);
    double sum = diag * diag;
    for (std::int64_t y = x - window; y <= x + window; ++y) {
        if (y == x) continue;
        const double v = k(x, y);
        sum += v * v;
    }
    return std::abs(diag - sum);
}

double besselmain_residual(std::int64_t n, std::int64_t x) {
    if (n < 1) throw parameter_error("NonPositiveN", "besselmain_residual: n must be >= 1");
    const double sq = std::sqrt(double(n));
    const double bulk_limit = 2.0 * sq - std::pow(double(n), 0.17);
    if (double(std::abs(x)) > bulk_limit)
        throw parameter_error("OutsideBulk", "besselmain_residual: |x| must be <= 2*sqrt(n) - n^0.17");
    const bessel_params p{sq, 1e-10};
    const discrete_bessel_kernel k(p, std::abs(x) + 1);
    const double diff = std::abs(k.diagonal(x) - std::acos(double(x) / (2.0 * sq)) / std::numbers::pi);
    return diff * (2.0 * sq - double(std::abs(x)));
}

}  // namespace plancherel
