#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace plancherel {

struct bessel_params {
    double theta = 1.0;   // poissonization parameter, eta = theta^2
    double tol = 1e-10;   // relative evaluation tolerance, in (0, 1e-6]
};

struct sine_params {
    double a = 0.0;  // bulk position, |a| < 2; one-point density arccos(a/2)/pi
};

struct pattern_vector {
    std::vector<std::int64_t> offsets;  // pairwise distinct
    std::int64_t base = 0;
};

// Table of J_m(z) for m = 0..max_order by Miller backward recurrence,
// normalized with J_0 + 2*sum_{k>=1} J_{2k} = 1; certified by re-running with
// a longer start order until the requested tolerance is met.
class bessel_table {
public:
    bessel_table(double z, std::int64_t max_order, double tol = 1e-12);

    double j(std::int64_t order) const;  // any sign, J_{-m} = (-1)^m J_m
    double z() const noexcept { return z_; }
    std::int64_t max_order() const noexcept { return std::int64_t(values_.size()) - 1; }
    double truncation_bound() const noexcept { return truncation_bound_; }

private:
    double z_;
    std::vector<double> values_;
    double truncation_bound_ = 0.0;
};

// J_order(arg) with |error| <= tol·max(1, |J|); forward power series for
// arg <= 4, Miller recurrence otherwise.
double bessel_j(std::int64_t order, double arg, double tol = 1e-12);

// Discrete Bessel kernel with a shared J-table; evaluates both the
// off-diagonal ratio formula and the diagonal tail series
// J(x,x) = sum_{s>=1} J_{x+s}(2θ)².
class discrete_bessel_kernel {
public:
    // max_abs_position: largest |x| the kernel will be asked about.
    discrete_bessel_kernel(const bessel_params& p, std::int64_t max_abs_position);

    double operator()(std::int64_t x, std::int64_t y) const;
    double diagonal(std::int64_t x) const;
    double theta() const noexcept { return theta_; }

private:
    double theta_;
    double tol_;
    std::int64_t series_cutoff_;  // orders beyond this contribute < tol to any diagonal
    bessel_table table_;
};

double bessel_kernel(const bessel_params& p, std::int64_t x, std::int64_t y);
double bessel_kernel_diag(const bessel_params& p, std::int64_t x);

double sine_kernel(const sine_params& p, std::int64_t k);

// Covariance of occupations under the sine process: rho(1-rho) on the
// diagonal, -S(i-j,a)^2 off it.
double sine_covariance(const sine_params& p, std::int64_t i, std::int64_t j);

// E[prod c_{base+m_i}] = det K(base+m_i, base+m_j); r <= 8.
double det_expectation(const std::function<double(std::int64_t, std::int64_t)>& kernel,
                       const pattern_vector& pattern);

// Leading Debye term for J_x(2θ) in the oscillatory region |x| < 2θ(1-0.05):
// cos(2θ(sin u − u·cos u) − π/4)/sqrt(πθ·sin u), cos u = |x|/2θ, with the
// (−1)^x parity factor for negative orders.
double debye_leading(std::int64_t x, double theta);

// |J(x,x) − sum_{|y−x|<=window} J(x,y)^2| — projection identity residual.
double kernel_fixed_point_residual(const bessel_params& p, std::int64_t x, std::int64_t window);

// |J(x,x;n) − arccos(x/2√n)/π| · (2√n − |x|) at θ = √n, for
// |x| <= 2√n − n^0.17 (OutsideBulk beyond).
double besselmain_residual(std::int64_t n, std::int64_t x);

}  // namespace plancherel
