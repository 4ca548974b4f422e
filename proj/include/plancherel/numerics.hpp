#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace plancherel {

// log(n!) — exact log-summation for n <= 256, Stirling series with four
// correction terms beyond (relative error well under 1e-12 across the range).
double log_factorial(std::int64_t n);

// Deterministic pairwise (tree) summation; result is independent of any
// parallel split of the producing loop as long as element order is fixed.
double pairwise_sum(std::span<const double> xs);

struct summary_stats {
    std::size_t count = 0;
    double mean = 0.0;
    double stddev = 0.0;      // sample standard deviation (ddof = 1)
    double stderror = 0.0;    // stddev / sqrt(count)
    double min = 0.0;
    double max = 0.0;
};

summary_stats summarize(std::span<const double> xs);

double median(std::vector<double> xs);
double interquartile_range(std::vector<double> xs);

// Regularized incomplete gamma Q(a, x) = Γ(a,x)/Γ(a); series + continued
// fraction (Lentz). Used for chi-square survival probabilities.
double gamma_q(double a, double x);

// P(X >= stat) for X ~ chi-square with dof degrees of freedom.
double chi_square_pvalue(double stat, int dof);

// Gauss–Legendre nodes/weights on [-1, 1] for fixed orders.
struct gauss_rule {
    std::span<const double> nodes;
    std::span<const double> weights;
};
gauss_rule gauss_legendre(int order);  // supported: 4, 6, 8, 12, 16

// Least-squares slope of y against x.
double fit_slope(std::span<const double> x, std::span<const double> y);

// Least-squares fit y ≈ c0*b0 + c1*b1 for two basis columns.
struct fit2_result {
    double c0 = 0.0;
    double c1 = 0.0;
    double max_rel_residual = 0.0;
};
fit2_result fit_two_basis(std::span<const double> b0, std::span<const double> b1,
                          std::span<const double> y);

}  // namespace plancherel
