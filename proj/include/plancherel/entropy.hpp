#pragma once

#include <cstdint>
#include <vector>

namespace plancherel {

// w(k) = sum_{l>=1} 1/(l(l+1)(2l+1) k^{2l}); the per-hook weight of the
// variational formula. Relative-term stopping plus a comparison tail.
double hook_series_weight(std::int64_t k, double tol = 1e-12);

struct series_result {
    double value = 0.0;   // (32/pi^2) * double sum
    double k_tail = 0.0;  // bound on the dropped k > k_max remainder
    double l_tail = 0.0;  // accumulated bound on dropped l-tails
};

// (32/pi^2) sum_{k,l} 1/(l(l+1)(2l+1) k^{2l-2} (4k^2-1)). The l = 1 slice
// telescopes (sum_{k>K} 1/(4k^2-1) = 1/(2(2K+1))) and is carried exactly; the
// l >= 2 remainder beyond k_max is bounded by comparison with 1/(24 k^4).
series_result entropy_series(std::int64_t k_max, double tol = 1e-12);

// Overlap weights of [s, s+h] with unit cells: w[i] = |[i,i+1] ∩ [s,s+h]|/h
// for cells i = 0..(#weights-1); sum = 1, at most ceil(h)+1 nonzero.
struct slope_weights {
    double s = 0.0;
    double h = 1.0;
    std::vector<double> w;
};

slope_weights make_slope_weights(double s, double h);

// E_{S(a)}((Φ_ω(s+h)-Φ_ω(s))/h − (2/π)arcsin(a/2))², evaluated exactly as
// 4·ΣΣ w_i w_j Cov(ω_i, ω_j) — a finite quadratic form in the sine kernel.
double local_variance_integrand(double a, double s, double h);

struct quadrature_config {
    double h_max = 200.0;
    int a_nodes = 96;
    int s_nodes = 32;
    int h_nodes = 400;
    std::int64_t k_max = 200;  // series truncation
    double tol = 5e-2;         // certification threshold on the total budget
};

struct entropy_budget {
    double a_grid = 0.0;
    double s_grid = 0.0;
    double h_grid = 0.0;
    double h_cutoff = 0.0;       // bound on the omitted h > h_max tail
    double series_k_tail = 0.0;
    double series_l_tail = 0.0;
    double total() const {
        return a_grid + s_grid + h_grid + h_cutoff + series_k_tail + series_l_tail;
    }
};

struct integral_result {
    double value = 0.0;     // (1/4)∫∫∫ over h in [0, h_max]
    double a_grid = 0.0;
    double s_grid = 0.0;
    double h_grid = 0.0;
    double h_cutoff = 0.0;
    double tail_fit_c = 0.0;  // fitted (c·ln h + d)/h² tail model
    double tail_fit_d = 0.0;
};

integral_result entropy_integral(const quadrature_config& cfg);

struct entropy_estimate {
    double value = 0.0;
    entropy_budget budget;
    quadrature_config config;
};

// H = entropy_integral + entropy_series with the itemized budget; throws
// BudgetNotMet when the total budget exceeds cfg.tol.
entropy_estimate entropy_constant(const quadrature_config& cfg = {});

}  // namespace plancherel
