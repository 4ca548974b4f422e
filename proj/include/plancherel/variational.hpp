#pragma once

#include <cstdint>
#include <utility>

#include "plancherel/young.hpp"

namespace plancherel {

struct vk_decomposition {
    std::int64_t n = 0;
    double lhs = 0.0;            // −log Pl(λ)/√n
    double hook_term = 0.0;      // (1/√n) Σ_k h_k(λ) w(k)
    double seminorm_term = 0.0;  // ||F_λ||_{1/2} / (8√n)
    double arccosh_term = 0.0;   // (1/√n) ∫_{|t|≥2√n} F_λ arccosh(|t|/2√n)
    double residual = 0.0;       // lhs − hook − seminorm − arccosh (= −ε_n)
};

double hook_term(const young_diagram& d);

// ||F_λ||_{1/2} = ∫∫ ((F(t)−F(s))/(t−s))² dt ds, certified to quad_tol
// relative accuracy (BudgetNotMet otherwise).
double seminorm_half(const young_diagram& d, double quad_tol = 1e-4);

// (local, tail) with local = 2∫_0^{h0}∫ and tail = 2∫_{h0}^∞∫; their sum is
// seminorm_half within 2·quad_tol.
std::pair<double, double> seminorm_split(const young_diagram& d, double h0,
                                         double quad_tol = 1e-4);

double arccosh_tail_term(const young_diagram& d);

vk_decomposition vk_decompose(const young_diagram& d, double quad_tol = 1e-4);

struct discrete_tail_result {
    double value = 0.0;
    bool edge_flag = false;  // λ outside Y_n(K, δ) with K = L
};

// (4/√n) Σ_{l>h0−1} Σ_k ((F^{(L,δ)}(k+l) − F^{(L,δ)}(k))/l)² where F^{(L,δ)}
// zeroes F outside |t| ≤ 2√n − L·n^δ; fast discrete majorant of the h > h0
// seminorm tail.
discrete_tail_result discretized_seminorm_tail(const young_diagram& d, double h0, double L,
                                               double delta);

}  // namespace plancherel
