#include "plancherel/variational.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "plancherel/entropy.hpp"
#include "plancherel/errors.hpp"
#include "plancherel/numerics.hpp"

namespace plancherel {

double hook_term(const young_diagram& d) {
    if (d.empty()) throw parameter_error("EmptyDiagram", "hook_term: empty diagram");
    const std::vector<std::int64_t> hist = hook_length_histogram(d);
    std::vector<double> terms;
    terms.reserve(hist.size());
    for (std::size_t k = 1; k < hist.size(); ++k)
        if (hist[k] != 0) terms.push_back(double(hist[k]) * hook_series_weight(std::int64_t(k)));
    return pairwise_sum(terms) / std::sqrt(double(d.cells()));
}

namespace {

// Quadrature over the (t, h) form of the seminorm. F is piecewise linear
// between integers minus the smooth arc √n·Ω(t/√n); the integrand in t is
// smooth between breakpoints at integers, ±2√n, and their −h shifts.
class seminorm_integrator {
public:
    explicit seminorm_integrator(const young_diagram& d)
        : f_(d),
          edge_(2.0 * std::sqrt(double(d.cells()))),
          lo_(f_.support_lo()),
          hi_(f_.support_hi()) {}

    double width() const { return hi_ - lo_; }

    // ∫ F(t)² dt
    double l2_squared(int gl_order) const {
        const gauss_rule gl = gauss_legendre(gl_order);
        double total = 0.0;
        double t = lo_;
        while (t < hi_ - 1e-12) {
            double next = std::min(std::floor(t) + 1.0, hi_);
            // keep the ±edge kinks on panel boundaries
            for (double e : {-edge_, edge_})
                if (e > t + 1e-12 && e < next - 1e-12) next = e;
            total += panel_l2(t, next, gl);
            t = next;
        }
        return total;
    }

    // G(h) = ∫ ((F(t+h) − F(t))/h)² dt
    double difference_integral(double h, int gl_order) const {
        const gauss_rule gl = gauss_legendre(gl_order);
        const double start = lo_ - h;
        double total = 0.0;
        double t = start;
        while (t < hi_ - 1e-12) {
            const double next = std::min(next_breakpoint(t, h), hi_);
            const double mid = 0.5 * (t + next);
            const double half = 0.5 * (next - t);
            double acc = 0.0;
            for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
                const double u = mid + half * gl.nodes[q];
                const double diff = (f_(u + h) - f_(u)) / h;
                acc += gl.weights[q] * diff * diff;
            }
            total += half * acc;
            t = next;
        }
        return total;
    }

    // 2 ∫_{h_lo}^{h_hi} G(h) dh on a panel layout refined by `level`.
    double h_range_integral(double h_lo, double h_hi, int level) const {
        if (h_hi <= h_lo) return 0.0;
        const int gl_t = 4;
        const int gl_h = level >= 1 ? 8 : 6;
        const double ratio = level >= 1 ? 1.10 : 1.20;
        const double unit_to = std::min(level >= 1 ? 40.0 : 24.0, h_hi);
        const gauss_rule glh = gauss_legendre(gl_h);

        std::vector<std::pair<double, double>> panels;
        double h = h_lo;
        if (h < 1.0) {
            // denser panels in (0, 1]: G varies fastest where the weights
            // concentrate on one or two cells
            const double subs[5] = {0.125, 0.25, 0.5, 0.75, 1.0};
            for (double b : subs) {
                const double top = std::min(b, h_hi);
                if (top > h + 1e-13) panels.emplace_back(h, top), h = top;
            }
        }
        while (h < std::min(unit_to, h_hi) - 1e-12) {
            const double top = std::min(std::floor(h) + 1.0, std::min(unit_to, h_hi));
            panels.emplace_back(h, top);
            h = top;
        }
        while (h < h_hi - 1e-12) {
            const double top = std::min(h * ratio, h_hi);
            panels.emplace_back(h, top);
            h = top;
        }

        double total = 0.0;
        for (auto [a, b] : panels) {
            const double mid = 0.5 * (a + b);
            const double half = 0.5 * (b - a);
            double acc = 0.0;
            for (std::size_t q = 0; q < glh.nodes.size(); ++q)
                acc += glh.weights[q] * difference_integral(mid + half * glh.nodes[q], gl_t);
            total += half * acc;
        }
        return 2.0 * total;
    }

    // 2 ∫_{h0}^∞ G with the exact disjoint-support tail 2·||F||²₂/W beyond the
    // support width W.
    std::pair<double, double> split(double h0, int level) const {
        const double w = width();
        const double l2 = l2_squared(level >= 1 ? 8 : 6);
        const double local = h_range_integral(0.0, std::min(h0, w), level);
        double tail = 2.0 * 2.0 * l2 / std::max(w, h0);
        if (h0 < w) tail += h_range_integral(h0, w, level);
        return {local, tail};
    }

private:
    double next_breakpoint(double t, double h) const {
        double next = std::floor(t + 1e-12) + 1.0;
        const double shifted = std::floor(t + h + 1e-12) + 1.0 - h;
        if (shifted > t + 1e-12) next = std::min(next, shifted);
        for (double e : {-edge_, edge_, -edge_ - h, edge_ - h})
            if (e > t + 1e-12) next = std::min(next, e);
        return next;
    }

    double panel_l2(double a, double b, const gauss_rule& gl) const {
        const double mid = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        double acc = 0.0;
        for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
            const double v = f_(mid + half * gl.nodes[q]);
            acc += gl.weights[q] * v * v;
        }
        return half * acc;
    }

    deviation_function f_;
    double edge_;
    double lo_;
    double hi_;
};

std::pair<double, double> seminorm_split_certified(const young_diagram& d, double h0,
                                                   double quad_tol) {
    if (d.empty()) throw parameter_error("EmptyDiagram", "seminorm: empty diagram");
    if (!(h0 > 0.0)) throw parameter_error("NonPositiveH0", "seminorm_split: h0 must be > 0");
    if (!(quad_tol > 0.0)) throw parameter_error("BadTolerance", "seminorm: quad_tol must be > 0");
    const seminorm_integrator integ(d);
    std::pair<double, double> coarse = integ.split(h0, 0);
    std::pair<double, double> fine = integ.split(h0, 1);
    const double total_fine = fine.first + fine.second;
    const double err = std::abs((coarse.first + coarse.second) - total_fine);
    if (err > quad_tol * std::max(total_fine, 1e-12))
        throw computation_error("BudgetNotMet", "seminorm quadrature did not certify quad_tol");
    return fine;
}

}  // namespace

double seminorm_half(const young_diagram& d, double quad_tol) {
    const auto [local, tail] = seminorm_split_certified(d, 1.0, quad_tol);
    return local + tail;
}

std::pair<double, double> seminorm_split(const young_diagram& d, double h0, double quad_tol) {
    return seminorm_split_certified(d, h0, quad_tol);
}

double arccosh_tail_term(const young_diagram& d) {
    if (d.empty()) throw parameter_error("EmptyDiagram", "arccosh_tail_term: empty diagram");
    const deviation_function f(d);
    const double sq = f.sqrt_n();
    const double edge = 2.0 * sq;
    const gauss_rule gl = gauss_legendre(8);

    // v-substitution t = ±2√n·cosh v removes the square-root kink at the edge;
    // panels end at the integer breakpoints of F.
    double total = 0.0;
    for (int sign : {+1, -1}) {
        const double limit = sign > 0 ? f.support_hi() : -f.support_lo();
        if (limit <= edge) continue;
        const double v_max = std::acosh(limit / edge);
        double v = 0.0;
        while (v < v_max - 1e-13) {
            const double t_here = edge * std::cosh(v);
            double t_next = std::min(std::floor(t_here + 1e-9) + 1.0, limit);
            const double v_next = std::min(std::acosh(t_next / edge), v_max);
            const double mid = 0.5 * (v + v_next);
            const double half = 0.5 * (v_next - v);
            double acc = 0.0;
            for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
                const double vv = mid + half * gl.nodes[q];
                const double t = edge * std::cosh(vv);
                acc += gl.weights[q] * f(double(sign) * t) * vv * edge * std::sinh(vv);
            }
            total += half * acc;
            v = v_next;
        }
    }
    return total / sq;
}

vk_decomposition vk_decompose(const young_diagram& d, double quad_tol) {
    if (d.empty()) throw parameter_error("EmptyDiagram", "vk_decompose: empty diagram");
    vk_decomposition out;
    out.n = d.cells();
    const double sq = std::sqrt(double(d.cells()));
    out.lhs = -log_plancherel(d) / sq;
    out.hook_term = hook_term(d);
    out.seminorm_term = seminorm_half(d, quad_tol) / (8.0 * sq);
    out.arccosh_term = arccosh_tail_term(d);
    out.residual = out.lhs - out.hook_term - out.seminorm_term - out.arccosh_term;
    return out;
}

discrete_tail_result discretized_seminorm_tail(const young_diagram& d, double h0, double L,
                                               double delta) {
    if (d.empty()) throw parameter_error("EmptyDiagram", "discretized_seminorm_tail: empty diagram");
    if (!(h0 > 1.0)) throw parameter_error("BadH0", "discretized_seminorm_tail: h0 must be > 1");
    if (!(delta > 0.0 && delta < 0.25))
        throw parameter_error("BadDelta", "discretized_seminorm_tail: delta must be in (0, 1/4)");
    if (!(L > 0.0)) throw parameter_error("BadCut", "discretized_seminorm_tail: L must be > 0");

    const deviation_function f(d);
    const double sq = f.sqrt_n();
    const double cut = 2.0 * sq - L * std::pow(double(d.cells()), delta);

    const std::int64_t klo = std::int64_t(std::floor(f.support_lo())) - 1;
    const std::int64_t khi = std::int64_t(std::ceil(f.support_hi())) + 1;
    std::vector<double> fv(std::size_t(khi - klo + 1), 0.0);
    for (std::int64_t k = klo; k <= khi; ++k)
        if (std::abs(double(k)) <= cut) fv[std::size_t(k - klo)] = f(double(k));

    const std::int64_t first_l = std::int64_t(std::floor(h0 - 1.0)) + 1;  // smallest integer > h0-1
    double total = 0.0;
    const std::int64_t m = khi - klo;
    for (std::int64_t l = std::max<std::int64_t>(1, first_l); l <= m; ++l) {
        double s = 0.0;
        for (std::int64_t i = 0; i + l <= m; ++i) {
            const double diff = (fv[std::size_t(i + l)] - fv[std::size_t(i)]) / double(l);
            s += diff * diff;
        }
        total += s;
    }

    discrete_tail_result out;
    out.value = 4.0 * total / sq;
    const double edge_bound = 2.0 * sq + L * std::pow(double(d.cells()), delta);  // K = L
    out.edge_flag = double(d.first_row()) > edge_bound || double(d.row_count()) > edge_bound;
    return out;
}

}  // namespace plancherel
