#include "plancherel/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "plancherel/errors.hpp"

namespace plancherel {

namespace {

std::vector<double> build_log_factorial_table() {
    std::vector<double> t(257, 0.0);
    for (int n = 1; n <= 256; ++n) t[n] = t[n - 1] + std::log(double(n));
    return t;
}

}  // namespace

double log_factorial(std::int64_t n) {
    if (n < 0) throw parameter_error("NegativeFactorial", "log_factorial: n < 0");
    static const std::vector<double> table = build_log_factorial_table();
    if (n <= 256) return table[size_t(n)];
    const double x = double(n);
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    // Stirling: (x+1/2)ln x - x + ln sqrt(2pi) + 1/(12x) - 1/(360x^3) + 1/(1260x^5) - 1/(1680x^7)
    double corr = inv * (1.0 / 12.0 + inv2 * (-1.0 / 360.0 + inv2 * (1.0 / 1260.0 - inv2 / 1680.0)));
    return (x + 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi) + corr;
}

double pairwise_sum(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n == 0) return 0.0;
    if (n <= 8) {
        double s = 0.0;
        for (double v : xs) s += v;
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

summary_stats summarize(std::span<const double> xs) {
    summary_stats s;
    s.count = xs.size();
    if (xs.empty()) return s;
    s.mean = pairwise_sum(xs) / double(xs.size());
    s.min = s.max = xs[0];
    std::vector<double> sq(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double d = xs[i] - s.mean;
        sq[i] = d * d;
        s.min = std::min(s.min, xs[i]);
        s.max = std::max(s.max, xs[i]);
    }
    if (xs.size() > 1) {
        s.stddev = std::sqrt(pairwise_sum(sq) / double(xs.size() - 1));
        s.stderror = s.stddev / std::sqrt(double(xs.size()));
    }
    return s;
}

namespace {

double sorted_quantile(const std::vector<double>& xs, double q) {
    // linear interpolation between order statistics
    const double pos = q * double(xs.size() - 1);
    const std::size_t i = std::size_t(pos);
    if (i + 1 >= xs.size()) return xs.back();
    const double f = pos - double(i);
    return xs[i] * (1.0 - f) + xs[i + 1] * f;
}

}  // namespace

double median(std::vector<double> xs) {
    if (xs.empty()) throw parameter_error("EmptySample", "median of empty sample");
    std::sort(xs.begin(), xs.end());
    return sorted_quantile(xs, 0.5);
}

double interquartile_range(std::vector<double> xs) {
    if (xs.empty()) throw parameter_error("EmptySample", "IQR of empty sample");
    std::sort(xs.begin(), xs.end());
    return sorted_quantile(xs, 0.75) - sorted_quantile(xs, 0.25);
}

namespace {

double gamma_p_series(double a, double x) {
    double sum = 1.0 / a;
    double term = sum;
    double ap = a;
    for (int i = 0; i < 10000; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_cf(double a, double x) {
    // modified Lentz continued fraction
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 10000; ++i) {
        const double an = -double(i) * (double(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw parameter_error("BadGammaArgs", "gamma_q: invalid arguments");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double chi_square_pvalue(double stat, int dof) {
    if (dof <= 0) throw parameter_error("BadDof", "chi_square_pvalue: dof <= 0");
    if (stat <= 0.0) return 1.0;
    return gamma_q(0.5 * double(dof), 0.5 * stat);
}

namespace {

// clang-format off
constexpr std::array<double, 2> gl4_x = {0.3399810435848563, 0.8611363115940526};
constexpr std::array<double, 2> gl4_w = {0.6521451548625461, 0.3478548451374538};
constexpr std::array<double, 3> gl6_x = {0.2386191860831969, 0.6612093864662645, 0.9324695142031521};
constexpr std::array<double, 3> gl6_w = {0.4679139345726910, 0.3607615730481386, 0.1713244923791704};
constexpr std::array<double, 4> gl8_x = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267, 0.9602898564975363};
constexpr std::array<double, 4> gl8_w = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};
constexpr std::array<double, 6> gl12_x = {0.1252334085114689, 0.3678314989981802, 0.5873179542866175, 0.7699026741943047, 0.9041172563704749, 0.9815606342467192};
constexpr std::array<double, 6> gl12_w = {0.2491470458134028, 0.2334925365383548, 0.2031674267230659, 0.1600783285433462, 0.1069393259953184, 0.0471753363865118};
constexpr std::array<double, 8> gl16_x = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438, 0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
constexpr std::array<double, 8> gl16_w = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767, 0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};
// clang-format on

template <std::size_t N>
void expand(const std::array<double, N>& hx, const std::array<double, N>& hw,
            std::vector<double>& xs, std::vector<double>& ws) {
    xs.clear();
    ws.clear();
    for (std::size_t i = N; i-- > 0;) {
        xs.push_back(-hx[i]);
        ws.push_back(hw[i]);
    }
    for (std::size_t i = 0; i < N; ++i) {
        xs.push_back(hx[i]);
        ws.push_back(hw[i]);
    }
}

struct gl_storage {
    std::vector<double> x4, w4, x6, w6, x8, w8, x12, w12, x16, w16;
    gl_storage() {
        expand(gl4_x, gl4_w, x4, w4);
        expand(gl6_x, gl6_w, x6, w6);
        expand(gl8_x, gl8_w, x8, w8);
        expand(gl12_x, gl12_w, x12, w12);
        expand(gl16_x, gl16_w, x16, w16);
    }
};

}  // namespace

gauss_rule gauss_legendre(int order) {
    static const gl_storage s;
    switch (order) {
        case 4: return {s.x4, s.w4};
        case 6: return {s.x6, s.w6};
        case 8: return {s.x8, s.w8};
        case 12: return {s.x12, s.w12};
        case 16: return {s.x16, s.w16};
        default: throw parameter_error("BadGaussOrder", "gauss_legendre: unsupported order");
    }
}

double fit_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw parameter_error("BadFitData", "fit_slope: need >= 2 matched points");
    const double n = double(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

fit2_result fit_two_basis(std::span<const double> b0, std::span<const double> b1,
                          std::span<const double> y) {
    if (b0.size() != y.size() || b1.size() != y.size() || y.size() < 2)
        throw parameter_error("BadFitData", "fit_two_basis: size mismatch");
    double a00 = 0, a01 = 0, a11 = 0, r0 = 0, r1 = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        a00 += b0[i] * b0[i];
        a01 += b0[i] * b1[i];
        a11 += b1[i] * b1[i];
        r0 += b0[i] * y[i];
        r1 += b1[i] * y[i];
    }
    const double det = a00 * a11 - a01 * a01;
    if (std::abs(det) < 1e-300) throw computation_error("SingularFit", "fit_two_basis: singular normal equations");
    fit2_result f;
    f.c0 = (a11 * r0 - a01 * r1) / det;
    f.c1 = (a00 * r1 - a01 * r0) / det;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double model = f.c0 * b0[i] + f.c1 * b1[i];
        const double denom = std::max(std::abs(model), 1e-300);
        f.max_rel_residual = std::max(f.max_rel_residual, std::abs(model - y[i]) / denom);
    }
    return f;
}

}  // namespace plancherel
