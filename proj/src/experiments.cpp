#include "plancherel/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <thread>

#include "plancherel/entropy.hpp"
#include "plancherel/errors.hpp"
#include "plancherel/kernels.hpp"
#include "plancherel/numerics.hpp"
#include "plancherel/rng.hpp"
#include "plancherel/sampler.hpp"

namespace plancherel {

void parallel_for(std::int64_t count, int workers, const std::function<void(std::int64_t)>& body) {
    workers = std::max(1, workers);
    if (workers == 1 || count < 2) {
        for (std::int64_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::int64_t> next{0};
    auto run = [&] {
        for (;;) {
            const std::int64_t i = next.fetch_add(1);
            if (i >= count) return;
            body(i);
        }
    };
    std::vector<std::thread> pool;
    const int spawn = int(std::min<std::int64_t>(workers, count));
    pool.reserve(std::size_t(spawn));
    for (int w = 0; w < spawn; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
}

namespace {

std::string tag_with(std::string base, std::int64_t n) { return base + ":" + std::to_string(n); }

stat_record make_stat(std::string name, const summary_stats& s) {
    stat_record r;
    r.name = std::move(name);
    r.estimate = s.mean;
    r.stderror = s.stderror;
    r.count = std::int64_t(s.count);
    return r;
}

}  // namespace

experiment_report run_entropy_convergence(const std::vector<std::int64_t>& ns, std::int64_t count,
                                          std::uint64_t seed, int workers) {
    if (count < 10) throw parameter_error("CountTooSmall", "entropy convergence: count must be >= 10");
    experiment_report rep;
    rep.experiment = "entropy-convergence";
    rep.count = count;
    rep.seed = seed;
    for (std::int64_t n : ns) {
        if (n < 100) throw parameter_error("NTooSmall", "entropy convergence: each n must be >= 100");
        std::vector<double> vals(static_cast<std::size_t>(count));
        const std::string tag = tag_with("entropy-convergence", n);
        parallel_for(count, workers, [&](std::int64_t i) {
            seeded_rng rng(seed, derive_stream(tag, std::uint64_t(i)));
            const young_diagram d = sample_plancherel(n, rng);
            vals[std::size_t(i)] = -log_plancherel(d) / std::sqrt(double(n));
        });
        const summary_stats s = summarize(vals);
        stat_record r = make_stat("neg_log_pl_over_sqrt_n[n=" + std::to_string(n) + "]", s);
        rep.stats.push_back(r);
        stat_record sd;
        sd.name = "std[n=" + std::to_string(n) + "]";
        sd.estimate = s.stddev;
        sd.count = count;
        rep.stats.push_back(sd);
        rep.n_or_theta = double(n);
    }
    return rep;
}

experiment_report run_hook_frequencies(const std::vector<std::int64_t>& ks, std::int64_t n,
                                       std::int64_t count, std::uint64_t seed, int workers) {
    if (n < 400) throw parameter_error("NTooSmall", "hook frequencies: n must be >= 400");
    if (count < 2) throw parameter_error("CountTooSmall", "hook frequencies: count must be >= 2");
    experiment_report rep;
    rep.experiment = "hook-frequencies";
    rep.n_or_theta = double(n);
    rep.count = count;
    rep.seed = seed;
    const double sq = std::sqrt(double(n));
    std::vector<std::vector<double>> vals(ks.size(), std::vector<double>(static_cast<std::size_t>(count)));
    const std::string tag = tag_with("hook-frequencies", n);
    parallel_for(count, workers, [&](std::int64_t i) {
        seeded_rng rng(seed, derive_stream(tag, std::uint64_t(i)));
        const young_diagram d = sample_plancherel(n, rng);
        const std::vector<std::int64_t> hist = hook_length_histogram(d);
        for (std::size_t j = 0; j < ks.size(); ++j) {
            const std::int64_t k = ks[j];
            vals[j][std::size_t(i)] = (k >= 1 && k < std::int64_t(hist.size()))
                                          ? double(hist[std::size_t(k)]) / sq
                                          : 0.0;
        }
    });
    const double pi2 = std::numbers::pi * std::numbers::pi;
    for (std::size_t j = 0; j < ks.size(); ++j) {
        const double k = double(ks[j]);
        stat_record r = make_stat("hook_freq[k=" + std::to_string(ks[j]) + "]", summarize(vals[j]));
        r.target = 32.0 * k * k / ((4.0 * k * k - 1.0) * pi2);
        if (r.stderror > 0.0) r.z = (r.estimate - *r.target) / r.stderror;
        rep.stats.push_back(r);
    }
    return rep;
}

namespace {

double interp_f(const std::vector<std::pair<double, double>>& nodes, double a) {
    if (nodes.empty() || a < nodes.front().first || a > nodes.back().first) return 0.0;
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        if (a <= nodes[i].first) {
            const auto [x0, y0] = nodes[i - 1];
            const auto [x1, y1] = nodes[i];
            if (x1 == x0) return y0;
            const double t = (a - x0) / (x1 - x0);
            return y0 * (1.0 - t) + y1 * t;
        }
    }
    return nodes.back().second;
}

}  // namespace

experiment_report run_pattern_frequency(const pattern_frequency_spec& spec, std::int64_t n,
                                        std::int64_t count, std::uint64_t seed, int workers) {
    if (n < 400) throw parameter_error("NTooSmall", "pattern frequency: n must be >= 400");
    if (spec.offsets.empty())
        throw parameter_error("EmptyPattern", "pattern frequency: offsets must be nonempty");
    for (std::size_t i = 1; i < spec.f_nodes.size(); ++i)
        if (!(spec.f_nodes[i].first > spec.f_nodes[i - 1].first))
            throw parameter_error("BadWeightNodes", "pattern frequency: f nodes must be strictly increasing");

    experiment_report rep;
    rep.experiment = "pattern-frequency";
    rep.n_or_theta = double(n);
    rep.count = count;
    rep.seed = seed;

    const double sq = std::sqrt(double(n));
    const std::int64_t kmax = std::int64_t(std::ceil(2.0 * sq));
    std::vector<double> vals(static_cast<std::size_t>(count));
    const std::string tag = tag_with("pattern-frequency", n);
    parallel_for(count, workers, [&](std::int64_t i) {
        seeded_rng rng(seed, derive_stream(tag, std::uint64_t(i)));
        const young_diagram d = sample_plancherel(n, rng);
        const profile_window p = profile(d);
        double acc = 0.0;
        for (std::int64_t k = -kmax; k <= kmax; ++k) {
            const double fk = interp_f(spec.f_nodes, double(k) / sq);
            if (fk == 0.0) continue;
            int prod = 1;
            for (std::int64_t m : spec.offsets) prod &= p.bit(k + m);
            if (prod) acc += fk;
        }
        vals[std::size_t(i)] = acc / sq;
    });

    // deterministic target: ∫ f(a)·E_{S(a)}(c_m) da via the a = 2cos(πρ)
    // substitution, panels split at the images of f's nodes
    std::vector<double> rho_cuts{0.0, 1.0};
    for (const auto& [a, y] : spec.f_nodes) {
        (void)y;
        if (a > -2.0 && a < 2.0) rho_cuts.push_back(std::acos(a / 2.0) / std::numbers::pi);
    }
    std::sort(rho_cuts.begin(), rho_cuts.end());
    const gauss_rule gl = gauss_legendre(16);
    double target = 0.0;
    for (std::size_t seg = 1; seg < rho_cuts.size(); ++seg) {
        const double lo = rho_cuts[seg - 1];
        const double hi = rho_cuts[seg];
        if (hi - lo < 1e-15) continue;
        const double mid = 0.5 * (lo + hi);
        const double half = 0.5 * (hi - lo);
        for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
            const double rho = mid + half * gl.nodes[q];
            const double a = 2.0 * std::cos(std::numbers::pi * rho);
            const double jac = 2.0 * std::numbers::pi * std::sin(std::numbers::pi * rho);
            const sine_params sp{a};
            const double det = det_expectation(
                [&](std::int64_t x, std::int64_t y) { return sine_kernel(sp, x - y); },
                pattern_vector{spec.offsets, 0});
            target += half * gl.weights[q] * jac * interp_f(spec.f_nodes, a) * det;
        }
    }

    stat_record r = make_stat("pattern_freq", summarize(vals));
    r.target = target;
    if (r.stderror > 0.0) r.z = (r.estimate - target) / r.stderror;
    rep.stats.push_back(r);
    return rep;
}

experiment_report run_boo_correlations(double theta, std::int64_t window_lo, std::int64_t window_hi,
                                       int max_order, std::int64_t count, std::uint64_t seed,
                                       int workers) {
    if (!(theta >= 5.0)) throw parameter_error("ThetaTooSmall", "boo correlations: theta must be >= 5");
    if (window_lo > window_hi) throw parameter_error("BadWindow", "boo correlations: empty window");
    const double edge_limit = 2.0 * theta + 5.0 * std::cbrt(theta);
    if (double(std::max(std::abs(window_lo), std::abs(window_hi))) > edge_limit)
        throw parameter_error("BadWindow", "boo correlations: window must satisfy |x| <= 2θ + 5θ^{1/3}");
    if (max_order < 1 || max_order > 4)
        throw parameter_error("BadOrder", "boo correlations: max_order must be in 1..4");

    // pattern list: singletons, gap-1 and gap-2 pairs, consecutive blocks
    std::vector<std::vector<std::int64_t>> patterns;
    for (std::int64_t x = window_lo; x <= window_hi; ++x) patterns.push_back({x});
    if (max_order >= 2) {
        for (std::int64_t x = window_lo; x + 1 <= window_hi; ++x) patterns.push_back({x, x + 1});
        for (std::int64_t x = window_lo; x + 2 <= window_hi; ++x) patterns.push_back({x, x + 2});
    }
    for (int order = 3; order <= max_order; ++order)
        for (std::int64_t x = window_lo; x + order - 1 <= window_hi; ++x) {
            std::vector<std::int64_t> block;
            for (int j = 0; j < order; ++j) block.push_back(x + j);
            patterns.push_back(std::move(block));
        }

    const int workers_n = std::max(1, workers);
    std::vector<std::vector<std::int64_t>> counts(std::size_t(workers_n),
                                                  std::vector<std::int64_t>(patterns.size(), 0));
    const std::string tag = "boo";
    std::atomic<std::int64_t> next{0};
    auto run = [&](int slot) {
        auto& local = counts[std::size_t(slot)];
        std::vector<std::uint8_t> bits(std::size_t(window_hi - window_lo + 3), 0);
        for (;;) {
            const std::int64_t i = next.fetch_add(1);
            if (i >= count) return;
            seeded_rng rng(seed, derive_stream(tag, std::uint64_t(i)));
            const young_diagram d = sample_poissonized(theta, rng);
            const profile_window p = profile(d);
            for (std::int64_t x = window_lo; x <= window_hi + 2; ++x)
                bits[std::size_t(x - window_lo)] = std::uint8_t(p.bit(x));
            for (std::size_t j = 0; j < patterns.size(); ++j) {
                int prod = 1;
                for (std::int64_t x : patterns[j]) prod &= bits[std::size_t(x - window_lo)];
                local[j] += prod;
            }
        }
    };
    {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers_n; ++w) pool.emplace_back(run, w);
        for (auto& t : pool) t.join();
    }
    std::vector<std::int64_t> total(patterns.size(), 0);
    for (const auto& local : counts)
        for (std::size_t j = 0; j < patterns.size(); ++j) total[j] += local[j];

    const bessel_params bp{theta, 1e-10};
    const discrete_bessel_kernel kernel(bp, std::abs(window_lo) + std::abs(window_hi) + 4);

    experiment_report rep;
    rep.experiment = "boo-correlations";
    rep.n_or_theta = theta;
    rep.count = count;
    rep.seed = seed;
    for (std::size_t j = 0; j < patterns.size(); ++j) {
        std::string name = "c[";
        for (std::size_t q = 0; q < patterns[j].size(); ++q)
            name += (q ? "," : "") + std::to_string(patterns[j][q]);
        name += "]";
        const double phat = double(total[j]) / double(count);
        stat_record r;
        r.name = std::move(name);
        r.estimate = phat;
        r.stderror = std::sqrt(std::max(phat * (1.0 - phat), 1e-300) / double(count));
        r.count = count;
        r.target = det_expectation([&](std::int64_t x, std::int64_t y) { return kernel(x, y); },
                                   pattern_vector{patterns[j], 0});
        r.z = (r.estimate - *r.target) / r.stderror;
        rep.stats.push_back(r);
    }
    return rep;
}

std::vector<std::pair<std::int64_t, std::int64_t>> bulk_separation_pairs(std::int64_t n,
                                                                         std::int64_t max_sep,
                                                                         std::int64_t stride) {
    const std::int64_t bulk = std::int64_t(std::floor(1.8 * std::sqrt(double(n))));
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
    for (std::int64_t sep = 1; sep <= max_sep; ++sep)
        for (std::int64_t x = -bulk; x + sep <= bulk; x += std::max<std::int64_t>(1, stride))
            pairs.emplace_back(x, x + sep);
    return pairs;
}

experiment_report run_correlation_decay(std::int64_t n, std::int64_t count,
                                        const std::vector<std::pair<std::int64_t, std::int64_t>>& pairs,
                                        std::uint64_t seed, int workers) {
    if (n < 400) throw parameter_error("NTooSmall", "correlation decay: n must be >= 400");
    if (pairs.empty()) throw parameter_error("EmptyPairs", "correlation decay: pair list empty");
    const double bulk_limit = 1.8 * std::sqrt(double(n));
    std::int64_t pos_lo = 0, pos_hi = 0;
    for (const auto& [x, y] : pairs) {
        if (double(std::abs(x)) > bulk_limit || double(std::abs(y)) > bulk_limit)
            throw parameter_error("OutsideBulk", "correlation decay: pair outside |x| <= 1.8*sqrt(n)");
        pos_lo = std::min({pos_lo, x, y});
        pos_hi = std::max({pos_hi, x, y});
    }

    const std::size_t width = std::size_t(pos_hi - pos_lo + 1);
    const int workers_n = std::max(1, workers);
    struct accum {
        std::vector<std::int64_t> occ;       // per position
        std::vector<std::int64_t> prod;      // per pair
    };
    std::vector<accum> locals(static_cast<std::size_t>(workers_n));
    for (auto& a : locals) {
        a.occ.assign(width, 0);
        a.prod.assign(pairs.size(), 0);
    }

    const std::string tag = tag_with("correlation-decay", n);
    std::atomic<std::int64_t> next{0};
    auto run = [&](int slot) {
        auto& local = locals[std::size_t(slot)];
        std::vector<std::uint8_t> bits(width, 0);
        for (;;) {
            const std::int64_t i = next.fetch_add(1);
            if (i >= count) return;
            seeded_rng rng(seed, derive_stream(tag, std::uint64_t(i)));
            const young_diagram d = sample_plancherel(n, rng);
            const profile_window p = profile(d);
            for (std::size_t j = 0; j < width; ++j) {
                bits[j] = std::uint8_t(p.bit(pos_lo + std::int64_t(j)));
                local.occ[j] += bits[j];
            }
            for (std::size_t j = 0; j < pairs.size(); ++j)
                local.prod[j] += bits[std::size_t(pairs[j].first - pos_lo)] &
                                 bits[std::size_t(pairs[j].second - pos_lo)];
        }
    };
    {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers_n; ++w) pool.emplace_back(run, w);
        for (auto& t : pool) t.join();
    }
    std::vector<std::int64_t> occ(width, 0);
    std::vector<std::int64_t> prod(pairs.size(), 0);
    for (const auto& local : locals) {
        for (std::size_t j = 0; j < width; ++j) occ[j] += local.occ[j];
        for (std::size_t j = 0; j < pairs.size(); ++j) prod[j] += local.prod[j];
    }

    experiment_report rep;
    rep.experiment = "correlation-decay";
    rep.n_or_theta = double(n);
    rep.count = count;
    rep.seed = seed;

    // per-pair records plus translation-pooled per-separation covariances
    std::map<std::int64_t, std::pair<double, std::int64_t>> pooled;  // sep -> (sum cov, #pairs)
    const double cnt = double(count);
    for (std::size_t j = 0; j < pairs.size(); ++j) {
        const auto [x, y] = pairs[j];
        const double px = double(occ[std::size_t(x - pos_lo)]) / cnt;
        const double py = double(occ[std::size_t(y - pos_lo)]) / cnt;
        const double pxy = double(prod[j]) / cnt;
        const double cov = pxy - px * py;
        const std::int64_t sep = std::abs(y - x);
        auto& agg = pooled[sep];
        agg.first += cov;
        agg.second += 1;
        stat_record r;
        r.name = "cov[" + std::to_string(x) + "," + std::to_string(y) + "]";
        r.estimate = std::abs(cov) * double(sep + 1);
        r.stderror = std::sqrt(std::max(pxy * (1.0 - pxy), 1e-300) / cnt) * double(sep + 1);
        r.count = count;
        rep.stats.push_back(r);
    }
    double chat = 0.0;
    for (const auto& [sep, agg] : pooled) {
        const double pooled_cov = agg.first / double(agg.second);
        const double stat = std::abs(pooled_cov) * double(sep + 1);
        chat = std::max(chat, stat);
        stat_record r;
        r.name = "pooled[sep=" + std::to_string(sep) + "]";
        r.estimate = stat;
        r.count = count * agg.second;
        rep.stats.push_back(r);
    }
    stat_record c;
    c.name = "Chat";
    c.estimate = chat;
    c.count = count;
    rep.stats.push_back(c);
    return rep;
}

experiment_report run_edge_statistics(std::int64_t n, std::int64_t count,
                                      const std::vector<double>& deltas, std::uint64_t seed,
                                      int workers) {
    if (n < 400) throw parameter_error("NTooSmall", "edge statistics: n must be >= 400");
    for (double d : deltas)
        if (!(d > 1.0 / 6.0 && d <= 0.5))
            throw parameter_error("BadDelta", "edge statistics: deltas must lie in (1/6, 1/2]");

    std::vector<std::vector<double>> exceed(deltas.size(), std::vector<double>(static_cast<std::size_t>(count)));
    const double sq = std::sqrt(double(n));
    const std::string tag = tag_with("edge-statistics", n);
    parallel_for(count, workers, [&](std::int64_t i) {
        seeded_rng rng(seed, derive_stream(tag, std::uint64_t(i)));
        const young_diagram d = sample_plancherel(n, rng);
        const double lam1 = double(d.first_row());
        const double lam1p = double(d.row_count());
        for (std::size_t j = 0; j < deltas.size(); ++j) {
            const double threshold = 2.0 * sq + std::pow(double(n), deltas[j]);
            exceed[j][std::size_t(i)] = (lam1 > threshold || lam1p > threshold) ? 1.0 : 0.0;
        }
    });

    experiment_report rep;
    rep.experiment = "edge-statistics";
    rep.n_or_theta = double(n);
    rep.count = count;
    rep.seed = seed;
    for (std::size_t j = 0; j < deltas.size(); ++j) {
        stat_record r = make_stat("exceed[delta=" + std::to_string(deltas[j]) + "]", summarize(exceed[j]));
        rep.stats.push_back(r);
    }
    return rep;
}

experiment_report run_limit_shape(std::int64_t n, std::int64_t count, std::uint64_t seed,
                                  int workers) {
    if (n < 400) throw parameter_error("NTooSmall", "limit shape: n must be >= 400");
    std::vector<double> sups(static_cast<std::size_t>(count));
    const double sq = std::sqrt(double(n));
    const std::string tag = tag_with("limit-shape", n);
    parallel_for(count, workers, [&](std::int64_t i) {
        seeded_rng rng(seed, derive_stream(tag, std::uint64_t(i)));
        const young_diagram d = sample_plancherel(n, rng);
        const deviation_function f(d);
        double sup = 0.0;
        // F kinks at integers, so half-integers see every linear piece
        for (double t = std::floor(f.support_lo()) + 0.5; t <= f.support_hi(); t += 1.0)
            sup = std::max(sup, std::abs(f(t)));
        sups[std::size_t(i)] = sup / sq;
    });
    experiment_report rep;
    rep.experiment = "limit-shape";
    rep.n_or_theta = double(n);
    rep.count = count;
    rep.seed = seed;
    const summary_stats s = summarize(sups);
    rep.stats.push_back(make_stat("sup_deviation", s));
    stat_record mx;
    mx.name = "sup_deviation_max";
    mx.estimate = s.max;
    mx.count = count;
    rep.stats.push_back(mx);
    return rep;
}

std::vector<vk_decomposition> collect_vk_decompositions(std::int64_t n, std::int64_t count,
                                                        std::uint64_t seed, double quad_tol,
                                                        int workers) {
    if (n < 1) throw parameter_error("NonPositiveN", "vk decompositions: n must be >= 1");
    std::vector<vk_decomposition> out(static_cast<std::size_t>(count));
    const std::string tag = tag_with("vk", n);
    parallel_for(count, workers, [&](std::int64_t i) {
        seeded_rng rng(seed, derive_stream(tag, std::uint64_t(i)));
        const young_diagram d = sample_plancherel(n, rng);
        out[std::size_t(i)] = vk_decompose(d, quad_tol);
    });
    return out;
}

}  // namespace plancherel
