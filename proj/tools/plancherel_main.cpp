// Command-line front end: sampling, kernel evaluation, the entropy constant,
// and the Monte-Carlo verification experiments. Data records go to stdout,
// diagnostics to stderr; exit codes: 0 ok, 2 usage, 3 parameter, 4 computation.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "plancherel/entropy.hpp"
#include "plancherel/errors.hpp"
#include "plancherel/experiments.hpp"
#include "plancherel/kernels.hpp"
#include "plancherel/numerics.hpp"
#include "plancherel/records.hpp"
#include "plancherel/rng.hpp"
#include "plancherel/sampler.hpp"
#include "plancherel/variational.hpp"

namespace {

using nlohmann::json;
using namespace plancherel;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("PLANCHEREL_SEED")) {
        try {
            return std::stoull(env);
        } catch (...) {
            throw parameter_error("BadSeedEnv", "PLANCHEREL_SEED is not an unsigned integer");
        }
    }
    return 0;
}

void emit_report(const experiment_report& rep, const std::string& format, const std::string& output) {
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!output.empty() && output != "-") {
        file.open(output);
        if (!file) throw parameter_error("BadOutputPath", "cannot open output file: " + output);
        os = &file;
    }
    if (format == "csv")
        write_report_csv(*os, rep, true);
    else
        write_report_records(*os, rep);
}

int run_sample(std::int64_t n, double theta, std::int64_t count, std::uint64_t seed) {
    json header;
    header["type"] = "header";
    header["experiment"] = "sample";
    header["seed"] = seed;
    header["count"] = count;
    header["stream_policy"] = "stream_id = hash(\"sample\", sample_index)";
    if (theta > 0.0)
        header["theta"] = theta;
    else
        header["n"] = n;
    std::cout << header.dump() << "\n";
    for (std::int64_t i = 0; i < count; ++i) {
        seeded_rng rng(seed, derive_stream("sample", std::uint64_t(i)));
        const young_diagram d = theta > 0.0 ? sample_poissonized(theta, rng) : sample_plancherel(n, rng);
        std::cout << diagram_record(d) << "\n";
    }
    return 0;
}

int run_entropy_cmd(const quadrature_config& cfg) {
    const entropy_estimate est = entropy_constant(cfg);
    json j;
    j["type"] = "entropy";
    j["value"] = est.value;
    j["budget"]["a_grid"] = est.budget.a_grid;
    j["budget"]["s_grid"] = est.budget.s_grid;
    j["budget"]["h_grid"] = est.budget.h_grid;
    j["budget"]["h_cutoff"] = est.budget.h_cutoff;
    j["budget"]["series_k_tail"] = est.budget.series_k_tail;
    j["budget"]["series_l_tail"] = est.budget.series_l_tail;
    j["budget"]["total"] = est.budget.total();
    j["config"]["h_max"] = cfg.h_max;
    j["config"]["a_nodes"] = cfg.a_nodes;
    j["config"]["s_nodes"] = cfg.s_nodes;
    j["config"]["h_nodes"] = cfg.h_nodes;
    j["config"]["k_max"] = cfg.k_max;
    j["config"]["tol"] = cfg.tol;
    std::cout << j.dump() << "\n";
    return 0;
}

int run_vk(std::int64_t n, std::int64_t count, std::uint64_t seed, double quad_tol, bool from_stdin,
           const std::string& format, int workers) {
    std::vector<vk_decomposition> decs;
    if (from_stdin) {
        std::string line;
        while (std::getline(std::cin, line)) {
            if (line.empty()) continue;
            json j = json::parse(line, nullptr, false);
            if (!j.is_discarded() && j.contains("type") && j["type"] != "header" && !j.contains("rows"))
                continue;  // skip non-diagram records
            if (!j.is_discarded() && j.contains("type") && j["type"] == "header") continue;
            decs.push_back(vk_decompose(parse_diagram_record(line), quad_tol));
        }
    } else {
        decs = collect_vk_decompositions(n, count, seed, quad_tol, workers);
    }

    std::vector<double> residuals;
    residuals.reserve(decs.size());
    for (const auto& d : decs) residuals.push_back(std::abs(d.residual));

    if (format == "csv") {
        std::cout << "experiment,n_or_theta,statistic,estimate,stderr,count,seed\n";
        if (!residuals.empty()) {
            std::cout << "vk," << n << ",median_abs_residual," << median(residuals) << ",0,"
                      << residuals.size() << "," << seed << "\n";
            std::cout << "vk," << n << ",iqr_abs_residual," << interquartile_range(residuals)
                      << ",0," << residuals.size() << "," << seed << "\n";
        }
        return 0;
    }

    json header;
    header["type"] = "header";
    header["experiment"] = "vk";
    header["n"] = n;
    header["count"] = std::int64_t(decs.size());
    header["seed"] = seed;
    header["quad_tol"] = quad_tol;
    std::cout << header.dump() << "\n";
    for (const auto& d : decs) {
        json j;
        j["type"] = "vk";
        j["n"] = d.n;
        j["lhs"] = d.lhs;
        j["hook_term"] = d.hook_term;
        j["seminorm_term"] = d.seminorm_term;
        j["arccosh_term"] = d.arccosh_term;
        j["residual"] = d.residual;
        std::cout << j.dump() << "\n";
    }
    if (!residuals.empty()) {
        json s;
        s["type"] = "summary";
        s["median_abs_residual"] = median(residuals);
        s["iqr_abs_residual"] = interquartile_range(residuals);
        std::cout << s.dump() << "\n";
    }
    return 0;
}

std::vector<std::int64_t> parse_int_list(const std::string& csv, const char* what) {
    std::vector<std::int64_t> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stoll(item));
        } catch (...) {
            throw parameter_error("BadList", std::string("cannot parse ") + what + " list entry: " + item);
        }
    }
    if (out.empty()) throw parameter_error("BadList", std::string(what) + " list is empty");
    return out;
}

std::vector<double> parse_double_list(const std::string& csv, const char* what) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (...) {
            throw parameter_error("BadList", std::string("cannot parse ") + what + " list entry: " + item);
        }
    }
    if (out.empty()) throw parameter_error("BadList", std::string(what) + " list is empty");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Plancherel-measure toolkit: samplers, determinantal kernels, the entropy constant, and verification experiments"};
    app.require_subcommand(1);
    int workers = 1;
    app.add_option("--workers", workers, "max worker threads for experiments")->capture_default_str();

    std::uint64_t seed = 0;
    bool seed_given = false;

    // ---- sample ----
    auto* sample = app.add_subcommand("sample", "draw Plancherel or poissonized samples as diagram records");
    std::int64_t sample_n = 0;
    double sample_theta = 0.0;
    std::int64_t sample_count = 1;
    sample->add_option("--n", sample_n, "cell count for fixed-n Plancherel sampling");
    sample->add_option("--theta", sample_theta, "poissonization parameter (eta = theta^2)");
    sample->add_option("--count", sample_count, "number of samples")->capture_default_str();
    sample->add_option("--seed", seed, "RNG seed")->each([&](const std::string&) { seed_given = true; });

    // ---- entropy ----
    auto* entropy_cmd = app.add_subcommand("entropy", "evaluate the entropy constant H with an itemized budget");
    quadrature_config qcfg;
    entropy_cmd->add_option("--h-max", qcfg.h_max, "h integration cutoff")->capture_default_str();
    entropy_cmd->add_option("--a-nodes", qcfg.a_nodes, "a-quadrature nodes")->capture_default_str();
    entropy_cmd->add_option("--s-nodes", qcfg.s_nodes, "s-quadrature nodes")->capture_default_str();
    entropy_cmd->add_option("--h-nodes", qcfg.h_nodes, "h-quadrature nodes")->capture_default_str();
    entropy_cmd->add_option("--k-max", qcfg.k_max, "series truncation")->capture_default_str();
    entropy_cmd->add_option("--tol", qcfg.tol, "maximum certified total budget")->capture_default_str();

    // ---- kernel ----
    auto* kernel_cmd = app.add_subcommand("kernel", "evaluate the discrete Bessel or sine kernel");
    kernel_cmd->require_subcommand(1);
    auto* kbessel = kernel_cmd->add_subcommand("bessel", "discrete Bessel kernel J(theta^2; x, y)");
    double kb_theta = 1.0, kb_tol = 1e-10;
    std::int64_t kb_x = 0, kb_y = 1;
    kbessel->add_option("--theta", kb_theta, "theta > 0")->required();
    kbessel->add_option("--x", kb_x, "first position")->required();
    kbessel->add_option("--y", kb_y, "second position")->required();
    kbessel->add_option("--tol", kb_tol, "relative tolerance")->capture_default_str();
    auto* ksine = kernel_cmd->add_subcommand("sine", "discrete sine kernel S(k, a)");
    double ks_a = 0.0;
    std::int64_t ks_k = 0;
    ksine->add_option("--a", ks_a, "bulk position in (-2, 2)")->required();
    ksine->add_option("--k", ks_k, "offset")->required();

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "paper-facing verification experiments");
    verify->require_subcommand(1);
    std::string format = "records";
    verify->add_option("--format", format, "records | csv")->check(CLI::IsMember({"records", "csv"}));
    std::string output;
    verify->add_option("--output", output, "output path (default stdout)");

    auto* vvk = verify->add_subcommand("vk", "variational-formula decomposition per sample");
    std::int64_t vk_n = 1000, vk_count = 50;
    double vk_quad_tol = 1e-4;
    std::string vk_input;
    vvk->add_option("--n", vk_n, "cell count")->capture_default_str();
    vvk->add_option("--count", vk_count, "samples")->capture_default_str();
    vvk->add_option("--seed", seed, "RNG seed")->each([&](const std::string&) { seed_given = true; });
    vvk->add_option("--quad-tol", vk_quad_tol, "seminorm quadrature tolerance")->capture_default_str();
    vvk->add_option("--input", vk_input, "read diagram records ('-' for stdin) instead of sampling");

    auto* vhooks = verify->add_subcommand("hooks", "hook-length frequencies vs 32k^2/((4k^2-1)pi^2)");
    std::int64_t hooks_n = 10000, hooks_count = 100;
    std::string hooks_ks = "1,2,3";
    vhooks->add_option("--n", hooks_n, "cell count")->capture_default_str();
    vhooks->add_option("--count", hooks_count, "samples")->capture_default_str();
    vhooks->add_option("--ks", hooks_ks, "comma-separated hook lengths")->capture_default_str();
    vhooks->add_option("--seed", seed, "RNG seed")->each([&](const std::string&) { seed_given = true; });

    auto* vpatterns = verify->add_subcommand("patterns", "local pattern frequency vs sine-process average");
    std::int64_t pat_n = 10000, pat_count = 100;
    std::string pat_offsets = "0";
    std::string pat_f = "-2:1,2:1";
    vpatterns->add_option("--n", pat_n, "cell count")->capture_default_str();
    vpatterns->add_option("--count", pat_count, "samples")->capture_default_str();
    vpatterns->add_option("--offsets", pat_offsets, "pattern offsets m")->capture_default_str();
    vpatterns->add_option("--f", pat_f, "piecewise-linear weight a:value,a:value on [-2,2]")->capture_default_str();
    vpatterns->add_option("--seed", seed, "RNG seed")->each([&](const std::string&) { seed_given = true; });

    auto* vboo = verify->add_subcommand("boo", "poissonized correlations vs Bessel-kernel determinants");
    double boo_theta = 30.0;
    std::int64_t boo_count = 20000, boo_window = 20;
    int boo_order = 2;
    vboo->add_option("--theta", boo_theta, "poissonization parameter")->capture_default_str();
    vboo->add_option("--count", boo_count, "samples")->capture_default_str();
    vboo->add_option("--window", boo_window, "window half-width")->capture_default_str();
    vboo->add_option("--max-order", boo_order, "largest pattern order")->capture_default_str();
    vboo->add_option("--seed", seed, "RNG seed")->each([&](const std::string&) { seed_given = true; });

    auto* vdecay = verify->add_subcommand("decay", "covariance decay |Cov|*(sep+1) across separations");
    std::int64_t decay_n = 10000, decay_count = 20000, decay_max_sep = 200, decay_stride = 5;
    vdecay->add_option("--n", decay_n, "cell count")->capture_default_str();
    vdecay->add_option("--count", decay_count, "samples")->capture_default_str();
    vdecay->add_option("--max-sep", decay_max_sep, "largest separation")->capture_default_str();
    vdecay->add_option("--stride", decay_stride, "base-point stride within the bulk")->capture_default_str();
    vdecay->add_option("--seed", seed, "RNG seed")->each([&](const std::string&) { seed_given = true; });

    auto* vedge = verify->add_subcommand("edge", "edge exceedance frequencies");
    std::int64_t edge_n = 10000, edge_count = 1000;
    std::string edge_deltas = "0.2,0.35,0.5";
    vedge->add_option("--n", edge_n, "cell count")->capture_default_str();
    vedge->add_option("--count", edge_count, "samples")->capture_default_str();
    vedge->add_option("--deltas", edge_deltas, "comma-separated deltas in (1/6, 1/2]")->capture_default_str();
    vedge->add_option("--seed", seed, "RNG seed")->each([&](const std::string&) { seed_given = true; });

    auto* vshape = verify->add_subcommand("shape", "sup-norm of the limit-shape deviation");
    std::int64_t shape_n = 10000, shape_count = 100;
    vshape->add_option("--n", shape_n, "cell count")->capture_default_str();
    vshape->add_option("--count", shape_count, "samples")->capture_default_str();
    vshape->add_option("--seed", seed, "RNG seed")->each([&](const std::string&) { seed_given = true; });

    auto* vconv = verify->add_subcommand("convergence", "-log Pl / sqrt(n) concentration across n");
    std::string conv_ns = "1000,10000";
    std::int64_t conv_count = 50;
    vconv->add_option("--ns", conv_ns, "comma-separated cell counts")->capture_default_str();
    vconv->add_option("--count", conv_count, "samples per n")->capture_default_str();
    vconv->add_option("--seed", seed, "RNG seed")->each([&](const std::string&) { seed_given = true; });

    // ---- report-merge ----
    auto* merge = app.add_subcommand("report-merge", "merge record files into one CSV table");
    std::vector<std::string> merge_files;
    merge->add_option("files", merge_files, "record files")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        json err;
        err["error"] = "UsageError";
        err["message"] = e.what();
        std::cerr << err.dump() << "\n";
        return 2;
    }

    try {
        if (!seed_given) seed = default_seed();

        if (*sample) {
            if (sample_theta <= 0.0 && sample_n < 1)
                throw parameter_error("NonPositiveN", "sample: give --n >= 1 or --theta > 0");
            return run_sample(sample_n, sample_theta, sample_count, seed);
        }
        if (*entropy_cmd) return run_entropy_cmd(qcfg);
        if (*kernel_cmd) {
            if (*kbessel) {
                const bessel_params p{kb_theta, kb_tol};
                const discrete_bessel_kernel kern(p, std::max(std::abs(kb_x), std::abs(kb_y)) + 1);
                json j;
                j["type"] = "kernel";
                j["kernel"] = "bessel";
                j["theta"] = kb_theta;
                j["x"] = kb_x;
                j["y"] = kb_y;
                j["value"] = kern(kb_x, kb_y);
                j["truncation_bound"] = kb_tol;
                std::cout << j.dump() << "\n";
                return 0;
            }
            json j;
            j["type"] = "kernel";
            j["kernel"] = "sine";
            j["a"] = ks_a;
            j["k"] = ks_k;
            j["value"] = sine_kernel(sine_params{ks_a}, ks_k);
            j["truncation_bound"] = 0.0;
            std::cout << j.dump() << "\n";
            return 0;
        }
        if (*verify) {
            if (*vvk) return run_vk(vk_n, vk_count, seed, vk_quad_tol, vk_input == "-", format, workers);
            experiment_report rep;
            if (*vhooks)
                rep = run_hook_frequencies(parse_int_list(hooks_ks, "ks"), hooks_n, hooks_count, seed, workers);
            else if (*vpatterns) {
                pattern_frequency_spec spec;
                spec.offsets = parse_int_list(pat_offsets, "offsets");
                for (const auto& part : [&] {
                         std::vector<std::string> parts;
                         std::stringstream ss(pat_f);
                         std::string item;
                         while (std::getline(ss, item, ',')) parts.push_back(item);
                         return parts;
                     }()) {
                    const auto colon = part.find(':');
                    if (colon == std::string::npos)
                        throw parameter_error("BadWeightNodes", "expected a:value entries in --f");
                    spec.f_nodes.emplace_back(std::stod(part.substr(0, colon)), std::stod(part.substr(colon + 1)));
                }
                rep = run_pattern_frequency(spec, pat_n, pat_count, seed, workers);
            } else if (*vboo)
                rep = run_boo_correlations(boo_theta, -boo_window, boo_window, boo_order, boo_count, seed, workers);
            else if (*vdecay)
                rep = run_correlation_decay(decay_n, decay_count,
                                            bulk_separation_pairs(decay_n, decay_max_sep, decay_stride),
                                            seed, workers);
            else if (*vedge)
                rep = run_edge_statistics(edge_n, edge_count, parse_double_list(edge_deltas, "deltas"), seed, workers);
            else if (*vshape)
                rep = run_limit_shape(shape_n, shape_count, seed, workers);
            else if (*vconv)
                rep = run_entropy_convergence(parse_int_list(conv_ns, "ns"), conv_count, seed, workers);
            rep.params.emplace_back("workers", std::to_string(workers));
            emit_report(rep, format, output);
            return 0;
        }
        if (*merge) {
            bool header = true;
            for (const auto& path : merge_files) {
                std::ifstream in(path);
                if (!in) throw parameter_error("BadInputPath", "cannot open record file: " + path);
                for (const auto& rep : read_report_records(in)) {
                    write_report_csv(std::cout, rep, header);
                    header = false;
                }
            }
            return 0;
        }
        throw parameter_error("NoCommand", "no subcommand given");
    } catch (const parameter_error& e) {
        json err;
        err["error"] = e.code();
        err["message"] = e.what();
        std::cerr << err.dump() << "\n";
        return 3;
    } catch (const computation_error& e) {
        json err;
        err["error"] = e.code();
        err["message"] = e.what();
        std::cerr << err.dump() << "\n";
        return 4;
    } catch (const std::exception& e) {
        json err;
        err["error"] = "ComputationError";
        err["message"] = e.what();
        std::cerr << err.dump() << "\n";
        return 4;
    }
}
