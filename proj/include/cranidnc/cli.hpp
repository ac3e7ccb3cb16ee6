#pragma once

// Command-line front end: sweep, solve, graph-dump, selftest.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cranidnc/baselines.hpp"
#include "cranidnc/fixtures.hpp"
#include "cranidnc/graph.hpp"
#include "cranidnc/harness.hpp"
#include "cranidnc/scenario.hpp"
#include "cranidnc/scheduler.hpp"

namespace cranidnc {

namespace detail {

struct CommonOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trials;
    std::optional<std::string> schemes;
    std::optional<std::size_t> threads;
};

inline KeyValueConfig load_config(const CommonOptions& o)
{
    KeyValueConfig kv;
    if (!o.config_path.empty()) {
        std::ifstream in(o.config_path);
        if (!in) {
            throw std::runtime_error("cannot open config '" + o.config_path + "'");
        }
        kv = KeyValueConfig::parse(in);
    }
    if (o.seed) {
        kv.set("seed", std::to_string(*o.seed));
    }
    if (o.trials) {
        kv.set("trials", std::to_string(*o.trials));
    }
    if (o.schemes) {
        kv.set("schemes", *o.schemes);
    }
    if (o.threads) {
        kv.set("threads", std::to_string(*o.threads));
    }
    return kv;
}

inline SweepSpec read_spec(const CommonOptions& o)
{
    KeyValueConfig kv = load_config(o);
    SweepSpec spec = sweep_spec_from(kv);
    if (const auto unused = kv.unused_keys(); !unused.empty()) {
        std::string keys;
        for (const auto& k : unused) {
            keys += (keys.empty() ? "" : ", ") + k;
        }
        throw std::invalid_argument("unknown config keys: " + keys);
    }
    return spec;
}

inline void add_common(CLI::App& cmd, CommonOptions& o, bool sweep_flags)
{
    cmd.add_option("--config", o.config_path, "key = value configuration file")->required()->check(CLI::ExistingFile);
    cmd.add_option("--seed", o.seed, "override the base random seed");
    cmd.add_option("--schemes", o.schemes, "comma separated schemes to run");
    if (sweep_flags) {
        cmd.add_option("--trials", o.trials, "override trials per sweep point")->check(CLI::PositiveNumber);
        cmd.add_option("--threads", o.threads, "worker threads (0 = hardware concurrency)");
    }
}

inline int run_selftest(std::ostream& out)
{
    bool ok = true;
    auto check = [&](const char* name, double got, double want) {
        const bool pass = got == want;
        ok = ok && pass;
        out << name << ": " << std::fixed << std::setprecision(1) << got << (pass ? " OK" : " FAIL");
        if (!pass) {
            out << " (expected " << want << ")";
        }
        out << '\n' << std::defaultfloat;
    };
    const Instance uniform = fixtures::two_rrh_uniform();
    check("fig3", propose_schedule(uniform).report.sum_rate, 3.0);
    check("fig3-uncoded", heu_shd(uniform).report.sum_rate, 2.0);
    const Instance asymmetric = fixtures::two_rrh_asymmetric();
    check("fig4", propose_schedule(asymmetric).report.sum_rate, 7.0);
    return ok ? 0 : 1;
}

inline void print_outcome(std::ostream& out, Scheme scheme, const SchemeOutcome& o, std::size_t users)
{
    out << "scheme " << to_string(scheme) << " solver=" << to_string(o.solver_used) << " vertices=" << o.vertex_count
        << " sum_rate=" << format_double(o.report.sum_rate)
        << " bits_per_user_hz=" << format_double(o.report.sum_rate / static_cast<double>(users))
        << " delivered_bits=" << format_double(o.report.delivered_bits) << '\n';
    write_schedule(out, o.schedule);
}

} // namespace detail

/// Entry point shared by the executable and the tests.
inline int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Rate-aware IDNC scheduling for cloud RANs"};
    app.require_subcommand(1);

    detail::CommonOptions sweep_opts;
    std::string sweep_out;
    std::string records_out;
    auto* sweep = app.add_subcommand("sweep", "Monte Carlo parameter sweep to CSV");
    detail::add_common(*sweep, sweep_opts, true);
    sweep->add_option("--out", sweep_out, "CSV output path")->required();
    sweep->add_option("--records", records_out, "optional per-trial CSV output path");

    detail::CommonOptions solve_opts;
    auto* solve = app.add_subcommand("solve", "Schedule one generated instance with every scheme");
    detail::add_common(*solve, solve_opts, false);

    detail::CommonOptions dump_opts;
    std::string dump_out;
    auto* dump = app.add_subcommand("graph-dump", "Write the CRAN-IDNC graph in DIMACS format");
    detail::add_common(*dump, dump_opts, false);
    dump->add_option("--out", dump_out, "output path")->required();

    auto* selftest = app.add_subcommand("selftest", "Check the two reference instances");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*selftest) {
            return detail::run_selftest(out);
        }
        if (*sweep) {
            const SweepSpec spec = detail::read_spec(sweep_opts);
            const SweepResult result = run_sweep(spec);
            emit_csv(result, sweep_out);
            if (!records_out.empty()) {
                std::ofstream rec(records_out, std::ios::binary | std::ios::trunc);
                if (!rec) {
                    throw std::ios_base::failure("cannot open '" + records_out + "' for writing");
                }
                write_trial_records(rec, result);
            }
            return 0;
        }
        if (*solve) {
            const SweepSpec spec = detail::read_spec(solve_opts);
            const Scenario scenario = generate_scenario(spec.base_config);
            const Instance instance = scenario.instance();
            for (Scheme scheme : spec.schemes) {
                detail::print_outcome(out, scheme, run_scheme(instance, scheme, spec.budget),
                                      instance.dims.num_users);
            }
            return 0;
        }
        if (*dump) {
            const SweepSpec spec = detail::read_spec(dump_opts);
            const Instance instance = generate_scenario(spec.base_config).instance();
            const CranGraph g = build_graph(instance.capacities, instance.side_info, instance.dims);
            std::ofstream file(dump_out, std::ios::binary | std::ios::trunc);
            if (!file) {
                throw std::ios_base::failure("cannot open '" + dump_out + "' for writing");
            }
            write_graph_dimacs(file, g);
            return 0;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}

} // namespace cranidnc
