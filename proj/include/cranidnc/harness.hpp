#pragma once

// Monte Carlo sweeps over one scenario parameter, comparing schedulers on
// identical random instances, plus CSV output of the aggregates.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <fstream>
#include <istream>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "cranidnc/baselines.hpp"
#include "cranidnc/scenario.hpp"
#include "cranidnc/scheduler.hpp"

namespace cranidnc {

enum class Scheme { proposed_exact, proposed_greedy, classical_idnc, rlnc, heu_shd };

inline constexpr Scheme kAllSchemes[] = {Scheme::proposed_exact, Scheme::proposed_greedy, Scheme::classical_idnc,
                                         Scheme::rlnc, Scheme::heu_shd};

inline const char* to_string(Scheme s)
{
    switch (s) {
    case Scheme::proposed_exact: return "proposed_exact";
    case Scheme::proposed_greedy: return "proposed_greedy";
    case Scheme::classical_idnc: return "classical_idnc";
    case Scheme::rlnc: return "rlnc";
    case Scheme::heu_shd: return "heu_shd";
    }
    return "unknown";
}

inline Scheme parse_scheme(const std::string& name)
{
    for (Scheme s : kAllSchemes) {
        if (name == to_string(s)) {
            return s;
        }
    }
    throw std::invalid_argument("unknown scheme '" + name + "'");
}

/// Comma separated scheme names, e.g. "proposed_exact,heu_shd".
inline std::vector<Scheme> parse_scheme_list(const std::string& text)
{
    std::vector<Scheme> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = KeyValueConfig::trim(item);
        if (item.empty()) {
            continue;
        }
        const Scheme s = parse_scheme(item);
        if (std::find(out.begin(), out.end(), s) == out.end()) {
            out.push_back(s);
        }
    }
    if (out.empty()) {
        throw std::invalid_argument("scheme list is empty");
    }
    return out;
}

/// Clique sizes beyond which the exact solver is replaced by greedy.
struct ExactBudget {
    std::size_t vertices = kDefaultExactVertexBudget;
};

inline SchemeOutcome run_scheme(const Instance& instance, Scheme scheme, ExactBudget budget = {})
{
    const SolverPolicy exact{Solver::exact, budget.vertices};
    switch (scheme) {
    case Scheme::proposed_exact: return propose_schedule(instance, exact);
    case Scheme::proposed_greedy: return propose_schedule(instance, SolverPolicy{Solver::greedy});
    case Scheme::classical_idnc: return classical_idnc(instance, exact);
    case Scheme::rlnc: return rlnc(instance);
    case Scheme::heu_shd: return heu_shd(instance, exact);
    }
    throw std::invalid_argument("unknown scheme");
}

enum class SweptParameter { num_users, num_rrbs, file_size };

inline const char* to_string(SweptParameter p)
{
    switch (p) {
    case SweptParameter::num_users: return "num_users";
    case SweptParameter::num_rrbs: return "num_rrbs";
    case SweptParameter::file_size: return "file_size";
    }
    return "unknown";
}

inline SweptParameter parse_swept_parameter(const std::string& name)
{
    for (SweptParameter p : {SweptParameter::num_users, SweptParameter::num_rrbs, SweptParameter::file_size}) {
        if (name == to_string(p)) {
            return p;
        }
    }
    throw std::invalid_argument("unknown swept parameter '" + name + "'");
}

struct SweepSpec {
    SweptParameter swept_parameter = SweptParameter::num_users;
    std::vector<std::uint64_t> values;
    std::size_t trials_per_point = 100;
    ScenarioConfig base_config;
    std::vector<Scheme> schemes{std::begin(kAllSchemes), std::end(kAllSchemes)};
    ExactBudget budget;
    // 0 picks the hardware concurrency.
    std::size_t threads = 0;

    void validate() const
    {
        if (values.empty()) {
            throw std::invalid_argument("sweep needs at least one value");
        }
        for (std::size_t i = 1; i < values.size(); ++i) {
            if (values[i] <= values[i - 1]) {
                throw std::invalid_argument("sweep values must be strictly increasing");
            }
        }
        if (trials_per_point < 1) {
            throw std::invalid_argument("trials_per_point must be >= 1");
        }
        if (schemes.empty()) {
            throw std::invalid_argument("sweep needs at least one scheme");
        }
        for (std::uint64_t v : values) {
            if (v == 0) {
                throw std::invalid_argument("sweep values must be positive");
            }
        }
    }
};

/// The scenario configuration for one sweep point.
inline ScenarioConfig config_at(const SweepSpec& spec, std::uint64_t value)
{
    ScenarioConfig c = spec.base_config;
    switch (spec.swept_parameter) {
    case SweptParameter::num_users: c.dims.num_users = static_cast<std::size_t>(value); break;
    case SweptParameter::num_rrbs: c.dims.num_rrbs_per_rrh = static_cast<std::size_t>(value); break;
    case SweptParameter::file_size: c.file_size_bits = static_cast<double>(value); break;
    }
    return c;
}

/// seed = H(H(base, value), trial) with H the SplitMix64 mix. The file size
/// does not shape the instance, so file-size sweeps reuse one instance set
/// across all values.
inline std::uint64_t trial_seed(std::uint64_t base_seed, SweptParameter param, std::uint64_t value, std::uint64_t trial)
{
    const std::uint64_t point = param == SweptParameter::file_size ? 0 : value;
    return mix_seed(mix_seed(base_seed, point), trial);
}

struct TrialRecord {
    Scheme scheme = Scheme::proposed_exact;
    std::uint64_t value = 0;
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    double sum_rate = 0.0;
    double bits_per_user_hz = 0.0;
    double delivered_bits = 0.0;
    Solver solver_used = Solver::exact;
    std::size_t vertex_count = 0;
};

struct PointSummary {
    Scheme scheme = Scheme::proposed_exact;
    std::uint64_t value = 0;
    double mean_bits_per_user_hz = 0.0;
    double stderr_bits_per_user_hz = 0.0;
    double mean_delivered_bits = 0.0;
    std::size_t trials = 0;
};

struct SweepResult {
    SweptParameter swept_parameter = SweptParameter::num_users;
    std::vector<PointSummary> points;  // sorted by (scheme name, value)
    std::vector<TrialRecord> records;  // ordered by (value, trial, scheme)

    const PointSummary* find(Scheme scheme, std::uint64_t value) const
    {
        for (const auto& p : points) {
            if (p.scheme == scheme && p.value == value) {
                return &p;
            }
        }
        return nullptr;
    }

    /// Per-trial metric for one (scheme, value), in trial order.
    std::vector<double> series(Scheme scheme, std::uint64_t value, double TrialRecord::*field) const
    {
        std::vector<double> out;
        for (const auto& r : records) {
            if (r.scheme == scheme && r.value == value) {
                out.push_back(r.*field);
            }
        }
        return out;
    }
};

struct SampleStats {
    double mean = 0.0;
    double stderr_of_mean = 0.0;
};

/// Mean and standard error. Values are summed in sorted order so the result
/// does not depend on trial order.
inline SampleStats sample_stats(std::vector<double> values)
{
    SampleStats s;
    if (values.empty()) {
        return s;
    }
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    s.mean = sum / n;
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) {
            ss += (v - s.mean) * (v - s.mean);
        }
        s.stderr_of_mean = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
    }
    return s;
}

inline SweepResult run_sweep(const SweepSpec& spec)
{
    spec.validate();
    spec.base_config.validate();
    struct Task {
        std::uint64_t value;
        std::size_t trial;
    };
    std::vector<Task> tasks;
    for (std::uint64_t v : spec.values) {
        for (std::size_t t = 0; t < spec.trials_per_point; ++t) {
            tasks.push_back(Task{v, t});
        }
    }
    const std::size_t per_task = spec.schemes.size();
    std::vector<TrialRecord> records(tasks.size() * per_task);
    std::vector<std::exception_ptr> errors(tasks.size());

    auto run_task = [&](std::size_t k) {
        const Task& task = tasks[k];
        ScenarioConfig config = config_at(spec, task.value);
        config.rng_seed = trial_seed(spec.base_config.rng_seed, spec.swept_parameter, task.value, task.trial);
        try {
            const Instance instance = generate_scenario(config).instance();
            for (std::size_t s = 0; s < per_task; ++s) {
                const SchemeOutcome out = run_scheme(instance, spec.schemes[s], spec.budget);
                TrialRecord& r = records[k * per_task + s];
                r.scheme = spec.schemes[s];
                r.value = task.value;
                r.trial = task.trial;
                r.seed = config.rng_seed;
                r.sum_rate = out.report.sum_rate;
                r.bits_per_user_hz = out.report.sum_rate / static_cast<double>(config.dims.num_users);
                r.delivered_bits = out.report.delivered_bits;
                r.solver_used = out.solver_used;
                r.vertex_count = out.vertex_count;
            }
        } catch (const std::exception& e) {
            errors[k] = std::make_exception_ptr(std::runtime_error(
                "trial " + std::to_string(task.trial) + " at " + to_string(spec.swept_parameter) + "=" +
                std::to_string(task.value) + " (seed " + std::to_string(config.rng_seed) + ") failed: " + e.what()));
        }
    };

    std::size_t threads = spec.threads != 0 ? spec.threads : std::max(1U, std::thread::hardware_concurrency());
    threads = std::min(threads, tasks.size());
    if (threads <= 1) {
        for (std::size_t k = 0; k < tasks.size(); ++k) {
            run_task(k);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (std::size_t i = 0; i < threads; ++i) {
            pool.emplace_back([&] {
                for (std::size_t k = next++; k < tasks.size(); k = next++) {
                    run_task(k);
                }
            });
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }

    SweepResult result;
    result.swept_parameter = spec.swept_parameter;
    result.records = std::move(records);
    for (Scheme scheme : spec.schemes) {
        for (std::uint64_t v : spec.values) {
            PointSummary p;
            p.scheme = scheme;
            p.value = v;
            const SampleStats norm = sample_stats(result.series(scheme, v, &TrialRecord::bits_per_user_hz));
            const SampleStats bits = sample_stats(result.series(scheme, v, &TrialRecord::delivered_bits));
            p.mean_bits_per_user_hz = norm.mean;
            p.stderr_bits_per_user_hz = norm.stderr_of_mean;
            p.mean_delivered_bits = bits.mean;
            p.trials = spec.trials_per_point;
            result.points.push_back(p);
        }
    }
    std::sort(result.points.begin(), result.points.end(), [](const PointSummary& a, const PointSummary& b) {
        const std::string an = to_string(a.scheme);
        const std::string bn = to_string(b.scheme);
        return an != bn ? an < bn : a.value < b.value;
    });
    return result;
}

inline constexpr const char* kCsvHeader =
    "scheme,swept_param,value,mean_bits_per_user_hz,stderr,mean_delivered_bits,trials";

inline void write_csv(std::ostream& out, const SweepResult& result)
{
    out << kCsvHeader << '\n';
    for (const auto& p : result.points) {
        out << to_string(p.scheme) << ',' << to_string(result.swept_parameter) << ',' << p.value << ','
            << detail::format_double(p.mean_bits_per_user_hz) << ',' << detail::format_double(p.stderr_bits_per_user_hz)
            << ',' << detail::format_double(p.mean_delivered_bits) << ',' << p.trials << '\n';
    }
}

inline void emit_csv(const SweepResult& result, const std::string& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::ios_base::failure("cannot open '" + path + "' for writing");
    }
    write_csv(out, result);
    out.flush();
    if (!out) {
        throw std::ios_base::failure("failed writing '" + path + "'");
    }
}

/// Per-trial log, including which clique solver each scheme ended up using.
inline void write_trial_records(std::ostream& out, const SweepResult& result)
{
    out << "scheme,swept_param,value,trial,seed,sum_rate,bits_per_user_hz,delivered_bits,solver,vertices\n";
    for (const auto& r : result.records) {
        out << to_string(r.scheme) << ',' << to_string(result.swept_parameter) << ',' << r.value << ',' << r.trial
            << ',' << r.seed << ',' << detail::format_double(r.sum_rate) << ','
            << detail::format_double(r.bits_per_user_hz) << ',' << detail::format_double(r.delivered_bits) << ','
            << to_string(r.solver_used) << ',' << r.vertex_count << '\n';
    }
}

struct CsvRow {
    std::string scheme;
    std::string swept_param;
    std::uint64_t value = 0;
    double mean_bits_per_user_hz = 0.0;
    double stderr_bits_per_user_hz = 0.0;
    double mean_delivered_bits = 0.0;
    std::size_t trials = 0;
};

inline std::vector<CsvRow> read_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw std::invalid_argument("csv header mismatch");
    }
    std::vector<CsvRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            cells.push_back(cell);
        }
        if (cells.size() != 7) {
            throw std::invalid_argument("csv row has " + std::to_string(cells.size()) + " cells: '" + line + "'");
        }
        CsvRow r;
        r.scheme = cells[0];
        r.swept_param = cells[1];
        r.value = KeyValueConfig::parse_unsigned("value", cells[2]);
        r.mean_bits_per_user_hz = detail::parse_double(cells[3]);
        r.stderr_bits_per_user_hz = detail::parse_double(cells[4]);
        r.mean_delivered_bits = detail::parse_double(cells[5]);
        r.trials = static_cast<std::size_t>(KeyValueConfig::parse_unsigned("trials", cells[6]));
        rows.push_back(std::move(r));
    }
    return rows;
}

/// Reads the sweep keys (sweep_param, sweep_values, trials, schemes,
/// exact_vertex_budget, threads) and the scenario keys from one config.
inline SweepSpec sweep_spec_from(KeyValueConfig& kv)
{
    SweepSpec spec;
    spec.base_config = scenario_config_from(kv);
    if (const auto* p = kv.find("sweep_param")) {
        spec.swept_parameter = parse_swept_parameter(*p);
    }
    if (const auto* v = kv.find("sweep_values")) {
        std::stringstream ss(*v);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = KeyValueConfig::trim(item);
            if (!item.empty()) {
                spec.values.push_back(KeyValueConfig::parse_unsigned("sweep_values", item));
            }
        }
    }
    kv.read("trials", spec.trials_per_point);
    if (const auto* s = kv.find("schemes")) {
        spec.schemes = parse_scheme_list(*s);
    }
    kv.read("exact_vertex_budget", spec.budget.vertices);
    kv.read("threads", spec.threads);
    return spec;
}

} // namespace cranidnc
