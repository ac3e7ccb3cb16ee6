#pragma once

// The proposed rate-aware coded scheduler: build the CRAN-IDNC graph, solve
// maximum-weight clique, read the schedule off the clique. Also hosts the
// exhaustive schedule oracle used to cross-check it on tiny instances.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cranidnc/clique.hpp"
#include "cranidnc/errors.hpp"
#include "cranidnc/graph.hpp"
#include "cranidnc/schedule.hpp"
#include "cranidnc/side_info.hpp"

namespace cranidnc {

enum class Solver { exact, greedy };

inline const char* to_string(Solver s) { return s == Solver::exact ? "exact" : "greedy"; }

/// Which clique solver to run. Exact requests fall back to greedy when the
/// graph has more vertices than the budget.
struct SolverPolicy {
    Solver solver = Solver::exact;
    std::size_t exact_vertex_budget = std::numeric_limits<std::size_t>::max();
};

inline constexpr std::size_t kDefaultExactVertexBudget = 150;

struct SchemeOutcome {
    Schedule schedule;
    ThroughputReport report;
    Solver solver_used = Solver::exact;
    std::size_t vertex_count = 0;
};

inline std::pair<CliqueResult, Solver> solve_clique(const WeightedGraph& g, SolverPolicy policy)
{
    if (policy.solver == Solver::exact && g.size() <= policy.exact_vertex_budget) {
        return {max_weight_clique_exact(g), Solver::exact};
    }
    return {max_weight_clique_greedy(g), Solver::greedy};
}

/// Per RRB: the XOR of the clique's files, its users as targets, their shared rate.
inline Schedule clique_to_schedule(const CliqueResult& c, const CranGraph& g)
{
    if (!is_clique(g.graph, c.members)) {
        throw ContractViolation("clique_to_schedule called with a vertex set that is not a clique");
    }
    Schedule s;
    for (std::size_t id : c.members) {
        const Vertex& v = g.vertices[id];
        auto [it, inserted] = s.try_emplace(RrbKey{v.b, v.z});
        ScheduleEntry& entry = it->second;
        if (inserted) {
            entry.rate = v.r;
        } else if (entry.rate != v.r) {
            throw InternalError("clique mixes rates " + detail::format_double(entry.rate) + " and " +
                                detail::format_double(v.r) + " on rrb (" + std::to_string(v.b) + "," +
                                std::to_string(v.z) + ")");
        }
        entry.kappa.insert(v.f);
        entry.targeted.push_back(v.u);
    }
    for (auto& [key, entry] : s) {
        std::sort(entry.targeted.begin(), entry.targeted.end());
        entry.targeted.erase(std::unique(entry.targeted.begin(), entry.targeted.end()), entry.targeted.end());
    }
    return s;
}

inline SchemeOutcome propose_schedule(const Instance& instance, SolverPolicy policy = {})
{
    const CranGraph g = build_graph(instance.capacities, instance.side_info, instance.dims);
    auto [clique, used] = solve_clique(g.graph, policy);
    SchemeOutcome out;
    out.schedule = clique_to_schedule(clique, g);
    out.solver_used = used;
    out.vertex_count = g.size();
    const ValidationResult verdict = validate_schedule(out.schedule, instance.capacities, instance.side_info);
    if (!verdict.ok()) {
        throw InternalError("extracted schedule is infeasible:\n" + verdict.summary());
    }
    out.report = throughput_report(out.schedule, instance.dims.num_users, instance.file_size_bits);
    return out;
}

// ---------------------------------------------------------------------------
// Exhaustive oracle. Works directly on the constraints and never touches the
// graph, so it can be used to check the clique route.

struct OracleBudget {
    std::size_t max_users = 3;
    std::size_t max_rrhs = 2;
    std::size_t max_rrbs_per_rrh = 2;
    std::size_t max_files = 3;
};

namespace detail {

inline void check_oracle_budget(const Instance& instance, const OracleBudget& budget)
{
    const NetworkDims& d = instance.dims;
    if (d.num_users > budget.max_users || d.num_rrhs > budget.max_rrhs ||
        d.num_rrbs_per_rrh > budget.max_rrbs_per_rrh || d.num_files > budget.max_files) {
        throw BudgetExceeded("instance too large for exhaustive search (users=" + std::to_string(d.num_users) +
                             ", rrhs=" + std::to_string(d.num_rrhs) + ", rrbs=" + std::to_string(d.num_rrbs_per_rrh) +
                             ", files=" + std::to_string(d.num_files) + ")");
    }
}

struct RrbOption {
    FileSet kappa;
    double rate = 0.0;
    std::uint32_t users = 0; // bitmask of targeted users
};

/// Every (combination, rate, target set) an RRB could transmit on its own:
/// rates are the distinct positive capacities seen on the RRB, targets any
/// nonempty subset of the users that can decode at that rate.
inline std::vector<RrbOption> rrb_options(const Instance& instance, std::size_t b, std::size_t z)
{
    const NetworkDims& d = instance.dims;
    std::vector<double> rates;
    for (std::size_t u = 0; u < d.num_users; ++u) {
        const double r = instance.capacities.rate(b, z, u);
        if (r > 0.0 && std::find(rates.begin(), rates.end(), r) == rates.end()) {
            rates.push_back(r);
        }
    }
    std::sort(rates.begin(), rates.end());

    std::vector<RrbOption> options;
    const std::uint64_t all_files = FileSet::first(d.num_files).bits();
    for (std::uint64_t mask = 1; mask <= all_files; ++mask) {
        if ((mask & ~all_files) != 0) {
            continue;
        }
        const EncodedFile kappa{FileSet(mask)};
        for (double rate : rates) {
            std::uint32_t eligible = 0;
            for (std::size_t u = 0; u < d.num_users; ++u) {
                if (rate <= instance.capacities.rate(b, z, u) &&
                    is_instantly_decodable(kappa, u, instance.side_info)) {
                    eligible |= std::uint32_t{1} << u;
                }
            }
            // all nonempty subsets of the eligible users
            for (std::uint32_t t = eligible; t != 0; t = (t - 1) & eligible) {
                options.push_back(RrbOption{kappa.files(), rate, t});
            }
        }
    }
    return options;
}

inline ScheduleEntry to_entry(const RrbOption& o)
{
    ScheduleEntry e;
    e.kappa = o.kappa;
    e.rate = o.rate;
    for (std::size_t u = 0; u < 32; ++u) {
        if ((o.users >> u) & 1U) {
            e.targeted.push_back(u);
        }
    }
    return e;
}

/// Depth-first over RRBs; each RRB is silent or takes one option, subject to
/// every user staying under a single RRH.
template <typename Visit>
void enumerate_assignments(const Instance& instance, const std::vector<std::vector<RrbOption>>& options, Visit&& visit)
{
    const NetworkDims& d = instance.dims;
    const std::size_t rrbs = d.total_rrbs();
    std::vector<std::size_t> rrh_of(d.num_users, 0);
    std::vector<std::size_t> uses(d.num_users, 0);
    std::vector<const RrbOption*> chosen(rrbs, nullptr);

    std::function<void(std::size_t)> step = [&](std::size_t k) {
        if (k == rrbs) {
            visit(chosen);
            return;
        }
        chosen[k] = nullptr;
        step(k + 1);
        const std::size_t b = k / d.num_rrbs_per_rrh;
        for (const RrbOption& o : options[k]) {
            bool fits = true;
            for (std::size_t u = 0; u < d.num_users && fits; ++u) {
                if (((o.users >> u) & 1U) && uses[u] > 0 && rrh_of[u] != b) {
                    fits = false;
                }
            }
            if (!fits) {
                continue;
            }
            for (std::size_t u = 0; u < d.num_users; ++u) {
                if ((o.users >> u) & 1U) {
                    rrh_of[u] = b;
                    ++uses[u];
                }
            }
            chosen[k] = &o;
            step(k + 1);
            chosen[k] = nullptr;
            for (std::size_t u = 0; u < d.num_users; ++u) {
                if ((o.users >> u) & 1U) {
                    --uses[u];
                }
            }
        }
    };
    step(0);
}

inline Schedule assignment_to_schedule(const NetworkDims& d, const std::vector<const RrbOption*>& chosen)
{
    Schedule s;
    for (std::size_t k = 0; k < chosen.size(); ++k) {
        if (chosen[k] != nullptr) {
            s.emplace(RrbKey{k / d.num_rrbs_per_rrh, k % d.num_rrbs_per_rrh}, to_entry(*chosen[k]));
        }
    }
    return s;
}

} // namespace detail

/// Calls `visit(const Schedule&)` for every feasible schedule of the instance.
/// Returns the number of schedules visited (including the empty one).
template <typename Visit>
std::size_t for_each_feasible_schedule(const Instance& instance, Visit&& visit, OracleBudget budget = {})
{
    detail::check_oracle_budget(instance, budget);
    const NetworkDims& d = instance.dims;
    std::vector<std::vector<detail::RrbOption>> options;
    for (std::size_t b = 0; b < d.num_rrhs; ++b) {
        for (std::size_t z = 0; z < d.num_rrbs_per_rrh; ++z) {
            options.push_back(detail::rrb_options(instance, b, z));
        }
    }
    std::size_t count = 0;
    detail::enumerate_assignments(instance, options, [&](const std::vector<const detail::RrbOption*>& chosen) {
        ++count;
        visit(detail::assignment_to_schedule(d, chosen));
    });
    return count;
}

struct OracleResult {
    Schedule schedule;
    double sum_rate = 0.0;
};

/// Exhaustive maximizer of the sum rate. Only the target set and rate of an
/// RRB enter the objective and the connectivity constraint, so for each
/// target set only its highest feasible rate is kept before searching.
inline OracleResult oracle_best_schedule(const Instance& instance, OracleBudget budget = {})
{
    detail::check_oracle_budget(instance, budget);
    const NetworkDims& d = instance.dims;
    std::vector<std::vector<detail::RrbOption>> options;
    for (std::size_t b = 0; b < d.num_rrhs; ++b) {
        for (std::size_t z = 0; z < d.num_rrbs_per_rrh; ++z) {
            std::map<std::uint32_t, detail::RrbOption> best_per_targets;
            for (const auto& o : detail::rrb_options(instance, b, z)) {
                auto [it, inserted] = best_per_targets.try_emplace(o.users, o);
                if (!inserted && o.rate > it->second.rate) {
                    it->second = o;
                }
            }
            std::vector<detail::RrbOption> reduced;
            for (const auto& [users, o] : best_per_targets) {
                reduced.push_back(o);
            }
            options.push_back(std::move(reduced));
        }
    }
    OracleResult best;
    bool have = false;
    detail::enumerate_assignments(instance, options, [&](const std::vector<const detail::RrbOption*>& chosen) {
        Schedule s = detail::assignment_to_schedule(d, chosen);
        const double value = sum_rate(s);
        if (!have || value > best.sum_rate) {
            have = true;
            best.sum_rate = value;
            best.schedule = std::move(s);
        }
    });
    return best;
}

/// Vertex ids of `g` describing a schedule: one vertex per (RRB, targeted
/// user) with the file that user decodes and the RRB rate. Returns nothing
/// when some association has no vertex.
inline std::optional<std::vector<std::size_t>> schedule_to_vertices(const Schedule& s, const CranGraph& g,
                                                                   const SideInformation& si)
{
    std::vector<std::size_t> ids;
    for (const auto& [key, entry] : s) {
        for (std::size_t u : entry.targeted) {
            const std::size_t f = decoded_file(EncodedFile(entry.kappa), u, si);
            auto it = std::find_if(g.vertices.begin(), g.vertices.end(), [&](const Vertex& v) {
                return v.b == key.b && v.z == key.z && v.u == u && v.f == f && v.r == entry.rate;
            });
            if (it == g.vertices.end()) {
                return std::nullopt;
            }
            ids.push_back(it->id);
        }
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

} // namespace cranidnc
