#pragma once

// Comparison schedulers: rate-unaware IDNC, rate-greedy RLNC and the
// uncoded one-user-per-RRB scheduler.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <vector>

#include "cranidnc/clique.hpp"
#include "cranidnc/errors.hpp"
#include "cranidnc/graph.hpp"
#include "cranidnc/schedule.hpp"
#include "cranidnc/scheduler.hpp"

namespace cranidnc {

namespace detail {

inline void require_valid(const Schedule& s, const Instance& instance, const char* scheme,
                          ValidationOptions options = {})
{
    const ValidationResult verdict = validate_schedule(s, instance.capacities, instance.side_info, options);
    if (!verdict.ok()) {
        throw InternalError(std::string(scheme) + " produced an infeasible schedule:\n" + verdict.summary());
    }
}

inline SchemeOutcome finish(Schedule s, const Instance& instance, Solver used, std::size_t vertex_count)
{
    SchemeOutcome out;
    out.report = throughput_report(s, instance.dims.num_users, instance.file_size_bits);
    out.schedule = std::move(s);
    out.solver_used = used;
    out.vertex_count = vertex_count;
    return out;
}

} // namespace detail

/// IDNC graph without rates: vertices (b, z, u, f) for every link with
/// positive capacity, no rate-equality condition. Weights count targeted
/// users; a fractional term below 1 in total favours stronger links among
/// equally sized cliques.
inline CranGraph build_rate_free_graph(const Instance& instance)
{
    const NetworkDims& dims = instance.dims;
    const SideInformation& si = instance.side_info;
    detail::check_consistent(instance.capacities, si, dims);
    std::vector<Vertex> vertices;
    double max_capacity = 0.0;
    for (std::size_t b = 0; b < dims.num_rrhs; ++b) {
        for (std::size_t z = 0; z < dims.num_rrbs_per_rrh; ++z) {
            for (std::size_t u = 0; u < dims.num_users; ++u) {
                const double cap = instance.capacities.rate(b, z, u);
                if (cap <= 0.0) {
                    continue;
                }
                max_capacity = std::max(max_capacity, cap);
                for (std::size_t f : si.wants(u).to_vector()) {
                    vertices.push_back(Vertex{0, b, z, u, f, cap});
                }
            }
        }
    }
    const double tie_scale = 1.0 / (max_capacity * static_cast<double>(vertices.size() + 1));
    return detail::assemble_graph(
        dims, std::move(vertices), si, [&](const Vertex& v, const Vertex& w) { return files_combinable(v, w, si); },
        [&](const Vertex& v) { return 1.0 + v.r * tie_scale; });
}

/// Chooses combinations ignoring rates, then transmits each RRB at the
/// weakest targeted user's capacity.
inline SchemeOutcome classical_idnc(const Instance& instance, SolverPolicy policy = {})
{
    const CranGraph g = build_rate_free_graph(instance);
    auto [clique, used] = solve_clique(g.graph, policy);
    Schedule s;
    for (std::size_t id : clique.members) {
        const Vertex& v = g.vertices[id];
        auto [it, inserted] = s.try_emplace(RrbKey{v.b, v.z});
        ScheduleEntry& entry = it->second;
        if (inserted) {
            entry.rate = std::numeric_limits<double>::infinity();
        }
        entry.kappa.insert(v.f);
        entry.targeted.push_back(v.u);
        entry.rate = std::min(entry.rate, v.r);
    }
    for (auto& [key, entry] : s) {
        std::sort(entry.targeted.begin(), entry.targeted.end());
    }
    detail::require_valid(s, instance, "classical IDNC");
    return detail::finish(std::move(s), instance, used, g.size());
}

/// Every user with a request joins the RRB where its capacity is highest
/// (lowest (b, z) on ties); each used RRB mixes all files and runs at its
/// weakest member's capacity.
inline SchemeOutcome rlnc(const Instance& instance)
{
    const NetworkDims& dims = instance.dims;
    Schedule s;
    for (std::size_t u = 0; u < dims.num_users; ++u) {
        if (instance.side_info.wants(u).empty()) {
            continue;
        }
        double best = 0.0;
        RrbKey best_key;
        for (std::size_t b = 0; b < dims.num_rrhs; ++b) {
            for (std::size_t z = 0; z < dims.num_rrbs_per_rrh; ++z) {
                const double cap = instance.capacities.rate(b, z, u);
                if (cap > best) {
                    best = cap;
                    best_key = RrbKey{b, z};
                }
            }
        }
        if (best <= 0.0) {
            continue;
        }
        auto [it, inserted] = s.try_emplace(best_key);
        ScheduleEntry& entry = it->second;
        if (inserted) {
            entry.kappa = FileSet::first(dims.num_files);
            entry.rate = best;
        }
        entry.rate = std::min(entry.rate, best);
        entry.targeted.push_back(u);
    }
    detail::require_valid(s, instance, "RLNC", ValidationOptions{.check_decodability = false});
    return detail::finish(std::move(s), instance, Solver::exact, 0);
}

/// One vertex per link with positive capacity and a pending request, at the
/// link capacity, carrying the user's lowest wanted file. No edges inside an
/// RRB, so a clique serves at most one user per RRB.
inline CranGraph build_uncoded_graph(const Instance& instance)
{
    const NetworkDims& dims = instance.dims;
    const SideInformation& si = instance.side_info;
    detail::check_consistent(instance.capacities, si, dims);
    std::vector<Vertex> vertices;
    for (std::size_t b = 0; b < dims.num_rrhs; ++b) {
        for (std::size_t z = 0; z < dims.num_rrbs_per_rrh; ++z) {
            for (std::size_t u = 0; u < dims.num_users; ++u) {
                const double cap = instance.capacities.rate(b, z, u);
                const FileSet wants = si.wants(u);
                if (cap > 0.0 && !wants.empty()) {
                    vertices.push_back(Vertex{0, b, z, u, wants.lowest(), cap});
                }
            }
        }
    }
    return detail::assemble_graph(
        dims, std::move(vertices), si, [](const Vertex&, const Vertex&) { return false; },
        [](const Vertex& v) { return v.r; });
}

inline SchemeOutcome heu_shd(const Instance& instance,
                             SolverPolicy policy = {Solver::greedy, kDefaultExactVertexBudget})
{
    const CranGraph g = build_uncoded_graph(instance);
    auto [clique, used] = solve_clique(g.graph, policy);
    Schedule s = clique_to_schedule(clique, g);
    detail::require_valid(s, instance, "HEU-SHD");
    return detail::finish(std::move(s), instance, used, g.size());
}

} // namespace cranidnc
