#pragma once

// CRAN-IDNC conflict graph. One vertex per (RRH, RRB, user, wanted file,
// rate) association; within an RRB two vertices are adjacent when their
// files can share one XOR at one rate, across RRBs when they do not put a
// user under two RRHs. A vertex weighs its rate, so clique weight equals the
// sum rate of the schedule the clique describes.

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "cranidnc/channel.hpp"
#include "cranidnc/clique.hpp"
#include "cranidnc/errors.hpp"
#include "cranidnc/side_info.hpp"

namespace cranidnc {

struct Vertex {
    std::size_t id = 0;
    std::size_t b = 0;
    std::size_t z = 0;
    std::size_t u = 0;
    std::size_t f = 0;
    double r = 0.0;

    bool same_rrb(const Vertex& other) const { return b == other.b && z == other.z; }
    bool operator==(const Vertex&) const = default;
};

struct CranGraph {
    NetworkDims dims;
    std::vector<Vertex> vertices;
    WeightedGraph graph;

    std::size_t size() const { return vertices.size(); }
    bool adjacent(std::size_t a, std::size_t b) const { return graph.adjacent(a, b); }
};

/// Capacities of users on RRB (b, z) that user u can also sustain, ascending
/// and deduplicated. These are the only rates an optimal schedule needs.
inline std::vector<double> candidate_rates(std::size_t b, std::size_t z, std::size_t u, const CapacityMatrix& cm)
{
    const NetworkDims& dims = cm.dims();
    const double own = cm.rate(b, z, u);
    std::vector<double> rates;
    for (std::size_t other = 0; other < dims.num_users; ++other) {
        const double r = cm.rate(b, z, other);
        if (r > 0.0 && r <= own) {
            rates.push_back(r);
        }
    }
    std::sort(rates.begin(), rates.end());
    rates.erase(std::unique(rates.begin(), rates.end()), rates.end());
    return rates;
}

/// Either both users hold each other's file, or both want the same file.
inline bool files_combinable(const Vertex& v, const Vertex& w, const SideInformation& si)
{
    return v.f == w.f || (si.has(w.u).contains(v.f) && si.has(v.u).contains(w.f));
}

/// Same-RRB adjacency: combinable files and equal rates.
inline bool lc_adjacent(const Vertex& v, const Vertex& w, const SideInformation& si)
{
    if (!v.same_rrb(w) || v.id == w.id) {
        throw ContractViolation("lc_adjacent needs two distinct vertices of the same RRB");
    }
    return files_combinable(v, w, si) && v.r == w.r;
}

/// Cross-RRB adjacency: GC1 (same user, same RRH), GC2 (same RRH and
/// combinable files) or GC3 (different users).
inline bool gc_adjacent(const Vertex& v, const Vertex& w, const SideInformation& si)
{
    if (v.same_rrb(w)) {
        throw ContractViolation("gc_adjacent needs vertices of different RRBs");
    }
    const bool same_rrh = v.b == w.b;
    const bool gc1 = v.u == w.u && same_rrh;
    const bool gc2 = same_rrh && files_combinable(v, w, si);
    const bool gc3 = v.u != w.u;
    return gc1 || gc2 || gc3;
}

namespace detail {

/// Assigns ids in the given order and wires edges with `local` inside an RRB
/// and gc_adjacent across RRBs.
template <typename LocalRule, typename WeightFn>
CranGraph assemble_graph(const NetworkDims& dims, std::vector<Vertex> vertices, const SideInformation& si,
                         LocalRule&& local, WeightFn&& weight_of)
{
    std::vector<double> weights;
    weights.reserve(vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        vertices[i].id = i;
        weights.push_back(weight_of(vertices[i]));
    }
    CranGraph out{dims, std::move(vertices), WeightedGraph(std::move(weights))};
    const auto& vs = out.vertices;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        for (std::size_t j = i + 1; j < vs.size(); ++j) {
            const bool edge = vs[i].same_rrb(vs[j]) ? local(vs[i], vs[j]) : gc_adjacent(vs[i], vs[j], si);
            if (edge) {
                out.graph.add_edge(i, j);
            }
        }
    }
    return out;
}

inline void check_consistent(const CapacityMatrix& cm, const SideInformation& si, const NetworkDims& dims)
{
    dims.validate();
    if (cm.dims() != dims) {
        throw MissingData("capacity matrix does not match the network dimensions");
    }
    if (si.num_users() != dims.num_users || si.num_files() != dims.num_files) {
        throw MissingData("side information does not match the network dimensions");
    }
}

} // namespace detail

/// Vertices in lexicographic (b, z, u, f, r) order.
inline CranGraph build_graph(const CapacityMatrix& cm, const SideInformation& si, const NetworkDims& dims)
{
    detail::check_consistent(cm, si, dims);
    std::vector<Vertex> vertices;
    for (std::size_t b = 0; b < dims.num_rrhs; ++b) {
        for (std::size_t z = 0; z < dims.num_rrbs_per_rrh; ++z) {
            for (std::size_t u = 0; u < dims.num_users; ++u) {
                const FileSet wants = si.wants(u);
                if (wants.empty()) {
                    continue;
                }
                const std::vector<double> rates = candidate_rates(b, z, u, cm);
                for (std::size_t f : wants.to_vector()) {
                    for (double r : rates) {
                        vertices.push_back(Vertex{0, b, z, u, f, r});
                    }
                }
            }
        }
    }
    return detail::assemble_graph(
        dims, std::move(vertices), si, [&](const Vertex& v, const Vertex& w) { return lc_adjacent(v, w, si); },
        [](const Vertex& v) { return v.r; });
}

/// DIMACS export; each vertex's association is listed in a comment line
/// `c v <id> <b> <z> <u> <f> <r>` (1-based id, 0-based indices).
inline void write_graph_dimacs(std::ostream& out, const CranGraph& g)
{
    std::vector<std::string> comments;
    comments.reserve(g.size() + 1);
    comments.push_back("cran-idnc graph: rrhs=" + std::to_string(g.dims.num_rrhs) +
                       " rrbs=" + std::to_string(g.dims.num_rrbs_per_rrh) +
                       " users=" + std::to_string(g.dims.num_users) + " files=" + std::to_string(g.dims.num_files));
    for (const Vertex& v : g.vertices) {
        comments.push_back("v " + std::to_string(v.id + 1) + ' ' + std::to_string(v.b) + ' ' + std::to_string(v.z) +
                           ' ' + std::to_string(v.u) + ' ' + std::to_string(v.f) + ' ' +
                           detail::format_double(v.r));
    }
    write_dimacs(out, g.graph, comments);
}

} // namespace cranidnc
