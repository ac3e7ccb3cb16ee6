#pragma once

// Shared helpers for the unit and acceptance tests: random tiny instances and
// brute-force references that do not reuse library search code.

#include <cstdint>
#include <random>
#include <vector>

#include "cranidnc/cranidnc.hpp"

namespace testsupport {

using namespace cranidnc;

// capacities are multiples of 0.25 so sums compare exactly
inline double dyadic_rate(std::mt19937_64& rng, bool allow_zero)
{
    std::uniform_int_distribution<int> q(allow_zero ? 0 : 1, 12);
    return q(rng) * 0.25;
}

inline Instance random_tiny_instance(std::mt19937_64& rng, std::size_t max_users = 3, std::size_t max_rrhs = 2,
                                     std::size_t max_rrbs = 2, std::size_t max_files = 3)
{
    auto pick = [&](std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    };
    NetworkDims d{pick(1, max_rrhs), pick(1, max_rrbs), pick(1, max_users), pick(1, max_files)};
    std::vector<double> rates(d.num_links());
    std::bernoulli_distribution coarse(0.4);
    for (double& r : rates) {
        // a small alphabet makes ties, and therefore coding, common
        r = coarse(rng) ? static_cast<double>(pick(0, 2)) : dyadic_rate(rng, true);
    }
    std::vector<FileSet> has(d.num_users), wants(d.num_users);
    for (std::size_t u = 0; u < d.num_users; ++u) {
        for (std::size_t f = 0; f < d.num_files; ++f) {
            switch (pick(0, 2)) {
            case 0: has[u].insert(f); break;
            case 1: wants[u].insert(f); break;
            default: break;
            }
        }
    }
    return Instance{d, CapacityMatrix(d, std::move(rates)), SideInformation(d.num_files, has, wants), 1000.0};
}

inline WeightedGraph random_graph(std::mt19937_64& rng, std::size_t n, double density, bool integer_weights)
{
    std::vector<double> w(n);
    for (double& x : w) {
        x = integer_weights ? static_cast<double>(std::uniform_int_distribution<int>(1, 9)(rng))
                            : dyadic_rate(rng, false);
    }
    WeightedGraph g(std::move(w));
    std::bernoulli_distribution edge(density);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            if (edge(rng)) {
                g.add_edge(a, b);
            }
        }
    }
    return g;
}

// power-set enumeration, n <= 20
inline double brute_force_clique_weight(const WeightedGraph& g)
{
    const std::size_t n = g.size();
    double best = 0.0;
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
        bool ok = true;
        double w = 0.0;
        for (std::size_t a = 0; a < n && ok; ++a) {
            if (!((mask >> a) & 1U)) {
                continue;
            }
            w += g.weight(a);
            for (std::size_t b = a + 1; b < n; ++b) {
                if (((mask >> b) & 1U) && !g.adjacent(a, b)) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok && w > best) {
            best = w;
        }
    }
    return best;
}

inline bool is_maximal_clique(const WeightedGraph& g, const std::vector<std::size_t>& members)
{
    if (!is_clique(g, members)) {
        return false;
    }
    for (std::size_t v = 0; v < g.size(); ++v) {
        bool extends = true;
        for (std::size_t m : members) {
            if (m == v || !g.adjacent(m, v)) {
                extends = false;
                break;
            }
        }
        if (extends) {
            return false;
        }
    }
    return true;
}

// Sum rate of the best schedule by direct enumeration: each user is either
// unserved or attached to one RRH, and on every RRB of that RRH the best
// coded transmission over its attached users is picked independently.
inline double independent_best_sum_rate(const Instance& inst)
{
    const NetworkDims& d = inst.dims;
    const SideInformation& si = inst.side_info;
    std::vector<std::size_t> attach(d.num_users, 0);  // 0 = none, b+1 otherwise
    double best = 0.0;
    while (true) {
        double total = 0.0;
        for (std::size_t b = 0; b < d.num_rrhs; ++b) {
            for (std::size_t z = 0; z < d.num_rrbs_per_rrh; ++z) {
                double rrb_best = 0.0;
                for (std::uint64_t kmask = 1; kmask < (std::uint64_t{1} << d.num_files); ++kmask) {
                    const EncodedFile k{FileSet(kmask)};
                    for (std::size_t ru = 0; ru < d.num_users; ++ru) {
                        const double r = inst.capacities.rate(b, z, ru);
                        if (r <= 0.0) {
                            continue;
                        }
                        std::size_t served = 0;
                        for (std::size_t u = 0; u < d.num_users; ++u) {
                            if (attach[u] == b + 1 && inst.capacities.rate(b, z, u) >= r &&
                                is_instantly_decodable(k, u, si)) {
                                ++served;
                            }
                        }
                        rrb_best = std::max(rrb_best, r * static_cast<double>(served));
                    }
                }
                total += rrb_best;
            }
        }
        best = std::max(best, total);
        std::size_t i = 0;
        while (i < d.num_users && ++attach[i] > d.num_rrhs) {
            attach[i] = 0;
            ++i;
        }
        if (i == d.num_users) {
            break;
        }
    }
    return best;
}

} // namespace testsupport
