#pragma once

// Two hand-checkable instances: 2 RRHs with one RRB each, 3 users, 3 files,
// user u wanting file u.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cranidnc/channel.hpp"
#include "cranidnc/graph.hpp"
#include "cranidnc/schedule.hpp"
#include "cranidnc/side_info.hpp"

namespace cranidnc::fixtures {

inline constexpr NetworkDims kTwoRrhDims{2, 1, 3, 3};

/// All capacities 1; users 0 and 1 hold each other's file, user 2 holds
/// nothing. Best coded sum rate 3, best uncoded 2.
inline Instance two_rrh_uniform()
{
    SideInformation si(3, {FileSet{1}, FileSet{0}, FileSet{}}, {FileSet{0}, FileSet{1}, FileSet{2}});
    return Instance{kTwoRrhDims, CapacityMatrix::uniform(kTwoRrhDims, 1.0), std::move(si), 1.0e6};
}

/// Unequal capacities, every user holding both files it does not want.
/// Rates by (rrh, user): rrh 0 -> {1, 3, 2}, rrh 1 -> {2, 1, 2}.
/// Best sum rate 7: user 1 alone on rrh 0 at 3, users 0 and 2 coded on rrh 1 at 2.
inline Instance two_rrh_asymmetric()
{
    std::vector<double> rates(kTwoRrhDims.num_links());
    const double table[2][3] = {{1.0, 3.0, 2.0}, {2.0, 1.0, 2.0}};
    for (std::size_t b = 0; b < 2; ++b) {
        for (std::size_t u = 0; u < 3; ++u) {
            rates[link_index(kTwoRrhDims, b, 0, u)] = table[b][u];
        }
    }
    SideInformation si(3, {FileSet{1, 2}, FileSet{0, 2}, FileSet{0, 1}}, {FileSet{0}, FileSet{1}, FileSet{2}});
    return Instance{kTwoRrhDims, CapacityMatrix(kTwoRrhDims, std::move(rates)), std::move(si), 1.0e6};
}

/// Vertex id for a 1-based five-digit label "bzufr" (rate as an integer),
/// the labelling used when drawing the asymmetric instance's graph.
inline std::optional<std::size_t> vertex_by_label(const CranGraph& g, const std::string& label)
{
    if (label.size() != 5) {
        return std::nullopt;
    }
    const std::size_t b = static_cast<std::size_t>(label[0] - '1');
    const std::size_t z = static_cast<std::size_t>(label[1] - '1');
    const std::size_t u = static_cast<std::size_t>(label[2] - '1');
    const std::size_t f = static_cast<std::size_t>(label[3] - '1');
    const double r = static_cast<double>(label[4] - '0');
    for (const Vertex& v : g.vertices) {
        if (v.b == b && v.z == z && v.u == u && v.f == f && v.r == r) {
            return v.id;
        }
    }
    return std::nullopt;
}

struct LabelledClique {
    std::vector<std::string> labels;
    double weight;
};

/// The seven cliques listed for the asymmetric instance and their weights.
inline const std::vector<LabelledClique>& asymmetric_listed_cliques()
{
    static const std::vector<LabelledClique> cliques = {
        {{"11111", "21221"}, 2.0},
        {{"21332", "11111"}, 3.0},
        {{"21221", "11332"}, 3.0},
        {{"21111", "21221", "21331"}, 3.0},
        {{"11111", "11221", "11331"}, 3.0},
        {{"21112", "11222", "11332"}, 6.0},
        {{"11223", "21112", "21332"}, 7.0},
    };
    return cliques;
}

} // namespace cranidnc::fixtures
