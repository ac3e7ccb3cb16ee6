#include <gtest/gtest.h>

#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "cranidnc/fixtures.hpp"
#include "cranidnc/graph.hpp"
#include "support.hpp"

using namespace cranidnc;

namespace {

std::optional<std::size_t> decoded_file_or(const EncodedFile& k, std::size_t u, const SideInformation& si)
{
    if (!is_instantly_decodable(k, u, si)) return std::nullopt;
    return decoded_file(k, u, si);
}

} // namespace

TEST(Graph, CandidateRatesExample)
{
    NetworkDims d{1, 1, 4, 1};
    CapacityMatrix cm(d, {2.0, 1.0, 2.0, 0.5});
    EXPECT_EQ(candidate_rates(0, 0, 0, cm), (std::vector<double>{0.5, 1.0, 2.0}));
    EXPECT_EQ(candidate_rates(0, 0, 1, cm), (std::vector<double>{0.5, 1.0}));
    EXPECT_EQ(candidate_rates(0, 0, 3, cm), (std::vector<double>{0.5}));
}

TEST(Graph, CandidateRatesZeroCapacityUserHasNone)
{
    NetworkDims d{1, 1, 2, 1};
    CapacityMatrix cm(d, {0.0, 3.0});
    EXPECT_TRUE(candidate_rates(0, 0, 0, cm).empty());
    EXPECT_EQ(candidate_rates(0, 0, 1, cm), std::vector<double>{3.0});
}

TEST(Graph, CandidateRatesMatchFilterOnRandomInputs)
{
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 300; ++trial) {
        const Instance inst = testsupport::random_tiny_instance(rng, 4, 2, 2, 3);
        const auto& d = inst.dims;
        for (std::size_t b = 0; b < d.num_rrhs; ++b)
            for (std::size_t z = 0; z < d.num_rrbs_per_rrh; ++z)
                for (std::size_t u = 0; u < d.num_users; ++u) {
                    std::set<double> want;
                    for (std::size_t o = 0; o < d.num_users; ++o) {
                        const double r = inst.capacities.rate(b, z, o);
                        if (r > 0 && r <= inst.capacities.rate(b, z, u)) want.insert(r);
                    }
                    const auto got = candidate_rates(b, z, u, inst.capacities);
                    EXPECT_EQ(got, std::vector<double>(want.begin(), want.end()));
                }
    }
}

TEST(Graph, LocalAdjacencyRules)
{
    const auto si = fixtures::two_rrh_uniform().side_info;
    Vertex a{0, 0, 0, 0, 0, 1.0};
    Vertex b{1, 0, 0, 1, 1, 1.0};
    Vertex c{2, 0, 0, 2, 2, 1.0};
    Vertex b_slow{3, 0, 0, 1, 1, 0.5};
    EXPECT_TRUE(lc_adjacent(a, b, si));      // swapped side information
    EXPECT_FALSE(lc_adjacent(a, c, si));     // user 2 holds nothing
    EXPECT_FALSE(lc_adjacent(a, b_slow, si)); // rates differ
    Vertex same_file{4, 0, 0, 2, 0, 1.0};
    EXPECT_TRUE(lc_adjacent(a, same_file, si));
    Vertex other_rrb{5, 1, 0, 1, 1, 1.0};
    EXPECT_THROW(lc_adjacent(a, other_rrb, si), ContractViolation);
}

TEST(Graph, GlobalAdjacencyIsConnectivityConstraint)
{
    const auto si = fixtures::two_rrh_uniform().side_info;
    Vertex u0_rrh0{0, 0, 0, 0, 0, 1.0};
    Vertex u0_rrh1{1, 1, 0, 0, 0, 1.0};
    Vertex u1_rrh1{2, 1, 0, 1, 1, 1.0};
    EXPECT_FALSE(gc_adjacent(u0_rrh0, u0_rrh1, si)); // one user on two RRHs
    EXPECT_TRUE(gc_adjacent(u0_rrh0, u1_rrh1, si));
    EXPECT_THROW(gc_adjacent(u0_rrh0, u0_rrh0, si), ContractViolation);

    Vertex z0{0, 0, 0, 0, 0, 1.0};
    Vertex z1{1, 0, 1, 0, 0, 1.0};
    EXPECT_TRUE(gc_adjacent(z0, z1, SideInformation(1, {FileSet{}}, {FileSet{0}})));
}

// Every edge decision re-derived from the definitions of joint decodability
// and single-RRH association.
TEST(Graph, EdgesMatchDirectDefinition)
{
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 200; ++trial) {
        const Instance inst = testsupport::random_tiny_instance(rng, 4, 2, 2, 3);
        const CranGraph g = build_graph(inst.capacities, inst.side_info, inst.dims);
        const auto& si = inst.side_info;
        for (const Vertex& v : g.vertices) {
            EXPECT_TRUE(si.wants(v.u).contains(v.f));
            EXPECT_GT(v.r, 0.0);
            EXPECT_LE(v.r, inst.capacities.rate(v.b, v.z, v.u));
            EXPECT_EQ(g.graph.weight(v.id), v.r);
        }
        for (const Vertex& v : g.vertices) {
            for (const Vertex& w : g.vertices) {
                if (v.id == w.id) continue;
                bool want;
                if (v.same_rrb(w)) {
                    const FileSet k = FileSet::single(v.f) | FileSet::single(w.f);
                    want = v.r == w.r && v.u != w.u &&
                           decoded_file_or(EncodedFile(k), v.u, si) == v.f &&
                           decoded_file_or(EncodedFile(k), w.u, si) == w.f;
                    // the same user twice on one RRB is never a valid pair
                    if (v.u == w.u) want = false;
                } else {
                    want = v.u != w.u || v.b == w.b;
                }
                EXPECT_EQ(g.adjacent(v.id, w.id), want)
                    << "vertices " << v.id << " and " << w.id << " trial " << trial;
            }
        }
    }
}

TEST(Graph, VertexOrderAndCount)
{
    const Instance inst = fixtures::two_rrh_asymmetric();
    const CranGraph g = build_graph(inst.capacities, inst.side_info, inst.dims);
    // rrh 0 rates {1,3,2}: users get 1, 3, 2 candidates; rrh 1 rates {2,1,2}: 2, 1, 2
    EXPECT_EQ(g.size(), 11U);
    for (std::size_t i = 1; i < g.size(); ++i) {
        const auto& p = g.vertices[i - 1];
        const auto& q = g.vertices[i];
        EXPECT_LT(std::tie(p.b, p.z, p.u, p.f, p.r), std::tie(q.b, q.z, q.u, q.f, q.r));
        EXPECT_EQ(q.id, i);
    }
}

TEST(Graph, NoVerticesWithoutRequests)
{
    NetworkDims d{1, 1, 2, 2};
    SideInformation si(2, {FileSet{0, 1}, FileSet{0}}, {FileSet{}, FileSet{}});
    EXPECT_EQ(build_graph(CapacityMatrix::uniform(d, 1.0), si, d).size(), 0U);
}

TEST(Graph, ShapeMismatchThrows)
{
    NetworkDims d{1, 1, 2, 2};
    SideInformation si(2, {FileSet{}}, {FileSet{0}});
    EXPECT_THROW(build_graph(CapacityMatrix::uniform(d, 1.0), si, d), MissingData);
}

TEST(Graph, DimacsDumpRoundTrip)
{
    const Instance inst = fixtures::two_rrh_asymmetric();
    const CranGraph g = build_graph(inst.capacities, inst.side_info, inst.dims);
    std::stringstream ss;
    write_graph_dimacs(ss, g);
    const std::string text = ss.str();
    EXPECT_NE(text.find("p edge 11 "), std::string::npos);
    EXPECT_NE(text.find("c v 1 0 0 0 0 1\n"), std::string::npos);
    const WeightedGraph back = read_dimacs(ss);
    ASSERT_EQ(back.size(), g.size());
    EXPECT_EQ(back.edge_count(), g.graph.edge_count());
    for (std::size_t v = 0; v < g.size(); ++v) EXPECT_EQ(back.weight(v), g.vertices[v].r);
}
