#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "cranidnc/clique.hpp"
#include "support.hpp"

using namespace cranidnc;

TEST(Clique, EmptyGraph)
{
    WeightedGraph g;
    EXPECT_TRUE(max_weight_clique_exact(g).members.empty());
    EXPECT_TRUE(max_weight_clique_greedy(g).members.empty());
    EXPECT_EQ(max_weight_clique_exact(g).total_weight, 0.0);
}

TEST(Clique, CompleteGraphTakesEverything)
{
    WeightedGraph g({1.0, 2.0, 3.0, 4.0});
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = a + 1; b < 4; ++b) g.add_edge(a, b);
    const auto e = max_weight_clique_exact(g);
    EXPECT_EQ(e.members, (std::vector<std::size_t>{0, 1, 2, 3}));
    EXPECT_EQ(e.total_weight, 10.0);
    EXPECT_EQ(max_weight_clique_greedy(g).total_weight, 10.0);
}

TEST(Clique, HeavyVertexBeatsLightTriangle)
{
    WeightedGraph g({1.0, 1.0, 1.0, 5.0});
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(0, 2);
    const auto e = max_weight_clique_exact(g);
    EXPECT_EQ(e.members, std::vector<std::size_t>{3});
    EXPECT_EQ(e.total_weight, 5.0);
}

TEST(Clique, GreedyIsolatedVerticesPicksHeaviestLowestId)
{
    WeightedGraph g({2.0, 3.0, 3.0});
    const auto r = max_weight_clique_greedy(g);
    EXPECT_EQ(r.members, std::vector<std::size_t>{1});
}

TEST(Clique, ExactMatchesBruteForce)
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 600; ++trial) {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 13)(rng);
        const double density = std::uniform_real_distribution<double>(0.1, 0.95)(rng);
        const auto g = testsupport::random_graph(rng, n, density, trial % 2 == 0);
        const auto e = max_weight_clique_exact(g);
        const auto gr = max_weight_clique_greedy(g);
        ASSERT_TRUE(is_clique(g, e.members));
        EXPECT_EQ(e.total_weight, testsupport::brute_force_clique_weight(g));
        EXPECT_EQ(e.total_weight, clique_weight(g, e.members));
        EXPECT_LE(gr.total_weight, e.total_weight);
        EXPECT_TRUE(testsupport::is_maximal_clique(g, gr.members));
    }
}

TEST(Clique, DeterministicAcrossCalls)
{
    std::mt19937_64 rng(5);
    const auto g = testsupport::random_graph(rng, 30, 0.5, true);
    const auto a = max_weight_clique_exact(g);
    const auto b = max_weight_clique_exact(g);
    EXPECT_EQ(a.members, b.members);
    EXPECT_EQ(max_weight_clique_greedy(g).members, max_weight_clique_greedy(g).members);
}

TEST(Clique, GraphContracts)
{
    EXPECT_THROW(WeightedGraph({1.0, 0.0}), std::invalid_argument);
    WeightedGraph g({1.0, 1.0});
    EXPECT_THROW(g.add_edge(0, 0), std::invalid_argument);
    EXPECT_THROW(g.add_edge(0, 2), std::out_of_range);
    g.add_edge(0, 1);
    g.add_edge(1, 0);
    EXPECT_EQ(g.edge_count(), 1U);
}

TEST(Clique, DimacsRoundTrip)
{
    std::mt19937_64 rng(9);
    const auto g = testsupport::random_graph(rng, 12, 0.4, false);
    std::stringstream ss;
    write_dimacs(ss, g);
    const auto back = read_dimacs(ss);
    ASSERT_EQ(back.size(), g.size());
    EXPECT_EQ(back.edge_count(), g.edge_count());
    for (std::size_t a = 0; a < g.size(); ++a) {
        EXPECT_EQ(back.weight(a), g.weight(a));
        for (std::size_t b = 0; b < g.size(); ++b) {
            if (a != b) {
                EXPECT_EQ(back.adjacent(a, b), g.adjacent(a, b));
            }
        }
    }
}

TEST(Clique, DimacsReaderDefaultsAndErrors)
{
    std::istringstream plain("c hello\np edge 3 2\ne 1 2\ne 2 3\n");
    const auto g = read_dimacs(plain);
    EXPECT_EQ(g.size(), 3U);
    EXPECT_EQ(g.weight(2), 1.0);
    EXPECT_TRUE(g.adjacent(0, 1));
    EXPECT_FALSE(g.adjacent(0, 2));

    std::istringstream bad("p edge 2 1\ne 1 3\n");
    EXPECT_THROW(read_dimacs(bad), std::invalid_argument);
    std::istringstream missing("e 1 2\n");
    EXPECT_THROW(read_dimacs(missing), std::invalid_argument);
}
