#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <hardhom/graph_core.hpp>

#include "oracles.hpp"

#include <algorithm>
#include <set>

using namespace hardhom;

namespace
{
    auto path_graph(int n) -> Graph
    {
        Graph g(n);
        for (int v = 0; v + 1 < n; ++v)
            g.add_edge(v, v + 1);
        return g;
    }

    auto cycle_graph(int n) -> Graph
    {
        auto g = path_graph(n);
        g.add_edge(n - 1, 0);
        return g;
    }

    auto complete_graph(int n) -> Graph
    {
        Graph g(n);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                g.add_edge(u, v);
        return g;
    }

    auto star_graph(int leaves) -> Graph
    {
        Graph g(leaves + 1);
        for (int v = 1; v <= leaves; ++v)
            g.add_edge(0, v);
        return g;
    }
}

TEST_CASE("graph basics")
{
    auto g = path_graph(3);
    CHECK(g.size() == 3);
    CHECK(g.edge_count() == 2);
    CHECK(g.adjacent(0, 1));
    CHECK(g.adjacent(1, 0));
    CHECK(! g.adjacent(0, 2));
    CHECK(g.degree(1) == 2);
    CHECK(g.max_degree() == 2);
    CHECK(g.edges() == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});

    CHECK_THROWS_AS(g.add_edge(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(0, 3), std::invalid_argument);
}

TEST_CASE("edges are lexicographic")
{
    Graph g(4);
    g.add_edge(2, 3);
    g.add_edge(0, 3);
    g.add_edge(0, 1);
    auto e = g.edges();
    CHECK(std::is_sorted(e.begin(), e.end()));
}

TEST_CASE("square")
{
    CHECK(square(complete_graph(2)) == complete_graph(2));
    CHECK(square(path_graph(3)) == complete_graph(3));
    CHECK(square(cycle_graph(5)) == complete_graph(5));
}

TEST_CASE("square equals distance <= 2, BFS cross-check")
{
    for (unsigned seed = 0; seed < 30; ++seed) {
        auto g = random_graph_max_degree(12, 4, seed);
        auto sq = square(g);
        for (int u = 0; u < g.size(); ++u) {
            auto dist = oracles::bfs_distances(g, u);
            for (int v = 0; v < g.size(); ++v)
                if (u != v)
                    CHECK(sq.adjacent(u, v) == (dist[v] == 1 || dist[v] == 2));
        }
    }
}

TEST_CASE("greedy_coloring")
{
    auto c4 = greedy_coloring(complete_graph(4));
    CHECK(c4.k == 4);
    CHECK(c4.is_proper(complete_graph(4)));

    auto ce = greedy_coloring(Graph(3));
    CHECK(ce.k == 1);
    CHECK(ce.colors == std::vector<int>{1, 1, 1});

    auto c5 = greedy_coloring(cycle_graph(5));
    CHECK(c5.k <= 3);
    CHECK(c5.is_proper(cycle_graph(5)));
    CHECK(brute_chromatic(cycle_graph(5), 5) == 3);
}

TEST_CASE("greedy_coloring proper and <= max degree + 1 on random graphs")
{
    for (unsigned seed = 0; seed < 50; ++seed) {
        auto g = random_graph_max_degree(10, 5, seed);
        auto c = greedy_coloring(g);
        CHECK(c.is_proper(g));
        CHECK(c.k <= g.max_degree() + 1);
    }
}

TEST_CASE("build_grouping")
{
    SUBCASE("path, two buckets")
    {
        Partition p{{{0, 1}, {2, 3}}, 2};
        auto gr = build_grouping(path_graph(4), p);
        CHECK(gr.bucket_graph.size() == 2);
        CHECK(gr.bucket_graph.edge_count() == 1);
        CHECK(gr.labels[0] != gr.labels[1]);
    }
    SUBCASE("single bucket drops internal edge")
    {
        Partition p{{{0, 1}}, 2};
        auto gr = build_grouping(complete_graph(2), p);
        CHECK(gr.bucket_graph.size() == 1);
        CHECK(gr.bucket_graph.edge_count() == 0);
    }
    SUBCASE("C4 cross buckets")
    {
        Partition p{{{0, 2}, {1, 3}}, 2};
        auto gr = build_grouping(cycle_graph(4), p);
        CHECK(gr.bucket_graph.size() == 2);
        CHECK(gr.bucket_graph.edge_count() == 1);
    }
    SUBCASE("rejects non-partitions")
    {
        Partition bad{{{0, 1}, {1, 2}}, 2};
        CHECK_THROWS_AS(build_grouping(path_graph(3), bad), std::invalid_argument);
    }
    SUBCASE("neighbour labels pairwise distinct")
    {
        for (unsigned seed = 0; seed < 20; ++seed) {
            auto g = random_graph_max_degree(12, 4, seed);
            Partition p;
            p.r = 3;
            for (int v = 0; v < g.size(); v += 3)
                p.buckets.push_back({v, v + 1, v + 2});
            auto gr = build_grouping(g, p);
            CHECK(gr.labels.size() == gr.bucket_graph.size());
            int dmax = gr.bucket_graph.max_degree();
            CHECK(gr.label_count <= dmax * dmax + 1);
            for (int b = 0; b < gr.bucket_graph.size(); ++b) {
                std::set<int> seen;
                for (int nb : gr.bucket_graph.neighbours(b))
                    CHECK(seen.insert(gr.labels[nb]).second);
            }
        }
    }
}

TEST_CASE("min_vertex_cover")
{
    CHECK(min_vertex_cover(Graph(4)).empty());
    auto star = star_graph(3);
    CHECK(min_vertex_cover(star) == std::vector<int>{0});
    CHECK(min_vertex_cover(path_graph(4)).size() == 2);
}

TEST_CASE("min_vertex_cover agrees with subset brute force")
{
    for (unsigned seed = 0; seed < 60; ++seed) {
        auto g = random_graph_max_degree(10, 6, seed);
        auto cover = min_vertex_cover(g);
        CHECK(is_vertex_cover(g, cover));
        CHECK(int(cover.size()) == oracles::min_cover_size(g));
    }
}

TEST_CASE("is_bipartite")
{
    auto c4 = is_bipartite(cycle_graph(4));
    REQUIRE(c4.has_value());
    CHECK(c4->is_proper(cycle_graph(4)));
    CHECK(! is_bipartite(cycle_graph(5)).has_value());
    CHECK(is_bipartite(Graph(1)).has_value());
}

TEST_CASE("brute_chromatic")
{
    CHECK(brute_chromatic(complete_graph(3), 4) == 3);
    CHECK(brute_chromatic(cycle_graph(5), 4) == 3);
    CHECK(! brute_chromatic(complete_graph(4), 2).has_value());
    CHECK(brute_chromatic(Graph(0), 3) == 0);
}

TEST_CASE("spanning_tree_partition")
{
    SUBCASE("path on 8, r = 4")
    {
        auto p = spanning_tree_partition(path_graph(8), 4);
        CHECK(p.is_partition_of(8));
        for (std::size_t i = 0; i < p.buckets.size(); ++i) {
            CHECK(int(p.buckets[i].size()) <= 4);
            if (i + 1 < p.buckets.size())
                CHECK(int(p.buckets[i].size()) >= 1);
        }
    }
    SUBCASE("whole graph fits in one bucket")
    {
        auto p = spanning_tree_partition(cycle_graph(5), 5);
        CHECK(p.buckets.size() == 1);
        CHECK(p.buckets[0].size() == 5);
    }
    SUBCASE("star K1,5")
    {
        auto p = spanning_tree_partition(star_graph(5), 4);
        CHECK(p.is_partition_of(6));
        for (auto & b : p.buckets)
            CHECK(int(b.size()) <= 4);
    }
    SUBCASE("rejects disconnected input")
    {
        CHECK_THROWS_AS(spanning_tree_partition(Graph(5), 4), std::invalid_argument);
    }
    SUBCASE("size window and connectivity on random connected graphs")
    {
        int tested = 0;
        for (unsigned seed = 0; tested < 20 && seed < 200; ++seed) {
            auto g = random_graph_max_degree(14, 5, seed);
            if (! oracles::is_connected(g) || g.size() == 0)
                continue;
            ++tested;
            int r = 4 + int(seed % 3);
            if (r > g.size())
                r = g.size();
            auto p = spanning_tree_partition(g, r);
            CHECK(p.is_partition_of(g.size()));
            for (std::size_t i = 0; i < p.buckets.size(); ++i) {
                auto & b = p.buckets[i];
                CHECK(int(b.size()) <= r);
                if (i + 1 < p.buckets.size())
                    CHECK(int(b.size()) >= (r + 3) / 4);
                // Bucket must induce a connected subgraph of g.
                Graph sub(int(b.size()));
                for (std::size_t x = 0; x < b.size(); ++x)
                    for (std::size_t y = x + 1; y < b.size(); ++y)
                        if (g.adjacent(b[x], b[y]))
                            sub.add_edge(int(x), int(y));
                CHECK(oracles::is_connected(sub));
            }
        }
        CHECK(tested == 20);
    }
}

TEST_CASE("random_graph_max_degree")
{
    CHECK(random_graph_max_degree(0, 4, 7).size() == 0);
    auto edgeless = random_graph_max_degree(5, 0, 7);
    CHECK(edgeless.size() == 5);
    CHECK(edgeless.edge_count() == 0);
    auto a = random_graph_max_degree(8, 4, 17);
    auto b = random_graph_max_degree(8, 4, 17);
    CHECK(a == b);
    CHECK(a.max_degree() <= 4);
}

TEST_CASE("for_each_proper_coloring visits exactly the proper colorings")
{
    auto g = cycle_graph(4);
    int count = 0;
    std::vector<int> first;
    for_each_proper_coloring(g, 2, [&](const std::vector<int> & c) {
        if (count == 0)
            first = c;
        ++count;
        VertexColoring vc{c, 2};
        CHECK(vc.is_proper(g));
        return true;
    });
    CHECK(count == 2);
    CHECK(first == std::vector<int>{1, 2, 1, 2});

    // K3 with 3 colors: 3! = 6 proper colorings.
    int k3 = 0;
    for_each_proper_coloring(complete_graph(3), 3, [&](const std::vector<int> &) {
        ++k3;
        return true;
    });
    CHECK(k3 == 6);
}
