#ifndef HARDHOM_TESTS_ORACLES_HPP
#define HARDHOM_TESTS_ORACLES_HPP

// Deliberately independent implementations used to cross-check the library:
// everything here is written in the most direct way possible, with no shared
// code beyond the Graph container itself.

#include <hardhom/graph_core.hpp>
#include <hardhom/solver.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <random>
#include <vector>

namespace oracles
{

using hardhom::Graph;

// Plain recursive 3-coloring search, written directly against the adjacency
// structure; finds the lexicographically first proper coloring or nullopt.
inline auto three_color(const Graph & g) -> std::optional<std::vector<int>>
{
    int n = g.size();
    std::vector<int> c(n, 0);
    std::function<bool(int)> go = [&](int v) {
        if (v == n)
            return true;
        for (int color = 1; color <= 3; ++color) {
            bool ok = true;
            for (int w : g.neighbours(v))
                if (w < v && c[w] == color) {
                    ok = false;
                    break;
                }
            if (! ok)
                continue;
            c[v] = color;
            if (go(v + 1))
                return true;
        }
        c[v] = 0;
        return false;
    };
    if (! go(0))
        return std::nullopt;
    return c;
}

// Smallest vertex cover by subset enumeration in increasing cardinality.
inline auto min_cover_size(const Graph & g) -> int
{
    int n = g.size();
    auto edges = g.edges();
    for (int k = 0; k <= n; ++k) {
        std::vector<int> pick(n, 0);
        std::fill(pick.begin(), pick.begin() + k, 1);
        std::sort(pick.begin(), pick.end());
        do {
            bool covers = true;
            for (auto & [u, v] : edges)
                if (! pick[u] && ! pick[v]) {
                    covers = false;
                    break;
                }
            if (covers)
                return k;
        } while (std::next_permutation(pick.begin(), pick.end()));
    }
    return n;
}

inline auto bfs_distances(const Graph & g, int source) -> std::vector<int>
{
    std::vector<int> dist(g.size(), -1);
    std::queue<int> q;
    dist[source] = 0;
    q.push(source);
    while (! q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : g.neighbours(v))
            if (dist[w] == -1) {
                dist[w] = dist[v] + 1;
                q.push(w);
            }
    }
    return dist;
}

inline auto is_connected(const Graph & g) -> bool
{
    if (g.size() == 0)
        return true;
    auto dist = bfs_distances(g, 0);
    return std::find(dist.begin(), dist.end(), -1) == dist.end();
}

// Canonical form: minimum edge list over all vertex permutations. Feasible
// because the corpus stops at n = 6.
inline auto canonical(const Graph & g) -> std::vector<std::pair<int, int>>
{
    int n = g.size();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::pair<int, int>> best;
    bool first = true;
    do {
        std::vector<std::pair<int, int>> relabeled;
        for (auto & [u, v] : g.edges()) {
            int a = perm[u], b = perm[v];
            relabeled.emplace_back(std::min(a, b), std::max(a, b));
        }
        std::sort(relabeled.begin(), relabeled.end());
        if (first || relabeled < best) {
            best = std::move(relabeled);
            first = false;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

// All connected graphs with n vertices and max degree <= dmax, up to
// isomorphism, for every n in [1, max_n].
inline auto small_corpus(int max_n, int dmax) -> std::vector<Graph>
{
    std::vector<Graph> result;
    for (int n = 1; n <= max_n; ++n) {
        std::vector<std::pair<int, int>> slots;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                slots.emplace_back(u, v);
        std::map<std::vector<std::pair<int, int>>, Graph> seen;
        for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << slots.size()); ++mask) {
            Graph g(n);
            for (std::size_t i = 0; i < slots.size(); ++i)
                if (mask >> i & 1)
                    g.add_edge(slots[i].first, slots[i].second);
            if (g.max_degree() > dmax || ! is_connected(g))
                continue;
            seen.emplace(canonical(g), g);
        }
        for (auto & [key, g] : seen)
            result.push_back(g);
    }
    return result;
}

inline auto random_list_hom(std::mt19937 & rng, int max_n, int max_h,
    double keep = 0.7) -> hardhom::ListHomInstance
{
    int n = std::uniform_int_distribution<int>(1, max_n)(rng);
    int h = std::uniform_int_distribution<int>(1, max_h)(rng);
    hardhom::ListHomInstance inst;
    inst.g = hardhom::random_graph_max_degree(n, n, rng());
    inst.h = hardhom::random_graph_max_degree(h, h, rng());
    inst.lists.resize(n);
    std::uniform_real_distribution<double> coin(0, 1);
    for (int v = 0; v < n; ++v)
        for (int u = 0; u < h; ++u)
            if (coin(rng) < keep)
                inst.lists[v].push_back(u);
    return inst;
}

// Extends a list-hom instance with an apex on both sides: the new g-vertex is
// adjacent to every original g-vertex, the new h-vertex to every original
// h-vertex, and the apex list is the singleton {apex_h}. A locally injective
// solve of the result forces global injectivity on the original g-vertices.
inline auto with_apex(const hardhom::ListHomInstance & inst) -> hardhom::ListHomInstance
{
    hardhom::ListHomInstance aug;
    int ng = inst.g.size(), nh = inst.h.size();
    aug.g = Graph(ng + 1);
    for (auto & [u, v] : inst.g.edges())
        aug.g.add_edge(u, v);
    for (int v = 0; v < ng; ++v)
        aug.g.add_edge(v, ng);
    aug.h = Graph(nh + 1);
    for (auto & [u, v] : inst.h.edges())
        aug.h.add_edge(u, v);
    for (int u = 0; u < nh; ++u)
        aug.h.add_edge(u, nh);
    aug.lists = inst.lists;
    if (aug.lists.empty())  // full lists stored implicitly
        for (int v = 0; v < ng; ++v) {
            aug.lists.emplace_back(nh);
            std::iota(aug.lists.back().begin(), aug.lists.back().end(), 0);
        }
    aug.lists.push_back({nh});
    return aug;
}

}

#endif
