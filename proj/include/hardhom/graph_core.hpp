#ifndef HARDHOM_GRAPH_CORE_HPP
#define HARDHOM_GRAPH_CORE_HPP

#include <hardhom/bitset.hpp>

#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace hardhom
{

// Simple undirected graph on vertices 0..n-1. The index order is the fixed
// total order used everywhere (lexicographic edge iteration, positions of
// vertices inside buckets, greedy colouring scan order).
class Graph
{
public:
    Graph() = default;
    explicit Graph(int n);

    static auto from_edges(int n, const std::vector<std::pair<int, int>> & edges) -> Graph;

    auto size() const -> int { return n_; }
    auto edge_count() const -> int { return m_; }

    // Throws std::invalid_argument on loops, duplicates or out-of-range
    // endpoints.
    auto add_edge(int u, int v) -> void;

    auto adjacent(int u, int v) const -> bool { return rows_[u].test(v); }
    auto neighbours(int u) const -> const std::vector<int> & { return adj_[u]; }
    auto neighbour_set(int u) const -> const DynBitset & { return rows_[u]; }
    auto degree(int u) const -> int { return int(adj_[u].size()); }
    auto max_degree() const -> int;

    // All edges {u, v} with u < v, in lexicographic order of (u, v).
    auto edges() const -> std::vector<std::pair<int, int>>;

    auto operator==(const Graph & o) const -> bool;

private:
    int n_ = 0;
    int m_ = 0;
    std::vector<std::vector<int>> adj_;
    std::vector<DynBitset> rows_;
};

// Colours are 1..k.
struct VertexColoring
{
    std::vector<int> colors;
    int k = 0;

    auto is_proper(const Graph & g) const -> bool;
};

struct Partition
{
    std::vector<std::vector<int>> buckets;
    int r = 0;

    // Disjoint, covering 0..n-1, every bucket nonempty of size <= r.
    auto is_partition_of(int n) const -> bool;
};

struct LabeledGrouping
{
    Graph base;
    Partition partition;
    Graph bucket_graph;
    std::vector<int> labels;
    int label_count = 0;

    auto bucket_of(int vertex) const -> int;
    // 1-based position of vertex inside its bucket (bucket kept sorted).
    auto position_in_bucket(int vertex) const -> int;
};

auto square(const Graph & g) -> Graph;

auto greedy_coloring(const Graph & g) -> VertexColoring;

auto build_grouping(const Graph & g, const Partition & p) -> LabeledGrouping;

auto min_vertex_cover(const Graph & g) -> std::vector<int>;

auto is_vertex_cover(const Graph & g, const std::vector<int> & cover) -> bool;

auto is_bipartite(const Graph & g) -> std::optional<VertexColoring>;

auto brute_chromatic(const Graph & g, int cap) -> std::optional<int>;

auto spanning_tree_partition(const Graph & g, int r) -> Partition;

auto random_graph_max_degree(int n, int dmax, unsigned seed) -> Graph;

// All proper colourings of g with colours from [k], visited in lexicographic
// order of the colour vector; the callback returns false to stop early.
auto for_each_proper_coloring(const Graph & g, int k,
    const std::function<bool(const std::vector<int> &)> & f) -> void;

}

#endif
