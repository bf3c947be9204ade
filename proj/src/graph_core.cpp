#include <hardhom/graph_core.hpp>

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

using std::optional;
using std::nullopt;
using std::pair;
using std::vector;

namespace hardhom
{

Graph::Graph(int n) : n_(n), adj_(n), rows_(n, DynBitset(n))
{
    if (n < 0)
        throw std::invalid_argument{"negative vertex count"};
}

auto Graph::from_edges(int n, const vector<pair<int, int>> & edges) -> Graph
{
    Graph g(n);
    for (auto & [u, v] : edges)
        g.add_edge(u, v);
    return g;
}

auto Graph::add_edge(int u, int v) -> void
{
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
        throw std::invalid_argument{"edge endpoint out of range"};
    if (u == v)
        throw std::invalid_argument{"self-loop"};
    if (rows_[u].test(v))
        throw std::invalid_argument{"duplicate edge"};
    rows_[u].set(v);
    rows_[v].set(u);
    adj_[u].insert(std::lower_bound(adj_[u].begin(), adj_[u].end(), v), v);
    adj_[v].insert(std::lower_bound(adj_[v].begin(), adj_[v].end(), u), u);
    ++m_;
}

auto Graph::max_degree() const -> int
{
    int d = 0;
    for (int u = 0; u < n_; ++u)
        d = std::max(d, degree(u));
    return d;
}

auto Graph::edges() const -> vector<pair<int, int>>
{
    vector<pair<int, int>> result;
    result.reserve(m_);
    for (int u = 0; u < n_; ++u)
        for (int v : adj_[u])
            if (u < v)
                result.emplace_back(u, v);
    return result;
}

auto Graph::operator==(const Graph & o) const -> bool
{
    return n_ == o.n_ && m_ == o.m_ && adj_ == o.adj_;
}

auto VertexColoring::is_proper(const Graph & g) const -> bool
{
    if (int(colors.size()) != g.size())
        return false;
    for (int c : colors)
        if (c < 1 || c > k)
            return false;
    for (auto & [u, v] : g.edges())
        if (colors[u] == colors[v])
            return false;
    return true;
}

auto Partition::is_partition_of(int n) const -> bool
{
    vector<char> seen(n, 0);
    for (auto & b : buckets) {
        if (b.empty() || int(b.size()) > r)
            return false;
        for (int v : b) {
            if (v < 0 || v >= n || seen[v])
                return false;
            seen[v] = 1;
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c; });
}

auto LabeledGrouping::bucket_of(int vertex) const -> int
{
    for (int i = 0; i < int(partition.buckets.size()); ++i)
        for (int v : partition.buckets[i])
            if (v == vertex)
                return i;
    throw std::invalid_argument{"vertex in no bucket"};
}

auto LabeledGrouping::position_in_bucket(int vertex) const -> int
{
    auto & b = partition.buckets[bucket_of(vertex)];
    for (int i = 0; i < int(b.size()); ++i)
        if (b[i] == vertex)
            return i + 1;
    throw std::logic_error{"unreachable"};
}

auto square(const Graph & g) -> Graph
{
    Graph result(g.size());
    for (int u = 0; u < g.size(); ++u) {
        DynBitset reach(g.size());
        for (int v : g.neighbours(u)) {
            reach.set(v);
            reach |= g.neighbour_set(v);
        }
        reach.reset(u);
        for (int v = reach.next(u); v != -1; v = reach.next(v))
            result.add_edge(u, v);
    }
    return result;
}

auto greedy_coloring(const Graph & g) -> VertexColoring
{
    VertexColoring c{vector<int>(g.size(), 0), 0};
    for (int u = 0; u < g.size(); ++u) {
        vector<char> used(g.degree(u) + 2, 0);
        for (int v : g.neighbours(u))
            if (v < u && c.colors[v] <= g.degree(u) + 1)
                used[c.colors[v]] = 1;
        int color = 1;
        while (used[color])
            ++color;
        c.colors[u] = color;
        c.k = std::max(c.k, color);
    }
    return c;
}

auto build_grouping(const Graph & g, const Partition & p) -> LabeledGrouping
{
    if (! p.is_partition_of(g.size()))
        throw std::invalid_argument{"not a partition of the vertex set"};

    LabeledGrouping result;
    result.base = g;
    result.partition = p;
    for (auto & b : result.partition.buckets)
        std::sort(b.begin(), b.end());

    int nb = int(p.buckets.size());
    vector<int> owner(g.size());
    for (int i = 0; i < nb; ++i)
        for (int v : result.partition.buckets[i])
            owner[v] = i;

    // Edges internal to a bucket are dropped; buckets are adjacent iff some
    // base edge crosses between them.
    Graph bucket_graph(nb);
    for (auto & [u, v] : g.edges())
        if (owner[u] != owner[v] && ! bucket_graph.adjacent(owner[u], owner[v]))
            bucket_graph.add_edge(owner[u], owner[v]);

    auto labelling = greedy_coloring(square(bucket_graph));
    int dmax = bucket_graph.max_degree();
    if (labelling.k > dmax * dmax + 1)
        throw std::logic_error{"label count exceeds squared-degree bound"};

    result.bucket_graph = std::move(bucket_graph);
    result.labels = std::move(labelling.colors);
    result.label_count = labelling.k;
    return result;
}

namespace
{
    // Branch on a max-degree vertex: either it is in the cover, or all of its
    // neighbours are.
    auto cover_branch(const Graph & g, vector<char> & removed, vector<int> & current,
        vector<int> & best) -> void
    {
        if (! best.empty() && current.size() >= best.size())
            return;

        int pick = -1, pick_deg = -1;
        for (int u = 0; u < g.size(); ++u) {
            if (removed[u])
                continue;
            int d = 0;
            for (int v : g.neighbours(u))
                if (! removed[v])
                    ++d;
            if (d > pick_deg) {
                pick_deg = d;
                pick = u;
            }
        }
        if (pick == -1 || pick_deg == 0) {
            best = current;
            return;
        }

        removed[pick] = 1;
        current.push_back(pick);
        cover_branch(g, removed, current, best);
        current.pop_back();
        removed[pick] = 0;

        vector<int> taken;
        for (int v : g.neighbours(pick))
            if (! removed[v]) {
                removed[v] = 1;
                taken.push_back(v);
            }
        for (int v : taken)
            current.push_back(v);
        removed[pick] = 1;
        cover_branch(g, removed, current, best);
        removed[pick] = 0;
        for (int v : taken) {
            current.pop_back();
            removed[v] = 0;
        }
    }
}

auto min_vertex_cover(const Graph & g) -> vector<int>
{
    vector<char> removed(g.size(), 0);
    vector<int> current, best;
    if (g.edge_count() == 0)
        return {};
    cover_branch(g, removed, current, best);
    std::sort(best.begin(), best.end());
    return best;
}

auto is_vertex_cover(const Graph & g, const vector<int> & cover) -> bool
{
    vector<char> in(g.size(), 0);
    for (int v : cover) {
        if (v < 0 || v >= g.size())
            return false;
        in[v] = 1;
    }
    for (auto & [u, v] : g.edges())
        if (! in[u] && ! in[v])
            return false;
    return true;
}

auto is_bipartite(const Graph & g) -> optional<VertexColoring>
{
    VertexColoring c{vector<int>(g.size(), 0), 2};
    for (int s = 0; s < g.size(); ++s) {
        if (c.colors[s])
            continue;
        c.colors[s] = 1;
        vector<int> queue{s};
        while (! queue.empty()) {
            int u = queue.back();
            queue.pop_back();
            for (int v : g.neighbours(u)) {
                if (! c.colors[v]) {
                    c.colors[v] = 3 - c.colors[u];
                    queue.push_back(v);
                }
                else if (c.colors[v] == c.colors[u])
                    return nullopt;
            }
        }
    }
    return c;
}

auto for_each_proper_coloring(const Graph & g, int k,
    const std::function<bool(const vector<int> &)> & f) -> void
{
    vector<int> colors(g.size(), 0);
    std::function<bool(int)> go = [&](int u) -> bool {
        if (u == g.size())
            return f(colors);
        for (int c = 1; c <= k; ++c) {
            bool ok = true;
            for (int v : g.neighbours(u))
                if (v < u && colors[v] == c) {
                    ok = false;
                    break;
                }
            if (! ok)
                continue;
            colors[u] = c;
            if (! go(u + 1))
                return false;
        }
        colors[u] = 0;
        return true;
    };
    go(0);
}

auto brute_chromatic(const Graph & g, int cap) -> optional<int>
{
    if (g.size() == 0)
        return 0 <= cap ? optional<int>{0} : nullopt;
    for (int k = 1; k <= cap; ++k) {
        bool found = false;
        for_each_proper_coloring(g, k, [&](const vector<int> &) {
            found = true;
            return false;
        });
        if (found)
            return k;
    }
    return nullopt;
}

auto spanning_tree_partition(const Graph & g, int r) -> Partition
{
    if (r < 4)
        throw std::invalid_argument{"r must be at least 4"};
    if (g.max_degree() > 5)
        throw std::invalid_argument{"maximum degree exceeds five"};
    if (r > g.size())
        throw std::invalid_argument{"r exceeds the vertex count"};

    int n = g.size();

    // BFS spanning tree. Rooting at a leaf of the tree keeps every node's
    // child count at most four, which bounds each detached subtree by r.
    vector<int> parent(n, -2);
    vector<vector<int>> children(n);
    vector<int> order;
    parent[0] = -1;
    order.push_back(0);
    for (std::size_t head = 0; head < order.size(); ++head)
        for (int v : g.neighbours(order[head]))
            if (parent[v] == -2) {
                parent[v] = order[head];
                order.push_back(v);
            }
    if (int(order.size()) != n)
        throw std::invalid_argument{"graph is not connected"};

    // Re-root at a tree leaf.
    for (int u = 0; u < n; ++u)
        if (parent[u] >= 0)
            children[parent[u]].push_back(u);
    int root = 0;
    for (int u = 0; u < n; ++u)
        if (children[u].empty() && (parent[u] != -1)) {
            root = u;
            break;
        }
    if (root != 0) {
        // Flip parent pointers along the path root..0, then rebuild children.
        vector<int> path;
        for (int u = root; u != -1; u = parent[u])
            path.push_back(u);
        for (std::size_t i = 0; i + 1 < path.size(); ++i)
            parent[path[i + 1]] = path[i];
        parent[root] = -1;
        for (auto & c : children)
            c.clear();
        for (int u = 0; u < n; ++u)
            if (parent[u] != -1)
                children[parent[u]].push_back(u);
    }

    int threshold = (r + 3) / 4;
    Partition result;
    result.r = r;

    // Peel: while more than r vertices remain, detach the minimal (deepest)
    // subtree of size >= ceil(r/4); the remainder becomes the last bucket.
    vector<char> gone(n, 0);
    int remaining = n;
    while (remaining > r) {
        vector<int> subtree_size(n, 0);
        vector<int> dfs_order;
        {
            vector<int> stack{root};
            while (! stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                dfs_order.push_back(u);
                for (int c : children[u])
                    if (! gone[c])
                        stack.push_back(c);
            }
        }
        for (auto it = dfs_order.rbegin(); it != dfs_order.rend(); ++it) {
            int u = *it;
            subtree_size[u] = 1;
            for (int c : children[u])
                if (! gone[c])
                    subtree_size[u] += subtree_size[c];
        }
        // Deepest node whose subtree reaches the threshold: every child
        // subtree is below it, so the bucket size is at most 1 + 4(t-1) <= r.
        int cut = -1;
        for (int u : dfs_order) {
            if (subtree_size[u] < threshold)
                continue;
            bool minimal = true;
            for (int c : children[u])
                if (! gone[c] && subtree_size[c] >= threshold) {
                    minimal = false;
                    break;
                }
            if (minimal)
                cut = u;
        }
        vector<int> bucket;
        vector<int> stack{cut};
        while (! stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            bucket.push_back(u);
            gone[u] = 1;
            for (int c : children[u])
                if (! gone[c])
                    stack.push_back(c);
        }
        std::sort(bucket.begin(), bucket.end());
        remaining -= int(bucket.size());
        result.buckets.push_back(std::move(bucket));
    }
    if (remaining > 0) {
        vector<int> last;
        for (int u = 0; u < n; ++u)
            if (! gone[u])
                last.push_back(u);
        result.buckets.push_back(std::move(last));
    }
    return result;
}

auto random_graph_max_degree(int n, int dmax, unsigned seed) -> Graph
{
    if (n < 0 || dmax < 0)
        throw std::invalid_argument{"bad generator parameters"};
    Graph g(n);
    vector<pair<int, int>> candidates;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            candidates.emplace_back(u, v);
    std::mt19937 rng(seed);
    std::shuffle(candidates.begin(), candidates.end(), rng);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (auto & [u, v] : candidates) {
        if (g.degree(u) >= dmax || g.degree(v) >= dmax)
            continue;
        if (coin(rng) < 0.6)
            g.add_edge(u, v);
    }
    return g;
}

}
