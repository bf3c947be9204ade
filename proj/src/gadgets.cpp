#include <hardhom/gadgets.hpp>

#include <stdexcept>

using std::string;
using std::vector;

namespace hardhom
{

auto GadgetGraph::mark(const string & role) const -> int
{
    auto it = marks.find(role);
    if (it == marks.end() || it->second.size() != 1)
        throw std::invalid_argument{"no single-vertex mark named " + role};
    return it->second.front();
}

auto GadgetGraph::mark_list(const string & role) const -> const vector<int> &
{
    auto it = marks.find(role);
    if (it == marks.end())
        throw std::invalid_argument{"no mark named " + role};
    return it->second;
}

auto build_D() -> GadgetGraph
{
    GadgetGraph d;
    d.graph = Graph(6);
    for (int i = 0; i < 5; ++i) {
        d.graph.add_edge(i, (i + 1) % 5);
        d.graph.add_edge(5, i);
    }
    d.marks["z"] = {5};
    for (int i = 0; i < 5; ++i)
        d.marks["x" + std::to_string(i + 1)] = {i};
    return d;
}

auto build_T(int k) -> GadgetGraph
{
    if (k < 1)
        throw std::invalid_argument{"k must be at least 1"};

    GadgetGraph t;
    t.graph = Graph(5 * k + 6);
    // Block j (1-based) has cycle vertices 5(j-1)+1 .. 5(j-1)+5; the apex of
    // block 1 is vertex 0, and the apex of block j+1 is the x1-vertex of
    // block j.
    auto cycle_base = [](int j) { return 5 * (j - 1) + 1; };
    for (int j = 1; j <= k + 1; ++j) {
        int base = cycle_base(j);
        int apex = (j == 1) ? 0 : cycle_base(j - 1);
        vector<int> cycle;
        for (int i = 0; i < 5; ++i) {
            t.graph.add_edge(base + i, base + (i + 1) % 5);
            t.graph.add_edge(apex, base + i);
            cycle.push_back(base + i);
        }
        t.marks["cycle" + std::to_string(j)] = cycle;
    }
    for (int i = 1; i <= k; ++i)
        t.marks["z" + std::to_string(i)] = {cycle_base(i)};
    return t;
}

auto build_T_clique(int k, int t) -> GadgetGraph
{
    if (k < 1 || t < 1)
        throw std::invalid_argument{"k and t must be at least 1"};

    GadgetGraph g;
    g.graph = Graph((t + 8) + k * (t + 7));

    int next = 0;
    int prev_x1 = -1;
    for (int j = 1; j <= k + 1; ++j) {
        // Clique j: t+3 vertices; from block 2 on, the previous block's
        // x1-vertex is absorbed as one member.
        vector<int> clique;
        if (j > 1)
            clique.push_back(prev_x1);
        while (int(clique.size()) < t + 3)
            clique.push_back(next++);
        for (std::size_t a = 0; a < clique.size(); ++a)
            for (std::size_t b = a + 1; b < clique.size(); ++b)
                g.graph.add_edge(clique[a], clique[b]);

        vector<int> cycle;
        for (int i = 0; i < 5; ++i)
            cycle.push_back(next++);
        for (int i = 0; i < 5; ++i)
            g.graph.add_edge(cycle[i], cycle[(i + 1) % 5]);
        for (int q : clique)
            for (int c : cycle)
                g.graph.add_edge(q, c);

        g.marks["clique" + std::to_string(j)] = clique;
        g.marks["cycle" + std::to_string(j)] = cycle;
        if (j <= k)
            g.marks["z" + std::to_string(j)] = {cycle.front()};
        prev_x1 = cycle.front();
    }
    return g;
}

auto build_A(int h) -> GadgetGraph
{
    if (h < 1)
        throw std::invalid_argument{"h must be at least 1"};
    GadgetGraph a;
    a.graph = Graph(2 * h);
    for (int i = 1; i <= h; ++i) {
        a.graph.add_edge(2 * (i - 1), 2 * (i - 1) + 1);
        a.marks["a" + std::to_string(i)] = {2 * (i - 1)};
        a.marks["b" + std::to_string(i)] = {2 * (i - 1) + 1};
    }
    return a;
}

auto chain_coloring(const GadgetGraph & t_gadget, int t) -> VertexColoring
{
    int blocks = 0;
    while (t_gadget.marks.count("cycle" + std::to_string(blocks + 1)))
        ++blocks;
    if (blocks < 2 || t < 1)
        throw std::invalid_argument{"not a T_{k,t+3} gadget"};
    for (int j = 1; j <= blocks; ++j) {
        if (int(t_gadget.mark_list("clique" + std::to_string(j)).size()) != t + 3
            || t_gadget.mark_list("cycle" + std::to_string(j)).size() != 5)
            throw std::invalid_argument{"not a T_{k,t+3} gadget for this t"};
        if (j < blocks && t_gadget.mark("z" + std::to_string(j))
                != t_gadget.mark_list("cycle" + std::to_string(j)).front())
            throw std::invalid_argument{"not a T_{k,t+3} gadget"};
    }

    VertexColoring result{vector<int>(t_gadget.graph.size(), 0), 0};

    // Left-to-right sweep. Cliques use low colours plus the colour the
    // shared vertex already carries; each 5-cycle takes three of the high
    // colours t+3..t+6 not used by its own clique.
    for (int j = 1; j <= blocks; ++j) {
        auto & clique = t_gadget.mark_list("clique" + std::to_string(j));
        int shared_color = 0;
        int low = 1;
        for (int v : clique) {
            if (result.colors[v]) {
                shared_color = result.colors[v];
                continue;
            }
            result.colors[v] = low++;
        }

        auto & cycle = t_gadget.mark_list("cycle" + std::to_string(j));
        vector<int> palette;
        for (int c = t + 3; c <= t + 6 && int(palette.size()) < 3; ++c)
            if (c != shared_color && (j > 1 || c != t + 3))
                palette.push_back(c);
        int pattern[5] = {palette[0], palette[1], palette[0], palette[1], palette[2]};
        for (int i = 0; i < 5; ++i)
            result.colors[cycle[i]] = pattern[i];
    }
    for (int c : result.colors)
        result.k = std::max(result.k, c);

    if (! result.is_proper(t_gadget.graph) || result.k > t + 8)
        throw std::logic_error{"chain colouring failed"};
    return result;
}

}
