#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <hardhom/gadgets.hpp>
#include <hardhom/solver.hpp>

#include <algorithm>
#include <set>

using namespace hardhom;

TEST_CASE("build_D structure")
{
    auto d = build_D();
    CHECK(d.graph.size() == 6);
    CHECK(d.graph.edge_count() == 10);
    int z = d.mark("z");
    CHECK(d.graph.degree(z) == 5);
    std::vector<int> xs;
    for (int i = 1; i <= 5; ++i)
        xs.push_back(d.mark("x" + std::to_string(i)));
    for (int x : xs) {
        CHECK(d.graph.degree(x) == 3);
        CHECK(d.graph.adjacent(z, x));
    }
    for (int i = 0; i < 5; ++i)
        CHECK(d.graph.adjacent(xs[i], xs[(i + 1) % 5]));
}

TEST_CASE("D rigidity: all 10 self-homomorphisms fix z")
{
    auto d = build_D();
    auto inst = ListHomInstance::full_lists(d.graph, d.graph);
    auto all = enumerate_all(inst, Mode::Plain, 1000);
    CHECK(! all.truncated);
    CHECK(all.witnesses.size() == 10);
    int z = d.mark("z");
    for (auto & w : all.witnesses) {
        CHECK(w.map[z] == z);
        for (int v = 0; v < 6; ++v)
            if (v != z)
                CHECK(w.map[v] != z);
    }
}

TEST_CASE("build_T structure")
{
    auto t1 = build_T(1);
    CHECK(t1.graph.size() == 11);
    CHECK(t1.marks.count("z1") == 1);
    CHECK(t1.marks.count("z2") == 0);

    auto t3 = build_T(3);
    CHECK(t3.graph.size() == 21);
    for (int i = 1; i <= 3; ++i)
        CHECK(t3.marks.count("z" + std::to_string(i)) == 1);

    CHECK_THROWS(build_T(0));
}

TEST_CASE("T_k rigidity: self-homomorphisms fix every z_i")
{
    for (int k = 1; k <= 3; ++k) {
        auto t = build_T(k);
        auto inst = ListHomInstance::full_lists(t.graph, t.graph);
        std::vector<int> zs;
        for (int i = 1; i <= k; ++i)
            zs.push_back(t.mark("z" + std::to_string(i)));
        long count = 0, violations = 0;
        for_each_witness(inst, Mode::Plain, [&](const Homomorphism & w) {
            ++count;
            for (int zi : zs)
                if (w.map[zi] != zi)
                    ++violations;
            return true;
        });
        CHECK(count > 0);
        CHECK(violations == 0);
    }
}

TEST_CASE("build_T_clique structure")
{
    auto g11 = build_T_clique(1, 1);
    CHECK(g11.graph.size() == 17);

    auto g33 = build_T_clique(3, 3);
    CHECK(g33.graph.size() == 41);

    for (int k = 1; k <= 3; ++k)
        for (int t = 1; t <= 3; ++t) {
            auto g = build_T_clique(k, t);
            CHECK(g.graph.size() == (t + 8) + k * (t + 7));
            for (int j = 1; j <= k + 1; ++j) {
                auto & clique = g.mark_list("clique" + std::to_string(j));
                auto & cycle = g.mark_list("cycle" + std::to_string(j));
                CHECK(int(clique.size()) == t + 3);
                CHECK(cycle.size() == 5);
                // Clique pairwise adjacent and fully joined to its cycle.
                for (std::size_t a = 0; a < clique.size(); ++a)
                    for (std::size_t b = a + 1; b < clique.size(); ++b)
                        CHECK(g.graph.adjacent(clique[a], clique[b]));
                for (int q : clique)
                    for (int c : cycle)
                        CHECK(g.graph.adjacent(q, c));
                for (int i = 0; i < 5; ++i)
                    CHECK(g.graph.adjacent(cycle[i], cycle[(i + 1) % 5]));
            }
            // z_j is the x1-vertex of cycle j and a member of clique j+1.
            for (int j = 1; j <= k; ++j) {
                int zj = g.mark("z" + std::to_string(j));
                auto & cycle = g.mark_list("cycle" + std::to_string(j));
                auto & next = g.mark_list("clique" + std::to_string(j + 1));
                CHECK(cycle[0] == zj);
                CHECK(std::count(next.begin(), next.end(), zj) == 1);
            }
        }
}

TEST_CASE("T_clique rigidity: blocks map to themselves and z_i is fixed")
{
    for (int k = 1; k <= 2; ++k)
        for (int t = 1; t <= 2; ++t) {
            auto g = build_T_clique(k, t);
            auto inst = ListHomInstance::full_lists(g.graph, g.graph);
            int n = g.graph.size();
            std::vector<int> zs;
            for (int i = 1; i <= k; ++i)
                zs.push_back(g.mark("z" + std::to_string(i)));
            // block_of[v] = block index; shared z_j vertices belong to both
            // blocks j and j+1, tracked separately.
            std::vector<std::vector<char>> in_block(k + 1, std::vector<char>(n, 0));
            std::vector<std::vector<int>> cliques, blocks;
            for (int j = 1; j <= k + 1; ++j) {
                auto & clique = g.mark_list("clique" + std::to_string(j));
                auto & cycle = g.mark_list("cycle" + std::to_string(j));
                cliques.push_back(clique);
                std::vector<int> block = clique;
                block.insert(block.end(), cycle.begin(), cycle.end());
                blocks.push_back(block);
                for (int v : block)
                    in_block[j - 1][v] = 1;
            }
            long count = 0, violations = 0;
            std::vector<char> seen(n, 0);
            for_each_witness(inst, Mode::Plain, [&](const Homomorphism & w) {
                ++count;
                for (int zi : zs)
                    if (w.map[zi] != zi)
                        ++violations;
                for (int j = 0; j <= k; ++j) {
                    for (int v : blocks[j])
                        if (! in_block[j][w.map[v]])
                            ++violations;
                    // Cliques map onto cliques: clique images pairwise
                    // distinct because clique vertices are pairwise adjacent.
                    for (int v : cliques[j])
                        seen[w.map[v]] = 0;
                    for (int v : cliques[j])
                        if (seen[w.map[v]]++)
                            ++violations;
                    for (int v : cliques[j])
                        seen[w.map[v]] = 0;
                }
                return true;
            });
            CHECK(count > 0);
            CHECK(violations == 0);
        }
}

TEST_CASE("no stray (t+3)-cliques outside the Q_j blocks")
{
    // Every clique of size t+3 must lie inside one block (its Q_j possibly
    // swapped with joined cycle vertices); cross-block (t+3)-cliques must
    // not exist. Checked by enumerating all (t+3)-subsets for small sizes.
    for (int k = 1; k <= 2; ++k) {
        int t = 1;
        auto g = build_T_clique(k, t);
        int n = g.graph.size();
        int need = t + 3;
        std::vector<std::set<int>> blocks;
        for (int j = 1; j <= k + 1; ++j) {
            auto & clique = g.mark_list("clique" + std::to_string(j));
            auto & cycle = g.mark_list("cycle" + std::to_string(j));
            std::set<int> b(clique.begin(), clique.end());
            b.insert(cycle.begin(), cycle.end());
            blocks.push_back(b);
        }
        std::vector<int> pick(need);
        auto is_clique = [&](const std::vector<int> & vs) {
            for (std::size_t a = 0; a < vs.size(); ++a)
                for (std::size_t b = a + 1; b < vs.size(); ++b)
                    if (! g.graph.adjacent(vs[a], vs[b]))
                        return false;
            return true;
        };
        std::function<void(int, int)> rec = [&](int pos, int from) {
            if (pos == need) {
                if (is_clique(pick)) {
                    bool inside = false;
                    for (auto & b : blocks)
                        if (std::all_of(pick.begin(), pick.end(),
                                [&](int v) { return b.count(v) == 1; }))
                            inside = true;
                    CHECK(inside);
                }
                return;
            }
            for (int v = from; v < n; ++v) {
                pick[pos] = v;
                rec(pos + 1, v + 1);
            }
        };
        rec(0, 0);
    }
}

TEST_CASE("build_A")
{
    auto a1 = build_A(1);
    CHECK(a1.graph.size() == 2);
    CHECK(a1.graph.edge_count() == 1);
    CHECK(a1.graph.adjacent(a1.mark("a1"), a1.mark("b1")));

    auto a3 = build_A(3);
    CHECK(a3.graph.size() == 6);
    CHECK(a3.graph.edge_count() == 3);
    for (int i = 1; i <= 3; ++i) {
        CHECK(a3.graph.adjacent(a3.mark("a" + std::to_string(i)),
            a3.mark("b" + std::to_string(i))));
        for (int j = i + 1; j <= 3; ++j)
            CHECK(! a3.graph.adjacent(a3.mark("a" + std::to_string(i)),
                a3.mark("a" + std::to_string(j))));
    }

    CHECK_THROWS(build_A(0));
}

TEST_CASE("chain_coloring")
{
    for (auto [k, t] : {std::pair{1, 1}, {2, 2}, {3, 1}, {2, 3}}) {
        auto g = build_T_clique(k, t);
        auto c = chain_coloring(g, t);
        CHECK(c.is_proper(g.graph));
        CHECK(c.k <= t + 8);
    }
}

TEST_CASE("mark accessors")
{
    auto d = build_D();
    CHECK_THROWS(d.mark("nonsense"));
    CHECK_THROWS(d.mark_list("nonsense"));
}
