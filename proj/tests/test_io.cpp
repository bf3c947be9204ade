#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <hardhom/gadgets.hpp>
#include <hardhom/io.hpp>

#include "oracles.hpp"

#include <random>
#include <sstream>

using namespace hardhom;

namespace
{
    auto complete_graph(int n) -> Graph
    {
        Graph g(n);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                g.add_edge(u, v);
        return g;
    }
}

TEST_CASE("read_graph")
{
    std::istringstream in("c a comment\np graph 3 2\ne 1 2\ne 2 3\n");
    auto g = read_graph(in);
    CHECK(g.size() == 3);
    CHECK(g.adjacent(0, 1));
    CHECK(g.adjacent(1, 2));
    CHECK(! g.adjacent(0, 2));
}

TEST_CASE("read_graph rejects malformed input")
{
    auto fails = [](const std::string & text) {
        std::istringstream in(text);
        CHECK_THROWS_AS(read_graph(in), ParseError);
    };
    fails("");
    fails("p graph 2\n");
    fails("p graph 2 1\n");
    fails("p graph 2 1\ne 1 1\n");
    fails("p graph 2 1\ne 1 3\n");
    fails("p graph 2 2\ne 1 2\ne 1 2\n");
    fails("p graph 2 1\ne 1 2\ne 1 2\n");
    fails("p graph 2 1\ne one 2\n");
}

TEST_CASE("graph round trip")
{
    for (unsigned seed = 0; seed < 30; ++seed) {
        auto g = random_graph_max_degree(9, 4, seed);
        std::ostringstream out;
        write_graph(out, g);
        std::istringstream in(out.str());
        CHECK(read_graph(in) == g);
    }
}

TEST_CASE("bundle round trip")
{
    std::mt19937 rng(3);
    for (int i = 0; i < 30; ++i) {
        auto inst = oracles::random_list_hom(rng, 6, 4);
        std::ostringstream out;
        write_bundle(out, inst);
        std::istringstream in(out.str());
        auto back = read_bundle(in);
        CHECK(back.g == inst.g);
        CHECK(back.h == inst.h);
        // Compare list sets, not representations: an instance whose lists
        // all happen to be full round-trips to the implicit form.
        CHECK(back.list_sets() == inst.list_sets());
    }
}

TEST_CASE("bundle omitted lists mean full")
{
    std::istringstream in("p listhom 2 1 2 1\ng e 1 2\nh e 1 2\nl 1 1 2\n");
    auto inst = read_bundle(in);
    CHECK(inst.lists[0] == std::vector<int>{1});
    CHECK(inst.lists[1] == std::vector<int>{0, 1});
}

TEST_CASE("read_bundle rejects malformed input")
{
    auto fails = [](const std::string & text) {
        std::istringstream in(text);
        CHECK_THROWS_AS(read_bundle(in), ParseError);
    };
    fails("p listhom 2 1 2\n");
    fails("p listhom 2 1 2 0\ng e 1 2\nh e 1 2\n");
    fails("p listhom 2 1 2 0\n");
    fails("p listhom 2 1 2 0\ng e 1 2\nl 3 1 1\n");
    fails("p listhom 2 1 2 0\ng e 1 2\nl 1 2 1\n");
    fails("p listhom 2 1 2 0\ng e 1 2\nl 1 1 3\n");
    fails("p listhom 2 1 2 0\ng e 1 2\nl 1 2 1 1\n");
    fails("p listhom 2 1 2 0\ng e 1 2\nl 1 1 1\nl 1 1 2\n");
    fails("p listhom 2 1 2 0\ng e 1 2\nx 1\n");
}

TEST_CASE("certificate round trip and validation")
{
    Homomorphism m{{2, 0, 1}};
    std::ostringstream out;
    write_certificate(out, m);
    std::istringstream in(out.str());
    auto back = read_certificate(in, 3);
    CHECK(back.map == m.map);

    auto fails = [](const std::string & text, int n) {
        std::istringstream bad(text);
        CHECK_THROWS_AS(read_certificate(bad, n), ParseError);
    };
    fails("m 1 1\n", 2);            // missing entry
    fails("m 1 1\nm 1 2\n", 1);     // duplicate
    fails("m 0 1\n", 1);            // out of range
    fails("q 1 1\n", 1);            // wrong tag
}

TEST_CASE("gadget round trip preserves marks")
{
    for (auto gadget : {build_D(), build_T(2), build_T_clique(2, 1), build_A(3)}) {
        std::ostringstream out;
        write_gadget(out, gadget);
        std::istringstream in(out.str());
        auto back = read_gadget(in);
        CHECK(back.graph == gadget.graph);
        CHECK(back.marks == gadget.marks);
    }
}

TEST_CASE("write_record emits a readable bundle with decode comments")
{
    auto rec = reduce_3col_to_listhom(complete_graph(3), 2);
    std::ostringstream out;
    write_record(out, rec);
    auto text = out.str();
    CHECK(text.find("c decode mode plain") != std::string::npos);
    CHECK(text.find("c decode stage 1 small-g") != std::string::npos);
    std::istringstream in(text);
    auto inst = read_bundle(in);
    CHECK(inst.g == rec.out().g);
    CHECK(inst.h == rec.out().h);
}

TEST_CASE("write_record includes certificates for the hom stage")
{
    auto inst = ListHomInstance::full_lists(complete_graph(2), complete_graph(2));
    auto rec = reduce_listhom_to_hom(inst);
    std::ostringstream out;
    write_record(out, rec);
    CHECK(out.str().find("c decode h-coloring") != std::string::npos);
    std::istringstream in(out.str());
    auto back = read_bundle(in);
    CHECK(back.g == rec.out().g);
}
