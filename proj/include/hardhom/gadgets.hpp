#ifndef HARDHOM_GADGETS_HPP
#define HARDHOM_GADGETS_HPP

#include <hardhom/graph_core.hpp>

#include <map>
#include <string>
#include <vector>

namespace hardhom
{

// A constructed gadget graph with its distinguished vertices. Roles holding
// a single vertex ("z", "x1", "z1", "a1", ...) are stored as one-element
// lists; block roles ("cycle1", "clique1", ...) list their members in order.
struct GadgetGraph
{
    Graph graph;
    std::map<std::string, std::vector<int>> marks;

    auto mark(const std::string & role) const -> int;
    auto mark_list(const std::string & role) const -> const std::vector<int> &;
};

// 5-cycle x1..x5 plus an apex z adjacent to the whole cycle. Every
// self-homomorphism fixes z and maps nothing else onto it.
auto build_D() -> GadgetGraph;

// k+1 copies of D in a row; the apex of copy i+1 is identified with the
// x1-vertex of copy i, and z_i marks the i-th shared vertex.
auto build_T(int k) -> GadgetGraph;

// T_k with each apex expanded to a clique of size t+3 joined to its block's
// 5-cycle. The shared vertex z_j survives as a member of clique j+1.
auto build_T_clique(int k, int t) -> GadgetGraph;

// Matching a_1-b_1, ..., a_h-b_h.
auto build_A(int h) -> GadgetGraph;

// Explicit proper colouring of a build_T_clique(k, t) gadget with at most
// t+8 colours, swept block by block.
auto chain_coloring(const GadgetGraph & t_gadget, int t) -> VertexColoring;

}

#endif
