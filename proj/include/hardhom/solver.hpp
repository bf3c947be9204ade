#ifndef HARDHOM_SOLVER_HPP
#define HARDHOM_SOLVER_HPP

#include <hardhom/graph_core.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace hardhom
{

enum class Mode
{
    Plain,
    LocallyInjective
};

// LIST-HOM instance; plain HOM is the special case of full lists. An empty
// `lists` vector means every list is full, so plain instances stay linear in
// size even when both graphs are large.
struct ListHomInstance
{
    Graph g;
    Graph h;
    std::vector<std::vector<int>> lists;

    static auto full_lists(Graph g, Graph h) -> ListHomInstance;

    auto full() const -> bool;
    auto validate() const -> void;
    auto materialized_lists() const -> std::vector<std::vector<int>>;
    auto list_sets() const -> std::vector<DynBitset>;
};

struct Homomorphism
{
    std::vector<int> map;
};

struct SolveStats
{
    std::int64_t nodes_explored = 0;
    std::int64_t assignments_tried = 0;
};

enum class Status
{
    Satisfiable,
    Unsatisfiable,
    BudgetExceeded
};

struct SolveResult
{
    Status status = Status::Unsatisfiable;
    std::optional<Homomorphism> witness;
    SolveStats stats;
};

struct EnumerateResult
{
    std::vector<Homomorphism> witnesses;
    bool truncated = false;
};

constexpr std::int64_t default_brute_budget = 100'000'000;

// Throws on length or target-range mismatch; otherwise a pure predicate.
auto verify(const ListHomInstance & inst, const Homomorphism & m, Mode mode) -> bool;

// Lexicographically first witness over target vectors, or Unsatisfiable, or
// BudgetExceeded when the product of list sizes exceeds the budget.
auto solve_brute(const ListHomInstance & inst, Mode mode,
    std::int64_t budget = default_brute_budget) -> SolveResult;

// Complete backtracking with arc-consistency preprocessing, forward pruning
// during search, and minimum-remaining-values variable selection.
auto solve_backtrack(const ListHomInstance & inst, Mode mode) -> SolveResult;

// Vertex-cover-parameterized search: enumerates mappings of the cover and
// extends over the independent remainder. assignments_tried counts complete
// cover assignments and never exceeds h^|cover|.
auto solve_vc(const ListHomInstance & inst, const std::vector<int> & cover) -> SolveResult;

// Polynomial verdict for full-list instances with bipartite (or edgeless) h;
// nullopt when h is non-bipartite. Throws if any list is restricted.
auto bipartite_fast_path(const ListHomInstance & inst) -> std::optional<Status>;

// All witnesses in lexicographic order, truncated at cap.
auto enumerate_all(const ListHomInstance & inst, Mode mode, int cap) -> EnumerateResult;

// Visit every verified witness in lexicographic order without storing them;
// the callback returns false to stop early.
auto for_each_witness(const ListHomInstance & inst, Mode mode,
    const std::function<bool(const Homomorphism &)> & f) -> void;

}

#endif
