#ifndef HARDHOM_REDUCTIONS_HPP
#define HARDHOM_REDUCTIONS_HPP

#include <hardhom/gadgets.hpp>
#include <hardhom/graph_core.hpp>
#include <hardhom/solver.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace hardhom
{

// One vertex of the configuration graph built by the small-|V(G')|
// reduction. A configuration carries the bucket label, a 3-colouring of the
// bucket's r vertices by position, and one slot per outgoing edge of the
// bucket in lexicographic order. The slot vector conceptually has a fixed
// width of dmax*r entries with a null-padded suffix; only the non-null
// prefix is stored.
struct Configuration
{
    struct Slot
    {
        int p;       // 1-based position of the inner endpoint in its bucket
        int label2;  // label of the unique neighbouring bucket
        int q;       // 1-based position of the outer endpoint in that bucket
        int color;   // colour in [3] of the outer endpoint

        auto operator<=>(const Slot &) const = default;
    };

    int label = 0;
    std::vector<int> colors;
    std::vector<Slot> slots;

    auto operator<=>(const Configuration &) const = default;
};

// Consistency rule: two configurations are adjacent unless some slot of one
// names the other's label but disagrees with its colouring at the named
// position.
auto configurations_adjacent(const Configuration & c1, const Configuration & c2) -> bool;

// A configuration of the small-vc reduction: a label plus a 3-colouring of
// one bucket. Right-side vertices pair two of these with distinct labels.
struct PairedConfig
{
    int label = 0;
    std::vector<int> colors;

    auto operator<=>(const PairedConfig &) const = default;
};

enum class ReductionKind
{
    SmallG,   // 3-Coloring -> LIST-HOM keeping |V(G')| = ceil(n/r)
    SmallVc,  // 3-Coloring -> LIST-HOM keeping vc(G') <= ceil(n/r)
    BoundChi, // LIST-HOM -> LIST-HOM with chi(H') <= k
    ToHom     // LIST-HOM -> HOM via the rigid gadgets
};

struct SmallGData
{
    Graph input;   // the graph handed to the reduction
    Graph padded;  // input plus isolated vertices, |V| a multiple of r
    LabeledGrouping grouping;
    int r = 0;
    int dmax = 0;
    std::vector<Configuration> configs;  // H' vertex i, for i < configs.size()
    bool dummy = false;                  // extra isolated H' vertex appended
};

struct SmallVcData
{
    Graph input;
    Graph padded;
    Partition partition;
    Graph bucket_graph;
    std::vector<int> labels;  // proper colouring of bucket_graph, 1..L
    int r = 0;
    std::vector<PairedConfig> lefts;
    std::vector<std::pair<PairedConfig, PairedConfig>> rights;
    std::vector<std::pair<int, int>> aux_pairs;  // out.g vertex nb+j joins this bucket pair
    std::vector<int> cover;                      // the bucket side of out.g
    bool dummy = false;
};

struct BoundChiData
{
    ListHomInstance input;
    VertexColoring g_coloring;   // proper k-colouring of input.g
    VertexColoring certificate;  // the k-colouring (u, i) -> i of out.h
};

struct ToHomData
{
    ListHomInstance input;
    int t = 0;
    int h = 0;
    GadgetGraph t_gadget;        // the T chain with h blocks and K_{t+3} cliques
    VertexColoring h_coloring;   // proper <= t colouring of input.h
    VertexColoring certificate;  // proper (t+10)-colouring of out.h
    int g_t = 0, g_a = 0;        // offsets of the T and matching parts in out.g
    int h_t = 0, h_a = 0;        // same in out.h
};

struct ReductionStage
{
    ReductionKind kind;
    ListHomInstance out;
    std::variant<SmallGData, SmallVcData, BoundChiData, ToHomData> data;
};

// A chain of reduction stages together with the certificates the
// construction promises: the output instance is stages.back().out, and
// witnesses decode stage by stage back to the original problem.
struct ReductionRecord
{
    std::vector<ReductionStage> stages;
    Mode mode = Mode::Plain;
    std::optional<VertexColoring> h_certificate;
    std::optional<std::vector<int>> cover_certificate;

    auto out() const -> const ListHomInstance &;
};

// A witness of a record's input problem: a 3-colouring when the first stage
// starts from 3-Coloring, otherwise a homomorphism of the first stage's
// input instance.
using InputWitness = std::variant<VertexColoring, Homomorphism>;

// 3-Coloring(g) -> LIST-HOM with ceil(n/r) buckets and a pruned
// configuration graph. dmax in {4, 5} selects the slot width dmax*r and
// label budget dmax^2 r^2 + 1.
auto reduce_3col_to_listhom(const Graph & g, int r, int dmax = 4) -> ReductionRecord;

// Same construction over a caller-supplied padding and partition of it;
// used by the chi pipeline, whose buckets must be monochromatic.
auto reduce_3col_to_listhom(const Graph & g, const Graph & padded,
    const Partition & p, int dmax) -> ReductionRecord;

// 3-Coloring(g) -> LIST-HOM whose left graph is bipartite with a vertex
// cover of ceil(n/r) buckets.
auto reduce_3col_to_listhom_vc(const Graph & g, int r) -> ReductionRecord;

// LIST-HOM -> LIST-HOM replacing h by h x [k] so that chi of the new target
// is at most k; the certificate colouring is emitted with the record.
auto reduce_bound_chi(const ListHomInstance & inst, const VertexColoring & coloring) -> ReductionRecord;

// LIST-HOM -> HOM via the rigid chain gadget and the matching. When no
// colouring of inst.h is given a greedy one is used and t defaults to its
// colour count; t may exceed it.
auto reduce_listhom_to_hom(const ListHomInstance & inst,
    std::optional<int> t = std::nullopt,
    std::optional<VertexColoring> h_coloring = std::nullopt) -> ReductionRecord;

// Witness translation along the whole chain. decode_witness requires a
// verifying witness of rec.out() and produces a verifying witness of the
// input problem; encode_witness is the forward direction.
auto decode_witness(const ReductionRecord & rec, const Homomorphism & w) -> InputWitness;
auto encode_witness(const ReductionRecord & rec, const InputWitness & w) -> Homomorphism;

// Degree reduction: every vertex of degree d > 5 becomes a triangle chain
// of d + 2(d-1) vertices; 3-colourability is preserved and the output has
// maximum degree <= 5.
struct DegreeReduceResult
{
    Graph input;
    Graph out;
    // rep[v] = out-vertex carrying the colour of input vertex v.
    std::vector<int> rep;
};

auto degree_reduce(const Graph & g) -> DegreeReduceResult;

// Pull a 3-colouring of the output back to the input, or push one forward
// (gadget vertices get forced colours).
auto decode_coloring(const DegreeReduceResult & d, const VertexColoring & c) -> VertexColoring;
auto encode_coloring(const DegreeReduceResult & d, const VertexColoring & c) -> VertexColoring;

// Theorem pipelines. All expect max degree <= 4 and 2 <= r <= n.
auto pipeline_main(const Graph & g, int r) -> ReductionRecord;
auto pipeline_chi(const Graph & g, int r) -> ReductionRecord;
auto pipeline_vc(const Graph & g, int r) -> ReductionRecord;
auto pipeline_local(const Graph & g, int r) -> ReductionRecord;

// Exact symbolic sizes of the unpruned configuration graphs and the bounds
// they must respect.
using BigInt = boost::multiprecision::cpp_int;

auto smallg_full_size(int r, int dmax = 4) -> BigInt;  // L * 3^r * (r^2 L 3)^(dmax r)
auto smallg_size_bound(int r) -> BigInt;               // r^(50 r)
auto smallvc_full_size(int r) -> BigInt;               // 5r 3^r + 25 r^2 3^(2r)
auto smallvc_size_bound(int r) -> BigInt;               // 300^r

}

#endif
