#include <hardhom/reductions.hpp>

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

using std::invalid_argument;
using std::logic_error;
using std::map;
using std::pair;
using std::string;
using std::vector;

namespace hardhom
{

namespace
{
    auto pad_to_multiple(const Graph & g, int r) -> Graph
    {
        int extra = (r - g.size() % r) % r;
        Graph padded(g.size() + extra);
        for (auto & [u, v] : g.edges())
            padded.add_edge(u, v);
        return padded;
    }

    auto consecutive_partition(int n, int r) -> Partition
    {
        Partition p;
        p.r = r;
        for (int start = 0; start < n; start += r) {
            vector<int> bucket;
            for (int v = start; v < std::min(start + r, n); ++v)
                bucket.push_back(v);
            p.buckets.push_back(std::move(bucket));
        }
        return p;
    }

    auto require_extension(const Graph & g, const Graph & padded, int r) -> void
    {
        if (padded.size() < g.size() || padded.size() % r != 0)
            throw invalid_argument{"padded graph has the wrong vertex count"};
        if (padded.edge_count() != g.edge_count())
            throw invalid_argument{"padded graph must only add isolated vertices"};
        for (auto & [u, v] : g.edges())
            if (! padded.adjacent(u, v))
                throw invalid_argument{"padded graph must contain the input's edges"};
    }

    // The configuration a fixed 3-colouring of N[B] induces on bucket b;
    // cols must cover at least N[B] of the padded graph.
    auto configuration_of(const Graph & padded, const LabeledGrouping & grouping,
        int b, const vector<int> & cols) -> Configuration
    {
        auto & bucket = grouping.partition.buckets[b];
        Configuration c;
        c.label = grouping.labels[b];
        for (int v : bucket)
            c.colors.push_back(cols[v]);
        for (int u : bucket)
            for (int v : padded.neighbours(u)) {
                int b2 = grouping.bucket_of(v);
                if (b2 == b)
                    continue;
                c.slots.push_back(Configuration::Slot{
                    grouping.position_in_bucket(u),
                    grouping.labels[b2],
                    grouping.position_in_bucket(v),
                    cols[v]});
            }
        return c;
    }

    // All configurations allowed for bucket b: one per proper 3-colouring
    // of the subgraph induced by the closed neighbourhood of the bucket.
    auto bucket_configurations(const Graph & padded, const LabeledGrouping & grouping,
        int b) -> vector<Configuration>
    {
        auto & bucket = grouping.partition.buckets[b];
        vector<int> verts = bucket;
        for (int u : bucket)
            for (int v : padded.neighbours(u))
                if (grouping.bucket_of(v) != b)
                    verts.push_back(v);
        std::sort(verts.begin() + bucket.size(), verts.end());
        verts.erase(std::unique(verts.begin() + bucket.size(), verts.end()), verts.end());

        Graph induced(int(verts.size()));
        for (std::size_t i = 0; i < verts.size(); ++i)
            for (std::size_t j = i + 1; j < verts.size(); ++j)
                if (padded.adjacent(verts[i], verts[j]))
                    induced.add_edge(int(i), int(j));

        vector<Configuration> result;
        vector<int> full(padded.size(), 0);
        for_each_proper_coloring(induced, 3, [&](const vector<int> & col) {
            for (std::size_t i = 0; i < verts.size(); ++i)
                full[verts[i]] = col[i];
            result.push_back(configuration_of(padded, grouping, b, full));
            return true;
        });
        return result;
    }

    auto check_3coloring(const Graph & g, const VertexColoring & c, const char * what) -> void
    {
        if (int(c.colors.size()) != g.size())
            throw invalid_argument{string{what} + ": colouring length mismatch"};
        for (int col : c.colors)
            if (col < 1 || col > 3)
                throw invalid_argument{string{what} + ": colour out of range"};
        if (! c.is_proper(g))
            throw invalid_argument{string{what} + ": colouring is not proper"};
    }
}

auto configurations_adjacent(const Configuration & c1, const Configuration & c2) -> bool
{
    for (auto & s : c1.slots)
        if (s.label2 == c2.label && s.color != c2.colors[s.q - 1])
            return false;
    for (auto & s : c2.slots)
        if (s.label2 == c1.label && s.color != c1.colors[s.q - 1])
            return false;
    return true;
}

auto ReductionRecord::out() const -> const ListHomInstance &
{
    if (stages.empty())
        throw logic_error{"empty reduction record"};
    return stages.back().out;
}

auto reduce_3col_to_listhom(const Graph & g, int r, int dmax) -> ReductionRecord
{
    if (r < 2 || r > std::max(g.size(), 1))
        throw invalid_argument{"need 2 <= r <= n"};
    Graph padded = pad_to_multiple(g, r);
    return reduce_3col_to_listhom(g, padded, consecutive_partition(padded.size(), r), dmax);
}

auto reduce_3col_to_listhom(const Graph & g, const Graph & padded,
    const Partition & p, int dmax) -> ReductionRecord
{
    if (dmax != 4 && dmax != 5)
        throw invalid_argument{"dmax must be 4 or 5"};
    if (g.max_degree() > dmax)
        throw invalid_argument{"maximum degree exceeds " + std::to_string(dmax)};
    int r = p.r;
    if (r < 2)
        throw invalid_argument{"need r >= 2"};
    require_extension(g, padded, r);
    if (! p.is_partition_of(padded.size()))
        throw invalid_argument{"not a partition of the padded graph"};
    for (auto & bucket : p.buckets)
        if (int(bucket.size()) != r)
            throw invalid_argument{"all buckets must have size exactly r"};

    SmallGData data;
    data.input = g;
    data.padded = padded;
    data.grouping = build_grouping(padded, p);
    data.r = r;
    data.dmax = dmax;
    if (data.grouping.label_count > dmax * dmax * r * r + 1)
        throw logic_error{"label palette exceeded"};

    int nb = int(p.buckets.size());
    map<Configuration, int> index;
    vector<vector<int>> lists(nb);
    for (int b = 0; b < nb; ++b) {
        for (auto & cfg : bucket_configurations(padded, data.grouping, b)) {
            auto [it, fresh] = index.try_emplace(cfg, int(data.configs.size()));
            if (fresh)
                data.configs.push_back(cfg);
            lists[b].push_back(it->second);
        }
        std::sort(lists[b].begin(), lists[b].end());
    }

    data.dummy = data.configs.empty();
    int hn = int(data.configs.size()) + (data.dummy ? 1 : 0);
    Graph h(hn);
    for (std::size_t i = 0; i < data.configs.size(); ++i)
        for (std::size_t j = i + 1; j < data.configs.size(); ++j)
            if (configurations_adjacent(data.configs[i], data.configs[j]))
                h.add_edge(int(i), int(j));

    ReductionStage stage{ReductionKind::SmallG,
        ListHomInstance{data.grouping.bucket_graph, std::move(h), std::move(lists)},
        std::move(data)};
    return ReductionRecord{{std::move(stage)}, Mode::Plain, std::nullopt, std::nullopt};
}

auto reduce_3col_to_listhom_vc(const Graph & g, int r) -> ReductionRecord
{
    if (g.max_degree() > 4)
        throw invalid_argument{"maximum degree exceeds 4"};
    if (r < 2 || r > std::max(g.size(), 1))
        throw invalid_argument{"need 2 <= r <= n"};

    SmallVcData data;
    data.input = g;
    data.padded = pad_to_multiple(g, r);
    data.partition = consecutive_partition(data.padded.size(), r);
    data.r = r;
    data.bucket_graph = build_grouping(data.padded, data.partition).bucket_graph;
    auto label_coloring = greedy_coloring(data.bucket_graph);
    data.labels = label_coloring.colors;
    if (label_coloring.k > 5 * r)
        throw logic_error{"label palette exceeded"};

    int nb = int(data.partition.buckets.size());
    data.aux_pairs = data.bucket_graph.edges();
    int na = int(data.aux_pairs.size());
    Graph gout(nb + na);
    for (int j = 0; j < na; ++j) {
        gout.add_edge(data.aux_pairs[j].first, nb + j);
        gout.add_edge(data.aux_pairs[j].second, nb + j);
    }
    for (int b = 0; b < nb; ++b)
        data.cover.push_back(b);

    // Left configurations: proper 3-colourings of each bucket's induced
    // subgraph, tagged with the bucket's label.
    map<PairedConfig, int> left_index;
    vector<vector<int>> lists(nb + na);
    vector<vector<vector<int>>> bucket_colorings(nb);
    for (int b = 0; b < nb; ++b) {
        auto & bucket = data.partition.buckets[b];
        Graph induced(r);
        for (int i = 0; i < r; ++i)
            for (int j = i + 1; j < r; ++j)
                if (data.padded.adjacent(bucket[i], bucket[j]))
                    induced.add_edge(i, j);
        for_each_proper_coloring(induced, 3, [&](const vector<int> & col) {
            bucket_colorings[b].push_back(col);
            PairedConfig pc{data.labels[b], col};
            auto [it, fresh] = left_index.try_emplace(pc, int(data.lefts.size()));
            if (fresh)
                data.lefts.push_back(pc);
            lists[b].push_back(it->second);
            return true;
        });
        std::sort(lists[b].begin(), lists[b].end());
        lists[b].erase(std::unique(lists[b].begin(), lists[b].end()), lists[b].end());
    }

    // Right configurations: consistent ordered pairs, generated from each
    // auxiliary vertex's two buckets (both orientations).
    map<pair<PairedConfig, PairedConfig>, int> right_index;
    auto cross_consistent = [&](int b1, const vector<int> & c1, int b2, const vector<int> & c2) {
        auto & bk1 = data.partition.buckets[b1];
        auto & bk2 = data.partition.buckets[b2];
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                if (data.padded.adjacent(bk1[i], bk2[j]) && c1[i] == c2[j])
                    return false;
        return true;
    };
    for (int j = 0; j < na; ++j) {
        auto [b1, b2] = data.aux_pairs[j];
        for (auto & c1 : bucket_colorings[b1])
            for (auto & c2 : bucket_colorings[b2]) {
                if (! cross_consistent(b1, c1, b2, c2))
                    continue;
                PairedConfig left{data.labels[b1], c1}, right{data.labels[b2], c2};
                for (auto & ordered : {pair{left, right}, pair{right, left}}) {
                    auto [it, fresh] = right_index.try_emplace(ordered, int(data.rights.size()));
                    if (fresh)
                        data.rights.push_back(ordered);
                }
            }
    }

    // An auxiliary vertex accepts every pooled pair whose label set matches
    // its buckets and whose colourings, decoded by label, properly colour
    // the two buckets and the edges between them.
    auto proper_on_bucket = [&](int b, const vector<int> & col) {
        auto & bucket = data.partition.buckets[b];
        for (int i = 0; i < r; ++i)
            for (int j = i + 1; j < r; ++j)
                if (data.padded.adjacent(bucket[i], bucket[j]) && col[i] == col[j])
                    return false;
        return true;
    };
    int nl = int(data.lefts.size());
    for (int j = 0; j < na; ++j) {
        auto [b1, b2] = data.aux_pairs[j];
        int l1 = data.labels[b1], l2 = data.labels[b2];
        for (std::size_t idx = 0; idx < data.rights.size(); ++idx) {
            auto & [first, second] = data.rights[idx];
            const vector<int> * c1 = nullptr;
            const vector<int> * c2 = nullptr;
            if (first.label == l1 && second.label == l2) {
                c1 = &first.colors;
                c2 = &second.colors;
            }
            else if (first.label == l2 && second.label == l1) {
                c1 = &second.colors;
                c2 = &first.colors;
            }
            else
                continue;
            if (proper_on_bucket(b1, *c1) && proper_on_bucket(b2, *c2)
                && cross_consistent(b1, *c1, b2, *c2))
                lists[nb + j].push_back(nl + int(idx));
        }
        std::sort(lists[nb + j].begin(), lists[nb + j].end());
    }

    data.dummy = data.lefts.empty() && data.rights.empty();
    int hn = nl + int(data.rights.size()) + (data.dummy ? 1 : 0);
    Graph hout(hn);
    for (std::size_t idx = 0; idx < data.rights.size(); ++idx) {
        auto & [first, second] = data.rights[idx];
        hout.add_edge(left_index.at(first), nl + int(idx));
        if (! (second == first))
            hout.add_edge(left_index.at(second), nl + int(idx));
    }

    ReductionStage stage{ReductionKind::SmallVc,
        ListHomInstance{std::move(gout), std::move(hout), std::move(lists)},
        std::move(data)};
    return ReductionRecord{{std::move(stage)}, Mode::Plain, std::nullopt, std::nullopt};
}

auto reduce_bound_chi(const ListHomInstance & inst, const VertexColoring & coloring) -> ReductionRecord
{
    inst.validate();
    if (int(coloring.colors.size()) != inst.g.size())
        throw invalid_argument{"colouring length mismatch"};
    int k = coloring.k;
    for (int c : coloring.colors)
        if (c < 1 || c > k)
            throw invalid_argument{"colour out of range"};
    if (! coloring.is_proper(inst.g))
        throw invalid_argument{"colouring is not proper"};
    if (k < 1)
        throw invalid_argument{"need at least one colour"};

    int h = inst.h.size();
    Graph hout(h * k);
    for (auto & [u, v] : inst.h.edges())
        for (int i = 1; i <= k; ++i)
            for (int j = 1; j <= k; ++j)
                if (i != j)
                    hout.add_edge(u * k + i - 1, v * k + j - 1);

    auto in_lists = inst.materialized_lists();
    vector<vector<int>> lists(inst.g.size());
    for (int w = 0; w < inst.g.size(); ++w) {
        for (int u : in_lists[w])
            lists[w].push_back(u * k + coloring.colors[w] - 1);
        std::sort(lists[w].begin(), lists[w].end());
    }

    BoundChiData data;
    data.input = inst;
    data.g_coloring = coloring;
    data.certificate.colors.resize(h * k);
    data.certificate.k = k;
    for (int u = 0; u < h; ++u)
        for (int i = 1; i <= k; ++i)
            data.certificate.colors[u * k + i - 1] = i;
    if (! data.certificate.is_proper(hout))
        throw logic_error{"chi certificate is not proper"};

    ReductionStage stage{ReductionKind::BoundChi,
        ListHomInstance{inst.g, std::move(hout), std::move(lists)},
        std::move(data)};
    return ReductionRecord{{std::move(stage)}, Mode::Plain, std::nullopt, std::nullopt};
}

auto reduce_listhom_to_hom(const ListHomInstance & inst,
    std::optional<int> t_opt, std::optional<VertexColoring> h_coloring) -> ReductionRecord
{
    inst.validate();
    if (inst.h.size() < 1)
        throw invalid_argument{"target graph must be nonempty"};

    // The matching attachment only confines images to the target copy when
    // the pairs {a_j, b_j} are anchored far enough apart along the gadget
    // chain. Consecutive z's are adjacent (z_i lies in the cycle joined to
    // the clique containing z_{i-1}), so any single vertex of the target is
    // within reach of up to five consecutive pairs; with h <= 5 every pair
    // can bunch into the gadget and the list machinery is bypassed (for
    // h = 2 a concrete escape maps both pairs onto one cycle edge and the
    // whole source into a clique). With h >= 6 no vertex reaches all pairs,
    // every pair must map to its own {a_j, b_j}, and the construction is
    // sound. Isolated padding vertices (never added to any list, each
    // missing its own b-edge) raise h without affecting satisfiability.
    ListHomInstance padded = inst;
    if (padded.h.size() < 6) {
        Graph h2(6);
        for (auto & [u, v] : padded.h.edges())
            h2.add_edge(u, v);
        padded.h = std::move(h2);
        if (h_coloring) {
            h_coloring->colors.resize(6, 1);
            if (h_coloring->k < 1)
                h_coloring->k = 1;
        }
    }
    int h = padded.h.size();

    ToHomData data;
    data.input = padded;
    data.h = h;
    data.h_coloring = h_coloring ? *h_coloring : greedy_coloring(padded.h);
    if (int(data.h_coloring.colors.size()) != h)
        throw invalid_argument{"target colouring length mismatch"};
    for (int c : data.h_coloring.colors)
        if (c < 1 || c > data.h_coloring.k)
            throw invalid_argument{"target colouring colour out of range"};
    for (auto & [u, v] : padded.h.edges())
        if (data.h_coloring.colors[u] == data.h_coloring.colors[v])
            throw invalid_argument{"target colouring reuses a colour on edge {"
                + std::to_string(u + 1) + "," + std::to_string(v + 1) + "}"};
    data.t = t_opt ? *t_opt : data.h_coloring.k;
    if (data.t < data.h_coloring.k || data.t < 1)
        throw invalid_argument{"t is below the supplied colouring's colour count"};

    data.t_gadget = build_T_clique(h, data.t);
    int n = padded.g.size();
    int nt = data.t_gadget.graph.size();
    data.g_t = n;
    data.g_a = n + nt;
    data.h_t = h;
    data.h_a = h + nt;

    auto assemble = [&](const Graph & base, int t_off, int a_off) {
        Graph out(a_off + 2 * h);
        for (auto & [u, v] : base.edges())
            out.add_edge(u, v);
        for (auto & [u, v] : data.t_gadget.graph.edges())
            out.add_edge(t_off + u, t_off + v);
        for (int i = 1; i <= h; ++i) {
            int a = a_off + 2 * (i - 1), b = a + 1;
            int z = t_off + data.t_gadget.mark("z" + std::to_string(i));
            out.add_edge(a, b);
            out.add_edge(z, a);
            out.add_edge(z, b);
        }
        return out;
    };

    Graph gout = assemble(padded.g, data.g_t, data.g_a);
    auto sets = padded.list_sets();
    for (int gi = 0; gi < n; ++gi)
        for (int j = 1; j <= h; ++j) {
            gout.add_edge(gi, data.g_a + 2 * (j - 1));
            if (! sets[gi].test(j - 1))
                gout.add_edge(gi, data.g_a + 2 * (j - 1) + 1);
        }

    Graph hout = assemble(padded.h, data.h_t, data.h_a);
    for (int u = 0; u < h; ++u)
        for (int j = 1; j <= h; ++j) {
            hout.add_edge(u, data.h_a + 2 * (j - 1));
            if (j - 1 != u)
                hout.add_edge(u, data.h_a + 2 * (j - 1) + 1);
        }

    if (hout.size() > (h + 1) * (data.t + 11))
        throw logic_error{"target size bound violated"};

    data.certificate.colors.resize(hout.size());
    for (int u = 0; u < h; ++u)
        data.certificate.colors[u] = data.h_coloring.colors[u];
    auto chain = chain_coloring(data.t_gadget, data.t);
    for (int v = 0; v < nt; ++v)
        data.certificate.colors[data.h_t + v] = chain.colors[v];
    for (int i = 0; i < h; ++i) {
        data.certificate.colors[data.h_a + 2 * i] = data.t + 9;
        data.certificate.colors[data.h_a + 2 * i + 1] = data.t + 10;
    }
    data.certificate.k = data.t + 10;
    if (! data.certificate.is_proper(hout))
        throw logic_error{"t+10 certificate is not proper"};

    auto certificate = data.certificate;
    ReductionStage stage{ReductionKind::ToHom,
        ListHomInstance::full_lists(std::move(gout), std::move(hout)),
        std::move(data)};
    return ReductionRecord{{std::move(stage)}, Mode::Plain, std::move(certificate),
        std::nullopt};
}

namespace
{
    auto decode_smallg(const SmallGData & d, const ListHomInstance & out,
        const Homomorphism & w) -> VertexColoring
    {
        if (! verify(out, w, Mode::Plain))
            throw invalid_argument{"witness does not verify on the reduced instance"};
        vector<int> cols(d.padded.size(), 0);
        for (std::size_t b = 0; b < d.grouping.partition.buckets.size(); ++b) {
            auto & cfg = d.configs.at(w.map[b]);
            auto & bucket = d.grouping.partition.buckets[b];
            for (std::size_t i = 0; i < bucket.size(); ++i)
                cols[bucket[i]] = cfg.colors[i];
        }
        cols.resize(d.input.size());
        VertexColoring c{std::move(cols), 3};
        if (! c.is_proper(d.input))
            throw logic_error{"decoded colouring is not proper"};
        return c;
    }

    auto encode_smallg(const SmallGData & d, const ListHomInstance & out,
        const VertexColoring & c) -> Homomorphism
    {
        check_3coloring(d.input, c, "input witness");
        vector<int> cols = c.colors;
        cols.resize(d.padded.size(), 1);
        map<Configuration, int> index;
        for (std::size_t i = 0; i < d.configs.size(); ++i)
            index.emplace(d.configs[i], int(i));
        Homomorphism w{vector<int>(out.g.size(), -1)};
        for (int b = 0; b < out.g.size(); ++b) {
            // All external endpoints are coloured by cols as well, so the
            // bucket's configuration under this colouring is well defined.
            auto cfg = configuration_of(d.padded, d.grouping, b, cols);
            auto it = index.find(cfg);
            if (it == index.end())
                throw logic_error{"encoded configuration missing from the pruned target"};
            w.map[b] = it->second;
        }
        if (! verify(out, w, Mode::Plain))
            throw logic_error{"encoded witness does not verify"};
        return w;
    }

    auto decode_smallvc(const SmallVcData & d, const ListHomInstance & out,
        const Homomorphism & w) -> VertexColoring
    {
        if (! verify(out, w, Mode::Plain))
            throw invalid_argument{"witness does not verify on the reduced instance"};
        vector<int> cols(d.padded.size(), 0);
        for (std::size_t b = 0; b < d.partition.buckets.size(); ++b) {
            auto & left = d.lefts.at(w.map[b]);
            auto & bucket = d.partition.buckets[b];
            for (std::size_t i = 0; i < bucket.size(); ++i)
                cols[bucket[i]] = left.colors[i];
        }
        cols.resize(d.input.size());
        VertexColoring c{std::move(cols), 3};
        if (! c.is_proper(d.input))
            throw logic_error{"decoded colouring is not proper"};
        return c;
    }

    auto encode_smallvc(const SmallVcData & d, const ListHomInstance & out,
        const VertexColoring & c) -> Homomorphism
    {
        check_3coloring(d.input, c, "input witness");
        vector<int> cols = c.colors;
        cols.resize(d.padded.size(), 1);
        auto left_of = [&](int b) {
            PairedConfig pc;
            pc.label = d.labels[b];
            for (int v : d.partition.buckets[b])
                pc.colors.push_back(cols[v]);
            return pc;
        };
        map<PairedConfig, int> left_index;
        for (std::size_t i = 0; i < d.lefts.size(); ++i)
            left_index.emplace(d.lefts[i], int(i));
        map<pair<PairedConfig, PairedConfig>, int> right_index;
        for (std::size_t i = 0; i < d.rights.size(); ++i)
            right_index.emplace(d.rights[i], int(i));

        int nb = int(d.partition.buckets.size());
        int nl = int(d.lefts.size());
        Homomorphism w{vector<int>(out.g.size(), -1)};
        for (int b = 0; b < nb; ++b) {
            auto it = left_index.find(left_of(b));
            if (it == left_index.end())
                throw logic_error{"encoded configuration missing from the pruned target"};
            w.map[b] = it->second;
        }
        for (std::size_t j = 0; j < d.aux_pairs.size(); ++j) {
            auto [b1, b2] = d.aux_pairs[j];
            auto it = right_index.find({left_of(b1), left_of(b2)});
            if (it == right_index.end())
                throw logic_error{"encoded pair missing from the pruned target"};
            w.map[nb + int(j)] = nl + it->second;
        }
        if (! verify(out, w, Mode::Plain))
            throw logic_error{"encoded witness does not verify"};
        return w;
    }

    auto decode_boundchi(const BoundChiData & d, const ListHomInstance & out,
        const Homomorphism & w) -> Homomorphism
    {
        if (! verify(out, w, Mode::Plain))
            throw invalid_argument{"witness does not verify on the reduced instance"};
        int k = d.g_coloring.k;
        Homomorphism m{vector<int>(w.map.size())};
        for (std::size_t v = 0; v < w.map.size(); ++v)
            m.map[v] = w.map[v] / k;
        if (! verify(d.input, m, Mode::Plain))
            throw logic_error{"decoded witness does not verify"};
        return m;
    }

    auto encode_boundchi(const BoundChiData & d, const ListHomInstance & out,
        const Homomorphism & m) -> Homomorphism
    {
        if (! verify(d.input, m, Mode::Plain))
            throw invalid_argument{"input witness does not verify"};
        int k = d.g_coloring.k;
        Homomorphism w{vector<int>(m.map.size())};
        for (std::size_t v = 0; v < m.map.size(); ++v)
            w.map[v] = m.map[v] * k + d.g_coloring.colors[v] - 1;
        if (! verify(out, w, Mode::Plain))
            throw logic_error{"encoded witness does not verify"};
        return w;
    }

    auto decode_tohom(const ToHomData & d, const ListHomInstance & out,
        const Homomorphism & w) -> Homomorphism
    {
        if (! verify(out, w, Mode::Plain))
            throw invalid_argument{"witness does not verify on the reduced instance"};
        Homomorphism m{vector<int>(d.input.g.size())};
        for (int gi = 0; gi < d.input.g.size(); ++gi) {
            if (w.map[gi] >= d.h)
                throw invalid_argument{"witness does not project onto the target copy"};
            m.map[gi] = w.map[gi];
        }
        if (! verify(d.input, m, Mode::Plain))
            throw logic_error{"decoded witness does not verify"};
        return m;
    }

    auto encode_tohom(const ToHomData & d, const ListHomInstance & out,
        const Homomorphism & m) -> Homomorphism
    {
        if (! verify(d.input, m, Mode::Plain))
            throw invalid_argument{"input witness does not verify"};
        Homomorphism w{vector<int>(out.g.size())};
        for (int gi = 0; gi < d.input.g.size(); ++gi)
            w.map[gi] = m.map[gi];
        int nt = d.t_gadget.graph.size();
        for (int v = 0; v < nt; ++v)
            w.map[d.g_t + v] = d.h_t + v;
        for (int v = 0; v < 2 * d.h; ++v)
            w.map[d.g_a + v] = d.h_a + v;
        if (! verify(out, w, Mode::Plain))
            throw logic_error{"encoded witness does not verify"};
        return w;
    }
}

auto decode_witness(const ReductionRecord & rec, const Homomorphism & w) -> InputWitness
{
    if (rec.stages.empty())
        throw invalid_argument{"empty reduction record"};
    Homomorphism cur = w;
    for (auto it = rec.stages.rbegin(); it != rec.stages.rend(); ++it) {
        switch (it->kind) {
        case ReductionKind::SmallG:
            return decode_smallg(std::get<SmallGData>(it->data), it->out, cur);
        case ReductionKind::SmallVc:
            return decode_smallvc(std::get<SmallVcData>(it->data), it->out, cur);
        case ReductionKind::BoundChi:
            cur = decode_boundchi(std::get<BoundChiData>(it->data), it->out, cur);
            break;
        case ReductionKind::ToHom:
            cur = decode_tohom(std::get<ToHomData>(it->data), it->out, cur);
            break;
        }
    }
    return cur;
}

auto encode_witness(const ReductionRecord & rec, const InputWitness & w) -> Homomorphism
{
    if (rec.stages.empty())
        throw invalid_argument{"empty reduction record"};
    Homomorphism cur;
    auto & first = rec.stages.front();
    switch (first.kind) {
    case ReductionKind::SmallG:
        cur = encode_smallg(std::get<SmallGData>(first.data), first.out,
            std::get<VertexColoring>(w));
        break;
    case ReductionKind::SmallVc:
        cur = encode_smallvc(std::get<SmallVcData>(first.data), first.out,
            std::get<VertexColoring>(w));
        break;
    case ReductionKind::BoundChi:
        cur = encode_boundchi(std::get<BoundChiData>(first.data), first.out,
            std::get<Homomorphism>(w));
        break;
    case ReductionKind::ToHom:
        cur = encode_tohom(std::get<ToHomData>(first.data), first.out,
            std::get<Homomorphism>(w));
        break;
    }
    for (std::size_t s = 1; s < rec.stages.size(); ++s) {
        auto & stage = rec.stages[s];
        switch (stage.kind) {
        case ReductionKind::BoundChi:
            cur = encode_boundchi(std::get<BoundChiData>(stage.data), stage.out, cur);
            break;
        case ReductionKind::ToHom:
            cur = encode_tohom(std::get<ToHomData>(stage.data), stage.out, cur);
            break;
        default:
            throw logic_error{"graph-input stage cannot appear mid-chain"};
        }
    }
    return cur;
}

auto degree_reduce(const Graph & g) -> DegreeReduceResult
{
    DegreeReduceResult res;
    res.input = g;
    res.rep.resize(g.size());

    // Layout: low-degree vertices keep a single node; a degree-d vertex
    // (d > 5) becomes v_1..v_d, a_1..a_{d-1}, b_1..b_{d-1} consecutively.
    vector<int> base(g.size());
    int next = 0;
    for (int v = 0; v < g.size(); ++v) {
        base[v] = next;
        res.rep[v] = next;
        int d = g.degree(v);
        next += d > 5 ? d + 2 * (d - 1) : 1;
    }
    auto port = [&](int v, int towards) {
        int d = g.degree(v);
        if (d <= 5)
            return base[v];
        auto & nbs = g.neighbours(v);
        int i = int(std::lower_bound(nbs.begin(), nbs.end(), towards) - nbs.begin());
        return base[v] + i;  // v_{i+1}
    };

    Graph out(next);
    for (int v = 0; v < g.size(); ++v) {
        int d = g.degree(v);
        if (d <= 5)
            continue;
        auto vx = [&](int i) { return base[v] + (i - 1); };
        auto ax = [&](int i) { return base[v] + d + (i - 1); };
        auto bx = [&](int i) { return base[v] + d + (d - 1) + (i - 1); };
        for (int i = 1; i <= d - 1; ++i) {
            out.add_edge(vx(i), ax(i));
            out.add_edge(ax(i), bx(i));
            out.add_edge(bx(i), vx(i));
            out.add_edge(vx(i + 1), ax(i));
            out.add_edge(vx(i + 1), bx(i));
        }
    }
    for (auto & [u, v] : g.edges())
        out.add_edge(port(u, v), port(v, u));
    if (out.max_degree() > 5)
        throw logic_error{"degree reduction left a high-degree vertex"};
    res.out = std::move(out);
    return res;
}

auto decode_coloring(const DegreeReduceResult & d, const VertexColoring & c) -> VertexColoring
{
    check_3coloring(d.out, c, "output colouring");
    VertexColoring result{vector<int>(d.input.size()), 3};
    for (int v = 0; v < d.input.size(); ++v)
        result.colors[v] = c.colors[d.rep[v]];
    if (! result.is_proper(d.input))
        throw logic_error{"decoded colouring is not proper"};
    return result;
}

auto encode_coloring(const DegreeReduceResult & d, const VertexColoring & c) -> VertexColoring
{
    check_3coloring(d.input, c, "input colouring");
    VertexColoring result{vector<int>(d.out.size()), 3};
    for (int v = 0; v < d.input.size(); ++v) {
        int deg = d.input.degree(v);
        if (deg <= 5) {
            result.colors[d.rep[v]] = c.colors[v];
            continue;
        }
        // All v_i share v's colour; each a_i, b_i takes the two others.
        int other1 = c.colors[v] == 1 ? 2 : 1;
        int other2 = c.colors[v] == 3 ? 2 : 3;
        for (int i = 0; i < deg; ++i)
            result.colors[d.rep[v] + i] = c.colors[v];
        for (int i = 0; i < deg - 1; ++i) {
            result.colors[d.rep[v] + deg + i] = other1;
            result.colors[d.rep[v] + deg + (deg - 1) + i] = other2;
        }
    }
    if (! result.is_proper(d.out))
        throw logic_error{"encoded colouring is not proper"};
    return result;
}

auto pipeline_main(const Graph & g, int r) -> ReductionRecord
{
    auto rec = reduce_3col_to_listhom(g, r, 4);
    auto last = reduce_listhom_to_hom(rec.out());
    rec.h_certificate = std::get<ToHomData>(last.stages.front().data).certificate;
    rec.stages.push_back(std::move(last.stages.front()));
    return rec;
}

auto pipeline_local(const Graph & g, int r) -> ReductionRecord
{
    auto rec = pipeline_main(g, r);
    rec.mode = Mode::LocallyInjective;
    return rec;
}

auto pipeline_chi(const Graph & g, int r) -> ReductionRecord
{
    if (g.max_degree() > 4)
        throw invalid_argument{"maximum degree exceeds 4"};
    if (r < 2)
        throw invalid_argument{"need r >= 2"};

    // A greedy colouring of g uses at most 5 colours; treat it as a
    // 5-colouring and pad every class to a multiple of r with isolated
    // vertices (at most 5r of them in total).
    auto col = greedy_coloring(g);
    constexpr int k = 5;
    if (col.k > k)
        throw logic_error{"greedy colouring exceeded five colours"};
    vector<vector<int>> classes(k);
    for (int v = 0; v < g.size(); ++v)
        classes[col.colors[v] - 1].push_back(v);

    int extra = 0;
    for (auto & cls : classes)
        extra += (r - int(cls.size()) % r) % r;
    Graph padded(g.size() + extra);
    for (auto & [u, v] : g.edges())
        padded.add_edge(u, v);
    int next = g.size();
    for (auto & cls : classes) {
        int pad = (r - int(cls.size()) % r) % r;
        while (pad-- > 0)
            cls.push_back(next++);
    }

    Partition p;
    p.r = r;
    vector<int> bucket_colors;
    for (int c = 0; c < k; ++c)
        for (std::size_t start = 0; start < classes[c].size(); start += r) {
            p.buckets.emplace_back(classes[c].begin() + start, classes[c].begin() + start + r);
            bucket_colors.push_back(c + 1);
        }

    auto rec = reduce_3col_to_listhom(g, padded, p, 4);
    auto chi = reduce_bound_chi(rec.out(), VertexColoring{bucket_colors, k});
    auto & chi_data = std::get<BoundChiData>(chi.stages.front().data);
    auto last = reduce_listhom_to_hom(chi.out(), k, chi_data.certificate);
    rec.h_certificate = std::get<ToHomData>(last.stages.front().data).certificate;
    rec.stages.push_back(std::move(chi.stages.front()));
    rec.stages.push_back(std::move(last.stages.front()));
    return rec;
}

auto pipeline_vc(const Graph & g, int r) -> ReductionRecord
{
    auto rec = reduce_3col_to_listhom_vc(g, r);
    int n_intermediate = rec.out().g.size();
    auto & vc_data = std::get<SmallVcData>(rec.stages.front().data);
    int nb = int(vc_data.cover.size());
    auto last = reduce_listhom_to_hom(rec.out());
    auto & data = std::get<ToHomData>(last.stages.front().data);

    // Cover of the final graph: the bucket side of the intermediate plus
    // every gadget vertex; its size is within vc(G') + (h+1)(t+11).
    vector<int> cover = vc_data.cover;
    for (int v = n_intermediate; v < last.out().g.size(); ++v)
        cover.push_back(v);
    if (! is_vertex_cover(last.out().g, cover))
        throw logic_error{"cover certificate does not cover"};
    if (int(cover.size()) > nb + (data.h + 1) * (data.t + 11))
        throw logic_error{"cover certificate bound violated"};

    rec.h_certificate = data.certificate;
    rec.cover_certificate = std::move(cover);
    rec.stages.push_back(std::move(last.stages.front()));
    return rec;
}

namespace
{
    auto pow_big(BigInt base, int exp) -> BigInt
    {
        BigInt result = 1;
        while (exp-- > 0)
            result *= base;
        return result;
    }
}

auto smallg_full_size(int r, int dmax) -> BigInt
{
    BigInt l = BigInt(dmax) * dmax * r * r + 1;
    return l * pow_big(3, r) * pow_big(BigInt(r) * r * l * 3, dmax * r);
}

auto smallg_size_bound(int r) -> BigInt
{
    return pow_big(r, 50 * r);
}

auto smallvc_full_size(int r) -> BigInt
{
    return BigInt(5) * r * pow_big(3, r) + BigInt(25) * r * r * pow_big(3, 2 * r);
}

auto smallvc_size_bound(int r) -> BigInt
{
    return pow_big(300, r);
}

}
