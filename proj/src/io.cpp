#include <hardhom/io.hpp>

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

using std::string;
using std::vector;

namespace hardhom
{

namespace
{
    struct LineReader
    {
        std::istream & in;
        int line_no = 0;

        // Next non-empty, non-comment line split into tokens; comment lines
        // are surfaced to the optional hook (gadget marks live in comments).
        auto next(vector<string> & tokens,
            const std::function<void(const vector<string> &, int)> & comment_hook = {}) -> bool
        {
            string line;
            while (std::getline(in, line)) {
                ++line_no;
                std::istringstream ss(line);
                tokens.clear();
                string tok;
                while (ss >> tok)
                    tokens.push_back(tok);
                if (tokens.empty())
                    continue;
                if (tokens[0] == "c") {
                    if (comment_hook)
                        comment_hook(tokens, line_no);
                    continue;
                }
                return true;
            }
            return false;
        }

        auto to_int(const string & tok) const -> int
        {
            std::size_t pos = 0;
            int value;
            try {
                value = std::stoi(tok, &pos);
            }
            catch (const std::exception &) {
                throw ParseError{line_no, "expected an integer, got '" + tok + "'"};
            }
            if (pos != tok.size())
                throw ParseError{line_no, "expected an integer, got '" + tok + "'"};
            return value;
        }
    };

    auto add_edge_checked(Graph & g, int u1, int v1, const LineReader & reader) -> void
    {
        // 1-based on the wire, 0-based internally.
        if (u1 < 1 || v1 < 1 || u1 > g.size() || v1 > g.size())
            throw ParseError{reader.line_no, "endpoint out of range"};
        if (u1 == v1)
            throw ParseError{reader.line_no, "self-loop"};
        if (g.adjacent(u1 - 1, v1 - 1))
            throw ParseError{reader.line_no, "duplicate edge"};
        g.add_edge(u1 - 1, v1 - 1);
    }

    auto read_graph_impl(std::istream & in,
        const std::function<void(const vector<string> &, int)> & comment_hook) -> Graph
    {
        LineReader reader{in};
        vector<string> tokens;
        if (! reader.next(tokens, comment_hook))
            throw ParseError{reader.line_no, "missing problem line"};
        if (tokens.size() != 4 || tokens[0] != "p" || tokens[1] != "graph")
            throw ParseError{reader.line_no, "expected 'p graph <n> <m>'"};
        int n = reader.to_int(tokens[2]);
        int m = reader.to_int(tokens[3]);
        if (n < 0 || m < 0)
            throw ParseError{reader.line_no, "negative counts"};

        Graph g(n);
        for (int i = 0; i < m; ++i) {
            if (! reader.next(tokens, comment_hook))
                throw ParseError{reader.line_no, "fewer edge lines than declared"};
            if (tokens.size() != 3 || tokens[0] != "e")
                throw ParseError{reader.line_no, "expected 'e <u> <v>'"};
            add_edge_checked(g, reader.to_int(tokens[1]), reader.to_int(tokens[2]), reader);
        }
        if (reader.next(tokens, comment_hook))
            throw ParseError{reader.line_no, "trailing content after declared edges"};
        return g;
    }
}

auto read_graph(std::istream & in) -> Graph
{
    return read_graph_impl(in, {});
}

auto write_graph(std::ostream & out, const Graph & g) -> void
{
    out << "p graph " << g.size() << " " << g.edge_count() << "\n";
    for (auto & [u, v] : g.edges())
        out << "e " << u + 1 << " " << v + 1 << "\n";
}

auto read_bundle(std::istream & in) -> ListHomInstance
{
    LineReader reader{in};
    vector<string> tokens;
    if (! reader.next(tokens))
        throw ParseError{reader.line_no, "missing problem line"};
    if (tokens.size() != 6 || tokens[0] != "p" || tokens[1] != "listhom")
        throw ParseError{reader.line_no, "expected 'p listhom <nG> <mG> <nH> <mH>'"};
    int ng = reader.to_int(tokens[2]), mg = reader.to_int(tokens[3]);
    int nh = reader.to_int(tokens[4]), mh = reader.to_int(tokens[5]);
    if (ng < 0 || mg < 0 || nh < 0 || mh < 0)
        throw ParseError{reader.line_no, "negative counts"};

    ListHomInstance inst;
    inst.g = Graph(ng);
    inst.h = Graph(nh);
    vector<int> all(nh);
    for (int u = 0; u < nh; ++u)
        all[u] = u;
    inst.lists.assign(ng, all);
    vector<char> list_seen(ng, 0);

    int seen_g = 0, seen_h = 0;
    while (reader.next(tokens)) {
        if (tokens[0] == "g" || tokens[0] == "h") {
            if (tokens.size() != 4 || tokens[1] != "e")
                throw ParseError{reader.line_no, "expected '" + tokens[0] + " e <u> <v>'"};
            Graph & target = tokens[0] == "g" ? inst.g : inst.h;
            add_edge_checked(target, reader.to_int(tokens[2]), reader.to_int(tokens[3]), reader);
            ++(tokens[0] == "g" ? seen_g : seen_h);
        }
        else if (tokens[0] == "l") {
            if (tokens.size() < 3)
                throw ParseError{reader.line_no, "expected 'l <v> <k> <targets...>'"};
            int v = reader.to_int(tokens[1]);
            int k = reader.to_int(tokens[2]);
            if (v < 1 || v > ng)
                throw ParseError{reader.line_no, "list vertex out of range"};
            if (k < 0 || int(tokens.size()) != 3 + k)
                throw ParseError{reader.line_no, "list length mismatch"};
            if (list_seen[v - 1])
                throw ParseError{reader.line_no, "duplicate list for vertex"};
            list_seen[v - 1] = 1;
            vector<int> list;
            for (int i = 0; i < k; ++i) {
                int u = reader.to_int(tokens[3 + i]);
                if (u < 1 || u > nh)
                    throw ParseError{reader.line_no, "list target out of range"};
                list.push_back(u - 1);
            }
            std::sort(list.begin(), list.end());
            if (std::adjacent_find(list.begin(), list.end()) != list.end())
                throw ParseError{reader.line_no, "duplicate list target"};
            inst.lists[v - 1] = std::move(list);
        }
        else
            throw ParseError{reader.line_no, "unrecognized line '" + tokens[0] + "'"};
    }
    if (seen_g != mg)
        throw ParseError{reader.line_no, "g edge count mismatch"};
    if (seen_h != mh)
        throw ParseError{reader.line_no, "h edge count mismatch"};
    if (std::find(list_seen.begin(), list_seen.end(), 1) == list_seen.end())
        inst.lists.clear();  // all lists full: keep the instance plain
    return inst;
}

auto write_bundle(std::ostream & out, const ListHomInstance & inst) -> void
{
    out << "p listhom " << inst.g.size() << " " << inst.g.edge_count() << " "
        << inst.h.size() << " " << inst.h.edge_count() << "\n";
    for (auto & [u, v] : inst.g.edges())
        out << "g e " << u + 1 << " " << v + 1 << "\n";
    for (auto & [u, v] : inst.h.edges())
        out << "h e " << u + 1 << " " << v + 1 << "\n";
    for (int v = 0; v < int(inst.lists.size()); ++v) {
        if (int(inst.lists[v].size()) == inst.h.size())
            continue;
        auto sorted = inst.lists[v];
        std::sort(sorted.begin(), sorted.end());
        out << "l " << v + 1 << " " << sorted.size();
        for (int u : sorted)
            out << " " << u + 1;
        out << "\n";
    }
}

auto read_certificate(std::istream & in, int n_g) -> Homomorphism
{
    LineReader reader{in};
    vector<string> tokens;
    Homomorphism m{vector<int>(n_g, -1)};
    while (reader.next(tokens)) {
        if (tokens.size() != 3 || tokens[0] != "m")
            throw ParseError{reader.line_no, "expected 'm <v> <u>'"};
        int v = reader.to_int(tokens[1]);
        int u = reader.to_int(tokens[2]);
        if (v < 1 || v > n_g || u < 1)
            throw ParseError{reader.line_no, "certificate entry out of range"};
        if (m.map[v - 1] != -1)
            throw ParseError{reader.line_no, "duplicate certificate entry"};
        m.map[v - 1] = u - 1;
    }
    for (int v = 0; v < n_g; ++v)
        if (m.map[v] == -1)
            throw ParseError{reader.line_no, "missing certificate entry for vertex " + std::to_string(v + 1)};
    return m;
}

auto write_certificate(std::ostream & out, const Homomorphism & m) -> void
{
    for (int v = 0; v < int(m.map.size()); ++v)
        out << "m " << v + 1 << " " << m.map[v] + 1 << "\n";
}

auto read_gadget(std::istream & in) -> GadgetGraph
{
    GadgetGraph result;
    vector<std::pair<string, int>> raw_marks;
    int mark_line = 0;
    auto hook = [&](const vector<string> & tokens, int line) {
        if (tokens.size() == 4 && tokens[1] == "mark") {
            mark_line = line;
            std::size_t pos = 0;
            int v = std::stoi(tokens[3], &pos);
            if (pos != tokens[3].size())
                throw ParseError{line, "bad mark vertex"};
            raw_marks.emplace_back(tokens[2], v);
        }
    };
    result.graph = read_graph_impl(in, hook);
    for (auto & [role, v1] : raw_marks) {
        if (v1 < 1 || v1 > result.graph.size())
            throw ParseError{mark_line, "mark vertex out of range"};
        result.marks[role].push_back(v1 - 1);
    }
    return result;
}

auto write_gadget(std::ostream & out, const GadgetGraph & g) -> void
{
    for (auto & [role, vertices] : g.marks)
        for (int v : vertices)
            out << "c mark " << role << " " << v + 1 << "\n";
    write_graph(out, g.graph);
}

auto write_record(std::ostream & out, const ReductionRecord & rec) -> void
{
    auto kind_name = [](ReductionKind k) {
        switch (k) {
        case ReductionKind::SmallG: return "small-g";
        case ReductionKind::SmallVc: return "small-vc";
        case ReductionKind::BoundChi: return "bound-chi";
        case ReductionKind::ToHom: return "to-hom";
        }
        return "?";
    };
    out << "c decode mode " << (rec.mode == Mode::LocallyInjective ? "local" : "plain") << "\n";
    for (std::size_t s = 0; s < rec.stages.size(); ++s) {
        auto & stage = rec.stages[s];
        out << "c decode stage " << s + 1 << " " << kind_name(stage.kind);
        if (auto * d = std::get_if<SmallGData>(&stage.data))
            out << " r " << d->r << " dmax " << d->dmax << " n " << d->input.size()
                << " padded " << d->padded.size() << " labels " << d->grouping.label_count
                << " configs " << d->configs.size() << " dummy " << (d->dummy ? 1 : 0);
        else if (auto * d3 = std::get_if<SmallVcData>(&stage.data))
            out << " r " << d3->r << " n " << d3->input.size()
                << " padded " << d3->padded.size() << " lefts " << d3->lefts.size()
                << " rights " << d3->rights.size() << " dummy " << (d3->dummy ? 1 : 0);
        else if (auto * d4 = std::get_if<BoundChiData>(&stage.data))
            out << " k " << d4->g_coloring.k;
        else if (auto * d5 = std::get_if<ToHomData>(&stage.data))
            out << " t " << d5->t << " h " << d5->h;
        out << "\n";
    }
    if (rec.h_certificate) {
        out << "c decode h-coloring " << rec.h_certificate->k;
        for (int c : rec.h_certificate->colors)
            out << " " << c;
        out << "\n";
    }
    if (rec.cover_certificate) {
        out << "c decode cover " << rec.cover_certificate->size();
        for (int v : *rec.cover_certificate)
            out << " " << v + 1;
        out << "\n";
    }
    write_bundle(out, rec.out());
}

}
