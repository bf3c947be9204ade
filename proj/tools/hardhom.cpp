#include <hardhom/gadgets.hpp>
#include <hardhom/graph_core.hpp>
#include <hardhom/io.hpp>
#include <hardhom/reductions.hpp>
#include <hardhom/solver.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

using namespace hardhom;
using std::string;

namespace
{
    constexpr int exit_sat = 0;
    constexpr int exit_unsat = 1;
    constexpr int exit_error = 2;

    auto open_input(const string & path) -> std::ifstream
    {
        std::ifstream in(path);
        if (! in)
            throw std::runtime_error{"cannot open " + path};
        return in;
    }

    auto open_output(const string & path) -> std::ofstream
    {
        std::ofstream out(path);
        if (! out)
            throw std::runtime_error{"cannot open " + path + " for writing"};
        return out;
    }

    auto parse_mode(const string & mode) -> Mode
    {
        return mode == "local" ? Mode::LocallyInjective : Mode::Plain;
    }

    auto brute_budget(std::int64_t flag_value) -> std::int64_t
    {
        if (flag_value > 0)
            return flag_value;
        if (const char * env = std::getenv("HARDHOM_BUDGET"))
            return std::strtoll(env, nullptr, 10);
        return default_brute_budget;
    }

    auto run_solve(const string & path, const string & mode_name, const string & strategy,
        const string & cert_path, std::int64_t budget, int vc_threshold) -> int
    {
        auto in = open_input(path);
        auto inst = read_bundle(in);
        inst.validate();
        Mode mode = parse_mode(mode_name);

        SolveResult result;
        string used = strategy;
        if (strategy == "auto") {
            bool full = true;
            for (auto & list : inst.lists)
                if (int(list.size()) != inst.h.size())
                    full = false;
            if (mode == Mode::Plain && full) {
                if (auto verdict = bipartite_fast_path(inst)) {
                    std::cerr << "strategy: fast-path\n";
                    return *verdict == Status::Satisfiable
                        ? (std::cout << "satisfiable (bipartite fast path; no certificate emitted)\n",
                              exit_sat)
                        : exit_unsat;
                }
            }
            if (mode == Mode::Plain) {
                auto cover = min_vertex_cover(inst.g);
                if (int(cover.size()) <= vc_threshold) {
                    used = "vc";
                    result = solve_vc(inst, cover);
                }
                else {
                    used = "backtrack";
                    result = solve_backtrack(inst, mode);
                }
            }
            else {
                used = "backtrack";
                result = solve_backtrack(inst, mode);
            }
        }
        else if (strategy == "brute")
            result = solve_brute(inst, mode, brute_budget(budget));
        else if (strategy == "backtrack")
            result = solve_backtrack(inst, mode);
        else if (strategy == "vc") {
            if (mode != Mode::Plain)
                throw std::runtime_error{"the vc strategy only supports plain mode"};
            result = solve_vc(inst, min_vertex_cover(inst.g));
        }
        else
            throw std::runtime_error{"unknown strategy " + strategy};

        std::cerr << "strategy: " << used
                  << " nodes_explored: " << result.stats.nodes_explored
                  << " assignments_tried: " << result.stats.assignments_tried << "\n";
        if (result.status == Status::BudgetExceeded) {
            std::cerr << "enumeration budget exceeded; verdict unknown\n";
            return exit_error;
        }
        if (result.status == Status::Unsatisfiable)
            return exit_unsat;
        write_certificate(std::cout, *result.witness);
        if (! cert_path.empty()) {
            auto out = open_output(cert_path);
            write_certificate(out, *result.witness);
        }
        return exit_sat;
    }

    auto report_sizes(const ReductionRecord & rec) -> void
    {
        auto & out = rec.out();
        std::cerr << "|V(G')| = " << out.g.size() << ", |V(H')| = " << out.h.size() << "\n";
        for (auto & stage : rec.stages) {
            if (auto * d = std::get_if<SmallGData>(&stage.data)) {
                int nb = (d->padded.size() + d->r - 1) / d->r;
                std::cerr << "small-g stage: buckets = " << nb
                          << " (= ceil(n/r)), pruned |V(H')| = " << stage.out.h.size()
                          << ", full size " << smallg_full_size(d->r, d->dmax)
                          << (smallg_full_size(d->r, 4) <= smallg_size_bound(d->r)
                                 ? " <= " : " > ")
                          << "r^(50r) = " << smallg_size_bound(d->r) << "\n";
            }
            else if (auto * d3 = std::get_if<SmallVcData>(&stage.data))
                std::cerr << "small-vc stage: cover size " << d3->cover.size()
                          << ", full size " << smallvc_full_size(d3->r)
                          << (smallvc_full_size(d3->r) <= smallvc_size_bound(d3->r) ? " <= " : " > ")
                          << "300^r = " << smallvc_size_bound(d3->r) << "\n";
            else if (auto * d4 = std::get_if<BoundChiData>(&stage.data))
                std::cerr << "bound-chi stage: k = " << d4->g_coloring.k
                          << ", |V(H')| = " << stage.out.h.size() << "\n";
            else if (auto * d5 = std::get_if<ToHomData>(&stage.data))
                std::cerr << "to-hom stage: t = " << d5->t << ", h = " << d5->h
                          << ", |V(H')| = " << stage.out.h.size()
                          << " <= (h+1)(t+11) = " << (d5->h + 1) * (d5->t + 11) << "\n";
        }
        if (rec.h_certificate)
            std::cerr << "colouring certificate with " << rec.h_certificate->k << " colours\n";
        if (rec.cover_certificate)
            std::cerr << "cover certificate of size " << rec.cover_certificate->size() << "\n";
    }

    auto run_reduce(const string & path, const string & lemma, int r, int t,
        const string & out_path) -> int
    {
        auto in = open_input(path);
        std::ostringstream buffer;

        if (lemma == "deg") {
            auto g = read_graph(in);
            auto d = degree_reduce(g);
            std::cerr << "|V| " << g.size() << " -> " << d.out.size()
                      << ", max degree " << g.max_degree() << " -> " << d.out.max_degree() << "\n";
            write_graph(buffer, d.out);
        }
        else {
            ReductionRecord rec;
            if (lemma == "l4") {
                auto inst = read_bundle(in);
                rec = reduce_bound_chi(inst, greedy_coloring(inst.g));
            }
            else if (lemma == "l5") {
                auto inst = read_bundle(in);
                rec = reduce_listhom_to_hom(inst,
                    t > 0 ? std::optional<int>{t} : std::nullopt);
            }
            else {
                auto g = read_graph(in);
                if (lemma == "l2")
                    rec = reduce_3col_to_listhom(g, r);
                else if (lemma == "l3")
                    rec = reduce_3col_to_listhom_vc(g, r);
                else if (lemma == "main")
                    rec = pipeline_main(g, r);
                else if (lemma == "chi")
                    rec = pipeline_chi(g, r);
                else if (lemma == "vc")
                    rec = pipeline_vc(g, r);
                else if (lemma == "local")
                    rec = pipeline_local(g, r);
                else
                    throw std::runtime_error{"unknown lemma " + lemma};
            }
            report_sizes(rec);
            write_record(buffer, rec);
        }

        if (out_path.empty())
            std::cout << buffer.str();
        else
            open_output(out_path) << buffer.str();
        return exit_sat;
    }

    auto run_verify(const string & bundle_path, const string & cert_path,
        const string & mode_name) -> int
    {
        auto bin = open_input(bundle_path);
        auto inst = read_bundle(bin);
        inst.validate();
        auto cin_ = open_input(cert_path);
        auto m = read_certificate(cin_, inst.g.size());
        return verify(inst, m, parse_mode(mode_name)) ? exit_sat : exit_unsat;
    }

    auto run_gadget(const string & kind, int k, int t, int h, const string & out_path) -> int
    {
        GadgetGraph g;
        if (kind == "D")
            g = build_D();
        else if (kind == "T")
            g = build_T(k);
        else if (kind == "Tclique")
            g = build_T_clique(k, t);
        else if (kind == "A")
            g = build_A(h);
        else
            throw std::runtime_error{"unknown gadget " + kind};
        if (out_path.empty())
            write_gadget(std::cout, g);
        else {
            auto out = open_output(out_path);
            write_gadget(out, g);
        }
        return exit_sat;
    }

    auto random_instance(std::mt19937 & rng, int max_n, int max_h) -> ListHomInstance
    {
        int n = std::uniform_int_distribution<int>(1, max_n)(rng);
        int h = std::uniform_int_distribution<int>(1, max_h)(rng);
        ListHomInstance inst;
        inst.g = random_graph_max_degree(n, 4, rng());
        inst.h = random_graph_max_degree(h, h, rng());
        inst.lists.resize(n);
        for (int v = 0; v < n; ++v)
            for (int u = 0; u < h; ++u)
                if (std::uniform_real_distribution<double>(0, 1)(rng) < 0.7)
                    inst.lists[v].push_back(u);
        return inst;
    }

    auto run_bench(int count, int max_n, int max_h, unsigned seed,
        const string & strategies, const string & out_path) -> int
    {
        std::vector<string> names;
        std::stringstream ss(strategies);
        string tok;
        while (std::getline(ss, tok, ','))
            names.push_back(tok);

        std::ostringstream csv;
        csv << "instance,strategy,verdict,nodes_explored,assignments_tried,wall_ms\n";
        std::mt19937 rng(seed);
        for (int i = 0; i < count; ++i) {
            auto inst = random_instance(rng, max_n, max_h);
            for (auto & name : names) {
                auto start = std::chrono::steady_clock::now();
                SolveResult result;
                if (name == "brute")
                    result = solve_brute(inst, Mode::Plain);
                else if (name == "backtrack")
                    result = solve_backtrack(inst, Mode::Plain);
                else if (name == "vc") {
                    auto cover = min_vertex_cover(inst.g);
                    result = solve_vc(inst, cover);
                    std::int64_t bound = 1;
                    for (std::size_t c = 0; c < cover.size(); ++c)
                        bound *= inst.h.size();
                    if (result.stats.assignments_tried > bound)
                        throw std::logic_error{"vc assignment bound violated"};
                }
                else
                    throw std::runtime_error{"unknown strategy " + name};
                auto ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start).count();
                csv << i << "," << name << ","
                    << (result.status == Status::Satisfiable ? "sat"
                           : result.status == Status::Unsatisfiable ? "unsat" : "budget")
                    << "," << result.stats.nodes_explored << ","
                    << result.stats.assignments_tried << "," << ms << "\n";
            }
        }
        if (out_path.empty())
            std::cout << csv.str();
        else
            open_output(out_path) << csv.str();
        return exit_sat;
    }
}

auto main(int argc, char ** argv) -> int
{
    CLI::App app{"graph-homomorphism workbench: exact solvers and hardness reductions"};
    app.require_subcommand(1);

    string path, cert, mode = "listhom", strategy = "auto", out_path, lemma, kind = "D";
    string strategies = "backtrack";
    std::int64_t budget = 0;
    int r = 2, t = 0, k = 1, h = 1, vc_threshold = 12;
    int count = 10, max_n = 8, max_h = 5;
    unsigned seed = 1;

    auto * solve = app.add_subcommand("solve", "decide an instance bundle");
    solve->add_option("instance", path, "bundle file")->required();
    solve->add_option("--mode", mode, "hom, listhom or local");
    solve->add_option("--strategy", strategy, "brute, backtrack, vc or auto");
    solve->add_option("--cert", cert, "also write the certificate here");
    solve->add_option("--budget", budget, "brute-force enumeration budget");
    solve->add_option("--vc-threshold", vc_threshold, "max cover size for the auto vc strategy");

    auto * reduce = app.add_subcommand("reduce", "run a reduction or pipeline");
    reduce->add_option("input", path, "graph file (l2, l3, deg, pipelines) or bundle (l4, l5)")
        ->required();
    reduce->add_option("--lemma", lemma, "l2, l3, l4, l5, deg, main, chi, vc or local")
        ->required();
    reduce->add_option("-r", r, "bucket capacity");
    reduce->add_option("-t", t, "chromatic upper bound for l5");
    reduce->add_option("--out", out_path, "output file (default stdout)");

    auto * verify_cmd = app.add_subcommand("verify", "check a certificate");
    verify_cmd->add_option("instance", path, "bundle file")->required();
    verify_cmd->add_option("certificate", cert, "certificate file")->required();
    verify_cmd->add_option("--mode", mode, "hom, listhom or local");

    auto * gadget = app.add_subcommand("gadget", "emit a gadget graph");
    gadget->add_option("--kind", kind, "D, T, Tclique or A")->required();
    gadget->add_option("-k", k, "block count for T/Tclique");
    gadget->add_option("-t", t, "clique parameter for Tclique");
    gadget->add_option("--h", h, "matching size for A");
    gadget->add_option("--out", out_path, "output file (default stdout)");

    auto * bench = app.add_subcommand("bench", "benchmark strategies on random instances");
    bench->add_option("--count", count, "number of instances");
    bench->add_option("--max-n", max_n, "maximum |V(g)|");
    bench->add_option("--max-h", max_h, "maximum |V(h)|");
    bench->add_option("--seed", seed, "generator seed");
    bench->add_option("--strategies", strategies, "comma-separated strategy list");
    bench->add_option("--out", out_path, "CSV output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed())
            return run_solve(path, mode, strategy, cert, budget, vc_threshold);
        if (reduce->parsed())
            return run_reduce(path, lemma, r, t, out_path);
        if (verify_cmd->parsed())
            return run_verify(path, cert, mode);
        if (gadget->parsed())
            return run_gadget(kind, k, t, h, out_path);
        if (bench->parsed())
            return run_bench(count, max_n, max_h, seed, strategies, out_path);
    }
    catch (const ParseError & e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return exit_error;
    }
    catch (const std::exception & e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_error;
    }
    return exit_error;
}
