#ifndef HARDHOM_IO_HPP
#define HARDHOM_IO_HPP

#include <hardhom/gadgets.hpp>
#include <hardhom/graph_core.hpp>
#include <hardhom/reductions.hpp>
#include <hardhom/solver.hpp>

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace hardhom
{

// Parse failure with the 1-based line number of the offending line.
struct ParseError : std::runtime_error
{
    int line;

    ParseError(int line_, const std::string & what_) :
        std::runtime_error("line " + std::to_string(line_) + ": " + what_),
        line(line_)
    {
    }
};

// Graph text format: `p graph <n> <m>`, then `e <u> <v>` lines with 1-based
// endpoints; `c` starts a comment. Loops, duplicates and out-of-range
// indices are rejected.
auto read_graph(std::istream & in) -> Graph;
auto write_graph(std::ostream & out, const Graph & g) -> void;

// Instance bundle: `p listhom <nG> <mG> <nH> <mH>`, `g e <u> <v>`,
// `h e <u> <v>`, and `l <v> <k> <u1> ... <uk>` list lines (omitted lists
// mean full).
auto read_bundle(std::istream & in) -> ListHomInstance;
auto write_bundle(std::ostream & out, const ListHomInstance & inst) -> void;

// Mapping certificate: one `m <v> <u>` line per vertex of g, 1-based.
auto read_certificate(std::istream & in, int n_g) -> Homomorphism;
auto write_certificate(std::ostream & out, const Homomorphism & m) -> void;

// Gadgets serialize as the graph format plus one `c mark <role> <v>` line
// per distinguished vertex.
auto read_gadget(std::istream & in) -> GadgetGraph;
auto write_gadget(std::ostream & out, const GadgetGraph & g) -> void;

// A reduction record serializes as its output bundle preceded by
// `c decode ...` comment lines describing the stage chain and certificates
// (write-only; records are rebuilt by re-running the reduction).
auto write_record(std::ostream & out, const ReductionRecord & rec) -> void;

}

#endif
