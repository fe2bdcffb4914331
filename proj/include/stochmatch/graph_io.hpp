#pragma once

#include <iosfwd>
#include <string>

#include "stochmatch/fractional.hpp"
#include "stochmatch/graph.hpp"

namespace stochmatch {

// Graph text format: a header line "n m p" followed by m lines "u v w".
// Blank lines and lines starting with '#' are ignored. Errors are
// ParseError values naming the source and the 1-based line.
Graph parse_graph(std::istream& in, const std::string& source = "<input>");
Graph read_graph(const std::string& path);
void write_graph(std::ostream& out, const Graph& g);
void write_graph(const Graph& g, const std::string& path);

// Fractional matching format: one "edge_id x_e" line per entry.
FractionalMatching parse_fractional(std::istream& in, const Graph& g,
                                    const std::string& source = "<input>");
FractionalMatching read_fractional(const std::string& path, const Graph& g);
void write_fractional(std::ostream& out, const FractionalMatching& x);

// Shortest text that parses back to the same double.
std::string format_double(double value);

}  // namespace stochmatch
