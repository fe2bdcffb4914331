#include "stochmatch/graph_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

namespace stochmatch {

namespace {

// Splits a line into whitespace-separated fields.
std::vector<std::string> fields_of(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  for (std::string f; ss >> f;) out.push_back(f);
  return out;
}

bool skippable(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

template <class T>
T parse_number(const std::string& text, const std::string& source, int line,
               const char* what) {
  T value{};
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw ParseError(source, line,
                     std::string("invalid ") + what + " '" + text + "'");
  return value;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kIo, "cannot open '" + path + "' for writing");
  return out;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

Graph parse_graph(std::istream& in, const std::string& source) {
  std::string line;
  int line_no = 0;
  bool have_header = false;
  std::int64_t n = 0, m = 0;
  double p = 0.0;
  std::vector<EdgeInput> edges;
  std::map<std::pair<std::int64_t, std::int64_t>, int> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    const auto f = fields_of(line);
    if (!have_header) {
      if (f.size() != 3)
        throw ParseError(source, line_no, "expected header 'n m p'");
      n = parse_number<std::int64_t>(f[0], source, line_no, "vertex count");
      m = parse_number<std::int64_t>(f[1], source, line_no, "edge count");
      p = parse_number<double>(f[2], source, line_no, "probability");
      if (n < 0 || n > INT32_MAX)
        throw ParseError(source, line_no, "vertex count out of range");
      if (m < 0) throw ParseError(source, line_no, "negative edge count");
      if (!(p > 0.0 && p < 1.0))
        throw ParseError(source, line_no, "probability must lie in (0, 1)");
      have_header = true;
      continue;
    }
    if (f.size() != 3) throw ParseError(source, line_no, "expected 'u v w'");
    if (static_cast<std::int64_t>(edges.size()) == m)
      throw ParseError(source, line_no, "more edges than the header declares");
    const auto u = parse_number<std::int64_t>(f[0], source, line_no, "endpoint");
    const auto v = parse_number<std::int64_t>(f[1], source, line_no, "endpoint");
    const auto w = parse_number<double>(f[2], source, line_no, "weight");
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw ParseError(source, line_no, "endpoint outside [0, n)");
    if (u == v) throw ParseError(source, line_no, "self-loop");
    if (!(w > 0.0) || !std::isfinite(w))
      throw ParseError(source, line_no, "weight must be positive and finite");
    const auto key = std::pair{std::min(u, v), std::max(u, v)};
    if (auto [it, fresh] = seen.emplace(key, line_no); !fresh)
      throw ParseError(source, line_no,
                       "duplicate of the edge on line " + std::to_string(it->second));
    edges.push_back({u, v, w});
  }
  if (!have_header) throw ParseError(source, line_no + 1, "missing header 'n m p'");
  if (static_cast<std::int64_t>(edges.size()) != m)
    throw ParseError(source, line_no + 1,
                     "expected " + std::to_string(m) + " edges, found " +
                         std::to_string(edges.size()));
  return build_graph(edges, p, static_cast<int>(n));
}

Graph read_graph(const std::string& path) {
  auto in = open_input(path);
  return parse_graph(in, path);
}

void write_graph(std::ostream& out, const Graph& g) {
  out << g.num_vertices() << ' ' << g.num_edges() << ' ' << format_double(g.p())
      << '\n';
  for (const Edge& e : g.edges())
    out << e.u << ' ' << e.v << ' ' << format_double(e.w) << '\n';
}

void write_graph(const Graph& g, const std::string& path) {
  auto out = open_output(path);
  write_graph(out, g);
  if (!out) throw Error(ErrorKind::kIo, "failed writing '" + path + "'");
}

FractionalMatching parse_fractional(std::istream& in, const Graph& g,
                                    const std::string& source) {
  std::string line;
  int line_no = 0;
  std::vector<std::pair<EdgeId, double>> entries;
  std::map<EdgeId, int> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    const auto f = fields_of(line);
    if (f.size() != 2) throw ParseError(source, line_no, "expected 'edge_id x_e'");
    const auto e = parse_number<std::uint64_t>(f[0], source, line_no, "edge id");
    const auto x = parse_number<double>(f[1], source, line_no, "value");
    if (e >= g.num_edges())
      throw ParseError(source, line_no, "edge id outside [0, m)");
    if (!std::isfinite(x)) throw ParseError(source, line_no, "non-finite value");
    if (auto [it, fresh] = seen.emplace(static_cast<EdgeId>(e), line_no); !fresh)
      throw ParseError(source, line_no,
                       "edge already listed on line " + std::to_string(it->second));
    entries.push_back({static_cast<EdgeId>(e), x});
  }
  return FractionalMatching(g.num_edges(), std::move(entries));
}

FractionalMatching read_fractional(const std::string& path, const Graph& g) {
  auto in = open_input(path);
  return parse_fractional(in, g, path);
}

void write_fractional(std::ostream& out, const FractionalMatching& x) {
  for (std::size_t i = 0; i < x.size(); ++i)
    out << x.ids()[i] << ' ' << format_double(x.values()[i]) << '\n';
}

}  // namespace stochmatch
