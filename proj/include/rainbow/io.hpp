// Text formats.
//
//   colored graph:  "ecg 1"            digraph:  "dg 1"
//                   "n <n> m <m> K <K>"          "n <n> m <m>"
//                   m lines "e <u> <v> <c>"      m lines "a <u> <v>"
//
// Lines starting with '#' are comments; ids are 0-based decimal.
// serialize(parse(s)) is the identity on canonical files.
#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "rainbow/graph.hpp"

namespace rainbow {

inline std::string serialize(const ColoredGraph& g) {
  std::ostringstream out;
  out << "ecg 1\n";
  out << "n " << g.n << " m " << g.m() << " K " << g.K << "\n";
  for (const ColoredEdge& e : g.edges) out << "e " << e.u << " " << e.v << " " << e.color << "\n";
  return out.str();
}

inline std::string serialize(const Digraph& d) {
  std::ostringstream out;
  out << "dg 1\n";
  out << "n " << d.n << " m " << d.m() << "\n";
  for (const Arc& a : d.arcs) out << "a " << a.u << " " << a.v << "\n";
  return out.str();
}

namespace detail {
// Reads the next line that is not blank and not a comment.
inline bool next_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    std::size_t i = line.find_first_not_of(" \t\r");
    if (i == std::string::npos) continue;
    if (line[i] == '#') continue;
    return true;
  }
  return false;
}
}  // namespace detail

inline ColoredGraph parse_colored_graph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!detail::next_line(in, line) || line.substr(0, 5) != "ecg 1")
    fail(Err::io_error, "expected 'ecg 1' header");
  if (!detail::next_line(in, line)) fail(Err::io_error, "missing size line");
  std::istringstream hd(line);
  std::string tn, tm, tk;
  int n = -1, m = -1, K = -1;
  if (!(hd >> tn >> n >> tm >> m >> tk >> K) || tn != "n" || tm != "m" || tk != "K")
    fail(Err::io_error, "bad size line: " + line);
  std::vector<ColoredEdge> edges;
  edges.reserve(m);
  for (int i = 0; i < m; ++i) {
    if (!detail::next_line(in, line)) fail(Err::io_error, "missing edge line " + std::to_string(i));
    std::istringstream es(line);
    std::string tag;
    ColoredEdge e;
    if (!(es >> tag >> e.u >> e.v >> e.color) || tag != "e")
      fail(Err::io_error, "bad edge line: " + line);
    edges.push_back(e);
  }
  ColoredGraph g = build_colored_graph(n, edges);
  if (g.K != K) fail(Err::io_error, "header K=" + std::to_string(K) + " but colors imply K=" + std::to_string(g.K));
  return g;
}

inline Digraph parse_digraph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!detail::next_line(in, line) || line.substr(0, 4) != "dg 1")
    fail(Err::io_error, "expected 'dg 1' header");
  if (!detail::next_line(in, line)) fail(Err::io_error, "missing size line");
  std::istringstream hd(line);
  std::string tn, tm;
  int n = -1, m = -1;
  if (!(hd >> tn >> n >> tm >> m) || tn != "n" || tm != "m")
    fail(Err::io_error, "bad size line: " + line);
  std::vector<Arc> arcs;
  arcs.reserve(m);
  for (int i = 0; i < m; ++i) {
    if (!detail::next_line(in, line)) fail(Err::io_error, "missing arc line " + std::to_string(i));
    std::istringstream as(line);
    std::string tag;
    Arc a;
    if (!(as >> tag >> a.u >> a.v) || tag != "a") fail(Err::io_error, "bad arc line: " + line);
    arcs.push_back(a);
  }
  return build_digraph(n, arcs);
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Err::io_error, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Err::io_error, "cannot open " + path + " for writing");
  out << text;
  if (!out) fail(Err::io_error, "write failed: " + path);
}

inline ColoredGraph load_colored_graph(const std::string& path) {
  return parse_colored_graph(read_text_file(path));
}

inline Digraph load_digraph(const std::string& path) { return parse_digraph(read_text_file(path)); }

}  // namespace rainbow
