#include "smx/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>
#include <vector>

#include "smx/errors.hpp"

namespace smx {

namespace {

// Strip comments, split on whitespace.
std::vector<std::string> tokenize(const std::string& line) {
  const auto hash = line.find('#');
  std::istringstream in(hash == std::string::npos ? line
                                                  : line.substr(0, hash));
  std::vector<std::string> tokens;
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

float parse_float_token(const std::string& tok, long line) {
  float value = 0.0f;
  const auto [ptr, ec] =
      std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError("bad number '" + tok + "'", line);
  return value;
}

long parse_int_token(const std::string& tok, long line) {
  long value = 0;
  const auto [ptr, ec] =
      std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError("bad integer '" + tok + "'", line);
  return value;
}

}  // namespace

std::string format_float(float x) {
  char buf[48];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  (void)ec;
  return std::string(buf, ptr);
}

Graph parse_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");

  Graph g;
  long declared_edges = -1;
  long line_no = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = tokenize(line);
    if (tokens.empty()) continue;

    if (declared_edges < 0) {  // header
      if (tokens.size() < 2 || tokens.size() > 3)
        throw ParseError("header must be '<n> <edges> [directed|undirected]'",
                         line_no);
      const long n = parse_int_token(tokens[0], line_no);
      declared_edges = parse_int_token(tokens[1], line_no);
      if (n < 0 || declared_edges < 0)
        throw ParseError("vertex and edge counts must be non-negative",
                         line_no);
      g.n = static_cast<int>(n);
      g.directed = true;
      if (tokens.size() == 3) {
        if (tokens[2] == "undirected") g.directed = false;
        else if (tokens[2] != "directed")
          throw ParseError("direction must be 'directed' or 'undirected'",
                           line_no);
      }
      continue;
    }

    if (tokens.size() != 3)
      throw ParseError("edge line must be '<u> <v> <w>'", line_no);
    Edge e;
    const long u = parse_int_token(tokens[0], line_no);
    const long v = parse_int_token(tokens[1], line_no);
    if (u < 0 || u >= g.n || v < 0 || v >= g.n)
      throw IndexError("line " + std::to_string(line_no) + ": edge (" +
                       std::to_string(u) + ", " + std::to_string(v) +
                       ") outside vertex range [0, " + std::to_string(g.n) +
                       ")");
    e.u = static_cast<int>(u);
    e.v = static_cast<int>(v);
    e.w = parse_float_token(tokens[2], line_no);
    if (!std::isfinite(e.w))
      throw ParseError("edge weight must be finite", line_no);
    g.edges.push_back(e);
  }

  if (declared_edges < 0) throw ParseError("missing header line");
  if (static_cast<long>(g.edges.size()) != declared_edges)
    throw ParseError("header declares " + std::to_string(declared_edges) +
                     " edges but the body has " +
                     std::to_string(g.edges.size()));
  return g;
}

void write_edge_list(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  out << g.n << ' ' << g.edges.size() << ' '
      << (g.directed ? "directed" : "undirected") << '\n';
  for (const Edge& e : g.edges)
    out << e.u << ' ' << e.v << ' ' << format_float(e.w) << '\n';
  if (!out) throw ParseError("write to '" + path + "' failed");
}

MatrixBuffer parse_dense_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");

  std::vector<std::vector<float>> rows;
  long line_no = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    std::vector<float> row;
    row.reserve(tokens.size());
    for (const auto& tok : tokens)
      row.push_back(parse_float_token(tok, line_no));
    if (!rows.empty() && row.size() != rows.front().size())
      throw ParseError("row has " + std::to_string(row.size()) +
                           " columns, expected " +
                           std::to_string(rows.front().size()),
                       line_no);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("matrix file has no rows");

  MatrixBuffer m(static_cast<long>(rows.size()),
                 static_cast<long>(rows.front().size()));
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][j];
  return m;
}

void write_dense_matrix(const std::string& path, const MatrixBuffer& m) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  for (long i = 0; i < m.rows(); ++i) {
    for (long j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << format_float(m.at(i, j));
    }
    out << '\n';
  }
  if (!out) throw ParseError("write to '" + path + "' failed");
}

}  // namespace smx
