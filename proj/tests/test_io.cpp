#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <string>

#include "doctest.h"
#include "smx/errors.hpp"
#include "smx/fp16.hpp"
#include "smx/generate.hpp"
#include "smx/io.hpp"

using namespace smx;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) {
    path = (std::filesystem::temp_directory_path() / name).string();
  }
  ~TempFile() { std::remove(path.c_str()); }

  void write(const std::string& text) const {
    std::ofstream out(path);
    out << text;
  }
  std::string read() const {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
};

}  // namespace

TEST_CASE("edge list parsing") {
  TempFile f("smx_io_parse.txt");

  SUBCASE("directed header with comments and blank lines") {
    f.write("# capacity network\n3 2 directed\n\n0 1 4.5\n1 2 2 # inline\n");
    const Graph g = parse_edge_list(f.path);
    CHECK(g.n == 3);
    CHECK(g.directed);
    REQUIRE(g.edges.size() == 2);
    CHECK(g.edges[0].u == 0);
    CHECK(g.edges[0].v == 1);
    CHECK(g.edges[0].w == 4.5f);
    CHECK(g.edges[1].w == 2.0f);
  }
  SUBCASE("undirected marker") {
    f.write("2 1 undirected\n0 1 3\n");
    CHECK_FALSE(parse_edge_list(f.path).directed);
  }
  SUBCASE("two-token header defaults to directed") {
    f.write("2 1\n0 1 3\n");
    CHECK(parse_edge_list(f.path).directed);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(parse_edge_list("/nonexistent/nowhere.txt"), ParseError);
  }
  SUBCASE("edge count mismatch") {
    f.write("3 5\n0 1 1\n");
    CHECK_THROWS_AS(parse_edge_list(f.path), ParseError);
  }
  SUBCASE("vertex out of range reports the line") {
    f.write("2 1\n0 7 1\n");
    try {
      parse_edge_list(f.path);
      FAIL("expected IndexError");
    } catch (const IndexError& e) {
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
  }
  SUBCASE("malformed rows") {
    f.write("2 1\n0 1\n");  // two tokens, not three
    CHECK_THROWS_AS(parse_edge_list(f.path), ParseError);
    f.write("2 1\n0 1 one\n");
    CHECK_THROWS_AS(parse_edge_list(f.path), ParseError);
    f.write("not a header\n");
    CHECK_THROWS_AS(parse_edge_list(f.path), ParseError);
    f.write("");
    CHECK_THROWS_AS(parse_edge_list(f.path), ParseError);
    f.write("2 1\n0 1 inf\n");  // edge weights must be finite
    CHECK_THROWS_AS(parse_edge_list(f.path), ParseError);
    f.write("-2 0\n");
    CHECK_THROWS_AS(parse_edge_list(f.path), ParseError);
  }
}

TEST_CASE("edge list write-parse round trip") {
  TempFile f("smx_io_roundtrip.txt");
  Graph g;
  g.n = 4;
  g.directed = false;
  g.edges = {{0, 1, 0.1f}, {1, 2, 1e-7f}, {2, 3, 123456.75f}};
  write_edge_list(f.path, g);
  const Graph back = parse_edge_list(f.path);
  CHECK(back.n == g.n);
  CHECK(back.directed == g.directed);
  REQUIRE(back.edges.size() == g.edges.size());
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    CHECK(back.edges[i].u == g.edges[i].u);
    CHECK(back.edges[i].v == g.edges[i].v);
    // Weights survive exactly: shortest round-trip float formatting.
    CHECK(back.edges[i].w == g.edges[i].w);
  }

  write_edge_list(f.path, back);
  const std::string once = f.read();
  write_edge_list(f.path, parse_edge_list(f.path));
  CHECK(f.read() == once);  // stable byte-for-byte
}

TEST_CASE("dense matrix io") {
  TempFile f("smx_io_dense.txt");

  SUBCASE("round trip keeps every bit, including infinities") {
    MatrixBuffer m(2, 3);
    m.at(0, 0) = 0.30000001192092896f;
    m.at(0, 1) = std::numeric_limits<float>::infinity();
    m.at(0, 2) = -std::numeric_limits<float>::infinity();
    m.at(1, 0) = -0.0f;
    m.at(1, 1) = 1e-38f;
    m.at(1, 2) = 3.402823e38f;
    write_dense_matrix(f.path, m);
    const MatrixBuffer back = parse_dense_matrix(f.path);
    CHECK(bitwise_equal(m, back));
  }
  SUBCASE("ragged rows are rejected") {
    f.write("1 2 3\n4 5\n");
    CHECK_THROWS_AS(parse_dense_matrix(f.path), ParseError);
  }
  SUBCASE("empty file is rejected") {
    f.write("\n\n");
    CHECK_THROWS_AS(parse_dense_matrix(f.path), ParseError);
  }
  SUBCASE("comments and floats parse") {
    f.write("# two points\n0.5 -2\n1 inf\n");
    const MatrixBuffer m = parse_dense_matrix(f.path);
    CHECK(m.rows() == 2);
    CHECK(m.cols() == 2);
    CHECK(m.at(0, 1) == -2.0f);
    CHECK(m.at(1, 1) == std::numeric_limits<float>::infinity());
  }
}

TEST_CASE("float formatting round trips") {
  CHECK(format_float(0.0f) == "0");
  CHECK(format_float(std::numeric_limits<float>::infinity()) == "inf");
  CHECK(format_float(-std::numeric_limits<float>::infinity()) == "-inf");
  // Shortest-round-trip formatting: parsing it back recovers every bit,
  // subnormals included (which is why stof, with its ERANGE throw, is not
  // used here or in the parsers).
  for (float x : {0.1f, 1.0f / 3.0f, 1e-44f, 65504.0f, -123.456f}) {
    const std::string s = format_float(x);
    float back = 0.0f;
    const auto [ptr, ec] =
        std::from_chars(s.data(), s.data() + s.size(), back);
    CHECK(ec == std::errc());
    CHECK(ptr == s.data() + s.size());
    CHECK(back == x);
  }
}

TEST_CASE("graph generation") {
  SUBCASE("same seed, same graph; different seed, different graph") {
    GenOptions a;
    a.n = 40;
    a.seed = 7;
    const Graph g1 = generate_graph(a);
    const Graph g2 = generate_graph(a);
    REQUIRE(g1.edges.size() == g2.edges.size());
    for (std::size_t i = 0; i < g1.edges.size(); ++i) {
      CHECK(g1.edges[i].u == g2.edges[i].u);
      CHECK(g1.edges[i].v == g2.edges[i].v);
      CHECK(g1.edges[i].w == g2.edges[i].w);
    }
    a.seed = 8;
    const Graph g3 = generate_graph(a);
    bool same = g1.edges.size() == g3.edges.size();
    if (same)
      for (std::size_t i = 0; i < g1.edges.size(); ++i)
        same = same && g1.edges[i].u == g3.edges[i].u &&
               g1.edges[i].v == g3.edges[i].v && g1.edges[i].w == g3.edges[i].w;
    CHECK_FALSE(same);
  }
  SUBCASE("path and cycle shapes") {
    GenOptions p;
    p.kind = GraphKind::Path;
    p.n = 5;
    const Graph path = generate_graph(p);
    CHECK(path.edges.size() == 4);
    CHECK(path.directed);
    CHECK(is_dag(path));

    p.kind = GraphKind::Cycle;
    const Graph cycle = generate_graph(p);
    CHECK(cycle.edges.size() == 5);
    CHECK_FALSE(is_dag(cycle));
    CHECK(cycle.edges.back().u == 4);
    CHECK(cycle.edges.back().v == 0);
  }
  SUBCASE("grid is undirected by default and mesh-shaped") {
    GenOptions p;
    p.kind = GraphKind::Grid;
    p.n = 9;  // 3 x 3
    const Graph grid = generate_graph(p);
    CHECK_FALSE(grid.directed);
    CHECK(grid.edges.size() == 12);  // 6 horizontal + 6 vertical
  }
  SUBCASE("layered construction is always acyclic") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      GenOptions p;
      p.kind = GraphKind::DagLayered;
      p.n = 30;
      p.density = 0.5;
      p.seed = seed;
      CHECK(is_dag(generate_graph(p)));
    }
  }
  SUBCASE("density bounds the erdos-renyi edge count") {
    GenOptions p;
    p.n = 50;
    p.density = 0.0;
    CHECK(generate_graph(p).edges.empty());
    p.density = 1.0;
    CHECK(generate_graph(p).edges.size() == 50 * 49);
    p.directed = false;
    CHECK(generate_graph(p).edges.size() == 50 * 49 / 2);
  }
  SUBCASE("weights live on the requested range and lattice") {
    GenOptions p;
    p.n = 30;
    p.density = 0.5;
    p.wmin = 2.0f;
    p.wmax = 3.0f;
    const Graph g = generate_graph(p);
    REQUIRE_FALSE(g.edges.empty());
    for (const Edge& e : g.edges) {
      CHECK(e.w >= 2.0f);
      CHECK(e.w <= 3.0f);
      const float steps = (e.w - 2.0f) * 256.0f;
      CHECK(steps == std::floor(steps));  // 1/256 grid
    }
  }
  SUBCASE("distinct weights are pairwise distinct") {
    GenOptions p;
    p.n = 24;
    p.density = 0.6;
    p.distinct_weights = true;
    p.wmin = 1.0f;
    p.wmax = 40.0f;
    const Graph g = generate_graph(p);
    std::set<float> seen;
    for (const Edge& e : g.edges) CHECK(seen.insert(e.w).second);
  }
  SUBCASE("half-precision weights when asked") {
    GenOptions p;
    p.n = 20;
    p.density = 0.5;
    p.precision = PrecisionMode::Mixed16;
    for (const Edge& e : generate_graph(p).edges)
      CHECK(half_representable(e.w));
  }
  SUBCASE("bad configurations") {
    GenOptions p;
    p.n = -1;
    CHECK_THROWS_AS(generate_graph(p), ConfigError);
    p.n = 10;
    p.density = 1.5;
    CHECK_THROWS_AS(generate_graph(p), ConfigError);
    p.density = 0.5;
    p.kind = GraphKind::DagLayered;
    p.directed = false;
    CHECK_THROWS_AS(generate_graph(p), ConfigError);
    p.kind = GraphKind::ErdosRenyi;
    p.directed = true;
    p.distinct_weights = true;
    p.wmin = 1.0f;
    p.wmax = 1.0f;  // a single lattice point cannot cover many edges
    p.density = 1.0;
    CHECK_THROWS_AS(generate_graph(p), ConfigError);
  }
}

TEST_CASE("graph kind names round trip") {
  for (GraphKind k : {GraphKind::ErdosRenyi, GraphKind::Path, GraphKind::Cycle,
                      GraphKind::Grid, GraphKind::DagLayered})
    CHECK(graph_kind_from_name(graph_kind_name(k)) == k);
  CHECK_THROWS_AS(graph_kind_from_name("torus"), ConfigError);
}
