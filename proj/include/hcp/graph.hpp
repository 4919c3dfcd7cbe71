#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hcp {

/// Thrown by graph ingestion on malformed or out-of-class input.
class GraphError : public std::runtime_error {
public:
    enum class Kind { MalformedEncoding, NotCubic, NotConnected };

    GraphError(Kind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// Undirected edge, stored with u < v.
struct Edge {
    int u = -1;
    int v = -1;

    Edge() = default;
    Edge(int a, int b) : u(a < b ? a : b), v(a < b ? b : a) {}

    bool operator==(const Edge&) const = default;
    auto operator<=>(const Edge&) const = default;

    bool touches(int w) const { return u == w || v == w; }
    bool adjacent_to(const Edge& o) const {
        return touches(o.u) || touches(o.v);
    }
};

/// Connected 3-regular simple graph with a fixed arc indexing.
///
/// Arcs are the 3n ordered pairs (i,a) with a adjacent to i; arc_index(i,a)
/// = 3*i + rank of a among the sorted neighbors of i.
class CubicGraph {
public:
    /// Builds from an explicit edge list; validates cubicity, simplicity
    /// and connectivity.
    static CubicGraph from_edges(int n, const std::vector<Edge>& edges);

    int num_vertices() const { return n_; }
    int num_edges() const { return 3 * n_ / 2; }
    int num_arcs() const { return 3 * n_; }

    /// The three neighbors of i, sorted ascending.
    const std::array<int, 3>& neighbors(int i) const { return adj_[i]; }

    bool has_edge(int i, int j) const;

    /// Sorted list of the 3n/2 undirected edges.
    const std::vector<Edge>& edges() const { return edges_; }

    int arc_index(int i, int a) const;
    std::pair<int, int> arc_of(int index) const;  // index -> (i,a)

    bool operator==(const CubicGraph&) const = default;

private:
    int n_ = 0;
    std::vector<std::array<int, 3>> adj_;
    std::vector<Edge> edges_;
};

// --- ingestion / serialization ---------------------------------------------

/// Parses one graph6 line (printable-ASCII, bytes offset by 63).
CubicGraph parse_graph6(const std::string& line);

/// Serializes to graph6 (inverse of parse_graph6 up to isomorphism).
std::string to_graph6(const CubicGraph& g);

/// Parses the plain edge-list format: "n m" header then m lines "i j",
/// 0-based; lines starting with '#' are ignored.
CubicGraph parse_edge_list(const std::string& text);

struct ParsedGraph {
    CubicGraph graph;
    int line = 0;  // 1-based line in the source file
};

/// Reads a corpus file: graph6 (one graph per line) or edge-list (one graph
/// per file), detected from the first non-comment line.
std::vector<ParsedGraph> read_graph_file(const std::string& path);

// --- structural analysis ----------------------------------------------------

/// All-pairs shortest-path lengths in edge count.
class DistanceMatrix {
public:
    explicit DistanceMatrix(std::vector<std::vector<int>> d) : d_(std::move(d)) {}

    int operator()(int i, int j) const { return d_[i][j]; }
    int size() const { return static_cast<int>(d_.size()); }

private:
    std::vector<std::vector<int>> d_;
};

DistanceMatrix bfs_distances(const CubicGraph& g);

/// All bridges (standard lowlink computation), sorted.
std::vector<Edge> detect_bridges(const CubicGraph& g);

/// Minimal non-adjacent edge cut of cardinality <= 3 splitting the graph
/// into exactly the two sides U and V, with |U| <= |V|.
struct Cracker {
    std::vector<Edge> edges;   // sorted, pairwise non-adjacent
    std::vector<int> side_u;   // sorted; |U| <= |V|, ties: 0 in U
    std::vector<int> side_v;   // sorted
    int cardinality() const { return static_cast<int>(edges.size()); }

    bool operator==(const Cracker&) const = default;
};

enum class GraphKind { Gene, Descendant };

struct StructureClass {
    GraphKind kind = GraphKind::Gene;
    bool is_bridge_graph = false;
    std::vector<Cracker> crackers;  // increasing cardinality, then edge order
};

/// Exhaustive enumeration of all cubic crackers (1-, 2- and 3-crackers).
StructureClass enumerate_crackers(const CubicGraph& g);

// --- Hamiltonicity oracle ----------------------------------------------------

/// Exact backtracking search; returns a Hamiltonian cycle as a vertex
/// sequence (length n, implicitly closed) or nullopt. Intended for small n.
std::optional<std::vector<int>> hamiltonian_oracle(const CubicGraph& g);

/// All Hamiltonian cycles, one representative per undirected cycle
/// (started at vertex 0, lower-numbered second vertex first).
std::vector<std::vector<int>> enumerate_hamiltonian_cycles(const CubicGraph& g);

bool is_hamiltonian_cycle(const CubicGraph& g, const std::vector<int>& cycle);

// --- transforms ---------------------------------------------------------------

/// Replaces vertex v by a triangle; each former edge of v attaches to a
/// distinct triangle vertex. Result has n+2 vertices and is cubic and
/// connected. Vertices above v shift down by one; the triangle takes the
/// three highest ids.
CubicGraph y_delta_transform(const CubicGraph& g, int v);

// --- canonical form ------------------------------------------------------------

/// Canonical adjacency code: minimal BFS labeling code over all roots and
/// branch orders. Equal codes <=> isomorphic graphs.
std::vector<int> canonical_code(const CubicGraph& g);

/// FNV-1a hash of the canonical code, as a fixed-width hex string.
std::string canonical_hash(const CubicGraph& g);

bool are_isomorphic(const CubicGraph& a, const CubicGraph& b);

}  // namespace hcp
