#include "hcp/graph.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>

namespace hcp {

namespace {

std::vector<int> component_labels(int n, const std::vector<std::array<int, 3>>& adj,
                                  const std::vector<Edge>& blocked) {
    std::vector<int> label(n, -1);
    int comp = 0;
    std::vector<int> stack;
    auto is_blocked = [&](int a, int b) {
        Edge e(a, b);
        for (const Edge& x : blocked)
            if (x == e) return true;
        return false;
    };
    for (int s = 0; s < n; ++s) {
        if (label[s] >= 0) continue;
        stack.push_back(s);
        label[s] = comp;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : adj[u]) {
                if (label[w] >= 0) continue;
                if (!blocked.empty() && is_blocked(u, w)) continue;
                label[w] = comp;
                stack.push_back(w);
            }
        }
        ++comp;
    }
    return label;
}

}  // namespace

CubicGraph CubicGraph::from_edges(int n, const std::vector<Edge>& edges) {
    if (n < 4 || n % 2 != 0)
        throw GraphError(GraphError::Kind::NotCubic,
                         "cubic graph needs an even vertex count >= 4, got " +
                             std::to_string(n));
    std::vector<std::vector<int>> nbrs(n);
    for (const Edge& e : edges) {
        if (e.u < 0 || e.v >= n)
            throw GraphError(GraphError::Kind::MalformedEncoding,
                             "edge endpoint out of range");
        if (e.u == e.v)
            throw GraphError(GraphError::Kind::NotCubic, "self-loop rejected");
        nbrs[e.u].push_back(e.v);
        nbrs[e.v].push_back(e.u);
    }
    CubicGraph g;
    g.n_ = n;
    g.adj_.resize(n);
    for (int i = 0; i < n; ++i) {
        std::sort(nbrs[i].begin(), nbrs[i].end());
        if (std::adjacent_find(nbrs[i].begin(), nbrs[i].end()) != nbrs[i].end())
            throw GraphError(GraphError::Kind::NotCubic, "parallel edge rejected");
        if (nbrs[i].size() != 3)
            throw GraphError(GraphError::Kind::NotCubic,
                             "vertex " + std::to_string(i) + " has degree " +
                                 std::to_string(nbrs[i].size()));
        std::copy(nbrs[i].begin(), nbrs[i].end(), g.adj_[i].begin());
    }
    auto label = component_labels(n, g.adj_, {});
    if (*std::max_element(label.begin(), label.end()) != 0)
        throw GraphError(GraphError::Kind::NotConnected, "graph is not connected");
    g.edges_ = edges;
    std::sort(g.edges_.begin(), g.edges_.end());
    g.edges_.erase(std::unique(g.edges_.begin(), g.edges_.end()), g.edges_.end());
    return g;
}

bool CubicGraph::has_edge(int i, int j) const {
    const auto& a = adj_[i];
    return a[0] == j || a[1] == j || a[2] == j;
}

int CubicGraph::arc_index(int i, int a) const {
    const auto& nb = adj_[i];
    for (int t = 0; t < 3; ++t)
        if (nb[t] == a) return 3 * i + t;
    throw std::out_of_range("arc (" + std::to_string(i) + "," + std::to_string(a) +
                            ") not in graph");
}

std::pair<int, int> CubicGraph::arc_of(int index) const {
    int i = index / 3;
    return {i, adj_[i][index % 3]};
}

// --- graph6 -----------------------------------------------------------------

CubicGraph parse_graph6(const std::string& line) {
    // Header variants: >>graph6<< prefix optional; we handle n < 63 and the
    // 126-prefixed 3-byte form (corpus sizes stay far below 2^18).
    size_t pos = 0;
    if (line.rfind(">>graph6<<", 0) == 0) pos = 10;
    if (pos >= line.size())
        throw GraphError(GraphError::Kind::MalformedEncoding, "empty graph6 line");
    auto byte = [&](size_t i) -> int {
        if (i >= line.size())
            throw GraphError(GraphError::Kind::MalformedEncoding,
                             "truncated graph6 line");
        int c = static_cast<unsigned char>(line[i]);
        if (c < 63 || c > 126)
            throw GraphError(GraphError::Kind::MalformedEncoding,
                             "byte out of graph6 range");
        return c - 63;
    };
    long n = 0;
    if (line[pos] == '~') {
        if (pos + 3 >= line.size() || line[pos + 1] == '~')
            throw GraphError(GraphError::Kind::MalformedEncoding,
                             "unsupported graph6 size header");
        n = (static_cast<long>(byte(pos + 1)) << 12) |
            (static_cast<long>(byte(pos + 2)) << 6) | byte(pos + 3);
        pos += 4;
    } else {
        n = byte(pos);
        pos += 1;
    }
    if (n < 1 || n > 100000)
        throw GraphError(GraphError::Kind::MalformedEncoding, "bad vertex count");
    long bits = n * (n - 1) / 2;
    long need = (bits + 5) / 6;
    if (static_cast<long>(line.size()) - static_cast<long>(pos) < need)
        throw GraphError(GraphError::Kind::MalformedEncoding, "truncated graph6 body");

    std::vector<Edge> edges;
    long bit = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i, ++bit) {
            int b = byte(pos + bit / 6);
            if ((b >> (5 - bit % 6)) & 1) edges.emplace_back(i, j);
        }
    }
    return CubicGraph::from_edges(static_cast<int>(n), edges);
}

std::string to_graph6(const CubicGraph& g) {
    int n = g.num_vertices();
    std::string out;
    out.push_back(static_cast<char>(n + 63));  // corpus sizes are < 63
    long bits = static_cast<long>(n) * (n - 1) / 2;
    std::vector<int> buf((bits + 5) / 6, 0);
    long bit = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i, ++bit) {
            if (g.has_edge(i, j)) buf[bit / 6] |= 1 << (5 - bit % 6);
        }
    }
    for (int b : buf) out.push_back(static_cast<char>(b + 63));
    return out;
}

CubicGraph parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    std::string word;
    int n = -1, m = -1;
    std::vector<Edge> edges;
    std::string lineStr;
    while (std::getline(in, lineStr)) {
        auto first = lineStr.find_first_not_of(" \t\r");
        if (first == std::string::npos || lineStr[first] == '#') continue;
        std::istringstream ls(lineStr);
        if (n < 0) {
            if (!(ls >> n >> m))
                throw GraphError(GraphError::Kind::MalformedEncoding,
                                 "edge list needs an \"n m\" header");
            continue;
        }
        int a, b;
        if (!(ls >> a >> b))
            throw GraphError(GraphError::Kind::MalformedEncoding,
                             "bad edge line: " + lineStr);
        edges.emplace_back(a, b);
    }
    if (n < 0)
        throw GraphError(GraphError::Kind::MalformedEncoding, "empty edge list");
    if (m >= 0 && m != static_cast<int>(edges.size()))
        throw GraphError(GraphError::Kind::MalformedEncoding,
                         "edge count does not match header");
    return CubicGraph::from_edges(n, edges);
}

std::vector<ParsedGraph> read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open graph file: " + path);
    std::string first;
    std::string lineStr;
    std::vector<std::string> lines;
    while (std::getline(in, lineStr)) lines.push_back(lineStr);

    // Edge-list files start with "n m" after comments; graph6 lines never
    // begin with a digit (counts < 63 encode as printable >= '?').
    bool edge_list = false;
    for (const auto& l : lines) {
        auto f = l.find_first_not_of(" \t\r");
        if (f == std::string::npos || l[f] == '#') continue;
        edge_list = std::isdigit(static_cast<unsigned char>(l[f])) != 0;
        break;
    }

    std::vector<ParsedGraph> out;
    if (edge_list) {
        std::string all;
        for (const auto& l : lines) all += l + "\n";
        out.push_back({parse_edge_list(all), 1});
        return out;
    }
    for (size_t i = 0; i < lines.size(); ++i) {
        std::string l = lines[i];
        while (!l.empty() && (l.back() == '\r' || l.back() == '\n')) l.pop_back();
        if (l.empty()) continue;
        out.push_back({parse_graph6(l), static_cast<int>(i + 1)});
    }
    return out;
}

// --- structural analysis ------------------------------------------------------

DistanceMatrix bfs_distances(const CubicGraph& g) {
    int n = g.num_vertices();
    std::vector<std::vector<int>> d(n, std::vector<int>(n, -1));
    std::vector<int> queue(n);
    for (int s = 0; s < n; ++s) {
        auto& row = d[s];
        row[s] = 0;
        int head = 0, tail = 0;
        queue[tail++] = s;
        while (head < tail) {
            int u = queue[head++];
            for (int w : g.neighbors(u)) {
                if (row[w] < 0) {
                    row[w] = row[u] + 1;
                    queue[tail++] = w;
                }
            }
        }
    }
    return DistanceMatrix(std::move(d));
}

std::vector<Edge> detect_bridges(const CubicGraph& g) {
    int n = g.num_vertices();
    std::vector<int> disc(n, -1), low(n, 0), parent_edge(n, -1);
    std::vector<Edge> bridges;
    int timer = 0;
    // Iterative lowlink; parent_edge holds the arc used to enter a vertex so
    // the single parallel-free parent edge is skipped exactly once.
    for (int root = 0; root < n; ++root) {
        if (disc[root] >= 0) continue;
        std::vector<std::pair<int, int>> stack{{root, 0}};
        disc[root] = low[root] = timer++;
        while (!stack.empty()) {
            auto& [u, idx] = stack.back();
            if (idx < 3) {
                int w = g.neighbors(u)[idx];
                ++idx;
                if (g.arc_index(u, w) == parent_edge[u]) continue;
                if (disc[w] < 0) {
                    disc[w] = low[w] = timer++;
                    parent_edge[w] = g.arc_index(w, u);
                    stack.push_back({w, 0});
                } else {
                    low[u] = std::min(low[u], disc[w]);
                }
            } else {
                stack.pop_back();
                if (!stack.empty()) {
                    int p = stack.back().first;
                    low[p] = std::min(low[p], low[u]);
                    if (low[u] > disc[p]) bridges.emplace_back(p, u);
                }
            }
        }
    }
    std::sort(bridges.begin(), bridges.end());
    return bridges;
}

namespace {

// Component labels with a set of edges removed; returns component count.
int split_components(const CubicGraph& g, const std::vector<Edge>& cut,
                     std::vector<int>& label) {
    label.assign(g.num_vertices(), -1);
    int comp = 0;
    std::vector<int> stack;
    for (int s = 0; s < g.num_vertices(); ++s) {
        if (label[s] >= 0) continue;
        stack.push_back(s);
        label[s] = comp;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : g.neighbors(u)) {
                if (label[w] >= 0) continue;
                Edge e(u, w);
                bool blocked = false;
                for (const Edge& c : cut)
                    if (c == e) { blocked = true; break; }
                if (blocked) continue;
                label[w] = comp;
                stack.push_back(w);
            }
        }
        ++comp;
    }
    return comp;
}

bool disconnects(const CubicGraph& g, const std::vector<Edge>& cut) {
    std::vector<int> label;
    return split_components(g, cut, label) > 1;
}

}  // namespace

StructureClass enumerate_crackers(const CubicGraph& g) {
    const auto& edges = g.edges();
    int m = static_cast<int>(edges.size());
    StructureClass sc;

    auto try_cut = [&](const std::vector<Edge>& cut) {
        // Minimality: no proper subset may itself disconnect.
        if (cut.size() >= 2) {
            for (size_t skip = 0; skip < cut.size(); ++skip) {
                std::vector<Edge> sub;
                for (size_t t = 0; t < cut.size(); ++t)
                    if (t != skip) sub.push_back(cut[t]);
                if (disconnects(g, sub)) return;
                if (sub.size() == 2) {
                    if (disconnects(g, {sub[0]}) || disconnects(g, {sub[1]})) return;
                }
            }
        }
        std::vector<int> label;
        int comps = split_components(g, cut, label);
        if (comps != 2) return;
        Cracker c;
        c.edges = cut;
        for (int v = 0; v < g.num_vertices(); ++v)
            (label[v] == label[0] ? c.side_u : c.side_v).push_back(v);
        // Every cut edge must straddle the split (guaranteed by minimality).
        for (const Edge& e : cut)
            if (label[e.u] == label[e.v]) return;
        if (c.side_u.size() > c.side_v.size()) std::swap(c.side_u, c.side_v);
        sc.crackers.push_back(std::move(c));
    };

    for (int a = 0; a < m; ++a) {
        if (disconnects(g, {edges[a]})) try_cut({edges[a]});
        for (int b = a + 1; b < m; ++b) {
            if (edges[a].adjacent_to(edges[b])) continue;
            if (disconnects(g, {edges[a], edges[b]}))
                try_cut({edges[a], edges[b]});
            for (int c = b + 1; c < m; ++c) {
                if (edges[a].adjacent_to(edges[c]) || edges[b].adjacent_to(edges[c]))
                    continue;
                if (disconnects(g, {edges[a], edges[b], edges[c]}))
                    try_cut({edges[a], edges[b], edges[c]});
            }
        }
    }

    std::sort(sc.crackers.begin(), sc.crackers.end(),
              [](const Cracker& x, const Cracker& y) {
                  if (x.cardinality() != y.cardinality())
                      return x.cardinality() < y.cardinality();
                  return x.edges < y.edges;
              });
    sc.kind = sc.crackers.empty() ? GraphKind::Gene : GraphKind::Descendant;
    sc.is_bridge_graph = !sc.crackers.empty() && sc.crackers.front().cardinality() == 1;
    return sc;
}

// --- Hamiltonicity oracle -------------------------------------------------------

namespace {

// Backtracking over neighbor choices from vertex 0. When collect_all is
// false the search stops at the first cycle.
void ham_search(const CubicGraph& g, std::vector<int>& path,
                std::vector<char>& used, bool collect_all,
                std::vector<std::vector<int>>& out) {
    if (!collect_all && !out.empty()) return;
    int n = g.num_vertices();
    int u = path.back();
    if (static_cast<int>(path.size()) == n) {
        if (g.has_edge(u, 0)) {
            // One representative per undirected cycle: the neighbor of 0
            // visited first must be the smaller of the two cycle neighbors.
            if (path[1] < path[n - 1]) out.push_back(path);
            else if (!collect_all) out.push_back(path);
        }
        return;
    }
    for (int w : g.neighbors(u)) {
        if (used[w]) continue;
        used[w] = 1;
        path.push_back(w);
        ham_search(g, path, used, collect_all, out);
        path.pop_back();
        used[w] = 0;
        if (!collect_all && !out.empty()) return;
    }
}

}  // namespace

std::optional<std::vector<int>> hamiltonian_oracle(const CubicGraph& g) {
    std::vector<int> path{0};
    std::vector<char> used(g.num_vertices(), 0);
    used[0] = 1;
    std::vector<std::vector<int>> out;
    ham_search(g, path, used, false, out);
    if (out.empty()) return std::nullopt;
    return out.front();
}

std::vector<std::vector<int>> enumerate_hamiltonian_cycles(const CubicGraph& g) {
    std::vector<int> path{0};
    std::vector<char> used(g.num_vertices(), 0);
    used[0] = 1;
    std::vector<std::vector<int>> out;
    ham_search(g, path, used, true, out);
    return out;
}

bool is_hamiltonian_cycle(const CubicGraph& g, const std::vector<int>& cycle) {
    int n = g.num_vertices();
    if (static_cast<int>(cycle.size()) != n) return false;
    std::vector<char> seen(n, 0);
    for (int v : cycle) {
        if (v < 0 || v >= n || seen[v]) return false;
        seen[v] = 1;
    }
    for (int t = 0; t < n; ++t)
        if (!g.has_edge(cycle[t], cycle[(t + 1) % n])) return false;
    return true;
}

// --- transforms ------------------------------------------------------------------

CubicGraph y_delta_transform(const CubicGraph& g, int v) {
    int n = g.num_vertices();
    if (v < 0 || v >= n) throw std::out_of_range("vertex out of range");
    auto remap = [&](int w) { return w < v ? w : w - 1; };
    std::vector<Edge> edges;
    for (const Edge& e : g.edges()) {
        if (e.touches(v)) continue;
        edges.emplace_back(remap(e.u), remap(e.v));
    }
    // Triangle vertices take the three highest ids, attached to the former
    // neighbors of v in sorted order.
    int t0 = n - 1;
    const auto& nb = g.neighbors(v);
    for (int t = 0; t < 3; ++t) edges.emplace_back(remap(nb[t]), t0 + t);
    edges.emplace_back(t0, t0 + 1);
    edges.emplace_back(t0 + 1, t0 + 2);
    edges.emplace_back(t0, t0 + 2);
    return CubicGraph::from_edges(n + 2, edges);
}

// --- canonical form -----------------------------------------------------------------

namespace {

// Search state for the minimal-BFS-code canonical form. Labels are assigned
// in BFS order; processing vertex with label L appends the sorted triple of
// its neighbors' labels to the code. Branching happens over the order in
// which unlabeled neighbors receive labels; branches whose prefix exceeds
// the best code are cut.
struct CanonSearch {
    const CubicGraph& g;
    std::vector<int> best;       // 3n entries once complete
    bool have_best = false;

    std::vector<int> label;      // vertex -> label or -1
    std::vector<int> order;      // label -> vertex
    std::vector<int> code;

    explicit CanonSearch(const CubicGraph& gr)
        : g(gr), label(gr.num_vertices(), -1) {}

    void run(const std::vector<int>& roots) {
        for (int r : roots) {
            label.assign(g.num_vertices(), -1);
            order.assign(1, r);
            label[r] = 0;
            code.clear();
            step(0, 1);
        }
    }

    // Process the vertex holding label `pos`; next_label is the lowest
    // unassigned label.
    void step(int pos, int next_label) {
        int n = g.num_vertices();
        if (pos == n) {
            if (!have_best || code < best) {
                best = code;
                have_best = true;
            }
            return;
        }
        int u = order[pos];
        std::array<int, 3> unl{};
        int k = 0;
        for (int w : g.neighbors(u))
            if (label[w] < 0) unl[k++] = w;

        // The emitted triple is independent of the child order (children
        // take consecutive labels), so prune on it before branching.
        std::array<int, 3> triple{};
        int t = 0;
        for (int w : g.neighbors(u))
            triple[t++] = label[w] >= 0 ? label[w] : -1;
        int next = next_label;
        for (auto& x : triple)
            if (x < 0) x = next++;
        std::sort(triple.begin(), triple.end());

        size_t base = code.size();
        for (int x : triple) {
            if (have_best) {
                size_t i = code.size();
                if (best[i] < x) { code.resize(base); return; }  // prefix worse
                if (best[i] > x) have_best = false;  // strictly better prefix
            }
            code.push_back(x);
        }

        // Branch over child orderings.
        std::array<int, 3> perm_buf = unl;
        std::sort(perm_buf.begin(), perm_buf.begin() + k);
        do {
            for (int c = 0; c < k; ++c) {
                label[perm_buf[c]] = next_label + c;
                order.push_back(perm_buf[c]);
            }
            bool restore = have_best;
            std::vector<int> saved_best;
            step(pos + 1, next_label + k);
            (void)restore;
            (void)saved_best;
            for (int c = 0; c < k; ++c) {
                label[perm_buf[c]] = -1;
                order.pop_back();
            }
        } while (std::next_permutation(perm_buf.begin(), perm_buf.begin() + k));
        code.resize(base);
    }
};

// Root filter: only vertices minimizing an isomorphism-invariant signature
// need to be tried as BFS roots.
std::vector<int> canonical_roots(const CubicGraph& g) {
    int n = g.num_vertices();
    DistanceMatrix d = bfs_distances(g);
    std::vector<std::vector<int>> sig(n);
    for (int v = 0; v < n; ++v) {
        std::vector<int> row(n);
        for (int j = 0; j < n; ++j) row[j] = d(v, j);
        std::sort(row.begin(), row.end());
        // Triangle membership sharpens the signature on girth-3 graphs.
        int tri = 0;
        const auto& nb = g.neighbors(v);
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b)
                if (g.has_edge(nb[a], nb[b])) ++tri;
        row.push_back(tri);
        sig[v] = std::move(row);
    }
    const std::vector<int>* best = &sig[0];
    for (int v = 1; v < n; ++v)
        if (sig[v] < *best) best = &sig[v];
    std::vector<int> roots;
    for (int v = 0; v < n; ++v)
        if (sig[v] == *best) roots.push_back(v);
    return roots;
}

}  // namespace

std::vector<int> canonical_code(const CubicGraph& g) {
    CanonSearch s(g);
    s.run(canonical_roots(g));
    return s.best;
}

std::string canonical_hash(const CubicGraph& g) {
    std::vector<int> code = canonical_code(g);
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&](std::uint64_t x) {
        for (int b = 0; b < 8; ++b) {
            h ^= (x >> (8 * b)) & 0xff;
            h *= 0x100000001b3ull;
        }
    };
    mix(static_cast<std::uint64_t>(g.num_vertices()));
    for (int x : code) mix(static_cast<std::uint64_t>(x));
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

bool are_isomorphic(const CubicGraph& a, const CubicGraph& b) {
    if (a.num_vertices() != b.num_vertices()) return false;
    return canonical_code(a) == canonical_code(b);
}

}  // namespace hcp
