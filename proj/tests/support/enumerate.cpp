#include "support/enumerate.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <mutex>
#include <thread>

namespace enumeration {

using hcp::CubicGraph;
using hcp::Edge;

namespace {

// Cubic multigraph with loops and parallel edges. Edges are kept sorted;
// parallel edges appear twice and a loop (v,v) occupies two slots of its
// vertex. Growth happens over multigraphs because edge reduction is only
// universally available there: diamond chains, for instance, have no
// reducible edge within the class of simple graphs.
struct MultiGraph {
    int n = 0;
    std::vector<Edge> edges;  // sorted, size 3n/2

    std::array<int, 3> slots(int v) const {
        std::array<int, 3> out{};
        int k = 0;
        for (const Edge& e : edges) {
            if (e.u == v && e.v == v) {
                out[k++] = v;
                out[k++] = v;
            } else if (e.u == v) {
                out[k++] = e.v;
            } else if (e.v == v) {
                out[k++] = e.u;
            }
        }
        return out;  // sorted ascending because edges are sorted
    }

    bool simple() const {
        for (const Edge& e : edges)
            if (e.u == e.v) return false;
        for (size_t i = 0; i + 1 < edges.size(); ++i)
            if (edges[i] == edges[i + 1]) return false;
        return true;
    }

    bool connected() const {
        std::vector<char> seen(n, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int cnt = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : slots(u))
                if (!seen[w]) {
                    seen[w] = 1;
                    ++cnt;
                    stack.push_back(w);
                }
        }
        return cnt == n;
    }
};

// Minimal BFS-labeling code over all roots and branch orders; repeated
// labels encode multiplicities. Equal codes <=> isomorphic multigraphs.
struct MultiCanon {
    const MultiGraph& g;
    std::vector<std::array<int, 3>> adj;
    std::vector<int> best;
    bool have_best = false;
    std::vector<int> label, order, code;

    explicit MultiCanon(const MultiGraph& gr) : g(gr), label(gr.n, -1) {
        adj.resize(g.n);
        for (int v = 0; v < g.n; ++v) adj[v] = g.slots(v);
    }

    std::vector<int> run() {
        for (int r = 0; r < g.n; ++r) {
            label.assign(g.n, -1);
            order.assign(1, r);
            label[r] = 0;
            code.clear();
            step(0, 1);
        }
        std::vector<int> out = best;
        out.insert(out.begin(), g.n);
        return out;
    }

    void step(size_t pos, int next_label) {
        if (pos == order.size()) {
            // Only connected graphs are passed in, so the labeling is
            // complete here.
            if (!have_best || code < best) {
                best = code;
                have_best = true;
            }
            return;
        }
        int u = order[pos];
        std::array<int, 3> unl{};
        int k = 0;
        for (int w : adj[u])
            if (label[w] < 0) {
                bool dup = false;
                for (int t = 0; t < k; ++t) dup |= unl[t] == w;
                if (!dup) unl[k++] = w;
            }

        // With parallel edges the emitted triple depends on which child
        // receives which label, so it is computed per branch.
        std::array<int, 3> perm = unl;
        std::sort(perm.begin(), perm.begin() + k);
        size_t base = code.size();
        do {
            for (int c = 0; c < k; ++c) label[perm[c]] = next_label + c;
            std::array<int, 3> triple{};
            for (int t = 0; t < 3; ++t) triple[t] = label[adj[u][t]];
            std::sort(triple.begin(), triple.end());

            bool pruned = false;
            for (int x : triple) {
                if (have_best) {
                    size_t i = code.size();
                    if (best[i] < x) {
                        pruned = true;
                        break;
                    }
                    if (best[i] > x) have_best = false;
                }
                code.push_back(x);
            }
            if (!pruned) {
                for (int c = 0; c < k; ++c) order.push_back(perm[c]);
                step(pos + 1, next_label + k);
                for (int c = 0; c < k; ++c) order.pop_back();
            }
            code.resize(base);
            for (int c = 0; c < k; ++c) label[perm[c]] = -1;
        } while (std::next_permutation(perm.begin(), perm.begin() + k));
    }
};

std::vector<int> multi_canon(const MultiGraph& g) { return MultiCanon(g).run(); }

MultiGraph subdivide_pair(const MultiGraph& g, size_t ei, size_t ej) {
    // Subdivide edges ei and ej (distinct indices; equal values allowed)
    // with new vertices w1, w2 and join them.
    MultiGraph out;
    out.n = g.n + 2;
    int w1 = g.n, w2 = g.n + 1;
    for (size_t t = 0; t < g.edges.size(); ++t)
        if (t != ei && t != ej) out.edges.push_back(g.edges[t]);
    const Edge& a = g.edges[ei];
    const Edge& b = g.edges[ej];
    out.edges.emplace_back(a.u, w1);
    out.edges.emplace_back(a.v, w1);
    out.edges.emplace_back(b.u, w2);
    out.edges.emplace_back(b.v, w2);
    out.edges.emplace_back(w1, w2);
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

MultiGraph subdivide_twice(const MultiGraph& g, size_t ei) {
    // u - w1 - w2 - v along edge ei plus the joining edge: creates a
    // parallel pair between w1 and w2.
    MultiGraph out;
    out.n = g.n + 2;
    int w1 = g.n, w2 = g.n + 1;
    for (size_t t = 0; t < g.edges.size(); ++t)
        if (t != ei) out.edges.push_back(g.edges[t]);
    const Edge& a = g.edges[ei];
    out.edges.emplace_back(a.u, w1);
    out.edges.emplace_back(w1, w2);
    out.edges.emplace_back(w1, w2);
    out.edges.emplace_back(a.v, w2);
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

MultiGraph pendant_loop(const MultiGraph& g, size_t ei) {
    // Subdivide edge ei with w2 and hang a loop vertex w1 off it.
    MultiGraph out;
    out.n = g.n + 2;
    int w1 = g.n, w2 = g.n + 1;
    for (size_t t = 0; t < g.edges.size(); ++t)
        if (t != ei) out.edges.push_back(g.edges[t]);
    const Edge& a = g.edges[ei];
    out.edges.emplace_back(a.u, w2);
    out.edges.emplace_back(a.v, w2);
    out.edges.emplace_back(w1, w2);
    out.edges.emplace_back(w1, w1);
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

std::vector<MultiGraph> seeds2() {
    // The two connected cubic multigraphs on 2 vertices: the triple edge
    // and the dumbbell.
    MultiGraph theta;
    theta.n = 2;
    theta.edges = {{0, 1}, {0, 1}, {0, 1}};
    MultiGraph dumbbell;
    dumbbell.n = 2;
    dumbbell.edges = {{0, 0}, {0, 1}, {1, 1}};
    return {theta, dumbbell};
}

// One growth level; when simple_only is set (final level) non-simple
// children are discarded before canonicalization.
std::vector<MultiGraph> grow_level(const std::vector<MultiGraph>& level,
                                   bool simple_only, int jobs) {
    std::map<std::vector<int>, MultiGraph> seen;
    std::mutex mu;
    auto worker = [&](size_t begin, size_t end) {
        std::map<std::vector<int>, MultiGraph> local;
        auto consider = [&](MultiGraph h) {
            if (simple_only && !h.simple()) return;
            local.emplace(multi_canon(h), std::move(h));
        };
        for (size_t gi = begin; gi < end; ++gi) {
            const MultiGraph& g = level[gi];
            size_t m = g.edges.size();
            for (size_t a = 0; a < m; ++a) {
                for (size_t b = a + 1; b < m; ++b)
                    consider(subdivide_pair(g, a, b));
                consider(subdivide_twice(g, a));
                if (!simple_only) consider(pendant_loop(g, a));
            }
        }
        std::lock_guard<std::mutex> lock(mu);
        for (auto& [code, graph] : local) seen.emplace(code, std::move(graph));
    };
    if (jobs <= 1 || level.size() < 8) {
        worker(0, level.size());
    } else {
        std::vector<std::thread> pool;
        size_t chunk = (level.size() + jobs - 1) / jobs;
        for (int t = 0; t < jobs; ++t) {
            size_t lo = t * chunk;
            size_t hi = std::min(level.size(), lo + chunk);
            if (lo < hi) pool.emplace_back(worker, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    std::vector<MultiGraph> out;
    out.reserve(seen.size());
    for (auto& [code, graph] : seen) out.push_back(std::move(graph));
    return out;
}

}  // namespace

std::vector<CubicGraph> connected_cubic_graphs(int n, int jobs) {
    if (n < 4 || n % 2 != 0) return {};
    std::vector<MultiGraph> level = seeds2();
    for (int size = 2; size < n; size += 2)
        level = grow_level(level, size + 2 == n, jobs);
    std::vector<CubicGraph> out;
    for (const MultiGraph& g : level) {
        if (!g.simple()) continue;
        out.push_back(CubicGraph::from_edges(g.n, g.edges));
    }
    std::sort(out.begin(), out.end(), [](const CubicGraph& a, const CubicGraph& b) {
        return hcp::canonical_code(a) < hcp::canonical_code(b);
    });
    return out;
}

std::vector<CubicGraph> connected_cubic_graphs_brute(int n) {
    // Backtracking over labeled simple graphs: the lowest-index vertex with
    // missing edges picks its next (higher-numbered) neighbor.
    std::vector<CubicGraph> out;
    std::map<std::vector<int>, bool> seen;
    std::vector<std::vector<int>> adj(n);
    std::vector<Edge> edges;

    std::function<void()> rec = [&]() {
        int v = -1;
        for (int i = 0; i < n; ++i)
            if (static_cast<int>(adj[i].size()) < 3) { v = i; break; }
        if (v < 0) {
            try {
                CubicGraph g = CubicGraph::from_edges(n, edges);
                auto code = hcp::canonical_code(g);
                if (!seen.count(code)) {
                    seen.emplace(code, true);
                    out.push_back(std::move(g));
                }
            } catch (const hcp::GraphError&) {
                // disconnected
            }
            return;
        }
        int from = std::max(v + 1, adj[v].empty() ? 0 : adj[v].back() + 1);
        for (int w = from; w < n; ++w) {
            if (static_cast<int>(adj[w].size()) >= 3) continue;
            adj[v].push_back(w);
            adj[w].push_back(v);
            edges.emplace_back(v, w);
            rec();
            adj[v].pop_back();
            adj[w].pop_back();
            edges.pop_back();
        }
    };
    rec();
    std::sort(out.begin(), out.end(),
              [](const CubicGraph& a, const CubicGraph& b) {
                  return hcp::canonical_code(a) < hcp::canonical_code(b);
              });
    return out;
}

}  // namespace enumeration
