#include "support/fixtures.hpp"

#include <cstdio>

namespace fixtures {

using hcp::CubicGraph;
using hcp::Edge;

CubicGraph k4() {
    return CubicGraph::from_edges(
        4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
}

CubicGraph k33() {
    std::vector<Edge> e;
    for (int i = 0; i < 3; ++i)
        for (int j = 3; j < 6; ++j) e.emplace_back(i, j);
    return CubicGraph::from_edges(6, e);
}

CubicGraph prism() {
    return CubicGraph::from_edges(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5},
                                      {3, 5}, {0, 3}, {1, 4}, {2, 5}});
}

CubicGraph petersen() {
    std::vector<Edge> e;
    for (int i = 0; i < 5; ++i) {
        e.emplace_back(i, (i + 1) % 5);       // outer cycle
        e.emplace_back(i, i + 5);             // spokes
        e.emplace_back(5 + i, 5 + (i + 2) % 5);  // pentagram
    }
    return CubicGraph::from_edges(10, e);
}

CubicGraph bridge10() {
    // Two K4-minus-an-edge blocks joined through degree-2 apex vertices.
    auto block = [](std::vector<Edge>& e, int base) {
        int u = base, a = base + 1, b = base + 2, c = base + 3, d = base + 4;
        e.emplace_back(u, a);
        e.emplace_back(u, b);
        e.emplace_back(a, c);
        e.emplace_back(a, d);
        e.emplace_back(b, c);
        e.emplace_back(b, d);
        e.emplace_back(c, d);
    };
    std::vector<Edge> e;
    block(e, 0);
    block(e, 5);
    e.emplace_back(0, 5);  // the bridge
    return CubicGraph::from_edges(10, e);
}

std::string data_path(const std::string& rel) {
    return std::string(HCP_DATA_DIR) + "/" + rel;
}

std::string corpus_path(int n) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "corpus/cubic%02d.g6", n);
    return data_path(buf);
}

}  // namespace fixtures
