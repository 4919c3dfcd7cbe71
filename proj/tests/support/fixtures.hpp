#pragma once

#include <string>

#include "hcp/graph.hpp"

namespace fixtures {

hcp::CubicGraph k4();
hcp::CubicGraph k33();
hcp::CubicGraph prism();       // K3 x K2, the Y-delta image of K4
hcp::CubicGraph petersen();
hcp::CubicGraph bridge10();    // the unique 10-vertex cubic bridge graph

/// Path under the repo data directory (data/corpus/...).
std::string data_path(const std::string& rel);

/// Corpus file data/corpus/cubicNN.g6 for a given vertex count.
std::string corpus_path(int n);

}  // namespace fixtures
