#pragma once

#include <string>
#include <vector>

#include "hcp/graph.hpp"
#include "hcp/linear_system.hpp"

namespace hcp {

/// Bijection between stage-arc variables and columns: the variable for
/// start vertex k, stage r and arc (i,a) sits at column
/// (k*n + r)*3n + arc_index(i,a), covering exactly [0, 3n^3).
class VariableMap {
public:
    VariableMap(const CubicGraph& g) : g_(&g), n_(g.num_vertices()) {}

    int num_vars() const { return 3 * n_ * n_ * n_; }

    int index(int k, int r, int i, int a) const {
        return (k * n_ + r) * 3 * n_ + g_->arc_index(i, a);
    }
    int index_arc(int k, int r, int arc) const {
        return (k * n_ + r) * 3 * n_ + arc;
    }

    struct Key {
        int k, r, i, a;
    };
    Key key_of(int col) const {
        int arc = col % (3 * n_);
        int kr = col / (3 * n_);
        auto [i, a] = g_->arc_of(arc);
        return {kr / n_, kr % n_, i, a};
    }

    std::string name_of(int col) const {
        Key key = key_of(col);
        return "x" + std::to_string(key.k) + "_" + std::to_string(key.r) + "_" +
               std::to_string(key.i) + "_" + std::to_string(key.a);
    }

    std::vector<std::string> all_names() const {
        std::vector<std::string> names(num_vars());
        for (int c = 0; c < num_vars(); ++c) names[c] = name_of(c);
        return names;
    }

    int n() const { return n_; }
    const CubicGraph& graph() const { return *g_; }

private:
    const CubicGraph* g_;
    int n_;
};

/// Row families of the stage-arc model. Names follow their role; the
/// numbering matches the emission order.
enum BaseFamily : unsigned {
    kFlow = 1u << 1,          // departure at r balances arrival at r-1
    kRotation = 1u << 2,      // start-vertex rotation symmetry
    kStartChain = 1u << 3,    // per-arc totals agree across start vertices
    kStageChain = 1u << 4,    // per-arc totals agree across stages
    kVisitPerStart = 1u << 5, // every vertex departed once per start vertex
    kVisitPerStage = 1u << 6, // every vertex departed once per stage
    kInitialZero = 1u << 7,   // only the start vertex moves at stage 0
};

constexpr unsigned kAllBaseFamilies = kFlow | kRotation | kStartChain |
                                      kStageChain | kVisitPerStart |
                                      kVisitPerStage | kInitialZero;

struct BaseBuildOptions {
    unsigned families = kAllBaseFamilies;
    bool chain_pairs = true;  // false: literal all-pairs form for auditing
    bool with_names = false;
};

/// Base system rows (nonnegativity is the variable bound). With chain pairs
/// the row count is 2n^3 + 9n^2 - 3n.
LinearSystem build_base_system(const CubicGraph& g, const VariableMap& vmap,
                               const BaseBuildOptions& opts = {});

/// Emits one family over a column block at `block_offset` (used to duplicate
/// rows over the reverse-cycle block).
void emit_base_family(LinearSystem& sys, const CubicGraph& g,
                      const VariableMap& vmap, unsigned family,
                      bool chain_pairs, int block_offset,
                      const std::string& name_prefix);

/// 0/1 point of the full variable space for a Hamiltonian cycle; satisfies
/// every base row exactly.
std::vector<double> witness_from_cycle(const CubicGraph& g, const VariableMap& vmap,
                                       const std::vector<int>& cycle);

}  // namespace hcp
