#include "hcp/base_model.hpp"

#include <cassert>
#include <stdexcept>

namespace hcp {

namespace {

std::string idx_name(const std::string& prefix, std::initializer_list<int> idx) {
    std::string s = prefix;
    for (int v : idx) {
        s += '_';
        s += std::to_string(v);
    }
    return s;
}

}  // namespace

void emit_base_family(LinearSystem& sys, const CubicGraph& g,
                      const VariableMap& vmap, unsigned family,
                      bool chain_pairs, int off, const std::string& name_prefix) {
    const int n = g.num_vertices();
    const bool names = sys.names_enabled();

    switch (family) {
        case kFlow:
            for (int k = 0; k < n; ++k)
                for (int r = 1; r < n; ++r)
                    for (int i = 0; i < n; ++i) {
                        sys.begin_row(Sense::EQ, 0.0);
                        if (names)
                            sys.set_row_name(idx_name(name_prefix + "flow", {k, r, i}));
                        for (int a : g.neighbors(i)) {
                            sys.coef(off + vmap.index(k, r, i, a), 1.0);
                            sys.coef(off + vmap.index(k, r - 1, a, i), -1.0);
                        }
                        sys.end_row();
                    }
            break;

        case kRotation:
            for (int k = 0; k < n; ++k)
                for (int r = 1; r < n; ++r) {
                    assert(n - r >= 1 && n - r <= n - 1);  // stage never wraps
                    for (int i = 0; i < n; ++i) {
                        sys.begin_row(Sense::EQ, 0.0);
                        if (names)
                            sys.set_row_name(idx_name(name_prefix + "rot", {k, r, i}));
                        for (int a : g.neighbors(i))
                            sys.coef(off + vmap.index(k, r, i, a), 1.0);
                        for (int a : g.neighbors(k))
                            sys.coef(off + vmap.index(i, n - r, k, a), -1.0);
                        sys.end_row();
                    }
                }
            break;

        case kStartChain:
            for (int arc = 0; arc < 3 * n; ++arc) {
                auto [i, a] = g.arc_of(arc);
                if (chain_pairs) {
                    for (int k = 0; k < n; ++k) {
                        int j = (k + 1) % n;
                        sys.begin_row(Sense::EQ, 0.0);
                        if (names)
                            sys.set_row_name(
                                idx_name(name_prefix + "startch", {i, a, k}));
                        for (int r = 0; r < n; ++r) {
                            sys.coef(off + vmap.index_arc(k, r, arc), 1.0);
                            sys.coef(off + vmap.index_arc(j, r, arc), -1.0);
                        }
                        sys.end_row();
                    }
                } else {
                    for (int k = 0; k < n; ++k)
                        for (int j = 0; j < n; ++j) {
                            if (j == k) continue;
                            sys.begin_row(Sense::EQ, 0.0);
                            if (names)
                                sys.set_row_name(
                                    idx_name(name_prefix + "startp", {i, a, k, j}));
                            for (int r = 0; r < n; ++r) {
                                sys.coef(off + vmap.index_arc(k, r, arc), 1.0);
                                sys.coef(off + vmap.index_arc(j, r, arc), -1.0);
                            }
                            sys.end_row();
                        }
                }
            }
            break;

        case kStageChain:
            for (int arc = 0; arc < 3 * n; ++arc) {
                auto [i, a] = g.arc_of(arc);
                if (chain_pairs) {
                    for (int r = 0; r < n; ++r) {
                        int s = (r + 1) % n;
                        sys.begin_row(Sense::EQ, 0.0);
                        if (names)
                            sys.set_row_name(
                                idx_name(name_prefix + "stagech", {i, a, r}));
                        for (int k = 0; k < n; ++k) {
                            sys.coef(off + vmap.index_arc(k, r, arc), 1.0);
                            sys.coef(off + vmap.index_arc(k, s, arc), -1.0);
                        }
                        sys.end_row();
                    }
                } else {
                    for (int r = 0; r < n; ++r)
                        for (int s = 0; s < n; ++s) {
                            if (s == r) continue;
                            sys.begin_row(Sense::EQ, 0.0);
                            if (names)
                                sys.set_row_name(
                                    idx_name(name_prefix + "stagep", {i, a, r, s}));
                            for (int k = 0; k < n; ++k) {
                                sys.coef(off + vmap.index_arc(k, r, arc), 1.0);
                                sys.coef(off + vmap.index_arc(k, s, arc), -1.0);
                            }
                            sys.end_row();
                        }
                }
            }
            break;

        case kVisitPerStart:
            for (int k = 0; k < n; ++k)
                for (int i = 0; i < n; ++i) {
                    sys.begin_row(Sense::EQ, 1.0);
                    if (names)
                        sys.set_row_name(idx_name(name_prefix + "visit", {k, i}));
                    for (int r = 0; r < n; ++r)
                        for (int a : g.neighbors(i))
                            sys.coef(off + vmap.index(k, r, i, a), 1.0);
                    sys.end_row();
                }
            break;

        case kVisitPerStage:
            for (int r = 0; r < n; ++r)
                for (int i = 0; i < n; ++i) {
                    sys.begin_row(Sense::EQ, 1.0);
                    if (names)
                        sys.set_row_name(idx_name(name_prefix + "stagev", {r, i}));
                    for (int k = 0; k < n; ++k)
                        for (int a : g.neighbors(i))
                            sys.coef(off + vmap.index(k, r, i, a), 1.0);
                    sys.end_row();
                }
            break;

        case kInitialZero:
            for (int k = 0; k < n; ++k)
                for (int i = 0; i < n; ++i) {
                    if (i == k) continue;
                    for (int a : g.neighbors(i)) {
                        sys.begin_row(Sense::EQ, 0.0);
                        if (names)
                            sys.set_row_name(idx_name(name_prefix + "init0", {k, i, a}));
                        sys.coef(off + vmap.index(k, 0, i, a), 1.0);
                        sys.end_row();
                    }
                }
            break;

        default:
            throw std::invalid_argument("unknown base family");
    }
}

LinearSystem build_base_system(const CubicGraph& g, const VariableMap& vmap,
                               const BaseBuildOptions& opts) {
    LinearSystem sys(vmap.num_vars());
    if (opts.with_names) sys.enable_row_names();
    for (unsigned bit = kFlow; bit <= kInitialZero; bit <<= 1)
        if (opts.families & bit)
            emit_base_family(sys, g, vmap, bit, opts.chain_pairs, 0, "");
    return sys;
}

std::vector<double> witness_from_cycle(const CubicGraph& g, const VariableMap& vmap,
                                       const std::vector<int>& cycle) {
    if (!is_hamiltonian_cycle(g, cycle))
        throw std::invalid_argument("not a Hamiltonian cycle of this graph");
    const int n = g.num_vertices();
    std::vector<int> pos(n);
    for (int t = 0; t < n; ++t) pos[cycle[t]] = t;
    std::vector<double> x(vmap.num_vars(), 0.0);
    for (int k = 0; k < n; ++k) {
        int p = pos[k];
        for (int r = 0; r < n; ++r) {
            int i = cycle[(p + r) % n];
            int a = cycle[(p + r + 1) % n];
            x[vmap.index(k, r, i, a)] = 1.0;
        }
    }
    return x;
}

}  // namespace hcp
