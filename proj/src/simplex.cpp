#include "hcp/simplex.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace hcp {

namespace {

// ---------------------------------------------------------------------------
// Standard form: every row normalized to b >= 0; LE rows get a +1 slack,
// GE rows a -1 surplus, and every row owns an artificial column. Columns:
// [0, ns) structural, [ns, ns+m) slack/surplus (one slot per row; EQ slots
// are never used), [ns+m, ns+2m) artificials. Finite variable upper bounds
// become internal LE rows; their multipliers are dropped when a certificate
// is mapped back (the box check in verify_certificate absorbs them).
// ---------------------------------------------------------------------------

struct StdForm {
    int m = 0;     // internal rows
    int ns = 0;    // structural columns
    int next = 0;  // external rows (certificate length)
    std::vector<int> cptr, crow;
    std::vector<double> cval;
    std::vector<double> b;
    std::vector<signed char> rowsign;  // internal row = sign * external row
    std::vector<signed char> rowkind;  // 0 EQ, 1 LE, 2 GE (after normalization)
    int slack_base = 0;
    int art_base = 0;

    int num_cols() const { return ns + 2 * m; }
    int slack_col(int row) const { return slack_base + row; }
    int art_col(int row) const { return art_base + row; }

    int col_nnz(int col) const {
        return col < ns ? cptr[col + 1] - cptr[col] : 1;
    }
};

StdForm build_std_form(const LinearSystem& sys) {
    StdForm f;
    f.ns = sys.num_vars();
    f.next = sys.num_rows();

    struct RowRef {
        Sense sense;
        double rhs;
        int ext = -1;   // external row, or -1 for internal bound rows
        int bvar = -1;  // bounded variable for internal rows
    };
    std::vector<RowRef> rows;
    rows.reserve(sys.num_rows());
    for (int r = 0; r < sys.num_rows(); ++r)
        rows.push_back({sys.sense(r), sys.rhs(r), r, -1});
    if (sys.has_upper_bounds()) {
        for (int j = 0; j < sys.num_vars(); ++j) {
            double ub = sys.upper_bound(j);
            if (ub != kNoUpperBound) rows.push_back({Sense::LE, ub, -1, j});
        }
    }
    f.m = static_cast<int>(rows.size());
    f.slack_base = f.ns;
    f.art_base = f.ns + f.m;
    f.b.resize(f.m);
    f.rowsign.resize(f.m);
    f.rowkind.resize(f.m);

    for (int i = 0; i < f.m; ++i) {
        Sense s = rows[i].sense;
        double rhs = rows[i].rhs;
        signed char sign = 1;
        if (rhs < 0) {
            sign = -1;
            rhs = -rhs;
            if (s == Sense::GE) s = Sense::LE;
            else if (s == Sense::LE) s = Sense::GE;
        }
        f.b[i] = rhs;
        f.rowsign[i] = sign;
        f.rowkind[i] = s == Sense::EQ ? 0 : (s == Sense::LE ? 1 : 2);
    }

    std::vector<int> count(f.ns, 0);
    for (int i = 0; i < f.m; ++i) {
        if (rows[i].ext >= 0) {
            int r = rows[i].ext;
            for (int t = sys.row_begin(r); t < sys.row_end(r); ++t)
                ++count[sys.cols()[t]];
        } else {
            ++count[rows[i].bvar];
        }
    }
    f.cptr.assign(f.ns + 1, 0);
    for (int j = 0; j < f.ns; ++j) f.cptr[j + 1] = f.cptr[j] + count[j];
    f.crow.resize(f.cptr[f.ns]);
    f.cval.resize(f.cptr[f.ns]);
    std::vector<int> fill(f.cptr.begin(), f.cptr.end() - 1);
    for (int i = 0; i < f.m; ++i) {
        double sgn = f.rowsign[i];
        if (rows[i].ext >= 0) {
            int r = rows[i].ext;
            for (int t = sys.row_begin(r); t < sys.row_end(r); ++t) {
                int j = sys.cols()[t];
                f.crow[fill[j]] = i;
                f.cval[fill[j]] = sgn * sys.vals()[t];
                ++fill[j];
            }
        } else {
            int j = rows[i].bvar;
            f.crow[fill[j]] = i;
            f.cval[fill[j]] = 1.0;  // ub rows have rhs >= 0, never flipped
            ++fill[j];
        }
    }
    return f;
}

template <class T>
struct Ops;

template <>
struct Ops<double> {
    static double from_double(double x) { return x; }
    static double to_double(double x) { return x; }
    static double abs(double x) { return std::fabs(x); }
    static constexpr bool exact = false;
};

template <>
struct Ops<Rat> {
    static Rat from_double(double x) { return rat_from_double(x); }
    static double to_double(const Rat& x) { return rat_to_double(x); }
    static Rat abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }
    static constexpr bool exact = true;
};

// ---------------------------------------------------------------------------
// Basis factorization: left-looking sparse LU with DFS reach and a static
// sparsity ordering (singleton columns first, then by pattern size; pivot
// rows chosen by static row load under threshold pivoting). A product-form
// eta file carries pivots between refactorizations.
//
// Conventions: the basis column of row r is basic[r] ("position" r). ftran
// maps a row-indexed vector to position-indexed coefficients; btran maps a
// position-indexed cost vector to row-indexed duals.
// ---------------------------------------------------------------------------

template <class T>
class BasisFactor {
public:
    void attach(const StdForm* f) { form_ = f; }

    template <class Fn>
    void for_column(int col, Fn&& fn) const {
        const StdForm& f = *form_;
        if (col < f.ns) {
            for (int t = f.cptr[col]; t < f.cptr[col + 1]; ++t)
                fn(f.crow[t], Ops<T>::from_double(f.cval[t]));
        } else if (col < f.art_base) {
            int r = col - f.slack_base;
            fn(r, Ops<T>::from_double(f.rowkind[r] == 2 ? -1.0 : 1.0));
        } else {
            fn(col - f.art_base, Ops<T>::from_double(1.0));
        }
    }

    // Factorizes the basis; on singular columns the artificial of a free
    // row is substituted into `basic` and `repaired` is set.
    void refactor(std::vector<int>& basic, double eps_pivot, bool& repaired) {
        const int m = form_->m;
        repaired = false;
        lptr_.assign(m + 1, 0);
        uptr_.assign(m + 1, 0);
        lrow_.clear();
        lval_.clear();
        urow_.clear();
        uval_.clear();
        diag_.assign(m, T(0));
        pos_of_row_.assign(m, -1);
        pivot_row_.assign(m, -1);
        step_of_pos_.assign(m, -1);
        pos_of_step_.assign(m, -1);
        work_.assign(m, T(0));
        touched_.clear();
        intouched_.assign(m, 0);
        mark_.assign(m, 0);
        etas_.clear();
        scratch_.assign(m, T(0));

        std::vector<char> col_used(form_->num_cols(), 0);
        for (int r = 0; r < m; ++r) col_used[basic[r]] = 1;

        // Static ordering: identity-pattern columns first (zero fill), the
        // rest by ascending pattern size. Row loads steer pivots away from
        // dense rows.
        std::vector<int> order(m);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return form_->col_nnz(basic[a]) < form_->col_nnz(basic[b]);
        });
        row_load_.assign(m, 0);
        for (int p = 0; p < m; ++p)
            for_column(basic[p], [&](int r, const T& v) {
                if (v != T(0)) ++row_load_[r];
            });

        for (int s = 0; s < m; ++s) {
            int pos = order[s];
            for (int r : touched_) {
                work_[r] = T(0);
                intouched_[r] = 0;
            }
            touched_.clear();
            for_column(basic[pos], [&](int r, T v) {
                if (v == T(0)) return;
                if (!intouched_[r]) {
                    intouched_[r] = 1;
                    touched_.push_back(r);
                }
                work_[r] += v;
            });
            // Symbolic reach, then numeric elimination in topological order.
            reach_.clear();
            for (int r : touched_) {
                int j = pos_of_row_[r];
                if (j >= 0 && !mark_[j]) reach_dfs(j);
            }
            for (auto it = reach_.rbegin(); it != reach_.rend(); ++it) {
                int j = *it;
                mark_[j] = 0;
                const T v = work_[pivot_row_[j]];
                if (v == T(0)) continue;
                for (int t = lptr_[j]; t < lptr_[j + 1]; ++t) {
                    int r = lrow_[t];
                    if (!intouched_[r]) {
                        intouched_[r] = 1;
                        touched_.push_back(r);
                    }
                    work_[r] -= lval_[t] * v;
                }
            }
            // Pivot: eligible under threshold pivoting; prefer light rows,
            // then magnitude, then the smallest row id (determinism).
            int prow = -1;
            if constexpr (Ops<T>::exact) {
                for (int r : touched_) {
                    if (pos_of_row_[r] >= 0 || work_[r] == T(0)) continue;
                    if (prow < 0 || row_load_[r] < row_load_[prow] ||
                        (row_load_[r] == row_load_[prow] && r < prow))
                        prow = r;
                }
            } else {
                double colmax = 0.0;
                for (int r : touched_) {
                    if (pos_of_row_[r] >= 0) continue;
                    colmax = std::max(colmax, std::fabs(Ops<T>::to_double(work_[r])));
                }
                double thresh = std::max(eps_pivot, 0.05 * colmax);
                double best_mag = 0.0;
                for (int r : touched_) {
                    if (pos_of_row_[r] >= 0) continue;
                    double a = std::fabs(Ops<T>::to_double(work_[r]));
                    if (a < thresh) continue;
                    bool better;
                    if (prow < 0) better = true;
                    else if (row_load_[r] != row_load_[prow])
                        better = row_load_[r] < row_load_[prow];
                    else if (a != best_mag)
                        better = a > best_mag;
                    else
                        better = r < prow;
                    if (better) {
                        prow = r;
                        best_mag = a;
                    }
                }
            }
            if (prow < 0) {
                int free_row = -1;
                for (int r = 0; r < m; ++r) {
                    if (pos_of_row_[r] < 0 && !col_used[form_->art_col(r)]) {
                        free_row = r;
                        break;
                    }
                }
                if (free_row < 0)
                    throw std::runtime_error("basis repair exhausted");
                col_used[basic[pos]] = 0;
                for_column(basic[pos], [&](int r, const T& v) {
                    if (v != T(0)) --row_load_[r];
                });
                basic[pos] = form_->art_col(free_row);
                col_used[basic[pos]] = 1;
                ++row_load_[free_row];
                repaired = true;
                --s;  // redo this step with the replacement column
                continue;
            }
            diag_[s] = work_[prow];
            pivot_row_[s] = prow;
            pos_of_row_[prow] = s;
            step_of_pos_[pos] = s;
            pos_of_step_[s] = pos;
            for (int r : touched_) {
                if (r == prow || work_[r] == T(0)) continue;
                int j = pos_of_row_[r];
                if (j >= 0 && j != s) {
                    urow_.push_back(j);
                    uval_.push_back(work_[r]);
                } else {
                    lrow_.push_back(r);
                    lval_.push_back(work_[r] / diag_[s]);
                }
            }
            lptr_[s + 1] = static_cast<int>(lrow_.size());
            uptr_[s + 1] = static_cast<int>(urow_.size());
            for_column(basic[pos], [&](int r, const T& v) {
                if (v != T(0)) --row_load_[r];
            });
        }
        for (int r : touched_) {
            work_[r] = T(0);
            intouched_[r] = 0;
        }
        touched_.clear();
    }

    int num_etas() const { return static_cast<int>(etas_.size()); }

    // Registers a pivot (basis position `pos` replaced, direction w).
    void push_eta(int pos, std::vector<std::pair<int, T>> w, const T& wpos) {
        etas_.push_back({pos, wpos, std::move(w)});
    }

    // Position-indexed solve of B x = (row-indexed input).
    void ftran(std::vector<T>& x) const {
        const int m = form_->m;
        for (int s = 0; s < m; ++s) {
            const T& v = x[pivot_row_[s]];
            if (v == T(0)) continue;
            for (int t = lptr_[s]; t < lptr_[s + 1]; ++t) x[lrow_[t]] -= lval_[t] * v;
        }
        std::vector<T>& z = scratch_;
        for (int s = m - 1; s >= 0; --s) {
            if (x[pivot_row_[s]] == T(0)) {
                z[pos_of_step_[s]] = T(0);
                continue;
            }
            T t = x[pivot_row_[s]] / diag_[s];
            z[pos_of_step_[s]] = t;
            for (int u = uptr_[s]; u < uptr_[s + 1]; ++u)
                x[pivot_row_[urow_[u]]] -= uval_[u] * t;
        }
        std::swap(x, z);
        for (const auto& e : etas_) {
            T t = x[e.pos] / e.wpivot;
            x[e.pos] = std::move(t);
            if (x[e.pos] == T(0)) continue;
            for (const auto& [i, wi] : e.w)
                if (i != e.pos) x[i] -= wi * x[e.pos];
        }
    }

    // Row-indexed duals from a position-indexed cost vector.
    void btran(std::vector<T>& c) const {
        const int m = form_->m;
        for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
            T dot(0);
            for (const auto& [i, wi] : it->w)
                if (i != it->pos) dot += wi * c[i];
            c[it->pos] = (c[it->pos] - dot) / it->wpivot;
        }
        std::vector<T>& u = scratch_;
        for (int s = 0; s < m; ++s) {
            T acc = std::move(c[pos_of_step_[s]]);
            for (int t = uptr_[s]; t < uptr_[s + 1]; ++t) acc -= uval_[t] * u[urow_[t]];
            u[s] = acc / diag_[s];
        }
        std::vector<T>& y = c;  // reuse; filled by pivot row below
        for (int s = m - 1; s >= 0; --s) {
            T acc = std::move(u[s]);
            for (int t = lptr_[s]; t < lptr_[s + 1]; ++t) acc -= lval_[t] * y[lrow_[t]];
            y[pivot_row_[s]] = std::move(acc);
        }
    }

private:
    struct Eta {
        int pos;
        T wpivot;
        std::vector<std::pair<int, T>> w;
    };

    void reach_dfs(int j0) {
        dfs_stack_.clear();
        dfs_stack_.push_back({j0, lptr_[j0]});
        mark_[j0] = 1;
        while (!dfs_stack_.empty()) {
            auto& [j, t] = dfs_stack_.back();
            if (t < lptr_[j + 1]) {
                int r = lrow_[t];
                ++t;
                int jj = pos_of_row_[r];
                if (jj >= 0 && !mark_[jj]) {
                    mark_[jj] = 1;
                    dfs_stack_.push_back({jj, lptr_[jj]});
                }
            } else {
                reach_.push_back(j);
                dfs_stack_.pop_back();
            }
        }
    }

    const StdForm* form_ = nullptr;
    std::vector<int> lptr_, uptr_, lrow_, urow_;
    std::vector<T> lval_, uval_;
    std::vector<T> diag_;
    std::vector<int> pos_of_row_, pivot_row_;  // indexed by step
    std::vector<int> step_of_pos_, pos_of_step_;
    std::vector<int> row_load_;
    std::vector<Eta> etas_;

    mutable std::vector<T> scratch_;
    std::vector<T> work_;
    std::vector<int> touched_;
    std::vector<char> intouched_;
    std::vector<char> mark_;
    std::vector<int> reach_;
    std::vector<std::pair<int, int>> dfs_stack_;
};

// ---------------------------------------------------------------------------
// Phase-1 simplex (minimize the sum of artificials). The initial vertex of
// these systems is massively degenerate, so the float instantiation first
// pivots against a deterministically perturbed rhs and then finishes on the
// true data; verdicts are only ever read off the true data. Artificials
// never re-enter the basis, which cannot change whether the optimum is zero.
// ---------------------------------------------------------------------------

template <class T>
struct Phase1Result {
    bool completed = false;
    bool feasible = false;
    double objective = 0.0;
    std::vector<T> x;
    std::vector<T> y;
    std::vector<int> basic;
    long iterations = 0;
    bool used_bland = false;
};

template <class T>
class Phase1 {
public:
    Phase1(const StdForm& f, const SolverOptions& opts) : f_(f), opts_(opts) {
        factor_.attach(&f_);
    }

    Phase1Result<T> run() {
        const int m = f_.m;
        res_ = Phase1Result<T>{};
        basic_.resize(m);
        for (int r = 0; r < m; ++r)
            basic_[r] = f_.rowkind[r] == 1 ? f_.slack_col(r) : f_.art_col(r);
        b_eff_.resize(m);
        devex_.assign(f_.num_cols(), 1.0);

        const long max_iter =
            opts_.max_iterations > 0 ? opts_.max_iterations : 20000 + 40L * m;
        long budget = max_iter;

        bool optimal = false;
        if (!Ops<T>::exact && m > 50 && !std::getenv("HCP_NO_PERTURB")) {
            // The initial vertex is massively degenerate, so pivot first
            // against a noisy rhs (every vertex generic, every step real)
            // and stop at the noise floor before end-game pivots can spoil
            // the basis conditioning.
            double noise = set_rhs(true);
            refactor();
            iterate(budget, 1.05 * noise + 1e-9);
            if (std::getenv("HCP_STAGE_TRACE"))
                std::fprintf(stderr, "[stage] perturbed done iters=%ld obj=%g\n",
                             max_iter - budget, Ops<T>::to_double(objective()));
            set_rhs(false);
            repair_negative_basics();
            if (std::getenv("HCP_STAGE_TRACE"))
                std::fprintf(stderr, "[stage] true rhs obj=%g\n",
                             Ops<T>::to_double(objective()));
        } else {
            set_rhs(false);
            refactor();
        }
        optimal = iterate(budget, Ops<T>::exact ? 0.0 : 1e-11);

        res_.iterations = max_iter - budget;
        refactor();
        T obj = objective();
        res_.objective = Ops<T>::to_double(obj);
        if constexpr (Ops<T>::exact) {
            res_.feasible = obj == T(0);
        } else {
            res_.feasible = res_.objective <= opts_.eps_feas;
        }
        res_.completed = res_.feasible || optimal;
        compute_duals();
        res_.x.assign(f_.ns, T(0));
        for (int r = 0; r < m; ++r)
            if (basic_[r] < f_.ns) res_.x[basic_[r]] = xb_[r];
        res_.y = y_;
        res_.basic = basic_;
        return res_;
    }

private:
    // Pivots until optimality (returns true), an objective at or below
    // stop_below, a stall beyond hope, or budget exhaustion.
    bool iterate(long& budget, double stop_below) {
        const int m = f_.m;
        const long stall_window =
            opts_.stall_window > 0 ? opts_.stall_window : 250 + m / 4;
        const double eps_opt = Ops<T>::exact ? 0.0 : opts_.eps_opt;
        bool bland = Ops<T>::exact;
        long since_progress = 0;
        T last_obj = objective();

        while (budget > 0) {
            if (factor_.num_etas() >= opts_.refactor_every) refactor();

            {
                T obj = objective();
                if constexpr (Ops<T>::exact) {
                    if (obj <= T(0)) return false;
                } else {
                    if (Ops<T>::to_double(obj) <= stop_below) return false;
                }
            }

            compute_duals();
            int enter = -1, leave = -1;
            for (int attempt = 0; attempt < 8; ++attempt) {
                enter = price(bland, eps_opt);
                if (enter < 0 && factor_.num_etas() > 0) {
                    refactor();
                    compute_duals();
                    enter = price(bland, eps_opt);
                }
                if (enter < 0) return true;

                w_.assign(m, T(0));
                factor_.for_column(enter, [&](int r, T v) { w_[r] += v; });
                factor_.ftran(w_);

                leave = ratio_test(bland);
                if (leave < 0) return false;  // phase-1 cannot be unbounded
                if constexpr (Ops<T>::exact) break;
                // A tiny pivot element would poison the eta file; ban the
                // column until the next refactorization and retry.
                if (std::fabs(Ops<T>::to_double(w_[leave])) >= 1e-7) break;
                banned_[enter] = 1;
                enter = -1;
            }
            if (enter < 0 || leave < 0) return false;
#ifdef HCP_SIMPLEX_TRACE
            std::fprintf(stderr, "bland=%d enter=%d leave=%d out=%d step=%g obj=%g\n",
                         (int)bland, enter, leave, basic_[leave],
                         Ops<T>::to_double(xb_[leave] / w_[leave]),
                         Ops<T>::to_double(objective()));
#endif
            if (!bland) update_devex(enter, leave);
            pivot(enter, leave);
            --budget;
            if (std::getenv("HCP_OBJ_TRACE") && (budget % 250 == 0)) {
                double mn = 0, mx = 0;
                for (int r = 0; r < m; ++r) {
                    mn = std::min(mn, Ops<T>::to_double(xb_[r]));
                    mx = std::max(mx, std::fabs(Ops<T>::to_double(xb_[r])));
                }
                std::fprintf(stderr, "[obj] budget=%ld obj=%g minxb=%g maxxb=%g etas=%d\n",
                             budget, Ops<T>::to_double(objective()), mn, mx,
                             factor_.num_etas());
            }

            T obj2 = objective();
            bool progressed;
            if constexpr (Ops<T>::exact) {
                progressed = obj2 < last_obj;
            } else {
                double prev = Ops<T>::to_double(last_obj);
                progressed =
                    Ops<T>::to_double(obj2) < prev - 1e-9 * std::max(1.0, prev);
            }
            if (progressed) {
                since_progress = 0;
                last_obj = obj2;
            } else if (++since_progress > stall_window) {
                if (!bland) {
                    bland = true;
                    res_.used_bland = true;
                    refactor();
                    since_progress = 0;
                } else if (!Ops<T>::exact && since_progress > 8 * stall_window) {
                    // Rounding noise can defeat Bland's rule; let the exact
                    // path decide.
                    return false;
                }
            }
        }
        return false;
    }

    // Positive rhs noise keeps the artificial start feasible while making
    // the initial vertex nondegenerate. Returns the total noise mass, which
    // bounds the perturbed optimum of a feasible system.
    double set_rhs(bool perturbed) {
        double total = 0.0;
        for (int r = 0; r < f_.m; ++r) {
            b_eff_[r] = f_.b[r];
            if (perturbed) {
                unsigned h = static_cast<unsigned>(r) * 2654435761u;
                h ^= h >> 16;
                h *= 2246822519u;
                h ^= h >> 13;
                static const double amp =
                    std::getenv("HCP_NOISE_AMP") ? std::atof(std::getenv("HCP_NOISE_AMP"))
                                                 : 1e-6;
                double noise = amp * (1.0 + h / 4294967296.0);
                b_eff_[r] += noise;
                total += noise;
            }
        }
        return total;
    }

    // After restoring the true rhs a handful of basics may sit slightly
    // below zero; swap them for their row's artificial where possible so
    // the final stage starts from a clean phase-1 vertex.
    void repair_negative_basics() {
        for (int round = 0; round < 4; ++round) {
            refactor();
            bool any = false;
            for (int r = 0; r < f_.m; ++r) {
                if (Ops<T>::to_double(xb_[r]) >= -1e-9) continue;
                int art = f_.art_col(r);
                if (in_basis_[art]) continue;  // tolerated; ratio clamp holds it
                in_basis_[basic_[r]] = 0;
                basic_[r] = art;
                in_basis_[art] = 1;
                any = true;
            }
            if (!any) return;
        }
        refactor();
    }

    // Deterministic per-row bound jitter for the ratio test: blocking
    // pretends basics may dwell slightly below zero, which breaks the
    // massive degenerate ties of these systems and makes every pivot take
    // a strictly positive step.
    static double bound_jitter(int r) {
        static const bool off = std::getenv("HCP_NO_JITTER") != nullptr;
        if (off) return 0.0;
        unsigned h = static_cast<unsigned>(r) * 2654435761u;
        return 1e-9 * (1.0 + (h % 4093) / 4093.0);
    }

    void refactor() {
        bool repaired = false;
        factor_.refactor(basic_, opts_.eps_pivot, repaired);
        in_basis_.assign(f_.num_cols(), 0);
        for (int c : basic_) in_basis_[c] = 1;
        banned_.assign(f_.num_cols(), 0);
        xb_.resize(f_.m);
        for (int r = 0; r < f_.m; ++r) xb_[r] = Ops<T>::from_double(b_eff_[r]);
        factor_.ftran(xb_);
    }

    void compute_duals() {
        y_.assign(f_.m, T(0));
        for (int r = 0; r < f_.m; ++r)
            if (basic_[r] >= f_.art_base) y_[r] = T(1);
        factor_.btran(y_);
    }

    T objective() const {
        T obj(0);
        for (int r = 0; r < f_.m; ++r)
            if (basic_[r] >= f_.art_base) obj += xb_[r];
        return obj;
    }

    int price(bool bland, double eps_opt) {
        int best = -1;
        T best_val(0);
        double best_score = 0.0;
        for (int j = 0; j < f_.art_base; ++j) {
            if (in_basis_[j] || banned_[j]) continue;
            if (j >= f_.slack_base && f_.rowkind[j - f_.slack_base] == 0)
                continue;  // EQ rows have no usable slack slot
            T d(0);
            factor_.for_column(j, [&](int r, const T& v) {
                if (y_[r] != T(0)) d -= y_[r] * v;
            });
            bool neg;
            if constexpr (Ops<T>::exact)
                neg = d < T(0);
            else
                neg = Ops<T>::to_double(d) < -eps_opt;
            if (!neg) continue;
            if (bland) return j;
            if constexpr (Ops<T>::exact) {
                if (best < 0 || d < best_val) {
                    best = j;
                    best_val = d;
                }
            } else {
                // Devex: largest |d|^2 / weight.
                double dd = Ops<T>::to_double(d);
                double score = dd * dd / devex_[j];
                if (best < 0 || score > best_score) {
                    best = j;
                    best_score = score;
                }
            }
        }
        return best;
    }

    // Devex reference-framework update after choosing the pivot.
    void update_devex(int enter, int leave) {
        if constexpr (Ops<T>::exact) {
            (void)enter;
            (void)leave;
            return;
        } else {
            double alpha_q = Ops<T>::to_double(w_[leave]);
            if (alpha_q == 0.0) return;
            double gamma_q = devex_[enter];
            // Row `leave` of the tableau: rho^T = e_leave B^-1.
            rho_.assign(f_.m, T(0));
            rho_[leave] = T(1);
            factor_.btran(rho_);
            double growth = 0.0;
            for (int j = 0; j < f_.art_base; ++j) {
                if (in_basis_[j] || j == enter) continue;
                if (j >= f_.slack_base && f_.rowkind[j - f_.slack_base] == 0)
                    continue;
                double alpha = 0.0;
                factor_.for_column(j, [&](int r, const T& v) {
                    double y = Ops<T>::to_double(rho_[r]);
                    if (y != 0.0) alpha += y * Ops<T>::to_double(v);
                });
                if (alpha == 0.0) continue;
                double cand = (alpha / alpha_q) * (alpha / alpha_q) * gamma_q;
                if (cand > devex_[j]) devex_[j] = cand;
                growth = std::max(growth, devex_[j]);
            }
            devex_[basic_[leave]] = std::max(gamma_q / (alpha_q * alpha_q), 1.0);
            if (growth > 1e10) devex_.assign(devex_.size(), 1.0);
        }
    }

    int ratio_test(bool bland) {
        if constexpr (Ops<T>::exact) {
            // Exact ties, Bland order.
            T best_ratio(0);
            int leave = -1;
            for (int r = 0; r < f_.m; ++r) {
                if (!eligible_pivot(r)) continue;
                T ratio = xb_[r] / w_[r];
                if (ratio < T(0)) ratio = T(0);
                if (leave < 0 || ratio < best_ratio ||
                    (ratio == best_ratio && basic_[r] < basic_[leave])) {
                    if (leave < 0 || ratio < best_ratio) best_ratio = ratio;
                    leave = r;
                }
            }
            return leave;
        } else {
            // Jittered blocking: basics may dwell just below zero, so the
            // degenerate ties of the stage-arc systems break and every
            // pivot takes a strictly positive step.
            double best_ratio = 0.0;
            bool have = false;
            for (int r = 0; r < f_.m; ++r) {
                if (!eligible_pivot(r)) continue;
                double ratio = (Ops<T>::to_double(xb_[r]) + bound_jitter(r)) /
                               Ops<T>::to_double(w_[r]);
                if (ratio < 0.0) ratio = 0.0;
                if (!have || ratio < best_ratio) {
                    best_ratio = ratio;
                    have = true;
                }
            }
            if (!have) return -1;
            double band = 1e-12 * (1.0 + best_ratio);
            int leave = -1;
            for (int r = 0; r < f_.m; ++r) {
                if (!eligible_pivot(r)) continue;
                double ratio = (Ops<T>::to_double(xb_[r]) + bound_jitter(r)) /
                               Ops<T>::to_double(w_[r]);
                if (ratio < 0.0) ratio = 0.0;
                if (ratio > best_ratio + band) continue;
                if (leave < 0) {
                    leave = r;
                    continue;
                }
                if (bland) {
                    if (basic_[r] < basic_[leave]) leave = r;
                    continue;
                }
                if (Ops<T>::abs(w_[r]) > Ops<T>::abs(w_[leave])) leave = r;
            }
            return leave;
        }
    }

    bool eligible_pivot(int r) const {
        if constexpr (Ops<T>::exact)
            return w_[r] > T(0);
        else
            return w_[r] > opts_.eps_pivot;
    }

    void pivot(int enter, int leave) {
        T step;
        if constexpr (Ops<T>::exact) {
            step = xb_[leave] / w_[leave];
            if (step < T(0)) step = T(0);
        } else {
            step = (Ops<T>::to_double(xb_[leave]) + bound_jitter(leave)) /
                   Ops<T>::to_double(w_[leave]);
            if (step < T(0)) step = T(0);
        }
        std::vector<std::pair<int, T>> eta;
        for (int r = 0; r < f_.m; ++r) {
            if (w_[r] == T(0)) continue;
            eta.emplace_back(r, w_[r]);
            if (r != leave) xb_[r] -= step * w_[r];
        }
        xb_[leave] = step;
        in_basis_[basic_[leave]] = 0;
        basic_[leave] = enter;
        in_basis_[enter] = 1;
        factor_.push_eta(leave, std::move(eta), w_[leave]);
    }

    const StdForm& f_;
    SolverOptions opts_;
    BasisFactor<T> factor_;
    Phase1Result<T> res_;
    std::vector<int> basic_;
    std::vector<char> in_basis_;
    std::vector<char> banned_;
    std::vector<double> b_eff_;
    std::vector<double> devex_;
    std::vector<T> xb_, y_, w_, rho_;
};

// ---------------------------------------------------------------------------
// Certificate mapping and the exactness ladder.
// ---------------------------------------------------------------------------

std::vector<Rat> map_certificate(const StdForm& f, const std::vector<Rat>& y_int) {
    std::vector<Rat> y(f.next, Rat(0));
    for (int i = 0; i < f.next; ++i) y[i] = Rat(f.rowsign[i]) * y_int[i];
    return y;
}

// Clamp multipliers that violate the sense sign convention by rounding
// noise; verification re-checks everything afterwards.
void clamp_signs(const LinearSystem& sys, std::vector<Rat>& y) {
    for (int r = 0; r < sys.num_rows(); ++r) {
        if (sys.sense(r) == Sense::GE && y[r] < 0) y[r] = 0;
        if (sys.sense(r) == Sense::LE && y[r] > 0) y[r] = 0;
    }
}

}  // namespace

FeasibilityVerdict solve_feasibility(const LinearSystem& sys, const SolverOptions& opts) {
    auto t0 = std::chrono::steady_clock::now();
    FeasibilityVerdict out;
    StdForm f = build_std_form(sys);

    auto finish = [&](FeasStatus st) {
        out.status = st;
        out.diagnostics.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        return out;
    };

    auto run_rational = [&]() -> FeasStatus {
        out.diagnostics.rational_escalated = true;
        Phase1<Rat> solver(f, opts);
        Phase1Result<Rat> res = solver.run();
        out.diagnostics.iterations += res.iterations;
        if (!res.completed) return FeasStatus::Numerical;
        if (res.feasible) {
            out.point.assign(sys.num_vars(), 0.0);
            for (int j = 0; j < sys.num_vars(); ++j)
                out.point[j] = rat_to_double(res.x[j]);
            out.diagnostics.max_residual =
                extract_point_residuals(sys, out.point).max();
            return FeasStatus::NonEmpty;
        }
        std::vector<Rat> cert = map_certificate(f, res.y);
        if (!verify_certificate(sys, cert)) return FeasStatus::Numerical;
        out.certificate = std::move(cert);
        out.diagnostics.certificate_stage = 5;
        return FeasStatus::Empty;
    };

    if (opts.force_rational) return finish(run_rational());

    Phase1<double> solver(f, opts);
    Phase1Result<double> res = solver.run();
    out.diagnostics.iterations = res.iterations;
    out.diagnostics.phase1_objective = res.objective;
    out.diagnostics.used_bland = res.used_bland;

    if (res.completed && res.feasible) {
        out.point = res.x;
        Residuals rr = extract_point_residuals(sys, out.point);
        out.diagnostics.max_residual = rr.max();
        if (rr.max() <= opts.eps_feas) return finish(FeasStatus::NonEmpty);
    } else if (res.completed) {
        double ymax = 0.0;
        for (double v : res.y) ymax = std::max(ymax, std::fabs(v));
        // Rung 1: dyadic duals as-is (plus sign clamping); rungs 2-3:
        // snapped to small denominators; rung 4: exact duals on the final
        // basis; rung 5: full exact solve.
        for (long long den : {0LL, 720720LL, 1000000LL, 1000000000000LL}) {
            std::vector<Rat> y_int(res.y.size());
            for (size_t i = 0; i < res.y.size(); ++i) {
                double v = res.y[i];
                if (std::fabs(v) <= 1e-11 * std::max(1.0, ymax) && den != 0) {
                    y_int[i] = 0;
                } else {
                    y_int[i] = den == 0 ? rat_from_double(v) : rat_approximate(v, den);
                }
            }
            std::vector<Rat> cert = map_certificate(f, y_int);
            clamp_signs(sys, cert);
            if (verify_certificate(sys, cert)) {
                out.certificate = std::move(cert);
                out.diagnostics.certificate_stage =
                    den == 0 ? 1 : (den == 720720 ? 2 : 3);
                return finish(FeasStatus::Empty);
            }
        }
        {
            BasisFactor<Rat> bf;
            bf.attach(&f);
            std::vector<int> basic = res.basic;
            bool repaired = false;
            bf.refactor(basic, opts.eps_pivot, repaired);
            if (!repaired) {
                std::vector<Rat> y(f.m, Rat(0));
                for (int r = 0; r < f.m; ++r)
                    if (basic[r] >= f.art_base) y[r] = 1;
                bf.btran(y);
                std::vector<Rat> cert = map_certificate(f, y);
                if (verify_certificate(sys, cert)) {
                    out.certificate = std::move(cert);
                    out.diagnostics.certificate_stage = 4;
                    return finish(FeasStatus::Empty);
                }
            }
        }
    }

    if (!opts.rational_escalation) return finish(FeasStatus::Numerical);
    return finish(run_rational());
}

}  // namespace hcp
