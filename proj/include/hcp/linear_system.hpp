#pragma once

#include <limits>
#include <string>
#include <vector>

#include "hcp/rational.hpp"

namespace hcp {

enum class Sense : unsigned char { EQ, GE, LE };

constexpr double kNoUpperBound = std::numeric_limits<double>::infinity();

/// Sparse constraint system: rows over variables with lower bound 0 and an
/// optional upper bound. Coefficients and right-hand sides are exactly
/// representable (small integers or dyadic rationals), so converting them
/// to exact rationals is lossless.
class LinearSystem {
public:
    explicit LinearSystem(int num_vars = 0) : num_vars_(num_vars) {
        row_start_ = {0};
    }

    int num_vars() const { return num_vars_; }
    int num_rows() const { return static_cast<int>(rhs_.size()); }
    int num_nonzeros() const { return static_cast<int>(cols_.size()); }

    void set_num_vars(int n) { num_vars_ = n; }

    /// Starts a new row; follow with coef() calls and finish with end_row().
    void begin_row(Sense sense, double rhs);
    void coef(int col, double value);
    void end_row();

    /// One-shot row append.
    void add_row(Sense sense, double rhs,
                 const std::vector<std::pair<int, double>>& entries);

    /// Optional upper bound on a variable (lower bounds are fixed at 0).
    void set_upper_bound(int col, double ub);
    double upper_bound(int col) const {
        return upper_.empty() ? kNoUpperBound : upper_[col];
    }
    bool has_upper_bounds() const { return !upper_.empty(); }

    Sense sense(int row) const { return senses_[row]; }
    double rhs(int row) const { return rhs_[row]; }

    /// Sparse row access: [begin, end) indices into cols()/vals().
    int row_begin(int row) const { return row_start_[row]; }
    int row_end(int row) const { return row_start_[row + 1]; }
    const std::vector<int>& cols() const { return cols_; }
    const std::vector<double>& vals() const { return vals_; }

    /// Row names are kept only when enabled (used by the LP text dump).
    void enable_row_names() { names_enabled_ = true; }
    bool names_enabled() const { return names_enabled_; }
    void set_row_name(const std::string& name);
    const std::string& row_name(int row) const;

    /// Permuted copy (same rows in a different order); used by the
    /// determinism test suite.
    LinearSystem permuted(const std::vector<int>& row_order) const;

private:
    int num_vars_ = 0;
    std::vector<int> row_start_;
    std::vector<int> cols_;
    std::vector<double> vals_;
    std::vector<Sense> senses_;
    std::vector<double> rhs_;
    std::vector<double> upper_;
    bool in_row_ = false;
    bool names_enabled_ = false;
    std::vector<std::string> names_;
};

enum class FeasStatus : unsigned char { Empty, NonEmpty, Numerical };

struct SolveDiagnostics {
    long iterations = 0;
    double phase1_objective = 0.0;
    double max_residual = 0.0;
    bool used_bland = false;
    bool rational_escalated = false;
    int certificate_stage = 0;  // which rung of the exactness ladder succeeded
    double wall_seconds = 0.0;
};

/// Outcome of a feasibility solve. Empty verdicts carry an exact Farkas
/// certificate (one multiplier per row); NonEmpty verdicts carry a point.
struct FeasibilityVerdict {
    FeasStatus status = FeasStatus::Numerical;
    std::vector<double> point;
    std::vector<Rat> certificate;
    SolveDiagnostics diagnostics;
};

struct Residuals {
    double row = 0.0;
    double bound = 0.0;
    double max() const { return row > bound ? row : bound; }
};

/// Max row violation and max bound violation of a candidate point.
Residuals extract_point_residuals(const LinearSystem& sys,
                                  const std::vector<double>& point);

/// Exact Farkas check: multipliers must respect the sign convention per
/// sense (>=0 for GE rows, <=0 for LE rows, free for EQ), the combined
/// coefficient vector must be nonpositive on every unbounded variable, and
/// the combined rhs minus what finite upper bounds can absorb must be
/// strictly positive. All arithmetic is exact.
bool verify_certificate(const LinearSystem& sys, const std::vector<Rat>& certificate);

/// Writes the system in LP text format ("min 0" objective, one constraint
/// per line) using the stored row names and a caller-supplied column namer.
std::string to_lp_text(const LinearSystem& sys,
                       const std::vector<std::string>& column_names);

}  // namespace hcp
