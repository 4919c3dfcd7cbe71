#include "hcp/linear_system.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hcp {

void LinearSystem::begin_row(Sense sense, double rhs) {
    if (in_row_) throw std::logic_error("begin_row while a row is open");
    senses_.push_back(sense);
    rhs_.push_back(rhs);
    if (names_enabled_) names_.emplace_back();
    in_row_ = true;
}

void LinearSystem::coef(int col, double value) {
    if (!in_row_) throw std::logic_error("coef outside a row");
    if (col < 0 || col >= num_vars_)
        throw std::out_of_range("column " + std::to_string(col) + " out of range");
    if (value == 0.0) return;
    cols_.push_back(col);
    vals_.push_back(value);
}

void LinearSystem::end_row() {
    if (!in_row_) throw std::logic_error("end_row without begin_row");
    in_row_ = false;
    int lo = row_start_.back();
    int hi = static_cast<int>(cols_.size());
    // Merge duplicate columns (builders may emit the same variable twice in
    // one row; terms can cancel entirely).
    if (hi - lo > 1) {
        std::vector<std::pair<int, double>> buf;
        buf.reserve(hi - lo);
        for (int t = lo; t < hi; ++t) buf.emplace_back(cols_[t], vals_[t]);
        std::sort(buf.begin(), buf.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        cols_.resize(lo);
        vals_.resize(lo);
        for (size_t t = 0; t < buf.size();) {
            int c = buf[t].first;
            double v = 0.0;
            while (t < buf.size() && buf[t].first == c) v += buf[t++].second;
            if (v != 0.0) {
                cols_.push_back(c);
                vals_.push_back(v);
            }
        }
    }
    row_start_.push_back(static_cast<int>(cols_.size()));
}

void LinearSystem::add_row(Sense sense, double rhs,
                           const std::vector<std::pair<int, double>>& entries) {
    begin_row(sense, rhs);
    for (const auto& [c, v] : entries) coef(c, v);
    end_row();
}

void LinearSystem::set_upper_bound(int col, double ub) {
    if (upper_.empty()) upper_.assign(num_vars_, kNoUpperBound);
    upper_[col] = ub;
}

void LinearSystem::set_row_name(const std::string& name) {
    if (!names_enabled_) return;
    if (in_row_)
        names_.back() = name;
    else if (!names_.empty())
        names_.back() = name;
}

const std::string& LinearSystem::row_name(int row) const {
    static const std::string empty;
    if (!names_enabled_ || row >= static_cast<int>(names_.size())) return empty;
    return names_[row];
}

LinearSystem LinearSystem::permuted(const std::vector<int>& row_order) const {
    if (static_cast<int>(row_order.size()) != num_rows())
        throw std::invalid_argument("permutation size mismatch");
    LinearSystem out(num_vars_);
    if (!upper_.empty()) out.upper_ = upper_;
    for (int r : row_order) {
        out.begin_row(senses_[r], rhs_[r]);
        for (int t = row_begin(r); t < row_end(r); ++t) out.coef(cols_[t], vals_[t]);
        out.end_row();
    }
    return out;
}

Residuals extract_point_residuals(const LinearSystem& sys,
                                  const std::vector<double>& point) {
    if (static_cast<int>(point.size()) != sys.num_vars())
        throw std::invalid_argument("point length != num_vars");
    Residuals res;
    for (int r = 0; r < sys.num_rows(); ++r) {
        double lhs = 0.0;
        for (int t = sys.row_begin(r); t < sys.row_end(r); ++t)
            lhs += sys.vals()[t] * point[sys.cols()[t]];
        double diff = lhs - sys.rhs(r);
        double viol = 0.0;
        switch (sys.sense(r)) {
            case Sense::EQ: viol = std::fabs(diff); break;
            case Sense::GE: viol = diff < 0 ? -diff : 0.0; break;
            case Sense::LE: viol = diff > 0 ? diff : 0.0; break;
        }
        res.row = std::max(res.row, viol);
    }
    for (int j = 0; j < sys.num_vars(); ++j) {
        if (point[j] < 0) res.bound = std::max(res.bound, -point[j]);
        double ub = sys.upper_bound(j);
        if (point[j] > ub) res.bound = std::max(res.bound, point[j] - ub);
    }
    return res;
}

bool verify_certificate(const LinearSystem& sys, const std::vector<Rat>& certificate) {
    if (static_cast<int>(certificate.size()) != sys.num_rows()) return false;
    for (int r = 0; r < sys.num_rows(); ++r) {
        if (sys.sense(r) == Sense::GE && certificate[r] < 0) return false;
        if (sys.sense(r) == Sense::LE && certificate[r] > 0) return false;
    }
    std::vector<Rat> z(sys.num_vars(), Rat(0));
    Rat val(0);
    for (int r = 0; r < sys.num_rows(); ++r) {
        const Rat& y = certificate[r];
        if (y == 0) continue;
        for (int t = sys.row_begin(r); t < sys.row_end(r); ++t)
            z[sys.cols()[t]] += y * rat_from_double(sys.vals()[t]);
        val += y * rat_from_double(sys.rhs(r));
    }
    // For feasible x: z.x >= val. Maximize z.x over the box [0, u]: positive
    // components need a finite upper bound to absorb them.
    for (int j = 0; j < sys.num_vars(); ++j) {
        if (z[j] <= 0) continue;
        double ub = sys.upper_bound(j);
        if (ub == kNoUpperBound) return false;
        val -= z[j] * rat_from_double(ub);
    }
    return val > 0;
}

std::string to_lp_text(const LinearSystem& sys,
                       const std::vector<std::string>& column_names) {
    if (static_cast<int>(column_names.size()) != sys.num_vars())
        throw std::invalid_argument("column name count mismatch");
    std::ostringstream out;
    out << "min 0\n";
    out << "subject to\n";
    for (int r = 0; r < sys.num_rows(); ++r) {
        const std::string& nm = sys.row_name(r);
        out << (nm.empty() ? "c" + std::to_string(r) : nm) << ":";
        for (int t = sys.row_begin(r); t < sys.row_end(r); ++t) {
            double v = sys.vals()[t];
            out << (v < 0 ? " - " : " + ");
            double av = std::fabs(v);
            if (av != 1.0) out << av << " ";
            out << column_names[sys.cols()[t]];
        }
        switch (sys.sense(r)) {
            case Sense::EQ: out << " = "; break;
            case Sense::GE: out << " >= "; break;
            case Sense::LE: out << " <= "; break;
        }
        out << sys.rhs(r) << "\n";
    }
    out << "bounds\n";
    for (int j = 0; j < sys.num_vars(); ++j) {
        double ub = sys.upper_bound(j);
        if (ub != kNoUpperBound)
            out << "0 <= " << column_names[j] << " <= " << ub << "\n";
    }
    out << "end\n";
    return out.str();
}

}  // namespace hcp
