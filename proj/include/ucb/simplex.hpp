#pragma once

#include <string>
#include <vector>

#include "ucb/model.hpp"

namespace ucb {

enum class LpStatus { Optimal, Infeasible, Unbounded, Limit };

struct LpOptions {
    double feas_tol = 1e-9;
    double opt_tol = 1e-9;
    long max_iters = 0;  // 0: derive from problem size
    int refactor_every = 64;
};

struct LpOutcome {
    LpStatus status = LpStatus::Limit;
    double objective = 0.0;
    std::vector<double> x;          // all columns (structural first, then logicals)
    std::vector<double> y;          // row duals
    std::vector<double> dj;         // reduced costs per column
    long iterations = 0;
    double primal_residual = 0.0;   // max scaled bound/row violation at the end
    std::string note;
};

// min cost.x  s.t.  per-row a.x {<=,=,>=} rhs, lo <= x <= hi.
// Bounded-variable revised primal simplex; sparse LU basis with eta updates,
// Dantzig pricing, Bland fallback after 10(m+n) degenerate pivots.
class LpProblem {
public:
    int add_column(double lo, double hi, double cost);
    void add_row(const std::vector<std::pair<int, double>>& terms, Sense sense, double rhs);

    LpOutcome solve(const LpOptions& opt = {}) const;

    int n_cols() const { return static_cast<int>(col_lo_.size()); }
    int n_rows() const { return static_cast<int>(rhs_.size()); }

    // structural part of a Model (objective constant NOT included)
    static LpProblem from_model(const Model& m);

    std::vector<double> col_lo_, col_hi_, cost_;
    std::vector<std::vector<std::pair<int, double>>> rows_;
    std::vector<Sense> sense_;
    std::vector<double> rhs_;
};

}  // namespace ucb
