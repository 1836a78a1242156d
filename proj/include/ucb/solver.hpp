#pragma once

#include <limits>
#include <string>
#include <vector>

#include "ucb/model.hpp"
#include "ucb/simplex.hpp"

namespace ucb {

enum class SolveStatus { Optimal, Infeasible, Unbounded, Limit };

std::string status_name(SolveStatus s);

struct SolveResult {
    SolveStatus status = SolveStatus::Limit;
    double objective = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> values;  // per model variable
    double bound = -std::numeric_limits<double>::infinity();
    double wall_time = 0.0;
    long iterations = 0;
    long nodes = 0;
    std::string method;
    std::string note;
};

struct MipLimits {
    double time_limit = std::numeric_limits<double>::infinity();  // seconds; inf = off
    long node_limit = 1000000;
};

// Continuous solve. The model must carry no binaries (call relax() first); a
// convex diagonal quadratic objective is handled by an outer tangent-refinement
// loop around the simplex (method records it).
SolveResult solve_lp(const Model& model);

// Best-bound branch and bound with most-fractional branching. gap_tol follows
// (incumbent - bound)/max(|incumbent|, eps).
SolveResult solve_mip(const Model& model, double gap_tol, const MipLimits& lim = {});

// (I_u, I_all): fractions of u-expressions / originally-binary variables whose
// relaxation value is within 1e-6 of {0,1}
std::pair<double, double> integer_proportions(const SolveResult& r, const Model& original);

std::string write_solution(const SolveResult& r, const Model& m);
SolveResult parse_solution(const std::string& text, const Model& m);

// file-based adapter: writes MPS, runs `command` ({mps}/{sol} placeholders or
// appended arguments), parses the documented solution format back
SolveResult solve_external(const Model& m, const std::string& command, const std::string& dir);

constexpr double kIntegralityTol = 1e-6;

}  // namespace ucb
