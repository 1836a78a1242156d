#pragma once

// Test-only brute-force oracle: enumerates all feasible commitment schedules
// directly from the physical rules (minimum up/down with initial state,
// startup/shutdown capability, ramps, balance, reserve, hot/cold startup
// pricing) and prices each schedule with an exact rational LP over the
// tangent-envelope cost. Entirely independent of the formulation builders and
// the floating-point solver.

#include <vector>

#include "ucb/instance.hpp"
#include "ucb/rational.hpp"

namespace ucb::oracle {

struct Result {
    bool feasible = false;
    Rat objective;                           // exact optimal envelope cost
    std::vector<std::vector<int>> commit;    // best schedule, commit[i][t-1]
    bool unique = true;                      // no other schedule ties the optimum
    long n_schedules = 0;                    // feasible joint schedules priced
};

// envelope segments L >= 1 (the piecewise-linear cost with tangents at
// p_min + l*(p_max-p_min)/L); returns the exact optimum over all schedules
Result best_schedule(const Instance& inst, int L);

// feasible commitment sequences for one unit (initial windows + min up/down)
std::vector<std::vector<int>> unit_patterns(const Unit& u, int T);

// exact envelope cost of one fixed schedule; returns false if the dispatch is
// infeasible
bool schedule_cost(const Instance& inst, int L, const std::vector<std::vector<int>>& commit,
                   Rat& cost_out);

}  // namespace ucb::oracle
