#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ucb {

// One thermal unit. t0 is signed: periods online (+) / offline (-) before period 1.
struct Unit {
    std::string id;
    double alpha = 0.0, beta = 0.0, gamma = 0.0;  // quadratic production cost coefficients
    double c_hot = 0.0, c_cold = 0.0;             // startup costs
    int t_on = 1, t_off = 1;                      // minimum up/down times (periods)
    int t_cold = 0;                               // cold startup time (periods)
    double p_max = 0.0, p_min = 0.0;
    double p_up = 0.0, p_down = 0.0;              // operating ramp limits (MW/period)
    double p_start = 0.0, p_shut = 0.0;           // startup/shutdown ramp limits (MW)
    int u0 = 1;
    int t0 = 1;
    double p0 = -1.0;  // initial power; negative means "default to p_min*u0"

    double initial_power() const { return p0 >= 0.0 ? p0 : (u0 ? p_min : 0.0); }
};

struct SystemSeries {
    std::vector<double> demand;
    std::vector<double> reserve;
    int length() const { return static_cast<int>(demand.size()); }
};

struct Instance {
    std::vector<Unit> units;
    SystemSeries series;
    int n_units() const { return static_cast<int>(units.size()); }
    int periods() const { return series.length(); }
};

struct InitialWindows {
    int up = 0;    // U_i: periods the unit must stay on from t=1
    int down = 0;  // L_i: periods it must stay off
};

// U = [min(T, u0*(t_on - t0))]^+ and L = [min(T, (1-u0)*(t_off + t0))]^+
InitialWindows derive_initial_windows(const Unit& u, int T);

struct ValidationReport {
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
    bool ok() const { return errors.empty(); }
};

ValidationReport validate(const Instance& inst);

// Deterministic synthetic instance; profile is "sine" or "flat".
Instance generate(std::uint64_t seed, int n_units, int T, const std::string& profile);

std::string serialize(const Instance& inst);
Instance parse_instance(const std::string& text);
Instance load_instance(const std::string& path);  // parse + validate (throws on errors)
void save_instance(const Instance& inst, const std::string& path);

}  // namespace ucb
