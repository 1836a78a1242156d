#pragma once

#include <stdexcept>

#include "ucb/instance.hpp"

namespace ucb {

// Per-unit normalized parameters. Power is rewritten as
// P = p~ * span + u * p_min with p~ in [0,1], and the quadratic cost
// becomes a*u + b*p~ + g*p~^2.
struct ScaledUnit {
    double p_min = 0.0, p_max = 0.0, span = 0.0;
    double a = 0.0, b = 0.0, g = 0.0;
    double start = 0.0, shut = 0.0;  // (p_start - p_min)/span, (p_shut - p_min)/span
    double up = 0.0, down = 0.0;     // p_up/span, p_down/span
    bool j1 = false;                 // t_on == 1
    bool off2 = false;               // t_off >= 2
    bool in_l = false;               // p_up > p_shut - p_min
    bool in_lbar = false;            // p_down > p_start - p_min
    // composite coefficients of the three-period inequalities;
    // raw_* are the plain sums, comp_* the values actually emitted
    double raw_start_up = 0.0, raw_shut_down = 0.0, raw_two_up = 0.0, raw_two_down = 0.0;
    double comp_start_up = 0.0, comp_shut_down = 0.0, comp_two_up = 0.0, comp_two_down = 0.0;
    bool clamped = false;
};

inline ScaledUnit scale_unit(const Unit& u) {
    double span = u.p_max - u.p_min;
    if (!(span > 0.0)) throw std::invalid_argument("scale_unit: p_max - p_min must be > 0");
    ScaledUnit s;
    s.p_min = u.p_min;
    s.p_max = u.p_max;
    s.span = span;
    s.a = u.alpha + u.beta * u.p_min + u.gamma * u.p_min * u.p_min;
    s.b = span * (u.beta + 2.0 * u.gamma * u.p_min);
    s.g = u.gamma * span * span;
    s.start = (u.p_start - u.p_min) / span;
    s.shut = (u.p_shut - u.p_min) / span;
    s.up = u.p_up / span;
    s.down = u.p_down / span;
    s.j1 = u.t_on == 1;
    s.off2 = u.t_off >= 2;
    s.in_l = u.p_up > u.p_shut - u.p_min;
    s.in_lbar = u.p_down > u.p_start - u.p_min;
    s.raw_start_up = s.comp_start_up = s.start + s.up;
    s.raw_shut_down = s.comp_shut_down = s.shut + s.down;
    s.raw_two_up = s.comp_two_up = 2.0 * s.up;
    s.raw_two_down = s.comp_two_down = 2.0 * s.down;
    return s;
}

// min{.,1} replacement of the composite coefficients (the paper's fallback when
// the assumed regime p~shut+p~down < 1 etc. does not hold)
inline ScaledUnit clamp_for_three_periods(ScaledUnit s) {
    s.comp_start_up = std::min(s.raw_start_up, 1.0);
    s.comp_shut_down = std::min(s.raw_shut_down, 1.0);
    s.comp_two_up = std::min(s.raw_two_up, 1.0);
    s.comp_two_down = std::min(s.raw_two_down, 1.0);
    s.clamped = true;
    return s;
}

inline double unscale_power(const ScaledUnit& s, double p_tilde, int u) {
    if (u == 0) {
        if (p_tilde != 0.0)
            throw std::invalid_argument("unscale_power: p~ must be 0 when the unit is off");
        return 0.0;
    }
    return p_tilde * s.span + s.p_min;
}

}  // namespace ucb
