#pragma once

#include <array>
#include <string>
#include <vector>

#include "ucb/scaling.hpp"

// Three-period window inequalities over the normalized coordinates
//   x = (p~_{t-1}, p~_t, p~_{t+1}, u_{t-1}, u_t, u_{t+1}, s_t, s_{t+1}, d_t, d_{t+1}, J3),
// each encoded as a.x <= rhs. The same generators drive the double-precision
// model builder and the exact-rational polytope checks, so the numeric type is
// a template parameter.

namespace ucb {

enum WCoord : int {
    WPprev = 0,
    WPt,
    WPnext,
    WUprev,
    WUt,
    WUnext,
    WSt,
    WSnext,
    WDt,
    WDnext,
    WJ3,
    WDim
};

template <class N>
struct WParams {
    N start{}, shut{}, up{}, down{};
    N csu{}, csd{}, c2u{}, c2d{};  // composite coefficients (possibly min'ed with 1)
    N pmin_ratio{};                // p_min/span, used only by the scaled (16)/(17) forms
    bool j1 = false;
    bool off2 = false;

    N q_up() const { return pos(up - shut) - pos(start - shut); }
    N q_down() const { return pos(down - start) - pos(shut - start); }
    static N pos(const N& v) { return v > N(0) ? v : N(0); }
    static N min2(const N& a, const N& b) { return a < b ? a : b; }
    static N max2(const N& a, const N& b) { return a < b ? b : a; }
};

inline WParams<double> window_params(const ScaledUnit& s) {
    WParams<double> p;
    p.start = s.start;
    p.shut = s.shut;
    p.up = s.up;
    p.down = s.down;
    p.csu = s.comp_start_up;
    p.csd = s.comp_shut_down;
    p.c2u = s.comp_two_up;
    p.c2d = s.comp_two_down;
    p.pmin_ratio = s.p_min / s.span;
    p.j1 = s.j1;
    p.off2 = s.off2;
    return p;
}

template <class N>
struct WIneq {
    std::array<N, WDim> a{};
    N rhs{};
    std::string tag;

    N lhs_minus_rhs(const std::array<N, WDim>& x) const {
        N v = -rhs;
        for (int k = 0; k < WDim; ++k)
            if (!(a[static_cast<size_t>(k)] == N(0)))
                v += a[static_cast<size_t>(k)] * x[static_cast<size_t>(k)];
        return v;
    }
};

namespace wq {

template <class N>
WIneq<N> make(std::string tag, std::initializer_list<std::pair<int, N>> terms, N rhs = N(0)) {
    WIneq<N> q;
    q.tag = std::move(tag);
    q.rhs = rhs;
    for (const auto& [k, v] : terms) q.a[static_cast<size_t>(k)] += v;
    return q;
}

// ---- high-dimension block -------------------------------------------------

template <class N>
WIneq<N> eq46(const WParams<N>& p) {
    return make<N>("eq46", {{WPt, N(1)},
                            {WUt, N(-1)},
                            {WSt, N(1) - p.start},
                            {WDnext, N(1) - p.shut},
                            {WJ3, -(N(1) - p.max2(p.start, p.shut))}});
}
template <class N>
WIneq<N> eq47(const WParams<N>&) {
    return make<N>("eq47", {{WSt, N(1)}, {WDnext, N(1)}, {WUt, N(-1)}, {WJ3, N(-1)}});
}
template <class N>
WIneq<N> eq48(const WParams<N>&) {
    return make<N>("eq48", {{WJ3, N(1)}, {WSt, N(-1)}});
}
template <class N>
WIneq<N> eq49(const WParams<N>&) {
    return make<N>("eq49", {{WJ3, N(1)}, {WDnext, N(-1)}});
}
template <class N>
WIneq<N> eq50(const WParams<N>& p) {
    return make<N>("eq50", {{WPprev, N(1)},
                            {WUprev, N(-1)},
                            {WDt, N(1) - p.shut},
                            {WDnext, N(1) - p.csd},
                            {WJ3, -(N(1) - p.csd)}});
}
template <class N>
WIneq<N> eq51(const WParams<N>& p) {
    return make<N>("eq51", {{WPnext, N(1)},
                            {WUnext, N(-1)},
                            {WSt, N(1) - p.csu},
                            {WSnext, N(1) - p.start},
                            {WJ3, -(N(1) - p.csu)}});
}
template <class N>
WIneq<N> eq52(const WParams<N>& p) {
    return make<N>("eq52", {{WPprev, N(1)}, {WUprev, N(-1)}, {WDt, N(1) - p.shut}});
}
template <class N>
WIneq<N> eq53(const WParams<N>& p) {
    return make<N>("eq53", {{WPnext, N(1)}, {WUnext, N(-1)}, {WSnext, N(1) - p.start}});
}
template <class N>
WIneq<N> eq58(const WParams<N>& p) {
    return make<N>("eq58", {{WPt, N(1)},
                            {WPprev, N(-1)},
                            {WJ3, -p.q_up()},
                            {WUt, -p.up},
                            {WSt, -(p.start - p.up)},
                            {WDnext, p.pos(p.up - p.shut)}});
}
template <class N>
WIneq<N> eq59(const WParams<N>& p) {
    return make<N>("eq59", {{WPnext, N(1)},
                            {WPprev, N(-1)},
                            {WJ3, -(p.c2u - p.csu)},
                            {WUnext, -p.c2u},
                            {WSt, -(p.csu - p.c2u)},
                            {WSnext, -(p.start - p.c2u)}});
}
template <class N>
WIneq<N> eq60(const WParams<N>& p) {
    return make<N>("eq60",
                   {{WPnext, N(1)}, {WPt, N(-1)}, {WUnext, -p.up}, {WSnext, -(p.start - p.up)}});
}
template <class N>
WIneq<N> eq61(const WParams<N>& p) {
    return make<N>("eq61", {{WPt, N(1)},
                            {WPnext, N(-1)},
                            {WJ3, -p.q_down()},
                            {WUt, -p.down},
                            {WSt, p.pos(p.down - p.start)},
                            {WDnext, -(p.shut - p.down)}});
}
template <class N>
WIneq<N> eq62(const WParams<N>& p) {
    return make<N>("eq62", {{WPprev, N(1)},
                            {WPnext, N(-1)},
                            {WJ3, -(p.c2d - p.csd)},
                            {WUprev, -p.c2d},
                            {WDt, -(p.shut - p.c2d)},
                            {WDnext, -(p.csd - p.c2d)}});
}
template <class N>
WIneq<N> eq63(const WParams<N>& p) {
    return make<N>("eq63",
                   {{WPprev, N(1)}, {WPt, N(-1)}, {WUprev, -p.down}, {WDt, -(p.shut - p.down)}});
}

// ---- projected block (appendix forms, no J3) --------------------------------

template <class N>
WIneq<N> drop_j3(WIneq<N> q, std::string tag) {
    q.a[WJ3] = N(0);
    q.tag = std::move(tag);
    return q;
}

template <class N>
WIneq<N> eq65(const WParams<N>& p) {
    return drop_j3(eq58(p), "eq65");
}
template <class N>
WIneq<N> eq66(const WParams<N>& p) {
    return make<N>("eq66", {{WPt, N(1)},
                            {WPprev, N(-1)},
                            {WSt, -(p.min2(p.start, p.shut) - p.min2(p.up, p.shut))},
                            {WUt, -p.up},
                            {WDnext, p.pos(p.up - p.shut)}});
}
template <class N>
WIneq<N> eq67(const WParams<N>& p) {
    return make<N>("eq67", {{WPt, N(1)},
                            {WPprev, N(-1)},
                            {WSt, -(p.start - p.up)},
                            {WUt, -p.up},
                            {WDnext, p.pos(p.start - p.shut)}});
}
template <class N>
WIneq<N> eq68(const WParams<N>& p) {
    return make<N>("eq68", {{WPt, N(1)},
                            {WPprev, N(-1)},
                            {WDnext, p.pos(p.start - p.shut)},
                            {WUt, -(p.min2(p.up, p.shut) + p.pos(p.start - p.shut))},
                            {WSt, -(p.min2(p.start, p.shut) - p.min2(p.up, p.shut))}});
}
template <class N>
WIneq<N> eq73(const WParams<N>& p) {
    return drop_j3(eq50(p), "eq73");
}
template <class N>
WIneq<N> eq74_2(const WParams<N>& p) {
    return make<N>("eq74.2", {{WPprev, N(1)},
                              {WUprev, N(-1)},
                              {WSt, -(N(1) - p.csd)},
                              {WDt, N(1) - p.shut},
                              {WDnext, N(1) - p.csd}});
}
template <class N>
WIneq<N> eq75(const WParams<N>& p) {
    return drop_j3(eq51(p), "eq75");
}
template <class N>
WIneq<N> eq76_2(const WParams<N>& p) {
    return make<N>("eq76.2", {{WPnext, N(1)},
                              {WUnext, N(-1)},
                              {WDnext, -(N(1) - p.csu)},
                              {WSt, N(1) - p.csu},
                              {WSnext, N(1) - p.start}});
}
template <class N>
WIneq<N> eq77(const WParams<N>& p) {
    return drop_j3(eq59(p), "eq77");
}
template <class N>
WIneq<N> eq78_1(const WParams<N>& p) {
    return make<N>("eq78.1",
                   {{WPnext, N(1)}, {WPprev, N(-1)}, {WUnext, -p.c2u}, {WSnext, -(p.start - p.c2u)}});
}
template <class N>
WIneq<N> eq78_2(const WParams<N>& p) {
    return make<N>("eq78.2", {{WPnext, N(1)},
                              {WPprev, N(-1)},
                              {WDnext, -(p.c2u - p.csu)},
                              {WUnext, -p.c2u},
                              {WSt, -(p.csu - p.c2u)},
                              {WSnext, -(p.start - p.c2u)}});
}
template <class N>
WIneq<N> eq79_1(const WParams<N>& p) {
    return make<N>("eq79.1", {{WPnext, N(1)},
                              {WPprev, N(-1)},
                              {WDnext, -(p.c2u - p.csu)},
                              {WUt, p.c2u - p.csu},
                              {WUnext, -p.c2u},
                              {WSnext, -(p.start - p.c2u)}});
}
template <class N>
WIneq<N> eq79_2(const WParams<N>& p) {
    return drop_j3(eq59(p), "eq79.2");
}
template <class N>
WIneq<N> eq80(const WParams<N>& p) {
    return drop_j3(eq61(p), "eq80");
}
template <class N>
WIneq<N> eq81_1(const WParams<N>& p) {
    return make<N>("eq81.1", {{WPt, N(1)},
                              {WPnext, N(-1)},
                              {WSt, p.pos(p.shut - p.start)},
                              {WUt, -p.down},
                              {WDnext, -(p.shut - p.down)}});
}
template <class N>
WIneq<N> eq81_2(const WParams<N>& p) {
    return make<N>("eq81.2",
                   {{WPt, N(1)},
                    {WPnext, N(-1)},
                    {WUt, -p.down},
                    {WSt, p.pos(p.down - p.start)},
                    {WDnext, -(p.min2(p.shut, p.start) - p.min2(p.down, p.start))}});
}
template <class N>
WIneq<N> eq82_1(const WParams<N>& p) {
    return make<N>("eq82.1",
                   {{WPt, N(1)},
                    {WPnext, N(-1)},
                    {WUt, -(p.min2(p.down, p.start) + p.pos(p.shut - p.start))},
                    {WSt, p.pos(p.shut - p.start)},
                    {WDnext, -(p.min2(p.shut, p.start) - p.min2(p.down, p.start))}});
}
template <class N>
WIneq<N> eq82_2(const WParams<N>& p) {
    return drop_j3(eq61(p), "eq82.2");
}
template <class N>
WIneq<N> eq83(const WParams<N>& p) {
    return drop_j3(eq62(p), "eq83");
}
template <class N>
WIneq<N> eq84_1(const WParams<N>& p) {
    return make<N>("eq84.1", {{WPprev, N(1)},
                              {WPnext, N(-1)},
                              {WUprev, -p.c2d},
                              {WDt, -(p.shut - p.c2d)},
                              {WSt, -(p.c2d - p.csd)},
                              {WDnext, -(p.csd - p.c2d)}});
}
template <class N>
WIneq<N> eq84_2(const WParams<N>& p) {
    return make<N>("eq84.2",
                   {{WPprev, N(1)}, {WPnext, N(-1)}, {WUprev, -p.c2d}, {WDt, -(p.shut - p.c2d)}});
}
template <class N>
WIneq<N> eq85_1(const WParams<N>& p) {
    return make<N>("eq85.1", {{WPprev, N(1)},
                              {WPnext, N(-1)},
                              {WSt, -(p.c2d - p.csd)},
                              {WUt, p.c2d - p.csd},
                              {WUprev, -p.c2d},
                              {WDt, -(p.shut - p.c2d)}});
}
template <class N>
WIneq<N> eq85_2(const WParams<N>& p) {
    return drop_j3(eq62(p), "eq85.2");
}
template <class N>
WIneq<N> eq86(const WParams<N>& p) {
    return drop_j3(eq46(p), "eq86");
}
template <class N>
WIneq<N> eq87_1(const WParams<N>& p) {
    return make<N>("eq87.1", {{WPt, N(1)},
                              {WUt, N(-1)},
                              {WSt, p.pos(p.shut - p.start)},
                              {WDnext, N(1) - p.shut}});
}
template <class N>
WIneq<N> eq87_2(const WParams<N>& p) {
    return make<N>("eq87.2", {{WPt, N(1)},
                              {WUt, N(-1)},
                              {WSt, N(1) - p.start},
                              {WDnext, p.pos(p.start - p.shut)}});
}

// ---- scaled images of the benchmark constraints (lab-side comparisons) ------
// The p_min terms of (16)-(22) mostly cancel under the power transform; the two
// that survive carry the pmin_ratio parameter.

template <class N>
WIneq<N> eq9s(const WParams<N>&) {
    return make<N>("eq9s", {{WPt, N(1)}, {WUt, N(-1)}});
}
template <class N>
WIneq<N> eq13s(const WParams<N>& p) {
    return make<N>("eq13s", {{WPt, N(1)}, {WUt, N(-1)}, {WDnext, N(1) - p.shut}});
}
template <class N>
WIneq<N> eq12s(const WParams<N>& p) {
    return make<N>("eq12s", {{WPt, N(1)}, {WUt, N(-1)}, {WSt, N(1) - p.start}});
}
template <class N>
WIneq<N> eq14s(const WParams<N>& p) {
    auto q = eq87_2(p);
    q.tag = "eq14s";
    return q;
}
template <class N>
WIneq<N> eq15s(const WParams<N>& p) {
    auto q = eq87_1(p);
    q.tag = "eq15s";
    return q;
}
template <class N>
WIneq<N> eq11s(const WParams<N>& p) {
    auto q = drop_j3(eq46(p), "eq11s");
    return q;
}
template <class N>
WIneq<N> eq16s(const WParams<N>& p) {
    return make<N>("eq16s", {{WPt, N(1)},
                             {WPprev, N(-1)},
                             {WUprev, -p.up},
                             {WSt, -p.start},
                             {WDt, -p.pmin_ratio}});
}
template <class N>
WIneq<N> eq17s(const WParams<N>& p) {
    return make<N>("eq17s", {{WPprev, N(1)},
                             {WPt, N(-1)},
                             {WUt, -p.down},
                             {WDt, -p.shut},
                             {WSt, -p.pmin_ratio}});
}
template <class N>
WIneq<N> eq18s(const WParams<N>& p) {
    return make<N>("eq18s", {{WPt, N(1)}, {WPprev, N(-1)}, {WUt, -p.up}, {WSt, -(p.start - p.up)}});
}
template <class N>
WIneq<N> eq19s(const WParams<N>& p) {
    auto q = eq63(p);
    q.tag = "eq19s";
    return q;
}
template <class N>
WIneq<N> eq20s(const WParams<N>& p) {
    return make<N>("eq20s", {{WPt, N(1)},
                             {WPprev, N(-1)},
                             {WUt, -p.up},
                             {WSt, -(p.start - p.up)},
                             {WDnext, p.up - p.shut}});
}
template <class N>
WIneq<N> eq21s(const WParams<N>& p) {
    return make<N>("eq21s", {{WPnext, N(1)},
                             {WPprev, N(-1)},
                             {WUnext, N(-2) * p.up},
                             {WSt, -(p.start - p.up)},
                             {WSnext, -(p.start - N(2) * p.up)}});
}
// (19)/(17) moved one period forward so they bound the same t -> t+1 ramp as (61)
template <class N>
WIneq<N> eq19s_next(const WParams<N>& p) {
    return make<N>("eq19s+", {{WPt, N(1)}, {WPnext, N(-1)}, {WUt, -p.down}, {WDnext, -(p.shut - p.down)}});
}
template <class N>
WIneq<N> eq17s_next(const WParams<N>& p) {
    return make<N>("eq17s+", {{WPt, N(1)},
                              {WPnext, N(-1)},
                              {WUnext, -p.down},
                              {WDnext, -p.shut},
                              {WSnext, -p.pmin_ratio}});
}
template <class N>
WIneq<N> eq22s(const WParams<N>& p) {
    return make<N>("eq22s", {{WPt, N(1)},
                             {WPnext, N(-1)},
                             {WUnext, -p.down},
                             {WDnext, -p.shut},
                             {WSt, p.down - p.start},
                             {WSnext, p.down}});
}

}  // namespace wq

// Table I state rows: all derived binaries for the 8 on/off combinations of
// (u_{t-1}, u_t, u_{t+1}).
struct ThreePeriodState {
    int u_prev, u_t, u_next;
    int o_t, f_t, s_t, d_t;
    int o_next, f_next, s_next, d_next;
    std::array<int, 8> j;  // J^1..J^8 indicators

    std::array<int, WDim - 3> binary_coords() const {
        // order matches WCoord starting at WUprev; J3 = j[2]
        return {u_prev, u_t, u_next, s_t, s_next, d_t, d_next, j[2]};
    }
};

inline std::array<ThreePeriodState, 8> enumerate_states() {
    std::array<ThreePeriodState, 8> out{};
    for (int code = 0; code < 8; ++code) {
        int up = (code >> 2) & 1, ut = (code >> 1) & 1, un = code & 1;
        ThreePeriodState s{};
        s.u_prev = up;
        s.u_t = ut;
        s.u_next = un;
        s.o_t = up & ut;
        s.f_t = (1 - up) & (1 - ut);
        s.s_t = ut & (1 - up);
        s.d_t = up & (1 - ut);
        s.o_next = ut & un;
        s.f_next = (1 - ut) & (1 - un);
        s.s_next = un & (1 - ut);
        s.d_next = ut & (1 - un);
        s.j[static_cast<size_t>(code)] = 1;  // rows of Table I are in binary-code order
        out[static_cast<size_t>(code)] = s;
    }
    return out;
}

// Table I upper-bound columns for (p~_{t-1}, p~_t, p~_{t+1}); whole_ramping
// selects the left-of-semicolon values, otherwise startup/shutdown-only.
template <class N>
std::array<N, 3> ub_power(const ThreePeriodState& st, const WParams<N>& p, bool whole_ramping) {
    using WP = WParams<N>;
    int code = st.u_prev * 4 + st.u_t * 2 + st.u_next;
    N z(0), one(1);
    std::array<N, 3> ub{z, z, z};
    switch (code) {
        case 0b000: break;
        case 0b001: ub = {z, z, p.start}; break;
        case 0b010: ub = {z, WP::min2(p.start, p.shut), z}; break;
        case 0b011: ub = {z, p.start, whole_ramping ? p.csu : one}; break;
        case 0b100: ub = {p.shut, z, z}; break;
        case 0b101: ub = {p.shut, z, p.start}; break;
        case 0b110: ub = {whole_ramping ? p.csd : one, p.shut, z}; break;
        case 0b111: ub = {one, one, one}; break;
    }
    return ub;
}

// Table III: upper bounds of the six ordered power differences, in the order
// (p_t - p_prev, p_t - p_next, p_next - p_t, p_prev - p_t, p_next - p_prev, p_prev - p_next).
template <class N>
std::array<N, 6> ub_diffs(const ThreePeriodState& st, const WParams<N>& p) {
    using WP = WParams<N>;
    int code = st.u_prev * 4 + st.u_t * 2 + st.u_next;
    N z(0);
    switch (code) {
        case 0b000: return {z, z, z, z, z, z};
        case 0b001: return {z, z, p.start, z, p.start, z};
        case 0b010: {
            N m = WP::min2(p.start, p.shut);
            return {m, m, z, z, z, z};
        }
        case 0b011: return {p.start, WP::min2(p.start, p.down), p.up, z, p.csu, z};
        case 0b100: return {z, z, z, p.shut, z, p.shut};
        case 0b101: return {z, z, p.start, p.shut, p.start, p.shut};
        case 0b110: return {WP::min2(p.up, p.shut), p.shut, z, p.down, z, p.csd};
        default: return {p.up, p.down, p.up, p.down, p.c2u, p.c2d};
    }
}

}  // namespace ucb
