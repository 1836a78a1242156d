#include "ucb/formulations.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ucb {

std::string kind_tag(FormKind k) {
    switch (k) {
        case FormKind::TwoPCo: return "2P-Co";
        case FormKind::TwoPTi: return "2P-Ti";
        case FormKind::ThreePTi: return "3P-Ti";
        case FormKind::ThreePTiST: return "3P-Ti-ST";
        case FormKind::ThreePHD: return "3P-HD";
        case FormKind::ThreePHDPr: return "3P-HD-Pr";
    }
    return "?";
}

FormKind parse_kind(const std::string& tag) {
    for (FormKind k : kAllKinds)
        if (kind_tag(k) == tag) return k;
    throw std::invalid_argument("unknown formulation tag: " + tag);
}

XiWindow xi_window(const Unit& u, int t) {
    XiWindow w;
    w.lo = std::max(t - u.t_off - u.t_cold, 1);
    w.hi = t - 1;
    int gap = t - u.t_off - u.t_cold;
    if (gap <= 0 && std::max(0, -u.t0) < std::abs(gap - 1) + 1) w.f_init = 1;
    return w;
}

std::vector<ScaledUnit> scale_all(const Instance& inst) {
    std::vector<ScaledUnit> sus;
    sus.reserve(inst.units.size());
    for (const auto& u : inst.units) sus.push_back(clamp_for_three_periods(scale_unit(u)));
    return sus;
}

FormulationBuilder::FormulationBuilder(const Instance& inst, bool scaled_power, LogicVariant logic,
                                       StartupVariant startup, bool with_j3)
    : inst_(inst),
      sus_(scale_all(inst)),
      scaled_power_(scaled_power),
      logic_(logic),
      startup_(startup),
      with_j3_(with_j3),
      T_(inst.periods()) {
    int n = inst.n_units();
    auto grid = [&] { return std::vector<std::vector<int>>(static_cast<size_t>(n)); };
    u_ = grid();
    o_ = grid();
    s_ = grid();
    d_ = grid();
    p_ = grid();
    sc_ = grid();
    j3_ = grid();
    model_.u_exprs.resize(static_cast<size_t>(n) * static_cast<size_t>(T_));
    for (int i = 0; i < n; ++i) declare_unit_vars(i);
}

namespace {
std::string vname(const char* kind, int i, int t) {
    return std::string(kind) + "_" + std::to_string(i) + "_" + std::to_string(t);
}
}  // namespace

void FormulationBuilder::declare_unit_vars(int i) {
    const Unit& un = inst_.units[static_cast<size_t>(i)];
    auto& m = model_;
    auto col = [&](std::vector<std::vector<int>>& g) -> std::vector<int>& {
        g[static_cast<size_t>(i)].assign(static_cast<size_t>(T_) + 1, -1);
        return g[static_cast<size_t>(i)];
    };
    auto& uu = col(u_);
    auto& oo = col(o_);
    auto& ss = col(s_);
    auto& dd = col(d_);
    auto& pp = col(p_);
    auto& cc = col(sc_);
    auto& jj = col(j3_);
    for (int t = 1; t <= T_; ++t) {
        if (logic_ == LogicVariant::ThreeBin)
            uu[static_cast<size_t>(t)] = m.add_variable(vname("u", i, t), VarKind::Binary, 0, 1).index;
        else
            oo[static_cast<size_t>(t)] = m.add_variable(vname("o", i, t), VarKind::Binary, 0, 1).index;
    }
    for (int t = 1; t <= T_; ++t)
        ss[static_cast<size_t>(t)] = m.add_variable(vname("s", i, t), VarKind::Binary, 0, 1).index;
    for (int t = 1; t <= T_; ++t)
        dd[static_cast<size_t>(t)] = m.add_variable(vname("d", i, t), VarKind::Binary, 0, 1).index;
    for (int t = 1; t <= T_; ++t) {
        if (scaled_power_)
            pp[static_cast<size_t>(t)] = m.add_variable(vname("p", i, t), VarKind::Continuous, 0, 1).index;
        else
            pp[static_cast<size_t>(t)] =
                m.add_variable(vname("P", i, t), VarKind::Continuous, 0, un.p_max).index;
    }
    const double inf = std::numeric_limits<double>::infinity();
    for (int t = 1; t <= T_; ++t) {
        const char* nm = startup_ == StartupVariant::Classic ? "S" : "St";
        cc[static_cast<size_t>(t)] = m.add_variable(vname(nm, i, t), VarKind::Continuous, 0, inf).index;
    }
    if (with_j3_ && sus_[static_cast<size_t>(i)].j1) {
        for (int t = 2; t <= T_ - 1; ++t)
            jj[static_cast<size_t>(t)] = m.add_variable(vname("J3", i, t), VarKind::Binary, 0, 1).index;
    }
    for (int t = 1; t <= T_; ++t) {
        auto& expr = m.u_exprs[static_cast<size_t>(i) * static_cast<size_t>(T_) + static_cast<size_t>(t - 1)];
        if (logic_ == LogicVariant::ThreeBin) {
            expr = {{uu[static_cast<size_t>(t)], 1.0}};
        } else {
            expr = {{oo[static_cast<size_t>(t)], 1.0}, {ss[static_cast<size_t>(t)], 1.0}};
        }
    }
}

int FormulationBuilder::var_u(int i, int t) const { return u_[static_cast<size_t>(i)][static_cast<size_t>(t)]; }
int FormulationBuilder::var_o(int i, int t) const { return o_[static_cast<size_t>(i)][static_cast<size_t>(t)]; }
int FormulationBuilder::var_s(int i, int t) const { return s_[static_cast<size_t>(i)][static_cast<size_t>(t)]; }
int FormulationBuilder::var_d(int i, int t) const { return d_[static_cast<size_t>(i)][static_cast<size_t>(t)]; }
int FormulationBuilder::var_p(int i, int t) const { return p_[static_cast<size_t>(i)][static_cast<size_t>(t)]; }
int FormulationBuilder::var_sc(int i, int t) const { return sc_[static_cast<size_t>(i)][static_cast<size_t>(t)]; }
int FormulationBuilder::var_j3(int i, int t) const {
    return t >= 1 && t <= T_ ? j3_[static_cast<size_t>(i)][static_cast<size_t>(t)] : -1;
}

void FormulationBuilder::add_u(std::vector<std::pair<int, double>>& terms, int i, int t,
                               double coef) const {
    if (coef == 0.0) return;
    if (logic_ == LogicVariant::ThreeBin) {
        terms.emplace_back(var_u(i, t), coef);
    } else {
        terms.emplace_back(var_o(i, t), coef);
        terms.emplace_back(var_s(i, t), coef);
    }
}

// (4): s_t - d_t = u_t - u_{t-1}, with the t=1 copy against the constant u0
void FormulationBuilder::gen_logic(int i) {
    const Unit& un = inst_.units[static_cast<size_t>(i)];
    for (int t = 1; t <= T_; ++t) {
        std::vector<std::pair<int, double>> terms;
        terms.emplace_back(var_s(i, t), 1.0);
        terms.emplace_back(var_d(i, t), -1.0);
        add_u(terms, i, t, -1.0);
        double rhs = 0.0;
        if (t >= 2)
            add_u(terms, i, t - 1, 1.0);
        else
            rhs = -un.u0;
        model_.add_constraint(std::move(terms), Sense::EQ, rhs, "eq4");
    }
}

// (6), (7) over the post-window periods plus the (32) fixings
void FormulationBuilder::gen_min_up_down(int i) {
    const Unit& un = inst_.units[static_cast<size_t>(i)];
    InitialWindows w = derive_initial_windows(un, T_);
    for (int t = 1; t <= w.up + w.down; ++t) {
        std::vector<std::pair<int, double>> terms;
        add_u(terms, i, t, 1.0);
        model_.add_constraint(std::move(terms), Sense::EQ, un.u0, "eq32");
    }
    for (int t = w.up + 1; t <= T_; ++t) {
        std::vector<std::pair<int, double>> terms;
        for (int sigma = std::max(t - un.t_on, 0) + 1; sigma <= t; ++sigma)
            terms.emplace_back(var_s(i, sigma), 1.0);
        add_u(terms, i, t, -1.0);
        model_.add_constraint(std::move(terms), Sense::LE, 0.0, "eq6");
    }
    for (int t = w.down + 1; t <= T_; ++t) {
        std::vector<std::pair<int, double>> terms;
        for (int sigma = std::max(t - un.t_off, 0) + 1; sigma <= t; ++sigma)
            terms.emplace_back(var_d(i, sigma), 1.0);
        add_u(terms, i, t, 1.0);
        model_.add_constraint(std::move(terms), Sense::LE, 1.0, "eq7");
    }
}

void FormulationBuilder::gen_generation_limits(int i, GenLimitTier tier) {
    const Unit& un = inst_.units[static_cast<size_t>(i)];
    const ScaledUnit& su = sus_[static_cast<size_t>(i)];
    auto le = [&](std::vector<std::pair<int, double>> t, double rhs, const char* tag) {
        model_.add_constraint(std::move(t), Sense::LE, rhs, tag);
    };
    auto eq8 = [&](int t) {
        std::vector<std::pair<int, double>> terms;
        terms.emplace_back(var_p(i, t), 1.0);
        add_u(terms, i, t, -un.p_min);
        model_.add_constraint(std::move(terms), Sense::GE, 0.0, "eq8");
    };
    auto eq9 = [&](int t) {
        std::vector<std::pair<int, double>> terms;
        terms.emplace_back(var_p(i, t), 1.0);
        add_u(terms, i, t, -un.p_max);
        le(std::move(terms), 0.0, "eq9");
    };
    for (int t = 1; t <= T_; ++t) eq8(t);
    switch (tier) {
        case GenLimitTier::Simple:
            for (int t = 1; t <= T_; ++t) eq9(t);
            break;
        case GenLimitTier::Shutdown:
            // (10) on 1..T-1, (9) closes the horizon
            for (int t = 1; t <= T_ - 1; ++t) {
                std::vector<std::pair<int, double>> terms;
                terms.emplace_back(var_p(i, t), 1.0);
                add_u(terms, i, t, -un.p_max);
                terms.emplace_back(var_d(i, t + 1), un.p_max - un.p_shut);
                le(std::move(terms), 0.0, "eq10");
            }
            eq9(T_);
            break;
        case GenLimitTier::Tight2:
            eq9(1);
            eq9(T_);
            for (int t = 2; t <= T_ - 1; ++t) {
                if (!su.j1) {
                    eq9(t);
                    continue;
                }
                std::vector<std::pair<int, double>> a;
                a.emplace_back(var_p(i, t), 1.0);
                add_u(a, i, t, -un.p_max);
                a.emplace_back(var_s(i, t), un.p_max - un.p_start);
                le(std::move(a), 0.0, "eq12");
                std::vector<std::pair<int, double>> b;
                b.emplace_back(var_p(i, t), 1.0);
                add_u(b, i, t, -un.p_max);
                b.emplace_back(var_d(i, t + 1), un.p_max - un.p_shut);
                le(std::move(b), 0.0, "eq13");
            }
            break;
        case GenLimitTier::Tight3:
            eq9(1);
            eq9(T_);
            for (int t = 2; t <= T_ - 1; ++t) {
                if (!su.j1) {
                    std::vector<std::pair<int, double>> a;
                    a.emplace_back(var_p(i, t), 1.0);
                    add_u(a, i, t, -un.p_max);
                    a.emplace_back(var_s(i, t), un.p_max - un.p_start);
                    a.emplace_back(var_d(i, t + 1), un.p_max - un.p_shut);
                    le(std::move(a), 0.0, "eq11");
                } else {
                    std::vector<std::pair<int, double>> a;
                    a.emplace_back(var_p(i, t), 1.0);
                    add_u(a, i, t, -un.p_max);
                    a.emplace_back(var_s(i, t), un.p_max - un.p_start);
                    a.emplace_back(var_d(i, t + 1), std::max(un.p_start - un.p_shut, 0.0));
                    le(std::move(a), 0.0, "eq14");
                    std::vector<std::pair<int, double>> b;
                    b.emplace_back(var_p(i, t), 1.0);
                    add_u(b, i, t, -un.p_max);
                    b.emplace_back(var_d(i, t + 1), un.p_max - un.p_shut);
                    b.emplace_back(var_s(i, t), std::max(un.p_shut - un.p_start, 0.0));
                    le(std::move(b), 0.0, "eq15");
                }
            }
            break;
    }
}

void FormulationBuilder::gen_ramping(int i, RampTier tier) {
    const Unit& un = inst_.units[static_cast<size_t>(i)];
    const ScaledUnit& su = sus_[static_cast<size_t>(i)];
    auto le = [&](std::vector<std::pair<int, double>> t, double rhs, const char* tag) {
        model_.add_constraint(std::move(t), Sense::LE, rhs, tag);
    };
    auto eq16 = [&](int t) {
        std::vector<std::pair<int, double>> a;
        a.emplace_back(var_p(i, t), 1.0);
        a.emplace_back(var_p(i, t - 1), -1.0);
        add_u(a, i, t - 1, -un.p_up);
        a.emplace_back(var_s(i, t), -un.p_start);
        le(std::move(a), 0.0, "eq16");
    };
    auto eq17 = [&](int t) {
        std::vector<std::pair<int, double>> a;
        a.emplace_back(var_p(i, t - 1), 1.0);
        a.emplace_back(var_p(i, t), -1.0);
        add_u(a, i, t, -un.p_down);
        a.emplace_back(var_d(i, t), -un.p_shut);
        le(std::move(a), 0.0, "eq17");
    };
    auto eq18 = [&](int t) {
        std::vector<std::pair<int, double>> a;
        a.emplace_back(var_p(i, t), 1.0);
        a.emplace_back(var_p(i, t - 1), -1.0);
        add_u(a, i, t, -(un.p_up + un.p_min));
        add_u(a, i, t - 1, un.p_min);
        a.emplace_back(var_s(i, t), -(un.p_start - un.p_up - un.p_min));
        le(std::move(a), 0.0, "eq18");
    };
    auto eq19 = [&](int t) {
        std::vector<std::pair<int, double>> a;
        a.emplace_back(var_p(i, t - 1), 1.0);
        a.emplace_back(var_p(i, t), -1.0);
        add_u(a, i, t - 1, -(un.p_down + un.p_min));
        add_u(a, i, t, un.p_min);
        a.emplace_back(var_d(i, t), -(un.p_shut - un.p_down - un.p_min));
        le(std::move(a), 0.0, "eq19");
    };
    switch (tier) {
        case RampTier::Basic:
            for (int t = 2; t <= T_; ++t) eq16(t);
            for (int t = 2; t <= T_; ++t) eq17(t);
            break;
        case RampTier::Strengthened:
            for (int t = 2; t <= T_; ++t) eq18(t);
            for (int t = 2; t <= T_; ++t) eq19(t);
            break;
        case RampTier::ThreePeriod: {
            bool up_tight = !su.j1 && su.in_l;      // J>=2 and L
            bool down_tight = !su.j1 && su.in_lbar;  // J>=2 and L_bar
            if (up_tight) {
                for (int t = 2; t <= T_ - 1; ++t) {
                    // (20)
                    std::vector<std::pair<int, double>> a;
                    a.emplace_back(var_p(i, t), 1.0);
                    a.emplace_back(var_p(i, t - 1), -1.0);
                    add_u(a, i, t, -un.p_up);
                    a.emplace_back(var_d(i, t), un.p_min);
                    a.emplace_back(var_d(i, t + 1), un.p_up - un.p_shut + un.p_min);
                    a.emplace_back(var_s(i, t), -(un.p_start - un.p_up));
                    le(std::move(a), 0.0, "eq20");
                }
                eq18(T_);
            } else {
                for (int t = 2; t <= T_; ++t) eq18(t);
            }
            if (down_tight) {
                for (int t = 2; t <= T_; ++t) {
                    // (22)
                    std::vector<std::pair<int, double>> a;
                    a.emplace_back(var_p(i, t - 1), 1.0);
                    a.emplace_back(var_p(i, t), -1.0);
                    add_u(a, i, t, -un.p_down);
                    a.emplace_back(var_d(i, t), -un.p_shut);
                    a.emplace_back(var_s(i, t - 1), un.p_down - un.p_start + un.p_min);
                    a.emplace_back(var_s(i, t), un.p_down + un.p_min);
                    le(std::move(a), 0.0, "eq22");
                }
                eq19(2);
            } else {
                for (int t = 2; t <= T_; ++t) eq19(t);
            }
            if (!su.j1 && su.off2 && su.in_l) {
                for (int t = 2; t <= T_ - 1; ++t) {
                    // (21)
                    std::vector<std::pair<int, double>> a;
                    a.emplace_back(var_p(i, t + 1), 1.0);
                    a.emplace_back(var_p(i, t - 1), -1.0);
                    add_u(a, i, t + 1, -2.0 * un.p_up);
                    a.emplace_back(var_d(i, t), un.p_min);
                    a.emplace_back(var_d(i, t + 1), un.p_min);
                    a.emplace_back(var_s(i, t), -(un.p_start - un.p_up));
                    a.emplace_back(var_s(i, t + 1), -(un.p_start - 2.0 * un.p_up));
                    le(std::move(a), 0.0, "eq21");
                }
            }
            break;
        }
    }
}

// classic: S_t >= C_hot*s_t and S_t >= C_cold*(s_t - xi); projected: the (26) floor
void FormulationBuilder::gen_startup_cost(int i) {
    const Unit& un = inst_.units[static_cast<size_t>(i)];
    for (int t = 1; t <= T_; ++t) {
        XiWindow w = xi_window(un, t);
        if (startup_ == StartupVariant::Classic) {
            model_.add_constraint({{var_sc(i, t), 1.0}, {var_s(i, t), -un.c_hot}}, Sense::GE, 0.0,
                                  "eq23");
            std::vector<std::pair<int, double>> a;
            a.emplace_back(var_sc(i, t), 1.0);
            a.emplace_back(var_s(i, t), -un.c_cold);
            for (int tau = w.lo; tau <= w.hi; ++tau) a.emplace_back(var_d(i, tau), un.c_cold);
            model_.add_constraint(std::move(a), Sense::GE, -un.c_cold * w.f_init, "eq24");
        } else {
            double delta = un.c_cold - un.c_hot;
            std::vector<std::pair<int, double>> a;
            a.emplace_back(var_sc(i, t), 1.0);
            a.emplace_back(var_s(i, t), -delta);
            for (int tau = w.lo; tau <= w.hi; ++tau) a.emplace_back(var_d(i, tau), delta);
            model_.add_constraint(std::move(a), Sense::GE, -delta * w.f_init, "eq26");
        }
    }
}

// power balance (2)/(38) and spinning reserve (3)
void FormulationBuilder::gen_system() {
    for (int t = 1; t <= T_; ++t) {
        std::vector<std::pair<int, double>> bal;
        for (int i = 0; i < inst_.n_units(); ++i) {
            if (scaled_power_) {
                bal.emplace_back(var_p(i, t), sus_[static_cast<size_t>(i)].span);
                add_u(bal, i, t, inst_.units[static_cast<size_t>(i)].p_min);
            } else {
                bal.emplace_back(var_p(i, t), 1.0);
            }
        }
        model_.add_constraint(std::move(bal), Sense::EQ, inst_.series.demand[static_cast<size_t>(t - 1)],
                              scaled_power_ ? "eq38" : "eq2");
    }
    for (int t = 1; t <= T_; ++t) {
        std::vector<std::pair<int, double>> res;
        for (int i = 0; i < inst_.n_units(); ++i)
            add_u(res, i, t, inst_.units[static_cast<size_t>(i)].p_max);
        model_.add_constraint(std::move(res), Sense::GE,
                              inst_.series.demand[static_cast<size_t>(t - 1)] +
                                  inst_.series.reserve[static_cast<size_t>(t - 1)],
                              "eq3");
    }
}

void FormulationBuilder::emit_window(int i, int t, const WIneq<double>& q) {
    // maps window coordinates onto the model variables at window position t
    std::vector<std::pair<int, double>> terms;
    auto put = [&](int coord, int var) {
        double c = q.a[static_cast<size_t>(coord)];
        if (c != 0.0 && var >= 0) terms.emplace_back(var, c);
    };
    put(WPprev, var_p(i, t - 1));
    put(WPt, var_p(i, t));
    put(WPnext, var_p(i, t + 1));
    add_u(terms, i, t - 1, q.a[WUprev]);
    add_u(terms, i, t, q.a[WUt]);
    add_u(terms, i, t + 1, q.a[WUnext]);
    put(WSt, var_s(i, t));
    put(WSnext, var_s(i, t + 1));
    put(WDt, var_d(i, t));
    put(WDnext, var_d(i, t + 1));
    if (q.a[WJ3] != 0.0) {
        int v = var_j3(i, t);
        if (v >= 0) terms.emplace_back(v, q.a[WJ3]);
        // J>=2 units have J3 fixed at 0 by omission
    }
    model_.add_constraint(std::move(terms), Sense::LE, q.rhs, q.tag);
}

// Eq. (64): (47)(48)(49); (46)(50)(51); (58)(59)(61)(62); (60)@T-1, (63)@2
void FormulationBuilder::gen_hd_block(int i) {
    if (T_ < 3) throw std::invalid_argument("three-period block needs T >= 3");
    const ScaledUnit& su = sus_[static_cast<size_t>(i)];
    if (!su.clamped) throw std::logic_error("hd block requires clamped scaled unit");
    WParams<double> p = window_params(su);
    for (int t = 2; t <= T_ - 1; ++t) {
        if (su.j1) {
            emit_window(i, t, wq::eq47(p));
            emit_window(i, t, wq::eq48(p));
            emit_window(i, t, wq::eq49(p));
        }
        emit_window(i, t, wq::eq46(p));
        emit_window(i, t, wq::eq50(p));
        emit_window(i, t, wq::eq51(p));
        emit_window(i, t, wq::eq58(p));
        emit_window(i, t, wq::eq59(p));
        emit_window(i, t, wq::eq61(p));
        emit_window(i, t, wq::eq62(p));
    }
    emit_window(i, T_ - 1, wq::eq60(p));
    emit_window(i, 2, wq::eq63(p));
}

// Eq. (69): the projected families with the appendix case dispatch
void FormulationBuilder::gen_projected_block(int i) {
    if (T_ < 3) throw std::invalid_argument("three-period block needs T >= 3");
    const ScaledUnit& su = sus_[static_cast<size_t>(i)];
    if (!su.clamped) throw std::logic_error("projected block requires clamped scaled unit");
    WParams<double> p = window_params(su);
    bool j1 = su.j1;
    double q_up = p.q_up(), q_down = p.q_down();
    for (int t = 2; t <= T_ - 1; ++t) {
        if (j1) {
            emit_window(i, t, wq::eq87_1(p));
            emit_window(i, t, wq::eq87_2(p));
            emit_window(i, t, wq::eq74_2(p));
            emit_window(i, t, wq::eq76_2(p));
        } else {
            emit_window(i, t, wq::eq86(p));
            emit_window(i, t, wq::eq73(p));
            emit_window(i, t, wq::eq75(p));
        }
        if (!j1) {
            emit_window(i, t, wq::eq65(p));
            emit_window(i, t, wq::eq77(p));
            emit_window(i, t, wq::eq80(p));
            emit_window(i, t, wq::eq83(p));
        } else {
            if (q_up >= 0.0) {
                emit_window(i, t, wq::eq66(p));
                emit_window(i, t, wq::eq67(p));
            } else {
                emit_window(i, t, wq::eq68(p));
                emit_window(i, t, wq::eq65(p));
            }
            if (p.c2u - p.csu >= 0.0) {
                emit_window(i, t, wq::eq78_1(p));
                emit_window(i, t, wq::eq78_2(p));
            } else {
                emit_window(i, t, wq::eq79_1(p));
                emit_window(i, t, wq::eq79_2(p));
            }
            if (q_down >= 0.0) {
                emit_window(i, t, wq::eq81_1(p));
                emit_window(i, t, wq::eq81_2(p));
            } else {
                emit_window(i, t, wq::eq82_1(p));
                emit_window(i, t, wq::eq82_2(p));
            }
            if (p.c2d - p.csd >= 0.0) {
                emit_window(i, t, wq::eq84_1(p));
                emit_window(i, t, wq::eq84_2(p));
            } else {
                emit_window(i, t, wq::eq85_1(p));
                emit_window(i, t, wq::eq85_2(p));
            }
        }
    }
    emit_window(i, 2, wq::eq52(p));
    emit_window(i, T_ - 1, wq::eq53(p));
    emit_window(i, T_ - 1, wq::eq60(p));
    emit_window(i, 2, wq::eq63(p));
}

void FormulationBuilder::gen_objective(int i) {
    const Unit& un = inst_.units[static_cast<size_t>(i)];
    const ScaledUnit& su = sus_[static_cast<size_t>(i)];
    for (int t = 1; t <= T_; ++t) {
        double alin = scaled_power_ ? su.a : un.alpha;
        if (logic_ == LogicVariant::ThreeBin) {
            model_.add_objective(var_u(i, t), alin);
        } else {
            model_.add_objective(var_o(i, t), alin);
            model_.add_objective(var_s(i, t), alin);
        }
        if (scaled_power_)
            model_.add_objective(var_p(i, t), su.b, su.g);
        else
            model_.add_objective(var_p(i, t), un.beta, un.gamma);
        model_.add_objective(var_sc(i, t), 1.0);
        if (startup_ == StartupVariant::Projected) model_.add_objective(var_s(i, t), un.c_hot);
    }
}

Model FormulationBuilder::take() { return std::move(model_); }

Model assemble(const Instance& inst, FormKind kind) {
    bool three_period = kind == FormKind::ThreePTi || kind == FormKind::ThreePTiST ||
                        kind == FormKind::ThreePHD || kind == FormKind::ThreePHDPr;
    if (three_period && inst.periods() < 3)
        throw std::invalid_argument(kind_tag(kind) + " requires T >= 3");
    bool scaled = kind == FormKind::ThreePHD || kind == FormKind::ThreePHDPr;
    LogicVariant logic =
        kind == FormKind::ThreePTiST ? LogicVariant::StateTransition : LogicVariant::ThreeBin;
    StartupVariant startup = (kind == FormKind::TwoPCo || kind == FormKind::TwoPTi ||
                              kind == FormKind::ThreePTi)
                                 ? StartupVariant::Classic
                                 : StartupVariant::Projected;
    FormulationBuilder b(inst, scaled, logic, startup, kind == FormKind::ThreePHD);
    for (int i = 0; i < inst.n_units(); ++i) {
        b.gen_startup_cost(i);
        b.gen_logic(i);
        b.gen_min_up_down(i);
        switch (kind) {
            case FormKind::TwoPCo:
                b.gen_generation_limits(i, GenLimitTier::Simple);
                b.gen_ramping(i, RampTier::Basic);
                break;
            case FormKind::TwoPTi:
                b.gen_generation_limits(i, GenLimitTier::Tight2);
                b.gen_ramping(i, RampTier::Strengthened);
                break;
            case FormKind::ThreePTi:
            case FormKind::ThreePTiST:
                b.gen_generation_limits(i, GenLimitTier::Tight3);
                b.gen_ramping(i, RampTier::ThreePeriod);
                break;
            case FormKind::ThreePHD: b.gen_hd_block(i); break;
            case FormKind::ThreePHDPr: b.gen_projected_block(i); break;
        }
        b.gen_objective(i);
    }
    b.gen_system();
    Model m = b.take();
    m.name = kind_tag(kind);
    m.metadata.push_back("formulation=" + kind_tag(kind));
    m.metadata.push_back("mode=miqp");
    for (int i = 0; i < inst.n_units(); ++i)
        m.metadata.push_back("p0[" + std::to_string(i) + "]=" +
                             fmt_num(inst.units[static_cast<size_t>(i)].initial_power()));
    return m;
}

Model milp_approximate(const Model& model, const std::vector<ScaledUnit>& sus, int L) {
    if (L < 1) throw std::invalid_argument("segment count L must be >= 1");
    Model m = model;
    struct QuadTerm {
        int var;
        double gamma;
        int unit;
        std::string suffix;
        bool scaled;
    };
    std::vector<QuadTerm> quads;
    for (size_t j = 0; j < m.variables().size(); ++j) {
        double g = m.objective_quad()[j];
        if (g == 0.0) continue;
        const std::string& nm = m.variables()[j].name;
        // power variables are named P_i_t (raw) or p_i_t (scaled)
        size_t a = nm.find('_');
        size_t b = nm.find('_', a + 1);
        QuadTerm q;
        q.var = static_cast<int>(j);
        q.gamma = g;
        q.unit = std::stoi(nm.substr(a + 1, b - a - 1));
        q.suffix = nm.substr(a + 1);
        q.scaled = nm[0] == 'p';
        quads.push_back(std::move(q));
    }
    const double inf = std::numeric_limits<double>::infinity();
    for (const auto& q : quads) {
        int z = m.add_variable("z_" + q.suffix, VarKind::Continuous, 0.0, inf).index;
        m.add_objective(q.var, 0.0, -q.gamma);  // cancel the quadratic term
        m.add_objective(z, 1.0);
        const ScaledUnit& su = sus.at(static_cast<size_t>(q.unit));
        for (int l = 0; l <= L; ++l) {
            double bp = q.scaled ? static_cast<double>(l) / L
                                 : su.p_min + static_cast<double>(l) * su.span / L;
            // z >= 2*gamma*bp*P - gamma*bp^2
            m.add_constraint({{q.var, 2.0 * q.gamma * bp}, {z, -1.0}}, Sense::LE,
                             q.gamma * bp * bp, q.scaled ? "eq72" : "eq71");
        }
    }
    m.metadata.push_back("milp_segments=" + std::to_string(L));
    return m;
}

Model build_model(const Instance& inst, FormKind kind, bool milp, int segments) {
    Model m = assemble(inst, kind);
    if (milp) {
        m = milp_approximate(m, scale_all(inst), segments);
        for (auto& note : m.metadata)
            if (note == "mode=miqp") note = "mode=milp";
    }
    return m;
}

}  // namespace ucb
