#pragma once

#include <array>
#include <string>
#include <vector>

#include "ucb/instance.hpp"
#include "ucb/model.hpp"
#include "ucb/scaling.hpp"
#include "ucb/window_ineq.hpp"

namespace ucb {

enum class FormKind { TwoPCo, TwoPTi, ThreePTi, ThreePTiST, ThreePHD, ThreePHDPr };

constexpr std::array<FormKind, 6> kAllKinds = {FormKind::TwoPCo,   FormKind::TwoPTi,
                                               FormKind::ThreePTi, FormKind::ThreePTiST,
                                               FormKind::ThreePHD, FormKind::ThreePHDPr};

std::string kind_tag(FormKind k);
FormKind parse_kind(const std::string& tag);

// summation window of startup-cost constraints (24)/(26): shutdown variables over
// periods [lo, hi] plus the constant pre-horizon term f_init
struct XiWindow {
    int lo = 1, hi = 0;  // empty when lo > hi
    int f_init = 0;
};
XiWindow xi_window(const Unit& u, int t);

enum class LogicVariant { ThreeBin, StateTransition };
enum class GenLimitTier { Simple, Shutdown, Tight2, Tight3 };
enum class RampTier { Basic, Strengthened, ThreePeriod };
enum class StartupVariant { Classic, Projected };

// Incremental constructor for one formulation. Declares variables per unit in
// deterministic unit-then-period order; the gen_* steps each emit one
// constraint family so they can be exercised in isolation.
class FormulationBuilder {
public:
    FormulationBuilder(const Instance& inst, bool scaled_power, LogicVariant logic,
                       StartupVariant startup, bool with_j3);

    void gen_logic(int i);
    void gen_min_up_down(int i);
    void gen_generation_limits(int i, GenLimitTier tier);
    void gen_ramping(int i, RampTier tier);
    void gen_startup_cost(int i);
    void gen_system();
    void gen_hd_block(int i);         // Eq. (64) unit block
    void gen_projected_block(int i);  // Eq. (69) unit block
    void gen_objective(int i);

    Model take();
    Model& model() { return model_; }

    int var_u(int i, int t) const;  // -1 for the state-transition variant
    int var_o(int i, int t) const;
    int var_s(int i, int t) const;
    int var_d(int i, int t) const;
    int var_p(int i, int t) const;
    int var_sc(int i, int t) const;  // S or S~ depending on the startup variant
    int var_j3(int i, int t) const;  // -1 unless declared (J1 units, interior t)

    const ScaledUnit& scaled(int i) const { return sus_[static_cast<size_t>(i)]; }
    const Instance& instance() const { return inst_; }

    // appends coef * u_{i,t} in the active logic variant (u or o+s)
    void add_u(std::vector<std::pair<int, double>>& terms, int i, int t, double coef) const;

private:
    const Instance& inst_;
    std::vector<ScaledUnit> sus_;
    bool scaled_power_;
    LogicVariant logic_;
    StartupVariant startup_;
    bool with_j3_;
    int T_;
    Model model_;
    std::vector<std::vector<int>> u_, o_, s_, d_, p_, sc_, j3_;

    void declare_unit_vars(int i);
    void emit_window(int i, int t, const WIneq<double>& q);
};

// Complete MIQP assembly of one of the six formulations.
Model assemble(const Instance& inst, FormKind kind);

// Tangent-envelope MILP approximation: each diagonal quadratic objective term is
// replaced by a new variable z with L+1 tangent cuts at evenly spaced breakpoints.
Model milp_approximate(const Model& model, const std::vector<ScaledUnit>& sus, int L);

// assemble + optional milp_approximate
Model build_model(const Instance& inst, FormKind kind, bool milp, int segments);

std::vector<ScaledUnit> scale_all(const Instance& inst);

}  // namespace ucb
