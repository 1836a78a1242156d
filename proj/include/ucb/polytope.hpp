#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ucb/model.hpp"
#include "ucb/rational.hpp"
#include "ucb/window_ineq.hpp"

namespace ucb::lab {

using QParams = WParams<Rat>;
using QIneq = WIneq<Rat>;

enum class Verdict { Verified, Falsified, Inconclusive };

struct PolytopeReport {
    std::string check;
    std::string params;
    Verdict verdict = Verdict::Inconclusive;
    std::string witness;
    std::string notes;
};

std::string verdict_name(Verdict v);

// Theorem regimes. J1: t_on = t_off = 1 (all 8 window states feasible).
// Jge2: t_on = 2, t_off = 1 (the one-period-on state drops out, J3 == 0).
// Jge2Off2 additionally sets t_off = 2 (used by the (21)/(59) comparisons).
enum class UnitClass { J1, Jge2, Jge2Off2 };
enum class SetMode { B, C };  // generation-limit polytope vs. with ramp rows

bool state_feasible(const ThreePeriodState& st, UnitClass cls);

// deterministic rational parameter draws satisfying the three-period regime
// (composites < 1) and avoiding coincidences between breakpoints
struct LabRng {
    std::uint64_t state;
    explicit LabRng(std::uint64_t seed) : state(seed + 0x9e3779b97f4a7c15ULL) {}
    std::uint64_t next();
    long below(long n);  // uniform in [0, n)
};
QParams draw_params(LabRng& rng, UnitClass cls);
std::string params_str(const QParams& p);

// ---- exact LP (small dense two-phase simplex, Bland's rule) ----------------
struct RatLp {
    enum class Status { Optimal, Infeasible, Unbounded };
    struct Out {
        Status status = Status::Infeasible;
        Rat value;
        RatVec x;
    };
    int add_var(const Rat& lo, const Rat& hi, bool unbounded_above = false);
    void add_row(const std::vector<std::pair<int, Rat>>& terms, Sense sense, const Rat& rhs);
    void set_objective(int var, const Rat& coef);
    Out maximize() const;

    std::vector<Rat> lo_, hi_, obj_;
    std::vector<char> hi_inf_;
    std::vector<std::vector<std::pair<int, Rat>>> rows_;
    std::vector<Sense> sense_;
    std::vector<Rat> rhs_;
};

// ---- double description vertex enumeration ---------------------------------
// rows r encode r.(x,1) <= 0 over integer homogeneous coordinates
struct DDResult {
    bool ok = false;
    std::string note;
    // gcd-reduced generators (x*den, den) with den > 0
    std::vector<std::vector<BigInt>> vertices;
};
DDResult dd_vertices(int dim, const std::vector<std::vector<BigInt>>& rows,
                     std::size_t max_generators = 200000);

// ---- lab checks -------------------------------------------------------------
PolytopeReport check_base_relations();

// max of lhs-rhs per feasible state over the Table I/III region
PolytopeReport validate_inequality(const QIneq& q, const QParams& p, UnitClass cls, SetMode mode);

// facet certification by exact affine rank of the tight integer-state vertices
PolytopeReport certify_facet(const QIneq& q, const QParams& p, UnitClass cls, SetMode mode);

// dimension targets of Theorems 1-2 (9 for J1, 8 for Jge2 at T=3)
int dim_target(UnitClass cls);

// vertex enumeration of the T-period relaxation; verified iff every vertex has
// 0/1 binary coordinates. T=3 gives the single-window sets of Theorems 1-2.
// boundary_variant swaps (50)(51) for the weaker (52)(53) rows (the Remark 1/2
// tilde sets).
PolytopeReport check_integral_hull(const QParams& p, UnitClass cls, SetMode mode, int T,
                                   bool boundary_variant = false);

PolytopeReport check_tu();

// named dominance/implication claims from the paper's conclusion lists
std::vector<std::string> dominance_catalog();
PolytopeReport check_dominance(const std::string& name, const QParams& p);

// startup-cost relaxation comparison: containment R(Psi2) subset R(Psi1) plus
// the strict-witness floor values at (s, xi)
struct StartupDominance {
    Verdict containment = Verdict::Inconclusive;
    Rat floor_classic;    // min S over R(Psi1) at the witness point
    Rat floor_projected;  // min C_hot*s + S~ over R(Psi2)
    bool strict = false;
    std::string notes;
};
StartupDominance check_startup_dominance(const Rat& c_hot, const Rat& c_cold, const Rat& s_val,
                                         const Rat& xi_val);

// per-state equivalence of the high-dimension window block and the projected
// block (J3 eliminated), checked by two-way LP containment over the powers
PolytopeReport check_projection_equivalence(const QParams& p);

// Table II affinely independent points (parameterized); used by tests and as
// certify_facet seeds
RatMat table2_points(const QParams& p, const std::array<std::array<Rat, 3>, 3>& a_ub,
                     const Rat& eps);

}  // namespace ucb::lab
