#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ucb {

enum class VarKind { Binary, Continuous };
enum class Sense { LE, EQ, GE };

struct VariableRef {
    int index = -1;
};

struct Variable {
    std::string name;
    VarKind kind = VarKind::Continuous;
    double lower = 0.0;
    double upper = 0.0;
};

struct LinearConstraint {
    // terms are sorted by variable index with merged coefficients
    std::vector<std::pair<int, double>> terms;
    Sense sense = Sense::LE;
    double rhs = 0.0;
    std::string tag;
};

struct ModelStats {
    std::int64_t n_binary = 0;
    std::int64_t n_continuous = 0;
    std::int64_t n_constraints = 0;
    std::int64_t n_nonzeros = 0;
    bool operator==(const ModelStats&) const = default;
};

// Solver-agnostic MIP/MIQP in minimization form. The objective is
// linear + diagonal quadratic: sum(obj_linear[j]*x_j + obj_quad[j]*x_j^2) + obj_constant.
class Model {
public:
    std::string name = "ucb";

    VariableRef add_variable(const std::string& name, VarKind kind, double lower, double upper);
    // terms may contain duplicates; they are merged and zeros dropped
    void add_constraint(std::vector<std::pair<int, double>> terms, Sense sense, double rhs,
                        std::string tag);

    void add_objective(int var, double linear, double quad = 0.0);

    int var_index(const std::string& name) const;  // -1 if absent
    const Variable& var(int idx) const { return vars_.at(static_cast<size_t>(idx)); }
    const std::vector<Variable>& variables() const { return vars_; }
    const std::vector<LinearConstraint>& constraints() const { return cons_; }
    const std::vector<double>& objective_linear() const { return obj_linear_; }
    const std::vector<double>& objective_quad() const { return obj_quad_; }
    double objective_constant() const { return obj_constant_; }
    bool has_quadratic() const;

    // binary variables re-kinded continuous on [max(l,0), min(u,1)]; constraints unchanged
    Model relax() const;

    ModelStats stats() const;
    std::map<std::string, std::int64_t> tag_counts() const;

    std::string write_mps() const;
    std::string write_lp() const;

    double eval_objective(const std::vector<double>& x) const;

    // commitment-indicator expressions per (unit, period), used for the I_u metric;
    // a plain u variable for the 3-bin models, o+s for the state-transition model
    std::vector<std::vector<std::pair<int, double>>> u_exprs;
    // free-form provenance notes surfaced by the CLI (formulation tag, clamps, p0...)
    std::vector<std::string> metadata;

private:
    std::vector<Variable> vars_;
    std::vector<LinearConstraint> cons_;
    std::vector<double> obj_linear_;
    std::vector<double> obj_quad_;
    double obj_constant_ = 0.0;
    std::map<std::string, int> name_to_index_;
};

// deterministic shortest-ish decimal rendering used by all writers
std::string fmt_num(double v);

}  // namespace ucb
