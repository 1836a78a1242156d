#pragma once

#include <string>
#include <vector>

#include "ucb/formulations.hpp"
#include "ucb/instance.hpp"
#include "ucb/solver.hpp"

namespace ucb {

// (z_mip - z_cr)/z_mip; rejects z_mip = 0 and z_cr above z_mip beyond tolerance
double compute_igap(double z_mip, double z_cr);

// (c_time - c_ref)/c_ref against the reference formulation (3P-Ti-ST by default)
double compute_rtime(double c_time, double c_ref);

struct RunRecord {
    std::string instance_id;
    std::string kind;
    std::string mode;
    std::string relax_status;
    double z_cr = 0.0;
    double i_u = 0.0;
    double i_all = 0.0;
    std::string mip_status;
    double z_incumbent = std::numeric_limits<double>::quiet_NaN();
    double bound = std::numeric_limits<double>::quiet_NaN();
    double z_mip_shared = std::numeric_limits<double>::quiet_NaN();
    double igap = std::numeric_limits<double>::quiet_NaN();
    long nodes = 0;
    ModelStats model_stats;
    std::string method;
    double relax_seconds = 0.0;
    double mip_seconds = 0.0;
    std::string error;
};

struct MatrixOptions {
    bool milp = true;
    int segments = 4;
    double gap_tol = 0.005;
    MipLimits limits;
    int jobs = 1;
    bool with_mip = true;  // off: relaxations only
};

struct MatrixResult {
    std::vector<RunRecord> records;
    bool chain_ok = true;           // Eq. (70) ordering of Z_CR per instance
    bool hd_pair_equal = true;      // 3P-HD vs 3P-HD-Pr relaxation equality
    bool iall_monotone = true;      // observation only, never a failure
    std::vector<std::string> notes;
};

MatrixResult run_matrix(const std::vector<std::pair<std::string, Instance>>& instances,
                        const std::vector<FormKind>& kinds, const MatrixOptions& opt);

// deterministic content: no wall-clock columns
std::string matrix_csv(const MatrixResult& r);
// timing + rTime (reference 3P-Ti-ST); excluded from determinism guarantees
std::string timing_csv(const MatrixResult& r);

// Eq. (70) ordering with 1e-9*|Z| slack over one instance's records
bool chain_holds(const std::vector<const RunRecord*>& group, std::string* why = nullptr);

}  // namespace ucb
