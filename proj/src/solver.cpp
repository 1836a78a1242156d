#include "ucb/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace ucb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double now_seconds() {
    using namespace std::chrono;
    return duration<double>(steady_clock::now().time_since_epoch()).count();
}

SolveStatus from_lp(LpStatus s) {
    switch (s) {
        case LpStatus::Optimal: return SolveStatus::Optimal;
        case LpStatus::Infeasible: return SolveStatus::Infeasible;
        case LpStatus::Unbounded: return SolveStatus::Unbounded;
        default: return SolveStatus::Limit;
    }
}

// LP representation of a model with quadratic terms outer-approximated by
// tangents; cuts are valid model-wide, so the pool can be shared across
// branch-and-bound nodes and refinement rounds.
struct TangentPool {
    struct QuadVar {
        int var;
        double gamma;
        int z_col;
    };
    LpProblem lp;
    std::vector<QuadVar> quads;
    int n_model_vars = 0;
    double obj_const = 0.0;

    explicit TangentPool(const Model& m, int initial_pts = 17) {
        n_model_vars = static_cast<int>(m.variables().size());
        obj_const = m.objective_constant();
        lp = LpProblem::from_model(m);
        for (int j = 0; j < n_model_vars; ++j) {
            double g = m.objective_quad()[static_cast<size_t>(j)];
            if (g == 0.0) continue;
            if (g < 0.0) throw std::invalid_argument("non-convex quadratic objective");
            QuadVar q{j, g, lp.add_column(0.0, kInf, 1.0)};
            quads.push_back(q);
            const auto& v = m.variables()[static_cast<size_t>(j)];
            double lo = std::isfinite(v.lower) ? v.lower : 0.0;
            double hi = std::isfinite(v.upper) ? v.upper : lo + 1.0;
            for (int k = 0; k < initial_pts; ++k) {
                double bp = lo + (hi - lo) * k / std::max(1, initial_pts - 1);
                add_tangent(q, bp);
            }
        }
    }

    void add_tangent(const QuadVar& q, double x0) {
        // z >= 2*g*x0*x - g*x0^2
        lp.add_row({{q.var, 2.0 * q.gamma * x0}, {q.z_col, -1.0}}, Sense::LE, q.gamma * x0 * x0);
    }

    double true_objective(const Model& m, const std::vector<double>& x) const {
        double z = obj_const;
        for (int j = 0; j < n_model_vars; ++j)
            z += m.objective_linear()[static_cast<size_t>(j)] * x[static_cast<size_t>(j)] +
                 m.objective_quad()[static_cast<size_t>(j)] * x[static_cast<size_t>(j)] * x[static_cast<size_t>(j)];
        return z;
    }
};

}  // namespace

std::string status_name(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::Unbounded: return "unbounded";
        default: return "limit";
    }
}

SolveResult solve_lp(const Model& model) {
    for (const auto& v : model.variables())
        if (v.kind == VarKind::Binary)
            throw std::invalid_argument("solve_lp requires a relaxed model");
    double t0 = now_seconds();
    SolveResult res;
    if (!model.has_quadratic()) {
        LpProblem lp = LpProblem::from_model(model);
        LpOutcome o = lp.solve();
        res.status = from_lp(o.status);
        res.objective = o.objective + model.objective_constant();
        res.bound = res.objective;
        res.values.assign(o.x.begin(), o.x.begin() + model.variables().size());
        res.iterations = o.iterations;
        res.method = "simplex";
        res.note = o.note;
    } else {
        TangentPool pool(model);
        long iters = 0;
        res.method = "simplex+tangent-refine";
        for (int round = 0; round < 80; ++round) {
            LpOutcome o = pool.lp.solve();
            iters += o.iterations;
            res.status = from_lp(o.status);
            if (o.status != LpStatus::Optimal) {
                res.note = o.note;
                res.iterations = iters;
                res.wall_time = now_seconds() - t0;
                return res;
            }
            double lb = o.objective + model.objective_constant();
            res.values.assign(o.x.begin(), o.x.begin() + model.variables().size());
            double truev = pool.true_objective(model, res.values);
            res.objective = truev;
            res.bound = lb;
            res.iterations = iters;
            if (truev - lb <= 1e-10 * std::max(1.0, std::abs(truev))) break;
            for (const auto& q : pool.quads) pool.add_tangent(q, o.x[static_cast<size_t>(q.var)]);
        }
    }
    res.wall_time = now_seconds() - t0;
    return res;
}

namespace {

struct BnbNode {
    double bound;
    long id;
    std::vector<std::pair<int, std::pair<double, double>>> fixes;  // col -> (lo, hi)
    bool operator>(const BnbNode& o) const {
        return bound > o.bound || (bound == o.bound && id > o.id);
    }
};

struct Bnb {
    LpProblem work;  // bounds are patched per node and restored from saved copies
    std::vector<double> lo0, hi0;
    std::vector<int> int_cols;
    double obj_const = 0.0;
    double gap_tol = 0.0;
    MipLimits lim;
    double t_start = 0.0;

    long nodes = 0;
    long iters = 0;
    double incumbent = kInf;
    std::vector<double> best_x;
    bool hit_limit = false;
    bool unbounded = false;
    std::string note;

    void init(const LpProblem& base) {
        work = base;
        lo0 = base.col_lo_;
        hi0 = base.col_hi_;
    }

    double gap_of(double inc, double bnd) const {
        if (inc >= kInf) return kInf;
        return (inc - bnd) / std::max(std::abs(inc), 1e-9);
    }

    LpOutcome solve_with(const std::vector<std::pair<int, std::pair<double, double>>>& fixes) {
        for (const auto& [col, bounds] : fixes) {
            work.col_lo_[static_cast<size_t>(col)] = bounds.first;
            work.col_hi_[static_cast<size_t>(col)] = bounds.second;
        }
        LpOutcome o = work.solve();
        for (const auto& [col, bounds] : fixes) {
            work.col_lo_[static_cast<size_t>(col)] = lo0[static_cast<size_t>(col)];
            work.col_hi_[static_cast<size_t>(col)] = hi0[static_cast<size_t>(col)];
        }
        iters += o.iterations;
        return o;
    }

    int pick_branch(const std::vector<double>& x) const {
        int best = -1;
        double best_frac = kIntegralityTol;
        for (int c : int_cols) {
            double v = x[static_cast<size_t>(c)];
            double f = std::abs(v - std::round(v));
            if (f > best_frac) {
                best_frac = f;
                best = c;
            }
        }
        return best;
    }

    void try_incumbent(const BnbNode& node, const LpOutcome& o) {
        // re-solve with integers pinned for a clean feasible point
        auto fixes = node.fixes;
        for (int c : int_cols) {
            double v = std::round(o.x[static_cast<size_t>(c)]);
            fixes.emplace_back(c, std::make_pair(v, v));
        }
        LpOutcome f = solve_with(fixes);
        if (f.status != LpStatus::Optimal) return;
        double val = f.objective + obj_const;
        if (val < incumbent - 1e-12 * std::max(1.0, std::abs(val))) {
            incumbent = val;
            best_x = f.x;
        }
    }

    SolveResult run() {
        t_start = now_seconds();
        double proven_bound = -kInf;
        bool exhausted = false;
        std::priority_queue<BnbNode, std::vector<BnbNode>, std::greater<BnbNode>> pq;
        long next_id = 0;
        pq.push(BnbNode{-kInf, next_id++, {}});
        while (true) {
            if (pq.empty()) {
                exhausted = true;
                break;
            }
            BnbNode node = pq.top();
            pq.pop();
            if (node.bound > -kInf) proven_bound = node.bound;  // min over open nodes
            if (incumbent < kInf && node.bound > -kInf &&
                gap_of(incumbent, node.bound) <= gap_tol)
                break;
            if (node.bound >= incumbent - 1e-9 * std::max(1.0, std::abs(incumbent))) continue;
            if (nodes >= lim.node_limit ||
                (std::isfinite(lim.time_limit) && now_seconds() - t_start > lim.time_limit)) {
                hit_limit = true;
                note = nodes >= lim.node_limit ? "node limit" : "time limit";
                break;
            }
            ++nodes;
            LpOutcome o = solve_with(node.fixes);
            if (o.status == LpStatus::Infeasible) continue;
            if (o.status == LpStatus::Unbounded) {
                unbounded = true;
                break;
            }
            if (o.status == LpStatus::Limit) {
                hit_limit = true;
                note = "node LP limit: " + o.note;
                continue;
            }
            double lb = o.objective + obj_const;
            if (lb >= incumbent - 1e-9 * std::max(1.0, std::abs(incumbent))) continue;
            int branch_col = pick_branch(o.x);
            if (branch_col < 0) {
                try_incumbent(node, o);
                continue;
            }
            double v = o.x[static_cast<size_t>(branch_col)];
            double lo = lo0[static_cast<size_t>(branch_col)];
            double hi = hi0[static_cast<size_t>(branch_col)];
            for (const auto& [c, b] : node.fixes)
                if (c == branch_col) {
                    lo = b.first;
                    hi = b.second;
                }
            auto down = node.fixes;
            down.emplace_back(branch_col, std::make_pair(lo, std::floor(v)));
            pq.push(BnbNode{lb, next_id++, std::move(down)});
            auto up = node.fixes;
            up.emplace_back(branch_col, std::make_pair(std::ceil(v), hi));
            pq.push(BnbNode{lb, next_id++, std::move(up)});
        }
        SolveResult res;
        res.nodes = nodes;
        res.iterations = iters;
        if (unbounded) {
            res.status = SolveStatus::Unbounded;
            return res;
        }
        if (exhausted) proven_bound = incumbent < kInf ? incumbent : proven_bound;
        // open nodes can all sit above the incumbent; the proven bound is then
        // the incumbent itself
        if (incumbent < kInf) proven_bound = std::min(proven_bound, incumbent);
        res.bound = proven_bound;
        if (incumbent < kInf) {
            res.objective = incumbent;
            res.values = best_x;
            res.status = hit_limit ? SolveStatus::Limit : SolveStatus::Optimal;
        } else {
            res.status = hit_limit ? SolveStatus::Limit : SolveStatus::Infeasible;
        }
        res.note = note;
        return res;
    }
};

}  // namespace

SolveResult solve_mip(const Model& model, double gap_tol, const MipLimits& lim) {
    double t0 = now_seconds();
    std::vector<int> int_cols;
    for (size_t j = 0; j < model.variables().size(); ++j)
        if (model.variables()[j].kind == VarKind::Binary) int_cols.push_back(static_cast<int>(j));

    SolveResult res;
    if (!model.has_quadratic()) {
        Bnb bnb;
        bnb.init(LpProblem::from_model(model));
        bnb.int_cols = int_cols;
        bnb.obj_const = model.objective_constant();
        bnb.gap_tol = gap_tol;
        bnb.lim = lim;
        res = bnb.run();
        if (!res.values.empty()) res.values.resize(model.variables().size());
        res.method = "bnb";
    } else {
        // outer loop: branch and bound on the tangent envelope, then certify the
        // incumbent pattern against the true quadratic objective
        TangentPool pool(model);
        double best_true = kInf;
        std::vector<double> best_vals;
        long nodes = 0, iters = 0;
        double env_lb = -kInf;
        bool limit_hit = false;
        for (int round = 0; round < 40; ++round) {
            Bnb bnb;
            bnb.init(pool.lp);
            bnb.int_cols = int_cols;
            bnb.obj_const = pool.obj_const;
            bnb.gap_tol = gap_tol;
            bnb.lim = lim;
            SolveResult inner = bnb.run();
            nodes += inner.nodes;
            iters += inner.iterations;
            if (inner.status == SolveStatus::Infeasible || inner.status == SolveStatus::Unbounded) {
                res = inner;
                res.nodes = nodes;
                res.iterations = iters;
                res.method = "bnb+tangent-refine";
                res.wall_time = now_seconds() - t0;
                return res;
            }
            limit_hit = inner.status == SolveStatus::Limit;
            env_lb = std::max(env_lb, inner.bound);
            std::vector<double> vals(inner.values.begin(),
                                     inner.values.begin() + model.variables().size());
            double truev = pool.true_objective(model, vals);
            if (truev < best_true) {
                best_true = truev;
                best_vals = vals;
            }
            double denom = std::max(std::abs(best_true), 1e-9);
            if ((best_true - env_lb) / denom <= std::max(gap_tol, 1e-10) || limit_hit) break;
            for (const auto& q : pool.quads)
                pool.add_tangent(q, inner.values[static_cast<size_t>(q.var)]);
        }
        res.status = limit_hit ? SolveStatus::Limit : SolveStatus::Optimal;
        res.objective = best_true;
        res.values = best_vals;
        res.bound = env_lb;
        res.nodes = nodes;
        res.iterations = iters;
        res.method = "bnb+tangent-refine";
    }
    res.wall_time = now_seconds() - t0;
    return res;
}

std::pair<double, double> integer_proportions(const SolveResult& r, const Model& original) {
    long n_bin = 0, n_bin_int = 0;
    for (size_t j = 0; j < original.variables().size(); ++j) {
        if (original.variables()[j].kind != VarKind::Binary) continue;
        ++n_bin;
        double v = r.values.at(j);
        if (std::abs(v - std::round(v)) <= kIntegralityTol) ++n_bin_int;
    }
    long n_u = 0, n_u_int = 0;
    for (const auto& expr : original.u_exprs) {
        if (expr.empty()) continue;
        ++n_u;
        double v = 0.0;
        for (const auto& [col, coef] : expr) v += coef * r.values.at(static_cast<size_t>(col));
        if (std::abs(v - std::round(v)) <= kIntegralityTol && (v > -0.5 && v < 1.5)) ++n_u_int;
    }
    double iu = n_u ? static_cast<double>(n_u_int) / static_cast<double>(n_u) : 1.0;
    double iall = n_bin ? static_cast<double>(n_bin_int) / static_cast<double>(n_bin) : 1.0;
    return {iu, iall};
}

std::string write_solution(const SolveResult& r, const Model& m) {
    std::ostringstream os;
    os << "status " << status_name(r.status) << "\n";
    if (std::isfinite(r.objective)) os << "objective " << fmt_num(r.objective) << "\n";
    if (std::isfinite(r.bound)) os << "bound " << fmt_num(r.bound) << "\n";
    for (size_t j = 0; j < m.variables().size() && j < r.values.size(); ++j)
        os << m.variables()[j].name << " " << fmt_num(r.values[j]) << "\n";
    return os.str();
}

SolveResult parse_solution(const std::string& text, const Model& m) {
    SolveResult r;
    r.values.assign(m.variables().size(), 0.0);
    std::istringstream is(text);
    std::string key;
    bool have_obj = false;
    while (is >> key) {
        if (key == "status") {
            std::string v;
            is >> v;
            if (v == "optimal") r.status = SolveStatus::Optimal;
            else if (v == "infeasible") r.status = SolveStatus::Infeasible;
            else if (v == "unbounded") r.status = SolveStatus::Unbounded;
            else r.status = SolveStatus::Limit;
        } else if (key == "objective") {
            is >> r.objective;
            have_obj = true;
        } else if (key == "bound") {
            is >> r.bound;
        } else {
            double v;
            if (!(is >> v)) throw std::invalid_argument("malformed solution line at " + key);
            int idx = m.var_index(key);
            if (idx >= 0) r.values[static_cast<size_t>(idx)] = v;
        }
    }
    if (!have_obj && r.status == SolveStatus::Optimal) r.objective = m.eval_objective(r.values);
    r.method = "external";
    return r;
}

SolveResult solve_external(const Model& m, const std::string& command, const std::string& dir) {
    std::filesystem::create_directories(dir);
    std::string mps_path = dir + "/model.mps";
    std::string sol_path = dir + "/model.sol";
    {
        std::ofstream out(mps_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + mps_path);
        out << m.write_mps();
    }
    std::string cmd = command;
    auto subst = [&](const std::string& key, const std::string& val) {
        size_t p = cmd.find(key);
        bool found = false;
        while (p != std::string::npos) {
            cmd.replace(p, key.size(), val);
            p = cmd.find(key, p + val.size());
            found = true;
        }
        return found;
    };
    bool m1 = subst("{mps}", mps_path);
    bool m2 = subst("{sol}", sol_path);
    if (!m1 && !m2) cmd += " " + mps_path + " " + sol_path;
    int rc = std::system(cmd.c_str());
    if (rc != 0) throw std::runtime_error("external solver command failed: " + cmd);
    std::ifstream in(sol_path);
    if (!in) throw std::runtime_error("external solver produced no solution file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_solution(ss.str(), m);
}

}  // namespace ucb
