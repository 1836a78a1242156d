#include "ucb/simplex.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <limits>

namespace ucb {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

int LpProblem::add_column(double lo, double hi, double cost) {
    col_lo_.push_back(lo);
    col_hi_.push_back(hi);
    cost_.push_back(cost);
    return static_cast<int>(col_lo_.size()) - 1;
}

void LpProblem::add_row(const std::vector<std::pair<int, double>>& terms, Sense sense, double rhs) {
    rows_.push_back(terms);
    sense_.push_back(sense);
    rhs_.push_back(rhs);
}

LpProblem LpProblem::from_model(const Model& m) {
    LpProblem lp;
    for (size_t j = 0; j < m.variables().size(); ++j)
        lp.add_column(m.variables()[j].lower, m.variables()[j].upper, m.objective_linear()[j]);
    for (const auto& c : m.constraints()) lp.add_row(c.terms, c.sense, c.rhs);
    return lp;
}

namespace {

enum class VStat : unsigned char { Basic, AtLower, AtUpper, FreeZero };
enum class PhaseEnd { Goal, Infeasible, Unbounded, Limit };

class Simplex {
public:
    Simplex(const LpProblem& p, const LpOptions& opt) : p_(p), opt_(opt) {
        m_ = p.n_rows();
        n_ = p.n_cols();
        ncols_ = n_ + m_;
        build_columns();
    }

    LpOutcome solve() {
        LpOutcome out;
        set_initial_basis();
        if (!factor_ok_) {
            out.note = "initial factorization failed";
            return out;
        }
        long cap = opt_.max_iters > 0 ? opt_.max_iters : std::max(50000L, 80L * (m_ + ncols_));
        std::string note;
        bool reset_done = false;
        // outer repair loop: each round runs both phases, then re-verifies the
        // claimed optimum against a fresh factorization
        for (int round = 0; round < 6; ++round) {
            devex_.assign(static_cast<size_t>(ncols_), 1.0);
            degen_streak_ = 0;
            bland_ = false;
            PhaseEnd e1 = iterate(true, note, cap);
            if (e1 == PhaseEnd::Infeasible) {
                out.status = LpStatus::Infeasible;
                finalize(out, false);
                return out;
            }
            if (e1 == PhaseEnd::Limit) {
                if (note == "singular basis" && !reset_done) {
                    reset_done = true;
                    set_initial_basis();
                    continue;
                }
                out.status = LpStatus::Limit;
                out.note = note.empty() ? "phase-1 limit" : note;
                finalize(out, false);
                return out;
            }
            degen_streak_ = 0;
            bland_ = false;
            devex_.assign(static_cast<size_t>(ncols_), 1.0);
            PhaseEnd e2 = iterate(false, note, cap);
            if (e2 == PhaseEnd::Unbounded) {
                out.status = LpStatus::Unbounded;
                finalize(out, false);
                return out;
            }
            if (e2 == PhaseEnd::Limit) {
                if (note == "singular basis" && !reset_done) {
                    reset_done = true;
                    set_initial_basis();
                    continue;
                }
                out.status = LpStatus::Limit;
                out.note = note.empty() ? "phase-2 limit" : note;
                finalize(out, false);
                return out;
            }
            // refresh and re-verify: eta drift can leave residual infeasibility
            // or sign-flipped reduced costs
            if (!factorize()) {
                if (!reset_done) {
                    reset_done = true;
                    set_initial_basis();
                    continue;
                }
                out.status = LpStatus::Limit;
                out.note = "singular basis";
                finalize(out, false);
                return out;
            }
            compute_basics();
            bool primal_ok = total_infeasibility() <= 1e-7 * (1.0 + static_cast<double>(m_));
            bool dual_ok = false;
            if (primal_ok) {
                std::vector<double> y(uz(m_));
                for (int i = 0; i < m_; ++i) y[uz(i)] = cost_[uz(basic_[uz(i)])];
                btran(y);
                int dir = 0;
                dual_ok = price(y, false, dir) < 0;
            }
            if (primal_ok && dual_ok) {
                out.status = LpStatus::Optimal;
                finalize(out, true);
                return out;
            }
            if (iters_ >= cap) {
                out.status = LpStatus::Limit;
                out.note = "iteration limit";
                finalize(out, false);
                return out;
            }
        }
        out.status = LpStatus::Limit;
        out.note = "repair rounds exhausted";
        finalize(out, false);
        return out;
    }

private:
    const LpProblem& p_;
    LpOptions opt_;
    int m_ = 0, n_ = 0, ncols_ = 0;

    std::vector<std::vector<std::pair<int, double>>> cols_;  // incl. logical columns
    std::vector<double> lo_, hi_, cost_, btol_;
    std::vector<double> b_;

    std::vector<int> basic_;
    std::vector<int> basic_pos_;
    std::vector<VStat> stat_;
    std::vector<double> x_;

    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu_, luT_;
    struct Eta {
        int row;
        std::vector<std::pair<int, double>> col;
        double pivot;
    };
    std::vector<Eta> etas_;
    bool factor_ok_ = false;

    long iters_ = 0;
    long degen_streak_ = 0;
    bool bland_ = false;
    std::vector<double> devex_;  // reference weights, reset at phase switches

    size_t uz(int v) const { return static_cast<size_t>(v); }

    void build_columns() {
        cols_.assign(uz(ncols_), {});
        lo_.resize(uz(ncols_));
        hi_.resize(uz(ncols_));
        cost_.assign(uz(ncols_), 0.0);
        for (int j = 0; j < n_; ++j) {
            lo_[uz(j)] = p_.col_lo_[uz(j)];
            hi_[uz(j)] = p_.col_hi_[uz(j)];
            cost_[uz(j)] = p_.cost_[uz(j)];
        }
        b_ = p_.rhs_;
        for (int i = 0; i < m_; ++i) {
            for (const auto& [j, a] : p_.rows_[uz(i)])
                if (a != 0.0) cols_[uz(j)].emplace_back(i, a);
            int w = n_ + i;
            cols_[uz(w)].emplace_back(i, 1.0);
            switch (p_.sense_[uz(i)]) {
                case Sense::LE: lo_[uz(w)] = 0.0; hi_[uz(w)] = kInf; break;
                case Sense::GE: lo_[uz(w)] = -kInf; hi_[uz(w)] = 0.0; break;
                case Sense::EQ: lo_[uz(w)] = 0.0; hi_[uz(w)] = 0.0; break;
            }
        }
        btol_.resize(uz(ncols_));
        for (int j = 0; j < ncols_; ++j) {
            double s = 1.0;
            if (std::isfinite(lo_[uz(j)])) s = std::max(s, std::abs(lo_[uz(j)]));
            if (std::isfinite(hi_[uz(j)])) s = std::max(s, std::abs(hi_[uz(j)]));
            btol_[uz(j)] = opt_.feas_tol * s;
        }
    }

    void set_initial_basis() {
        basic_.resize(uz(m_));
        basic_pos_.assign(uz(ncols_), -1);
        stat_.assign(uz(ncols_), VStat::AtLower);
        x_.assign(uz(ncols_), 0.0);
        for (int j = 0; j < n_; ++j) {
            if (std::isfinite(lo_[uz(j)])) {
                stat_[uz(j)] = VStat::AtLower;
                x_[uz(j)] = lo_[uz(j)];
            } else if (std::isfinite(hi_[uz(j)])) {
                stat_[uz(j)] = VStat::AtUpper;
                x_[uz(j)] = hi_[uz(j)];
            } else {
                stat_[uz(j)] = VStat::FreeZero;
            }
        }
        for (int i = 0; i < m_; ++i) {
            int w = n_ + i;
            basic_[uz(i)] = w;
            basic_pos_[uz(w)] = i;
            stat_[uz(w)] = VStat::Basic;
        }
        factorize();
        compute_basics();
    }

    bool factorize() {
        Eigen::SparseMatrix<double> B(m_, m_);
        std::vector<Eigen::Triplet<double>> trips;
        for (int i = 0; i < m_; ++i)
            for (const auto& [r, a] : cols_[uz(basic_[uz(i)])]) trips.emplace_back(r, i, a);
        B.setFromTriplets(trips.begin(), trips.end());
        lu_.compute(B);
        if (lu_.info() != Eigen::Success) return factor_ok_ = false;
        Eigen::SparseMatrix<double> BT = B.transpose();
        luT_.compute(BT);
        if (luT_.info() != Eigen::Success) return factor_ok_ = false;
        etas_.clear();
        return factor_ok_ = true;
    }

    void ftran(std::vector<double>& v) const {
        Eigen::Map<Eigen::VectorXd> mv(const_cast<double*>(v.data()), m_);
        Eigen::VectorXd sol = lu_.solve(mv);
        std::copy(sol.data(), sol.data() + m_, v.begin());
        for (const auto& e : etas_) {
            double piv = v[uz(e.row)] / e.pivot;
            if (piv != 0.0)
                for (const auto& [r, a] : e.col)
                    if (r != e.row) v[uz(r)] -= a * piv;
            v[uz(e.row)] = piv;
        }
    }

    void btran(std::vector<double>& c) const {
        for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
            double acc = c[uz(it->row)];
            for (const auto& [r, a] : it->col)
                if (r != it->row) acc -= a * c[uz(r)];
            c[uz(it->row)] = acc / it->pivot;
        }
        Eigen::Map<Eigen::VectorXd> mv(c.data(), m_);
        Eigen::VectorXd sol = luT_.solve(mv);
        std::copy(sol.data(), sol.data() + m_, c.begin());
    }

    void compute_basics() {
        std::vector<double> r = b_;
        for (int j = 0; j < ncols_; ++j) {
            if (stat_[uz(j)] == VStat::Basic || x_[uz(j)] == 0.0) continue;
            for (const auto& [row, a] : cols_[uz(j)]) r[uz(row)] -= a * x_[uz(j)];
        }
        ftran(r);
        for (int i = 0; i < m_; ++i) x_[uz(basic_[uz(i)])] = r[uz(i)];
    }

    double infeas_of(int j) const {
        double v = x_[uz(j)];
        if (v < lo_[uz(j)] - btol_[uz(j)]) return lo_[uz(j)] - v;
        if (v > hi_[uz(j)] + btol_[uz(j)]) return v - hi_[uz(j)];
        return 0.0;
    }

    double total_infeasibility() const {
        double s = 0.0;
        for (int i = 0; i < m_; ++i) s += infeas_of(basic_[uz(i)]);
        return s;
    }

    double feas_threshold() const { return 1e-9 * (1.0 + static_cast<double>(m_)); }

    double col_dot(int j, const std::vector<double>& y) const {
        double s = 0.0;
        for (const auto& [r, a] : cols_[uz(j)]) s += a * y[uz(r)];
        return s;
    }

    // Devex pricing: argmax d_j^2 / w_j; Bland's rule when the fallback is active
    int price(const std::vector<double>& y, bool phase1, int& dir) const {
        int best = -1, best_dir = 0;
        double best_score = 0.0;
        for (int j = 0; j < ncols_; ++j) {
            VStat st = stat_[uz(j)];
            if (st == VStat::Basic || lo_[uz(j)] == hi_[uz(j)]) continue;
            double d = (phase1 ? 0.0 : cost_[uz(j)]) - col_dot(j, y);
            int dj = 0;
            if (st == VStat::AtLower && d < -opt_.opt_tol)
                dj = 1;
            else if (st == VStat::AtUpper && d > opt_.opt_tol)
                dj = -1;
            else if (st == VStat::FreeZero && std::abs(d) > opt_.opt_tol)
                dj = d < 0 ? 1 : -1;
            if (!dj) continue;
            if (bland_) {
                dir = dj;
                return j;
            }
            double score = d * d / devex_[uz(j)];
            if (score > best_score * (1.0 + 1e-12)) {
                best_score = score;
                best = j;
                best_dir = dj;
            }
        }
        dir = best_dir;
        return best;
    }

    // pivot row over the nonbasic columns, for the Devex weight update
    void devex_update(int q, int leave_row, const std::vector<double>& alpha) {
        double aq = alpha[uz(leave_row)];
        if (aq == 0.0) return;
        std::vector<double> rho(uz(m_), 0.0);
        rho[uz(leave_row)] = 1.0;
        btran(rho);
        double wq = devex_[uz(q)];
        double big = 0.0;
        for (int j = 0; j < ncols_; ++j) {
            if (stat_[uz(j)] == VStat::Basic || j == q) continue;
            double arj = col_dot(j, rho);
            if (arj == 0.0) continue;
            double cand = (arj / aq) * (arj / aq) * wq;
            if (cand > devex_[uz(j)]) devex_[uz(j)] = cand;
            big = std::max(big, devex_[uz(j)]);
        }
        int jl = basic_[uz(leave_row)];  // still the leaving column here
        devex_[uz(jl)] = std::max(wq / (aq * aq), 1.0);
        if (big > 1e8) devex_.assign(uz(ncols_), 1.0);  // reset the reference framework
    }

    struct Ratio {
        int row = -1;  // -1: entering flips to its other bound, -2: unbounded
        double theta = kInf;
        double target = 0.0;
        bool to_upper = false;
    };

    // two-pass Harris ratio test: find the relaxed minimum step first, then take
    // the largest pivot among blockers within it
    Ratio ratio_test(int q, int dir, const std::vector<double>& alpha, bool phase1) const {
        Ratio r;
        double flip = hi_[uz(q)] - lo_[uz(q)];
        const double piv_tol = 1e-10;
        struct Cand {
            int row;
            double step;
            double mag;
            double bound;
            bool to_upper;
        };
        std::vector<Cand> cands;
        cands.reserve(16);
        double theta_rel = std::isfinite(flip) ? flip : kInf;
        for (int i = 0; i < m_; ++i) {
            double a = alpha[uz(i)] * dir;
            if (std::abs(a) < piv_tol) continue;
            int j = basic_[uz(i)];
            double v = x_[uz(j)];
            double tol = btol_[uz(j)];
            double bound;
            if (a > 0) {  // this basic decreases
                if (phase1 && v > hi_[uz(j)] + tol)
                    bound = hi_[uz(j)];
                else if (v >= lo_[uz(j)] - tol)
                    bound = lo_[uz(j)];
                else
                    continue;  // below lower and moving further down: no breakpoint
            } else {
                if (phase1 && v < lo_[uz(j)] - tol)
                    bound = lo_[uz(j)];
                else if (v <= hi_[uz(j)] + tol)
                    bound = hi_[uz(j)];
                else
                    continue;
            }
            if (!std::isfinite(bound)) continue;
            double step = (v - bound) / a;
            if (step < 0.0) step = 0.0;
            double relaxed = step + tol / std::abs(a);
            theta_rel = std::min(theta_rel, relaxed);
            cands.push_back({i, step, std::abs(alpha[uz(i)]), bound,
                             bound == hi_[uz(j)] && std::isfinite(hi_[uz(j)])});
        }
        if (!std::isfinite(theta_rel)) {
            r.row = -2;
            return r;
        }
        if (std::isfinite(flip) && flip <= theta_rel) {
            bool flip_ok = true;
            for (const auto& c : cands) flip_ok &= c.step >= flip;
            if (flip_ok) {
                r.row = -1;
                r.theta = flip;
                return r;
            }
        }
        int pick = -1;
        for (size_t k = 0; k < cands.size(); ++k) {
            const Cand& c = cands[k];
            if (c.step > theta_rel) continue;
            if (pick < 0) {
                pick = static_cast<int>(k);
                continue;
            }
            const Cand& best = cands[static_cast<size_t>(pick)];
            bool better = bland_ ? basic_[uz(c.row)] < basic_[uz(best.row)] : c.mag > best.mag;
            if (better) pick = static_cast<int>(k);
        }
        if (pick < 0) {  // numerical corner: fall back to the plain minimum
            double best_step = kInf;
            for (size_t k = 0; k < cands.size(); ++k)
                if (cands[k].step < best_step) {
                    best_step = cands[k].step;
                    pick = static_cast<int>(k);
                }
        }
        if (pick < 0) {
            r.row = std::isfinite(flip) ? -1 : -2;
            r.theta = flip;
            return r;
        }
        const Cand& c = cands[static_cast<size_t>(pick)];
        r.row = c.row;
        r.theta = c.step;
        r.target = c.bound;
        r.to_upper = c.to_upper;
        return r;
    }

    void apply_pivot(int q, int dir, const std::vector<double>& alpha, const Ratio& rr) {
        if (rr.theta != 0.0) {
            for (int i = 0; i < m_; ++i) {
                double a = alpha[uz(i)];
                if (a != 0.0) x_[uz(basic_[uz(i)])] -= rr.theta * dir * a;
            }
        }
        double xq = x_[uz(q)] + rr.theta * dir;
        if (rr.row < 0) {  // bound flip
            x_[uz(q)] = xq;
            stat_[uz(q)] = dir > 0 ? VStat::AtUpper : VStat::AtLower;
            return;
        }
        int jl = basic_[uz(rr.row)];
        x_[uz(jl)] = rr.target;
        stat_[uz(jl)] = rr.to_upper ? VStat::AtUpper : VStat::AtLower;
        basic_pos_[uz(jl)] = -1;
        basic_[uz(rr.row)] = q;
        basic_pos_[uz(q)] = rr.row;
        stat_[uz(q)] = VStat::Basic;
        x_[uz(q)] = xq;
        Eta e;
        e.row = rr.row;
        e.pivot = alpha[uz(rr.row)];
        for (int i = 0; i < m_; ++i)
            if (alpha[uz(i)] != 0.0) e.col.emplace_back(i, alpha[uz(i)]);
        etas_.push_back(std::move(e));
    }

    PhaseEnd iterate(bool phase1, std::string& note, long cap) {
        std::vector<double> y(uz(m_)), alpha(uz(m_));
        while (true) {
            if (phase1 && total_infeasibility() <= feas_threshold()) return PhaseEnd::Goal;
            if (iters_ >= cap) {
                note = "iteration limit";
                return PhaseEnd::Limit;
            }
            if (static_cast<int>(etas_.size()) >= opt_.refactor_every) {
                if (!factorize()) {
                    note = "singular basis";
                    return PhaseEnd::Limit;
                }
                compute_basics();
            }
            if (phase1) {
                y.assign(uz(m_), 0.0);
                for (int i = 0; i < m_; ++i) {
                    int j = basic_[uz(i)];
                    if (x_[uz(j)] < lo_[uz(j)] - btol_[uz(j)])
                        y[uz(i)] = -1.0;
                    else if (x_[uz(j)] > hi_[uz(j)] + btol_[uz(j)])
                        y[uz(i)] = 1.0;
                }
            } else {
                for (int i = 0; i < m_; ++i) y[uz(i)] = cost_[uz(basic_[uz(i)])];
            }
            btran(y);
            int dir = 0;
            int q = price(y, phase1, dir);
            if (q < 0) {
                if (!phase1) return PhaseEnd::Goal;
                return total_infeasibility() <= 1e-7 * (1.0 + static_cast<double>(m_))
                           ? PhaseEnd::Goal
                           : PhaseEnd::Infeasible;
            }
            std::fill(alpha.begin(), alpha.end(), 0.0);
            for (const auto& [r, a] : cols_[uz(q)]) alpha[uz(r)] = a;
            ftran(alpha);
            Ratio rr = ratio_test(q, dir, alpha, phase1);
            if (rr.row == -2) {
                if (phase1) {
                    note = "phase-1 numerical failure";
                    return PhaseEnd::Limit;
                }
                return PhaseEnd::Unbounded;
            }
            if (rr.row >= 0 && std::abs(alpha[uz(rr.row)]) < 1e-9 && !etas_.empty()) {
                if (!factorize()) {
                    note = "singular basis";
                    return PhaseEnd::Limit;
                }
                compute_basics();
                continue;  // re-price against the clean factorization
            }
            if (rr.row >= 0 && !bland_) devex_update(q, rr.row, alpha);
            apply_pivot(q, dir, alpha, rr);
            ++iters_;
            if (rr.theta <= 1e-12) {
                if (++degen_streak_ > 10L * (m_ + ncols_)) bland_ = true;
            } else {
                degen_streak_ = 0;
                bland_ = false;
            }
        }
    }

    void finalize(LpOutcome& out, bool check) {
        if (factor_ok_) {
            factorize();
            compute_basics();
        }
        out.iterations = iters_;
        out.x.assign(x_.begin(), x_.end());
        std::vector<double> y(uz(m_));
        for (int i = 0; i < m_; ++i) y[uz(i)] = cost_[uz(basic_[uz(i)])];
        btran(y);
        out.y = y;
        out.dj.resize(uz(ncols_));
        for (int j = 0; j < ncols_; ++j) out.dj[uz(j)] = cost_[uz(j)] - col_dot(j, y);
        double obj = 0.0;
        for (int j = 0; j < n_; ++j) obj += cost_[uz(j)] * x_[uz(j)];
        out.objective = obj;
        double res = 0.0;
        for (int j = 0; j < ncols_; ++j) {
            double v = infeas_of(j);
            if (v == 0.0) continue;
            double s = 1.0;
            if (std::isfinite(lo_[uz(j)])) s = std::max(s, std::abs(lo_[uz(j)]));
            if (std::isfinite(hi_[uz(j)])) s = std::max(s, std::abs(hi_[uz(j)]));
            res = std::max(res, v / s);
        }
        out.primal_residual = res;
        if (check && out.status == LpStatus::Optimal && res > 1e-7) {
            out.status = LpStatus::Limit;
            out.note = "primal residual above tolerance";
        }
    }
};

}  // namespace

LpOutcome LpProblem::solve(const LpOptions& opt) const {
    if (n_rows() == 0) {
        LpOutcome out;
        out.status = LpStatus::Optimal;
        out.x.resize(static_cast<size_t>(n_cols()));
        for (int j = 0; j < n_cols(); ++j) {
            double c = cost_[static_cast<size_t>(j)];
            double v;
            if (c > 0)
                v = col_lo_[static_cast<size_t>(j)];
            else if (c < 0)
                v = col_hi_[static_cast<size_t>(j)];
            else
                v = std::isfinite(col_lo_[static_cast<size_t>(j)]) ? col_lo_[static_cast<size_t>(j)] : 0.0;
            if (!std::isfinite(v)) {
                out.status = LpStatus::Unbounded;
                v = 0.0;
            }
            out.x[static_cast<size_t>(j)] = v;
            out.objective += c * v;
        }
        return out;
    }
    Simplex s(*this, opt);
    return s.solve();
}

}  // namespace ucb
