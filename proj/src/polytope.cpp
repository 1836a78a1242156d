#include "ucb/polytope.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ucb::lab {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Verified: return "verified";
        case Verdict::Falsified: return "falsified";
        default: return "inconclusive";
    }
}

std::uint64_t LabRng::next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

long LabRng::below(long n) { return static_cast<long>(next() % static_cast<std::uint64_t>(n)); }

bool state_feasible(const ThreePeriodState& st, UnitClass cls) {
    if (cls == UnitClass::J1) return true;
    // t_on = 2: s_t + s_{t+1} <= u_{t+1}
    if (st.s_t + st.s_next > st.u_next) return false;
    if (cls == UnitClass::Jge2Off2 && st.d_t + st.d_next > 1 - st.u_next) return false;
    return true;
}

namespace {

bool params_degenerate(const QParams& p) {
    std::vector<Rat> vals = {p.start,          p.shut,          p.up,
                             p.down,           p.start - p.up,  p.shut - p.down,
                             p.start - p.shut, p.up - p.shut,   p.down - p.start,
                             p.up - p.down,    p.start - p.down, p.shut - p.up};
    for (const Rat& v : {p.start, p.shut, p.up, p.down})
        if (v <= 0 || v >= 1) return true;
    for (size_t i = 4; i < vals.size(); ++i)
        if (vals[i] == 0) return true;
    return false;
}

}  // namespace

QParams draw_params(LabRng& rng, UnitClass cls) {
    // small-denominator rationals in the assumed regime: composites stay < 1
    for (int attempt = 0; attempt < 200; ++attempt) {
        const long den = 64 + rng.below(64);  // denominators in [64, 127]
        auto frac = [&](long lo_num, long hi_num) {
            return Rat(BigInt(lo_num + rng.below(hi_num - lo_num + 1)), BigInt(den));
        };
        QParams p;
        p.up = frac(den / 8, den / 2 - 2);        // in (0, 1/2)
        p.down = frac(den / 8, den / 2 - 2);
        long up_num = static_cast<long>(numerator(p.up));
        long dn_num = static_cast<long>(numerator(p.down));
        p.start = Rat(BigInt(2 + rng.below(den - up_num - 3)), BigInt(den));
        p.shut = Rat(BigInt(2 + rng.below(den - dn_num - 3)), BigInt(den));
        p.csu = p.start + p.up;
        p.csd = p.shut + p.down;
        p.c2u = 2 * p.up;
        p.c2d = 2 * p.down;
        p.pmin_ratio = Rat(BigInt(1 + rng.below(den / 2)), BigInt(den));
        p.j1 = cls == UnitClass::J1;
        p.off2 = cls == UnitClass::Jge2Off2;
        if (p.csu >= 1 || p.csd >= 1 || p.c2u >= 1 || p.c2d >= 1) continue;
        if (params_degenerate(p)) continue;
        return p;
    }
    throw std::runtime_error("draw_params: no non-degenerate draw found");
}

std::string params_str(const QParams& p) {
    std::ostringstream os;
    os << "start=" << rat_str(p.start) << " shut=" << rat_str(p.shut) << " up=" << rat_str(p.up)
       << " down=" << rat_str(p.down) << (p.j1 ? " J1" : " J>=2") << (p.off2 ? " off2" : "");
    return os.str();
}

// ---------------------------------------------------------------------------
// exact two-phase simplex (dense, Bland's rule)
// ---------------------------------------------------------------------------

int RatLp::add_var(const Rat& lo, const Rat& hi, bool unbounded_above) {
    lo_.push_back(lo);
    hi_.push_back(hi);
    hi_inf_.push_back(unbounded_above ? 1 : 0);
    obj_.push_back(Rat(0));
    return static_cast<int>(lo_.size()) - 1;
}

void RatLp::add_row(const std::vector<std::pair<int, Rat>>& terms, Sense sense, const Rat& rhs) {
    rows_.push_back(terms);
    sense_.push_back(sense);
    rhs_.push_back(rhs);
}

void RatLp::set_objective(int var, const Rat& coef) { obj_[static_cast<size_t>(var)] = coef; }

RatLp::Out RatLp::maximize() const {
    const int nv = static_cast<int>(lo_.size());
    // shifted variables x = lo + x'; finite uppers become rows
    std::vector<std::vector<Rat>> A;
    std::vector<Rat> b;
    std::vector<int> kind;  // 0: <=, 1: =, 2: >=
    auto shift_row = [&](const std::vector<std::pair<int, Rat>>& terms, const Rat& rhs) {
        std::vector<Rat> a(static_cast<size_t>(nv), Rat(0));
        Rat r = rhs;
        for (const auto& [j, c] : terms) {
            a[static_cast<size_t>(j)] += c;
            r -= c * lo_[static_cast<size_t>(j)];
        }
        b.push_back(r);
        return a;
    };
    for (size_t i = 0; i < rows_.size(); ++i) {
        A.push_back(shift_row(rows_[i], rhs_[i]));
        kind.push_back(sense_[i] == Sense::LE ? 0 : (sense_[i] == Sense::EQ ? 1 : 2));
    }
    for (int j = 0; j < nv; ++j) {
        if (hi_inf_[static_cast<size_t>(j)]) continue;
        std::vector<Rat> a(static_cast<size_t>(nv), Rat(0));
        a[static_cast<size_t>(j)] = 1;
        A.push_back(std::move(a));
        b.push_back(hi_[static_cast<size_t>(j)] - lo_[static_cast<size_t>(j)]);
        kind.push_back(0);
    }
    const int m = static_cast<int>(A.size());
    // normalize rhs >= 0
    for (int i = 0; i < m; ++i) {
        if (b[static_cast<size_t>(i)] < 0) {
            for (auto& v : A[static_cast<size_t>(i)]) v = -v;
            b[static_cast<size_t>(i)] = -b[static_cast<size_t>(i)];
            if (kind[static_cast<size_t>(i)] == 0) kind[static_cast<size_t>(i)] = 2;
            else if (kind[static_cast<size_t>(i)] == 2) kind[static_cast<size_t>(i)] = 0;
        }
    }
    // columns: nv structural + slacks/surplus + artificials
    int n_slack = 0, n_art = 0;
    for (int i = 0; i < m; ++i) {
        if (kind[static_cast<size_t>(i)] != 1) ++n_slack;
        if (kind[static_cast<size_t>(i)] != 0) ++n_art;
    }
    const int ncols = nv + n_slack + n_art;
    std::vector<std::vector<Rat>> T(static_cast<size_t>(m), std::vector<Rat>(static_cast<size_t>(ncols) + 1, Rat(0)));
    std::vector<int> basis(static_cast<size_t>(m), -1);
    int scol = nv, acol = nv + n_slack;
    std::vector<char> is_art(static_cast<size_t>(ncols), 0);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < nv; ++j) T[static_cast<size_t>(i)][static_cast<size_t>(j)] = A[static_cast<size_t>(i)][static_cast<size_t>(j)];
        T[static_cast<size_t>(i)][static_cast<size_t>(ncols)] = b[static_cast<size_t>(i)];
        if (kind[static_cast<size_t>(i)] == 0) {
            T[static_cast<size_t>(i)][static_cast<size_t>(scol)] = 1;
            basis[static_cast<size_t>(i)] = scol++;
        } else if (kind[static_cast<size_t>(i)] == 2) {
            T[static_cast<size_t>(i)][static_cast<size_t>(scol)] = -1;
            ++scol;
            T[static_cast<size_t>(i)][static_cast<size_t>(acol)] = 1;
            is_art[static_cast<size_t>(acol)] = 1;
            basis[static_cast<size_t>(i)] = acol++;
        } else {
            T[static_cast<size_t>(i)][static_cast<size_t>(acol)] = 1;
            is_art[static_cast<size_t>(acol)] = 1;
            basis[static_cast<size_t>(i)] = acol++;
        }
    }

    auto pivot = [&](int pr, int pc) {
        Rat pv = T[static_cast<size_t>(pr)][static_cast<size_t>(pc)];
        for (auto& v : T[static_cast<size_t>(pr)]) v /= pv;
        for (int i = 0; i < m; ++i) {
            if (i == pr) continue;
            Rat f = T[static_cast<size_t>(i)][static_cast<size_t>(pc)];
            if (f == 0) continue;
            for (int j = 0; j <= ncols; ++j)
                T[static_cast<size_t>(i)][static_cast<size_t>(j)] -= f * T[static_cast<size_t>(pr)][static_cast<size_t>(j)];
        }
        basis[static_cast<size_t>(pr)] = pc;
    };

    // Bland: entering = lowest index with positive reduced cost (maximization)
    auto simplex_loop = [&](const std::vector<Rat>& c) -> int {
        while (true) {
            std::vector<Rat> y(static_cast<size_t>(m));
            for (int i = 0; i < m; ++i) y[static_cast<size_t>(i)] = c[static_cast<size_t>(basis[static_cast<size_t>(i)])];
            int enter = -1;
            for (int j = 0; j < ncols; ++j) {
                Rat red = c[static_cast<size_t>(j)];
                for (int i = 0; i < m; ++i)
                    if (y[static_cast<size_t>(i)] != 0)
                        red -= y[static_cast<size_t>(i)] * T[static_cast<size_t>(i)][static_cast<size_t>(j)];
                if (red > 0) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) return 0;  // optimal
            int leave = -1;
            Rat best;
            for (int i = 0; i < m; ++i) {
                const Rat& a = T[static_cast<size_t>(i)][static_cast<size_t>(enter)];
                if (a <= 0) continue;
                Rat ratio = T[static_cast<size_t>(i)][static_cast<size_t>(ncols)] / a;
                if (leave < 0 || ratio < best ||
                    (ratio == best && basis[static_cast<size_t>(i)] < basis[static_cast<size_t>(leave)])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave < 0) return 1;  // unbounded
            pivot(leave, enter);
        }
    };

    Out out;
    if (n_art > 0) {
        std::vector<Rat> c1(static_cast<size_t>(ncols), Rat(0));
        for (int j = 0; j < ncols; ++j)
            if (is_art[static_cast<size_t>(j)]) c1[static_cast<size_t>(j)] = Rat(-1);
        simplex_loop(c1);  // phase-1 objective is bounded above by 0
        Rat inf_sum(0);
        for (int i = 0; i < m; ++i)
            if (is_art[static_cast<size_t>(basis[static_cast<size_t>(i)])])
                inf_sum += T[static_cast<size_t>(i)][static_cast<size_t>(ncols)];
        if (inf_sum != 0) {
            out.status = Status::Infeasible;
            return out;
        }
        // drive residual artificials out of the basis (or drop redundant rows)
        for (int i = 0; i < m; ++i) {
            if (!is_art[static_cast<size_t>(basis[static_cast<size_t>(i)])]) continue;
            int pc = -1;
            for (int j = 0; j < ncols && pc < 0; ++j)
                if (!is_art[static_cast<size_t>(j)] && T[static_cast<size_t>(i)][static_cast<size_t>(j)] != 0) pc = j;
            if (pc >= 0) pivot(i, pc);
        }
    }
    std::vector<Rat> c2(static_cast<size_t>(ncols), Rat(0));
    for (int j = 0; j < nv; ++j) c2[static_cast<size_t>(j)] = obj_[static_cast<size_t>(j)];
    for (int j = 0; j < ncols; ++j)
        if (is_art[static_cast<size_t>(j)]) c2[static_cast<size_t>(j)] = Rat(-1000000);  // keep artificials at zero
    int rc = simplex_loop(c2);
    if (rc == 1) {
        out.status = Status::Unbounded;
        return out;
    }
    out.status = Status::Optimal;
    out.x.assign(static_cast<size_t>(nv), Rat(0));
    for (int i = 0; i < m; ++i)
        if (basis[static_cast<size_t>(i)] < nv)
            out.x[static_cast<size_t>(basis[static_cast<size_t>(i)])] = T[static_cast<size_t>(i)][static_cast<size_t>(ncols)];
    out.value = Rat(0);
    for (int j = 0; j < nv; ++j) {
        out.x[static_cast<size_t>(j)] += lo_[static_cast<size_t>(j)];
        out.value += obj_[static_cast<size_t>(j)] * out.x[static_cast<size_t>(j)];
    }
    return out;
}

// ---------------------------------------------------------------------------
// double description
// ---------------------------------------------------------------------------

namespace {

using IVec = std::vector<BigInt>;

void gcd_reduce(IVec& v) {
    BigInt g(0);
    for (const auto& e : v) g = boost::multiprecision::gcd(g, e);
    if (g > 1)
        for (auto& e : v) e /= g;
}

struct Mask {
    std::array<std::uint64_t, 3> w{0, 0, 0};
    void set(int bit) { w[static_cast<size_t>(bit >> 6)] |= 1ULL << (bit & 63); }
    Mask operator&(const Mask& o) const {
        Mask r;
        for (int k = 0; k < 3; ++k) r.w[static_cast<size_t>(k)] = w[static_cast<size_t>(k)] & o.w[static_cast<size_t>(k)];
        return r;
    }
    bool subset_of(const Mask& o) const {
        for (int k = 0; k < 3; ++k)
            if (w[static_cast<size_t>(k)] & ~o.w[static_cast<size_t>(k)]) return false;
        return true;
    }
    int popcount() const {
        int c = 0;
        for (int k = 0; k < 3; ++k) c += __builtin_popcountll(w[static_cast<size_t>(k)]);
        return c;
    }
    bool operator==(const Mask&) const = default;
};

}  // namespace

DDResult dd_vertices(int dim, const std::vector<std::vector<BigInt>>& in_rows,
                     std::size_t max_generators) {
    DDResult res;
    if (static_cast<int>(in_rows.size()) + dim + 1 > 192) {
        res.note = "too many rows for the activity masks";
        return res;
    }
    if (dim > 30) {
        res.note = "dimension guard (> 30 variables refused)";
        return res;
    }
    // initial simplex: x_k >= -1, sum x <= M
    const long M = 4 * dim + 4;
    std::vector<IVec> rows;
    for (int k = 0; k < dim; ++k) {
        IVec r(static_cast<size_t>(dim) + 1, BigInt(0));
        r[static_cast<size_t>(k)] = -1;
        r[static_cast<size_t>(dim)] = -1;
        rows.push_back(std::move(r));
    }
    {
        IVec r(static_cast<size_t>(dim) + 1, BigInt(1));
        r[static_cast<size_t>(dim)] = BigInt(-M);
        rows.push_back(std::move(r));
    }
    const int n_simplex_rows = static_cast<int>(rows.size());
    for (const auto& r : in_rows) rows.push_back(r);

    struct Gen {
        IVec v;
        Mask act;
    };
    std::vector<Gen> gens;
    {
        Gen corner;
        corner.v.assign(static_cast<size_t>(dim) + 1, BigInt(-1));
        corner.v[static_cast<size_t>(dim)] = 1;
        gens.push_back(std::move(corner));
        for (int j = 0; j < dim; ++j) {
            Gen g;
            g.v.assign(static_cast<size_t>(dim) + 1, BigInt(-1));
            g.v[static_cast<size_t>(j)] = BigInt(M + dim - 1);
            g.v[static_cast<size_t>(dim)] = 1;
            gens.push_back(std::move(g));
        }
    }
    auto dot = [&](const IVec& r, const IVec& v) {
        BigInt s(0);
        for (size_t k = 0; k < r.size(); ++k)
            if (r[k] != 0) s += r[k] * v[k];
        return s;
    };
    std::vector<char> processed(rows.size(), 0);
    std::vector<int> proc_rows;  // processed-bit order -> row index
    int n_processed = 0;
    // seed masks with the simplex rows
    for (int ri = 0; ri < n_simplex_rows; ++ri) {
        for (auto& g : gens)
            if (dot(rows[static_cast<size_t>(ri)], g.v) == 0) g.act.set(n_processed);
        processed[static_cast<size_t>(ri)] = 1;
        proc_rows.push_back(ri);
        ++n_processed;
    }

    std::vector<BigInt> dots(gens.size());
    while (true) {
        // maxcutoff: pick the unprocessed row violated by the most generators
        int pick = -1;
        size_t best_cut = 0;
        for (size_t ri = 0; ri < rows.size(); ++ri) {
            if (processed[ri]) continue;
            size_t cut = 0;
            for (const auto& g : gens)
                if (dot(rows[ri], g.v) > 0) ++cut;
            if (pick < 0 || cut > best_cut) {
                pick = static_cast<int>(ri);
                best_cut = cut;
            }
        }
        if (pick < 0) break;
        const IVec& row = rows[static_cast<size_t>(pick)];
        dots.resize(gens.size());
        for (size_t g = 0; g < gens.size(); ++g) dots[g] = dot(row, gens[g].v);
        std::vector<Gen> next;
        std::vector<size_t> plus, minus;
        for (size_t g = 0; g < gens.size(); ++g) {
            if (dots[g] > 0) plus.push_back(g);
            else minus.push_back(g);
        }
        if (!plus.empty()) {
            for (size_t g : minus) next.push_back(gens[g]);
            // combine adjacent (violating, kept) pairs onto the hyperplane
            for (size_t gu : plus) {
                for (size_t gv : minus) {
                    if (dots[gv] == 0) continue;
                    Mask common = gens[gu].act & gens[gv].act;
                    if (common.popcount() < dim - 2) continue;
                    bool adjacent = true;
                    for (size_t gw = 0; gw < gens.size() && adjacent; ++gw) {
                        if (gw == gu || gw == gv) continue;
                        if (common.subset_of(gens[gw].act)) adjacent = false;
                    }
                    if (!adjacent) continue;
                    Gen w;
                    w.v.assign(static_cast<size_t>(dim) + 1, BigInt(0));
                    const BigInt& du = dots[gu];
                    BigInt dv = -dots[gv];
                    for (size_t k = 0; k <= static_cast<size_t>(dim); ++k)
                        w.v[k] = du * gens[gv].v[k] + dv * gens[gu].v[k];
                    gcd_reduce(w.v);
                    // the true active set can exceed the parents' intersection;
                    // the adjacency test needs it exact, so recompute
                    for (int k = 0; k < n_processed; ++k)
                        if (dot(rows[static_cast<size_t>(proc_rows[static_cast<size_t>(k)])], w.v) == 0)
                            w.act.set(k);
                    next.push_back(std::move(w));
                    if (next.size() > max_generators) {
                        res.note = "generator budget exceeded";
                        return res;
                    }
                }
            }
            gens = std::move(next);
            // dedupe (identical gcd-reduced vectors can arise from multiple pairs)
            std::sort(gens.begin(), gens.end(), [](const Gen& a, const Gen& b) { return a.v < b.v; });
            gens.erase(std::unique(gens.begin(), gens.end(),
                                   [](const Gen& a, const Gen& b) { return a.v == b.v; }),
                       gens.end());
        }
        // mark activity on the new row
        for (auto& g : gens)
            if (dot(row, g.v) == 0) g.act.set(n_processed);
        processed[static_cast<size_t>(pick)] = 1;
        proc_rows.push_back(pick);
        ++n_processed;
        if (gens.empty()) break;  // infeasible system
    }
    // reject generators clipped by the artificial simplex
    for (const auto& g : gens) {
        for (int ri = 0; ri < n_simplex_rows; ++ri) {
            bool active = true;
            // re-evaluate: cheaper than tracking bits for the simplex rows
            active = dot(rows[static_cast<size_t>(ri)], g.v) == 0;
            if (active) {
                res.note = "polytope touches the bounding simplex (unbounded input?)";
                return res;
            }
        }
    }
    res.vertices.reserve(gens.size());
    for (auto& g : gens) {
        if (g.v[static_cast<size_t>(dim)] <= 0) {
            res.note = "non-vertex generator encountered";
            return res;
        }
        res.vertices.push_back(g.v);
    }
    res.ok = true;
    return res;
}

// ---------------------------------------------------------------------------
// Table I / base-vector identities
// ---------------------------------------------------------------------------

PolytopeReport check_base_relations() {
    PolytopeReport rep;
    rep.check = "base-relations";
    auto states = enumerate_states();
    auto fail = [&](const std::string& w) {
        rep.verdict = Verdict::Falsified;
        rep.witness = w;
        return rep;
    };
    for (const auto& st : states) {
        std::string tag = std::to_string(st.u_prev) + std::to_string(st.u_t) + std::to_string(st.u_next);
        if (st.f_t != 1 - st.s_t - st.u_prev) return fail("eq39 at state " + tag);
        if (st.j[4] != st.s_t - st.u_t + st.u_prev - st.s_next + st.j[1]) return fail("eq40a at " + tag);
        if (st.j[4] != st.d_t - st.s_next + st.j[1]) return fail("eq40b at " + tag);
        if (st.j[3] != st.s_t - st.j[2]) return fail("eq41 at " + tag);
        if (st.j[6] != st.s_next - st.u_next + st.u_t - st.j[2]) return fail("eq42a at " + tag);
        if (st.j[6] != st.d_next - st.j[2]) return fail("eq42b at " + tag);
        if (st.j[7] != -st.s_t - st.s_next + st.u_next + st.j[2]) return fail("eq43a at " + tag);
        if (st.j[7] != st.u_t - st.s_t - st.d_next + st.j[2]) return fail("eq43b at " + tag);
        int jsum = 0;
        for (int v : st.j) jsum += v;
        if (jsum != 1) return fail("state indicator sum at " + tag);
    }
    // base columns {u_{t-1}, u_t, u_{t+1}, s_t, s_{t+1}, J2, J3, e} span rank 8
    RatMat m;
    for (const auto& st : states)
        m.push_back({Rat(st.u_prev), Rat(st.u_t), Rat(st.u_next), Rat(st.s_t), Rat(st.s_next),
                     Rat(st.j[1]), Rat(st.j[2]), Rat(1)});
    if (rat_rank(m) != 8) return fail("base columns rank != 8");
    rep.verdict = Verdict::Verified;
    rep.notes = "eq39-eq43 hold on all 8 states; base rank 8";
    return rep;
}

// ---------------------------------------------------------------------------
// per-state regions and facet machinery
// ---------------------------------------------------------------------------

namespace {

struct Row3 {
    std::array<Rat, 3> a;
    Rat rhs;
};

// Table I box plus (mode C) the Table III difference rows
std::vector<Row3> state_region_rows(const ThreePeriodState& st, const QParams& p, SetMode mode) {
    std::vector<Row3> rows;
    auto ub = ub_power(st, p, /*whole_ramping=*/mode == SetMode::B ? true : true);
    for (int k = 0; k < 3; ++k) {
        Row3 lo{{Rat(0), Rat(0), Rat(0)}, Rat(0)};
        lo.a[static_cast<size_t>(k)] = -1;
        rows.push_back(lo);
        Row3 hi{{Rat(0), Rat(0), Rat(0)}, ub[static_cast<size_t>(k)]};
        hi.a[static_cast<size_t>(k)] = 1;
        rows.push_back(hi);
    }
    if (mode == SetMode::C) {
        auto d = ub_diffs(st, p);
        auto add = [&](int pos, int neg, const Rat& bound) {
            Row3 r{{Rat(0), Rat(0), Rat(0)}, bound};
            r.a[static_cast<size_t>(pos)] = 1;
            r.a[static_cast<size_t>(neg)] = -1;
            rows.push_back(r);
        };
        add(1, 0, d[0]);  // p_t - p_prev
        add(1, 2, d[1]);  // p_t - p_next
        add(2, 1, d[2]);  // p_next - p_t
        add(0, 1, d[3]);  // p_prev - p_t
        add(2, 0, d[4]);  // p_next - p_prev
        add(0, 2, d[5]);  // p_prev - p_next
    }
    return rows;
}

std::vector<std::array<Rat, 3>> region_vertices(const std::vector<Row3>& rows) {
    std::vector<std::array<Rat, 3>> out;
    const int n = static_cast<int>(rows.size());
    auto feasible = [&](const std::array<Rat, 3>& x) {
        for (const auto& r : rows) {
            Rat v = r.a[0] * x[0] + r.a[1] * x[1] + r.a[2] * x[2];
            if (v > r.rhs) return false;
        }
        return true;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                const auto &r1 = rows[static_cast<size_t>(i)], &r2 = rows[static_cast<size_t>(j)],
                           &r3 = rows[static_cast<size_t>(k)];
                Rat det = r1.a[0] * (r2.a[1] * r3.a[2] - r2.a[2] * r3.a[1]) -
                          r1.a[1] * (r2.a[0] * r3.a[2] - r2.a[2] * r3.a[0]) +
                          r1.a[2] * (r2.a[0] * r3.a[1] - r2.a[1] * r3.a[0]);
                if (det == 0) continue;
                auto cram = [&](int col) {
                    std::array<std::array<Rat, 3>, 3> m{{r1.a, r2.a, r3.a}};
                    m[0][static_cast<size_t>(col)] = r1.rhs;
                    m[1][static_cast<size_t>(col)] = r2.rhs;
                    m[2][static_cast<size_t>(col)] = r3.rhs;
                    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
                };
                std::array<Rat, 3> x{cram(0) / det, cram(1) / det, cram(2) / det};
                if (feasible(x) && std::find(out.begin(), out.end(), x) == out.end())
                    out.push_back(x);
            }
    return out;
}

RatVec make_point(const ThreePeriodState& st, const std::array<Rat, 3>& powers, bool j1) {
    RatVec x(WDim);
    x[WPprev] = powers[0];
    x[WPt] = powers[1];
    x[WPnext] = powers[2];
    x[WUprev] = st.u_prev;
    x[WUt] = st.u_t;
    x[WUnext] = st.u_next;
    x[WSt] = st.s_t;
    x[WSnext] = st.s_next;
    x[WDt] = st.d_t;
    x[WDnext] = st.d_next;
    x[WJ3] = j1 ? st.j[2] : 0;
    return x;
}

std::array<Rat, WDim> to_coords(const RatVec& x) {
    std::array<Rat, WDim> c;
    for (int k = 0; k < WDim; ++k) c[static_cast<size_t>(k)] = x[static_cast<size_t>(k)];
    return c;
}

RatMat integer_state_vertices(const QParams& p, UnitClass cls, SetMode mode) {
    RatMat pts;
    for (const auto& st : enumerate_states()) {
        if (!state_feasible(st, cls)) continue;
        auto rows = state_region_rows(st, p, mode);
        for (const auto& v : region_vertices(rows)) pts.push_back(make_point(st, v, cls == UnitClass::J1));
    }
    return pts;
}

std::string point_str(const RatVec& x) {
    std::string s = "(";
    for (size_t k = 0; k < x.size(); ++k) {
        if (k) s += ", ";
        s += rat_str(x[k]);
    }
    return s + ")";
}

}  // namespace

int dim_target(UnitClass cls) { return cls == UnitClass::J1 ? 9 : 8; }

PolytopeReport validate_inequality(const QIneq& q, const QParams& p, UnitClass cls, SetMode mode) {
    PolytopeReport rep;
    rep.check = "validate:" + q.tag;
    rep.params = params_str(p);
    for (const auto& st : enumerate_states()) {
        if (!state_feasible(st, cls)) continue;
        // constant part of lhs-rhs at this state's binaries
        RatVec base = make_point(st, {Rat(0), Rat(0), Rat(0)}, cls == UnitClass::J1);
        Rat c0 = q.lhs_minus_rhs(to_coords(base));
        RatLp lp;
        for (int k = 0; k < 3; ++k) lp.add_var(Rat(0), Rat(1));
        lp.set_objective(0, q.a[WPprev]);
        lp.set_objective(1, q.a[WPt]);
        lp.set_objective(2, q.a[WPnext]);
        for (const auto& r : state_region_rows(st, p, mode))
            lp.add_row({{0, r.a[0]}, {1, r.a[1]}, {2, r.a[2]}}, Sense::LE, r.rhs);
        auto out = lp.maximize();
        if (out.status != RatLp::Status::Optimal) {
            rep.verdict = Verdict::Inconclusive;
            rep.notes = "state region LP failed";
            return rep;
        }
        if (out.value + c0 > 0) {
            rep.verdict = Verdict::Falsified;
            RatVec w = make_point(st, {out.x[0], out.x[1], out.x[2]}, cls == UnitClass::J1);
            rep.witness = point_str(w);
            rep.notes = "violated at state " + std::to_string(st.u_prev) +
                        std::to_string(st.u_t) + std::to_string(st.u_next) +
                        " by " + rat_str(out.value + c0);
            return rep;
        }
    }
    rep.verdict = Verdict::Verified;
    return rep;
}

PolytopeReport certify_facet(const QIneq& q, const QParams& p, UnitClass cls, SetMode mode) {
    PolytopeReport rep;
    rep.check = "facet:" + q.tag;
    rep.params = params_str(p);
    PolytopeReport valid = validate_inequality(q, p, cls, mode);
    if (valid.verdict != Verdict::Verified) {
        rep.verdict = valid.verdict;
        rep.witness = valid.witness;
        rep.notes = "validity failed first: " + valid.notes;
        return rep;
    }
    RatMat pts = integer_state_vertices(p, cls, mode);
    int target = dim_target(cls);
    int dim = affine_independent_count(pts) - 1;
    if (dim != target) {
        if (params_degenerate(p)) {
            rep.verdict = Verdict::Inconclusive;
            rep.notes = "degenerate parameters: polytope dimension " + std::to_string(dim);
        } else {
            rep.verdict = Verdict::Falsified;
            rep.notes = "polytope dimension " + std::to_string(dim) + " != target " +
                        std::to_string(target);
        }
        return rep;
    }
    RatMat tight;
    for (const auto& x : pts)
        if (q.lhs_minus_rhs(to_coords(x)) == 0) tight.push_back(x);
    int afr = affine_independent_count(tight);
    if (afr == target) {
        rep.verdict = Verdict::Verified;
        rep.notes = std::to_string(tight.size()) + " tight vertices, " + std::to_string(afr) +
                    " affinely independent";
    } else if (params_degenerate(p)) {
        rep.verdict = Verdict::Inconclusive;
        rep.notes = "degenerate parameters: tight affine count " + std::to_string(afr);
    } else {
        rep.verdict = Verdict::Falsified;
        rep.notes = "tight set spans " + std::to_string(afr) + " < " + std::to_string(target) +
                    " affinely independent points";
    }
    return rep;
}

// ---------------------------------------------------------------------------
// T-period systems and hull integrality
// ---------------------------------------------------------------------------

namespace {

struct TSystem {
    int T = 3;
    bool j1 = true;
    int dim = 0;
    int p0 = 0, u0 = 0, s0 = 0, j30 = -1;  // variable block offsets
    std::vector<RatVec> rows;               // a.x <= b as (a..., -b) over dim+1
    std::vector<Rat> rhs;

    int pvar(int t) const { return p0 + t - 1; }
    int uvar(int t) const { return u0 + t - 1; }
    int svar(int t) const { return s0 + t - 2; }
    int j3var(int t) const { return j30 + t - 2; }

    void add(const std::map<int, Rat>& terms, const Rat& b) {
        RatVec a(static_cast<size_t>(dim), Rat(0));
        for (const auto& [k, v] : terms) a[static_cast<size_t>(k)] += v;
        rows.push_back(std::move(a));
        rhs.push_back(b);
    }

    // d_tau = s_tau - u_tau + u_{tau-1}
    void add_d(std::map<int, Rat>& terms, int tau, const Rat& coef) const = delete;
};

void acc_d(const TSystem& sys, std::map<int, Rat>& terms, int tau, const Rat& coef) {
    terms[sys.svar(tau)] += coef;
    terms[sys.uvar(tau)] -= coef;
    terms[sys.uvar(tau - 1)] += coef;
}

TSystem build_t_system(const QParams& p, UnitClass cls, SetMode mode, int T,
                       bool boundary_variant = false) {
    TSystem sys;
    sys.T = T;
    sys.j1 = cls == UnitClass::J1;
    sys.p0 = 0;
    sys.u0 = T;
    sys.s0 = 2 * T;
    sys.j30 = sys.j1 ? 3 * T - 1 : -1;
    sys.dim = 3 * T - 1 + (sys.j1 ? T - 2 : 0);
    const int t_on = sys.j1 ? 1 : 2;
    const int t_off = cls == UnitClass::Jge2Off2 ? 2 : 1;

    auto one = Rat(1);
    for (int t = 1; t <= T; ++t) {
        sys.add({{sys.pvar(t), Rat(-1)}}, Rat(0));       // p >= 0
        sys.add({{sys.uvar(t), Rat(-1)}}, Rat(0));       // u >= 0
        sys.add({{sys.uvar(t), Rat(1)}}, one);           // u <= 1
    }
    for (int t = 2; t <= T; ++t) {
        sys.add({{sys.svar(t), Rat(-1)}}, Rat(0));       // s >= 0
        std::map<int, Rat> dpos;
        acc_d(sys, dpos, t, Rat(-1));
        sys.add(dpos, Rat(0));                            // d >= 0
    }
    if (sys.j1)
        for (int t = 2; t <= T - 1; ++t) sys.add({{sys.j3var(t), Rat(-1)}}, Rat(0));  // J3 >= 0
    // min up: sum_{sigma in window} s_sigma <= u_t
    for (int t = 2; t <= T; ++t) {
        std::map<int, Rat> terms;
        for (int sg = std::max(t - t_on + 1, 2); sg <= t; ++sg) terms[sys.svar(sg)] += 1;
        terms[sys.uvar(t)] -= 1;
        sys.add(terms, Rat(0));
    }
    // min down: sum d <= 1 - u_t
    for (int t = 2; t <= T; ++t) {
        std::map<int, Rat> terms;
        for (int sg = std::max(t - t_off + 1, 2); sg <= t; ++sg) acc_d(sys, terms, sg, one);
        terms[sys.uvar(t)] += 1;
        sys.add(terms, one);
    }
    // window families
    auto add_window = [&](int t, const QIneq& q) {
        std::map<int, Rat> terms;
        auto acc = [&](int var, const Rat& c) {
            if (c != 0 && var >= 0) terms[var] += c;
        };
        acc(sys.pvar(t - 1), q.a[WPprev]);
        acc(sys.pvar(t), q.a[WPt]);
        acc(sys.pvar(t + 1), q.a[WPnext]);
        acc(sys.uvar(t - 1), q.a[WUprev]);
        acc(sys.uvar(t), q.a[WUt]);
        acc(sys.uvar(t + 1), q.a[WUnext]);
        acc(sys.svar(t), q.a[WSt]);
        acc(sys.svar(t + 1), q.a[WSnext]);
        if (q.a[WDt] != 0) acc_d(sys, terms, t, q.a[WDt]);
        if (q.a[WDnext] != 0) acc_d(sys, terms, t + 1, q.a[WDnext]);
        if (q.a[WJ3] != 0 && sys.j1) terms[sys.j3var(t)] += q.a[WJ3];
        sys.add(terms, q.rhs);
    };
    for (int t = 2; t <= T - 1; ++t) {
        if (sys.j1) {
            add_window(t, wq::eq47(p));
            add_window(t, wq::eq48(p));
            add_window(t, wq::eq49(p));
        }
        add_window(t, wq::eq46(p));
        if (boundary_variant) {
            add_window(t, wq::eq52(p));
            add_window(t, wq::eq53(p));
        } else {
            add_window(t, wq::eq50(p));
            add_window(t, wq::eq51(p));
        }
        if (mode == SetMode::C) {
            add_window(t, wq::eq58(p));
            add_window(t, wq::eq59(p));
            add_window(t, wq::eq61(p));
            add_window(t, wq::eq62(p));
        }
    }
    if (mode == SetMode::C) {
        add_window(T - 1, wq::eq60(p));
        add_window(2, wq::eq63(p));
    }
    return sys;
}

std::vector<std::vector<BigInt>> to_integer_rows(const TSystem& sys) {
    std::vector<std::vector<BigInt>> out;
    for (size_t i = 0; i < sys.rows.size(); ++i) {
        BigInt lcm(1);
        auto fold = [&](const Rat& v) {
            BigInt d = denominator(v);
            lcm = lcm / boost::multiprecision::gcd(lcm, d) * d;
        };
        for (const auto& v : sys.rows[i]) fold(v);
        fold(sys.rhs[i]);
        std::vector<BigInt> r;
        r.reserve(sys.rows[i].size() + 1);
        for (const auto& v : sys.rows[i]) r.push_back(numerator(v) * (lcm / denominator(v)));
        r.push_back(-numerator(sys.rhs[i]) * (lcm / denominator(sys.rhs[i])));
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace

PolytopeReport check_integral_hull(const QParams& p, UnitClass cls, SetMode mode, int T,
                                   bool boundary_variant) {
    PolytopeReport rep;
    rep.check = std::string("integral-hull:") + (mode == SetMode::B ? "B" : "C") +
                (boundary_variant ? "~" : "") + ":T=" + std::to_string(T);
    rep.params = params_str(p);
    if (T < 3) {
        rep.notes = "T must be >= 3";
        return rep;
    }
    TSystem sys = build_t_system(p, cls, mode, T, boundary_variant);
    if (sys.dim > 30) {
        rep.notes = "dimension guard (> 30 variables refused)";
        return rep;
    }
    DDResult dd = dd_vertices(sys.dim, to_integer_rows(sys));
    if (!dd.ok) {
        rep.notes = "vertex enumeration failed: " + dd.note;
        return rep;
    }
    for (const auto& v : dd.vertices) {
        const BigInt& den = v[static_cast<size_t>(sys.dim)];
        for (int k = sys.u0; k < sys.dim; ++k) {
            const BigInt& num = v[static_cast<size_t>(k)];
            if (num != 0 && num != den) {
                rep.verdict = Verdict::Falsified;
                RatVec w;
                for (int c = 0; c < sys.dim; ++c) w.emplace_back(v[static_cast<size_t>(c)], den);
                rep.witness = point_str(w);
                rep.notes = "fractional vertex (coordinate " + std::to_string(k) + "), " +
                            std::to_string(dd.vertices.size()) + " vertices total";
                return rep;
            }
        }
    }
    rep.verdict = Verdict::Verified;
    rep.notes = std::to_string(dd.vertices.size()) + " vertices, all binary coordinates integral";
    return rep;
}

// ---------------------------------------------------------------------------
// total unimodularity of the proof matrices
// ---------------------------------------------------------------------------

namespace {

using IMat = std::vector<std::vector<BigInt>>;

bool is_tu(const IMat& m, std::string& counter) {
    int rows = static_cast<int>(m.size()), cols = static_cast<int>(m[0].size());
    std::vector<int> rsel, csel;
    // enumerate all square submatrices
    for (int k = 1; k <= std::min(rows, cols); ++k) {
        std::vector<int> rc(static_cast<size_t>(k)), cc(static_cast<size_t>(k));
        for (int i = 0; i < k; ++i) rc[static_cast<size_t>(i)] = i;
        while (true) {
            for (int i = 0; i < k; ++i) cc[static_cast<size_t>(i)] = i;
            while (true) {
                IMat sub(static_cast<size_t>(k), std::vector<BigInt>(static_cast<size_t>(k)));
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j)
                        sub[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                            m[static_cast<size_t>(rc[static_cast<size_t>(i)])][static_cast<size_t>(cc[static_cast<size_t>(j)])];
                BigInt d = int_det(sub);
                if (d < -1 || d > 1) {
                    counter = "rows {";
                    for (int i = 0; i < k; ++i) counter += std::to_string(rc[static_cast<size_t>(i)]) + (i + 1 < k ? "," : "");
                    counter += "} cols {";
                    for (int j = 0; j < k; ++j) counter += std::to_string(cc[static_cast<size_t>(j)]) + (j + 1 < k ? "," : "");
                    counter += "} det " + d.str();
                    return false;
                }
                // next column combination
                int pos = k - 1;
                while (pos >= 0 && cc[static_cast<size_t>(pos)] == cols - k + pos) --pos;
                if (pos < 0) break;
                ++cc[static_cast<size_t>(pos)];
                for (int q = pos + 1; q < k; ++q) cc[static_cast<size_t>(q)] = cc[static_cast<size_t>(q - 1)] + 1;
            }
            int pos = k - 1;
            while (pos >= 0 && rc[static_cast<size_t>(pos)] == rows - k + pos) --pos;
            if (pos < 0) break;
            ++rc[static_cast<size_t>(pos)];
            for (int q = pos + 1; q < k; ++q) rc[static_cast<size_t>(q)] = rc[static_cast<size_t>(q - 1)] + 1;
        }
    }
    return true;
}

// multiset signature of a row/column used by the permutation matcher
std::multiset<BigInt> sig(const std::vector<BigInt>& v) { return {v.begin(), v.end()}; }

bool perm_equivalent(const IMat& a, const IMat& b) {
    // rows of a mapped onto rows of b (then columns) by backtracking on
    // sorted-content signatures
    int n = static_cast<int>(a.size());
    std::vector<int> rmap(static_cast<size_t>(n), -1);
    std::vector<char> used(static_cast<size_t>(n), 0);
    // candidate rows by signature
    std::vector<std::vector<int>> cand(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (sig(a[static_cast<size_t>(i)]) == sig(b[static_cast<size_t>(j)])) cand[static_cast<size_t>(i)].push_back(j);
    // choose a row mapping, then test whether some column permutation matches
    std::function<bool(int)> rec = [&](int i) -> bool {
        if (i == n) {
            // column matching: bipartite exact match by trying permutations with pruning
            std::vector<int> cmap(static_cast<size_t>(n), -1);
            std::vector<char> cused(static_cast<size_t>(n), 0);
            std::function<bool(int)> crec = [&](int c) -> bool {
                if (c == n) return true;
                for (int d = 0; d < n; ++d) {
                    if (cused[static_cast<size_t>(d)]) continue;
                    bool ok = true;
                    for (int r = 0; r < n && ok; ++r)
                        ok = a[static_cast<size_t>(r)][static_cast<size_t>(c)] ==
                             b[static_cast<size_t>(rmap[static_cast<size_t>(r)])][static_cast<size_t>(d)];
                    if (!ok) continue;
                    cused[static_cast<size_t>(d)] = 1;
                    cmap[static_cast<size_t>(c)] = d;
                    if (crec(c + 1)) return true;
                    cused[static_cast<size_t>(d)] = 0;
                }
                return false;
            };
            return crec(0);
        }
        for (int j : cand[static_cast<size_t>(i)]) {
            if (used[static_cast<size_t>(j)]) continue;
            used[static_cast<size_t>(j)] = 1;
            rmap[static_cast<size_t>(i)] = j;
            if (rec(i + 1)) return true;
            used[static_cast<size_t>(j)] = 0;
        }
        return false;
    };
    return rec(0);
}

IMat gj_pivot(const IMat& m, int r, int c) {
    IMat out = m;
    const BigInt& pv = m[static_cast<size_t>(r)][static_cast<size_t>(c)];
    for (size_t i = 0; i < m.size(); ++i) {
        if (static_cast<int>(i) == r) continue;
        for (size_t j = 0; j < m[i].size(); ++j) {
            BigInt num = m[i][j] * pv - m[i][static_cast<size_t>(c)] * m[static_cast<size_t>(r)][j];
            out[i][j] = num / (pv * pv / pv);  // pv in {-1, 1} here
        }
    }
    return out;
}

}  // namespace

PolytopeReport check_tu() {
    PolytopeReport rep;
    rep.check = "total-unimodularity";
    const IMat B = {
        {0, 0, -1, 1, 1, -1}, {0, 0, 0, -1, 0, 1}, {0, -1, 0, 1, 0, 0},
        {1, 0, 0, 1, 0, 0},   {0, 0, -1, 0, 1, 0}, {0, 1, 0, 0, 1, 0},
    };
    const IMat Bp = {
        {0, 0, 0, 1, 0, -1}, {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 1, 1},
        {1, 0, 0, 0, 0, 0},  {0, 0, 1, 0, 0, 0}, {0, 1, 0, -1, 0, 0},
    };
    std::string counter;
    if (!is_tu(Bp, counter)) {
        rep.verdict = Verdict::Falsified;
        rep.witness = "B' minor: " + counter;
        return rep;
    }
    bool b_tu = is_tu(B, counter);
    // sanity control: a known non-TU matrix must be rejected
    std::string c2;
    if (is_tu({{BigInt(1), BigInt(1)}, {BigInt(-1), BigInt(1)}}, c2)) {
        rep.verdict = Verdict::Falsified;
        rep.witness = "control matrix [[1,1],[-1,1]] passed the TU check";
        return rep;
    }
    // pivot relation: some single Gauss-Jordan pivot of B matches B' up to
    // row/column permutation
    bool related = false;
    for (int r = 0; r < 6 && !related; ++r)
        for (int c = 0; c < 6 && !related; ++c) {
            const BigInt& pv = B[static_cast<size_t>(r)][static_cast<size_t>(c)];
            if (pv != 1 && pv != -1) continue;
            if (perm_equivalent(gj_pivot(B, r, c), Bp)) related = true;
        }
    rep.verdict = Verdict::Verified;
    rep.notes = std::string("every square minor of B' lies in {-1,0,1}") +
                (b_tu ? "; B itself is TU as well" : "") +
                (related ? "; B' reachable from B by one pivot + permutation"
                         : "; pivot relation to B not reproduced (checked single pivots)");
    return rep;
}

// ---------------------------------------------------------------------------
// dominance catalogue
// ---------------------------------------------------------------------------

namespace {

// window-coordinate LP over [0,1]^11 with the logic/min-up-down base rows
struct WindowRegion {
    RatLp lp;
    explicit WindowRegion(UnitClass cls, bool with_j3) {
        for (int k = 0; k < WDim; ++k) lp.add_var(Rat(0), Rat(1));
        if (!with_j3) lp.add_row({{WJ3, Rat(1)}}, Sense::EQ, Rat(0));
        // (4) at t and t+1
        lp.add_row({{WSt, Rat(1)}, {WDt, Rat(-1)}, {WUt, Rat(-1)}, {WUprev, Rat(1)}}, Sense::EQ, Rat(0));
        lp.add_row({{WSnext, Rat(1)}, {WDnext, Rat(-1)}, {WUnext, Rat(-1)}, {WUt, Rat(1)}}, Sense::EQ,
                   Rat(0));
        // min up/down windows for the class
        if (cls == UnitClass::J1) {
            lp.add_row({{WSt, Rat(1)}, {WUt, Rat(-1)}}, Sense::LE, Rat(0));
            lp.add_row({{WSnext, Rat(1)}, {WUnext, Rat(-1)}}, Sense::LE, Rat(0));
            lp.add_row({{WDt, Rat(1)}, {WUt, Rat(1)}}, Sense::LE, Rat(1));
            lp.add_row({{WDnext, Rat(1)}, {WUnext, Rat(1)}}, Sense::LE, Rat(1));
        } else {
            lp.add_row({{WSt, Rat(1)}, {WUt, Rat(-1)}}, Sense::LE, Rat(0));
            lp.add_row({{WSt, Rat(1)}, {WSnext, Rat(1)}, {WUnext, Rat(-1)}}, Sense::LE, Rat(0));
            lp.add_row({{WDt, Rat(1)}, {WUt, Rat(1)}}, Sense::LE, Rat(1));
            if (cls == UnitClass::Jge2Off2)
                lp.add_row({{WDt, Rat(1)}, {WDnext, Rat(1)}, {WUnext, Rat(1)}}, Sense::LE, Rat(1));
            else
                lp.add_row({{WDnext, Rat(1)}, {WUnext, Rat(1)}}, Sense::LE, Rat(1));
        }
    }
    void add_ineq(const QIneq& q) {
        std::vector<std::pair<int, Rat>> terms;
        for (int k = 0; k < WDim; ++k)
            if (q.a[static_cast<size_t>(k)] != 0) terms.emplace_back(k, q.a[static_cast<size_t>(k)]);
        lp.add_row(terms, Sense::LE, q.rhs);
    }
    void add_linkage(const QParams& p) {
        add_ineq(wq::eq47(p));
        add_ineq(wq::eq48(p));
        add_ineq(wq::eq49(p));
    }
    // max of loose's lhs-rhs over the region
    std::optional<std::pair<Rat, RatVec>> max_violation(const QIneq& loose) {
        RatLp copy = lp;
        for (int k = 0; k < WDim; ++k) copy.set_objective(k, loose.a[static_cast<size_t>(k)]);
        auto out = copy.maximize();
        if (out.status != RatLp::Status::Optimal) return std::nullopt;
        return std::make_pair(out.value - loose.rhs, out.x);
    }
};

struct DomResult {
    bool implied = false;
    bool strict_witness = false;
    RatVec witness;
};

// tight system (+optional J3 linkage) vs one loose inequality; strictness is
// probed in the reverse direction
DomResult dominance(UnitClass cls, bool with_j3, bool linkage, const QParams& p,
                    const std::vector<QIneq>& tight, const QIneq& loose, bool probe_strict) {
    DomResult r;
    WindowRegion reg(cls, with_j3);
    if (linkage && with_j3) reg.add_linkage(p);
    for (const auto& q : tight) reg.add_ineq(q);
    auto mv = reg.max_violation(loose);
    if (!mv) return r;
    r.implied = mv->first <= 0;
    if (probe_strict) {
        WindowRegion rev(cls, with_j3);
        if (linkage && with_j3) rev.add_linkage(p);
        rev.add_ineq(loose);
        for (const auto& q : tight) {
            auto v = rev.max_violation(q);
            if (v && v->first > 0) {
                r.strict_witness = true;
                r.witness = v->second;
                break;
            }
        }
    }
    return r;
}

PolytopeReport dom_report(const std::string& name, const QParams& p) {
    PolytopeReport rep;
    rep.check = "dominance:" + name;
    rep.params = params_str(p);
    auto ok = [&](const std::string& note) {
        rep.verdict = Verdict::Verified;
        rep.notes = note;
        return rep;
    };
    auto bad = [&](const std::string& note, const RatVec& w = {}) {
        rep.verdict = Verdict::Falsified;
        rep.notes = note;
        if (!w.empty()) rep.witness = point_str(w);
        return rep;
    };
    using wq::eq46;
    using wq::eq47;
    using wq::eq48;
    using wq::eq49;

    if (name == "eq46_48_to_eq14") {
        auto d = dominance(UnitClass::J1, true, true, p, {eq46(p)}, wq::eq14s(p), false);
        if (!d.implied) return bad("(46)+(48) do not imply (14)");
        auto d2 = dominance(UnitClass::J1, true, true, p, {wq::eq14s(p)}, wq::eq12s(p), false);
        if (!d2.implied) return bad("(14) does not imply (12)");
        return ok("(48)(46) => (14) => (12)");
    }
    if (name == "eq46_49_to_eq15") {
        auto d = dominance(UnitClass::J1, true, true, p, {eq46(p)}, wq::eq15s(p), false);
        if (!d.implied) return bad("(46)+(49) do not imply (15)");
        auto d2 = dominance(UnitClass::J1, true, true, p, {wq::eq15s(p)}, wq::eq13s(p), false);
        if (!d2.implied) return bad("(15) does not imply (13)");
        return ok("(49)(46) => (15) => (13)");
    }
    if (name == "eq46_to_eq11_chain") {
        auto d1 = dominance(UnitClass::Jge2, false, false, p, {eq46(p)}, wq::eq11s(p), false);
        auto d2 = dominance(UnitClass::Jge2, false, false, p, {wq::eq11s(p)}, wq::eq13s(p), false);
        auto d3 = dominance(UnitClass::Jge2, false, false, p, {wq::eq13s(p)}, wq::eq9s(p), false);
        if (!d1.implied || !d2.implied || !d3.implied) return bad("(46) => (11) => (10) => (9) chain broken");
        return ok("(46) => (11) => (10) => (9) for J>=2");
    }
    if (name == "eq50_to_eq52_strict") {
        auto d = dominance(UnitClass::J1, true, true, p, {wq::eq50(p)}, wq::eq52(p), true);
        if (!d.implied) return bad("(50) does not imply (52)");
        bool expect_strict = p.csd < 1;
        if (d.strict_witness != expect_strict)
            return bad(expect_strict ? "strict witness missing although shut+down < 1"
                                     : "unexpected strict witness at shut+down >= 1",
                       d.witness);
        rep.witness = d.strict_witness ? point_str(d.witness) : "";
        return ok(expect_strict ? "(50) strictly tighter than (52)" : "(50) equals (52) regime");
    }
    if (name == "eq51_to_eq53_strict") {
        auto d = dominance(UnitClass::J1, true, true, p, {wq::eq51(p)}, wq::eq53(p), true);
        if (!d.implied) return bad("(51) does not imply (53)");
        bool expect_strict = p.csu < 1;
        if (d.strict_witness != expect_strict) return bad("strictness mismatch for (51) vs (53)", d.witness);
        rep.witness = d.strict_witness ? point_str(d.witness) : "";
        return ok(expect_strict ? "(51) strictly tighter than (53)" : "(51) equals (53) regime");
    }
    if (name == "eq46_to_eq52_eq53") {
        auto d1 = dominance(UnitClass::J1, true, true, p, {eq46(p)}, wq::eq13s(p), false);
        auto d2 = dominance(UnitClass::J1, true, true, p, {eq46(p)}, wq::eq12s(p), false);
        if (!d1.implied || !d2.implied) return bad("(46) does not imply the shifted (52)(53)");
        return ok("(46) => shifted (52),(53)");
    }
    if (name == "eq58_to_eq20") {
        auto d = dominance(UnitClass::Jge2, false, false, p, {wq::eq58(p)}, wq::eq20s(p), true);
        if (!d.implied) return bad("(58) does not imply (20) for J>=2");
        bool expect_strict = p.up < p.shut;
        if (d.strict_witness != expect_strict) return bad("strictness mismatch for (58) vs (20)", d.witness);
        rep.witness = d.strict_witness ? point_str(d.witness) : "";
        return ok(expect_strict ? "(58) strictly tighter than (20)" : "(58) matches (20) when up > shut");
    }
    if (name == "eq61_to_eq22") {
        auto d = dominance(UnitClass::Jge2, false, false, p, {wq::eq61(p)}, wq::eq22s(p), true);
        if (!d.implied) return bad("(61) does not imply (22) for J>=2");
        bool expect_strict = p.down < p.start;
        if (d.strict_witness != expect_strict) return bad("strictness mismatch for (61) vs (22)", d.witness);
        rep.witness = d.strict_witness ? point_str(d.witness) : "";
        return ok(expect_strict ? "(61) strictly tighter than (22)" : "(61) matches (22) when down > start");
    }
    if (name == "eq59_to_eq21") {
        auto d = dominance(UnitClass::Jge2Off2, false, false, p, {wq::eq59(p)}, wq::eq21s(p), false);
        if (!d.implied) return bad("(59) does not imply (21)");
        return ok("(59) => (21) for J>=2 with t_off >= 2");
    }
    if (name == "eq58_to_eq18_eq16") {
        auto d1 = dominance(UnitClass::J1, true, true, p, {wq::eq58(p)}, wq::eq18s(p), true);
        QParams p0 = p;
        p0.pmin_ratio = 0;  // worst case of the +m*d_t slack in (16)
        auto d2 = dominance(UnitClass::J1, true, true, p, {wq::eq58(p)}, wq::eq16s(p0), false);
        if (!d1.implied || !d2.implied) return bad("(58) does not imply (18)(16)");
        bool expect_strict = p.shut < std::max(p.start, p.up);
        if (d1.strict_witness != expect_strict) return bad("strictness mismatch for (58) vs (18)", d1.witness);
        return ok("(58) => (18)(16)");
    }
    if (name == "eq61_to_eq19_eq17") {
        auto d1 = dominance(UnitClass::J1, true, true, p, {wq::eq61(p)}, wq::eq19s_next(p), true);
        QParams p0 = p;
        p0.pmin_ratio = 0;
        auto d2 = dominance(UnitClass::J1, true, true, p, {wq::eq61(p)}, wq::eq17s_next(p0), false);
        if (!d1.implied || !d2.implied) return bad("(61) does not imply (19)(17)");
        bool expect_strict = p.start < std::max(p.shut, p.down);
        if (d1.strict_witness != expect_strict) return bad("strictness mismatch for (61) vs (19)", d1.witness);
        return ok("(61) => (19)(17)");
    }
    if (name == "eq87_to_eq74_eq76") {
        auto d1 = dominance(UnitClass::J1, true, true, p, {wq::eq87_1(p)}, wq::eq13s(p), false);
        auto d2 = dominance(UnitClass::J1, true, true, p, {wq::eq87_2(p)}, wq::eq12s(p), false);
        if (!d1.implied || !d2.implied) return bad("(87) rows do not imply (74)^1/(76)^1");
        return ok("(87)^1 => (74)^1 and (87)^2 => (76)^1");
    }
    if (name == "remark12_containment") {
        // B~ (with (52)(53)) contains B (with (50)(51))
        std::vector<QIneq> tight = {eq46(p), wq::eq50(p), wq::eq51(p)};
        WindowRegion reg(UnitClass::J1, true);
        reg.add_linkage(p);
        for (const auto& q : tight) reg.add_ineq(q);
        for (const QIneq& loose : {wq::eq52(p), wq::eq53(p), eq46(p)}) {
            auto mv = reg.max_violation(loose);
            if (!mv || mv->first > 0) return bad("B~ does not contain B (row " + loose.tag + ")");
        }
        return ok("replacing (50)(51) by (52)(53) only enlarges the set");
    }
    rep.notes = "unknown dominance id";
    return rep;
}

}  // namespace

std::vector<std::string> dominance_catalog() {
    return {"eq46_48_to_eq14", "eq46_49_to_eq15", "eq46_to_eq11_chain", "eq50_to_eq52_strict",
            "eq51_to_eq53_strict", "eq46_to_eq52_eq53", "eq58_to_eq20", "eq61_to_eq22",
            "eq59_to_eq21", "eq58_to_eq18_eq16", "eq61_to_eq19_eq17", "eq87_to_eq74_eq76",
            "remark12_containment"};
}

PolytopeReport check_dominance(const std::string& name, const QParams& p) { return dom_report(name, p); }

StartupDominance check_startup_dominance(const Rat& c_hot, const Rat& c_cold, const Rat& s_val,
                                         const Rat& xi_val) {
    StartupDominance out;
    const Rat xi_cap(8);
    // R(Psi2) in (s, xi, S~); containment means every Psi1 row holds for
    // S = c_hot*s + S~
    {
        RatLp lp;
        int s = lp.add_var(Rat(0), Rat(1));
        int xi = lp.add_var(Rat(0), xi_cap);
        int st = lp.add_var(Rat(0), Rat(0), /*unbounded_above=*/true);
        Rat delta = c_cold - c_hot;
        lp.add_row({{st, Rat(1)}, {s, -delta}, {xi, delta}}, Sense::GE, Rat(0));
        // violation of S >= c_cold (s - xi): maximize c_cold(s-xi) - c_hot s - S~
        lp.set_objective(s, c_cold - c_hot);
        lp.set_objective(xi, -c_cold);
        lp.set_objective(st, Rat(-1));
        auto o = lp.maximize();
        bool ok1 = o.status == RatLp::Status::Optimal && o.value <= 0;
        // violation of S >= c_hot s is -S~ <= 0, trivially nonpositive
        out.containment = ok1 ? Verdict::Verified : Verdict::Falsified;
        if (!ok1) out.notes = "R(Psi2) not contained in R(Psi1)";
    }
    // floors at the witness point
    {
        RatLp lp;  // min S over Psi1 == max -S
        int S = lp.add_var(Rat(0), Rat(0), true);
        lp.add_row({{S, Rat(1)}}, Sense::GE, c_hot * s_val);
        lp.add_row({{S, Rat(1)}}, Sense::GE, c_cold * (s_val - xi_val));
        lp.set_objective(S, Rat(-1));
        auto o = lp.maximize();
        out.floor_classic = -o.value;
    }
    {
        RatLp lp;  // min c_hot*s + S~ over Psi2 at fixed (s, xi)
        int st = lp.add_var(Rat(0), Rat(0), true);
        Rat delta = c_cold - c_hot;
        lp.add_row({{st, Rat(1)}}, Sense::GE, delta * (s_val - xi_val));
        lp.set_objective(st, Rat(-1));
        auto o = lp.maximize();
        out.floor_projected = c_hot * s_val - o.value;
    }
    out.strict = out.floor_projected > out.floor_classic;
    return out;
}

PolytopeReport check_projection_equivalence(const QParams& p) {
    PolytopeReport rep;
    rep.check = "projection-equivalence";
    rep.params = params_str(p);
    UnitClass cls = p.j1 ? UnitClass::J1 : UnitClass::Jge2;

    auto hd_rows = [&]() {
        std::vector<QIneq> v = {wq::eq46(p), wq::eq50(p), wq::eq51(p), wq::eq58(p),
                                wq::eq59(p), wq::eq61(p), wq::eq62(p)};
        return v;
    }();
    std::vector<QIneq> pr_rows;
    if (!p.j1) {
        pr_rows = {wq::eq86(p), wq::eq73(p), wq::eq75(p), wq::eq65(p),
                   wq::eq77(p), wq::eq80(p), wq::eq83(p)};
    } else {
        // the projection keeps both rows of (74)/(76): the first rows are the
        // (52)/(53) forms, implied in the assembled model by (87) but part of
        // the per-window projection
        pr_rows = {wq::eq87_1(p), wq::eq87_2(p), wq::eq52(p), wq::eq74_2(p),
                   wq::eq53(p),   wq::eq76_2(p)};
        Rat zero(0);
        if (p.q_up() >= zero) {
            pr_rows.push_back(wq::eq66(p));
            pr_rows.push_back(wq::eq67(p));
        } else {
            pr_rows.push_back(wq::eq68(p));
            pr_rows.push_back(wq::eq65(p));
        }
        if (p.c2u - p.csu >= zero) {
            pr_rows.push_back(wq::eq78_1(p));
            pr_rows.push_back(wq::eq78_2(p));
        } else {
            pr_rows.push_back(wq::eq79_1(p));
            pr_rows.push_back(wq::eq79_2(p));
        }
        if (p.q_down() >= zero) {
            pr_rows.push_back(wq::eq81_1(p));
            pr_rows.push_back(wq::eq81_2(p));
        } else {
            pr_rows.push_back(wq::eq82_1(p));
            pr_rows.push_back(wq::eq82_2(p));
        }
        if (p.c2d - p.csd >= zero) {
            pr_rows.push_back(wq::eq84_1(p));
            pr_rows.push_back(wq::eq84_2(p));
        } else {
            pr_rows.push_back(wq::eq85_1(p));
            pr_rows.push_back(wq::eq85_2(p));
        }
    }

    for (const auto& st : enumerate_states()) {
        if (!state_feasible(st, cls)) continue;
        // J3 takes its forced integer-state value min(s_t, d_next)
        int j3 = std::min(st.s_t, st.d_next);
        auto state_rows = [&](const std::vector<QIneq>& fams, bool with_j3) {
            std::vector<Row3> rows;
            for (const auto& q : fams) {
                Row3 r{{q.a[WPprev], q.a[WPt], q.a[WPnext]}, q.rhs};
                Rat c = q.a[WUprev] * st.u_prev + q.a[WUt] * st.u_t + q.a[WUnext] * st.u_next +
                        q.a[WSt] * st.s_t + q.a[WSnext] * st.s_next + q.a[WDt] * st.d_t +
                        q.a[WDnext] * st.d_next;
                if (with_j3) c += q.a[WJ3] * j3;
                r.rhs -= c;
                rows.push_back(r);
            }
            return rows;
        };
        auto A = state_rows(hd_rows, true);
        auto Bv = state_rows(pr_rows, false);
        // two-way containment over the [0,1]^3 power box
        auto contains = [&](const std::vector<Row3>& outer, const std::vector<Row3>& inner) {
            for (const auto& target : outer) {
                RatLp lp;
                for (int k = 0; k < 3; ++k) lp.add_var(Rat(0), Rat(1));
                for (const auto& r : inner)
                    lp.add_row({{0, r.a[0]}, {1, r.a[1]}, {2, r.a[2]}}, Sense::LE, r.rhs);
                for (int k = 0; k < 3; ++k) lp.set_objective(k, target.a[static_cast<size_t>(k)]);
                auto o = lp.maximize();
                if (o.status != RatLp::Status::Optimal) return false;
                if (o.value > target.rhs) return false;
            }
            return true;
        };
        if (!contains(A, Bv) || !contains(Bv, A)) {
            rep.verdict = Verdict::Falsified;
            rep.notes = "regions differ at state " + std::to_string(st.u_prev) +
                        std::to_string(st.u_t) + std::to_string(st.u_next);
            return rep;
        }
    }
    rep.verdict = Verdict::Verified;
    rep.notes = "per-state power regions of the HD and projected blocks coincide";
    return rep;
}

RatMat table2_points(const QParams& p, const std::array<std::array<Rat, 3>, 3>& a_ub,
                     const Rat& eps) {
    using WP = WParams<Rat>;
    auto pt = [](std::array<Rat, 3> powers, std::array<int, 8> bin) {
        RatVec x(WDim);
        x[WPprev] = powers[0];
        x[WPt] = powers[1];
        x[WPnext] = powers[2];
        for (int k = 0; k < 8; ++k) x[static_cast<size_t>(WUprev + k)] = bin[static_cast<size_t>(k)];
        return x;
    };
    // binary order: u_prev, u_t, u_next, s_t, s_next, d_t, d_next, J3
    RatMat pts;
    Rat z(0), one(1);
    pts.push_back(pt({z, p.start, p.csu}, {0, 1, 1, 1, 0, 0, 0, 0}));                    // u1
    pts.push_back(pt({z, z, p.start}, {0, 0, 1, 0, 1, 0, 0, 0}));                        // u2
    pts.push_back(pt({p.shut, z, z}, {1, 0, 0, 0, 0, 1, 0, 0}));                         // u3
    pts.push_back(pt({p.csd, p.shut, z}, {1, 1, 0, 0, 0, 0, 1, 0}));                     // u4
    pts.push_back(pt({z, WP::min2(p.start, p.shut), z}, {0, 1, 0, 1, 0, 0, 1, 1}));      // u5
    for (int r = 0; r < 3; ++r)                                                          // u6-u8
        pts.push_back(pt({a_ub[static_cast<size_t>(r)][0], a_ub[static_cast<size_t>(r)][1],
                          a_ub[static_cast<size_t>(r)][2]},
                         {1, 1, 1, 0, 0, 0, 0, 0}));
    pts.push_back(pt({z, z, z}, {0, 0, 0, 0, 0, 0, 0, 0}));                              // u9
    pts.push_back(pt({z, z, z}, {1, 1, 1, 0, 0, 0, 0, 0}));                              // u10
    pts.push_back(pt({z, z, p.start}, {1, 0, 1, 0, 1, 1, 0, 0}));                        // u11
    pts.push_back(pt({z, p.start, z}, {0, 1, 1, 1, 0, 0, 0, 0}));                        // u12
    pts.push_back(pt({z, p.shut - eps, z}, {1, 1, 0, 0, 0, 0, 1, 0}));                   // u13
    pts.push_back(pt({z, p.start, WP::pos(p.start - p.down)}, {0, 1, 1, 1, 0, 0, 0, 0}));  // u14
    pts.push_back(pt({WP::pos(p.shut - p.up), p.shut - eps, z}, {1, 1, 0, 0, 0, 0, 1, 0}));  // u15
    (void)one;
    return pts;
}

}  // namespace ucb::lab
