#include "ucb/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace ucb {

double compute_igap(double z_mip, double z_cr) {
    if (z_mip == 0.0) throw std::invalid_argument("compute_igap: z_mip must be nonzero");
    if (z_cr > z_mip + 1e-6 * std::max(1.0, std::abs(z_mip)))
        throw std::invalid_argument("compute_igap: relaxation value exceeds the MIP value");
    return (z_mip - z_cr) / z_mip;
}

double compute_rtime(double c_time, double c_ref) {
    if (!(c_ref > 0.0)) throw std::invalid_argument("compute_rtime: reference time must be > 0");
    return (c_time - c_ref) / c_ref;
}

bool chain_holds(const std::vector<const RunRecord*>& group, std::string* why) {
    // group must be ordered 2P-Co, 2P-Ti, 3P-Ti, 3P-Ti-ST, 3P-HD-Pr, 3P-HD
    for (size_t k = 1; k < group.size(); ++k) {
        const RunRecord* a = group[k - 1];
        const RunRecord* b = group[k];
        if (a->relax_status != "optimal" || b->relax_status != "optimal") {
            if (why) *why = "relaxation not optimal for " + a->kind + "/" + b->kind;
            return false;
        }
        double slack = 1e-9 * std::max({1.0, std::abs(a->z_cr), std::abs(b->z_cr)});
        if (a->z_cr > b->z_cr + slack) {
            if (why)
                *why = a->kind + " Z_CR " + fmt_num(a->z_cr) + " > " + b->kind + " Z_CR " +
                       fmt_num(b->z_cr);
            return false;
        }
    }
    return true;
}

namespace {

const std::vector<FormKind> kChainOrder = {FormKind::TwoPCo,     FormKind::TwoPTi,
                                           FormKind::ThreePTi,   FormKind::ThreePTiST,
                                           FormKind::ThreePHDPr, FormKind::ThreePHD};

void run_cell(const std::string& id, const Instance& inst, FormKind kind,
              const MatrixOptions& opt, RunRecord& rec) {
    rec.instance_id = id;
    rec.kind = kind_tag(kind);
    rec.mode = opt.milp ? "milp" + std::to_string(opt.segments) : "miqp";
    try {
        Model model = build_model(inst, kind, opt.milp, opt.segments);
        rec.model_stats = model.stats();
        Model relaxed = model.relax();
        SolveResult r = solve_lp(relaxed);
        rec.relax_status = status_name(r.status);
        rec.z_cr = r.objective;
        rec.relax_seconds = r.wall_time;
        rec.method = r.method;
        if (r.status == SolveStatus::Optimal) {
            auto [iu, iall] = integer_proportions(r, model);
            rec.i_u = iu;
            rec.i_all = iall;
        }
        if (opt.with_mip) {
            SolveResult ms = solve_mip(model, opt.gap_tol, opt.limits);
            rec.mip_status = status_name(ms.status);
            rec.z_incumbent = ms.objective;
            rec.bound = ms.bound;
            rec.nodes = ms.nodes;
            rec.mip_seconds = ms.wall_time;
        }
    } catch (const std::exception& e) {
        rec.error = e.what();
        if (rec.relax_status.empty()) rec.relax_status = "error";
        if (opt.with_mip && rec.mip_status.empty()) rec.mip_status = "error";
    }
}

}  // namespace

MatrixResult run_matrix(const std::vector<std::pair<std::string, Instance>>& instances,
                        const std::vector<FormKind>& kinds, const MatrixOptions& opt) {
    MatrixResult out;
    out.records.resize(instances.size() * kinds.size());
    std::vector<std::pair<size_t, std::pair<size_t, size_t>>> cells;  // record idx -> (inst, kind)
    for (size_t a = 0; a < instances.size(); ++a)
        for (size_t b = 0; b < kinds.size(); ++b)
            cells.push_back({a * kinds.size() + b, {a, b}});

    std::atomic<size_t> next{0};
    auto worker = [&] {
        while (true) {
            size_t c = next.fetch_add(1);
            if (c >= cells.size()) return;
            auto [ri, ab] = cells[c];
            run_cell(instances[ab.first].first, instances[ab.first].second, kinds[ab.second], opt,
                     out.records[ri]);
        }
    };
    int jobs = std::max(1, opt.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int k = 0; k < jobs; ++k) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    // shared Z_MIP per instance: best incumbent across formulations
    for (size_t a = 0; a < instances.size(); ++a) {
        double best = std::numeric_limits<double>::quiet_NaN();
        for (size_t b = 0; b < kinds.size(); ++b) {
            const RunRecord& r = out.records[a * kinds.size() + b];
            if (std::isfinite(r.z_incumbent) &&
                (r.mip_status == "optimal" || r.mip_status == "limit"))
                best = std::isnan(best) ? r.z_incumbent : std::min(best, r.z_incumbent);
        }
        for (size_t b = 0; b < kinds.size(); ++b) {
            RunRecord& r = out.records[a * kinds.size() + b];
            r.z_mip_shared = best;
            if (std::isfinite(best) && r.relax_status == "optimal" && best != 0.0 &&
                r.z_cr <= best + 1e-6 * std::max(1.0, std::abs(best)))
                r.igap = compute_igap(best, std::min(r.z_cr, best));
        }
    }

    // post checks per instance
    for (size_t a = 0; a < instances.size(); ++a) {
        std::map<std::string, const RunRecord*> by_kind;
        for (size_t b = 0; b < kinds.size(); ++b) {
            const RunRecord& r = out.records[a * kinds.size() + b];
            by_kind[r.kind] = &r;
        }
        bool have_all = true;
        std::vector<const RunRecord*> group;
        for (FormKind k : kChainOrder) {
            auto it = by_kind.find(kind_tag(k));
            if (it == by_kind.end()) {
                have_all = false;
                break;
            }
            group.push_back(it->second);
        }
        if (!have_all) continue;  // chain check is vacuous without all six kinds
        std::string why;
        if (!chain_holds(group, &why)) {
            out.chain_ok = false;
            out.notes.push_back("chain violated on " + instances[a].first + ": " + why);
        }
        const RunRecord* hd = by_kind.count("3P-HD") ? by_kind.at("3P-HD") : nullptr;
        const RunRecord* pr = by_kind.count("3P-HD-Pr") ? by_kind.at("3P-HD-Pr") : nullptr;
        if (hd && pr && hd->relax_status == "optimal" && pr->relax_status == "optimal") {
            double denom = std::max({1.0, std::abs(hd->z_cr), std::abs(pr->z_cr)});
            if (std::abs(hd->z_cr - pr->z_cr) > 1e-7 * denom) {
                out.hd_pair_equal = false;
                out.notes.push_back("3P-HD vs 3P-HD-Pr Z_CR differ on " + instances[a].first);
            }
        }
        for (size_t k = 1; k < group.size(); ++k)
            if (group[k]->i_all + 1e-9 < group[k - 1]->i_all) out.iall_monotone = false;
    }
    if (!out.iall_monotone)
        out.notes.push_back("I_all not monotone along the tightness chain (observation only)");
    return out;
}

namespace {
std::string cell(double v) { return std::isnan(v) ? "" : fmt_num(v); }
}  // namespace

std::string matrix_csv(const MatrixResult& r) {
    std::ostringstream os;
    os << "schema,instance,kind,mode,relax_status,z_cr,i_u,i_all,mip_status,z_incumbent,bound,"
          "z_mip_shared,igap,nodes,n_binary,n_continuous,n_constraints,n_nonzeros,method,error\n";
    for (const auto& x : r.records) {
        os << "ucb-1," << x.instance_id << ',' << x.kind << ',' << x.mode << ',' << x.relax_status
           << ',' << cell(x.z_cr) << ',' << cell(x.i_u) << ',' << cell(x.i_all) << ','
           << x.mip_status << ',' << cell(x.z_incumbent) << ',' << cell(x.bound) << ','
           << cell(x.z_mip_shared) << ',' << cell(x.igap) << ',' << x.nodes << ','
           << x.model_stats.n_binary << ',' << x.model_stats.n_continuous << ','
           << x.model_stats.n_constraints << ',' << x.model_stats.n_nonzeros << ',' << x.method
           << ',' << x.error << "\n";
    }
    os << "# chain_ok=" << (r.chain_ok ? 1 : 0) << " hd_pair_equal=" << (r.hd_pair_equal ? 1 : 0)
       << " iall_monotone=" << (r.iall_monotone ? 1 : 0) << "\n";
    return os.str();
}

std::string timing_csv(const MatrixResult& r) {
    // reference: 3P-Ti-ST on the same instance ("rTime for 3P-Ti-ST is zero")
    std::map<std::string, double> ref;
    for (const auto& x : r.records)
        if (x.kind == "3P-Ti-ST") ref[x.instance_id] = x.mip_seconds;
    std::ostringstream os;
    os << "instance,kind,relax_seconds,mip_seconds,rtime\n";
    for (const auto& x : r.records) {
        os << x.instance_id << ',' << x.kind << ',' << fmt_num(x.relax_seconds) << ','
           << fmt_num(x.mip_seconds) << ',';
        auto it = ref.find(x.instance_id);
        if (it != ref.end() && it->second > 0.0)
            os << fmt_num(compute_rtime(x.mip_seconds, it->second));
        os << "\n";
    }
    return os.str();
}

}  // namespace ucb
