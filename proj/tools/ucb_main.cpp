#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "ucb/bench.hpp"
#include "ucb/formulations.hpp"
#include "ucb/instance.hpp"
#include "ucb/polytope.hpp"
#include "ucb/solver.hpp"

namespace fs = std::filesystem;
using namespace ucb;

namespace {

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

std::vector<FormKind> parse_kinds(const std::vector<std::string>& tags) {
    std::vector<FormKind> kinds;
    if (tags.empty()) {
        kinds.assign(kAllKinds.begin(), kAllKinds.end());
    } else {
        for (const auto& t : tags) kinds.push_back(parse_kind(t));
    }
    return kinds;
}

int cmd_gen(std::uint64_t seed, int units, int periods, const std::string& profile,
            const std::string& out) {
    Instance inst = generate(seed, units, periods, profile);
    ValidationReport rep = validate(inst);
    for (const auto& w : rep.warnings) std::cerr << "warning: " << w << "\n";
    if (!rep.ok()) {
        for (const auto& e : rep.errors) std::cerr << "error: " << e << "\n";
        return 1;
    }
    save_instance(inst, out);
    std::cout << "wrote " << out << " (" << units << " units, " << periods << " periods, "
              << profile << ")\n";
    return 0;
}

int cmd_build(const std::string& instance_path, const std::string& kind_tag_s,
              const std::string& mode, int segments, const std::string& out_dir) {
    Instance inst = load_instance(instance_path);
    FormKind kind = parse_kind(kind_tag_s);
    Model m = build_model(inst, kind, mode == "milp", segments);
    fs::create_directories(out_dir);
    std::string stem = kind_tag_s;
    for (auto& c : stem)
        if (c == '/') c = '_';
    std::string base = (fs::path(out_dir) / stem).string();
    write_file(base + ".mps", m.write_mps());
    write_file(base + ".lp", m.write_lp());
    ModelStats s = m.stats();
    std::cout << kind_tag_s << ": binaries=" << s.n_binary << " continuous=" << s.n_continuous
              << " constraints=" << s.n_constraints << " nonzeros=" << s.n_nonzeros << "\n";
    for (const auto& note : m.metadata) std::cout << "  " << note << "\n";
    std::cout << "wrote " << base << ".mps and .lp\n";
    return 0;
}

int cmd_relax(const std::string& instance_path, const std::string& kind_tag_s,
              const std::string& mode, int segments, const std::string& sol_out) {
    Instance inst = load_instance(instance_path);
    FormKind kind = parse_kind(kind_tag_s);
    Model m = build_model(inst, kind, mode == "milp", segments);
    SolveResult r = solve_lp(m.relax());
    std::cout << "status " << status_name(r.status) << "\n";
    if (r.status == SolveStatus::Optimal) {
        auto [iu, iall] = integer_proportions(r, m);
        std::cout << "z_cr " << fmt_num(r.objective) << "\n"
                  << "i_u " << fmt_num(iu) << "\n"
                  << "i_all " << fmt_num(iall) << "\n"
                  << "iterations " << r.iterations << " method " << r.method << "\n";
    } else if (!r.note.empty()) {
        std::cout << "note " << r.note << "\n";
    }
    if (!sol_out.empty()) write_file(sol_out, write_solution(r, m));
    return r.status == SolveStatus::Optimal ? 0 : 1;
}

int cmd_solve(const std::string& instance_path, const std::string& kind_tag_s,
              const std::string& mode, int segments, double gap, long nodes, double time_limit,
              const std::string& engine, std::string solver_cmd, const std::string& sol_out) {
    Instance inst = load_instance(instance_path);
    FormKind kind = parse_kind(kind_tag_s);
    Model m = build_model(inst, kind, mode == "milp", segments);
    SolveResult r;
    if (engine == "external") {
        if (solver_cmd.empty()) {
            const char* env = std::getenv("UCB_SOLVER_CMD");
            if (env) solver_cmd = env;
        }
        if (solver_cmd.empty()) {
            std::cerr << "external engine needs --solver-cmd or UCB_SOLVER_CMD\n";
            return 2;
        }
        fs::path dir = fs::temp_directory_path() / "ucb-ext";
        fs::create_directories(dir);
        r = solve_external(m, solver_cmd, dir.string());
    } else {
        MipLimits lim;
        lim.node_limit = nodes;
        if (time_limit > 0) lim.time_limit = time_limit;
        r = solve_mip(m, gap, lim);
    }
    std::cout << "status " << status_name(r.status) << "\n";
    if (std::isfinite(r.objective)) std::cout << "objective " << fmt_num(r.objective) << "\n";
    if (std::isfinite(r.bound)) std::cout << "bound " << fmt_num(r.bound) << "\n";
    std::cout << "nodes " << r.nodes << " iterations " << r.iterations << " method " << r.method
              << "\n";
    if (!r.note.empty()) std::cout << "note " << r.note << "\n";
    if (!sol_out.empty()) write_file(sol_out, write_solution(r, m));
    return (r.status == SolveStatus::Optimal || r.status == SolveStatus::Limit) ? 0 : 1;
}

int cmd_compare(const std::vector<std::string>& instance_paths,
                const std::vector<std::string>& kind_tags, const std::string& mode, int segments,
                double gap, long nodes, int jobs, bool relax_only, const std::string& out_dir) {
    std::vector<std::pair<std::string, Instance>> instances;
    for (const auto& p : instance_paths)
        instances.emplace_back(fs::path(p).stem().string(), load_instance(p));
    MatrixOptions opt;
    opt.milp = mode == "milp";
    opt.segments = segments;
    opt.gap_tol = gap;
    opt.limits.node_limit = nodes;
    opt.jobs = jobs;
    opt.with_mip = !relax_only;
    MatrixResult res = run_matrix(instances, parse_kinds(kind_tags), opt);
    fs::create_directories(out_dir);
    write_file((fs::path(out_dir) / "compare.csv").string(), matrix_csv(res));
    write_file((fs::path(out_dir) / "timing.csv").string(), timing_csv(res));
    for (const auto& n : res.notes) std::cerr << n << "\n";
    std::cout << "wrote " << (fs::path(out_dir) / "compare.csv").string() << " ("
              << res.records.size() << " rows)\n";
    if (!res.chain_ok) {
        std::cerr << "tightness-chain post-check failed\n";
        return 1;
    }
    return 0;
}

int cmd_verify(const std::string& suite, int draws, std::uint64_t seed, const std::string& mode_s,
               int periods) {
    using namespace ucb::lab;
    int falsified = 0, inconclusive = 0, verified = 0;
    auto emit = [&](const PolytopeReport& r) {
        std::cout << verdict_name(r.verdict) << "  " << r.check;
        if (!r.params.empty()) std::cout << "  [" << r.params << "]";
        if (!r.notes.empty()) std::cout << "  -- " << r.notes;
        if (!r.witness.empty() && r.verdict == Verdict::Falsified)
            std::cout << "\n    witness: " << r.witness;
        std::cout << "\n";
        switch (r.verdict) {
            case Verdict::Verified: ++verified; break;
            case Verdict::Falsified: ++falsified; break;
            default: ++inconclusive;
        }
    };
    LabRng rng(seed);
    SetMode mode = mode_s == "C" ? SetMode::C : SetMode::B;
    bool all = suite == "all";

    if (all || suite == "states") emit(check_base_relations());
    if (all || suite == "tu") emit(check_tu());
    if (all || suite == "facets") {
        for (int d = 0; d < draws; ++d) {
            for (UnitClass cls : {UnitClass::J1, UnitClass::Jge2}) {
                QParams p = draw_params(rng, cls);
                std::vector<QIneq> b_list = {wq::eq46(p), wq::eq50(p), wq::eq51(p)};
                if (cls == UnitClass::J1) {
                    b_list.push_back(wq::eq47(p));
                    b_list.push_back(wq::eq48(p));
                    b_list.push_back(wq::eq49(p));
                }
                for (const auto& q : b_list) emit(certify_facet(q, p, cls, SetMode::B));
                std::vector<QIneq> c_list = {wq::eq46(p), wq::eq58(p), wq::eq59(p), wq::eq60(p),
                                             wq::eq61(p), wq::eq62(p), wq::eq63(p)};
                if (cls == UnitClass::J1) {
                    c_list.push_back(wq::eq47(p));
                    c_list.push_back(wq::eq48(p));
                    c_list.push_back(wq::eq49(p));
                    c_list.push_back(wq::eq50(p));
                    c_list.push_back(wq::eq51(p));
                }
                for (const auto& q : c_list) emit(certify_facet(q, p, cls, SetMode::C));
            }
        }
    }
    if (all || suite == "hull") {
        for (int d = 0; d < draws; ++d) {
            UnitClass cls = d % 2 ? UnitClass::Jge2 : UnitClass::J1;
            QParams p = draw_params(rng, cls);
            emit(check_integral_hull(p, cls, mode, periods));
        }
    }
    if (all || suite == "dominance") {
        for (int d = 0; d < std::max(1, draws / 4); ++d) {
            QParams p = draw_params(rng, UnitClass::J1);
            for (const auto& name : dominance_catalog()) emit(check_dominance(name, p));
        }
        auto sd = check_startup_dominance(Rat(10), Rat(30), make_rat(9, 10), make_rat(1, 2));
        PolytopeReport rep;
        rep.check = "dominance:startup_psi";
        rep.verdict = (sd.containment == Verdict::Verified && sd.strict) ? Verdict::Verified
                                                                         : Verdict::Falsified;
        rep.notes = "floors " + rat_str(sd.floor_projected) + " vs " + rat_str(sd.floor_classic);
        emit(rep);
    }
    if (all || suite == "projection") {
        for (int d = 0; d < draws; ++d) {
            for (UnitClass cls : {UnitClass::J1, UnitClass::Jge2}) {
                QParams p = draw_params(rng, cls);
                emit(check_projection_equivalence(p));
            }
        }
    }
    std::cout << "verified " << verified << ", falsified " << falsified << ", inconclusive "
              << inconclusive << "\n";
    if (inconclusive) std::cerr << "warning: inconclusive checks present\n";
    return falsified ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"unit-commitment formulation workbench"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("gen", "generate a synthetic instance file");
    std::uint64_t seed = 1;
    int units = 10, periods = 24;
    std::string profile = "sine", out = "instance.json";
    gen->add_option("--seed", seed);
    gen->add_option("--units", units);
    gen->add_option("--periods", periods);
    gen->add_option("--profile", profile)->check(CLI::IsMember({"sine", "flat"}));
    gen->add_option("--out", out);

    auto* build = app.add_subcommand("build", "assemble a formulation and write MPS/LP files");
    std::string instance_path, kind = "3P-HD", mode = "miqp", out_dir = ".";
    int segments = 4;
    build->add_option("--instance", instance_path)->required();
    build->add_option("--kind", kind);
    build->add_option("--mode", mode)->check(CLI::IsMember({"miqp", "milp"}));
    build->add_option("--segments", segments)->check(CLI::PositiveNumber);
    build->add_option("--out-dir", out_dir);

    auto* relax = app.add_subcommand("relax", "solve the continuous relaxation");
    std::string sol_out;
    relax->add_option("--instance", instance_path)->required();
    relax->add_option("--kind", kind);
    relax->add_option("--mode", mode)->check(CLI::IsMember({"miqp", "milp"}));
    relax->add_option("--segments", segments)->check(CLI::PositiveNumber);
    relax->add_option("--sol", sol_out);

    auto* solve = app.add_subcommand("solve", "solve the MIP with the built-in or external solver");
    double gap = 0.005, time_limit = 0.0;
    long nodes = 1000000;
    std::string engine = "builtin", solver_cmd;
    solve->add_option("--instance", instance_path)->required();
    solve->add_option("--kind", kind);
    solve->add_option("--mode", mode)->check(CLI::IsMember({"miqp", "milp"}));
    solve->add_option("--segments", segments)->check(CLI::PositiveNumber);
    solve->add_option("--gap", gap)->check(CLI::Range(0.0, 0.999));
    solve->add_option("--nodes", nodes);
    solve->add_option("--time-limit", time_limit);
    solve->add_option("--engine", engine)->check(CLI::IsMember({"builtin", "external"}));
    solve->add_option("--solver-cmd", solver_cmd);
    solve->add_option("--sol", sol_out);

    auto* compare = app.add_subcommand("compare", "relax+solve a matrix of formulations, emit CSV");
    std::vector<std::string> instance_paths, kind_tags;
    int jobs = 1;
    bool relax_only = false;
    long cmp_nodes = 20000;
    compare->add_option("--instance", instance_paths)->required();
    compare->add_option("--kinds", kind_tags);
    compare->add_option("--mode", mode)->check(CLI::IsMember({"miqp", "milp"}));
    compare->add_option("--segments", segments)->check(CLI::PositiveNumber);
    compare->add_option("--gap", gap)->check(CLI::Range(0.0, 0.999));
    compare->add_option("--nodes", cmp_nodes);
    compare->add_option("--jobs", jobs)->check(CLI::PositiveNumber);
    compare->add_flag("--relax-only", relax_only);
    compare->add_option("--out-dir", out_dir);

    auto* verify = app.add_subcommand("verify", "run the polyhedral verification suites");
    std::string suite = "all", vmode = "B";
    int draws = 20, vperiods = 3;
    verify->add_option("suite", suite)
        ->check(CLI::IsMember({"states", "facets", "hull", "tu", "dominance", "projection", "all"}));
    verify->add_option("--draws", draws)->check(CLI::PositiveNumber);
    verify->add_option("--seed", seed);
    verify->add_option("--mode", vmode)->check(CLI::IsMember({"B", "C"}));
    verify->add_option("--periods", vperiods)->check(CLI::Range(3, 6));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;  // usage errors exit 2
    }

    try {
        if (gen->parsed()) return cmd_gen(seed, units, periods, profile, out);
        if (build->parsed()) return cmd_build(instance_path, kind, mode, segments, out_dir);
        if (relax->parsed()) return cmd_relax(instance_path, kind, mode, segments, sol_out);
        if (solve->parsed())
            return cmd_solve(instance_path, kind, mode, segments, gap, nodes, time_limit, engine,
                             solver_cmd, sol_out);
        if (compare->parsed())
            return cmd_compare(instance_paths, kind_tags, mode, segments, gap, cmp_nodes, jobs,
                               relax_only, out_dir);
        if (verify->parsed()) return cmd_verify(suite, draws, seed, vmode, vperiods);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
