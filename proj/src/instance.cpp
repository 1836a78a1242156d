#include "ucb/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "ucb/model.hpp"  // fmt_num

namespace ucb {

InitialWindows derive_initial_windows(const Unit& u, int T) {
    long long up = static_cast<long long>(u.u0) * (u.t_on - u.t0);
    long long down = static_cast<long long>(1 - u.u0) * (u.t_off + u.t0);
    InitialWindows w;
    w.up = static_cast<int>(std::max(0LL, std::min<long long>(T, up)));
    w.down = static_cast<int>(std::max(0LL, std::min<long long>(T, down)));
    return w;
}

ValidationReport validate(const Instance& inst) {
    ValidationReport rep;
    auto err = [&](const std::string& m) { rep.errors.push_back(m); };

    for (size_t k = 0; k < inst.units.size(); ++k) {
        const Unit& u = inst.units[k];
        std::string who = "unit " + (u.id.empty() ? std::to_string(k) : u.id) + ": ";
        if (!(u.p_min >= 0.0)) err(who + "p_min must be >= 0");
        if (!(u.p_max > u.p_min)) err(who + "p_max > p_min required");
        if (!(u.p_up > 0.0)) err(who + "p_up must be > 0");
        if (!(u.p_down > 0.0)) err(who + "p_down must be > 0");
        if (!(u.p_start >= u.p_min)) err(who + "p_start >= p_min required");
        if (!(u.p_shut >= u.p_min)) err(who + "p_shut >= p_min required");
        if (u.p_start > u.p_max) err(who + "p_start <= p_max required");
        if (u.p_shut > u.p_max) err(who + "p_shut <= p_max required");
        if (!(u.c_hot >= 0.0)) err(who + "c_hot must be >= 0");
        if (!(u.c_cold >= u.c_hot)) err(who + "c_cold >= c_hot required");
        if (u.t_on < 1) err(who + "t_on must be >= 1");
        if (u.t_off < 1) err(who + "t_off must be >= 1");
        if (u.t_cold < 0) err(who + "t_cold must be >= 0");
        if (u.gamma < 0.0) err(who + "gamma must be >= 0 (convex cost)");
        if (u.u0 != 0 && u.u0 != 1) err(who + "u0 must be 0 or 1");
        if (u.t0 == 0)
            err(who + "t0 = 0 is ambiguous (prior state undefined)");
        else if (u.u0 == 1 && u.t0 < 0)
            err(who + "u0 = 1 requires t0 > 0");
        else if (u.u0 == 0 && u.t0 > 0)
            err(who + "u0 = 0 requires t0 < 0");
        if (u.p0 >= 0.0) {
            if (u.u0 == 0 && u.p0 != 0.0) err(who + "p0 must be 0 when u0 = 0");
            if (u.u0 == 1 && (u.p0 < u.p_min || u.p0 > u.p_max))
                err(who + "p0 must lie in [p_min, p_max] when u0 = 1");
        }
    }

    const auto& s = inst.series;
    if (s.length() < 2) err("series: at least 2 periods required");
    if (s.reserve.size() != s.demand.size()) err("series: demand/reserve length mismatch");
    for (size_t t = 0; t < s.demand.size(); ++t) {
        if (!(s.demand[t] >= 0.0) || !std::isfinite(s.demand[t]))
            err("series: demand[" + std::to_string(t + 1) + "] must be finite and >= 0");
        if (t < s.reserve.size() && (!(s.reserve[t] >= 0.0) || !std::isfinite(s.reserve[t])))
            err("series: reserve[" + std::to_string(t + 1) + "] must be finite and >= 0");
    }

    double cap = 0.0;
    for (const auto& u : inst.units) cap += u.p_max;
    for (size_t t = 0; t < s.demand.size() && t < s.reserve.size(); ++t) {
        if (s.demand[t] + s.reserve[t] > cap) {
            rep.warnings.push_back("possibly infeasible: demand+reserve exceeds total capacity at period " +
                                   std::to_string(t + 1));
            break;
        }
    }
    return rep;
}

namespace {

// splitmix-style generator: stable across platforms, unlike std distributions
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed + 0x9e3779b97f4a7c15ULL) {}
    std::uint64_t next_u64() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int uniform_int(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

double round2(double v) { return std::round(v * 100.0) / 100.0; }

}  // namespace

Instance generate(std::uint64_t seed, int n_units, int T, const std::string& profile) {
    if (n_units < 1) throw std::invalid_argument("n_units must be >= 1");
    if (T < 2) throw std::invalid_argument("T must be >= 2");
    if (profile != "sine" && profile != "flat")
        throw std::invalid_argument("unknown profile: " + profile);

    Rng rng(seed);
    Instance inst;
    inst.units.reserve(static_cast<size_t>(n_units));
    for (int k = 0; k < n_units; ++k) {
        Unit u;
        u.id = "g" + std::to_string(k + 1);
        u.p_max = round2(rng.uniform(120.0, 520.0));
        u.p_min = round2(rng.uniform(0.2, 0.5) * u.p_max);
        double span = u.p_max - u.p_min;
        u.p_up = round2(rng.uniform(0.2, 0.6) * span);
        u.p_down = round2(rng.uniform(0.2, 0.6) * span);
        // startup/shutdown capability between p_min and mid-range so the
        // three-period composites p~start+p~up, p~shut+p~down usually stay below 1
        u.p_start = round2(u.p_min + rng.uniform(0.05, 0.45) * span);
        u.p_shut = round2(u.p_min + rng.uniform(0.05, 0.45) * span);
        u.t_on = rng.uniform_int(1, 4);
        u.t_off = rng.uniform_int(1, 4);
        u.t_cold = rng.uniform_int(0, 2);
        u.alpha = round2(rng.uniform(100.0, 600.0));
        u.beta = round2(rng.uniform(8.0, 25.0));
        u.gamma = std::round(rng.uniform(0.0008, 0.008) * 1e6) / 1e6;
        u.c_hot = round2(rng.uniform(40.0, 300.0));
        u.c_cold = round2(u.c_hot * rng.uniform(1.5, 3.0));
        if (rng.uniform() < 0.6) {
            u.u0 = 1;
            u.t0 = u.t_on + rng.uniform_int(0, 3);  // mostly free of forced windows
        } else {
            u.u0 = 0;
            u.t0 = -(u.t_off + u.t_cold + rng.uniform_int(0, 3));
        }
        inst.units.push_back(u);
    }

    double cap = 0.0;
    for (const auto& u : inst.units) cap += u.p_max;
    inst.series.demand.resize(static_cast<size_t>(T));
    inst.series.reserve.resize(static_cast<size_t>(T));
    const double pi = 3.14159265358979323846;
    for (int t = 0; t < T; ++t) {
        double d;
        if (profile == "flat") {
            d = 0.72 * cap;
        } else {
            // daily-load shape: trough near the start, peak around 3/4 of the horizon
            double phase = 2.0 * pi * (t + 0.5) / T;
            d = cap * (0.62 + 0.20 * std::sin(phase - pi / 2.0));
        }
        inst.series.demand[static_cast<size_t>(t)] = round2(d);
        inst.series.reserve[static_cast<size_t>(t)] = round2(0.05 * d);
    }
    return inst;
}

namespace {

using nlohmann::json;

json unit_to_json(const Unit& u) {
    json j;
    j["id"] = u.id;
    j["alpha"] = u.alpha;
    j["beta"] = u.beta;
    j["gamma"] = u.gamma;
    j["c_hot"] = u.c_hot;
    j["c_cold"] = u.c_cold;
    j["t_on"] = u.t_on;
    j["t_off"] = u.t_off;
    j["t_cold"] = u.t_cold;
    j["p_max"] = u.p_max;
    j["p_min"] = u.p_min;
    j["p_up"] = u.p_up;
    j["p_down"] = u.p_down;
    j["p_start"] = u.p_start;
    j["p_shut"] = u.p_shut;
    j["u0"] = u.u0;
    j["t0"] = u.t0;
    if (u.p0 >= 0.0) j["p0"] = u.p0;
    return j;
}

double num(const json& j, const char* key) {
    const auto& v = j.at(key);
    if (!v.is_number()) throw std::invalid_argument(std::string("field ") + key + " must be a number");
    double d = v.get<double>();
    if (!std::isfinite(d)) throw std::invalid_argument(std::string("field ") + key + " must be finite");
    return d;
}

}  // namespace

std::string serialize(const Instance& inst) {
    json j;
    j["units"] = json::array();
    for (const auto& u : inst.units) j["units"].push_back(unit_to_json(u));
    j["demand"] = inst.series.demand;
    j["reserve"] = inst.series.reserve;
    return j.dump(2) + "\n";
}

Instance parse_instance(const std::string& text) {
    json j = json::parse(text);  // throws json::parse_error on bad input
    Instance inst;
    for (const auto& ju : j.at("units")) {
        Unit u;
        u.id = ju.value("id", "");
        u.alpha = num(ju, "alpha");
        u.beta = num(ju, "beta");
        u.gamma = num(ju, "gamma");
        u.c_hot = num(ju, "c_hot");
        u.c_cold = num(ju, "c_cold");
        u.t_on = ju.at("t_on").get<int>();
        u.t_off = ju.at("t_off").get<int>();
        u.t_cold = ju.at("t_cold").get<int>();
        u.p_max = num(ju, "p_max");
        u.p_min = num(ju, "p_min");
        u.p_up = num(ju, "p_up");
        u.p_down = num(ju, "p_down");
        u.p_start = num(ju, "p_start");
        u.p_shut = num(ju, "p_shut");
        u.u0 = ju.at("u0").get<int>();
        u.t0 = ju.at("t0").get<int>();
        if (ju.contains("p0")) u.p0 = num(ju, "p0");
        inst.units.push_back(std::move(u));
    }
    for (const auto& v : j.at("demand")) {
        if (!v.is_number() || !std::isfinite(v.get<double>()))
            throw std::invalid_argument("demand entries must be finite numbers");
        inst.series.demand.push_back(v.get<double>());
    }
    for (const auto& v : j.at("reserve")) {
        if (!v.is_number() || !std::isfinite(v.get<double>()))
            throw std::invalid_argument("reserve entries must be finite numbers");
        inst.series.reserve.push_back(v.get<double>());
    }
    return inst;
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    Instance inst = parse_instance(ss.str());
    ValidationReport rep = validate(inst);
    if (!rep.ok()) {
        std::string msg = "invalid instance " + path + ":";
        for (const auto& e : rep.errors) msg += "\n  " + e;
        throw std::runtime_error(msg);
    }
    return inst;
}

void save_instance(const Instance& inst, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write instance file: " + path);
    out << serialize(inst);
}

}  // namespace ucb
