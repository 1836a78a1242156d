#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "ucb/polytope.hpp"
#include "ucb/simplex.hpp"

using namespace ucb;

TEST_CASE("bound-only problems") {
    LpProblem lp;
    lp.add_column(1.0, 10.0, 1.0);
    auto o = lp.solve();
    CHECK(o.status == LpStatus::Optimal);
    CHECK(o.objective == doctest::Approx(1.0));
}

TEST_CASE("min x subject to x >= 1") {
    LpProblem lp;
    int x = lp.add_column(0.0, 10.0, 1.0);
    lp.add_row({{x, 1.0}}, Sense::GE, 1.0);
    auto o = lp.solve();
    REQUIRE(o.status == LpStatus::Optimal);
    CHECK(o.objective == doctest::Approx(1.0));
    CHECK(o.x[0] == doctest::Approx(1.0));
}

TEST_CASE("min -x subject to x <= 1, x free above") {
    LpProblem lp;
    int x = lp.add_column(0.0, std::numeric_limits<double>::infinity(), -1.0);
    lp.add_row({{x, 1.0}}, Sense::LE, 1.0);
    auto o = lp.solve();
    REQUIRE(o.status == LpStatus::Optimal);
    CHECK(o.objective == doctest::Approx(-1.0));
}

TEST_CASE("infeasible and unbounded detection") {
    LpProblem lp;
    int x = lp.add_column(0.0, 1.0, 1.0);
    lp.add_row({{x, 1.0}}, Sense::GE, 2.0);
    CHECK(lp.solve().status == LpStatus::Infeasible);

    LpProblem u;
    int y = u.add_column(0.0, std::numeric_limits<double>::infinity(), -1.0);
    u.add_row({{y, 1.0}}, Sense::GE, 1.0);
    CHECK(u.solve().status == LpStatus::Unbounded);
}

TEST_CASE("degenerate equality system") {
    LpProblem lp;
    int x = lp.add_column(0.0, 5.0, 1.0);
    int y = lp.add_column(0.0, 5.0, 2.0);
    lp.add_row({{x, 1.0}, {y, 1.0}}, Sense::EQ, 5.0);
    lp.add_row({{x, 1.0}, {y, 1.0}}, Sense::LE, 5.0);  // duplicate of the equality
    lp.add_row({{x, 1.0}}, Sense::LE, 5.0);
    auto o = lp.solve();
    REQUIRE(o.status == LpStatus::Optimal);
    CHECK(o.objective == doctest::Approx(5.0));
    CHECK(o.x[0] == doctest::Approx(5.0));
}

namespace {

struct TestRng {
    std::uint64_t s;
    explicit TestRng(std::uint64_t seed) : s(seed * 2654435761ULL + 17) {}
    double next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return static_cast<double>(s % 2000) / 100.0 - 10.0;
    }
    int below(int n) {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return static_cast<int>(s % static_cast<std::uint64_t>(n));
    }
};

LpProblem random_lp(TestRng& rng, int n, int m) {
    LpProblem lp;
    for (int j = 0; j < n; ++j) lp.add_column(0.0, 1.0 + std::abs(rng.next()), rng.next());
    for (int i = 0; i < m; ++i) {
        std::vector<std::pair<int, double>> terms;
        for (int j = 0; j < n; ++j)
            if (rng.below(3) != 0) terms.emplace_back(j, rng.next());
        if (terms.empty()) terms.emplace_back(rng.below(n), 1.0);
        Sense s = rng.below(4) == 0 ? Sense::GE : Sense::LE;
        lp.add_row(terms, s, std::abs(rng.next()) + 0.5);
    }
    return lp;
}

// independent exact reference: the lab's rational simplex
double rational_reference(const LpProblem& lp, bool& feasible) {
    lab::RatLp r;
    for (int j = 0; j < lp.n_cols(); ++j)
        r.add_var(Rat(lp.col_lo_[static_cast<size_t>(j)]), Rat(lp.col_hi_[static_cast<size_t>(j)]));
    for (int j = 0; j < lp.n_cols(); ++j)
        r.set_objective(j, -Rat(lp.cost_[static_cast<size_t>(j)]));  // minimize == maximize(-c)
    for (int i = 0; i < lp.n_rows(); ++i) {
        std::vector<std::pair<int, Rat>> terms;
        for (const auto& [j, a] : lp.rows_[static_cast<size_t>(i)]) terms.emplace_back(j, Rat(a));
        r.add_row(terms, lp.sense_[static_cast<size_t>(i)], Rat(lp.rhs_[static_cast<size_t>(i)]));
    }
    auto out = r.maximize();
    feasible = out.status == lab::RatLp::Status::Optimal;
    return feasible ? -static_cast<double>(out.value) : 0.0;
}

}  // namespace

TEST_CASE("agrees with the exact rational simplex on random boxes") {
    TestRng rng(42);
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        LpProblem lp = random_lp(rng, 2 + rng.below(5), 2 + rng.below(6));
        auto o = lp.solve();
        bool ref_feasible = false;
        double ref = rational_reference(lp, ref_feasible);
        if (o.status == LpStatus::Optimal) {
            REQUIRE(ref_feasible);
            CHECK(o.objective ==
                  doctest::Approx(ref).epsilon(1e-8).scale(std::max(1.0, std::abs(ref))));
            ++checked;
        } else if (o.status == LpStatus::Infeasible) {
            CHECK_FALSE(ref_feasible);
        }
    }
    CHECK(checked > 20);
}

TEST_CASE("LP duality at optimum") {
    TestRng rng(7);
    int checked = 0;
    for (int trial = 0; trial < 25; ++trial) {
        LpProblem lp = random_lp(rng, 3 + rng.below(4), 3 + rng.below(5));
        auto o = lp.solve();
        if (o.status != LpStatus::Optimal) continue;
        // bounded-variable dual objective: y.b plus reduced costs at active bounds
        double dual = 0.0;
        for (int i = 0; i < lp.n_rows(); ++i)
            dual += o.y[static_cast<size_t>(i)] * lp.rhs_[static_cast<size_t>(i)];
        for (int j = 0; j < lp.n_cols(); ++j) {
            double d = o.dj[static_cast<size_t>(j)];
            if (std::abs(d) < 1e-9) continue;
            dual += d * o.x[static_cast<size_t>(j)];
        }
        CHECK(dual == doctest::Approx(o.objective)
                          .epsilon(1e-6)
                          .scale(std::max(1.0, std::abs(o.objective))));
        ++checked;
    }
    CHECK(checked > 5);
}

TEST_CASE("adding a constraint never decreases the minimum") {
    TestRng rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        LpProblem lp = random_lp(rng, 3, 3);
        auto before = lp.solve();
        if (before.status != LpStatus::Optimal) continue;
        LpProblem harder = lp;
        harder.add_row({{0, 1.0}, {1, 1.0}}, Sense::GE, before.x[0] + before.x[1] + 0.25);
        auto after = harder.solve();
        if (after.status == LpStatus::Optimal)
            CHECK(after.objective >=
                  before.objective - 1e-7 * std::max(1.0, std::abs(before.objective)));
        else
            CHECK(after.status == LpStatus::Infeasible);
    }
}

TEST_CASE("deterministic across repeated solves") {
    TestRng rng(5);
    LpProblem lp = random_lp(rng, 6, 8);
    auto a = lp.solve();
    auto b = lp.solve();
    CHECK(a.status == b.status);
    CHECK(a.iterations == b.iterations);
    if (a.status == LpStatus::Optimal) CHECK(a.objective == b.objective);
}
