#include <stdexcept>

#include "doctest.h"
#include "ucb/model.hpp"

using namespace ucb;

TEST_CASE("variables: indices, duplicates, bounds") {
    Model m;
    auto u = m.add_variable("u_0_1", VarKind::Binary, 0, 1);
    CHECK(u.index == 0);
    CHECK_THROWS_AS(m.add_variable("u_0_1", VarKind::Binary, 0, 1), std::invalid_argument);
    auto p = m.add_variable("p_0_1", VarKind::Continuous, 0, 1);
    CHECK(p.index == 1);
    CHECK_THROWS_AS(m.add_variable("x", VarKind::Continuous, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(m.add_variable("y", VarKind::Binary, -1, 1), std::invalid_argument);
}

TEST_CASE("constraint terms are merged and zeros dropped") {
    Model m;
    auto a = m.add_variable("a", VarKind::Continuous, 0, 10);
    auto b = m.add_variable("b", VarKind::Continuous, 0, 10);
    m.add_constraint({{a.index, 1.0}, {b.index, 2.0}, {a.index, 1.5}, {b.index, -2.0}}, Sense::LE,
                     5.0, "t");
    const auto& c = m.constraints().front();
    REQUIRE(c.terms.size() == 1);
    CHECK(c.terms[0].first == a.index);
    CHECK(c.terms[0].second == doctest::Approx(2.5));
}

TEST_CASE("relax rekinds binaries and is idempotent") {
    Model m;
    m.add_variable("u", VarKind::Binary, 0, 1);
    m.add_variable("x", VarKind::Continuous, 0, 5);
    m.add_constraint({{0, 1.0}}, Sense::LE, 1.0, "row");
    Model r = m.relax();
    CHECK(r.variables()[0].kind == VarKind::Continuous);
    CHECK(r.variables()[0].lower == 0.0);
    CHECK(r.variables()[0].upper == 1.0);
    CHECK(r.constraints().size() == m.constraints().size());

    Model no_bin;
    no_bin.add_variable("x", VarKind::Continuous, 0, 5);
    Model r2 = no_bin.relax();
    CHECK(r2.variables()[0].kind == VarKind::Continuous);

    Model rr = r.relax();
    CHECK(rr.write_mps() == r.write_mps());  // relax(relax(m)) == relax(m)
    // stats invariant except the binary/continuous split
    auto s0 = m.stats(), s1 = r.stats();
    CHECK(s0.n_constraints == s1.n_constraints);
    CHECK(s0.n_nonzeros == s1.n_nonzeros);
    CHECK(s0.n_binary + s0.n_continuous == s1.n_binary + s1.n_continuous);
    CHECK(s1.n_binary == 0);
}

TEST_CASE("stats on the empty model") {
    Model m;
    CHECK(m.stats() == ModelStats{0, 0, 0, 0});
}

TEST_CASE("golden MPS: empty model") {
    Model m;
    m.name = "empty";
    CHECK(m.write_mps() ==
          "NAME          empty\n"
          "ROWS\n"
          " N  COST\n"
          "COLUMNS\n"
          "RHS\n"
          "BOUNDS\n"
          "ENDATA\n");
}

TEST_CASE("golden MPS: one binary with u <= 1") {
    Model m;
    m.name = "tiny";
    auto u = m.add_variable("u_0_1", VarKind::Binary, 0, 1);
    m.add_objective(u.index, 1.0);
    m.add_constraint({{u.index, 1.0}}, Sense::LE, 1.0, "eq9");
    std::string expect =
        "NAME          tiny\n"
        "ROWS\n"
        " N  COST\n"
        " L  c1\n"
        "COLUMNS\n"
        "    MARKER0   'MARKER'                 'INTORG'\n"
        "    u_0_1     COST      1              c1        1\n"
        "    MARKER1   'MARKER'                 'INTEND'\n"
        "RHS\n"
        "    RHS       c1        1\n"
        "BOUNDS\n"
        " BV BND       u_0_1\n"
        "ENDATA\n";
    CHECK(m.write_mps() == expect);
}

TEST_CASE("writers are deterministic and name-sensitive") {
    auto build = [](const char* vname) {
        Model m;
        auto x = m.add_variable(vname, VarKind::Continuous, 0, 2);
        m.add_objective(x.index, 3.0, 0.5);
        m.add_constraint({{x.index, 1.0}}, Sense::GE, 1.0, "g");
        return m;
    };
    Model a = build("x1");
    CHECK(a.write_mps() == build("x1").write_mps());
    CHECK(a.write_lp() == build("x1").write_lp());
    CHECK(a.write_mps() != build("x2").write_mps());
    // QMATRIX entry carries the 1/2 x'Qx convention: q = 2*coef
    CHECK(a.write_mps().find("QMATRIX") != std::string::npos);
    CHECK(a.write_mps().find("    x1        x1        1\n") != std::string::npos);
}

TEST_CASE("tag counts") {
    Model m;
    m.add_variable("x", VarKind::Continuous, 0, 1);
    m.add_constraint({{0, 1.0}}, Sense::LE, 1.0, "eq9");
    m.add_constraint({{0, 1.0}}, Sense::LE, 2.0, "eq9");
    m.add_constraint({{0, 1.0}}, Sense::GE, 0.0, "eq8");
    auto tc = m.tag_counts();
    CHECK(tc["eq9"] == 2);
    CHECK(tc["eq8"] == 1);
}
