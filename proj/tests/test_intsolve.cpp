#include "doctest.h"

#include "whcryst/intsolve.hpp"

using namespace whcryst;

namespace {

bool satisfies(const std::vector<VecQ>& rows, const VecQ& b, const VecZ& z) {
    for (size_t r = 0; r < rows.size(); ++r) {
        Rat acc = 0;
        for (size_t j = 0; j < z.size(); ++j) acc += rows[r][j] * Rat(z[j]);
        if (acc != b[r]) return false;
    }
    return true;
}

bool homogeneous(const std::vector<VecQ>& rows, const VecZ& z) {
    for (const auto& row : rows) {
        Rat acc = 0;
        for (size_t j = 0; j < z.size(); ++j) acc += row[j] * Rat(z[j]);
        if (acc != 0) return false;
    }
    return true;
}

} // namespace

TEST_CASE("integer linear systems: solvable cases") {
    std::vector<VecQ> rows = {{Rat(2)}};
    auto s = solve_integer(rows, {Rat(4)}, 1);
    REQUIRE(s.has_value());
    CHECK(s->particular == VecZ{2});
    CHECK(s->lattice.empty());

    rows = {{Rat(1), Rat(1)}};
    s = solve_integer(rows, {Rat(3)}, 2);
    REQUIRE(s.has_value());
    CHECK(satisfies(rows, {Rat(3)}, s->particular));
    REQUIRE(s->lattice.size() == 1);
    CHECK(homogeneous(rows, s->lattice[0]));

    // Rational coefficients are cleared before elimination.
    rows = {{Rat(1, 2), Rat(1, 3)}};
    s = solve_integer(rows, {Rat(7, 6)}, 2);
    REQUIRE(s.has_value());
    CHECK(satisfies(rows, {Rat(7, 6)}, s->particular));
    REQUIRE(s->lattice.size() == 1);
    CHECK(homogeneous(rows, s->lattice[0]));
}

TEST_CASE("integer linear systems: infeasible cases") {
    CHECK_FALSE(solve_integer({{Rat(2)}}, {Rat(3)}, 1).has_value());
    CHECK_FALSE(solve_integer({{Rat(1)}}, {Rat(1, 2)}, 1).has_value());
    CHECK_FALSE(solve_integer({{Rat(2), Rat(4)}}, {Rat(5)}, 2).has_value());
}

TEST_CASE("empty systems leave every coordinate free") {
    auto s = solve_integer({}, {}, 2);
    REQUIRE(s.has_value());
    CHECK(s->particular == VecZ{0, 0});
    CHECK(s->lattice.size() == 2);
}

TEST_CASE("arithmetic progression normalization") {
    Progression p{Rat(2, 3), Rat(1)};
    CHECK(p.min_abs() == Rat(-1, 3));
    Progression half{Rat(1, 2), Rat(1)};
    CHECK(half.min_abs() == Rat(1, 2)); // tie resolved toward positive
    Progression zero{Rat(0), Rat(1)};
    CHECK(zero.min_abs() == 0);
    CHECK(p.contains(Rat(5, 3)));
    CHECK_FALSE(p.contains(Rat(1, 2)));
}

TEST_CASE("translation feasibility along a direction") {
    // c + t h integral: h = (0,1) leaves the first coordinate untouched.
    auto p = line_feasible({Rat(1, 2), Rat(0)}, {0, 1});
    CHECK_FALSE(p.has_value());

    p = line_feasible({Rat(1), Rat(1, 3)}, {0, 1});
    REQUIRE(p.has_value());
    CHECK(p->step == 1);
    CHECK(p->min_abs() == Rat(-1, 3));

    p = line_feasible({Rat(0), Rat(0)}, {2, 1});
    REQUIRE(p.has_value());
    CHECK(p->step == 1);
    CHECK(p->t0 == 0);

    p = line_feasible({Rat(1, 2), Rat(3, 4)}, {2, 1});
    REQUIRE(p.has_value());
    CHECK(p->min_abs() == Rat(1, 4));

    CHECK_FALSE(line_feasible({Rat(1, 2), Rat(1, 3)}, {0, 1}).has_value());
}

TEST_CASE("mixed feasibility with free rational directions") {
    // No free directions: reduces to integrality of c.
    CHECK_FALSE(mixed_feasible({Rat(1, 2), Rat(0)}, {}).has_value());
    auto w = mixed_feasible({Rat(3), Rat(-2)}, {});
    REQUIRE(w.has_value());
    CHECK(w->z == VecZ{3, -2});

    // One direction (1,0): only the second coordinate constrains.
    std::vector<VecQ> dirs = {{Rat(1), Rat(0)}};
    CHECK(mixed_feasible({Rat(1, 2), Rat(0)}, dirs).has_value());
    CHECK_FALSE(mixed_feasible({Rat(0), Rat(1, 2)}, dirs).has_value());
}

TEST_CASE("bezout rows for primitive vectors") {
    auto u = bezout_row({3, 5});
    CHECK(u[0] * 3 + u[1] * 5 == 1);
    u = bezout_row({0, 1, 0});
    CHECK(u[1] == 1);
    u = bezout_row({6, 10, 15});
    CHECK(u[0] * 6 + u[1] * 10 + u[2] * 15 == 1);
    CHECK_THROWS_AS(bezout_row({2, 4}), ValidationError);
}

TEST_CASE("residue closure in the torus") {
    auto r = residue_subgroup({{Rat(1, 2)}}, 1);
    CHECK(r.size() == 2);
    r = residue_subgroup({{Rat(1, 3)}, {Rat(1, 2)}}, 1);
    CHECK(r.size() == 6);
    r = residue_subgroup({}, 1);
    REQUIRE(r.size() == 1);
    CHECK(r[0] == VecQ{Rat(0)});
    r = residue_subgroup({{Rat(1, 2), Rat(1, 2)}}, 2);
    CHECK(r.size() == 2);
}
