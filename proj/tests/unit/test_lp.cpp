#include <doctest.h>

#include "ordref/lp.hpp"

#include <random>

using namespace ordref;

TEST_CASE("rationals parse exactly and canonicalize") {
    CHECK(parse_rational("3/6") == frac(1, 2));
    CHECK(to_string(parse_rational("3/6")) == "1/2");
    CHECK(parse_rational("0.8") == frac(4, 5));
    CHECK(parse_rational("-0.125") == frac(-1, 8));
    CHECK(parse_rational("3e-2") == frac(3, 100));
    CHECK(parse_rational("2.5E1") == 25);
    CHECK(to_string(parse_rational("10/5")) == "2");
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("abc"));
    CHECK_THROWS(parse_rational(""));
    CHECK(to_decimal(frac(2, 3), 4) == "0.6667");
    CHECK(to_decimal(frac(-1, 2)) == "-0.5");
}

TEST_CASE("strict interval is feasible") {
    LinearFeasibilityProblem lp;
    auto x = lp.add_variable("x");
    lp.add({{x, 1}}, Relation::GT, 0);
    lp.add({{x, 1}}, Relation::LT, 1);
    auto r = solve_linear_feasibility(lp);
    REQUIRE(r.feasible);
    CHECK(r.assignment[0] > 0);
    CHECK(r.assignment[0] < 1);
    CHECK(satisfies(lp, r.assignment));
}

TEST_CASE("contradiction is infeasible") {
    LinearFeasibilityProblem lp;
    auto x = lp.add_variable("x");
    lp.add({{x, 1}}, Relation::GE, 1);
    lp.add({{x, 1}}, Relation::LE, 0);
    CHECK_FALSE(solve_linear_feasibility(lp).feasible);
}

TEST_CASE("strict contradiction with zero gap is infeasible") {
    LinearFeasibilityProblem lp;
    auto x = lp.add_variable("x");
    lp.add({{x, 1}}, Relation::GT, 0);
    lp.add({{x, 1}}, Relation::LE, 0);
    CHECK_FALSE(solve_linear_feasibility(lp).feasible);
}

TEST_CASE("Allais utility system is feasible") {
    LinearFeasibilityProblem lp;
    auto u = lp.add_variable("u(3000)");
    auto v = lp.add_variable("v(3000)");
    lp.add({{u, 1}}, Relation::GT, frac(4, 5));
    lp.add({{v, 1}}, Relation::LT, frac(4, 5));
    for (auto w : {u, v}) {
        lp.add({{w, 1}}, Relation::GE, 0);
        lp.add({{w, 1}}, Relation::LE, 1);
    }
    auto r = solve_linear_feasibility(lp);
    REQUIRE(r.feasible);
    CHECK(r.assignment[u] > frac(4, 5));
    CHECK(r.assignment[v] < frac(4, 5));
    CHECK(satisfies(lp, r.assignment));
}

TEST_CASE("equalities and free variables") {
    LinearFeasibilityProblem lp;
    auto x = lp.add_variable("x");
    auto y = lp.add_variable("y");
    lp.add({{x, 1}, {y, 1}}, Relation::EQ, -3);
    lp.add({{x, 1}, {y, -1}}, Relation::EQ, 1);
    auto r = solve_linear_feasibility(lp);
    REQUIRE(r.feasible);
    CHECK(r.assignment[x] == -1);
    CHECK(r.assignment[y] == -2);
}

TEST_CASE("empty problem is feasible") {
    LinearFeasibilityProblem lp;
    lp.add_variable("x");
    CHECK(solve_linear_feasibility(lp).feasible);
}

// Oracle: a 1-D system is feasible iff the interval implied by its bounds is nonempty.
TEST_CASE("random one-variable systems agree with interval reasoning") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> coef(-3, 3), rhs(-5, 5), rel(0, 4);
    for (int trial = 0; trial < 300; ++trial) {
        LinearFeasibilityProblem lp;
        auto x = lp.add_variable("x");
        std::optional<Rational> lo, hi;
        bool lo_strict = false, hi_strict = false, contradiction = false;
        auto lower = [&](Rational v, bool s) {
            if (!lo || v > *lo || (v == *lo && s)) { lo = v; lo_strict = s; }
        };
        auto upper = [&](Rational v, bool s) {
            if (!hi || v < *hi || (v == *hi && s)) { hi = v; hi_strict = s; }
        };
        int k = 1 + trial % 4;
        for (int i = 0; i < k; ++i) {
            int a = coef(rng);
            Rational b = rhs(rng);
            auto r = static_cast<Relation>(rel(rng));
            lp.add({{x, a}}, r, b);
            if (a == 0) {
                bool ok = r == Relation::GE ? 0 >= b : r == Relation::GT ? 0 > b : r == Relation::EQ ? b == 0
                          : r == Relation::LE ? 0 <= b : 0 < b;
                contradiction = contradiction || !ok;
                continue;
            }
            Rational v = b / a;
            bool flip = a < 0;
            bool ge = r == Relation::GE || r == Relation::GT, strict = r == Relation::GT || r == Relation::LT;
            if (r == Relation::EQ) { lower(v, false); upper(v, false); continue; }
            if (ge != flip) lower(v, strict); else upper(v, strict);
        }
        bool expected = !contradiction;
        if (expected && lo && hi) expected = *lo < *hi || (*lo == *hi && !lo_strict && !hi_strict);
        auto res = solve_linear_feasibility(lp);
        CHECK(res.feasible == expected);
        if (res.feasible) CHECK(satisfies(lp, res.assignment));
    }
}
