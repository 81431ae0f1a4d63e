#include <doctest.h>

#include "ordref/ordu.hpp"
#include "ordref/timepref.hpp"

using namespace ordref;

namespace {

DatedPayment pay(long x, long t) { return {Rational(x), Rational(t)}; }

DatedPayment pay(const char* x, const char* t) { return {parse_rational(x), parse_rational(t)}; }

// $18 now over $20 tomorrow, $20 in 4 days over $18 in 3, and $18 in 3 once $15 now is offered.
ChoiceDataset present_bias(bool with_triple = true) {
    std::vector<RawObservation> rows{{{"b", "c"}, {"b"}}, {{"d", "e"}, {"e"}}};
    if (with_triple) rows.push_back({{"a", "d", "e"}, {"d"}});
    return payment_data({{"a", pay(15, 0)}, {"b", pay(18, 0)}, {"c", pay(20, 1)}, {"d", pay(18, 3)}, {"e", pay(20, 4)}},
                        rows);
}

PbduParams fixture_params() {
    PbduParams p;
    p.L = {{Rational(15), Rational(0)}, {Rational(18), Rational(4)}, {Rational(20), frac(9, 2)}};
    p.D = {{Rational(0), Rational(-1)}, {Rational(3), frac(-1, 10)}};
    return p;
}

PbduParams exponential_params() {
    PbduParams p;
    p.L = {{Rational(15), Rational(0)}, {Rational(18), Rational(1)}, {Rational(20), frac(3, 2)}};
    p.D = {{Rational(0), frac(-2, 3)}};
    return p;
}

std::vector<Menu> menus_2_to_4(std::size_t n) {
    std::vector<Menu> out;
    for (auto& m : all_menus(n, 2))
        if (m.size() <= 4) out.push_back(m);
    return out;
}

std::vector<Rational> shifts(int n) {
    std::vector<Rational> out;
    for (int s = 0; s <= n; ++s) out.push_back(Rational(s));
    return out;
}

}  // namespace

TEST_CASE("earliest payments") {
    auto ds = present_bias();
    CHECK(ds.ids(earliest_payments(ds, ds.menu_of({"d", "e"}))) == std::vector<std::string>{"d"});
    CHECK(ds.ids(earliest_payments(ds, ds.menu_of({"a", "b"}))) == std::vector<std::string>{"a", "b"});
    CHECK(ds.ids(earliest_payments(ds, ds.menu_of({"e"}))) == std::vector<std::string>{"e"});
}

TEST_CASE("stationarity flags the present-bias pair") {
    auto ds = present_bias(false);
    auto w = stationarity_over(ds, ds.all());
    REQUIRE(w.size() == 1);
    CHECK(w[0].kind == "Stationarity");
    CHECK(w[0].menus == std::vector<Menu>{ds.menu_of({"b", "c"}), ds.menu_of({"d", "e"})});
    CHECK(w[0].narrative.find("delay 3") != std::string::npos);
    // replaying on exactly the witness menus reproduces it
    CHECK_FALSE(stationarity_over(ds, family_of(ds, w[0].menus)).empty());
    CHECK(stationarity_over(ds, family_of(ds, {ds.menu_of({"b", "c"})})).empty());
}

TEST_CASE("exponential data satisfy stationarity and the full battery") {
    auto p = exponential_params();
    p.D[Rational(2)] = p.D.begin()->second;
    auto grid = payment_grid(p);
    auto ds = simulate_pbdu(p, grid, menus_2_to_4(grid.size()));
    CHECK(stationarity_over(ds, ds.all()).empty());
    CHECK(warp_over(ds, ds.all()).empty());
    CHECK(check_time_reference_dependence(ds).empty());
    CHECK(check_present_bias(ds).empty());
    CHECK(check_outcome_monotonicity_impatience(ds).empty());
    auto link = linkage_report_time(ds);
    CHECK(link.warp);
    CHECK(link.stationarity);
    auto fit = fit_pbdu(ds);
    CHECK(fit.method == "exponential");
    CHECK(discounts_coincide(fit.params));
    CHECK(verify_pbdu(fit.params, ds).empty());
}

TEST_CASE("time reference dependence") {
    CHECK(check_time_reference_dependence(present_bias(false)).empty());
    // the triple and {15 now, 18 in 3} share the earliest payment
    auto bad = payment_data({{"a", pay(15, 0)}, {"d", pay(18, 3)}, {"e", pay(20, 4)}},
                            {{{"a", "d", "e"}, {"d"}}, {{"a", "d"}, {"a"}}});
    auto w = check_time_reference_dependence(bad);
    REQUIRE_FALSE(w.empty());
    CHECK(w.front().kind == "WARP");
    auto single = payment_data({{"a", pay(15, 0)}}, {{{"a"}, {"a"}}});
    CHECK(check_time_reference_dependence(single).empty());
}

TEST_CASE("pairwise and existential formulations on closed and open data") {
    auto bad = payment_data({{"a", pay(15, 0)}, {"d", pay(18, 3)}, {"e", pay(20, 4)}},
                            {{{"a", "d", "e"}, {"d"}},
                             {{"a", "d"}, {"a"}},
                             {{"a", "e"}, {"e"}},
                             {{"d", "e"}, {"e"}}});
    auto r = lemma2_equivalence(bad);
    CHECK(r.applicable);
    CHECK_FALSE(r.pairwise);
    CHECK_FALSE(r.existential);
    CHECK(r.agree());

    auto open = present_bias();
    CHECK_FALSE(lemma2_equivalence(open).applicable);
}

TEST_CASE("pairwise and existential formulations agree on random closed data") {
    std::mt19937_64 rng(5);
    int failing = 0;
    for (int t = 0; t < 100; ++t) {
        auto ds = random_closed_payment_data(rng);
        auto r = lemma2_equivalence(ds);
        CHECK(r.applicable);
        CHECK(r.pairwise == r.existential);
        failing += !r.pairwise;
    }
    // both verdicts occur
    CHECK(failing > 10);
    CHECK(failing < 100);
}

TEST_CASE("present bias clauses") {
    auto clause1 = payment_data({{"a", pay(10, 0)}, {"b", pay(12, 1)}, {"c", pay(10, 2)}, {"d", pay(12, 3)}},
                                {{{"a", "b"}, {"b"}}, {{"c", "d"}, {"c"}}});
    auto w = check_present_bias(clause1);
    REQUIRE(w.size() == 1);
    CHECK(w[0].narrative.rfind("clause 1", 0) == 0);
    CHECK(check_present_bias(present_bias()).empty());

    // t -> t/2 + 1
    auto clause2 = payment_data({{"a", pay(10, 0)}, {"b", pay(12, 2)}, {"c", pay(14, 4)}, {"d", pay(10, 1)},
                                 {"e", pay(12, 2)}, {"f", pay(14, 3)}},
                                {{{"a", "b", "c"}, {"a", "b", "c"}}, {{"d", "e", "f"}, {"d", "f"}}});
    w = check_present_bias(clause2);
    REQUIRE(w.size() == 1);
    CHECK(w[0].narrative.find("lambda 1/2, d 1") != std::string::npos);
    auto fixed = payment_data({{"a", pay(10, 0)}, {"b", pay(12, 2)}, {"c", pay(14, 4)}, {"d", pay(10, 1)},
                               {"e", pay(12, 2)}, {"f", pay(14, 3)}},
                              {{{"a", "b", "c"}, {"a", "b", "c"}}, {{"d", "e", "f"}, {"d", "e", "f"}}});
    CHECK(check_present_bias(fixed).empty());
}

TEST_CASE("outcome monotonicity and impatience") {
    auto ok = payment_data({{"a", pay(20, 1)}, {"b", pay(18, 1)}}, {{{"a", "b"}, {"a"}}});
    CHECK(check_outcome_monotonicity_impatience(ok).empty());
    auto late = payment_data({{"a", pay(18, 0)}, {"b", pay(18, 2)}}, {{{"a", "b"}, {"b"}}});
    auto w = check_outcome_monotonicity_impatience(late);
    REQUIRE(w.size() == 1);
    CHECK(w[0].kind == "Impatience");
    auto none = payment_data({{"a", pay(18, 0)}, {"b", pay(20, 2)}}, {{{"a", "b"}, {"b"}}});
    CHECK(check_outcome_monotonicity_impatience(none).empty());
}

TEST_CASE("fixture params reproduce the three choices") {
    auto ds = present_bias();
    auto p = fixture_params();
    CHECK(pbdu_issues(p).empty());
    CHECK(verify_pbdu(p, ds).empty());
    // 15 now, 18 in 3 days and 20 in 4 days under reference time 0
    CHECK(pbdu_value(p, pay(15, 0), Rational(0)) == 0);
    CHECK(pbdu_value(p, pay(18, 3), Rational(0)) == 1);
    CHECK(pbdu_value(p, pay(20, 4), Rational(0)) == frac(1, 2));
}

TEST_CASE("fit_pbdu on the present-bias fixture") {
    auto ds = present_bias();
    auto fit = fit_pbdu(ds);
    CHECK(fit.method == "pbdu");
    CHECK(fit.params.D.at(Rational(0)) < fit.params.D.at(Rational(3)));
    CHECK(verify_pbdu(fit.params, ds).empty());
    CHECK(pbdu_issues(fit.params).empty());
    auto sw = single_switching_check(fit.params, pay(18, 0), pay(20, 1), shifts(10));
    CHECK(sw.pass);
    CHECK(sw.switches == 1);
    CHECK_FALSE(sw.later_chosen.front());
    CHECK(sw.later_chosen.back());
    auto link = linkage_report_time(ds);
    CHECK_FALSE(link.warp);
    CHECK_FALSE(link.stationarity);
}

TEST_CASE("fit_pbdu surfaces axiom failures") {
    auto late = payment_data({{"a", pay(18, 0)}, {"b", pay(18, 2)}}, {{{"a", "b"}, {"b"}}});
    try {
        fit_pbdu(late);
        FAIL("expected AxiomFails");
    } catch (const AxiomFailure& e) {
        CHECK(e.code() == "AxiomFails");
        CHECK(e.witnesses().front().kind == "Impatience");
    }
    // patience falls when payments are delayed
    auto reverse = payment_data({{"a", pay(10, 0)}, {"b", pay(13, 1)}, {"c", pay(10, 2)}, {"d", pay(13, 3)}},
                                {{{"a", "b"}, {"b"}}, {{"c", "d"}, {"c"}}});
    CHECK_THROWS_AS(fit_pbdu(reverse), AxiomFailure);
}

TEST_CASE("fit_pbdu reports infeasible data") {
    // patience at time 0 exceeds what the later reference allows
    auto ds = payment_data({{"a", pay(10, 0)}, {"b", pay(11, 1)}, {"c", pay(11, 0)}, {"d", pay(12, 1)},
                            {"e", pay(10, 1)}, {"f", pay(12, 2)}},
                           {{{"a", "b"}, {"b"}}, {{"c", "d"}, {"d"}}, {{"e", "f"}, {"e"}}});
    try {
        fit_pbdu(ds);
        FAIL("expected an error");
    } catch (const AxiomFailure&) {
        FAIL("no axiom should fail");
    } catch (const Error& e) {
        CHECK(e.code() == "Infeasible");
    }
}

TEST_CASE("single switching") {
    auto p = exponential_params();
    auto sw = single_switching_check(p, pay(15, 0), pay(20, 1), shifts(10));
    CHECK(sw.pass);
    CHECK(sw.switches == 0);
    auto dec = fixture_params();
    dec.D[Rational(3)] = Rational(-2);
    CHECK_FALSE(pbdu_issues(dec).empty());
    CHECK_THROWS_WITH_AS(single_switching_check(dec, pay(18, 0), pay(20, 1), shifts(10)),
                         "discount factor decreases from time 0 to 3", Error);
    CHECK_THROWS_AS(single_switching_check(p, pay(20, 0), pay(18, 1), shifts(3)), Error);
}

TEST_CASE("discount lookup uses the step extension") {
    auto p = fixture_params();
    CHECK(discount_at(p, Rational(0)) == -1);
    CHECK(discount_at(p, frac(5, 2)) == -1);
    CHECK(discount_at(p, Rational(3)) == frac(-1, 10));
    CHECK(discount_at(p, Rational(9)) == frac(-1, 10));
    CHECK_THROWS_AS(pbdu_value(p, pay(16, 0), Rational(0)), Error);
}

TEST_CASE("standing assumption") {
    auto ok = payment_data({{"a", pay(10, 0)}, {"b", pay(20, 5)}}, {{{"a", "b"}, {"b"}}});
    CHECK(standing_assumption(ok) == true);
    auto no = payment_data({{"a", pay(10, 0)}, {"b", pay(20, 5)}}, {{{"a", "b"}, {"a"}}});
    CHECK(standing_assumption(no) == false);
    CHECK_FALSE(standing_assumption(present_bias()).has_value());
}

TEST_CASE("linkage, necessity and round trip on random PBDU data") {
    std::mt19937_64 rng(23);
    int distinct = 0;
    for (int t = 0; t < 16; ++t) {
        const bool equal = t % 2 == 0;
        auto p = random_pbdu_params(rng, 3, 3, equal);
        CHECK(pbdu_issues(p).empty());
        auto grid = payment_grid(p);
        auto ds = simulate_pbdu(p, grid, menus_2_to_4(grid.size()));
        CHECK(standing_assumption(ds) == true);
        CHECK(check_present_bias(ds).empty());
        CHECK(check_time_reference_dependence(ds).empty());
        CHECK(check_outcome_monotonicity_impatience(ds).empty());
        auto link = linkage_report_time(ds);
        auto fit = fit_pbdu(ds);
        CHECK(verify_pbdu(fit.params, ds).empty());
        CHECK(link.warp == link.stationarity);
        CHECK(discounts_coincide(fit.params) == link.warp);
        if (equal) CHECK(link.warp);
        distinct += !link.warp;
    }
    CHECK(distinct > 0);
}

TEST_CASE("decimal payloads are exact") {
    auto ds = payment_data({{"a", pay("0.5", "0.25")}, {"b", pay("1/2", "1.25")}}, {{{"a", "b"}, {"a"}}});
    CHECK(check_outcome_monotonicity_impatience(ds).empty());
    CHECK(ds.payment(ds.index_of("b")).time == frac(5, 4));
}
