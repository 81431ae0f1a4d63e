// Acceptance runner: `acceptance` runs every criterion, `acceptance n` runs one.
#include "ordref/fixtures.hpp"
#include "ordref/models.hpp"
#include "ordref/rivals.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>

using namespace ordref;

namespace {

struct Verdict {
    bool pass = true;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    double limit_s;
    std::function<Verdict()> run;
};

Verdict fail(std::string why) { return {false, std::move(why)}; }

bool same_choices(const ChoiceDataset& a, const ChoiceDataset& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a.ids(a.menu(i)) != b.ids(b.menu(i)) || a.ids(a.choice(i)) != b.ids(b.choice(i))) return false;
    return true;
}

std::vector<Menu> menus_of(const ChoiceDataset& ds) {
    std::vector<Menu> out;
    for (const auto& o : ds.observations()) out.push_back(o.menu);
    return out;
}

Verdict c1() {
    auto ok = fixture_dataset("compliance_2_1");
    auto bad = fixture_dataset("violation_2_1");
    if (!check_reference_dependence(ok, warp(), psi_identity()).pass) return fail("compliance table rejected");
    auto r = check_reference_dependence(bad, warp(), psi_identity());
    if (r.pass) return fail("violation table accepted");
    // some witness holds the failing menu A and two smaller menus whose union is A
    for (const auto& w : r.witnesses(bad, "ReferenceDependence")) {
        for (const auto& a : w.menus)
            for (const auto& b1 : w.menus)
                for (const auto& b2 : w.menus)
                    if (b1 != a && b2 != a && b1 != b2 && unite(b1, b2) == a)
                        return {true, "witness " + bad.menu_label(b1) + " u " + bad.menu_label(b2) + " = " +
                                          bad.menu_label(a)};
    }
    return fail("no witness covers its menu with two observed parts");
}

Verdict c2() {
    std::mt19937_64 rng(2);
    const auto menus = all_menus(5);
    for (int t = 0; t < 200; ++t) {
        auto p = random_ordu_params(5, rng, 3);
        auto ds = simulate_ordu(p, menus);
        auto built = build_ordu(ds);
        if (!same_choices(simulate_ordu(built.params, menus), ds))
            return fail("round trip differs at draw " + std::to_string(t));
    }
    return {true, "200 of 200 datasets reproduced"};
}

// Independent of the engine: some linear order and per-reference rankings reproduce the data.
bool brute_force_ordu(const ChoiceDataset& ds) {
    std::vector<std::size_t> perm{0, 1, 2};
    do {
        ReferenceOrder order(perm);
        bool all = true;
        for (std::size_t ref = 0; ref < 3 && all; ++ref) {
            bool found = false;
            for (int code = 0; code < 27 && !found; ++code) {
                const long lv[3] = {code % 3, code / 3 % 3, code / 9};
                bool ok = true;
                for (std::size_t i = 0; i < ds.size() && ok; ++i) {
                    const auto& m = ds.menu(i);
                    if (order.top(m) != ref) continue;
                    long best = -1;
                    for (auto x : m) best = std::max(best, lv[x]);
                    Menu arg;
                    for (auto x : m)
                        if (lv[x] == best) arg.push_back(x);
                    ok = arg == ds.choice(i);
                }
                found = ok;
            }
            all = found;
        }
        if (all) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

Verdict c3() {
    const auto menus = all_menus(3, 2);
    const auto ids = letter_ids(3);
    std::vector<Alternative> alts;
    for (const auto& id : ids) alts.push_back({id, std::monostate{}});
    int total = 0, passing = 0;
    std::vector<std::size_t> digit(menus.size(), 0);
    for (;;) {
        std::vector<RawObservation> raw;
        for (std::size_t i = 0; i < menus.size(); ++i) {
            RawObservation o;
            for (auto x : menus[i]) o.menu.push_back(ids[x]);
            o.choice.push_back(ids[menus[i][digit[i]]]);
            raw.push_back(o);
        }
        auto ds = ChoiceDataset::build(PayloadKind::Generic, alts, raw);
        const bool rd = check_reference_dependence(ds, warp(), psi_identity()).pass;
        bool built = false;
        try {
            auto b = build_ordu(ds);
            built = verify_ordu(b.params, ds).empty();
        } catch (const Error&) {
        }
        const bool brute = brute_force_ordu(ds);
        ++total;
        passing += rd;
        if (rd != built || rd != brute) {
            std::ostringstream s;
            s << "dataset " << total << ": RD " << rd << ", build " << built << ", brute force " << brute;
            return fail(s.str());
        }
        std::size_t k = 0;
        while (k < menus.size() && ++digit[k] == menus[k].size()) digit[k++] = 0;
        if (k == menus.size()) break;
    }
    return {true, std::to_string(total) + " datasets, " + std::to_string(passing) + " pass, all three routes agree"};
}

Verdict c4() {
    auto ds = allais_data(false);
    auto fit = fit_areu(ds);
    if (!verify_areu(fit.params, ds).empty()) return fail("fitted params do not reproduce the data");
    const auto& pr = fit.params;
    const auto k = *pr.prizes->index_of(Rational(3000));
    auto ref_of = [&](const std::vector<std::string>& m) { return pr.order.top(menu_from_ids(pr.ids, m)); };
    const Rational ua = pr.utility(static_cast<Eigen::Index>(ref_of({"p1", "p2"})), static_cast<Eigen::Index>(k));
    const Rational ub = pr.utility(static_cast<Eigen::Index>(ref_of({"q1", "q2"})), static_cast<Eigen::Index>(k));
    if (!(ua > frac(4, 5) && frac(4, 5) > ub))
        return fail("u_A(3000) = " + to_string(ua) + ", u_B(3000) = " + to_string(ub));
    // any normalized utility: p1 over p2 exactly when u(3000) > 4/5, q2 over q1 exactly when u(3000) < 4/5
    for (long k = 1; k < 1000; ++k) {
        MatrixQ u(1, 3);
        u << 0, frac(k, 1000), 1;
        auto eu = [&](const std::string& id) { return expected_utility(ds.lottery(ds.index_of(id)), u, 0); };
        if ((eu("p1") > eu("p2")) != (frac(k, 1000) > frac(4, 5)) || (eu("q2") > eu("q1")) != (frac(k, 1000) < frac(4, 5)))
            return fail("threshold sweep disagrees at u(3000) = " + std::to_string(k) + "/1000");
    }
    try {
        fit_areu(allais_data(true));
        return fail("reverse pattern was fitted");
    } catch (const Error& e) {
        if (e.code() != "Infeasible") return fail("reverse pattern raised " + e.code());
    }
    return {true, "u_A(3000) = " + to_string(ua) + " > 4/5 > u_B(3000) = " + to_string(ub) + ", reverse Infeasible"};
}

Verdict c5() {
    auto x = prize_set({Rational(0), Rational(3000), Rational(4000)});
    AreuParams pr;
    pr.prizes = x;
    pr.ids = {"p1", "q1", "q2"};
    pr.lotteries = {lottery(x, {Rational(0), Rational(1), Rational(0)}),
                    lottery(x, {frac(1, 10), frac(7, 10), frac(1, 5)}),
                    lottery(x, {frac(3, 10), frac(3, 10), frac(2, 5)})};
    pr.order = ReferenceOrder(std::vector<std::size_t>{0, 1, 2});
    pr.utility = MatrixQ(3, 3);
    pr.utility << 0, frac(9, 10), 1, 0, frac(7, 10), 1, 0, frac(7, 10), 1;
    if (auto issues = areu_issues(pr); !issues.empty()) return fail("params invalid: " + issues.front());
    const Menu triple{0, 1, 2}, pair{1, 2};
    auto ds = simulate_areu(pr, {triple, pair});
    const auto ct = ds.ids(ds.choice(*ds.find(triple)));
    const auto cp = ds.ids(ds.choice(*ds.find(pair)));
    auto join = [](const std::vector<std::string>& v) {
        std::string s = "{";
        for (const auto& e : v) s += (s.size() > 1 ? "," : "") + e;
        return s + "}";
    };
    const std::string got = "c({p1,q1,q2}) = " + join(ct) + ", c({q1,q2}) = " + join(cp);
    if (ct != std::vector<std::string>{"q1"} || cp != std::vector<std::string>{"q2"})
        return fail(got + "; expected {q1} and {q2}");
    return {true, got};
}

Verdict c6() {
    std::mt19937_64 rng(6);
    std::uniform_int_distribution<std::size_t> nd(3, 8);
    int agree = 0, warp_only = 0, indep_only = 0, no_coincide = 0, coincide_but_fail = 0;
    for (int t = 0; t < 100; ++t) {
        auto p = random_areu_params(rng, nd(rng), t % 2 == 0);
        auto ds = simulate_areu(p, menus_between(p.ids.size(), 2, 4));
        auto link = linkage_report_risk(ds);
        auto fit = fit_areu(ds);
        const bool same = class_utilities_coincide(fit.params, ds);
        if (link.warp != link.independence) (link.warp ? warp_only : indep_only)++;
        else if (link.warp != same) (link.warp ? no_coincide : coincide_but_fail)++;
        else ++agree;
    }
    std::ostringstream s;
    s << agree << "/100 agree; WARP-only " << warp_only << ", Independence-only " << indep_only
      << ", both pass without coinciding utilities " << no_coincide << ", coinciding but failing "
      << coincide_but_fail;
    return {agree == 100, s.str()};
}

Verdict c7() {
    auto x = prize_set({Rational(0), Rational(3000), Rational(4000)});
    auto pr = triangle_params(x, 20, true);
    if (auto issues = areu_issues(pr); !issues.empty()) return fail("params invalid: " + issues.front());
    const auto& order = pr.order.ranking();
    for (std::size_t i = 0; i + 1 < order.size(); ++i)
        // higher in the order means more concave, so u(m) strictly falls down the order
        if (!(pr.utility(static_cast<Eigen::Index>(order[i]), 1) > pr.utility(static_cast<Eigen::Index>(order[i + 1]), 1)))
            return fail("concavity is not strictly increasing along the order");
    auto rep = fanning_classify(pr, 20);
    if (rep.verdict != Fanning::RiskAverseFanOut) return fail("verdict " + to_string(rep.verdict));
    if (!rep.slopes_nondecreasing) return fail("reported slopes decrease along FOSD");
    // slope of an indifference line with u(w) = 0, u(b) = 1 is u(m) / (1 - u(m))
    std::map<std::string, Rational> slope;
    for (const auto& pt : rep.points) {
        const auto i = static_cast<Eigen::Index>(std::find(pr.ids.begin(), pr.ids.end(), pt.id) - pr.ids.begin());
        const Rational m = pr.utility(i, 1);
        if (pt.slope != m / (1 - m)) return fail("slope at " + pt.id + " differs from u(m)/(1-u(m))");
        slope[pt.id] = pt.slope;
    }
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < pr.ids.size(); ++i)
        for (std::size_t j = 0; j < pr.ids.size(); ++j)
            if (fosd(pr.lotteries[i], pr.lotteries[j])) {
                ++pairs;
                if (slope[pr.ids[i]] < slope[pr.ids[j]]) return fail("slope falls from " + pr.ids[j] + " to " + pr.ids[i]);
            }
    return {true, std::to_string(rep.points.size()) + " points, " + std::to_string(pairs) +
                      " FOSD pairs with nondecreasing slopes, RiskAverseFanOut"};
}

Verdict c8() {
    auto ds = present_bias_data();
    auto fit = fit_pbdu(ds);
    if (!verify_pbdu(fit.params, ds).empty()) return fail("fitted params do not reproduce the data");
    const Rational d0 = discount_at(fit.params, Rational(0)), d3 = discount_at(fit.params, Rational(3));
    if (!(d0 < d3)) return fail("D(0) = " + to_string(d0) + " is not below D(3) = " + to_string(d3));
    const Menu bc = ds.menu_of({"b", "c"}), de = ds.menu_of({"d", "e"});
    bool flagged = false;
    for (const auto& w : stationarity_over(ds, ds.all()))
        flagged |= std::find(w.menus.begin(), w.menus.end(), bc) != w.menus.end() &&
                   std::find(w.menus.begin(), w.menus.end(), de) != w.menus.end();
    if (!flagged) return fail("stationarity does not flag {b,c} against {d,e}");
    std::vector<Rational> shifts;
    for (int s = 0; s <= 10; ++s) shifts.push_back(Rational(s));
    auto sw = single_switching_check(fit.params, {Rational(18), Rational(0)}, {Rational(20), Rational(1)}, shifts);
    if (!sw.pass) return fail("single switching fails with " + std::to_string(sw.switches) + " switches");
    return {true, "D(0) = " + to_string(d0) + " < D(3) = " + to_string(d3) + ", stationarity flagged, " +
                      std::to_string(sw.switches) + " switch over shifts 0..10"};
}

Verdict c9() {
    std::mt19937_64 rng(9);
    int applicable = 0, pass = 0;
    for (int t = 0; t < 100; ++t) {
        auto r = lemma2_equivalence(random_closed_payment_data(rng));
        if (!r.agree()) return fail("formulations disagree at draw " + std::to_string(t));
        applicable += r.applicable;
        pass += r.applicable && r.pairwise;
    }
    if (applicable == 0) return fail("no draw was closed under the unions both formulations need");
    return {true, std::to_string(applicable) + " applicable datasets agree (" + std::to_string(pass) + " pass)"};
}

Verdict c10() {
    auto ds = dictator_data();
    auto fit = fit_fspu(ds);
    const auto& v0 = v_at(fit.params, Rational(0));
    const auto& v1 = v_at(fit.params, frac(1, 5));
    const Rational g0 = v0.at(Rational(3)) - v0.at(Rational(2));
    const Rational g1 = v1.at(Rational(3)) - v1.at(Rational(2));
    if (!(g0 > 1 && 1 > g1)) return fail("increments " + to_string(g0) + " and " + to_string(g1));
    auto sim = simulate_fspu(fit.params, ds.universe(), menus_of(ds));
    if (!same_choices(sim, ds)) return fail("simulation does not reproduce the flip");
    return {true, "v_0(3)-v_0(2) = " + to_string(g0) + " > 1 > v_1/5(3)-v_1/5(2) = " + to_string(g1) +
                      ", flip reproduced"};
}

template <typename Step>
Verdict tally(const std::string& domain, Step step) {
    int agree = 0, bad_structure = 0, bad_coincide = 0;
    for (int t = 0; t < 100; ++t) {
        auto [w, s, c] = step(t);
        if (w != s) ++bad_structure;
        else if (w != c) ++bad_coincide;
        else ++agree;
    }
    std::ostringstream o;
    o << domain << " " << agree << "/100";
    if (agree < 100) o << " (WARP vs structural " << bad_structure << ", vs coincidence " << bad_coincide << ")";
    return {agree == 100, o.str()};
}

Verdict c11() {
    using Clock = std::chrono::steady_clock;
    std::mt19937_64 trng(11);
    auto t0 = Clock::now();
    auto time = tally("time", [&](int t) {
        auto p = random_pbdu_params(trng, 3, 3, t % 2 == 0);
        auto grid = payment_grid(p);
        auto ds = simulate_pbdu(p, grid, menus_between(grid.size(), 2, 4));
        auto link = linkage_report_time(ds);
        return std::tuple{link.warp, link.stationarity, discounts_coincide(fit_pbdu(ds).params)};
    });
    const double ts = std::chrono::duration<double>(Clock::now() - t0).count();
    std::mt19937_64 srng(12);
    std::vector<Rational> g{Rational(1), Rational(2), Rational(3)};
    const auto grid = split_grid(g, g);
    const auto menus = menus_between(grid.size(), 2, 4);
    t0 = Clock::now();
    auto social = tally("social", [&](int t) {
        auto p = random_fspu_params(srng, g, g, t % 2 == 0);
        auto ds = simulate_fspu(p, grid, menus);
        auto link = linkage_report_social(ds);
        return std::tuple{link.warp, link.quasilinearity, sharing_utilities_coincide(fit_fspu(ds).params)};
    });
    const double ss = std::chrono::duration<double>(Clock::now() - t0).count();
    char buf[96];
    std::snprintf(buf, sizeof buf, " (time %.1f s, social %.1f s)", ts, ss);
    Verdict v{time.pass && social.pass, time.detail + "; " + social.detail + buf};
    if (ts >= 60 || ss >= 60) {
        v.pass = false;
        v.detail += ", over 60 s";
    }
    return v;
}

Verdict c12() {
    auto rows = separation_suite();
    auto row = [&](const std::string& n) -> const SeparationRow& {
        return *std::find_if(rows.begin(), rows.end(), [&](const SeparationRow& r) { return r.name == n; });
    };
    std::vector<std::string> bad;
    auto need = [&](bool ok, const std::string& what) {
        if (!ok) bad.push_back(what);
    };
    for (const std::string n : {"ok2015_decoy", "pe_table", "rsm_table"})
        need(row(n).remark1 == false, n + " Remark 1 fail");
    need(row("rsm_table").rsm == true, "rsm_table RSM yes");
    need(row("pe_table").pe, "pe_table PE yes");
    need(row("binary_cycle").ordu && !row("binary_cycle").pe, "binary_cycle ORDU yes, PE no");
    need(row("ordu_not_rsm").ordu && row("ordu_not_rsm").rsm == false, "ordu_not_rsm ORDU yes, RSM no");
    for (const auto& r : rows)
        for (const auto& d : r.disagreements) bad.push_back(r.name + ": " + d);
    if (!bad.empty()) return fail("not reproduced: " + bad.front());
    return {true, std::to_string(rows.size()) + " tables, every stated classification reproduced"};
}

Verdict c13() {
    std::ostringstream s;
    bool ok = true;
    for (auto m : {Model::Ordu, Model::Areu, Model::Pbdu, Model::Fspu}) {
        int pass = 0;
        for (unsigned seed = 0; seed < 100; ++seed) {
            std::mt19937_64 rng(seed);
            auto in = random_instance(m, rng);
            auto ds = simulate_model(in.params, in.universe, in.menus);
            pass += battery_passes(axiom_battery(m, ds));
        }
        ok &= pass == 100;
        s << (s.tellp() > 0 ? ", " : "") << to_string(m) << " " << pass << "/100";
    }
    return {ok, s.str()};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all{
        {1, "reference dependence on the compliance and violation tables", 1, c1},
        {2, "ORDU round trip on 200 random parameterizations", 30, c2},
        {3, "RD pass iff build_ordu success at three alternatives", 60, c3},
        {4, "Allais fit and reverse infeasibility", 5, c4},
        {5, "Allais triple-menu WARP violation from explicit params", 1, c5},
        {6, "risk linkage of WARP, Independence and utilities", 60, c6},
        {7, "fanning out on the triangle at resolution 1/20", 10, c7},
        {8, "present-bias fit, stationarity flag and single switching", 5, c8},
        {9, "pairwise and existential formulations agree", 30, c9},
        {10, "dictator fit and simulated flip", 5, c10},
        {11, "time and social linkage", 120, c11},
        {12, "separation matrix", 120, c12},
        {13, "simulated data pass the full axiom battery", 120, c13},
    };
    int only = argc > 1 ? std::atoi(argv[1]) : 0;
    if (argc > 1 && (only < 1 || only > 13)) {
        std::cerr << "usage: acceptance [1-13]\n";
        return 2;
    }
    int failed = 0;
    for (const auto& c : all) {
        if (only && c.id != only) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v = fail(std::string("exception: ") + e.what());
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (s >= c.limit_s) {
            v.pass = false;
            v.detail += ", exceeded the time limit";
        }
        char t[32];
        std::snprintf(t, sizeof t, "%.2f s", s);
        std::cout << "criterion " << c.id << ": " << (v.pass ? "PASS" : "FAIL") << " [" << t << " / "
                  << c.limit_s << " s] " << c.name << ": " << v.detail << std::endl;
        failed += !v.pass;
    }
    return failed ? 1 : 0;
}
