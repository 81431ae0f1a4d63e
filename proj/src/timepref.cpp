#include "ordref/timepref.hpp"

#include "ordref/lp.hpp"
#include "ordref/ordu.hpp"

#include <algorithm>

namespace ordref {

namespace {

Rational earliest_time(const ChoiceDataset& ds, const Menu& m) {
    Rational t = ds.payment(m.front()).time;
    for (auto x : m) t = std::min(t, ds.payment(x).time);
    return t;
}

}  // namespace

Menu earliest_payments(const ChoiceDataset& ds, const Menu& m) {
    if (m.empty()) return {};
    const Rational t = earliest_time(ds, m);
    Menu out;
    for (auto x : m)
        if (ds.payment(x).time == t) out.push_back(x);
    return out;
}

PsiMap psi_earliest() {
    return {"earliest", [](const ChoiceDataset& ds, const Menu& m) { return earliest_payments(ds, m); }};
}

const std::vector<ShiftQuad>& shift_quads(const ChoiceDataset& ds) {
    return *ds.cached<std::vector<ShiftQuad>>("shifts", [&] {
        std::map<std::pair<Rational, Rational>, std::size_t> at;
        const std::size_t n = ds.universe().size();
        for (std::size_t i = 0; i < n; ++i) at[{ds.payment(i).amount, ds.payment(i).time}] = i;
        std::vector<ShiftQuad> out;
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t x2 = 0; x2 < n; ++x2) {
                const auto& px = ds.payment(x);
                const auto& px2 = ds.payment(x2);
                if (px2.amount != px.amount || px2.time <= px.time) continue;
                const Rational a = px2.time - px.time;
                for (std::size_t y = 0; y < n; ++y) {
                    if (y == x) continue;
                    auto it = at.find({ds.payment(y).amount, ds.payment(y).time + a});
                    if (it != at.end()) out.push_back({x, y, x2, it->second, a});
                }
            }
        return out;
    });
}

Witnesses stationarity_over(const ChoiceDataset& ds, const Family& family, bool first_only) {
    Witnesses out;
    const auto& quads = shift_quads(ds);
    if (quads.empty()) return out;
    const std::size_t n = ds.universe().size();
    std::vector<std::vector<Family>> with(n, std::vector<Family>(n));
    for (auto i : family) {
        const Menu& m = ds.menu(i);
        for (auto x : m)
            for (auto y : m)
                if (x != y) with[x][y].push_back(i);
    }
    // (x,t) in c(A), (y,q) in A, (y,q+a) in c(B), (x,t+a) in B => (x,t+a) in c(B)
    for (const auto& sq : quads)
        for (auto a : with[sq.x][sq.y]) {
            if (!ds.chosen(a, sq.x)) continue;
            for (auto b : with[sq.x2][sq.y2])
                if (ds.chosen(b, sq.y2) && !ds.chosen(b, sq.x2)) {
                    std::vector<Menu> menus{ds.menu(a)};
                    if (b != a) menus.push_back(ds.menu(b));
                    out.push_back({std::move(menus), "Stationarity",
                                   "delay " + to_string(sq.shift) + ": " + ds.id(sq.x) + " chosen over " +
                                       ds.id(sq.y) + " in " + ds.menu_label(ds.menu(a)) + ", " + ds.id(sq.y2) +
                                       " chosen but " + ds.id(sq.x2) + " rejected in " + ds.menu_label(ds.menu(b))});
                    if (first_only) return out;
                }
        }
    return out;
}

FiniteProperty stationarity() {
    return FiniteProperty("Stationarity", [](const ChoiceDataset& ds, const Family& f, bool first_only) {
        return stationarity_over(ds, f, first_only);
    });
}

FiniteProperty warp_and_stationarity() { return conjunction("WARP+Stationarity", {warp(), stationarity()}); }

Witnesses check_time_reference_dependence(const ChoiceDataset& ds) {
    const FiniteProperty T = warp_and_stationarity();
    std::vector<Menu> psi;
    for (std::size_t i = 0; i < ds.size(); ++i) psi.push_back(earliest_payments(ds, ds.menu(i)));
    Witnesses out;
    for (std::size_t i = 0; i < ds.size(); ++i)
        for (std::size_t j = i; j < ds.size(); ++j) {
            if (intersect(psi[i], psi[j]).empty()) continue;
            Family f{i};
            if (j != i) f.push_back(j);
            for (auto& w : T(ds, f)) out.push_back(std::move(w));
        }
    sort_witnesses(out);
    return out;
}

Lemma2Result lemma2_equivalence(const ChoiceDataset& ds) {
    Lemma2Result r;
    r.applicable = true;
    for (const auto& o : ds.observations())
        for (const auto& s : subsets(o.menu, 2))
            if (!ds.find(s)) r.applicable = false;
    for (std::size_t i = 0; i < ds.size() && r.applicable; ++i)
        for (std::size_t j = i + 1; j < ds.size(); ++j) {
            const Menu pi = earliest_payments(ds, ds.menu(i)), pj = earliest_payments(ds, ds.menu(j));
            if (!intersect(pi, pj).empty() && !ds.find(unite(ds.menu(i), ds.menu(j)))) {
                r.applicable = false;
                break;
            }
        }
    r.pairwise = check_time_reference_dependence(ds).empty();
    r.existential =
        check_reference_dependence(ds, warp_and_stationarity(), psi_earliest(), Quantifier::ForAll).pass;
    return r;
}

Witnesses check_present_bias(const ChoiceDataset& ds) {
    Witnesses out;
    auto by_time = [&](Menu m) {
        std::sort(m.begin(), m.end(),
                  [&](std::size_t a, std::size_t b) { return ds.payment(a).time < ds.payment(b).time; });
        return m;
    };
    for (std::size_t i = 0; i < ds.size(); ++i)
        for (std::size_t j = 0; j < ds.size(); ++j) {
            if (i == j || ds.menu(i).size() != ds.menu(j).size()) continue;
            const Menu a = by_time(ds.menu(i)), b = by_time(ds.menu(j));
            const auto& p1 = ds.payment(a.front());
            const auto& p3 = ds.payment(a.back());
            const auto& q1 = ds.payment(b.front());
            const auto& q3 = ds.payment(b.back());
            if (p1.amount != q1.amount || p3.amount != q3.amount || p1.time == p3.time) continue;
            if (a.size() == 2) {
                // clause 1: the later payment keeps winning when both are delayed
                const Rational d = q1.time - p1.time;
                if (d <= 0 || q3.time - p3.time != d) continue;
                if (ds.choice(i) == Menu{a.back()} && ds.choice(j) != Menu{b.back()})
                    out.push_back({{ds.menu(i), ds.menu(j)}, "PresentBias",
                                   "clause 1: " + ds.id(a.back()) + " chosen alone in " + ds.menu_label(ds.menu(i)) +
                                       " but " + ds.id(b.back()) + " is not chosen alone after a delay of " +
                                       to_string(d)});
            } else if (a.size() == 3) {
                // clause 2: t -> lambda t + d with 0 < lambda < 1
                const auto& p2 = ds.payment(a[1]);
                const auto& q2 = ds.payment(b[1]);
                if (p2.amount != q2.amount || p1.time == p2.time || p2.time == p3.time) continue;
                const Rational lambda = (q3.time - q1.time) / (p3.time - p1.time);
                const Rational d = q1.time - lambda * p1.time;
                if (lambda <= 0 || lambda >= 1 || q2.time != lambda * p2.time + d) continue;
                if (ds.choice(i).size() != 3) continue;
                if (ds.chosen(j, b.front()) && ds.chosen(j, b.back()) && !ds.chosen(j, b[1]))
                    out.push_back({{ds.menu(i), ds.menu(j)}, "PresentBias",
                                   "clause 2 (lambda " + to_string(lambda) + ", d " + to_string(d) + "): " +
                                       ds.id(b[1]) + " rejected in " + ds.menu_label(ds.menu(j)) +
                                       " although both ends are chosen"});
            }
        }
    sort_witnesses(out);
    return out;
}

Witnesses check_outcome_monotonicity_impatience(const ChoiceDataset& ds) {
    Witnesses out;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const Menu& m = ds.menu(i);
        if (m.size() != 2) continue;
        const auto& p = ds.payment(m[0]);
        const auto& q = ds.payment(m[1]);
        std::optional<std::size_t> better;
        std::string kind;
        if (p.time == q.time && p.amount != q.amount) {
            better = p.amount > q.amount ? m[0] : m[1];
            kind = "OutcomeMonotonicity";
        } else if (p.amount == q.amount && p.time != q.time) {
            better = p.time < q.time ? m[0] : m[1];
            kind = "Impatience";
        }
        if (better && ds.choice(i) != Menu{*better})
            out.push_back({{m}, kind, ds.id(*better) + " is not chosen alone in " + ds.menu_label(m)});
    }
    sort_witnesses(out);
    return out;
}

std::optional<bool> standing_assumption(const ChoiceDataset& ds) {
    if (ds.universe().empty()) return std::nullopt;
    Rational lo = ds.payment(0).amount, hi = lo, last = ds.payment(0).time;
    for (std::size_t i = 0; i < ds.universe().size(); ++i) {
        lo = std::min(lo, ds.payment(i).amount);
        hi = std::max(hi, ds.payment(i).amount);
        last = std::max(last, ds.payment(i).time);
    }
    std::optional<std::size_t> first, end;
    for (std::size_t i = 0; i < ds.universe().size(); ++i) {
        const auto& p = ds.payment(i);
        if (p.amount == lo && p.time == 0) first = i;
        if (p.amount == hi && p.time == last) end = i;
    }
    if (!first || !end || *first == *end) return std::nullopt;
    auto o = ds.find(Menu{std::min(*first, *end), std::max(*first, *end)});
    if (!o) return std::nullopt;
    return ds.chosen(*o, *end);
}

std::vector<std::string> pbdu_issues(const PbduParams& pr) {
    std::vector<std::string> out;
    if (pr.L.empty()) out.push_back("no amounts");
    if (pr.D.empty()) out.push_back("no reference times");
    for (const auto& [x, l] : pr.L)
        if (x <= 0) out.push_back("amount " + to_string(x) + " is not positive");
    for (auto it = pr.L.begin(); it != pr.L.end() && std::next(it) != pr.L.end(); ++it)
        if (!(it->second < std::next(it)->second))
            out.push_back("utility is not strictly increasing at " + to_string(std::next(it)->first));
    for (const auto& [t, d] : pr.D) {
        if (t < 0) out.push_back("reference time " + to_string(t) + " is negative");
        if (d >= 0) out.push_back("discount factor at " + to_string(t) + " is not below one");
    }
    for (auto it = pr.D.begin(); it != pr.D.end() && std::next(it) != pr.D.end(); ++it)
        if (std::next(it)->second < it->second)
            out.push_back("discount factor decreases from time " + to_string(it->first) + " to " +
                          to_string(std::next(it)->first));
    return out;
}

void validate_pbdu(const PbduParams& params) {
    auto issues = pbdu_issues(params);
    if (!issues.empty()) throw Error("BadParams", issues.front());
}

const Rational& discount_at(const PbduParams& params, const Rational& r) {
    if (params.D.empty()) throw Error("BadParams", "no reference times");
    auto it = params.D.upper_bound(r);
    if (it == params.D.begin()) return it->second;
    return std::prev(it)->second;
}

Rational pbdu_value(const PbduParams& params, const DatedPayment& p, const Rational& r) {
    auto it = params.L.find(p.amount);
    if (it == params.L.end()) throw Error("UnknownAmount", "amount " + to_string(p.amount) + " has no utility");
    return p.time * discount_at(params, r) + it->second;
}

Menu evaluate_pbdu(const PbduParams& params, const std::vector<DatedPayment>& payments, const Menu& menu) {
    if (menu.empty()) return {};
    Rational r = payments[menu.front()].time;
    for (auto x : menu) r = std::min(r, payments[x].time);
    Menu best;
    Rational top;
    for (auto x : menu) {
        Rational v = pbdu_value(params, payments[x], r);
        if (best.empty() || v > top) {
            best = {x};
            top = v;
        } else if (v == top) {
            best.push_back(x);
        }
    }
    return best;
}

namespace {

std::vector<DatedPayment> payments_of(const std::vector<Alternative>& universe) {
    std::vector<DatedPayment> out;
    for (const auto& a : universe) {
        if (!std::holds_alternative<DatedPayment>(a.payload))
            throw Error("WrongKind", "alternative '" + a.id + "' is not a dated payment");
        out.push_back(std::get<DatedPayment>(a.payload));
    }
    return out;
}

}  // namespace

ChoiceDataset simulate_pbdu(const PbduParams& params, const std::vector<Alternative>& universe,
                            const std::vector<Menu>& menus) {
    validate_pbdu(params);
    const auto pay = payments_of(universe);
    std::vector<RawObservation> raw;
    auto names = [&](const Menu& m) {
        std::vector<std::string> out;
        for (auto i : m) out.push_back(universe.at(i).id);
        return out;
    };
    for (const auto& m : menus) raw.push_back({names(m), names(evaluate_pbdu(params, pay, m))});
    return ChoiceDataset::build(PayloadKind::DatedPayment, universe, raw);
}

std::vector<Mismatch> verify_pbdu(const PbduParams& params, const ChoiceDataset& ds) {
    const auto pay = payments_of(ds.universe());
    return compare_choices(ds, [&](const Menu& m) { return evaluate_pbdu(params, pay, m); });
}

bool discounts_coincide(const PbduParams& params) {
    for (const auto& [t, d] : params.D)
        if (d != params.D.begin()->second) return false;
    return true;
}

namespace {

std::optional<PbduParams> solve_pbdu(const ChoiceDataset& ds, bool single) {
    LinearFeasibilityProblem lp;
    std::map<Rational, std::size_t> L, D;
    for (std::size_t i = 0; i < ds.universe().size(); ++i) L.emplace(ds.payment(i).amount, 0);
    for (std::size_t i = 0; i < ds.size(); ++i) D.emplace(earliest_time(ds, ds.menu(i)), 0);
    for (auto& [x, v] : L) v = lp.add_variable("L(" + to_string(x) + ")");
    if (single) {
        const std::size_t d = lp.add_variable("D");
        for (auto& [t, v] : D) v = d;
    } else {
        for (auto& [t, v] : D) v = lp.add_variable("D(" + to_string(t) + ")");
    }
    lp.add({{L.begin()->second, Rational(1)}}, Relation::EQ, Rational(0), "normalization");
    for (auto it = L.begin(); std::next(it) != L.end(); ++it)
        lp.add({{std::next(it)->second, Rational(1)}, {it->second, Rational(-1)}}, Relation::GT, Rational(0),
               "increasing");
    for (auto it = D.begin(); it != D.end(); ++it) {
        lp.add({{it->second, Rational(1)}}, Relation::LT, Rational(0), "discount below one");
        if (!single && std::next(it) != D.end())
            lp.add({{std::next(it)->second, Rational(1)}, {it->second, Rational(-1)}}, Relation::GE, Rational(0),
                   "nondecreasing discount");
    }
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const Menu& m = ds.menu(i);
        const std::size_t d = D.at(earliest_time(ds, m));
        const std::size_t c = ds.choice(i).front();
        const auto& pc = ds.payment(c);
        for (auto y : m) {
            if (y == c) continue;
            const auto& py = ds.payment(y);
            lp.add({{d, pc.time - py.time}, {L.at(pc.amount), Rational(1)}, {L.at(py.amount), Rational(-1)}},
                   ds.chosen(i, y) ? Relation::EQ : Relation::GT, Rational(0), ds.menu_label(m));
        }
    }
    auto res = solve_linear_feasibility(lp);
    if (!res.feasible) return std::nullopt;
    PbduParams out;
    for (const auto& [x, v] : L) out.L[x] = res.assignment[v];
    for (const auto& [t, v] : D) out.D[t] = res.assignment[v];
    return out;
}

}  // namespace

PbduFit fit_pbdu(const ChoiceDataset& ds) {
    if (ds.kind() != PayloadKind::DatedPayment) throw Error("WrongKind", "fit_pbdu needs dated payments");
    Witnesses w = check_time_reference_dependence(ds);
    for (auto& x : check_present_bias(ds)) w.push_back(std::move(x));
    for (auto& x : check_outcome_monotonicity_impatience(ds)) w.push_back(std::move(x));
    if (!w.empty()) {
        sort_witnesses(w);
        throw AxiomFailure("the data violate a PBDU axiom", std::move(w));
    }
    if (ds.size() == 0) throw Error("Infeasible", "no observations to fit");
    for (bool single : {true, false})
        if (auto p = solve_pbdu(ds, single)) {
            if (auto bad = verify_pbdu(*p, ds); !bad.empty())
                throw Error("ConstructionFailed", "fitted parameters miss " + describe(ds, bad.front()));
            validate_pbdu(*p);
            return {std::move(*p), single ? "exponential" : "pbdu"};
        }
    throw Error("Infeasible", "no utility and nondecreasing discount factors reproduce the data");
}

SwitchReport single_switching_check(const PbduParams& params, const DatedPayment& sooner, const DatedPayment& later,
                                    const std::vector<Rational>& shifts) {
    if (!(sooner.amount < later.amount) || !(sooner.time < later.time))
        throw Error("BadPair", "the sooner payment must be smaller and arrive earlier");
    validate_pbdu(params);
    SwitchReport r;
    for (const auto& s : shifts) {
        const DatedPayment p{sooner.amount, sooner.time + s}, q{later.amount, later.time + s};
        const bool late = pbdu_value(params, q, p.time) > pbdu_value(params, p, p.time);
        if (!r.later_chosen.empty() && r.later_chosen.back() != late) {
            ++r.switches;
            if (!late) r.pass = false;
        }
        r.later_chosen.push_back(late);
    }
    return r;
}

TimeLinkage linkage_report_time(const ChoiceDataset& ds) {
    return {warp_over(ds, ds.all(), true).empty(), stationarity_over(ds, ds.all(), true).empty()};
}

namespace {

// Two distinct grid payments with equal value under some reference time.
bool has_tie(const PbduParams& p) {
    for (const auto& [r, d] : p.D)
        for (const auto& [x, lx] : p.L)
            for (const auto& [t, dt] : p.D)
                for (const auto& [y, ly] : p.L)
                    for (const auto& [s, ds] : p.D)
                        if ((x != y || t != s) && t >= r && s >= r && t * d + lx == s * d + ly) return true;
    return false;
}

}  // namespace

PbduParams random_pbdu_params(std::mt19937_64& rng, std::size_t amounts, std::size_t times, bool equal) {
    if (amounts < 2 || times < 1) throw Error("BadParams", "need at least two amounts and one time");
    for (;;) {
        std::vector<int> pool;
        for (int x = 10; x <= 30; ++x) pool.push_back(x);
        std::shuffle(pool.begin(), pool.end(), rng);
        pool.resize(amounts);
        std::sort(pool.begin(), pool.end());
        std::uniform_int_distribution<long> step(12, 101), disc(1, 16);
        std::vector<long> k;
        for (std::size_t t = 0; t < times; ++t) k.push_back(disc(rng));
        std::sort(k.rbegin(), k.rend());
        PbduParams p;
        for (std::size_t t = 0; t < times; ++t)
            p.D[Rational(static_cast<long>(t))] = -frac(equal ? k.front() : k[t], 17);
        // the largest amount at the last time beats the smallest amount now
        const Rational last = p.D.rbegin()->first;
        Rational level = -p.D.begin()->second * last;
        for (auto x : pool) {
            p.L[Rational(x)] = x == pool.front() ? Rational(0) : level;
            level += frac(step(rng), 101);
        }
        if (!has_tie(p)) return p;
    }
}

std::vector<Alternative> payment_grid(const PbduParams& params) {
    std::vector<Alternative> out;
    for (const auto& [x, l] : params.L)
        for (const auto& [t, d] : params.D)
            out.push_back({"x" + to_string(x) + "t" + to_string(t), DatedPayment{x, t}});
    return out;
}

ChoiceDataset random_closed_payment_data(std::mt19937_64& rng) {
    std::vector<DatedPayment> pool;
    for (long x : {10, 15, 20})
        for (long t : {0, 1, 2}) pool.push_back({Rational(x), Rational(t)});
    std::shuffle(pool.begin(), pool.end(), rng);
    std::uniform_int_distribution<std::size_t> size(2, 4);
    pool.resize(size(rng));
    std::vector<Alternative> alts;
    for (const auto& p : pool) alts.push_back({"x" + to_string(p.amount) + "t" + to_string(p.time), p});
    std::vector<RawObservation> raw;
    for (const auto& m : all_menus(pool.size(), 2)) {
        RawObservation o;
        for (auto i : m) o.menu.push_back(alts[i].id);
        std::uniform_int_distribution<std::uint32_t> pick(1, (1u << m.size()) - 1);
        const auto mask = pick(rng);
        for (std::size_t i = 0; i < m.size(); ++i)
            if (mask >> i & 1) o.choice.push_back(alts[m[i]].id);
        raw.push_back(std::move(o));
    }
    return ChoiceDataset::build(PayloadKind::DatedPayment, std::move(alts), raw);
}

ChoiceDataset payment_data(const std::vector<std::pair<std::string, DatedPayment>>& alts,
                           const std::vector<RawObservation>& rows) {
    std::vector<Alternative> a;
    for (const auto& [id, p] : alts) a.push_back({id, p});
    return ChoiceDataset::build(PayloadKind::DatedPayment, std::move(a), rows);
}

}  // namespace ordref
