#include "ordref/social.hpp"

#include "ordref/lp.hpp"

#include <algorithm>
#include <set>

namespace ordref {

Rational gini(const IncomeSplit& s) {
    if (s.own <= 0 || s.other <= 0) throw Error("BadPayload", "income split payments must be positive");
    return abs(s.own - s.other) / (2 * (s.own + s.other));
}

Rational attainable_equality(const ChoiceDataset& ds, const Menu& m) {
    if (m.empty()) throw Error("EmptyMenu", "an empty menu has no reference");
    Rational r = gini(ds.split(m.front()));
    for (auto x : m) r = std::min(r, gini(ds.split(x)));
    return r;
}

Menu most_balanced(const ChoiceDataset& ds, const Menu& m) {
    if (m.empty()) return {};
    const Rational r = attainable_equality(ds, m);
    Menu out;
    for (auto x : m)
        if (gini(ds.split(x)) == r) out.push_back(x);
    return out;
}

PsiMap psi_most_balanced() {
    return {"most-balanced", [](const ChoiceDataset& ds, const Menu& m) { return most_balanced(ds, m); }};
}

const std::vector<OwnShiftQuad>& own_shift_quads(const ChoiceDataset& ds) {
    return *ds.cached<std::vector<OwnShiftQuad>>("own-shifts", [&] {
        std::map<std::pair<Rational, Rational>, std::size_t> at;
        const std::size_t n = ds.universe().size();
        for (std::size_t i = 0; i < n; ++i) at[{ds.split(i).own, ds.split(i).other}] = i;
        std::vector<OwnShiftQuad> out;
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t x2 = 0; x2 < n; ++x2) {
                const auto& sx = ds.split(x);
                const auto& sx2 = ds.split(x2);
                if (x2 == x || sx2.other != sx.other) continue;
                const Rational a = sx2.own - sx.own;
                for (std::size_t y = 0; y < n; ++y) {
                    if (y == x) continue;
                    auto it = at.find({ds.split(y).own + a, ds.split(y).other});
                    if (it != at.end()) out.push_back({x, y, x2, it->second, a});
                }
            }
        return out;
    });
}

Witnesses quasilinearity_over(const ChoiceDataset& ds, const Family& family, bool first_only) {
    Witnesses out;
    const auto& quads = own_shift_quads(ds);
    if (quads.empty()) return out;
    const std::size_t n = ds.universe().size();
    std::vector<std::vector<Family>> with(n, std::vector<Family>(n));
    for (auto i : family) {
        const Menu& m = ds.menu(i);
        for (auto x : m)
            for (auto y : m)
                if (x != y) with[x][y].push_back(i);
    }
    // (x,y) in c(A), (x',y') in A, (x'+a,y') in c(B), (x+a,y) in B => (x+a,y) in c(B)
    for (const auto& q : quads)
        for (auto a : with[q.x][q.y]) {
            if (!ds.chosen(a, q.x)) continue;
            for (auto b : with[q.x2][q.y2])
                if (ds.chosen(b, q.y2) && !ds.chosen(b, q.x2)) {
                    std::vector<Menu> menus{ds.menu(a)};
                    if (b != a) menus.push_back(ds.menu(b));
                    out.push_back({std::move(menus), "Quasi-linearity",
                                   "own shift " + to_string(q.shift) + ": " + ds.id(q.x) + " chosen over " +
                                       ds.id(q.y) + " in " + ds.menu_label(ds.menu(a)) + ", " + ds.id(q.y2) +
                                       " chosen but " + ds.id(q.x2) + " rejected in " + ds.menu_label(ds.menu(b))});
                    if (first_only) return out;
                }
        }
    return out;
}

FiniteProperty quasilinearity() {
    return FiniteProperty("Quasi-linearity", [](const ChoiceDataset& ds, const Family& f, bool first_only) {
        return quasilinearity_over(ds, f, first_only);
    });
}

FiniteProperty warp_and_quasilinearity() {
    return conjunction("WARP+Quasi-linearity", {warp(), quasilinearity()});
}

RdResult check_equality_reference_dependence(const ChoiceDataset& ds) {
    return check_reference_dependence(ds, warp_and_quasilinearity(), psi_most_balanced(), Quantifier::ForAll);
}

Witnesses check_fairness(const ChoiceDataset& ds) {
    Witnesses out;
    for (std::size_t a = 0; a < ds.size(); ++a)
        for (std::size_t b = 0; b < ds.size(); ++b) {
            const Menu& A = ds.menu(a);
            const Menu& B = ds.menu(b);
            if (a == b || !subset_of(A, B)) continue;
            for (auto x : ds.choice(a))
                for (auto y : A) {
                    if (ds.chosen(a, y) || !(ds.split(x).other > ds.split(y).other)) continue;
                    if (ds.chosen(b, y))
                        out.push_back({{A, B}, "Fairness",
                                       ds.id(x) + " shares more and beats " + ds.id(y) + " in " + ds.menu_label(A) +
                                           " but " + ds.id(y) + " is chosen in " + ds.menu_label(B)});
                }
        }
    sort_witnesses(out);
    return out;
}

Witnesses check_social_monotonicity(const ChoiceDataset& ds) {
    Witnesses out;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const Menu& m = ds.menu(i);
        if (m.size() != 2) continue;
        const auto& p = ds.split(m[0]);
        const auto& q = ds.split(m[1]);
        if (p == q) continue;
        std::optional<std::size_t> better;
        if (p.own >= q.own && p.other >= q.other) better = m[0];
        if (q.own >= p.own && q.other >= p.other) better = m[1];
        if (better && ds.choice(i) != Menu{*better})
            out.push_back({{m}, "Monotonicity", ds.id(*better) + " is not chosen alone in " + ds.menu_label(m)});
    }
    sort_witnesses(out);
    return out;
}

std::vector<std::string> fspu_issues(const FspuParams& pr) {
    std::vector<std::string> out;
    if (pr.v.empty()) {
        out.push_back("no reference Gini values");
        return out;
    }
    const auto& grid = pr.v.begin()->second;
    for (const auto& [r, v] : pr.v) {
        const std::string at = "at Gini " + to_string(r);
        if (r < 0 || r >= frac(1, 2)) out.push_back("Gini " + to_string(r) + " lies outside [0, 1/2)");
        if (v.empty()) out.push_back("no payments " + at);
        bool same = v.size() == grid.size();
        for (auto it = v.begin(), jt = grid.begin(); same && it != v.end(); ++it, ++jt) same = it->first == jt->first;
        if (!same) out.push_back("payment grid " + at + " differs from the first reference");
        for (const auto& [y, u] : v)
            if (y <= 0) out.push_back("payment " + to_string(y) + " is not positive");
        for (auto it = v.begin(); it != v.end() && std::next(it) != v.end(); ++it)
            if (!(it->second < std::next(it)->second))
                out.push_back("v is not strictly increasing " + at + " at " + to_string(std::next(it)->first));
    }
    if (!out.empty()) return out;
    // a lower attainable Gini carries weakly larger sharing increments
    for (auto it = pr.v.begin(); std::next(it) != pr.v.end(); ++it) {
        const auto& lo = it->second;
        const auto& hi = std::next(it)->second;
        for (auto a = lo.begin(), b = hi.begin(); std::next(a) != lo.end(); ++a, ++b)
            if (std::next(a)->second - a->second < std::next(b)->second - b->second)
                out.push_back("increment from " + to_string(a->first) + " to " + to_string(std::next(a)->first) +
                              " is smaller at Gini " + to_string(it->first) + " than at " +
                              to_string(std::next(it)->first));
    }
    return out;
}

void validate_fspu(const FspuParams& params) {
    auto issues = fspu_issues(params);
    if (!issues.empty()) throw Error("BadParams", issues.front());
}

const std::map<Rational, Rational>& v_at(const FspuParams& params, const Rational& r) {
    if (params.v.empty()) throw Error("BadParams", "no reference Gini values");
    auto it = params.v.upper_bound(r);
    if (it == params.v.begin()) return it->second;
    return std::prev(it)->second;
}

Rational fspu_value(const FspuParams& params, const IncomeSplit& s, const Rational& r) {
    const auto& v = v_at(params, r);
    auto it = v.find(s.other);
    if (it == v.end()) throw Error("UnknownPayment", "payment " + to_string(s.other) + " has no utility");
    return s.own + it->second;
}

Menu evaluate_fspu(const FspuParams& params, const std::vector<IncomeSplit>& splits, const Menu& menu) {
    if (menu.empty()) return {};
    Rational r = gini(splits[menu.front()]);
    for (auto x : menu) r = std::min(r, gini(splits[x]));
    Menu best;
    Rational top;
    for (auto x : menu) {
        Rational v = fspu_value(params, splits[x], r);
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

std::vector<IncomeSplit> splits_of(const std::vector<Alternative>& universe) {
    std::vector<IncomeSplit> out;
    for (const auto& a : universe) {
        if (!std::holds_alternative<IncomeSplit>(a.payload))
            throw Error("WrongKind", "alternative '" + a.id + "' is not an income split");
        out.push_back(std::get<IncomeSplit>(a.payload));
    }
    return out;
}

}  // namespace

ChoiceDataset simulate_fspu(const FspuParams& params, const std::vector<Alternative>& universe,
                            const std::vector<Menu>& menus) {
    validate_fspu(params);
    const auto splits = splits_of(universe);
    std::vector<RawObservation> raw;
    auto names = [&](const Menu& m) {
        std::vector<std::string> out;
        for (auto i : m) out.push_back(universe.at(i).id);
        return out;
    };
    for (const auto& m : menus) raw.push_back({names(m), names(evaluate_fspu(params, splits, m))});
    return ChoiceDataset::build(PayloadKind::IncomeSplit, universe, raw);
}

std::vector<Mismatch> verify_fspu(const FspuParams& params, const ChoiceDataset& ds) {
    const auto splits = splits_of(ds.universe());
    return compare_choices(ds, [&](const Menu& m) { return evaluate_fspu(params, splits, m); });
}

bool sharing_utilities_coincide(const FspuParams& params) {
    for (const auto& [r, v] : params.v)
        if (v != params.v.begin()->second) return false;
    return true;
}

namespace {

std::optional<FspuParams> solve_fspu(const ChoiceDataset& ds, bool single) {
    LinearFeasibilityProblem lp;
    std::set<Rational> refs, ys;
    for (std::size_t i = 0; i < ds.universe().size(); ++i) ys.insert(ds.split(i).other);
    for (std::size_t i = 0; i < ds.size(); ++i) refs.insert(attainable_equality(ds, ds.menu(i)));
    std::map<Rational, std::map<Rational, std::size_t>> var;
    for (const auto& r : refs)
        for (const auto& y : ys) {
            if (single && r != *refs.begin())
                var[r][y] = var[*refs.begin()][y];
            else
                var[r][y] = lp.add_variable("v(" + to_string(r) + "," + to_string(y) + ")");
        }
    const Rational one(1), zero(0);
    for (const auto& r : refs) {
        if (single && r != *refs.begin()) break;
        const auto& v = var[r];
        lp.add({{v.begin()->second, one}}, Relation::EQ, zero, "normalization");
        for (auto it = v.begin(); std::next(it) != v.end(); ++it)
            lp.add({{std::next(it)->second, one}, {it->second, -one}}, Relation::GT, zero, "increasing");
    }
    if (!single)
        for (auto it = var.begin(); std::next(it) != var.end(); ++it) {
            const auto& lo = it->second;
            const auto& hi = std::next(it)->second;
            for (auto a = lo.begin(), b = hi.begin(); std::next(a) != lo.end(); ++a, ++b)
                lp.add({{std::next(a)->second, one}, {a->second, -one}, {std::next(b)->second, -one}, {b->second, one}},
                       Relation::GE, zero, "increasing differences");
        }
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const Menu& m = ds.menu(i);
        const auto& v = var.at(attainable_equality(ds, m));
        const std::size_t c = ds.choice(i).front();
        const auto& sc = ds.split(c);
        for (auto y : m) {
            if (y == c) continue;
            const auto& sy = ds.split(y);
            lp.add({{v.at(sc.other), one}, {v.at(sy.other), -one}}, ds.chosen(i, y) ? Relation::EQ : Relation::GT,
                   sy.own - sc.own, ds.menu_label(m));
        }
    }
    auto res = solve_linear_feasibility(lp);
    if (!res.feasible) return std::nullopt;
    FspuParams out;
    for (const auto& [r, v] : var)
        for (const auto& [y, j] : v) out.v[r][y] = res.assignment[j];
    return out;
}

}  // namespace

FspuFit fit_fspu(const ChoiceDataset& ds) {
    if (ds.kind() != PayloadKind::IncomeSplit) throw Error("WrongKind", "fit_fspu needs income splits");
    Witnesses w = check_equality_reference_dependence(ds).witnesses(ds, "EqualityDependence");
    for (auto& x : check_fairness(ds)) w.push_back(std::move(x));
    for (auto& x : check_social_monotonicity(ds)) w.push_back(std::move(x));
    if (!w.empty()) {
        sort_witnesses(w);
        throw AxiomFailure("the data violate an FSPU axiom", std::move(w));
    }
    if (ds.size() == 0) throw Error("Infeasible", "no observations to fit");
    for (bool single : {true, false})
        if (auto p = solve_fspu(ds, single)) {
            if (auto bad = verify_fspu(*p, ds); !bad.empty())
                throw Error("ConstructionFailed", "fitted parameters miss " + describe(ds, bad.front()));
            validate_fspu(*p);
            return {std::move(*p), single ? "quasi-linear" : "fspu"};
        }
    throw Error("Infeasible", "no family of sharing utilities with increasing differences reproduces the data");
}

SocialLinkage linkage_report_social(const ChoiceDataset& ds) {
    return {warp_over(ds, ds.all(), true).empty(), quasilinearity_over(ds, ds.all(), true).empty()};
}

namespace {

bool has_tie(const FspuParams& p, const std::vector<Rational>& owns) {
    for (const auto& [r, v] : p.v) {
        std::set<Rational> seen;
        for (const auto& x : owns)
            for (const auto& [y, u] : v)
                if (!seen.insert(x + u).second) return true;
    }
    return false;
}

}  // namespace

FspuParams random_fspu_params(std::mt19937_64& rng, const std::vector<Rational>& owns,
                              const std::vector<Rational>& others, bool equal) {
    if (owns.size() < 2 || others.size() < 2) throw Error("BadParams", "need two own and two other payments");
    std::set<Rational> refs;
    for (const auto& x : owns)
        for (const auto& y : others) refs.insert(gini({x, y}));
    std::set<Rational> ys(others.begin(), others.end());
    const Rational span = *std::max_element(owns.begin(), owns.end()) - *std::min_element(owns.begin(), owns.end());
    std::uniform_int_distribution<long> base(1, 202), extra(0, 100);
    std::bernoulli_distribution bump(0.5);
    for (;;) {
        FspuParams p;
        std::vector<Rational> inc;
        for (std::size_t j = 1; j < ys.size(); ++j) inc.push_back(frac(base(rng), 101));
        // from the least balanced reference down, increments only grow
        for (auto r = refs.rbegin(); r != refs.rend(); ++r) {
            if (!equal && r != refs.rbegin())
                for (auto& d : inc)
                    if (bump(rng)) d += frac(extra(rng), 101);
            auto& v = p.v[*r];
            Rational level(0);
            std::size_t j = 0;
            for (const auto& y : ys) {
                if (j > 0) level += inc[j - 1];
                v[y] = level;
                ++j;
            }
        }
        const auto& widest = p.v.begin()->second;
        if (!has_tie(p, owns) && widest.rbegin()->second - widest.begin()->second < span) return p;
    }
}

std::vector<Alternative> split_grid(const std::vector<Rational>& owns, const std::vector<Rational>& others) {
    std::vector<Alternative> out;
    for (const auto& x : owns)
        for (const auto& y : others) out.push_back({"x" + to_string(x) + "y" + to_string(y), IncomeSplit{x, y}});
    return out;
}

ChoiceDataset split_data(const std::vector<std::pair<std::string, IncomeSplit>>& alts,
                         const std::vector<RawObservation>& rows, std::optional<Rational> floor) {
    std::vector<Alternative> a;
    for (const auto& [id, s] : alts) a.push_back({id, s});
    return ChoiceDataset::build(PayloadKind::IncomeSplit, std::move(a), rows, floor);
}

}  // namespace ordref
