#include "ordref/lp.hpp"
#include "ordref/ordu.hpp"
#include "ordref/risk.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace ordref {

namespace {

std::size_t cols(const MatrixQ& m) { return static_cast<std::size_t>(m.cols()); }

VectorQ row_of(const MatrixQ& u, std::size_t r) { return u.row(static_cast<Eigen::Index>(r)).transpose(); }

}  // namespace

std::vector<std::string> areu_issues(const AreuParams& pr) {
    std::vector<std::string> out;
    const std::size_t n = pr.ids.size();
    if (!pr.prizes) return {"missing prize set"};
    const std::size_t k = pr.prizes->size();
    if (pr.lotteries.size() != n) out.push_back("lottery count differs from id count");
    if (!std::is_sorted(pr.ids.begin(), pr.ids.end()) ||
        std::adjacent_find(pr.ids.begin(), pr.ids.end()) != pr.ids.end())
        out.push_back("ids must be distinct and sorted");
    if (pr.order.size() != n) out.push_back("reference order does not cover the lotteries");
    if (static_cast<std::size_t>(pr.utility.rows()) != n || cols(pr.utility) != k)
        out.push_back("utility matrix must have one row per lottery and one column per prize");
    if (!out.empty()) return out;
    for (const auto& l : pr.lotteries)
        if (!(*l.prizes == *pr.prizes)) out.push_back("lottery over a different prize set");
    for (std::size_t r = 0; r < n; ++r) {
        const VectorQ u = row_of(pr.utility, r);
        if (u(0) != 0 || u(u.size() - 1) != 1) out.push_back("utility of " + pr.ids[r] + " is not normalized");
        for (Eigen::Index i = 1; i < u.size(); ++i)
            if (!(u(i - 1) < u(i))) {
                out.push_back("utility of " + pr.ids[r] + " is not strictly increasing");
                break;
            }
    }
    if (!out.empty()) return out;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            if (x != y && (mps(pr.lotteries[x], pr.lotteries[y]) || extreme_spread(pr.lotteries[x], pr.lotteries[y])) &&
                !pr.order.above(y, x))
                out.push_back(pr.ids[x] + " is riskier than " + pr.ids[y] + " but ranks above it");
    const auto& rank = pr.order.ranking();
    for (std::size_t i = 0; i + 1 < rank.size(); ++i) {
        const VectorQ hi = rho_vector(row_of(pr.utility, rank[i])), lo = rho_vector(row_of(pr.utility, rank[i + 1]));
        for (Eigen::Index j = 0; j < hi.size(); ++j)
            if (hi(j) < lo(j)) {
                out.push_back("utility of " + pr.ids[rank[i]] + " is less concave than that of " +
                              pr.ids[rank[i + 1]] + " ranked below it");
                break;
            }
    }
    return out;
}

void validate_areu(const AreuParams& params) {
    auto issues = areu_issues(params);
    if (!issues.empty()) throw Error("BadParams", issues.front());
}

Rational expected_utility(const Lottery& p, const MatrixQ& utility, std::size_t row) {
    Rational s;
    for (Eigen::Index i = 0; i < p.p.size(); ++i) s += p.p(i) * utility(static_cast<Eigen::Index>(row), i);
    return s;
}

Menu evaluate_areu(const AreuParams& params, const Menu& menu) {
    for (auto x : menu)
        if (x >= params.ids.size()) throw Error("UnknownLottery", "menu member outside the params");
    const std::size_t r = params.order.top(menu);
    Menu best;
    Rational top;
    for (auto y : menu) {
        Rational v = expected_utility(params.lotteries[y], params.utility, r);
        if (best.empty() || v > top) {
            best = {y};
            top = v;
        } else if (v == top) {
            best.push_back(y);
        }
    }
    return best;
}

ChoiceDataset simulate_areu(const AreuParams& params, const std::vector<Menu>& menus) {
    std::vector<Alternative> alts;
    for (std::size_t i = 0; i < params.ids.size(); ++i) alts.push_back({params.ids[i], params.lotteries[i]});
    auto names = [&](const Menu& m) {
        std::vector<std::string> out;
        for (auto i : m) out.push_back(params.ids[i]);
        return out;
    };
    std::vector<RawObservation> raw;
    for (const auto& m : menus) raw.push_back({names(m), names(evaluate_areu(params, m))});
    return ChoiceDataset::build(PayloadKind::Lottery, std::move(alts), raw);
}

namespace {

// Dataset universe index -> params index.
std::vector<std::size_t> map_lotteries(const AreuParams& params, const ChoiceDataset& ds) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < ds.universe().size(); ++i) {
        auto it = std::lower_bound(params.ids.begin(), params.ids.end(), ds.id(i));
        if (it == params.ids.end() || *it != ds.id(i))
            throw Error("UnknownLottery", "lottery '" + ds.id(i) + "' is not in the params");
        const auto j = static_cast<std::size_t>(it - params.ids.begin());
        if (!(params.lotteries[j] == ds.lottery(i)))
            throw Error("UnknownLottery", "lottery '" + ds.id(i) + "' differs from the params lottery of that id");
        out.push_back(j);
    }
    return out;
}

}  // namespace

std::vector<Mismatch> verify_areu(const AreuParams& params, const ChoiceDataset& ds) {
    const auto to_params = map_lotteries(params, ds);
    std::vector<std::size_t> back(params.ids.size(), 0);
    for (std::size_t i = 0; i < to_params.size(); ++i) back[to_params[i]] = i;
    return compare_choices(ds, [&](const Menu& m) {
        Menu mine;
        for (auto x : m) mine.push_back(to_params[x]);
        std::sort(mine.begin(), mine.end());
        Menu out;
        for (auto y : evaluate_areu(params, mine)) out.push_back(back[y]);
        std::sort(out.begin(), out.end());
        return out;
    });
}

bool class_utilities_coincide(const AreuParams& params, const ChoiceDataset& ds) {
    const auto to_params = map_lotteries(params, ds);
    std::optional<VectorQ> first;
    for (const auto& o : ds.observations()) {
        Menu mine;
        for (auto x : o.menu) mine.push_back(to_params[x]);
        const VectorQ u = row_of(params.utility, params.order.top(mine));
        if (!first) first = u;
        else if (*first != u) return false;
    }
    return true;
}

namespace {

struct Affine {
    std::map<std::size_t, Rational> terms;
    Rational c;
};

Affine operator-(const Affine& a, const Affine& b) {
    Affine out = a;
    for (const auto& [v, x] : b.terms) out.terms[v] -= x;
    out.c -= b.c;
    return out;
}

Affine operator*(const Rational& s, const Affine& a) {
    Affine out;
    for (const auto& [v, x] : a.terms) out.terms[v] = s * x;
    out.c = s * a.c;
    return out;
}

Affine operator+(const Affine& a, const Affine& b) {
    Affine out = a;
    for (const auto& [v, x] : b.terms) out.terms[v] += x;
    out.c += b.c;
    return out;
}

// a rel 0
void add(LinearFeasibilityProblem& lp, const Affine& a, Relation rel) {
    std::vector<std::pair<std::size_t, Rational>> terms;
    for (const auto& [v, x] : a.terms)
        if (x != 0) terms.push_back({v, x});
    lp.add(std::move(terms), rel, -a.c);
}

Rational value(const Affine& a, const std::vector<Rational>& x) {
    Rational s = a.c;
    for (const auto& [v, c] : a.terms) s += c * x[v];
    return s;
}

using Utility = std::vector<Affine>;

Affine constant(const Rational& c) { return {{}, c}; }

// u(w) = 0 and u(b) = 1 around one variable per interior prize.
Utility utility_variables(LinearFeasibilityProblem& lp, std::size_t k, const std::string& tag) {
    Utility u{constant(0)};
    for (std::size_t i = 1; i + 1 < k; ++i) {
        auto v = lp.add_variable(tag + "[" + std::to_string(i) + "]");
        u.push_back({{{v, Rational(1)}}, Rational(0)});
    }
    u.push_back(constant(1));
    return u;
}

Affine expectation(const Utility& u, const Lottery& p) {
    Affine s;
    for (std::size_t i = 0; i < u.size(); ++i) s = s + p.p(static_cast<Eigen::Index>(i)) * u[i];
    return s;
}

void add_increasing(LinearFeasibilityProblem& lp, const Utility& u) {
    for (std::size_t i = 1; i < u.size(); ++i) add(lp, u[i] - u[i - 1], Relation::GT);
}

void add_class(LinearFeasibilityProblem& lp, const ChoiceDataset& ds, const Family& family, const Utility& u) {
    for (auto i : family) {
        const Menu& c = ds.choice(i);
        const Affine top = expectation(u, ds.lottery(c.front()));
        for (auto y : ds.menu(i)) {
            if (y == c.front()) continue;
            add(lp, top - expectation(u, ds.lottery(y)), ds.chosen(i, y) ? Relation::EQ : Relation::GT);
        }
    }
}

// rho_i rel theta, linear once theta is fixed: (1 - theta) g_i - theta g_{i+1} rel 0.
void add_rho_bound(LinearFeasibilityProblem& lp, const Utility& u, std::size_t i, Relation rel, const Rational& theta) {
    const Affine g1 = u[i + 1] - u[i], g2 = u[i + 2] - u[i + 1];
    add(lp, (1 - theta) * g1 - theta * g2, rel);
}

VectorQ read_utility(const Utility& u, const std::vector<Rational>& x) {
    VectorQ out(static_cast<Eigen::Index>(u.size()));
    for (std::size_t i = 0; i < u.size(); ++i) out(static_cast<Eigen::Index>(i)) = value(u[i], x);
    return out;
}

struct RhoBound {
    std::size_t index;
    Relation rel;
    Rational theta;
};

std::optional<VectorQ> solve_class(const ChoiceDataset& ds, const Family& family, const std::vector<RhoBound>& bounds) {
    LinearFeasibilityProblem lp;
    Utility u = utility_variables(lp, ds.prizes()->size(), "u");
    add_increasing(lp, u);
    add_class(lp, ds, family, u);
    for (const auto& b : bounds) add_rho_bound(lp, u, b.index, b.rel, b.theta);
    auto r = solve_linear_feasibility(lp);
    if (!r.feasible) return std::nullopt;
    return read_utility(u, r.assignment);
}

// Three prizes: rho is u(middle) itself, so the whole chain is one exact system.
std::optional<std::vector<VectorQ>> solve_chain3(const ChoiceDataset& ds, const std::vector<Family>& classes) {
    LinearFeasibilityProblem lp;
    std::vector<Utility> us;
    for (std::size_t j = 0; j < classes.size(); ++j) {
        us.push_back(utility_variables(lp, 3, "u" + std::to_string(j)));
        add_increasing(lp, us.back());
        add_class(lp, ds, classes[j], us.back());
        if (j > 0) add(lp, us[j - 1][1] - us[j][1], Relation::GE);
    }
    auto r = solve_linear_feasibility(lp);
    if (!r.feasible) return std::nullopt;
    std::vector<VectorQ> out;
    for (const auto& u : us) out.push_back(read_utility(u, r.assignment));
    return out;
}

// Grid sweep for four or more prizes. Top-down: each class keeps its rho at or below
// the class above and then pushes each rho coordinate as high as the grid allows.
// Bottom-up mirrors it.
std::optional<std::vector<VectorQ>> solve_chain_grid(const ChoiceDataset& ds, const std::vector<Family>& classes,
                                                     long grid, bool top_down) {
    const std::size_t m = classes.size();
    const std::size_t k = ds.prizes()->size() - 2;
    std::vector<VectorQ> out(m);
    std::optional<VectorQ> prev;
    for (std::size_t step = 0; step < m; ++step) {
        const std::size_t j = top_down ? step : m - 1 - step;
        std::vector<RhoBound> bounds;
        if (prev)
            for (std::size_t i = 0; i < k; ++i)
                bounds.push_back({i, top_down ? Relation::LE : Relation::GE, (*prev)(static_cast<Eigen::Index>(i))});
        auto sol = solve_class(ds, classes[j], bounds);
        if (!sol) return std::nullopt;
        for (std::size_t i = 0; i < k; ++i) {
            const Relation push = top_down ? Relation::GE : Relation::LE;
            auto feasible_at = [&](long t) {
                auto b = bounds;
                b.push_back({i, push, frac(t, grid)});
                return solve_class(ds, classes[j], b).has_value();
            };
            // feasibility is monotone in t, so bisect for the extreme grid value
            long lo = 1, hi = grid - 1, best = -1;
            while (lo <= hi) {
                long mid = (lo + hi) / 2;
                if (feasible_at(mid)) {
                    best = mid;
                    if (top_down) lo = mid + 1;
                    else hi = mid - 1;
                } else {
                    if (top_down) hi = mid - 1;
                    else lo = mid + 1;
                }
            }
            if (best >= 0) bounds.push_back({i, push, frac(best, grid)});
        }
        sol = solve_class(ds, classes[j], bounds);
        out[j] = *sol;
        prev = rho_vector(*sol);
    }
    return out;
}

constexpr std::size_t kNodeBudget = 200000;

class AreuSearch {
public:
    explicit AreuSearch(const ChoiceDataset& ds) : ds_(ds), n_(ds.universe().size()) {
        above_.assign(n_, std::vector<char>(n_, 0));
        for (std::size_t x = 0; x < n_; ++x)
            for (std::size_t y = 0; y < n_; ++y)
                if (x != y) {
                    const Lottery &px = ds.lottery(x), &py = ds.lottery(y);
                    above_[y][x] = mps(px, py) || extreme_spread(px, py, true);
                }
        priority_.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) priority_[i] = i;
        // best-prize probability first, descending
        std::stable_sort(priority_.begin(), priority_.end(), [&](std::size_t a, std::size_t b) {
            const VectorQ &pa = ds.lottery(a).p, &pb = ds.lottery(b).p;
            for (Eigen::Index i = pa.size() - 1; i >= 0; --i)
                if (pa(i) != pb(i)) return pa(i) > pb(i);
            return false;
        });
        placed_.assign(n_, 0);
        assigned_.assign(ds.size(), 0);
    }

    // Remaining lotteries in an order extending the closure relation.
    std::optional<std::vector<std::size_t>> complete(std::vector<std::size_t> chain) {
        std::vector<char> placed = placed_;
        for (;;) {
            bool any = false;
            for (auto x : priority_)
                if (!placed[x] && maximal(x, placed)) {
                    placed[x] = 1;
                    chain.push_back(x);
                    any = true;
                    break;
                }
            if (!any) break;
        }
        if (chain.size() != n_) return std::nullopt;
        return chain;
    }

    std::optional<AreuFit> run(long grid) {
        grid_ = grid;
        nodes_ = 0;
        if (!go()) return std::nullopt;
        return result_;
    }

    bool budget_exhausted() const { return nodes_ > kNodeBudget; }

private:
    bool maximal(std::size_t x, const std::vector<char>& placed) const {
        for (std::size_t y = 0; y < n_; ++y)
            if (!placed[y] && above_[y][x]) return false;
        return true;
    }

    Family class_of(std::size_t x) const {
        Family f;
        for (std::size_t i = 0; i < ds_.size(); ++i)
            if (!assigned_[i] && contains(ds_.menu(i), x)) f.push_back(i);
        return f;
    }

    std::optional<std::vector<VectorQ>> couple(const std::vector<Family>& classes, std::string& method) const {
        if (ds_.prizes()->size() <= 3) {
            method = "joint-lp";
            return solve_chain3(ds_, classes);
        }
        method = "grid-" + std::to_string(grid_);
        if (auto s = solve_chain_grid(ds_, classes, grid_, true)) return s;
        return solve_chain_grid(ds_, classes, grid_, false);
    }

    bool finish() {
        auto ranking = complete(chain_);
        if (!ranking) return false;
        std::vector<Family> classes;
        std::vector<std::size_t> refs;
        for (std::size_t i = 0; i < chain_.size(); ++i)
            if (!classes_[i].empty()) {
                classes.push_back(classes_[i]);
                refs.push_back(chain_[i]);
            }
        std::string method;
        std::optional<std::vector<VectorQ>> sols;
        if (classes.empty()) sols = std::vector<VectorQ>{};
        else sols = couple(classes, method);
        if (!sols) return false;

        AreuFit fit;
        fit.method = method.empty() ? "joint-lp" : method;
        auto& pr = fit.params;
        pr.prizes = ds_.prizes();
        for (std::size_t i = 0; i < n_; ++i) {
            pr.ids.push_back(ds_.id(i));
            pr.lotteries.push_back(ds_.lottery(i));
        }
        pr.order = ReferenceOrder(*ranking);
        const auto k = static_cast<Eigen::Index>(ds_.prizes()->size());
        pr.utility = MatrixQ::Zero(static_cast<Eigen::Index>(n_), k);
        std::map<std::size_t, VectorQ> own;
        for (std::size_t j = 0; j < refs.size(); ++j) own[refs[j]] = (*sols)[j];
        // unreferenced lotteries borrow the nearest reference utility below them, else above
        const auto& rank = *ranking;
        for (std::size_t pos = 0; pos < rank.size(); ++pos) {
            std::optional<VectorQ> u;
            for (std::size_t q = pos; q < rank.size() && !u; ++q)
                if (own.count(rank[q])) u = own[rank[q]];
            for (std::size_t q = pos; q-- > 0 && !u;)
                if (own.count(rank[q])) u = own[rank[q]];
            if (!u) {
                // no observed menus at all: linear utility
                VectorQ lin(k);
                const auto& x = ds_.prizes()->prizes;
                for (Eigen::Index i = 0; i < k; ++i)
                    lin(i) = (x[static_cast<std::size_t>(i)] - x.front()) / (x.back() - x.front());
                u = lin;
            }
            pr.utility.row(static_cast<Eigen::Index>(rank[pos])) = u->transpose();
        }
        result_ = std::move(fit);
        return true;
    }

    bool go() {
        if (++nodes_ > kNodeBudget) return false;
        // lotteries no remaining menu contains can be placed at once
        std::vector<std::size_t> forced;
        for (bool again = true; again;) {
            again = false;
            for (auto x : priority_)
                if (!placed_[x] && maximal(x, placed_) && class_of(x).empty()) {
                    placed_[x] = 1;
                    chain_.push_back(x);
                    classes_.push_back({});
                    forced.push_back(x);
                    again = true;
                    break;
                }
        }
        auto undo_forced = [&] {
            for (auto x : forced) {
                placed_[x] = 0;
                chain_.pop_back();
                classes_.pop_back();
            }
        };
        if (std::all_of(assigned_.begin(), assigned_.end(), [](char a) { return a; })) {
            bool ok = finish();
            undo_forced();
            return ok;
        }
        for (auto x : priority_) {
            if (placed_[x] || !maximal(x, placed_)) continue;
            Family cls = class_of(x);
            if (cls.empty() || !solve_class(ds_, cls, {})) continue;
            placed_[x] = 1;
            for (auto i : cls) assigned_[i] = 1;
            chain_.push_back(x);
            classes_.push_back(cls);
            bool prune = false;
            if (ds_.prizes()->size() <= 3) {
                std::vector<Family> nonempty;
                for (const auto& c : classes_)
                    if (!c.empty()) nonempty.push_back(c);
                prune = !solve_chain3(ds_, nonempty);
            }
            bool ok = !prune && go();
            if (ok) {
                undo_forced();
                return true;
            }
            chain_.pop_back();
            classes_.pop_back();
            for (auto i : cls) assigned_[i] = 0;
            placed_[x] = 0;
            if (nodes_ > kNodeBudget) break;
        }
        undo_forced();
        return false;
    }

    const ChoiceDataset& ds_;
    std::size_t n_;
    std::vector<std::vector<char>> above_;  // above_[y][x]: y must rank above x
    std::vector<std::size_t> priority_;
    std::vector<char> placed_, assigned_;
    std::vector<std::size_t> chain_;
    std::vector<Family> classes_;
    long grid_ = 64;
    std::size_t nodes_ = 0;
    std::optional<AreuFit> result_;
};

}  // namespace

AreuFit fit_areu(const ChoiceDataset& ds) {
    if (ds.kind() != PayloadKind::Lottery) throw Error("WrongKind", "AREU needs lottery payloads");
    Witnesses blocking = check_risk_reference_dependence(ds).witnesses(ds, "RiskReferenceDependence");
    for (auto& w : check_avoidable_risk(ds)) blocking.push_back(std::move(w));
    for (auto& w : check_fosd(ds)) blocking.push_back(std::move(w));
    if (!blocking.empty()) {
        sort_witnesses(blocking);
        throw AxiomFailure("the data violate an AREU axiom", std::move(blocking));
    }

    AreuSearch search(ds);
    if (auto u = solve_class(ds, ds.all(), {})) {
        auto ranking = search.complete({});
        if (ranking) {
            AreuFit fit;
            fit.method = "single-eu";
            auto& pr = fit.params;
            pr.prizes = ds.prizes();
            for (std::size_t i = 0; i < ds.universe().size(); ++i) {
                pr.ids.push_back(ds.id(i));
                pr.lotteries.push_back(ds.lottery(i));
            }
            pr.order = ReferenceOrder(*ranking);
            pr.utility = MatrixQ(static_cast<Eigen::Index>(pr.ids.size()), u->size());
            for (Eigen::Index r = 0; r < pr.utility.rows(); ++r) pr.utility.row(r) = u->transpose();
            return fit;
        }
    }
    const bool grids = ds.prizes()->size() > 3;
    for (long grid : {64L, 512L}) {
        if (auto fit = search.run(grid)) return *fit;
        if (search.budget_exhausted())
            throw Error("Infeasible", "search budget exhausted before a certificate was found");
        if (!grids) break;
    }
    if (grids) throw Error("Infeasible", "no certificate at grid 1/512");
    throw Error("Infeasible", "no risk-consistent reference order admits nested expected-utility classes");
}

std::string to_string(Fanning f) {
    switch (f) {
        case Fanning::RiskAverseFanOut: return "RiskAverseFanOut";
        case Fanning::RiskLovingFanIn: return "RiskLovingFanIn";
        case Fanning::RiskNeutral: return "RiskNeutral";
        case Fanning::MixedViolation: return "MixedViolation";
    }
    return "?";
}

FanningReport fanning_classify(const AreuParams& params, long grid) {
    if (!params.prizes || params.prizes->size() != 3)
        throw Error("NotATriangle", "fanning needs exactly three prizes");
    if (grid < 1) throw Error("BadGrid", "grid resolution must be positive");
    validate_areu(params);
    const auto& x = params.prizes->prizes;
    const Rational neutral = (x[1] - x[0]) / (x[2] - x[0]);
    FanningReport rep;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < params.ids.size(); ++i) {
        const VectorQ& p = params.lotteries[i].p;
        bool on_grid = true;
        for (Eigen::Index j = 0; j < p.size(); ++j) {
            Rational s = p(j) * grid;
            on_grid = on_grid && denominator(s) == 1;
        }
        if (!on_grid) continue;
        idx.push_back(i);
        const Rational rho = params.utility(static_cast<Eigen::Index>(i), 1);
        rep.points.push_back({params.ids[i], p(2), p(0), rho, rho / (1 - rho),
                              expected_utility(params.lotteries[i], params.utility, i)});
    }
    if (idx.empty()) throw Error("EmptyGrid", "no params lottery lies on the grid");

    bool averse = true, loving = true;
    for (const auto& pt : rep.points) {
        averse = averse && pt.rho >= neutral;
        loving = loving && pt.rho <= neutral;
    }
    const std::size_t m = idx.size();
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            if (a != b && fosd(params.lotteries[idx[a]], params.lotteries[idx[b]])) {
                if (rep.points[a].slope < rep.points[b].slope) rep.slopes_nondecreasing = false;
                if (rep.points[a].slope > rep.points[b].slope) rep.slopes_nonincreasing = false;
            }

    // binary choices among the points, referenced by the R-top of each pair
    std::vector<std::vector<char>> weak(m, std::vector<char>(m, 1));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b) {
            const std::size_t r = params.order.above(idx[a], idx[b]) ? idx[a] : idx[b];
            const Rational ua = expected_utility(params.lotteries[idx[a]], params.utility, r);
            const Rational ub = expected_utility(params.lotteries[idx[b]], params.utility, r);
            weak[a][b] = ua >= ub;
            weak[b][a] = ub >= ua;
        }
    for (std::size_t p = 0; p < m && rep.transitive; ++p)
        for (std::size_t q = 0; q < m && rep.transitive; ++q) {
            if (q == p || !weak[p][q]) continue;
            for (std::size_t s = 0; s < m; ++s)
                if (s != p && s != q && weak[q][s] && !weak[p][s]) {
                    rep.transitive = false;
                    break;
                }
        }

    if (averse && loving) rep.verdict = Fanning::RiskNeutral;
    else if (averse && rep.slopes_nondecreasing) rep.verdict = Fanning::RiskAverseFanOut;
    else if (loving && rep.slopes_nonincreasing) rep.verdict = Fanning::RiskLovingFanIn;
    else rep.verdict = Fanning::MixedViolation;
    return rep;
}

std::string triangle_csv(const FanningReport& report) {
    std::ostringstream os;
    os << "p_b,p_w,reference_id,utility_level\n";
    for (const auto& p : report.points)
        os << to_string(p.p_b) << ',' << to_string(p.p_w) << ',' << p.id << ',' << to_string(p.level) << '\n';
    return os.str();
}

namespace {

// Kahn's algorithm; among available lotteries the one first in `priority` goes next.
std::optional<std::vector<std::size_t>> linear_extension(const std::vector<std::vector<char>>& above,
                                                         const std::vector<std::size_t>& priority) {
    const std::size_t n = above.size();
    std::vector<std::size_t> indeg(n, 0), out;
    for (std::size_t y = 0; y < n; ++y)
        for (std::size_t x = 0; x < n; ++x)
            if (above[y][x]) ++indeg[x];
    std::vector<char> done(n, 0);
    while (out.size() < n) {
        std::optional<std::size_t> pick;
        for (auto x : priority)
            if (!done[x] && indeg[x] == 0) {
                pick = x;
                break;
            }
        if (!pick) return std::nullopt;
        done[*pick] = 1;
        out.push_back(*pick);
        for (std::size_t x = 0; x < n; ++x)
            if (above[*pick][x]) --indeg[x];
    }
    return out;
}

AreuParams with_rhos(std::shared_ptr<const PrizeSet> prizes, std::vector<std::string> ids,
                     std::vector<Lottery> lotteries, std::vector<std::size_t> ranking,
                     const std::vector<Rational>& rho_by_position) {
    AreuParams pr;
    pr.prizes = std::move(prizes);
    pr.ids = std::move(ids);
    pr.lotteries = std::move(lotteries);
    pr.utility = MatrixQ::Zero(static_cast<Eigen::Index>(pr.ids.size()), 3);
    for (std::size_t pos = 0; pos < ranking.size(); ++pos) {
        auto r = static_cast<Eigen::Index>(ranking[pos]);
        pr.utility(r, 1) = rho_by_position[pos];
        pr.utility(r, 2) = 1;
    }
    pr.order = ReferenceOrder(std::move(ranking));
    return pr;
}

}  // namespace

AreuParams triangle_params(std::shared_ptr<const PrizeSet> prizes, long grid, bool averse) {
    if (!prizes || prizes->size() != 3) throw Error("NotATriangle", "fanning needs exactly three prizes");
    const std::size_t width = std::to_string(grid).size();
    auto pad = [&](long v) {
        std::string s = std::to_string(v);
        return std::string(width - s.size(), '0') + s;
    };
    std::vector<std::pair<std::string, Lottery>> pts;
    for (long b = 0; b <= grid; ++b)
        for (long w = 0; w + b <= grid; ++w)
            pts.push_back({"b" + pad(b) + "w" + pad(w),
                           lottery(prizes, {frac(w, grid), frac(grid - b - w, grid), frac(b, grid)})});
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::string> ids;
    std::vector<Lottery> lots;
    for (auto& [id, l] : pts) {
        ids.push_back(id);
        lots.push_back(l);
    }
    const std::size_t n = lots.size();
    std::vector<std::vector<char>> above(n, std::vector<char>(n, 0));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            if (x == y) continue;
            if (mps(lots[x], lots[y]) || extreme_spread(lots[x], lots[y])) above[y][x] = 1;
            if (fosd(lots[x], lots[y])) (averse ? above[x][y] : above[y][x]) = 1;
        }
    std::vector<std::size_t> priority(n);
    for (std::size_t i = 0; i < n; ++i) priority[i] = i;
    auto ranking = linear_extension(above, priority);
    if (!ranking) throw Error("CyclicOrder", "safety and dominance relations form a cycle on this grid");
    const auto& x = prizes->prizes;
    const Rational neutral = (x[1] - x[0]) / (x[2] - x[0]);
    std::vector<Rational> rho(n);
    for (std::size_t pos = 0; pos < n; ++pos) {
        const Rational step = frac(static_cast<long>(n - pos), static_cast<long>(n + 1));
        rho[pos] = averse ? neutral + (1 - neutral) * step : neutral * step;
    }
    return with_rhos(prizes, std::move(ids), std::move(lots), std::move(*ranking), rho);
}

AreuParams random_areu_params(std::mt19937_64& rng, std::size_t n, bool equal) {
    auto prizes = prize_set({Rational(0), Rational(10), Rational(20)});
    std::vector<Lottery> grid;
    for (long b = 0; b <= 4; ++b)
        for (long w = 0; w + b <= 4; ++w) grid.push_back(lottery(prizes, {frac(w, 4), frac(4 - b - w, 4), frac(b, 4)}));
    if (n > grid.size()) throw Error("BadParams", "at most 15 lotteries fit the quarter grid");
    std::shuffle(grid.begin(), grid.end(), rng);
    grid.resize(n);
    std::vector<std::vector<char>> above(n, std::vector<char>(n, 0));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            if (x != y && (mps(grid[x], grid[y]) || extreme_spread(grid[x], grid[y], true))) above[y][x] = 1;
    std::vector<std::size_t> priority(n);
    for (std::size_t i = 0; i < n; ++i) priority[i] = i;
    std::shuffle(priority.begin(), priority.end(), rng);
    auto ranking = linear_extension(above, priority);
    if (!ranking) throw Error("CyclicOrder", "risk relations form a cycle");
    std::uniform_int_distribution<long> level(1, 15);
    std::vector<Rational> rho(n);
    if (equal) {
        std::fill(rho.begin(), rho.end(), frac(level(rng), 16));
    } else {
        for (auto& r : rho) r = frac(level(rng), 16);
        std::sort(rho.begin(), rho.end(), std::greater<>());
    }
    return with_rhos(prizes, letter_ids(n), std::move(grid), std::move(*ranking), rho);
}

}  // namespace ordref
