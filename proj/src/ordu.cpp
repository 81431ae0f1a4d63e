#include "ordref/ordu.hpp"

#include <algorithm>

namespace ordref {

Menu menu_from_ids(const std::vector<std::string>& universe, const std::vector<std::string>& ids) {
    Menu m;
    for (const auto& id : ids) {
        auto it = std::lower_bound(universe.begin(), universe.end(), id);
        if (it == universe.end() || *it != id) throw Error("UnknownAlternative", "unknown alternative '" + id + "'");
        m.push_back(static_cast<std::size_t>(it - universe.begin()));
    }
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
    return m;
}

std::optional<Menu> first_missing_subset(const ChoiceDataset& ds) {
    for (const auto& o : ds.observations())
        for (const auto& s : subsets(o.menu, 2))
            if (!ds.find(s)) return s;
    return std::nullopt;
}

namespace {

// a is weakly preferred to b given reference x, read from c({x,a,b}).
std::optional<bool> weakly_better(const ChoiceDataset& ds, std::size_t x, std::size_t a, std::size_t b) {
    Menu m{x, a, b};
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
    if (m.size() == 1) return true;
    auto i = ds.find(m);
    if (!i) return std::nullopt;
    return ds.chosen(*i, a);
}

}  // namespace

OrduBuild build_ordu(const ChoiceDataset& ds) {
    if (auto miss = first_missing_subset(ds))
        throw Error("NotSubsetClosed", "subset " + ds.menu_label(*miss) + " of an observed menu is not observed");
    const FiniteProperty T = warp();
    const PsiMap psi = psi_identity();
    RdResult rd = check_reference_dependence(ds, T, psi);
    if (!rd.pass) throw AxiomFailure("reference dependence fails", rd.witnesses(ds, "ReferenceDependence"));
    auto order = layered_reference_order(ds, T, psi);
    if (!order) throw AxiomFailure("no admissible reference order", {});

    const std::size_t n = ds.universe().size();
    OrduBuild out;
    out.params.ids.reserve(n);
    for (const auto& a : ds.universe()) out.params.ids.push_back(a.id);
    out.params.order = *order;
    out.params.utility = MatrixQ::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    const auto classes = reference_classes(ds, *order);

    for (std::size_t x = 0; x < n; ++x) {
        Menu pred{x};
        for (std::size_t y = 0; y < n; ++y) {
            if (y == x || !order->above(x, y)) continue;
            Menu pair{std::min(x, y), std::max(x, y)};
            if (auto i = ds.find(pair); i && ds.chosen(*i, y)) pred.push_back(y);
        }
        std::sort(pred.begin(), pred.end());

        // the proof's ranking when every needed tripleton is observed
        std::vector<long> level(n, 0);
        bool complete = true;
        for (auto a : pred) {
            for (auto b : pred) {
                auto ab = weakly_better(ds, x, a, b), ba = weakly_better(ds, x, b, a);
                if (!ab || !ba) {
                    complete = false;
                    break;
                }
                if (*ab && !*ba) ++level[a];
            }
            if (!complete) break;
        }
        long lowest = level[pred.front()];
        for (auto a : pred) lowest = std::min(lowest, level[a]);
        for (std::size_t y = 0; y < n; ++y)
            if (!contains(pred, y)) level[y] = lowest - 1;
        if (!complete || !rationalized_by(ds, classes[x], level)) {
            auto lv = revealed_levels(ds, classes[x]);
            if (!lv) throw Error("ConstructionFailed", "reference class of " + ds.id(x) + " is not rationalizable");
            level = *lv;
        }
        for (std::size_t y = 0; y < n; ++y)
            out.params.utility(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) = level[y];
        out.prediction_sets.push_back(std::move(pred));
    }

    if (auto bad = verify_ordu(out.params, ds); !bad.empty())
        throw Error("ConstructionFailed", "constructed utilities miss " + describe(ds, bad.front()));
    return out;
}

Menu evaluate_ordu(const OrduParams& params, const Menu& menu) {
    for (auto x : menu)
        if (x >= params.ids.size()) throw Error("UnknownAlternative", "menu member outside the universe");
    const auto r = static_cast<Eigen::Index>(params.order.top(menu));
    Menu best;
    Rational top;
    for (auto y : menu) {
        const Rational& u = params.utility(r, static_cast<Eigen::Index>(y));
        if (best.empty() || u > top) {
            best = {y};
            top = u;
        } else if (u == top) {
            best.push_back(y);
        }
    }
    return best;
}

ChoiceDataset simulate_ordu(const OrduParams& params, const std::vector<Menu>& menus) {
    std::vector<Alternative> alts;
    for (const auto& id : params.ids) alts.push_back({id, std::monostate{}});
    std::vector<RawObservation> raw;
    auto names = [&](const Menu& m) {
        std::vector<std::string> out;
        for (auto i : m) out.push_back(params.ids[i]);
        return out;
    };
    for (const auto& m : menus) raw.push_back({names(m), names(evaluate_ordu(params, m))});
    return ChoiceDataset::build(PayloadKind::Generic, std::move(alts), raw);
}

std::vector<Mismatch> verify_ordu(const OrduParams& params, const ChoiceDataset& ds) {
    std::vector<std::string> ids;
    for (const auto& a : ds.universe()) ids.push_back(a.id);
    if (ids != params.ids) {
        // map through ids when the dataset universe differs from the params universe
        return compare_choices(ds, [&](const Menu& m) {
            Menu mine = menu_from_ids(params.ids, ds.ids(m));
            return ds.menu_of(
                [&] {
                    std::vector<std::string> out;
                    for (auto i : evaluate_ordu(params, mine)) out.push_back(params.ids[i]);
                    return out;
                }());
        });
    }
    return compare_choices(ds, [&](const Menu& m) { return evaluate_ordu(params, m); });
}

std::vector<std::string> letter_ids(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) {
        if (n <= 26) {
            out.push_back(std::string(1, static_cast<char>('a' + i)));
        } else {
            std::string d = std::to_string(i);
            out.push_back("x" + std::string(4 - std::min<std::size_t>(4, d.size()), '0') + d);
        }
    }
    return out;
}

std::vector<Menu> all_menus(std::size_t n, std::size_t min_size) {
    Menu u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = i;
    return subsets(u, min_size);
}

OrduParams random_ordu_params(std::size_t n, std::mt19937_64& rng, int levels) {
    OrduParams p;
    p.ids = letter_ids(n);
    std::vector<std::size_t> ranking(n);
    for (std::size_t i = 0; i < n; ++i) ranking[i] = i;
    std::shuffle(ranking.begin(), ranking.end(), rng);
    p.order = ReferenceOrder(std::move(ranking));
    std::uniform_int_distribution<int> level(0, levels - 1);
    p.utility = MatrixQ::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (Eigen::Index r = 0; r < p.utility.rows(); ++r)
        for (Eigen::Index c = 0; c < p.utility.cols(); ++c) p.utility(r, c) = level(rng);
    return p;
}

bool rationalized_by(const ChoiceDataset& ds, const Family& family, const std::vector<long>& level) {
    for (auto i : family) {
        const Menu& m = ds.menu(i);
        long top = level[m.front()];
        for (auto y : m) top = std::max(top, level[y]);
        Menu best;
        for (auto y : m)
            if (level[y] == top) best.push_back(y);
        if (best != ds.choice(i)) return false;
    }
    return true;
}

Remark1Result remark1_necessary_condition(const ChoiceDataset& ds, const std::vector<Menu>& parts) {
    Menu a;
    for (const auto& p : parts) a = unite(a, p);
    auto ai = ds.find(a);
    if (!ai) throw Error("UnionUnobserved", "union " + ds.menu_label(a) + " of the parts is not observed");
    Family partfam = family_of(ds, parts);
    if (a.size() > 6) throw Error("MenuTooLarge", "weak-order enumeration is capped at 6 alternatives");

    const std::size_t k = a.size();
    Remark1Result out;
    for (auto x : a) {
        Family f{*ai};
        for (auto i : partfam)
            if (contains(ds.menu(i), x)) f.push_back(i);
        // every weak order on the union as a level assignment in [0, k)
        std::vector<std::size_t> digit(k, 0);
        std::vector<long> level(ds.universe().size(), 0);
        for (;;) {
            for (std::size_t i = 0; i < k; ++i) level[a[i]] = static_cast<long>(digit[i]);
            if (rationalized_by(ds, f, level)) {
                out.pass = true;
                out.reference = x;
                out.levels = level;
                return out;
            }
            std::size_t i = 0;
            while (i < k && ++digit[i] == k) digit[i++] = 0;
            if (i == k) break;
        }
    }
    return out;
}

}  // namespace ordref
