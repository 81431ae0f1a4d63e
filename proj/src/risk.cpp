#include "ordref/risk.hpp"

#include <algorithm>
#include <map>

namespace ordref {

namespace {

void same_prizes(const Lottery& p, const Lottery& q) {
    if (!p.prizes || !q.prizes || !(*p.prizes == *q.prizes))
        throw Error("PrizeSetMismatch", "lotteries are defined over different prize sets");
}

Eigen::Index last(const Lottery& p) { return p.p.size() - 1; }

}  // namespace

std::shared_ptr<const PrizeSet> prize_set(const std::vector<Rational>& prizes) {
    if (prizes.size() < 2) throw Error("BadPrizeSet", "a prize set needs at least two prizes");
    for (std::size_t i = 1; i < prizes.size(); ++i)
        if (!(prizes[i - 1] < prizes[i])) throw Error("BadPrizeSet", "prizes must be strictly increasing");
    return std::make_shared<const PrizeSet>(PrizeSet{prizes});
}

Lottery lottery(std::shared_ptr<const PrizeSet> prizes, const std::vector<Rational>& probs) {
    VectorQ v(static_cast<Eigen::Index>(probs.size()));
    for (std::size_t i = 0; i < probs.size(); ++i) v(static_cast<Eigen::Index>(i)) = probs[i];
    return Lottery::make(std::move(prizes), std::move(v));
}

bool fosd(const Lottery& p, const Lottery& q) {
    same_prizes(p, q);
    if (p.p == q.p) return false;
    Rational fp, fq;
    for (Eigen::Index i = 0; i < p.p.size(); ++i) {
        fp += p.p(i);
        fq += q.p(i);
        if (fp > fq) return false;
    }
    return true;
}

Rational mean(const Lottery& p) {
    Rational m;
    for (Eigen::Index i = 0; i < p.p.size(); ++i) m += p.p(i) * p.prizes->prizes[static_cast<std::size_t>(i)];
    return m;
}

bool mps(const Lottery& p, const Lottery& q) {
    same_prizes(p, q);
    if (p.p == q.p || mean(p) != mean(q)) return false;
    const auto& x = p.prizes->prizes;
    Rational fp, fq, area;
    for (Eigen::Index i = 0; i + 1 < p.p.size(); ++i) {
        fp += p.p(i);
        fq += q.p(i);
        area += (fp - fq) * (x[static_cast<std::size_t>(i) + 1] - x[static_cast<std::size_t>(i)]);
        if (area < 0) return false;
    }
    return true;
}

bool extreme_spread(const Lottery& p, const Lottery& q, bool closed) {
    same_prizes(p, q);
    if (p.p == q.p) return false;
    const Eigen::Index b = last(p);
    std::optional<Rational> beta;
    for (Eigen::Index i = 1; i < b; ++i)
        if (q.p(i) != 0) {
            beta = p.p(i) / q.p(i);
            break;
        }
    if (!beta) beta = Rational(0);
    if (*beta >= 1) return false;
    for (Eigen::Index i = 1; i < b; ++i)
        if (p.p(i) != *beta * q.p(i)) return false;
    const Rational alpha = (p.p(b) - *beta * q.p(b)) / (1 - *beta);
    const Rational lo = q.p(b), hi = 1 - q.p(0);
    return closed ? (lo <= alpha && alpha <= hi) : (lo < alpha && alpha < hi);
}

std::optional<Rational> common_mixture(const Lottery& p, const Lottery& q, const Lottery& p2, const Lottery& q2) {
    same_prizes(p, q);
    same_prizes(p, p2);
    same_prizes(p, q2);
    const VectorQ d = p.p - q.p, d2 = p2.p - q2.p;
    Eigen::Index k = -1;
    for (Eigen::Index i = 0; i < d.size() && k < 0; ++i)
        if (d(i) != 0) k = i;
    if (k < 0) return std::nullopt;
    const Rational a = d2(k) / d(k);
    if (a <= 0 || a >= 1) return std::nullopt;
    for (Eigen::Index i = 0; i < d.size(); ++i)
        if (d2(i) != a * d(i)) return std::nullopt;
    // s = (p2 - a p) / (1 - a) must be a lottery
    for (Eigen::Index i = 0; i < d.size(); ++i)
        if (p2.p(i) - a * p.p(i) < 0) return std::nullopt;
    return a;
}

const std::vector<std::vector<char>>& riskier_relation(const ChoiceDataset& ds) {
    using Rel = std::vector<std::vector<char>>;
    return *ds.cached<Rel>("riskier", [&] {
        const std::size_t n = ds.universe().size();
        Rel r(n, std::vector<char>(n, 0));
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                if (x != y) {
                    const Lottery &px = ds.lottery(x), &py = ds.lottery(y);
                    r[x][y] = mps(px, py) || extreme_spread(px, py);
                }
        return r;
    });
}

Menu least_risky(const ChoiceDataset& ds, const Menu& m) {
    const auto& r = riskier_relation(ds);
    Menu out;
    for (auto x : m)
        if (std::none_of(m.begin(), m.end(), [&](std::size_t y) { return r[x][y]; })) out.push_back(x);
    if (out.empty() && !m.empty())
        throw Error("EmptyPsi", "every lottery of " + ds.menu_label(m) + " is riskier than another");
    return out;
}

PsiMap psi_least_risky() {
    return {"least-risky", [](const ChoiceDataset& ds, const Menu& m) { return least_risky(ds, m); }};
}

const std::vector<MixtureQuad>& mixture_quads(const ChoiceDataset& ds) {
    return *ds.cached<std::vector<MixtureQuad>>("mixtures", [&] {
        std::vector<MixtureQuad> out;
        const std::size_t n = ds.universe().size();
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q) {
                if (p == q) continue;
                for (std::size_t p2 = 0; p2 < n; ++p2)
                    for (std::size_t q2 = 0; q2 < n; ++q2) {
                        if (auto a = common_mixture(ds.lottery(p), ds.lottery(q), ds.lottery(p2), ds.lottery(q2)))
                            out.push_back({p, q, p2, q2, *a});
                    }
            }
        return out;
    });
}

Witnesses independence_over(const ChoiceDataset& ds, const Family& family, bool first_only) {
    Witnesses out;
    const auto& quads = mixture_quads(ds);
    if (quads.empty()) return out;
    const std::size_t n = ds.universe().size();
    std::vector<std::vector<Family>> with(n, std::vector<Family>(n));
    for (auto i : family) {
        const Menu& m = ds.menu(i);
        for (auto x : m)
            for (auto y : m)
                if (x != y) with[x][y].push_back(i);
    }
    auto report = [&](std::size_t a, std::size_t b, const MixtureQuad& mq, bool first_clause) {
        std::vector<Menu> menus{ds.menu(a)};
        if (b != a) menus.push_back(ds.menu(b));
        const std::size_t p = first_clause ? mq.p : mq.p2, q = first_clause ? mq.q : mq.q2;
        const std::size_t p2 = first_clause ? mq.p2 : mq.p, q2 = first_clause ? mq.q2 : mq.q;
        out.push_back({std::move(menus), "Independence",
                       std::string(first_clause ? "clause 1" : "clause 2") + " (alpha " + to_string(mq.alpha) +
                           "): " + ds.id(p) + " chosen over " + ds.id(q) + " in " + ds.menu_label(ds.menu(a)) +
                           ", " + ds.id(q2) + " chosen but " + ds.id(p2) + " rejected in " +
                           ds.menu_label(ds.menu(b))});
    };
    for (const auto& mq : quads) {
        // clause 1: p in c(A), q in A, q2 in c(B), p2 in B => p2 in c(B)
        for (auto a : with[mq.p][mq.q]) {
            if (!ds.chosen(a, mq.p)) continue;
            for (auto b : with[mq.p2][mq.q2])
                if (ds.chosen(b, mq.q2) && !ds.chosen(b, mq.p2)) {
                    report(a, b, mq, true);
                    if (first_only) return out;
                }
        }
        // clause 2: p2 in c(A), q2 in A, q in c(B), p in B => p in c(B)
        for (auto a : with[mq.p2][mq.q2]) {
            if (!ds.chosen(a, mq.p2)) continue;
            for (auto b : with[mq.p][mq.q])
                if (ds.chosen(b, mq.q) && !ds.chosen(b, mq.p)) {
                    report(a, b, mq, false);
                    if (first_only) return out;
                }
        }
    }
    return out;
}

FiniteProperty independence() {
    return FiniteProperty("Independence", [](const ChoiceDataset& ds, const Family& f, bool first_only) {
        return independence_over(ds, f, first_only);
    });
}

FiniteProperty warp_and_independence() { return conjunction("WARP+Independence", {warp(), independence()}); }

RdResult check_risk_reference_dependence(const ChoiceDataset& ds) {
    return check_reference_dependence(ds, warp_and_independence(), psi_least_risky());
}

namespace {

// Index of the single positive coordinate of x - y, if there is exactly one.
std::optional<Eigen::Index> single_gain(const VectorQ& d) {
    std::optional<Eigen::Index> pos;
    for (Eigen::Index i = 0; i < d.size(); ++i)
        if (d(i) > 0) {
            if (pos) return std::nullopt;
            pos = i;
        }
    return pos;
}

}  // namespace

Witnesses check_avoidable_risk(const ChoiceDataset& ds) {
    Witnesses out;
    for (std::size_t bi = 0; bi < ds.size(); ++bi) {
        const Menu& bm = ds.menu(bi);
        for (std::size_t ai = 0; ai < ds.size(); ++ai) {
            const Menu& am = ds.menu(ai);
            if (ai == bi || !subset_of(bm, am)) continue;
            // x = d^a r chosen over y = p^a r in B; y2 = p^b q chosen, x2 = d^b q rejected in A
            for (auto x : ds.choice(bi))
                for (auto y : bm) {
                    if (y == x) continue;
                    const VectorQ d = ds.lottery(x).p - ds.lottery(y).p;
                    auto z = single_gain(d);
                    if (!z) continue;
                    for (auto y2 : ds.choice(ai))
                        for (auto x2 : am) {
                            if (x2 == y2 || ds.chosen(ai, x2)) continue;
                            const VectorQ d2 = ds.lottery(x2).p - ds.lottery(y2).p;
                            const Rational lambda = d2(*z) / d(*z);
                            if (lambda <= 0 || d2 != lambda * d) continue;
                            out.push_back({{bm, am}, "AvoidableRisk",
                                           ds.id(x) + " chosen over its riskier counterpart " + ds.id(y) + " in " +
                                               ds.menu_label(bm) + ", yet " + ds.id(y2) + " chosen and " +
                                               ds.id(x2) + " rejected in " + ds.menu_label(am)});
                        }
                }
        }
    }
    sort_witnesses(out);
    return out;
}

Witnesses check_fosd(const ChoiceDataset& ds) {
    Witnesses out;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const Menu& m = ds.menu(i);
        for (auto q : ds.choice(i))
            for (auto p : m)
                if (p != q && fosd(ds.lottery(p), ds.lottery(q)))
                    out.push_back({{m}, "FOSD",
                                   ds.id(q) + " is chosen in " + ds.menu_label(m) + " although " + ds.id(p) +
                                       " dominates it"});
    }
    sort_witnesses(out);
    return out;
}

VectorQ rho_vector(const VectorQ& u) {
    for (Eigen::Index i = 1; i < u.size(); ++i)
        if (!(u(i - 1) < u(i))) throw Error("NotIncreasing", "utility must be strictly increasing in prizes");
    const Eigen::Index k = u.size() < 2 ? 0 : u.size() - 2;
    VectorQ r(k);
    for (Eigen::Index i = 0; i < k; ++i) r(i) = (u(i + 1) - u(i)) / (u(i + 2) - u(i));
    return r;
}

std::string to_string(Concavity c) {
    switch (c) {
        case Concavity::MoreConcave: return "MoreConcave";
        case Concavity::LessConcave: return "LessConcave";
        case Concavity::Equal: return "Equal";
        case Concavity::Incomparable: return "Incomparable";
    }
    return "?";
}

Concavity concavity_compare(const VectorQ& u1, const VectorQ& u2) {
    if (u1.size() != u2.size()) throw Error("PrizeSetMismatch", "utility vectors have different lengths");
    const VectorQ r1 = rho_vector(u1), r2 = rho_vector(u2);
    bool ge = true, le = true;
    for (Eigen::Index i = 0; i < r1.size(); ++i) {
        ge = ge && r1(i) >= r2(i);
        le = le && r1(i) <= r2(i);
    }
    if (ge && le) return Concavity::Equal;
    if (ge) return Concavity::MoreConcave;
    if (le) return Concavity::LessConcave;
    return Concavity::Incomparable;
}

namespace {

using PairIndex = std::map<std::pair<std::size_t, std::size_t>, std::size_t>;

PairIndex doubletons(const ChoiceDataset& ds, const Family& family) {
    PairIndex out;
    for (auto i : family) {
        const Menu& m = ds.menu(i);
        if (m.size() == 2) out[{m[0], m[1]}] = i;
    }
    return out;
}

std::optional<std::size_t> pair_obs(const PairIndex& idx, std::size_t x, std::size_t y) {
    auto it = idx.find({std::min(x, y), std::max(x, y)});
    if (it == idx.end()) return std::nullopt;
    return it->second;
}

}  // namespace

Witnesses betweenness_over(const ChoiceDataset& ds, const Family& family) {
    Witnesses out;
    const PairIndex idx = doubletons(ds, family);
    const std::size_t n = ds.universe().size();
    for (const auto& [pq, i] : idx) {
        const auto [p, q] = pq;
        const VectorQ d = ds.lottery(p).p - ds.lottery(q).p;
        for (std::size_t m = 0; m < n; ++m) {
            if (m == p || m == q) continue;
            // m = p^a q
            const VectorQ e = ds.lottery(m).p - ds.lottery(q).p;
            Eigen::Index k = 0;
            while (d(k) == 0) ++k;
            const Rational a = e(k) / d(k);
            if (a <= 0 || a >= 1 || e != a * d) continue;
            auto pm = pair_obs(idx, p, m), mq = pair_obs(idx, m, q);
            if (!pm || !mq) continue;
            const Menu& c = ds.choice(i);
            std::string broken;
            if (c.size() == 2) {
                if (ds.choice(*pm).size() != 2 || ds.choice(*mq).size() != 2) broken = "clause 2";
            } else {
                // the winner must beat the mixture, and the mixture must beat the loser
                const std::size_t win = c.front();
                const Menu want_wm{win}, want_ml{m};
                const std::size_t wm = win == p ? *pm : *mq, ml = win == p ? *mq : *pm;
                if (ds.choice(wm) != want_wm || ds.choice(ml) != want_ml) broken = "clause 1";
            }
            if (broken.empty()) continue;
            out.push_back({{ds.menu(i), ds.menu(*pm), ds.menu(*mq)}, "Betweenness",
                           broken + ": mixture " + ds.id(m) + " of " + ds.id(p) + " and " + ds.id(q) +
                               " (weight " + to_string(a) + ") is not ranked between them"});
        }
    }
    sort_witnesses(out);
    return out;
}

Witnesses transitivity_over(const ChoiceDataset& ds, const Family& family) {
    Witnesses out;
    const PairIndex idx = doubletons(ds, family);
    for (const auto& [pq, i] : idx)
        for (auto p : ds.choice(i)) {
            const std::size_t q = p == pq.first ? pq.second : pq.first;
            for (const auto& [qs, j] : idx) {
                if (qs.first != q && qs.second != q) continue;
                if (!ds.chosen(j, q)) continue;
                const std::size_t s = qs.first == q ? qs.second : qs.first;
                if (s == p) continue;
                auto k = pair_obs(idx, p, s);
                if (!k || ds.chosen(*k, p)) continue;
                out.push_back({{ds.menu(i), ds.menu(j), ds.menu(*k)}, "Transitivity",
                               ds.id(p) + " weakly beats " + ds.id(q) + ", " + ds.id(q) + " weakly beats " +
                                   ds.id(s) + ", but " + ds.id(p) + " is not chosen from " +
                                   ds.menu_label(ds.menu(*k))});
            }
        }
    sort_witnesses(out);
    return out;
}

RiskLinkage linkage_report_risk(const ChoiceDataset& ds) {
    return {warp().passes(ds, ds.all()), independence().passes(ds, ds.all())};
}

}  // namespace ordref
