#include "ordref/ref_engine.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

namespace ordref {

PsiMap psi_identity() {
    return {"identity", [](const ChoiceDataset&, const Menu& m) { return m; }};
}

ReferenceOrder::ReferenceOrder(std::vector<std::size_t> ranking) : ranking_(std::move(ranking)) {
    position_.assign(ranking_.size(), ranking_.size());
    for (std::size_t i = 0; i < ranking_.size(); ++i) {
        if (ranking_[i] >= ranking_.size() || position_[ranking_[i]] != ranking_.size())
            throw Error("BadOrder", "reference order is not a permutation of the universe");
        position_[ranking_[i]] = i;
    }
}

std::size_t ReferenceOrder::top(const Menu& m) const {
    if (m.empty()) throw Error("EmptyMenu", "menu is empty");
    std::size_t best = m.front();
    for (auto x : m) {
        if (x >= position_.size()) throw Error("UnknownAlternative", "menu member outside the order");
        if (position_[x] < position_[best]) best = x;
    }
    return best;
}

void check_hereditary(const ChoiceDataset& ds, const PsiMap& psi) {
    std::vector<Menu> ps;
    for (const auto& o : ds.observations()) {
        Menu p = psi(ds, o.menu);
        if (p.empty() || !subset_of(p, o.menu))
            throw Error("NonHereditaryPsi", psi.name + " returned an invalid set on " + ds.menu_label(o.menu));
        ps.push_back(std::move(p));
    }
    for (std::size_t i = 0; i < ds.size(); ++i)
        for (std::size_t j = 0; j < ds.size(); ++j) {
            if (i == j || !subset_of(ds.menu(j), ds.menu(i))) continue;
            for (auto a : intersect(ps[i], ds.menu(j)))
                if (!contains(ps[j], a))
                    throw Error("NonHereditaryPsi", psi.name + ": " + ds.id(a) + " is admissible in " +
                                                        ds.menu_label(ds.menu(i)) + " but not in " +
                                                        ds.menu_label(ds.menu(j)));
        }
}

CandidateMap candidate_references(const ChoiceDataset& ds, const FiniteProperty& T, const PsiMap& psi) {
    check_hereditary(ds, psi);
    CandidateMap out;
    const Family all = ds.all();
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const Menu& a = ds.menu(i);
        Menu p = psi(ds, a), g;
        for (auto x : p)
            if (T.passes(ds, subfamily(ds, all, a, x))) g.push_back(x);
        out.psi.push_back(std::move(p));
        out.gamma.push_back(std::move(g));
    }
    return out;
}

RdResult check_reference_dependence(const ChoiceDataset& ds, const FiniteProperty& T, const PsiMap& psi,
                                    Quantifier q) {
    RdResult r;
    r.candidates = candidate_references(ds, T, psi);
    const Family all = ds.all();
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const Menu& g = r.candidates.gamma[i];
        const Menu& p = r.candidates.psi[i];
        bool bad = q == Quantifier::Exists ? g.empty() : g.size() != p.size();
        if (!bad) continue;
        RdViolation v{i, {}};
        for (auto x : p)
            if (!contains(g, x)) v.failures.push_back({x, T(ds, subfamily(ds, all, ds.menu(i), x))});
        r.violations.push_back(std::move(v));
        r.pass = false;
    }
    return r;
}

Witnesses RdResult::witnesses(const ChoiceDataset& ds, const std::string& axiom) const {
    Witnesses out;
    for (const auto& v : violations) {
        const Menu& a = ds.menu(v.observation);
        std::vector<Menu> menus{a};
        std::string text = "no admissible reference in " + ds.menu_label(a) + ":";
        for (const auto& f : v.failures) {
            text += " " + ds.id(f.candidate) + " fails";
            if (!f.witnesses.empty()) {
                const auto& w = f.witnesses.front();
                text += " " + w.kind + " on";
                for (const auto& m : w.menus) text += " " + ds.menu_label(m);
            }
            text += ";";
            for (const auto& w : f.witnesses)
                for (const auto& m : w.menus)
                    if (std::find(menus.begin(), menus.end(), m) == menus.end()) menus.push_back(m);
        }
        text.pop_back();
        std::sort(menus.begin() + 1, menus.end());
        out.push_back({std::move(menus), axiom, std::move(text)});
    }
    sort_witnesses(out);
    return out;
}

std::vector<Family> reference_classes(const ChoiceDataset& ds, const ReferenceOrder& order) {
    std::vector<Family> out(ds.universe().size());
    for (std::size_t i = 0; i < ds.size(); ++i) out[order.top(ds.menu(i))].push_back(i);
    return out;
}

Witnesses psi_consistency_check(const ChoiceDataset& ds, const ReferenceOrder& order, const PsiMap& psi,
                                const Family& family) {
    Witnesses out;
    for (auto i : family) {
        const Menu& a = ds.menu(i);
        Menu p = psi(ds, a);
        for (auto y : a) {
            if (contains(p, y)) continue;
            bool covered = std::any_of(p.begin(), p.end(), [&](std::size_t x) { return order.above(x, y); });
            if (!covered)
                out.push_back({{a}, "PsiConsistency",
                               ds.id(y) + " is not admissible in " + ds.menu_label(a) +
                                   " yet no admissible member ranks above it"});
        }
    }
    sort_witnesses(out);
    return out;
}

Witnesses verify_reference_order(const ChoiceDataset& ds, const FiniteProperty& T, const PsiMap& psi,
                                 const ReferenceOrder& order) {
    Witnesses out = psi_consistency_check(ds, order, psi, ds.all());
    for (const auto& cls : reference_classes(ds, order))
        for (auto w : T(ds, cls)) out.push_back(std::move(w));
    sort_witnesses(out);
    return out;
}

std::optional<ReferenceOrder> layered_reference_order(const ChoiceDataset& ds, const FiniteProperty& T,
                                                      const PsiMap& psi) {
    const std::size_t n = ds.universe().size();
    std::vector<bool> placed(n, false), assigned(ds.size(), false);
    std::vector<std::size_t> ranking;
    std::size_t left = ds.size();
    while (left > 0) {
        bool found = false;
        for (std::size_t x = 0; x < n && !found; ++x) {
            if (placed[x]) continue;
            Family cls;
            bool admissible = true;
            for (std::size_t i = 0; i < ds.size() && admissible; ++i) {
                if (assigned[i] || !contains(ds.menu(i), x)) continue;
                cls.push_back(i);
                admissible = contains(psi(ds, ds.menu(i)), x);
            }
            if (cls.empty() || !admissible || !T.passes(ds, cls)) continue;
            for (auto i : cls) assigned[i] = true;
            left -= cls.size();
            placed[x] = true;
            ranking.push_back(x);
            found = true;
        }
        if (!found) return std::nullopt;
    }
    for (std::size_t x = 0; x < n; ++x)
        if (!placed[x]) ranking.push_back(x);
    return ReferenceOrder(std::move(ranking));
}

namespace {

using Mask = std::uint32_t;

constexpr std::size_t kPruningLimit = 12;

Menu menu_of_mask(Mask s, std::size_t n) {
    Menu m;
    for (std::size_t i = 0; i < n; ++i)
        if (s & (Mask(1) << i)) m.push_back(i);
    return m;
}

Mask mask_of(const Menu& m) {
    Mask s = 0;
    for (auto x : m) s |= Mask(1) << x;
    return s;
}

bool alpha_holds(const std::vector<Mask>& img, std::size_t n) {
    const Mask full = (Mask(1) << n) - 1;
    for (Mask s = 1; s <= full; ++s) {
        if (img[s] == 0) return false;
        for (Mask t = (s - 1) & s; t; t = (t - 1) & s)
            if ((img[s] & t) & ~img[t]) return false;
    }
    return true;
}

}  // namespace

ReferenceOrder synthesize_reference_order(const ChoiceDataset& ds, const FiniteProperty& T, const PsiMap& psi,
                                          SynthesisTrace* trace) {
    SynthesisTrace local;
    SynthesisTrace& tr = trace ? *trace : local;
    const std::size_t n = ds.universe().size();

    auto layered = [&](std::string reason) {
        tr.method = "layered";
        tr.fallback_reason = std::move(reason);
        auto order = layered_reference_order(ds, T, psi);
        if (!order) throw AxiomFailure("no reference order makes every reference class pass " + T.name(), {});
        return *order;
    };

    if (!check_reference_dependence(ds, T, psi).pass)
        throw AxiomFailure("reference dependence fails for " + T.name(),
                           check_reference_dependence(ds, T, psi).witnesses(ds, "ReferenceDependence"));
    if (n == 0) return ReferenceOrder(std::vector<std::size_t>{});
    if (n > kPruningLimit) return layered("universe too large for subset pruning");

    const Mask full = (Mask(1) << n) - 1;
    std::vector<Mask> obs;
    for (const auto& o : ds.observations()) obs.push_back(mask_of(o.menu));

    // start from the candidate sets of every subset of the universe
    std::vector<Mask> img(full + 1, 0);
    for (Mask s = 1; s <= full; ++s) {
        Menu sm = menu_of_mask(s, n);
        for (auto x : psi(ds, sm)) {
            Family f;
            for (std::size_t i = 0; i < obs.size(); ++i)
                if ((obs[i] & ~s) == 0 && (obs[i] >> x & 1)) f.push_back(i);
            if (T.passes(ds, f)) img[s] |= Mask(1) << x;
        }
        if (img[s] == 0) return layered("empty candidate set on unobserved subset " + ds.menu_label(sm));
    }
    if (tr.check_alpha && !alpha_holds(img, n)) tr.alpha_ok = false;

    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x + 1; y < n; ++y) {
            const Mask pair = (Mask(1) << x) | (Mask(1) << y);
            const Mask bx = Mask(1) << x, by = Mask(1) << y;
            Mask loser;
            if (img[pair] == bx) loser = by;
            else if (img[pair] == by) loser = bx;
            else {
                loser = by;
                const Mask rest = full & ~pair;
                for (Mask t = rest;; t = (t - 1) & rest) {
                    if (img[pair | t] == by) {
                        loser = bx;
                        break;
                    }
                    if (t == 0) break;
                }
            }
            const Mask rest = full & ~pair;
            for (Mask t = rest;; t = (t - 1) & rest) {
                img[pair | t] &= ~loser;
                if (t == 0) break;
            }
            if (tr.check_alpha && !alpha_holds(img, n)) tr.alpha_ok = false;
        }

    std::vector<std::size_t> wins(n, 0);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x + 1; y < n; ++y) {
            Mask w = img[(Mask(1) << x) | (Mask(1) << y)];
            if (w == (Mask(1) << x)) ++wins[x];
            else if (w == (Mask(1) << y)) ++wins[y];
            else return layered("pruning left a doubleton unresolved");
        }
    std::vector<std::size_t> ranking(n);
    std::iota(ranking.begin(), ranking.end(), 0);
    std::stable_sort(ranking.begin(), ranking.end(),
                     [&](std::size_t a, std::size_t b) { return wins[a] > wins[b]; });
    for (std::size_t i = 0; i < n; ++i)
        if (wins[ranking[i]] != n - 1 - i) return layered("pruned doubletons are not transitive");
    ReferenceOrder order(std::move(ranking));
    if (!verify_reference_order(ds, T, psi, order).empty()) return layered("pruned order failed verification");
    tr.method = "pruning";
    return order;
}

}  // namespace ordref
