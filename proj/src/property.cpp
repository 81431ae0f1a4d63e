#include "ordref/property.hpp"

#include <algorithm>

namespace ordref {

void sort_witnesses(Witnesses& w) {
    std::sort(w.begin(), w.end());
    w.erase(std::unique(w.begin(), w.end()), w.end());
}

Witnesses FiniteProperty::operator()(const ChoiceDataset& ds, const Family& family) const {
    Witnesses w = eval_(ds, family, false);
    sort_witnesses(w);
    return w;
}

bool FiniteProperty::passes(const ChoiceDataset& ds, const Family& family) const {
    return eval_(ds, family, true).empty();
}

Family family_of(const ChoiceDataset& ds, const std::vector<Menu>& menus) {
    Family f;
    for (const auto& m : menus) {
        auto i = ds.find(m);
        if (!i) throw Error("UnobservedMenu", "menu " + ds.menu_label(m) + " is not observed");
        f.push_back(*i);
    }
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
    return f;
}

Witnesses warp_over(const ChoiceDataset& ds, const Family& family, bool first_only) {
    Witnesses out;
    for (auto i : family) {
        const Menu& a = ds.menu(i);
        for (auto j : family) {
            const Menu& b = ds.menu(j);
            if (b.size() >= a.size() || !subset_of(b, a)) continue;
            Menu kept = intersect(ds.choice(i), b);
            if (kept.empty() || kept == ds.choice(j)) continue;
            out.push_back({{a, b},
                           "WARP",
                           "c" + ds.menu_label(a) + " meets " + ds.menu_label(b) + " in " +
                               ds.menu_label(kept) + " but c" + ds.menu_label(b) + " = " +
                               ds.menu_label(ds.choice(j))});
            if (first_only) return out;
        }
    }
    return out;
}

Witnesses warp_over(const ChoiceDataset& ds, const std::vector<Menu>& menus) {
    Witnesses w = warp_over(ds, family_of(ds, menus), false);
    sort_witnesses(w);
    return w;
}

FiniteProperty warp() {
    return FiniteProperty("WARP", [](const ChoiceDataset& ds, const Family& f, bool first_only) {
        return warp_over(ds, f, first_only);
    });
}

FiniteProperty conjunction(std::string name, std::vector<FiniteProperty> parts) {
    return FiniteProperty(std::move(name), [parts](const ChoiceDataset& ds, const Family& f, bool first_only) {
        Witnesses out;
        for (const auto& p : parts) {
            if (first_only) {
                if (!p.passes(ds, f)) {
                    Witnesses w = p(ds, f);
                    w.resize(1);
                    for (auto& x : w) x.kind = p.name();
                    return w;
                }
                continue;
            }
            for (auto w : p(ds, f)) {
                w.kind = p.name();
                out.push_back(std::move(w));
            }
        }
        return out;
    });
}

Family subfamily(const ChoiceDataset& ds, const Family& family, const Menu& a, std::size_t x) {
    Family f;
    for (auto i : family)
        if (contains(ds.menu(i), x) && subset_of(ds.menu(i), a)) f.push_back(i);
    return f;
}

std::optional<std::vector<long>> revealed_levels(const ChoiceDataset& ds, const Family& family) {
    const std::size_t n = ds.universe().size();
    std::vector<std::vector<char>> weak(n, std::vector<char>(n, 0)), strict(n, std::vector<char>(n, 0));
    for (std::size_t a = 0; a < n; ++a) weak[a][a] = 1;
    for (auto i : family)
        for (auto a : ds.choice(i))
            for (auto b : ds.menu(i)) {
                weak[a][b] = 1;
                if (!ds.chosen(i, b)) strict[a][b] = 1;
            }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t a = 0; a < n; ++a)
            if (weak[a][k])
                for (std::size_t b = 0; b < n; ++b)
                    if (weak[k][b]) weak[a][b] = 1;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (strict[a][b] && weak[b][a]) return std::nullopt;
    std::vector<long> level(n, 0);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (weak[a][b] && !weak[b][a]) ++level[a];
    return level;
}

std::vector<Mismatch> compare_choices(const ChoiceDataset& ds,
                                      const std::function<Menu(const Menu&)>& predict) {
    std::vector<Mismatch> out;
    for (const auto& o : ds.observations()) {
        Menu p = predict(o.menu);
        if (p != o.choice) out.push_back({o.menu, std::move(p), o.choice});
    }
    return out;
}

std::string describe(const ChoiceDataset& ds, const Mismatch& m) {
    return "menu " + ds.menu_label(m.menu) + ": predicted " + ds.menu_label(m.predicted) + ", observed " +
           ds.menu_label(m.observed);
}

}  // namespace ordref
