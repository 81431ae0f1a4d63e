#pragma once

#include "ordref/rivals.hpp"

#include <random>

namespace support {

using namespace ordref;

inline ChoiceDataset table(std::initializer_list<const char*> rows) {
    std::vector<std::string> r(rows.begin(), rows.end());
    return dataset_from_rows(r);
}

inline Menu menu(const ChoiceDataset& ds, const std::string& letters) {
    std::vector<std::string> ids;
    for (char c : letters) ids.emplace_back(1, c);
    return ds.menu_of(ids);
}

// Random generic dataset: each nonempty subset of an n-universe is observed
// with probability `keep`, with a random nonempty choice.
inline ChoiceDataset random_generic(std::size_t n, double keep, std::mt19937_64& rng) {
    std::bernoulli_distribution take(keep);
    auto ids = letter_ids(n);
    std::vector<Alternative> alts;
    for (const auto& id : ids) alts.push_back({id, std::monostate{}});
    std::vector<RawObservation> raw;
    for (const auto& m : all_menus(n)) {
        if (!take(rng)) continue;
        RawObservation o;
        for (auto x : m) o.menu.push_back(ids[x]);
        std::uniform_int_distribution<std::uint32_t> pick(1, (1u << m.size()) - 1);
        auto mask = pick(rng);
        for (std::size_t i = 0; i < m.size(); ++i)
            if (mask >> i & 1) o.choice.push_back(ids[m[i]]);
        raw.push_back(std::move(o));
    }
    return ChoiceDataset::build(PayloadKind::Generic, alts, raw);
}

// Every dataset on the given menus: choice index per menu as mixed radix.
inline std::vector<ChoiceDataset> every_dataset(std::size_t n, const std::vector<Menu>& menus, bool single_valued) {
    auto ids = letter_ids(n);
    std::vector<Alternative> alts;
    for (const auto& id : ids) alts.push_back({id, std::monostate{}});
    std::vector<std::vector<Menu>> options;
    for (const auto& m : menus) {
        std::vector<Menu> opts;
        for (const auto& s : subsets(m))
            if (!single_valued || s.size() == 1) opts.push_back(s);
        options.push_back(opts);
    }
    std::vector<ChoiceDataset> out;
    std::vector<std::size_t> digit(menus.size(), 0);
    for (;;) {
        std::vector<RawObservation> raw;
        for (std::size_t i = 0; i < menus.size(); ++i) {
            RawObservation o;
            for (auto x : menus[i]) o.menu.push_back(ids[x]);
            for (auto x : options[i][digit[i]]) o.choice.push_back(ids[x]);
            raw.push_back(std::move(o));
        }
        out.push_back(ChoiceDataset::build(PayloadKind::Generic, alts, raw));
        std::size_t i = 0;
        while (i < menus.size() && ++digit[i] == options[i].size()) digit[i++] = 0;
        if (i == menus.size()) break;
    }
    return out;
}

}  // namespace support
