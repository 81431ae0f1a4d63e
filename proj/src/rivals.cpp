#include "ordref/rivals.hpp"

#include <algorithm>
#include <map>

namespace ordref {

namespace {

Menu undominated(const Relation2& r, const Menu& menu) {
    Menu out;
    for (auto x : menu)
        if (std::none_of(menu.begin(), menu.end(), [&](std::size_t y) { return r[y][x]; })) out.push_back(x);
    return out;
}

// Sets the pair (x,y) of a strict relation: 0 unrelated, 1 x over y, 2 y over x.
void set_pair(Relation2& r, std::size_t x, std::size_t y, int state) {
    r[x][y] = state == 1;
    r[y][x] = state == 2;
}

// Depth-first search over per-pair states. Pairs are ordered by their larger
// member, so every subset of the universe is settled as soon as its last pair is.
template <typename Cert>
bool pair_search(std::size_t n, const std::map<Menu, Menu>& observed, int states, Cert& cert,
                 const std::function<void(Cert&, std::size_t, std::size_t, int)>& assign,
                 const std::function<Menu(const Cert&, const Menu&)>& choose, bool single_valued) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t y = 1; y < n; ++y)
        for (std::size_t x = 0; x < y; ++x) pairs.push_back({x, y});
    std::vector<std::vector<Menu>> settled(pairs.size());
    Menu all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    for (const auto& s : subsets(all, 2)) {
        std::size_t y = s.back(), x = s[s.size() - 2];
        settled[y * (y - 1) / 2 + x].push_back(s);
    }
    auto ok = [&](std::size_t d) {
        for (const auto& s : settled[d]) {
            Menu c = choose(cert, s);
            if (c.empty() || (single_valued && c.size() != 1)) return false;
            if (auto it = observed.find(s); it != observed.end() && it->second != c) return false;
        }
        return true;
    };
    std::function<bool(std::size_t)> go = [&](std::size_t d) {
        if (d == pairs.size()) return true;
        for (int st = 0; st < states; ++st) {
            assign(cert, pairs[d].first, pairs[d].second, st);
            if (ok(d) && go(d + 1)) return true;
        }
        assign(cert, pairs[d].first, pairs[d].second, 0);
        return false;
    };
    return go(0);
}

std::map<Menu, Menu> observed_map(const ChoiceDataset& ds, bool single_valued) {
    if (ds.universe().size() > kRivalUniverseLimit)
        throw Error("UniverseTooLarge", "rival-model enumeration is capped at " +
                                            std::to_string(kRivalUniverseLimit) + " alternatives");
    std::map<Menu, Menu> out;
    for (const auto& o : ds.observations()) {
        if (single_valued && o.choice.size() != 1)
            throw Error("MultiValuedChoice", "menu " + ds.menu_label(o.menu) + " has several chosen alternatives");
        out.emplace(o.menu, o.choice);
    }
    return out;
}

}  // namespace

Menu rsm_choice(const RsmCertificate& cert, const Menu& menu) {
    return undominated(cert.p2, undominated(cert.p1, menu));
}

Menu pe_choice(const PeCertificate& cert, const Menu& menu) {
    return undominated(cert.better, menu);
}

std::optional<RsmCertificate> rsm_rationalizable(const ChoiceDataset& ds) {
    auto observed = observed_map(ds, true);
    const std::size_t n = ds.universe().size();
    for (const auto& [m, c] : observed)
        if (m.size() == 1 && c != m) return std::nullopt;
    RsmCertificate cert{Relation2(n, std::vector<char>(n, 0)), Relation2(n, std::vector<char>(n, 0))};
    std::function<void(RsmCertificate&, std::size_t, std::size_t, int)> assign =
        [](RsmCertificate& c, std::size_t x, std::size_t y, int st) {
            set_pair(c.p1, x, y, st / 3);
            set_pair(c.p2, x, y, st % 3);
        };
    std::function<Menu(const RsmCertificate&, const Menu&)> choose = rsm_choice;
    if (!pair_search(n, observed, 9, cert, assign, choose, true)) return std::nullopt;
    return cert;
}

std::optional<PeCertificate> pe_rationalizable(const ChoiceDataset& ds) {
    auto observed = observed_map(ds, false);
    const std::size_t n = ds.universe().size();
    for (const auto& [m, c] : observed)
        if (m.size() == 1 && c != m) return std::nullopt;
    PeCertificate cert{Relation2(n, std::vector<char>(n, 0))};
    std::function<void(PeCertificate&, std::size_t, std::size_t, int)> assign =
        [](PeCertificate& c, std::size_t x, std::size_t y, int st) { set_pair(c.better, x, y, st); };
    std::function<Menu(const PeCertificate&, const Menu&)> choose = pe_choice;
    if (!pair_search(n, observed, 3, cert, assign, choose, false)) return std::nullopt;
    return cert;
}

ChoiceDataset dataset_from_rows(const std::vector<std::string>& rows) {
    std::vector<std::string> ids;
    std::vector<RawObservation> raw;
    for (const auto& row : rows) {
        auto colon = row.find(':');
        if (colon == std::string::npos) throw Error("BadFixture", "row '" + row + "' lacks a ':'");
        RawObservation o;
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i == colon) continue;
            std::string id(1, row[i]);
            (i < colon ? o.menu : o.choice).push_back(id);
            if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
        }
        raw.push_back(std::move(o));
    }
    std::vector<Alternative> alts;
    for (const auto& id : ids) alts.push_back({id, std::monostate{}});
    return ChoiceDataset::build(PayloadKind::Generic, std::move(alts), raw);
}

namespace {

struct FixtureSpec {
    std::string name;
    std::string description;
    std::vector<std::string> rows;
    std::vector<std::vector<std::string>> parts;
    std::optional<bool> ordu, remark1, rsm, pe;
    std::string cla_note;
};

const std::vector<FixtureSpec>& specs() {
    static const std::vector<FixtureSpec> all = {
        {"binary_cycle",
         "intransitive binary choice",
         {"ab:a", "bc:b", "ac:c"},
         {},
         true, std::nullopt, std::nullopt, false, ""},
        {"cla_small",
         "four-menu pattern with limited-attention flavor",
         {"abc:b", "ab:a", "bc:c", "ac:a"},
         {{"ab", "bc"}},
         false, false, std::nullopt, std::nullopt, "CLA accommodates this pattern (stated in prose)"},
        {"compliance_2_1",
         "WARP fails globally but every menu has a candidate reference",
         {"abcd:b", "abc:b", "abd:b", "acd:d", "bcd:bc", "ab:b", "ac:a", "ad:d", "bc:b", "bd:b", "cd:c"},
         {},
         true, std::nullopt, std::nullopt, std::nullopt, ""},
        {"ok2015_decoy",
         "decoy-driven choices from an endogenous-reference model",
         {"abcd:a", "abc:a", "abd:b", "acd:c", "bcd:b", "ab:a", "ac:a", "ad:a", "bc:b", "bd:b", "cd:c"},
         {{"abd", "acd"}},
         false, false, std::nullopt, std::nullopt, ""},
        {"ordu_not_cla",
         "ORDU with indifference that a weak-ranking attention model cannot fit",
         {"abcd:ab", "abc:bc", "abd:ab", "acd:a", "bcd:b", "ab:b", "ac:c", "ad:a", "bc:b", "bd:b", "cd:c"},
         {},
         true, std::nullopt, std::nullopt, std::nullopt,
         "not CLA with indifference (stated in prose; the argument is cut off)"},
        {"ordu_not_rsm",
         "an alternative shortlisted in a small and a large menu but not in between",
         {"abcd:a", "abc:b", "abd:a", "acd:a", "bcd:b", "ab:a", "ac:a", "ad:a", "bc:b", "bd:b", "cd:c"},
         {},
         true, std::nullopt, false, std::nullopt, ""},
        {"pe_table",
         "personal-equilibrium choices from an incomplete-transitivity preference",
         {"abcd:a", "abc:ab", "abd:ad", "acd:a", "bcd:c", "ab:ab", "ac:a", "ad:ad", "bc:bc", "bd:d", "cd:c"},
         {{"abc", "ad"}},
         false, false, std::nullopt, true, ""},
        {"rsm_table",
         "two-stage shortlist choices",
         {"abcd:a", "abc:a", "bcd:c", "acd:a", "abd:d", "ab:a", "ac:a", "ad:d", "bc:b", "bd:d", "cd:c"},
         {{"abd", "bcd", "bc"}},
         false, false, true, std::nullopt, ""},
        {"violation_2_1",
         "three observations that no reference can reconcile",
         {"abc:b", "ab:a", "bc:c", "ac:a"},
         {{"ab", "bc"}},
         false, false, std::nullopt, std::nullopt, ""},
    };
    return all;
}

}  // namespace

const std::vector<std::string>& fixture_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& s : specs()) out.push_back(s.name);
        return out;
    }();
    return names;
}

Fixture load_fixture(const std::string& name) {
    for (const auto& s : specs()) {
        if (s.name != name) continue;
        Fixture f{s.name, s.description, dataset_from_rows(s.rows), {}, s.ordu, s.remark1, s.rsm, s.pe, s.cla_note};
        for (const auto& parts : s.parts) {
            std::vector<Menu> ms;
            for (const auto& p : parts) {
                std::vector<std::string> ids;
                for (char c : p) ids.emplace_back(1, c);
                ms.push_back(f.data.menu_of(ids));
            }
            f.remark1_parts.push_back(std::move(ms));
        }
        return f;
    }
    throw Error("UnknownFixture", "unknown fixture '" + name + "'");
}

bool ordu_accepts(const ChoiceDataset& ds) {
    if (!check_reference_dependence(ds, warp(), psi_identity()).pass) return false;
    if (first_missing_subset(ds)) return true;
    try {
        build_ordu(ds);
        return true;
    } catch (const AxiomFailure&) {
        return false;
    }
}

SeparationRow classify_fixture(const Fixture& f) {
    SeparationRow row;
    row.name = f.name;
    row.ordu = ordu_accepts(f.data);
    row.subset_closed = !first_missing_subset(f.data);
    if (!f.remark1_parts.empty()) {
        bool all = true;
        for (const auto& parts : f.remark1_parts) all = all && remark1_necessary_condition(f.data, parts).pass;
        row.remark1 = all;
    }
    bool single = std::all_of(f.data.observations().begin(), f.data.observations().end(),
                              [](const Observation& o) { return o.choice.size() == 1; });
    if (single) row.rsm = rsm_rationalizable(f.data).has_value();
    row.pe = pe_rationalizable(f.data).has_value();
    row.cla_note = f.cla_note;

    auto expect = [&](const char* what, const std::optional<bool>& stated, const std::optional<bool>& got) {
        if (stated && (!got || *got != *stated))
            row.disagreements.push_back(std::string(what) + " expected " + (*stated ? "yes" : "no"));
    };
    expect("ORDU", f.ordu, row.ordu);
    expect("Remark1", f.remark1, row.remark1);
    expect("RSM", f.rsm, row.rsm);
    expect("PE", f.pe, row.pe);
    return row;
}

std::vector<SeparationRow> separation_suite() {
    std::vector<SeparationRow> out;
    for (const auto& name : fixture_names()) out.push_back(classify_fixture(load_fixture(name)));
    return out;
}

}  // namespace ordref
