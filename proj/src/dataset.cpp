#include "ordref/dataset.hpp"

#include <algorithm>
#include <set>

namespace ordref {

std::string to_string(PayloadKind k) {
    switch (k) {
        case PayloadKind::Generic: return "generic";
        case PayloadKind::Lottery: return "lottery";
        case PayloadKind::DatedPayment: return "dated_payment";
        case PayloadKind::IncomeSplit: return "income_split";
    }
    return "generic";
}

PayloadKind parse_kind(const std::string& s) {
    if (s == "generic") return PayloadKind::Generic;
    if (s == "lottery") return PayloadKind::Lottery;
    if (s == "dated_payment") return PayloadKind::DatedPayment;
    if (s == "income_split") return PayloadKind::IncomeSplit;
    throw Error("UnknownKind", "unknown dataset kind '" + s + "'");
}

VectorQ PrizeSet::values() const {
    VectorQ v(static_cast<Eigen::Index>(prizes.size()));
    for (std::size_t i = 0; i < prizes.size(); ++i) v(static_cast<Eigen::Index>(i)) = prizes[i];
    return v;
}

std::optional<std::size_t> PrizeSet::index_of(const Rational& x) const {
    auto it = std::lower_bound(prizes.begin(), prizes.end(), x);
    if (it == prizes.end() || *it != x) return std::nullopt;
    return static_cast<std::size_t>(it - prizes.begin());
}

Lottery Lottery::make(std::shared_ptr<const PrizeSet> prizes, VectorQ p) {
    if (!prizes || static_cast<std::size_t>(p.size()) != prizes->size())
        throw Error("BadLottery", "probability vector does not match the prize set");
    Rational total = 0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (p(i) < 0) throw Error("BadLottery", "negative probability");
        total += p(i);
    }
    if (total != 1) throw Error("BadLottery", "probabilities sum to " + to_string(total) + ", not 1");
    return Lottery{std::move(prizes), std::move(p)};
}

bool Lottery::operator==(const Lottery& o) const {
    return *prizes == *o.prizes && p == o.p;
}

bool subset_of(const Menu& a, const Menu& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool contains(const Menu& m, std::size_t x) {
    return std::binary_search(m.begin(), m.end(), x);
}

Menu intersect(const Menu& a, const Menu& b) {
    Menu out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

Menu unite(const Menu& a, const Menu& b) {
    Menu out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

Menu remove(const Menu& m, std::size_t x) {
    Menu out;
    for (auto y : m)
        if (y != x) out.push_back(y);
    return out;
}

std::vector<Menu> subsets(const Menu& m, std::size_t min_size) {
    std::vector<Menu> out;
    const std::size_t n = m.size();
    if (n > 20) throw Error("MenuTooLarge", "subset enumeration capped at 20 members");
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        Menu s;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) s.push_back(m[i]);
        if (s.size() >= min_size) out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

PayloadKind kind_of(const Payload& p) {
    switch (p.index()) {
        case 1: return PayloadKind::Lottery;
        case 2: return PayloadKind::DatedPayment;
        case 3: return PayloadKind::IncomeSplit;
        default: return PayloadKind::Generic;
    }
}

}  // namespace

ChoiceDataset ChoiceDataset::build(PayloadKind kind, std::vector<Alternative> alternatives,
                                   const std::vector<RawObservation>& observations,
                                   std::optional<Rational> floor) {
    ChoiceDataset ds;
    ds.kind_ = kind;

    std::sort(alternatives.begin(), alternatives.end(),
              [](const Alternative& a, const Alternative& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < alternatives.size(); ++i)
        if (alternatives[i].id == alternatives[i - 1].id)
            throw Error("DuplicateAlternative", "alternative '" + alternatives[i].id + "' listed twice");
    for (const auto& a : alternatives)
        if (kind_of(a.payload) != kind)
            throw Error("MixedPayloadKinds", "alternative '" + a.id + "' has a payload of kind " +
                                                 to_string(kind_of(a.payload)) + " in a " +
                                                 to_string(kind) + " dataset");

    if (kind == PayloadKind::Lottery) {
        for (const auto& a : alternatives) {
            const auto& l = std::get<Lottery>(a.payload);
            if (!ds.prizes_) ds.prizes_ = l.prizes;
            else if (!(*ds.prizes_ == *l.prizes))
                throw Error("PrizeSetMismatch", "lottery '" + a.id + "' uses a different prize set");
        }
        if (ds.prizes_ && ds.prizes_->size() < 2)
            throw Error("BadPrizeSet", "a prize set needs at least two prizes");
    }
    if (kind == PayloadKind::DatedPayment) {
        for (const auto& a : alternatives) {
            const auto& d = std::get<DatedPayment>(a.payload);
            if (d.amount <= 0) throw Error("BadPayload", "payment '" + a.id + "' has a non-positive amount");
            if (d.time < 0) throw Error("BadPayload", "payment '" + a.id + "' has a negative time");
        }
    }
    if (kind == PayloadKind::IncomeSplit) {
        if (!floor) {
            Rational w = 0;
            bool first = true;
            for (const auto& a : alternatives) {
                const auto& s = std::get<IncomeSplit>(a.payload);
                Rational m = s.own < s.other ? s.own : s.other;
                if (first || m < w) w = m;
                first = false;
            }
            floor = w;
        }
        if (*floor <= 0) throw Error("BadPayload", "income floor must be positive");
        for (const auto& a : alternatives) {
            const auto& s = std::get<IncomeSplit>(a.payload);
            if (s.own < *floor || s.other < *floor)
                throw Error("BadPayload", "split '" + a.id + "' lies below the floor");
        }
        ds.floor_ = floor;
    }

    ds.universe_ = std::move(alternatives);

    for (const auto& raw : observations) {
        Observation o;
        o.menu = ds.menu_of(raw.menu);
        if (o.menu.size() != raw.menu.size())
            throw Error("DuplicateMember", "menu lists an alternative twice");
        if (o.menu.empty()) throw Error("EmptyMenu", "menu is empty");
        o.choice = ds.menu_of(raw.choice);
        if (o.choice.size() != raw.choice.size())
            throw Error("DuplicateMember", "choice lists an alternative twice");
        if (o.choice.empty())
            throw Error("EmptyChoice", "empty choice from menu " + ds.menu_label(o.menu));
        if (!subset_of(o.choice, o.menu))
            throw Error("ChoiceOutsideMenu", "choice " + ds.menu_label(o.choice) +
                                                 " is not contained in menu " + ds.menu_label(o.menu));
        ds.obs_.push_back(std::move(o));
    }
    std::sort(ds.obs_.begin(), ds.obs_.end(),
              [](const Observation& a, const Observation& b) { return a.menu < b.menu; });
    for (std::size_t i = 1; i < ds.obs_.size(); ++i)
        if (ds.obs_[i].menu == ds.obs_[i - 1].menu)
            throw Error("DuplicateMenu", "menu " + ds.menu_label(ds.obs_[i].menu) + " observed twice");
    ds.index();
    return ds;
}

void ChoiceDataset::index() {
    lookup_.clear();
    for (std::size_t i = 0; i < obs_.size(); ++i) lookup_.emplace(obs_[i].menu, i);
}

std::size_t ChoiceDataset::index_of(const std::string& id) const {
    auto it = std::lower_bound(universe_.begin(), universe_.end(), id,
                               [](const Alternative& a, const std::string& s) { return a.id < s; });
    if (it == universe_.end() || it->id != id)
        throw Error("UnknownAlternative", "unknown alternative '" + id + "'");
    return static_cast<std::size_t>(it - universe_.begin());
}

std::vector<std::string> ChoiceDataset::ids(const Menu& m) const {
    std::vector<std::string> out;
    out.reserve(m.size());
    for (auto i : m) out.push_back(universe_[i].id);
    return out;
}

Menu ChoiceDataset::menu_of(const std::vector<std::string>& ids) const {
    Menu m;
    for (const auto& s : ids) m.push_back(index_of(s));
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
    return m;
}

std::optional<std::size_t> ChoiceDataset::find(const Menu& m) const {
    auto it = lookup_.find(m);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
}

Family ChoiceDataset::all() const {
    Family f(obs_.size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = i;
    return f;
}

std::string ChoiceDataset::menu_label(const Menu& m) const {
    std::string s = "{";
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) s += ",";
        s += universe_[m[i]].id;
    }
    return s + "}";
}

const Lottery& ChoiceDataset::lottery(std::size_t i) const {
    if (kind_ != PayloadKind::Lottery) throw Error("WrongKind", "dataset does not hold lotteries");
    return std::get<Lottery>(universe_[i].payload);
}

const DatedPayment& ChoiceDataset::payment(std::size_t i) const {
    if (kind_ != PayloadKind::DatedPayment) throw Error("WrongKind", "dataset does not hold dated payments");
    return std::get<DatedPayment>(universe_[i].payload);
}

const IncomeSplit& ChoiceDataset::split(std::size_t i) const {
    if (kind_ != PayloadKind::IncomeSplit) throw Error("WrongKind", "dataset does not hold income splits");
    return std::get<IncomeSplit>(universe_[i].payload);
}

ChoiceDataset ChoiceDataset::restrict(const Family& family) const {
    ChoiceDataset out;
    out.kind_ = kind_;
    out.universe_ = universe_;
    out.prizes_ = prizes_;
    out.floor_ = floor_;
    out.cache_ = cache_;
    std::set<std::size_t> keep(family.begin(), family.end());
    for (auto i : keep) {
        if (i >= obs_.size()) throw Error("UnobservedMenu", "family refers to an unobserved menu");
        out.obs_.push_back(obs_[i]);
    }
    out.index();
    return out;
}

ChoiceDataset ChoiceDataset::with_observations(const std::vector<Observation>& obs) const {
    std::vector<RawObservation> raw;
    raw.reserve(obs.size());
    for (const auto& o : obs) raw.push_back({ids(o.menu), ids(o.choice)});
    ChoiceDataset out = build(kind_, universe_, raw, floor_);
    out.cache_ = cache_;
    return out;
}

}  // namespace ordref
