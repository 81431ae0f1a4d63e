#pragma once

#include "ordref/rational.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace ordref {

// Every user-facing failure carries a stable code ("EmptyChoice", ...).
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

enum class PayloadKind { Generic, Lottery, DatedPayment, IncomeSplit };

std::string to_string(PayloadKind k);
PayloadKind parse_kind(const std::string& s);

struct PrizeSet {
    std::vector<Rational> prizes;  // strictly increasing

    std::size_t size() const { return prizes.size(); }
    const Rational& worst() const { return prizes.front(); }
    const Rational& best() const { return prizes.back(); }
    VectorQ values() const;
    std::optional<std::size_t> index_of(const Rational& x) const;
    bool operator==(const PrizeSet& o) const { return prizes == o.prizes; }
};

struct Lottery {
    std::shared_ptr<const PrizeSet> prizes;
    VectorQ p;

    // Throws BadLottery unless entries are >= 0 and sum to exactly 1.
    static Lottery make(std::shared_ptr<const PrizeSet> prizes, VectorQ p);
    bool operator==(const Lottery& o) const;
};

struct DatedPayment {
    Rational amount;
    Rational time;
    bool operator==(const DatedPayment& o) const = default;
};

struct IncomeSplit {
    Rational own;
    Rational other;
    bool operator==(const IncomeSplit& o) const = default;
};

using Payload = std::variant<std::monostate, Lottery, DatedPayment, IncomeSplit>;

struct Alternative {
    std::string id;
    Payload payload;
};

// Sorted indices into the dataset universe.
using Menu = std::vector<std::size_t>;
// Sorted observation indices.
using Family = std::vector<std::size_t>;

struct Observation {
    Menu menu;
    Menu choice;
};

struct RawObservation {
    std::vector<std::string> menu;
    std::vector<std::string> choice;
};

bool subset_of(const Menu& a, const Menu& b);
bool contains(const Menu& m, std::size_t x);
Menu intersect(const Menu& a, const Menu& b);
Menu unite(const Menu& a, const Menu& b);
Menu remove(const Menu& m, std::size_t x);

class ChoiceDataset {
public:
    ChoiceDataset() = default;

    // validate_dataset: checks every invariant and sorts universe and observations.
    static ChoiceDataset build(PayloadKind kind, std::vector<Alternative> alternatives,
                               const std::vector<RawObservation>& observations,
                               std::optional<Rational> floor = std::nullopt);

    PayloadKind kind() const { return kind_; }
    const std::vector<Alternative>& universe() const { return universe_; }
    const std::vector<Observation>& observations() const { return obs_; }
    std::size_t size() const { return obs_.size(); }
    const Observation& operator[](std::size_t i) const { return obs_[i]; }

    std::size_t index_of(const std::string& id) const;
    const std::string& id(std::size_t i) const { return universe_[i].id; }
    std::vector<std::string> ids(const Menu& m) const;
    Menu menu_of(const std::vector<std::string>& ids) const;
    std::optional<std::size_t> find(const Menu& m) const;
    const Menu& choice(std::size_t obs) const { return obs_[obs].choice; }
    const Menu& menu(std::size_t obs) const { return obs_[obs].menu; }
    bool chosen(std::size_t obs, std::size_t x) const { return contains(obs_[obs].choice, x); }

    Family all() const;
    std::string menu_label(const Menu& m) const;

    const std::shared_ptr<const PrizeSet>& prizes() const { return prizes_; }
    const std::optional<Rational>& floor() const { return floor_; }

    const Lottery& lottery(std::size_t i) const;
    const DatedPayment& payment(std::size_t i) const;
    const IncomeSplit& split(std::size_t i) const;

    // restrict(): same universe, observations limited to `family`.
    ChoiceDataset restrict(const Family& family) const;
    // Same universe, observations replaced (validated).
    ChoiceDataset with_observations(const std::vector<Observation>& obs) const;

    // Per-universe memo shared by restrictions (mixture and shift indices).
    template <typename T>
    std::shared_ptr<const T> cached(const std::string& key, const std::function<T()>& make) const {
        std::lock_guard<std::mutex> lock(cache_->mu);
        auto it = cache_->slots.find(key);
        if (it != cache_->slots.end()) return std::static_pointer_cast<const T>(it->second);
        auto v = std::make_shared<const T>(make());
        cache_->slots.emplace(key, v);
        return v;
    }

private:
    struct Cache {
        std::mutex mu;
        std::map<std::string, std::shared_ptr<const void>> slots;
    };

    void index();

    PayloadKind kind_ = PayloadKind::Generic;
    std::vector<Alternative> universe_;
    std::vector<Observation> obs_;
    std::map<Menu, std::size_t> lookup_;
    std::shared_ptr<const PrizeSet> prizes_;
    std::optional<Rational> floor_;
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

// Nonempty subsets of `m` with at least `min_size` members, sorted.
std::vector<Menu> subsets(const Menu& m, std::size_t min_size = 1);

}  // namespace ordref
