#pragma once

#include "ordref/dataset.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace ordref {

struct ViolationWitness {
    std::vector<Menu> menus;
    std::string kind;
    std::string narrative;
    auto operator<=>(const ViolationWitness&) const = default;
};

using Witnesses = std::vector<ViolationWitness>;

void sort_witnesses(Witnesses& w);

// Error code "AxiomFails", carrying the witnesses that block a fit.
class AxiomFailure : public Error {
public:
    AxiomFailure(const std::string& message, Witnesses w)
        : Error("AxiomFails", message), witnesses_(std::move(w)) {}
    const Witnesses& witnesses() const { return witnesses_; }

private:
    Witnesses witnesses_;
};

// Revealed weak preference over the members of `family` (Richter congruence).
// Returns per-alternative levels (higher is better) or nullopt when the family
// cannot be rationalized by a single weak order.
std::optional<std::vector<long>> revealed_levels(const ChoiceDataset& ds, const Family& family);

// A named predicate over a restricted dataset. Evaluators may stop at the
// first violation when `first_only` is set.
class FiniteProperty {
public:
    using Evaluator = std::function<Witnesses(const ChoiceDataset&, const Family&, bool first_only)>;

    FiniteProperty(std::string name, Evaluator eval) : name_(std::move(name)), eval_(std::move(eval)) {}

    const std::string& name() const { return name_; }
    Witnesses operator()(const ChoiceDataset& ds, const Family& family) const;
    Witnesses operator()(const ChoiceDataset& ds) const { return (*this)(ds, ds.all()); }
    bool passes(const ChoiceDataset& ds, const Family& family) const;

private:
    std::string name_;
    Evaluator eval_;
};

// Observation indices for explicit menus; throws UnobservedMenu.
Family family_of(const ChoiceDataset& ds, const std::vector<Menu>& menus);

Witnesses warp_over(const ChoiceDataset& ds, const Family& family, bool first_only = false);
Witnesses warp_over(const ChoiceDataset& ds, const std::vector<Menu>& menus);

FiniteProperty warp();
// Witness kinds keep the failing conjunct's name.
FiniteProperty conjunction(std::string name, std::vector<FiniteProperty> parts);

// Menus of the family whose menus are subsets of `a` and contain `x`.
Family subfamily(const ChoiceDataset& ds, const Family& family, const Menu& a, std::size_t x);

struct Mismatch {
    Menu menu;
    Menu predicted;
    Menu observed;
};

std::vector<Mismatch> compare_choices(const ChoiceDataset& ds,
                                      const std::function<Menu(const Menu&)>& predict);

std::string describe(const ChoiceDataset& ds, const Mismatch& m);

}  // namespace ordref
