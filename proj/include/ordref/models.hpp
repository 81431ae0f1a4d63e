#pragma once

#include "ordref/ordu.hpp"
#include "ordref/risk.hpp"
#include "ordref/social.hpp"
#include "ordref/timepref.hpp"

#include <random>
#include <variant>

namespace ordref {

enum class Model { Ordu, Areu, Pbdu, Fspu };

// Throws BadModel.
Model parse_model(const std::string& s);
std::string to_string(Model m);
PayloadKind payload_kind(Model m);

using Params = std::variant<OrduParams, AreuParams, PbduParams, FspuParams>;

Model model_of(const Params& p);

struct AxiomResult {
    std::string axiom;
    Witnesses witnesses;
    bool pass() const { return witnesses.empty(); }
};

// Every finite axiom of the model's representation theorem, in a fixed order.
// Throws WrongKind when the payloads do not fit the model.
std::vector<AxiomResult> axiom_battery(Model m, const ChoiceDataset& ds);
bool battery_passes(const std::vector<AxiomResult>& results);

struct FitResult {
    Params params;
    std::string method;
};

// Throws AxiomFails, Infeasible, NotSubsetClosed, WrongKind.
FitResult fit_model(Model m, const ChoiceDataset& ds);

// `universe` supplies payment and split payloads; ORDU and AREU params carry their own.
ChoiceDataset simulate_model(const Params& p, const std::vector<Alternative>& universe,
                             const std::vector<Menu>& menus);
std::vector<Mismatch> verify_model(const Params& p, const ChoiceDataset& ds);
// Throws BadParams with the first issue.
void validate_params(const Params& p);
// Alternatives the params define; empty for PBDU and FSPU.
std::vector<Alternative> params_universe(const Params& p);

struct LinkageReport {
    std::string domain;      // "risk", "time" or "social"
    std::string structural;  // "Independence", "Stationarity" or "Quasi-linearity"
    bool warp = false;
    bool structural_pass = false;
    std::optional<bool> coincide;  // fitted utilities agree; unset when the fit fails
    std::string fit_method;
    std::string fit_error;
};

// Throws WrongKind for generic data.
LinkageReport linkage_report(const ChoiceDataset& ds);

struct Instance {
    Params params;
    std::vector<Alternative> universe;
    std::vector<Menu> menus;
};

// Menus of {0..n-1} with between lo and hi members.
std::vector<Menu> menus_between(std::size_t n, std::size_t lo, std::size_t hi);

// Random params with a universe and menus to simulate on: five generic
// alternatives with every menu, three to eight lotteries, a 3x3 payment grid
// or a 3x3 split grid, menus of size 2 to 4 in the payload domains.
Instance random_instance(Model m, std::mt19937_64& rng);

}  // namespace ordref
