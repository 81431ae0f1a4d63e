#pragma once

#include "ordref/ref_engine.hpp"

#include <random>

namespace ordref {

struct OrduParams {
    std::vector<std::string> ids;  // sorted universe
    ReferenceOrder order;
    MatrixQ utility;                // row: reference, column: alternative
};

// Universe indices for ids; throws UnknownAlternative.
Menu menu_from_ids(const std::vector<std::string>& universe, const std::vector<std::string>& ids);

// Observed menus closed under subsets of size >= 2.
std::optional<Menu> first_missing_subset(const ChoiceDataset& ds);

struct OrduBuild {
    OrduParams params;
    std::vector<Menu> prediction_sets;  // per reference
};

// Throws NotSubsetClosed or AxiomFailure.
OrduBuild build_ordu(const ChoiceDataset& ds);

Menu evaluate_ordu(const OrduParams& params, const Menu& menu);
ChoiceDataset simulate_ordu(const OrduParams& params, const std::vector<Menu>& menus);
std::vector<Mismatch> verify_ordu(const OrduParams& params, const ChoiceDataset& ds);

struct Remark1Result {
    bool pass = false;
    std::optional<std::size_t> reference;  // the alternative whose family is rationalizable
    std::vector<long> levels;              // that ranking, per universe index
};

// Throws UnionUnobserved, UnobservedMenu, MenuTooLarge.
Remark1Result remark1_necessary_condition(const ChoiceDataset& ds, const std::vector<Menu>& parts);

// Universe of single-letter ids "a", "b", ... (or zero-padded "x0000", ... beyond 26).
std::vector<std::string> letter_ids(std::size_t n);
// All subsets of {0..n-1} with at least `min_size` members.
std::vector<Menu> all_menus(std::size_t n, std::size_t min_size = 1);

// Uniform reference order; utilities drawn from `levels` integer values, so ties occur.
OrduParams random_ordu_params(std::size_t n, std::mt19937_64& rng, int levels);

// Every menu of the family chooses exactly the maximizers of `level`.
bool rationalized_by(const ChoiceDataset& ds, const Family& family, const std::vector<long>& level);

}  // namespace ordref
