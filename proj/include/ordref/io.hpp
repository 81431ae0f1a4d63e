#pragma once

#include "ordref/models.hpp"

#include <json.hpp>

namespace ordref {

using Json = nlohmann::ordered_json;

// Rationals travel as strings ("p/q" or exact decimals); JSON integers are accepted on input.
Json rational_json(const Rational& r);
Rational rational_from_json(const Json& j, const std::string& where);

Json payload_json(const Payload& p);
Json dataset_json(const ChoiceDataset& ds);
// Throws BadJson, then anything ChoiceDataset::build throws.
ChoiceDataset dataset_from_json(const Json& j);

Json order_json(const std::vector<std::string>& ids, const ReferenceOrder& order);
ReferenceOrder order_from_json(const Json& j, const std::vector<std::string>& ids);

Json params_json(const Params& p);
Params params_from_json(const Json& j);

// Witness menus with their observed choices, so that they form a valid dataset.
Json witness_json(const ChoiceDataset& ds, const ViolationWitness& w);
Json mismatch_json(const ChoiceDataset& ds, const Mismatch& m);

struct MenusFile {
    std::vector<Alternative> universe;  // empty when the params carry it
    std::vector<std::vector<std::string>> menus;
    std::optional<Rational> floor;
};

// {"menus": [[ids]]} with optional "kind", "alternatives" and "floor" for payload universes.
MenusFile menus_from_json(const Json& j);

Json read_json_file(const std::string& path);

// "fixtures://<name>" or a file path.
ChoiceDataset load_dataset(const std::string& source);

}  // namespace ordref
