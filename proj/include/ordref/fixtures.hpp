#pragma once

#include "ordref/models.hpp"

namespace ordref {

struct FixtureInfo {
    std::string name;
    std::string description;
    Model model;
};

// Separation tables first, then the domain fixtures.
std::vector<FixtureInfo> list_fixtures();
// Throws UnknownFixture.
ChoiceDataset fixture_dataset(const std::string& name);
Model fixture_model(const std::string& name);

// Domain fixtures by name.
ChoiceDataset allais_data(bool reverse);
ChoiceDataset present_bias_data();
ChoiceDataset dictator_data();

}  // namespace ordref
