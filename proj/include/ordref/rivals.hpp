#pragma once

#include "ordref/ordu.hpp"

namespace ordref {

using Relation2 = std::vector<std::vector<char>>;  // r[x][y] = 1 when x relates to y

struct RsmCertificate {
    Relation2 p1, p2;
};

// x is eliminated when some y in the menu has y P1 x; the survivors are then
// filtered by P2 the same way.
Menu rsm_choice(const RsmCertificate& cert, const Menu& menu);

// better[x][y] = 1 when x is strictly preferred; unrelated pairs are indifferent.
struct PeCertificate {
    Relation2 better;
};

Menu pe_choice(const PeCertificate& cert, const Menu& menu);

constexpr std::size_t kRivalUniverseLimit = 5;

// Certificates must reproduce every observation and define a nonempty choice
// (single-valued for RSM) on every nonempty subset of the universe.
// Throw UniverseTooLarge; rsm also throws MultiValuedChoice.
std::optional<RsmCertificate> rsm_rationalizable(const ChoiceDataset& ds);
std::optional<PeCertificate> pe_rationalizable(const ChoiceDataset& ds);

// Builds a generic dataset from rows like "abc:b" (menu letters, then chosen letters).
ChoiceDataset dataset_from_rows(const std::vector<std::string>& rows);

struct Fixture {
    std::string name;
    std::string description;
    ChoiceDataset data;
    std::vector<std::vector<Menu>> remark1_parts;
    // classifications stated for the table; unset when nothing is claimed
    std::optional<bool> ordu, remark1, rsm, pe;
    std::string cla_note;
};

const std::vector<std::string>& fixture_names();
// Throws UnknownFixture.
Fixture load_fixture(const std::string& name);

struct SeparationRow {
    std::string name;
    bool ordu = false;
    bool subset_closed = false;
    std::optional<bool> remark1;  // all listed decompositions pass
    std::optional<bool> rsm;      // unset when the data are multi-valued
    bool pe = false;
    std::string cla_note;
    std::vector<std::string> disagreements;  // stated classifications that were not reproduced
};

SeparationRow classify_fixture(const Fixture& f);
std::vector<SeparationRow> separation_suite();

// ORDU verdict for generic data: RD for any data, plus a successful build when subset-closed.
bool ordu_accepts(const ChoiceDataset& ds);

}  // namespace ordref
