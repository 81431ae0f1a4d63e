#pragma once

#include "ordref/ref_engine.hpp"

#include <map>
#include <random>

namespace ordref {

// |x - y| / (2 (x + y)); throws BadPayload unless both payments are positive.
Rational gini(const IncomeSplit& s);

// Members with the minimal Gini coefficient.
Menu most_balanced(const ChoiceDataset& ds, const Menu& m);
PsiMap psi_most_balanced();
Rational attainable_equality(const ChoiceDataset& ds, const Menu& m);

// x2 and y2 are x and y with the own payment moved by the same a != 0.
struct OwnShiftQuad {
    std::size_t x, y, x2, y2;
    Rational shift;
};

const std::vector<OwnShiftQuad>& own_shift_quads(const ChoiceDataset& ds);

Witnesses quasilinearity_over(const ChoiceDataset& ds, const Family& family, bool first_only = false);
FiniteProperty quasilinearity();
FiniteProperty warp_and_quasilinearity();

// Universal over the most balanced members of every observed menu.
RdResult check_equality_reference_dependence(const ChoiceDataset& ds);
Witnesses check_fairness(const ChoiceDataset& ds);
Witnesses check_social_monotonicity(const ChoiceDataset& ds);

// v[r][y]: utility of giving y when the attainable Gini is r.
struct FspuParams {
    std::map<Rational, std::map<Rational, Rational>> v;
};

std::vector<std::string> fspu_issues(const FspuParams& params);
void validate_fspu(const FspuParams& params);

// v at the greatest listed Gini not above r, or the smallest one.
const std::map<Rational, Rational>& v_at(const FspuParams& params, const Rational& r);
Rational fspu_value(const FspuParams& params, const IncomeSplit& s, const Rational& r);

Menu evaluate_fspu(const FspuParams& params, const std::vector<IncomeSplit>& splits, const Menu& menu);
ChoiceDataset simulate_fspu(const FspuParams& params, const std::vector<Alternative>& universe,
                            const std::vector<Menu>& menus);
std::vector<Mismatch> verify_fspu(const FspuParams& params, const ChoiceDataset& ds);

struct FspuFit {
    FspuParams params;
    std::string method;  // "quasi-linear" or "fspu"
};

// Throws AxiomFails, Infeasible.
FspuFit fit_fspu(const ChoiceDataset& ds);

bool sharing_utilities_coincide(const FspuParams& params);

struct SocialLinkage {
    bool warp = false;
    bool quasilinearity = false;
};

SocialLinkage linkage_report_social(const ChoiceDataset& ds);

// v on `others` for every Gini of the owns x others grid. Increments are
// larger at lower Gini (shared when `equal`); draws are repeated until no two
// grid splits tie under any reference and every v spans less than the own
// payments do.
FspuParams random_fspu_params(std::mt19937_64& rng, const std::vector<Rational>& owns,
                              const std::vector<Rational>& others, bool equal);
// Every (own, other) pair as an alternative "x<own>y<other>".
std::vector<Alternative> split_grid(const std::vector<Rational>& owns, const std::vector<Rational>& others);

ChoiceDataset split_data(const std::vector<std::pair<std::string, IncomeSplit>>& alts,
                         const std::vector<RawObservation>& rows, std::optional<Rational> floor = std::nullopt);

}  // namespace ordref
