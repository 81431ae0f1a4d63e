#pragma once

#include "ordref/ref_engine.hpp"

#include <map>
#include <random>

namespace ordref {

// Members with the minimal arrival time.
Menu earliest_payments(const ChoiceDataset& ds, const Menu& m);
PsiMap psi_earliest();

// x2 and y2 are x and y delayed by the same a > 0.
struct ShiftQuad {
    std::size_t x, y, x2, y2;
    Rational shift;
};

const std::vector<ShiftQuad>& shift_quads(const ChoiceDataset& ds);

Witnesses stationarity_over(const ChoiceDataset& ds, const Family& family, bool first_only = false);
FiniteProperty stationarity();
FiniteProperty warp_and_stationarity();

// Every observed pair (A, B), A = B included, sharing an earliest payment
// satisfies WARP and Stationarity over {A, B}.
Witnesses check_time_reference_dependence(const ChoiceDataset& ds);

struct Lemma2Result {
    bool applicable = false;  // closed under subsets and under unions sharing an earliest payment
    bool pairwise = false;
    bool existential = false;
    bool agree() const { return !applicable || pairwise == existential; }
};

Lemma2Result lemma2_equivalence(const ChoiceDataset& ds);

Witnesses check_present_bias(const ChoiceDataset& ds);
Witnesses check_outcome_monotonicity_impatience(const ChoiceDataset& ds);
// The largest amount at the latest time is chosen against the smallest amount at
// time zero; nullopt when that menu is not observed.
std::optional<bool> standing_assumption(const ChoiceDataset& ds);

// Log form: value of (x, t) under reference time r is t * D(r) + L(x),
// with L = log u and D = log delta.
struct PbduParams {
    std::map<Rational, Rational> L;  // amount -> log utility
    std::map<Rational, Rational> D;  // reference time -> log discount factor
};

std::vector<std::string> pbdu_issues(const PbduParams& params);
void validate_pbdu(const PbduParams& params);

// D at the greatest listed reference time not after r, or the earliest one.
const Rational& discount_at(const PbduParams& params, const Rational& r);
Rational pbdu_value(const PbduParams& params, const DatedPayment& p, const Rational& r);

Menu evaluate_pbdu(const PbduParams& params, const std::vector<DatedPayment>& payments, const Menu& menu);
ChoiceDataset simulate_pbdu(const PbduParams& params, const std::vector<Alternative>& universe,
                            const std::vector<Menu>& menus);
std::vector<Mismatch> verify_pbdu(const PbduParams& params, const ChoiceDataset& ds);

struct PbduFit {
    PbduParams params;
    std::string method;  // "exponential" or "pbdu"
};

// Throws AxiomFails, Infeasible.
PbduFit fit_pbdu(const ChoiceDataset& ds);

bool discounts_coincide(const PbduParams& params);

struct SwitchReport {
    bool pass = true;
    int switches = 0;
    std::vector<bool> later_chosen;  // per shift: the later payment is chosen uniquely
};

// Delays both payments by each shift in turn and tracks the binary choice.
// Throws BadPair unless the earlier payment is smaller.
SwitchReport single_switching_check(const PbduParams& params, const DatedPayment& sooner,
                                    const DatedPayment& later, const std::vector<Rational>& shifts);

struct TimeLinkage {
    bool warp = false;
    bool stationarity = false;
};

TimeLinkage linkage_report_time(const ChoiceDataset& ds);

// Integer amounts and times 0..times-1; D is shared when `equal`. Draws are
// repeated until no two grid payments tie, and the largest amount at the last
// time beats the smallest amount at time zero.
PbduParams random_pbdu_params(std::mt19937_64& rng, std::size_t amounts, std::size_t times, bool equal);
// Every (amount, time) pair of the params grid as an alternative "x<amount>t<time>".
std::vector<Alternative> payment_grid(const PbduParams& params);

// Two to four distinct payments (amounts 10, 15, 20; times 0, 1, 2), every menu
// of size two or more observed with a random nonempty choice.
ChoiceDataset random_closed_payment_data(std::mt19937_64& rng);

ChoiceDataset payment_data(const std::vector<std::pair<std::string, DatedPayment>>& alts,
                           const std::vector<RawObservation>& rows);

}  // namespace ordref
