#pragma once

#include "ordref/ref_engine.hpp"

#include <random>

namespace ordref {

// All pairwise relations throw PrizeSetMismatch when the prize sets differ.
bool fosd(const Lottery& p, const Lottery& q);
Rational mean(const Lottery& p);
// p is a mean-preserving spread of q.
bool mps(const Lottery& p, const Lottery& q);
// p is an extreme spread of q. With `closed`, the best-prize weight may also sit
// on either end of its window.
bool extreme_spread(const Lottery& p, const Lottery& q, bool closed = false);

// Mixture weight a in (0,1) with p2 = a p + (1-a) s and q2 = a q + (1-a) s for one lottery s.
std::optional<Rational> common_mixture(const Lottery& p, const Lottery& q, const Lottery& p2, const Lottery& q2);

// Cached per universe: riskier[x][y] when x is an MPS or ES of y.
const std::vector<std::vector<char>>& riskier_relation(const ChoiceDataset& ds);

// Throws EmptyPsi when every member is riskier than another.
Menu least_risky(const ChoiceDataset& ds, const Menu& m);
PsiMap psi_least_risky();

struct MixtureQuad {
    std::size_t p, q, p2, q2;  // p2 = p^a s, q2 = q^a s
    Rational alpha;
};

const std::vector<MixtureQuad>& mixture_quads(const ChoiceDataset& ds);

Witnesses independence_over(const ChoiceDataset& ds, const Family& family, bool first_only = false);
FiniteProperty independence();
FiniteProperty warp_and_independence();

RdResult check_risk_reference_dependence(const ChoiceDataset& ds);
Witnesses check_avoidable_risk(const ChoiceDataset& ds);
// A dominated lottery is never chosen.
Witnesses check_fosd(const ChoiceDataset& ds);

// Throws NotIncreasing.
VectorQ rho_vector(const VectorQ& u);

enum class Concavity { MoreConcave, LessConcave, Equal, Incomparable };
std::string to_string(Concavity c);
Concavity concavity_compare(const VectorQ& u1, const VectorQ& u2);

struct AreuParams {
    std::shared_ptr<const PrizeSet> prizes;
    std::vector<std::string> ids;  // sorted
    std::vector<Lottery> lotteries;
    ReferenceOrder order;
    MatrixQ utility;  // row: reference lottery, column: prize
};

// Empty when every invariant holds: normalized increasing rows, a risk-consistent
// order and rho vectors that decrease along it.
std::vector<std::string> areu_issues(const AreuParams& params);
// Throws BadParams with the first issue.
void validate_areu(const AreuParams& params);

Rational expected_utility(const Lottery& p, const MatrixQ& utility, std::size_t row);
Menu evaluate_areu(const AreuParams& params, const Menu& menu);
ChoiceDataset simulate_areu(const AreuParams& params, const std::vector<Menu>& menus);
// Throws UnknownLottery when a dataset lottery is not in the params.
std::vector<Mismatch> verify_areu(const AreuParams& params, const ChoiceDataset& ds);

struct AreuFit {
    AreuParams params;
    std::string method;  // "single-eu", "joint-lp", "grid-64", "grid-512"
};

// Throws AxiomFails, Infeasible.
AreuFit fit_areu(const ChoiceDataset& ds);

// The utilities of the references actually used by observed menus are equal.
bool class_utilities_coincide(const AreuParams& params, const ChoiceDataset& ds);

Witnesses betweenness_over(const ChoiceDataset& ds, const Family& family);
Witnesses transitivity_over(const ChoiceDataset& ds, const Family& family);

struct RiskLinkage {
    bool warp = false;
    bool independence = false;
};

RiskLinkage linkage_report_risk(const ChoiceDataset& ds);

enum class Fanning { RiskAverseFanOut, RiskLovingFanIn, RiskNeutral, MixedViolation };
std::string to_string(Fanning f);

struct TrianglePoint {
    std::string id;
    Rational p_b, p_w;
    Rational rho;
    Rational slope;  // dp_b / dp_w along the indifference line
    Rational level;  // expected utility under its own reference utility
};

struct FanningReport {
    Fanning verdict = Fanning::MixedViolation;
    bool slopes_nondecreasing = true;  // along every FOSD-ordered pair of points
    bool slopes_nonincreasing = true;
    bool transitive = true;  // binary choices among the points
    std::vector<TrianglePoint> points;
};

// Points are the params lotteries whose probabilities are multiples of 1/grid.
// Throws NotATriangle unless there are exactly three prizes.
FanningReport fanning_classify(const AreuParams& params, long grid);
std::string triangle_csv(const FanningReport& report);

// Every lottery on the 1/grid triangle over three prizes; the order extends the
// safety relation together with FOSD (towards better lotteries when `averse`,
// towards worse ones otherwise) and rho moves away from the neutral value along it.
// Throws CyclicOrder if that union has a cycle.
AreuParams triangle_params(std::shared_ptr<const PrizeSet> prizes, long grid, bool averse);

// Random lotteries on the quarter grid over three prizes, a random risk-consistent
// order and rho values decreasing along it (all equal when `equal`).
AreuParams random_areu_params(std::mt19937_64& rng, std::size_t n, bool equal);

// Lottery over a prize set from probabilities given as rationals.
Lottery lottery(std::shared_ptr<const PrizeSet> prizes, const std::vector<Rational>& probs);
std::shared_ptr<const PrizeSet> prize_set(const std::vector<Rational>& prizes);

}  // namespace ordref
