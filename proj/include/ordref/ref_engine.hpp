#pragma once

#include "ordref/property.hpp"

#include <optional>

namespace ordref {

// Admissible references of a menu; must return a nonempty subset.
struct PsiMap {
    std::string name;
    std::function<Menu(const ChoiceDataset&, const Menu&)> eval;

    Menu operator()(const ChoiceDataset& ds, const Menu& m) const { return eval(ds, m); }
};

PsiMap psi_identity();

enum class Quantifier { Exists, ForAll };

class ReferenceOrder {
public:
    ReferenceOrder() = default;
    // `ranking` lists universe indices, highest first. Throws BadOrder unless a permutation.
    explicit ReferenceOrder(std::vector<std::size_t> ranking);

    const std::vector<std::size_t>& ranking() const { return ranking_; }
    std::size_t size() const { return ranking_.size(); }
    std::size_t position(std::size_t x) const { return position_[x]; }
    bool above(std::size_t x, std::size_t y) const { return position_[x] < position_[y]; }
    std::size_t top(const Menu& m) const;
    bool operator==(const ReferenceOrder& o) const { return ranking_ == o.ranking_; }

private:
    std::vector<std::size_t> ranking_;
    std::vector<std::size_t> position_;
};

// Throws NonHereditaryPsi naming the nested pair.
void check_hereditary(const ChoiceDataset& ds, const PsiMap& psi);

struct CandidateMap {
    std::vector<Menu> psi;    // per observation
    std::vector<Menu> gamma;  // per observation
};

CandidateMap candidate_references(const ChoiceDataset& ds, const FiniteProperty& T, const PsiMap& psi);

struct CandidateFailure {
    std::size_t candidate;
    Witnesses witnesses;
};

struct RdViolation {
    std::size_t observation;
    std::vector<CandidateFailure> failures;
};

struct RdResult {
    bool pass = true;
    CandidateMap candidates;
    std::vector<RdViolation> violations;

    Witnesses witnesses(const ChoiceDataset& ds, const std::string& axiom) const;
};

RdResult check_reference_dependence(const ChoiceDataset& ds, const FiniteProperty& T, const PsiMap& psi,
                                    Quantifier q = Quantifier::Exists);

// Menus whose R-maximal member is x, for each x.
std::vector<Family> reference_classes(const ChoiceDataset& ds, const ReferenceOrder& order);

Witnesses psi_consistency_check(const ChoiceDataset& ds, const ReferenceOrder& order, const PsiMap& psi,
                                const Family& family);

// Every reference class passes T and the order is Psi-consistent.
Witnesses verify_reference_order(const ChoiceDataset& ds, const FiniteProperty& T, const PsiMap& psi,
                                 const ReferenceOrder& order);

// Greedy listing: the smallest-id alternative whose remaining menus pass T
// with it admissible goes next.
std::optional<ReferenceOrder> layered_reference_order(const ChoiceDataset& ds, const FiniteProperty& T,
                                                      const PsiMap& psi);

struct SynthesisTrace {
    bool check_alpha = false;  // assert the alpha property after each pruning step
    bool alpha_ok = true;
    std::string method;        // "pruning" or "layered"
    std::string fallback_reason;
};

// Throws AxiomFails when no admissible order exists.
ReferenceOrder synthesize_reference_order(const ChoiceDataset& ds, const FiniteProperty& T, const PsiMap& psi,
                                          SynthesisTrace* trace = nullptr);

}  // namespace ordref
