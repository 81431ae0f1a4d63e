#include "ordref/models.hpp"

namespace ordref {

Model parse_model(const std::string& s) {
    if (s == "ordu") return Model::Ordu;
    if (s == "areu") return Model::Areu;
    if (s == "pbdu") return Model::Pbdu;
    if (s == "fspu") return Model::Fspu;
    throw Error("BadModel", "unknown model '" + s + "' (expected ordu, areu, pbdu or fspu)");
}

std::string to_string(Model m) {
    switch (m) {
        case Model::Ordu: return "ordu";
        case Model::Areu: return "areu";
        case Model::Pbdu: return "pbdu";
        case Model::Fspu: return "fspu";
    }
    return "";
}

PayloadKind payload_kind(Model m) {
    switch (m) {
        case Model::Ordu: return PayloadKind::Generic;
        case Model::Areu: return PayloadKind::Lottery;
        case Model::Pbdu: return PayloadKind::DatedPayment;
        case Model::Fspu: return PayloadKind::IncomeSplit;
    }
    return PayloadKind::Generic;
}

Model model_of(const Params& p) { return static_cast<Model>(p.index()); }

std::vector<AxiomResult> axiom_battery(Model m, const ChoiceDataset& ds) {
    // ORDU applies to any universe; the domain models need their payloads
    if (m != Model::Ordu && ds.kind() != payload_kind(m))
        throw Error("WrongKind", to_string(m) + " needs " + to_string(payload_kind(m)) + " payloads, got " +
                                     to_string(ds.kind()));
    std::vector<AxiomResult> out;
    switch (m) {
        case Model::Ordu:
            out.push_back({"ReferenceDependence",
                           check_reference_dependence(ds, warp(), psi_identity()).witnesses(ds, "ReferenceDependence")});
            break;
        case Model::Areu:
            out.push_back({"RiskReferenceDependence",
                           check_risk_reference_dependence(ds).witnesses(ds, "RiskReferenceDependence")});
            out.push_back({"AvoidableRisk", check_avoidable_risk(ds)});
            out.push_back({"FOSD", check_fosd(ds)});
            break;
        case Model::Pbdu:
            out.push_back({"TimeReferenceDependence", check_time_reference_dependence(ds)});
            out.push_back({"PresentBias", check_present_bias(ds)});
            out.push_back({"OutcomeMonotonicity+Impatience", check_outcome_monotonicity_impatience(ds)});
            break;
        case Model::Fspu:
            out.push_back({"EqualityDependence",
                           check_equality_reference_dependence(ds).witnesses(ds, "EqualityDependence")});
            out.push_back({"Fairness", check_fairness(ds)});
            out.push_back({"Monotonicity", check_social_monotonicity(ds)});
            break;
    }
    return out;
}

bool battery_passes(const std::vector<AxiomResult>& results) {
    for (const auto& r : results)
        if (!r.pass()) return false;
    return true;
}

FitResult fit_model(Model m, const ChoiceDataset& ds) {
    switch (m) {
        case Model::Ordu: return {build_ordu(ds).params, "ordu"};
        case Model::Areu: {
            auto f = fit_areu(ds);
            return {std::move(f.params), f.method};
        }
        case Model::Pbdu: {
            auto f = fit_pbdu(ds);
            return {std::move(f.params), f.method};
        }
        case Model::Fspu: {
            auto f = fit_fspu(ds);
            return {std::move(f.params), f.method};
        }
    }
    throw Error("BadModel", "unknown model");
}

ChoiceDataset simulate_model(const Params& p, const std::vector<Alternative>& universe,
                             const std::vector<Menu>& menus) {
    return std::visit(
        [&](const auto& pr) -> ChoiceDataset {
            using T = std::decay_t<decltype(pr)>;
            if constexpr (std::is_same_v<T, OrduParams>)
                return simulate_ordu(pr, menus);
            else if constexpr (std::is_same_v<T, AreuParams>)
                return simulate_areu(pr, menus);
            else if constexpr (std::is_same_v<T, PbduParams>)
                return simulate_pbdu(pr, universe, menus);
            else
                return simulate_fspu(pr, universe, menus);
        },
        p);
}

std::vector<Mismatch> verify_model(const Params& p, const ChoiceDataset& ds) {
    return std::visit(
        [&](const auto& pr) -> std::vector<Mismatch> {
            using T = std::decay_t<decltype(pr)>;
            if constexpr (std::is_same_v<T, OrduParams>) {
                if (ds.universe().size() != pr.ids.size())
                    throw Error("UnknownAlternative", "the params and the dataset have different universes");
                for (std::size_t i = 0; i < pr.ids.size(); ++i)
                    if (ds.id(i) != pr.ids[i])
                        throw Error("UnknownAlternative", "alternative '" + ds.id(i) + "' is not in the params");
                return verify_ordu(pr, ds);
            } else if constexpr (std::is_same_v<T, AreuParams>) {
                return verify_areu(pr, ds);
            } else if constexpr (std::is_same_v<T, PbduParams>) {
                return verify_pbdu(pr, ds);
            } else {
                return verify_fspu(pr, ds);
            }
        },
        p);
}

void validate_params(const Params& p) {
    std::visit(
        [](const auto& pr) {
            using T = std::decay_t<decltype(pr)>;
            if constexpr (std::is_same_v<T, OrduParams>) {
                const auto n = static_cast<Eigen::Index>(pr.ids.size());
                if (pr.order.size() != pr.ids.size() || pr.utility.rows() != n || pr.utility.cols() != n)
                    throw Error("BadParams", "order and utilities must cover every alternative");
            } else if constexpr (std::is_same_v<T, AreuParams>) {
                validate_areu(pr);
            } else if constexpr (std::is_same_v<T, PbduParams>) {
                validate_pbdu(pr);
            } else {
                validate_fspu(pr);
            }
        },
        p);
}

std::vector<Alternative> params_universe(const Params& p) {
    std::vector<Alternative> out;
    if (const auto* o = std::get_if<OrduParams>(&p))
        for (const auto& id : o->ids) out.push_back({id, std::monostate{}});
    if (const auto* a = std::get_if<AreuParams>(&p))
        for (std::size_t i = 0; i < a->ids.size(); ++i) out.push_back({a->ids[i], a->lotteries[i]});
    return out;
}

LinkageReport linkage_report(const ChoiceDataset& ds) {
    LinkageReport r;
    auto fit = [&](auto&& run) {
        try {
            run();
        } catch (const Error& e) {
            r.fit_error = e.code() + ": " + e.what();
        }
    };
    switch (ds.kind()) {
        case PayloadKind::Lottery: {
            auto l = linkage_report_risk(ds);
            r = {"risk", "Independence", l.warp, l.independence, std::nullopt, "", ""};
            fit([&] {
                auto f = fit_areu(ds);
                r.coincide = class_utilities_coincide(f.params, ds);
                r.fit_method = f.method;
            });
            break;
        }
        case PayloadKind::DatedPayment: {
            auto l = linkage_report_time(ds);
            r = {"time", "Stationarity", l.warp, l.stationarity, std::nullopt, "", ""};
            fit([&] {
                auto f = fit_pbdu(ds);
                r.coincide = discounts_coincide(f.params);
                r.fit_method = f.method;
            });
            break;
        }
        case PayloadKind::IncomeSplit: {
            auto l = linkage_report_social(ds);
            r = {"social", "Quasi-linearity", l.warp, l.quasilinearity, std::nullopt, "", ""};
            fit([&] {
                auto f = fit_fspu(ds);
                r.coincide = sharing_utilities_coincide(f.params);
                r.fit_method = f.method;
            });
            break;
        }
        case PayloadKind::Generic:
            throw Error("WrongKind", "linkage reports need lottery, dated payment or income split data");
    }
    return r;
}

std::vector<Menu> menus_between(std::size_t n, std::size_t lo, std::size_t hi) {
    std::vector<Menu> out;
    for (auto& m : all_menus(n, lo))
        if (m.size() <= hi) out.push_back(std::move(m));
    return out;
}

Instance random_instance(Model m, std::mt19937_64& rng) {
    auto ints = [](long a, long b) {
        std::vector<Rational> out;
        for (long i = a; i <= b; ++i) out.push_back(Rational(i));
        return out;
    };
    switch (m) {
        case Model::Ordu: {
            auto p = random_ordu_params(5, rng, 3);
            Instance in{p, {}, all_menus(5)};
            in.universe = params_universe(in.params);
            return in;
        }
        case Model::Areu: {
            std::uniform_int_distribution<std::size_t> nd(3, 8);
            auto p = random_areu_params(rng, nd(rng), false);
            const auto n = p.ids.size();
            Instance in{p, {}, menus_between(n, 2, 4)};
            in.universe = params_universe(in.params);
            return in;
        }
        case Model::Pbdu: {
            auto p = random_pbdu_params(rng, 3, 3, false);
            auto grid = payment_grid(p);
            const auto n = grid.size();
            return {p, std::move(grid), menus_between(n, 2, 4)};
        }
        case Model::Fspu: {
            auto p = random_fspu_params(rng, ints(1, 3), ints(1, 3), false);
            auto grid = split_grid(ints(1, 3), ints(1, 3));
            const auto n = grid.size();
            return {p, std::move(grid), menus_between(n, 2, 4)};
        }
    }
    throw Error("BadModel", "unknown model");
}

}  // namespace ordref
